//! Curve cones and Kähler cones of projectivized bundles over a curve, and
//! the restricted Kähler cone of `P(V) ⊂ P(V ⊕ O)`.
//!
//! Everything here is in the quotient convention. A class `x·ξ + y·F` on
//! `P(E)` is Kähler iff it is positive on every effective curve; effective
//! curves are spanned by the fiber line `l` and multisections, and an
//! `m`-section `Z` corresponds to a quotient line bundle of `Sym^m E` with
//! `[Z] = deg·l + m·η`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::bundles::{BundleKind, BundleSpec, SurfaceGenus};
use crate::cohomology::{residue, section_class, BundleContext, Convention, CurveClass, DivisorClass};
use crate::rational::{frac, int, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exactness {
    /// The predicate is the Kähler cone.
    Exact,
    /// Every class accepted is Kähler; some Kähler classes may be rejected.
    SufficientOnly,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exact => "Exact",
            Self::SufficientOnly => "SufficientOnly",
        })
    }
}

/// The space being tested: `P(E)` for a bundle `E`, or `P(V ⊕ L)` with `V`
/// semistable and `μ(L) ≥ μ(V)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjectiveModel {
    Bundle(BundleSpec),
    SemiStablePlusLine { semistable: BundleSpec, line_degree: i64 },
}

impl From<BundleSpec> for ProjectiveModel {
    fn from(b: BundleSpec) -> Self {
        Self::Bundle(b)
    }
}

impl ProjectiveModel {
    /// `V ⊕ O`. Split (or sphere-split) `V` stays a split bundle; a
    /// semistable `V` of non-positive degree over positive genus becomes the
    /// mixed model.
    pub fn with_trivial_summand(v: &BundleSpec) -> Result<Self> {
        let v = v.split_over_sphere();
        match v.kind() {
            BundleKind::Decomposable(d) => {
                let mut d = d.clone();
                d.push(0);
                Ok(Self::Bundle(BundleSpec::decomposable(v.base(), d)?))
            }
            BundleKind::SemiStable { .. } => Self::mixed(v, 0),
        }
    }

    pub fn mixed(semistable: BundleSpec, line_degree: i64) -> Result<Self> {
        if !matches!(semistable.kind(), BundleKind::SemiStable { .. }) {
            return Err(Error::InvalidInput("mixed model needs a semistable part".into()));
        }
        if frac(line_degree, 1) < semistable.slope().0 {
            return Err(Error::Unsupported(format!(
                "line summand of degree {line_degree} has slope below μ(V) = {}",
                semistable.slope()
            )));
        }
        Ok(Self::SemiStablePlusLine { semistable, line_degree })
    }

    pub fn rank(&self) -> u32 {
        match self {
            Self::Bundle(b) => b.rank(),
            Self::SemiStablePlusLine { semistable, .. } => semistable.rank() + 1,
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            Self::Bundle(b) => b.degree(),
            Self::SemiStablePlusLine { semistable, line_degree } => semistable.degree() + line_degree,
        }
    }

    pub fn genus(&self) -> SurfaceGenus {
        match self {
            Self::Bundle(b) => b.base(),
            Self::SemiStablePlusLine { semistable, .. } => semistable.base(),
        }
    }

    pub fn context(&self) -> Result<BundleContext> {
        BundleContext::quotient(self.rank(), self.degree(), self.genus())
    }
}

impl fmt::Display for ProjectiveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Bundle(b) => b.fmt(f),
            Self::SemiStablePlusLine { semistable, line_degree } => write!(f, "{semistable} ⊕ O({line_degree})"),
        }
    }
}

/// Shape of the Kähler cone in `(x, y)` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KahlerRegion {
    /// `x > 0`, `a₁·x + y > 0`.
    HalfPlane { a1: i64 },
    /// `x > 0`, `d·x + n·y > 0`.
    ForwardCone,
    /// `x > 0`, `y/x > bound`.
    SlopeBound { bound: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDescription {
    /// Extremal rays of the curve cone that are integral classes.
    pub rays: Vec<CurveClass>,
    pub kahler: KahlerRegion,
    pub exactness: Exactness,
    /// The Kähler cone coincides with the forward cone.
    pub kahler_is_forward_cone: bool,
}

impl ConeDescription {
    pub fn contains(&self, u: &DivisorClass) -> bool {
        if !u.x.is_positive() {
            return false;
        }
        match &self.kahler {
            KahlerRegion::HalfPlane { a1 } => (int(*a1) * &u.x + &u.y).is_positive(),
            KahlerRegion::ForwardCone => u.in_forward_cone(),
            KahlerRegion::SlopeBound { bound } => &u.y / &u.x > *bound,
        }
    }
}

/// Curve cone of `P(E)` for split `E`: spanned by `l` and the section
/// `a₁·l + η` of the least-degree summand.
pub fn curve_cone_decomposable(b: &BundleSpec) -> Result<ConeDescription> {
    cone_of(&ProjectiveModel::Bundle(b.clone()))
}

/// Cone data for any supported model. Semistable bundles over positive
/// genus report only the ray `l` and the forward cone; genus-0 semistable
/// input is treated as its balanced splitting.
pub fn cone_of(model: &ProjectiveModel) -> Result<ConeDescription> {
    let ctx = model.context()?;
    match model {
        ProjectiveModel::Bundle(b) => {
            let b = b.split_over_sphere();
            match b.kind() {
                BundleKind::Decomposable(d) => {
                    let a1 = d[0];
                    Ok(ConeDescription {
                        rays: vec![CurveClass::line(ctx), section_class(ctx, a1)],
                        kahler: KahlerRegion::HalfPlane { a1 },
                        exactness: Exactness::Exact,
                        kahler_is_forward_cone: b.is_semistable(),
                    })
                }
                BundleKind::SemiStable { .. } => Ok(ConeDescription {
                    rays: vec![CurveClass::line(ctx)],
                    kahler: KahlerRegion::ForwardCone,
                    exactness: Exactness::Exact,
                    kahler_is_forward_cone: true,
                }),
            }
        }
        ProjectiveModel::SemiStablePlusLine { semistable, .. } => Ok(ConeDescription {
            rays: vec![CurveClass::line(ctx)],
            kahler: KahlerRegion::SlopeBound { bound: -semistable.slope().0 },
            exactness: Exactness::SufficientOnly,
            kahler_is_forward_cone: false,
        }),
    }
}

fn check_context(u: &DivisorClass, model: &ProjectiveModel) -> Result<()> {
    let ctx = u.ctx();
    if ctx.convention() != Convention::Quotient {
        return Err(Error::WrongConvention);
    }
    if ctx.rank() != model.rank() || ctx.degree() != model.degree() || ctx.genus() != model.genus() {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

/// Is `u` Kähler on the model? For the mixed model a `true` is certain and
/// a `false` is not (see [`Exactness::SufficientOnly`]).
pub fn kahler_membership(u: &DivisorClass, model: &ProjectiveModel) -> Result<bool> {
    check_context(u, model)?;
    Ok(cone_of(model)?.contains(u))
}

/// Infimum of the ratio over the Kähler cone (never attained):
/// `Σ (aⱼ - a₁)` for split bundles, `0` for semistable ones.
pub fn kahler_cone_ratio(b: &BundleSpec) -> Result<Rational> {
    let b = b.split_over_sphere();
    match b.kind() {
        BundleKind::Decomposable(d) => Ok(int(d.iter().map(|a| a - d[0]).sum())),
        BundleKind::SemiStable { .. } => Ok(Rational::zero()),
    }
}

/// Infimum of ratios of symplectic forms on the bundle: `0` over positive
/// genus, the topological type over the sphere.
pub fn min_symplectic_ratio(ctx: &BundleContext) -> Rational {
    if ctx.genus().is_sphere() {
        int(i64::from(ctx.topological_type()))
    } else {
        Rational::zero()
    }
}

/// Lower bound `m·a₁` on `⟨ξ, [Z]⟩` for an `m`-section `Z`.
pub fn multisection_degree_bound(b: &BundleSpec, m: u32) -> Result<i64> {
    if m == 0 {
        return Err(Error::InvalidInput("multisection degree must be positive".into()));
    }
    b.min_degree()?
        .checked_mul(i64::from(m))
        .ok_or(Error::Overflow("multisection bound"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedRatioResult {
    /// Infimum of ratios of restrictions to `P(V)` of Kähler classes on
    /// `P(V ⊕ O)`.
    pub value: Rational,
    pub achieving_bundle: BundleSpec,
    /// Always `false`: the Kähler cone is open.
    pub attained: bool,
}

/// `alpha = q·n + t` with `0 ≤ t < n`.
fn euclid(alpha: i64, n: u32) -> (i64, i64) {
    let n = i64::from(n);
    (alpha.div_euclid(n), alpha.rem_euclid(n))
}

/// Model bundle `V` (quotient convention, `deg V = alpha`) whose
/// restricted Kähler cone in `P(V ⊕ O)` is as large as possible.
///
/// - `alpha < 0`, genus ≥ 1: semistable of rank `n`, degree `alpha`;
/// - `alpha < 0`, genus 0: `O(q)^{n-t} ⊕ O(q+1)^t`;
/// - `alpha ≥ 0`: `O(p-1)^{n-t} ⊕ O(p)^t` with `alpha = (p-1)·n + t`.
pub fn matching_bundle(alpha: i64, n: u32, g: SurfaceGenus) -> Result<BundleSpec> {
    if n == 0 {
        return Err(Error::InvalidInput("rank must be at least 1".into()));
    }
    if alpha < 0 && !g.is_sphere() {
        return BundleSpec::semistable(g, n, alpha);
    }
    let (q, t) = euclid(alpha, n);
    let mut degrees = vec![q; (i64::from(n) - t) as usize];
    degrees.extend(std::iter::repeat_n(q + 1, t as usize));
    BundleSpec::decomposable(g, degrees)
}

/// `max{0, alpha}` over positive genus, `max{t_n(alpha), alpha}` over the
/// sphere, with the bundle realising it.
pub fn restricted_ratio(alpha: i64, n: u32, g: SurfaceGenus) -> Result<RestrictedRatioResult> {
    let floor = if g.is_sphere() { i64::from(residue(alpha, n.max(1))) } else { 0 };
    Ok(RestrictedRatioResult {
        value: int(alpha.max(floor)),
        achieving_bundle: matching_bundle(alpha, n, g)?,
        attained: false,
    })
}

/// A Kähler class on `P(V ⊕ O)`, `V = matching_bundle(alpha, n, g)`, whose
/// restriction to `P(V)` has ratio exactly `rho0`.
///
/// The representative has `x = n·den(rho0)`, so
/// `y = (rho0 - alpha)·den(rho0)` is an integer.
pub fn kahler_class_for_ratio(alpha: i64, n: u32, g: SurfaceGenus, rho0: &Rational) -> Result<DivisorClass> {
    let bound = restricted_ratio(alpha, n, g)?;
    if *rho0 <= bound.value {
        return Err(Error::NoSuchClass { requested: Box::new(rho0.clone()), bound: Box::new(bound.value) });
    }
    let model = ProjectiveModel::with_trivial_summand(&bound.achieving_bundle)?;
    let den = Rational::from_integer(rho0.denom().clone());
    let x = int(i64::from(n)) * &den;
    let y = (rho0 - int(alpha)) * &den;
    let u = DivisorClass::new(x, y, model.context()?);
    debug_assert!(kahler_membership(&u, &model)?);
    Ok(u)
}

/// The restriction of a class on `P(V ⊕ O)` to `P(V)`: same coordinates,
/// rank one less, same degree.
pub fn restrict_to_divisor(u: &DivisorClass) -> Result<DivisorClass> {
    let ctx = u.ctx();
    if ctx.rank() < 2 {
        return Err(Error::InvalidInput("nothing to restrict to in rank 1".into()));
    }
    Ok(u.with_context(BundleContext::new(ctx.rank() - 1, ctx.degree(), ctx.convention(), ctx.genus())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    const G0: SurfaceGenus = SurfaceGenus::new(0);
    const G1: SurfaceGenus = SurfaceGenus::new(1);

    fn dec(d: &[i64]) -> BundleSpec {
        BundleSpec::decomposable(G0, d.to_vec()).unwrap()
    }

    fn class_on(model: &ProjectiveModel, x: Rational, y: Rational) -> DivisorClass {
        DivisorClass::new(x, y, model.context().unwrap())
    }

    #[test]
    fn split_curve_cones() {
        let cone = curve_cone_decomposable(&dec(&[0, 2])).unwrap();
        let ctx = BundleContext::quotient(2, 2, G0).unwrap();
        assert_eq!(cone.rays, vec![CurveClass::line(ctx), CurveClass::eta(ctx)]);
        assert_eq!(cone.exactness, Exactness::Exact);

        let cone = curve_cone_decomposable(&dec(&[-2, -1])).unwrap();
        assert_eq!(cone.rays[1].to_string(), "-2l + η");

        let cone = curve_cone_decomposable(&dec(&[3, 3])).unwrap();
        assert_eq!(cone.rays[1].a, 3);
        assert!(cone.kahler_is_forward_cone);
    }

    #[test]
    fn balanced_split_cone_is_the_forward_cone() {
        let m = ProjectiveModel::Bundle(dec(&[3, 3]));
        for x in 1..=4 {
            for y in -12..=12 {
                let u = class_on(&m, int(x), int(y));
                assert_eq!(kahler_membership(&u, &m).unwrap(), u.in_forward_cone());
            }
        }
    }

    #[test]
    fn semistable_cone() {
        let b = BundleSpec::semistable(G1, 2, -3).unwrap();
        let cone = curve_cone_decomposable(&b).unwrap();
        assert_eq!(cone.rays.len(), 1);
        assert!(cone.kahler_is_forward_cone);
        let m = ProjectiveModel::Bundle(b);
        assert!(kahler_membership(&class_on(&m, int(1), int(2)), &m).unwrap());
        assert!(!kahler_membership(&class_on(&m, int(2), int(3)), &m).unwrap());
    }

    #[test]
    fn membership_examples() {
        let m = ProjectiveModel::Bundle(dec(&[0, 2]));
        assert!(kahler_membership(&class_on(&m, int(1), int(1)), &m).unwrap());
        assert!(!kahler_membership(&class_on(&m, int(1), int(0)), &m).unwrap());
        let m = ProjectiveModel::Bundle(dec(&[-1, 0, 0]));
        assert!(kahler_membership(&class_on(&m, int(1), frac(3, 2)), &m).unwrap());
    }

    #[test]
    fn membership_checks_context() {
        let m = ProjectiveModel::Bundle(dec(&[0, 2]));
        let wrong = DivisorClass::new(int(1), int(1), BundleContext::quotient(2, 3, G0).unwrap());
        assert_eq!(kahler_membership(&wrong, &m), Err(Error::ContextMismatch));
        let sub = class_on(&m, int(1), int(1)).convert_convention();
        assert_eq!(kahler_membership(&sub, &m), Err(Error::WrongConvention));
    }

    #[test]
    fn mixed_model_is_sufficient_only() {
        let v = BundleSpec::semistable(G1, 2, -3).unwrap();
        let m = ProjectiveModel::with_trivial_summand(&v).unwrap();
        assert_eq!(cone_of(&m).unwrap().exactness, Exactness::SufficientOnly);
        assert!(kahler_membership(&class_on(&m, int(1), int(2)), &m).unwrap());
        assert!(!kahler_membership(&class_on(&m, int(2), int(3)), &m).unwrap());
        let high = BundleSpec::semistable(G1, 2, 3).unwrap();
        assert!(matches!(ProjectiveModel::with_trivial_summand(&high), Err(Error::Unsupported(_))));
    }

    #[test]
    fn cone_ratios() {
        assert_eq!(kahler_cone_ratio(&dec(&[0, 2])).unwrap(), int(2));
        assert_eq!(kahler_cone_ratio(&BundleSpec::semistable(G1, 2, -3).unwrap()).unwrap(), int(0));
        assert_eq!(kahler_cone_ratio(&dec(&[4, 4])).unwrap(), int(0));
        assert_eq!(kahler_cone_ratio(&dec(&[-3, 0, 1])).unwrap(), int(7));
    }

    #[test]
    fn minimal_ratios() {
        let g2 = SurfaceGenus::new(2);
        for n in 1..=4 {
            for d in -5..=5 {
                assert_eq!(min_symplectic_ratio(&BundleContext::sub(n, d, g2).unwrap()), int(0));
            }
        }
        assert_eq!(min_symplectic_ratio(&BundleContext::sub(2, -1, G0).unwrap()), int(1));
        assert_eq!(min_symplectic_ratio(&BundleContext::sub(3, 6, G0).unwrap()), int(0));
    }

    #[test]
    fn multisection_bounds() {
        assert_eq!(multisection_degree_bound(&dec(&[0, 2]), 3).unwrap(), 0);
        assert_eq!(multisection_degree_bound(&dec(&[-2, -1]), 2).unwrap(), -4);
        assert_eq!(multisection_degree_bound(&dec(&[5, 7]), 1).unwrap(), 5);
        assert!(multisection_degree_bound(&BundleSpec::semistable(G1, 2, 1).unwrap(), 1).is_err());
    }

    #[test]
    fn restricted_ratio_examples() {
        let r = restricted_ratio(-3, 2, G0).unwrap();
        assert_eq!(r.value, int(1));
        assert_eq!(r.achieving_bundle, dec(&[-2, -1]));
        let r = restricted_ratio(-3, 2, G1).unwrap();
        assert_eq!(r.value, int(0));
        assert_eq!(r.achieving_bundle, BundleSpec::semistable(G1, 2, -3).unwrap());
        let r = restricted_ratio(5, 2, G0).unwrap();
        assert_eq!(r.value, int(5));
        assert_eq!(r.achieving_bundle, dec(&[2, 3]));
    }

    #[test]
    fn matching_bundles() {
        assert_eq!(matching_bundle(-3, 2, G0).unwrap(), dec(&[-2, -1]));
        assert_eq!(matching_bundle(3, 2, G0).unwrap(), dec(&[1, 2]));
        assert_eq!(
            matching_bundle(3, 2, G1).unwrap(),
            BundleSpec::decomposable(G1, vec![1, 2]).unwrap()
        );
        assert_eq!(matching_bundle(0, 4, G0).unwrap(), dec(&[0, 0, 0, 0]));
    }

    #[test]
    fn kahler_classes_for_ratios() {
        let u = kahler_class_for_ratio(-1, 2, G0, &int(2)).unwrap();
        assert_eq!((u.x.clone(), u.y.clone()), (int(2), int(3)));
        assert_eq!(u.ctx().rank(), 3);
        assert_eq!(restrict_to_divisor(&u).unwrap().ratio().unwrap().value, int(2));

        let u = kahler_class_for_ratio(0, 2, G1, &int(1)).unwrap();
        assert_eq!((u.x.clone(), u.y.clone()), (int(2), int(1)));

        assert_eq!(
            kahler_class_for_ratio(-1, 2, G0, &int(1)),
            Err(Error::NoSuchClass { requested: Box::new(int(1)), bound: Box::new(int(1)) })
        );

        let u = kahler_class_for_ratio(2, 3, G0, &frac(7, 3)).unwrap();
        assert_eq!((u.x.clone(), u.y.clone()), (int(9), int(1)));
    }

    #[test]
    fn boundary_pairs_to_zero_with_the_least_section() {
        for d in [vec![0, 2], vec![-2, -1], vec![-3, 1, 4]] {
            let b = dec(&d);
            let cone = curve_cone_decomposable(&b).unwrap();
            let ctx = cone.rays[1].ctx().to_owned();
            let u = DivisorClass::new(int(3), int(-3 * d[0]), ctx);
            assert_eq!(u.pair(&cone.rays[1]).unwrap(), int(0));
            assert!(!cone.contains(&u));
        }
    }

    proptest! {
        #[test]
        fn kahler_inside_forward_cone(d in prop::collection::vec(-5i64..=5, 1..=4),
                                      x in 1i64..=6, y in -20i64..=20, den in 1i64..=4) {
            let m = ProjectiveModel::Bundle(dec(&d));
            let u = class_on(&m, frac(x, den), frac(y, den));
            if kahler_membership(&u, &m).unwrap() {
                prop_assert!(u.in_forward_cone());
            }
        }

        #[test]
        fn membership_is_twist_equivariant(d in prop::collection::vec(-5i64..=5, 1..=4),
                                           x in 1i64..=6, y in -20i64..=20, t in -4i64..=4) {
            let b = dec(&d);
            let m = ProjectiveModel::Bundle(b.clone());
            let u = class_on(&m, int(x), int(y));
            let twisted = ProjectiveModel::Bundle(b.twist(t).unwrap());
            prop_assert_eq!(
                kahler_membership(&u, &m).unwrap(),
                kahler_membership(&u.twist_class(t).unwrap(), &twisted).unwrap()
            );
        }

        #[test]
        fn sphere_semistable_equals_balanced(n in 1u32..=4, a in -4i64..=4, x in 1i64..=5, y in -20i64..=20) {
            let ss = ProjectiveModel::Bundle(BundleSpec::semistable(G0, n, a * i64::from(n)).unwrap());
            let split = ProjectiveModel::Bundle(dec(&vec![a; n as usize]));
            let u = class_on(&ss, int(x), int(y));
            prop_assert_eq!(kahler_membership(&u, &ss).unwrap(), kahler_membership(&u, &split).unwrap());
            prop_assert_eq!(cone_of(&ss).unwrap(), cone_of(&split).unwrap());
        }
    }
}
