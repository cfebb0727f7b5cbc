//! Admissibility of fibred exceptional divisors, matching-triple
//! certificates and the dimension-six blow-down verdict.
//!
//! A divisor `D → Σ` is a `P^{n-1}`-bundle whose normal bundle restricts to
//! the tautological bundle on fibers. It is modelled as `P_s(W)` with
//! `deg W = -alpha`, where `alpha = ∫_D (-1)ⁿ c₁(N_D)ⁿ`; the restricted
//! symplectic class `[ω|_D]` is a class in that sub-convention context.
//! Equivalently `D = P(V)` with `V = W*`, `deg V = alpha`, which is the
//! presentation the certificates use.

use std::fmt;

use num_traits::Signed;

use crate::bundles::{BundleSpec, SurfaceGenus};
use crate::cohomology::{residue, BundleContext, Convention, DivisorClass};
use crate::cones::{kahler_class_for_ratio, kahler_membership, matching_bundle, restrict_to_divisor, ProjectiveModel};
use crate::rational::{int, Rational};
use crate::{Error, Result};

/// `alpha = -deg N_Σ` for the exceptional divisor of a blow-up along `Σ`.
pub fn alpha_from_blowup_normal(deg_normal: i64) -> i64 {
    -deg_normal
}

/// Normal degree of the surface a divisor with this `alpha` blows down to.
pub fn blowup_normal_from_alpha(alpha: i64) -> i64 {
    -alpha
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    Point,
    Surface(SurfaceGenus),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ruling {
    First,
    Second,
}

impl Ruling {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::First => "first",
            Self::Second => "second",
        }
    }
}

/// Input to the blow-down decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalDivisorData {
    base: Base,
    n: u32,
    alpha: i64,
    omega_class: Option<DivisorClass>,
    ruled_areas: Option<(Rational, Rational)>,
}

/// `S² × S²` with `alpha = 2`: both rulings are candidate fibrations.
fn is_double_ruling(g: SurfaceGenus, n: u32, alpha: i64) -> bool {
    g.is_sphere() && n == 2 && alpha == 2
}

/// The `[ω|_D]` of the ruling whose fiber has area `fiber` and whose base
/// has area `base`: ratio `2·base/fiber`, class `(fiber, base - fiber)` in
/// the sub-convention context of degree `-2`.
fn ruled_class(fiber: &Rational, base: &Rational) -> Result<DivisorClass> {
    let ctx = BundleContext::sub(2, -2, SurfaceGenus::new(0))?;
    Ok(DivisorClass::new(fiber.clone(), base - fiber, ctx))
}

impl ExceptionalDivisorData {
    /// `D = P^{n-1}` over a point.
    pub fn point(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("rank must be at least 1".into()));
        }
        Ok(Self { base: Base::Point, n, alpha: 0, omega_class: None, ruled_areas: None })
    }

    /// A divisor fibred over a surface. `omega_class` must be a forward-cone
    /// class in the sub convention on `(n, -alpha)`; `ruled_areas` is
    /// required exactly in the `S² × S²`, `alpha = 2` case and must then
    /// agree with the class (ratio `2y/x` for the first ruling).
    pub fn surface(
        genus: SurfaceGenus,
        n: u32,
        alpha: i64,
        omega_class: DivisorClass,
        ruled_areas: Option<(Rational, Rational)>,
    ) -> Result<Self> {
        let expected = BundleContext::sub(n, -alpha, genus)?;
        let omega_class = match omega_class.ctx().convention() {
            Convention::Sub => omega_class,
            Convention::Quotient => omega_class.convert_convention(),
        };
        if *omega_class.ctx() != expected {
            return Err(Error::ContextMismatch);
        }
        if !omega_class.in_forward_cone() {
            return Err(Error::NotInForwardCone);
        }
        match (&ruled_areas, is_double_ruling(genus, n, alpha)) {
            (None, true) => {
                return Err(Error::InvalidInput("S²×S² with alpha = 2 needs the areas of both rulings".into()))
            }
            (Some(_), false) => {
                return Err(Error::InvalidInput("ruled areas only apply to S²×S² with alpha = 2".into()))
            }
            (Some((x, y)), true) => {
                if !x.is_positive() || !y.is_positive() {
                    return Err(Error::InvalidInput("ruling areas must be positive".into()));
                }
                let rho = omega_class.cone_ratio()?;
                if rho != int(2) * y / x {
                    return Err(Error::InvalidInput(format!(
                        "class has ratio {rho} but the ruled areas give {}",
                        int(2) * y / x
                    )));
                }
            }
            (None, false) => {}
        }
        Ok(Self { base: Base::Surface(genus), n, alpha, omega_class: Some(omega_class), ruled_areas })
    }

    /// `S² × S²` with `alpha = 2`, from the fiber areas of the two rulings;
    /// the class is presented with respect to the first ruling.
    pub fn ruled_s2xs2(first_area: Rational, second_area: Rational) -> Result<Self> {
        if !first_area.is_positive() || !second_area.is_positive() {
            return Err(Error::InvalidInput("ruling areas must be positive".into()));
        }
        let omega = ruled_class(&first_area, &second_area)?;
        Self::surface(SurfaceGenus::new(0), 2, 2, omega, Some((first_area, second_area)))
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn rank(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn omega_class(&self) -> Option<&DivisorClass> {
        self.omega_class.as_ref()
    }

    pub fn ruled_areas(&self) -> Option<&(Rational, Rational)> {
        self.ruled_areas.as_ref()
    }

    /// `⟨c₁(N_D), l⟩`, fixed by the tautological normal condition.
    pub fn fiber_normal_degree(&self) -> i64 {
        -1
    }

    /// `ρ([ω|_D]) = alpha + n·y/x`.
    pub fn ratio(&self) -> Result<Rational> {
        self.omega_class
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("a point-based divisor has no ratio".into()))?
            .cone_ratio()
    }

    fn genus(&self) -> Result<SurfaceGenus> {
        match self.base {
            Base::Surface(g) => Ok(g),
            Base::Point => Err(Error::InvalidInput("admissibility needs a surface base".into())),
        }
    }

    /// The same divisor presented as a bundle along `ruling`.
    pub fn along(&self, ruling: Ruling) -> Result<Self> {
        match ruling {
            Ruling::First => Ok(self.clone()),
            Ruling::Second => {
                let (x, y) = self
                    .ruled_areas
                    .clone()
                    .ok_or_else(|| Error::InvalidInput("only S²×S² has a second ruling".into()))?;
                Self::ruled_s2xs2(y, x)
            }
        }
    }
}

/// The threshold the ratio must exceed: `alpha` over positive genus,
/// `max{alpha, t_n(alpha)}` over the sphere.
pub fn admissibility_bound(genus: SurfaceGenus, n: u32, alpha: i64) -> Rational {
    if genus.is_sphere() {
        int(alpha.max(i64::from(residue(alpha, n))))
    } else {
        int(alpha)
    }
}

pub fn is_admissible(d: &ExceptionalDivisorData) -> Result<bool> {
    let g = d.genus()?;
    Ok(d.ratio()? > admissibility_bound(g, d.n, d.alpha))
}

/// Descriptors of the triple `(K, D', S) = (P(V ⊕ O), P(V), P(O))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleShape {
    /// Rank of `V ⊕ O`; `K` is a `P^{n}`-bundle.
    pub total_rank: u32,
    /// Rank of `V`; `D'` is a `P^{n-1}`-bundle.
    pub divisor_rank: u32,
    /// `S` is the section from the trivial summand.
    pub section_rank: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingTripleCertificate {
    /// `V` in the quotient convention, `deg V = alpha`.
    pub bundle: BundleSpec,
    pub triple: TripleShape,
    /// Kähler class on `K`.
    pub kahler_class: DivisorClass,
    /// Ratio of `kahler_class` restricted to `D'`.
    pub restricted_ratio: Rational,
    /// The Kähler form can be averaged to be invariant under the semi-free
    /// circle action from the splitting `V ⊕ O`.
    pub s1_invariant: bool,
    /// Matching holds at the level of classes.
    pub weak: bool,
    pub notes: Vec<String>,
}

pub fn build_matching_triple(d: &ExceptionalDivisorData) -> Result<MatchingTripleCertificate> {
    let g = d.genus()?;
    let rho = d.ratio()?;
    let bound = admissibility_bound(g, d.n, d.alpha);
    if rho <= bound {
        return Err(Error::NotAdmissible(format!("ratio {rho} does not exceed {bound}")));
    }
    let bundle = matching_bundle(d.alpha, d.n, g)?;
    let kahler_class = kahler_class_for_ratio(d.alpha, d.n, g, &rho)?;
    let mut notes = Vec::new();
    if d.n == 2 {
        notes.push("dimension 6: class-level matching upgrades to form-level matching".to_string());
    }
    notes.push("open: whether the integral deformation of the ambient form can be avoided".to_string());
    Ok(MatchingTripleCertificate {
        triple: TripleShape { total_rank: d.n + 1, divisor_rank: d.n, section_rank: 1 },
        restricted_ratio: restrict_to_divisor(&kahler_class)?.ratio()?.value,
        bundle,
        kahler_class,
        s1_invariant: true,
        weak: true,
        notes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateDefect {
    NormalDegreeMismatch,
    RankMismatch,
    RatioMismatch,
    NotKahler,
    MissingCircleInvariance,
    MalformedTriple,
}

impl fmt::Display for CertificateDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::NormalDegreeMismatch => "normal degree mismatch",
            Self::RankMismatch => "rank mismatch",
            Self::RatioMismatch => "restricted ratio differs from the divisor's ratio",
            Self::NotKahler => "class is not in the Kähler cone of the triple",
            Self::MissingCircleInvariance => "circle invariance not asserted",
            Self::MalformedTriple => "triple descriptors inconsistent with the bundle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateCheck {
    pub defects: Vec<CertificateDefect>,
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        self.defects.is_empty()
    }
}

/// Re-derives every certificate invariant against the divisor.
pub fn validate_certificate(c: &MatchingTripleCertificate, d: &ExceptionalDivisorData) -> CertificateCheck {
    let mut defects = Vec::new();
    if c.bundle.degree() != d.alpha {
        defects.push(CertificateDefect::NormalDegreeMismatch);
    }
    if c.bundle.rank() != d.n {
        defects.push(CertificateDefect::RankMismatch);
    }
    if c.triple != (TripleShape { total_rank: c.bundle.rank() + 1, divisor_rank: c.bundle.rank(), section_rank: 1 }) {
        defects.push(CertificateDefect::MalformedTriple);
    }
    let restricted = restrict_to_divisor(&c.kahler_class).and_then(|r| r.ratio());
    match (restricted, d.ratio()) {
        (Ok(r), Ok(rho)) if r.value == rho && c.restricted_ratio == rho => {}
        _ => defects.push(CertificateDefect::RatioMismatch),
    }
    let member = ProjectiveModel::with_trivial_summand(&c.bundle)
        .and_then(|model| kahler_membership(&c.kahler_class, &model));
    if member != Ok(true) {
        defects.push(CertificateDefect::NotKahler);
    }
    if !c.s1_invariant {
        defects.push(CertificateDefect::MissingCircleInvariance);
    }
    CertificateCheck { defects }
}

/// Validates the certificate carried by `v`, if any, against `d` seen along
/// the chosen ruling.
pub fn validate_verdict(v: &BlowdownVerdict, d: &ExceptionalDivisorData) -> Option<Result<CertificateCheck>> {
    match v {
        BlowdownVerdict::BlowdownUpToDeformation { certificate, chosen_ruling } => Some(
            d.along(chosen_ruling.unwrap_or(Ruling::First))
                .map(|d| validate_certificate(certificate, &d)),
        ),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlowdownVerdict {
    AlwaysBlowdown,
    BlowdownUpToDeformation {
        certificate: Box<MatchingTripleCertificate>,
        chosen_ruling: Option<Ruling>,
    },
    NotAdmissible(String),
    Undetermined(String),
}

impl BlowdownVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            Self::AlwaysBlowdown => "AlwaysBlowdown",
            Self::BlowdownUpToDeformation { .. } => "BlowdownUpToDeformation",
            Self::NotAdmissible(_) => "NotAdmissible",
            Self::Undetermined(_) => "Undetermined",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Self::NotAdmissible(r) | Self::Undetermined(r) => Some(r),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&MatchingTripleCertificate> {
        match self {
            Self::BlowdownUpToDeformation { certificate, .. } => Some(certificate),
            _ => None,
        }
    }
}

pub const EQUAL_RULINGS_REASON: &str =
    "ρ = 2 for both rulings; the ratio criterion does not decide S²×S² with equal ruling areas";

fn up_to_deformation(d: &ExceptionalDivisorData, chosen_ruling: Option<Ruling>) -> Result<BlowdownVerdict> {
    match build_matching_triple(d) {
        Ok(c) => Ok(BlowdownVerdict::BlowdownUpToDeformation { certificate: Box::new(c), chosen_ruling }),
        Err(Error::NotAdmissible(reason)) => Ok(BlowdownVerdict::NotAdmissible(reason)),
        Err(e) => Err(e),
    }
}

/// Blow-down verdict for a divisor in a 6-manifold (`D` a `P¹`-bundle over
/// a surface, or `P²` over a point).
///
/// Over the sphere a class with `ρ ≤ t₂(alpha)` carries no symplectic form
/// at all, so it is reported as not admissible rather than blown down.
pub fn blowdown_verdict_dim6(d: &ExceptionalDivisorData) -> Result<BlowdownVerdict> {
    let g = match d.base {
        Base::Point => return Ok(BlowdownVerdict::AlwaysBlowdown),
        Base::Surface(g) => g,
    };
    if d.n != 2 {
        return Err(Error::InvalidInput(format!(
            "a fibred divisor in dimension 6 is a P¹-bundle (rank 2), got rank {}",
            d.n
        )));
    }
    if !is_double_ruling(g, d.n, d.alpha) {
        return up_to_deformation(d, None);
    }
    let (x, y) = d
        .ruled_areas
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("S²×S² with alpha = 2 needs the areas of both rulings".into()))?;
    match x.cmp(y) {
        std::cmp::Ordering::Equal => Ok(BlowdownVerdict::Undetermined(EQUAL_RULINGS_REASON.to_string())),
        std::cmp::Ordering::Less => up_to_deformation(d, Some(Ruling::First)),
        std::cmp::Ordering::Greater => up_to_deformation(&d.along(Ruling::Second)?, Some(Ruling::Second)),
    }
}

/// Verdict for any rank. Above dimension six only the class-level triple is
/// certified, so an admissible divisor is `Undetermined` there.
pub fn blowdown_verdict(d: &ExceptionalDivisorData) -> Result<BlowdownVerdict> {
    if d.base == Base::Point || d.n == 2 {
        return blowdown_verdict_dim6(d);
    }
    Ok(match build_matching_triple(d) {
        Ok(_) => BlowdownVerdict::Undetermined(format!(
            "admissible: a weak matching triple exists, but in rank {} form-level matching is not decided",
            d.n
        )),
        Err(Error::NotAdmissible(reason)) => BlowdownVerdict::NotAdmissible(reason),
        Err(e) => return Err(e),
    })
}
