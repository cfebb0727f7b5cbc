//! The even cohomology ring of a linear projective bundle over a curve.
//!
//! A context fixes the rank `n` of the modelling vector bundle, its degree
//! `d` and which projectivization is meant:
//!
//! - [`Convention::Quotient`]: `P(E)`, lines are one-dimensional quotients,
//!   hyperplane class `ξ` with `ξⁿ = d`;
//! - [`Convention::Sub`]: `P_s(V)`, lines are one-dimensional subspaces,
//!   class `τ` with `τⁿ = -d` (since `P_s(V) = P(V*)`).
//!
//! In either case `H²` has basis (hyperplane class, fiber class `F`) and
//! `H₂` has the dual basis (`η`, `l`) up to order: `⟨h, l⟩ = 1`,
//! `⟨F, l⟩ = 0`, `⟨h, η⟩ = 0`, `⟨F, η⟩ = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bundles::SurfaceGenus;
use crate::rational::{int, pow, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Quotient,
    Sub,
}

impl Convention {
    pub fn flipped(self) -> Self {
        match self {
            Self::Quotient => Self::Sub,
            Self::Sub => Self::Quotient,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Quotient => "quotient",
            Self::Sub => "sub",
        })
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quotient" => Ok(Self::Quotient),
            "sub" => Ok(Self::Sub),
            other => Err(Error::InvalidInput(format!("unknown convention {other:?}"))),
        }
    }
}

/// A `P^{n-1}`-bundle over a surface, modelled on a rank-`n` bundle of
/// degree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BundleContext {
    rank: u32,
    degree: i64,
    convention: Convention,
    genus: SurfaceGenus,
}

/// `t_n(w)`: the representative of `w mod n` in `{0, …, n-1}`.
pub fn residue(w: i64, n: u32) -> u32 {
    w.rem_euclid(i64::from(n)) as u32
}

impl BundleContext {
    pub fn new(rank: u32, degree: i64, convention: Convention, genus: SurfaceGenus) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput("rank must be at least 1".into()));
        }
        if degree == i64::MIN {
            return Err(Error::Overflow("bundle degree"));
        }
        Ok(Self { rank, degree, convention, genus })
    }

    pub fn quotient(rank: u32, degree: i64, genus: SurfaceGenus) -> Result<Self> {
        Self::new(rank, degree, Convention::Quotient, genus)
    }

    pub fn sub(rank: u32, degree: i64, genus: SurfaceGenus) -> Result<Self> {
        Self::new(rank, degree, Convention::Sub, genus)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn genus(&self) -> SurfaceGenus {
        self.genus
    }

    /// `∫ hⁿ` for the hyperplane class `h` of this convention.
    pub fn top_self_intersection(&self) -> i64 {
        match self.convention {
            Convention::Quotient => self.degree,
            Convention::Sub => -self.degree,
        }
    }

    /// Same bundle, other convention: `P(E) = P_s(E*)`.
    pub fn converted(&self) -> Self {
        Self { degree: -self.degree, convention: self.convention.flipped(), ..*self }
    }

    /// Topological type: `t_n(d)` in the quotient convention, `t_n(-d)` in
    /// the sub convention.
    pub fn topological_type(&self) -> u32 {
        residue(self.top_self_intersection(), self.rank)
    }

    fn same_as(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

pub fn topological_type(ctx: &BundleContext) -> u32 {
    ctx.topological_type()
}

/// `x·h + y·F` in `H²(P; Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub x: Rational,
    pub y: Rational,
    ctx: BundleContext,
}

/// Value of the ratio function together with whether the class actually
/// lies in the forward cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReading {
    pub value: Rational,
    pub in_forward_cone: bool,
}

impl DivisorClass {
    pub fn new(x: Rational, y: Rational, ctx: BundleContext) -> Self {
        Self { x, y, ctx }
    }

    pub fn ctx(&self) -> &BundleContext {
        &self.ctx
    }

    /// The same coordinates read on another bundle (used for restrictions
    /// `P(V) ⊂ P(V ⊕ O)`, where both `ξ` and `F` restrict to themselves).
    pub fn with_context(&self, ctx: BundleContext) -> Self {
        Self { ctx, ..self.clone() }
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Self { x: &self.x * factor, y: &self.y * factor, ctx: self.ctx }
    }

    /// `∫ uⁿ` in closed form: `x^{n-1}(dx + ny)` with `d` replaced by `-d`
    /// in the sub convention.
    pub fn top_power(&self) -> Rational {
        let n = self.ctx.rank;
        pow(&self.x, n - 1) * self.linear_top_factor()
    }

    // `±d·x + n·y`
    fn linear_top_factor(&self) -> Rational {
        int(self.ctx.top_self_intersection()) * &self.x + int(i64::from(self.ctx.rank)) * &self.y
    }

    pub fn pair(&self, z: &CurveClass) -> Result<Rational> {
        self.ctx.same_as(&z.ctx)?;
        Ok(int(z.a) * &self.x + int(z.m) * &self.y)
    }

    /// `x > 0` and `±d·x + n·y > 0`.
    pub fn in_forward_cone(&self) -> bool {
        self.x.is_positive() && self.linear_top_factor().is_positive()
    }

    /// `±d + n·y/x`, the ratio `uⁿ / ⟨u, l⟩ⁿ`. Defined whenever `x ≠ 0`;
    /// the reading records whether `u` is in the forward cone.
    pub fn ratio(&self) -> Result<RatioReading> {
        if self.x.is_zero() {
            return Err(Error::DegenerateClass);
        }
        let value = int(self.ctx.top_self_intersection()) + int(i64::from(self.ctx.rank)) * &self.y / &self.x;
        Ok(RatioReading { value, in_forward_cone: self.in_forward_cone() })
    }

    /// The ratio, for callers that require a forward-cone class.
    pub fn cone_ratio(&self) -> Result<Rational> {
        let reading = self.ratio().map_err(|_| Error::NotInForwardCone)?;
        if reading.in_forward_cone {
            Ok(reading.value)
        } else {
            Err(Error::NotInForwardCone)
        }
    }

    /// Reinterpret on `P_s(E*)` (resp. `P(V*)`): coordinates unchanged.
    pub fn convert_convention(&self) -> Self {
        Self { ctx: self.ctx.converted(), ..self.clone() }
    }

    /// Coordinates of the same class after presenting `P(E)` as
    /// `P(E ⊗ L)` with `deg L = t`: `ξ_{E⊗L} = ξ_E + t·F`.
    pub fn twist_class(&self, t: i64) -> Result<Self> {
        if self.ctx.convention != Convention::Quotient {
            return Err(Error::WrongConvention);
        }
        let degree = i64::from(self.ctx.rank)
            .checked_mul(t)
            .and_then(|s| self.ctx.degree.checked_add(s))
            .ok_or(Error::Overflow("twist"))?;
        let ctx = BundleContext::new(self.ctx.rank, degree, Convention::Quotient, self.ctx.genus)?;
        Ok(Self { y: &self.y - int(t) * &self.x, x: self.x.clone(), ctx })
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = match self.ctx.convention {
            Convention::Quotient => "ξ",
            Convention::Sub => "τ",
        };
        write!(f, "({})·{h} + ({})·F", self.x, self.y)
    }
}

/// `a·l + m·η` in `H₂(P; Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveClass {
    pub a: i64,
    pub m: i64,
    ctx: BundleContext,
}

impl CurveClass {
    pub fn new(a: i64, m: i64, ctx: BundleContext) -> Self {
        Self { a, m, ctx }
    }

    pub fn line(ctx: BundleContext) -> Self {
        Self::new(1, 0, ctx)
    }

    pub fn eta(ctx: BundleContext) -> Self {
        Self::new(0, 1, ctx)
    }

    pub fn ctx(&self) -> &BundleContext {
        &self.ctx
    }
}

impl fmt::Display for CurveClass {
    /// `-2l + η`, `l`, `η`, `3l + 2η`, …
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn term(c: i64, sym: &str) -> String {
            match c {
                1 => sym.to_string(),
                -1 => format!("-{sym}"),
                c => format!("{c}{sym}"),
            }
        }
        match (self.a, self.m) {
            (0, 0) => f.write_str("0"),
            (a, 0) => f.write_str(&term(a, "l")),
            (0, m) => f.write_str(&term(m, "η")),
            (a, m) if m < 0 => write!(f, "{} - {}", term(a, "l"), term(-m, "η")),
            (a, m) => write!(f, "{} + {}", term(a, "l"), term(m, "η")),
        }
    }
}

/// Class of the section cut out by a quotient line bundle of the given
/// degree: `deg·l + η`.
pub fn section_class(ctx: BundleContext, quotient_line_degree: i64) -> CurveClass {
    CurveClass::new(quotient_line_degree, 1, ctx)
}

/// `ξ^xi · F^fiber`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub xi: u32,
    pub fiber: u32,
}

/// A rational combination of monomials `ξᵃFᵇ`, always stored reduced:
/// `b ≤ 1` and `a ≤ n - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    terms: BTreeMap<Monomial, Rational>,
    ctx: BundleContext,
}

impl RingElement {
    pub fn zero(ctx: BundleContext) -> Self {
        Self { terms: BTreeMap::new(), ctx }
    }

    pub fn one(ctx: BundleContext) -> Self {
        Self::monomial(ctx, 0, 0, int(1))
    }

    /// `coeff · ξ^xi · F^fiber`, reduced.
    pub fn monomial(ctx: BundleContext, xi: u32, fiber: u32, coeff: Rational) -> Self {
        let mut out = Self::zero(ctx);
        out.accumulate(Monomial { xi, fiber }, coeff);
        out
    }

    pub fn from_class(u: &DivisorClass) -> Self {
        let mut out = Self::monomial(u.ctx, 1, 0, u.x.clone());
        out.accumulate(Monomial { xi: 0, fiber: 1 }, u.y.clone());
        out
    }

    pub fn ctx(&self) -> &BundleContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, xi: u32, fiber: u32) -> Rational {
        self.terms.get(&Monomial { xi, fiber }).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    // Adds `coeff·ξᵃFᵇ` after reducing it: first `F² = 0`, then
    // `ξⁿ = d·ξ^{n-1}F`, which kills anything of higher degree.
    fn accumulate(&mut self, mono: Monomial, coeff: Rational) {
        let n = self.ctx.rank;
        let Monomial { mut xi, mut fiber } = mono;
        if fiber >= 2 || coeff.is_zero() {
            return;
        }
        let mut coeff = coeff;
        while xi >= n && fiber == 0 {
            xi -= 1;
            fiber = 1;
            coeff *= int(self.ctx.top_self_intersection());
        }
        if xi >= n || coeff.is_zero() {
            return;
        }
        let key = Monomial { xi, fiber };
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.ctx.same_as(&other.ctx)?;
        let mut out = Self::zero(self.ctx);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.accumulate(Monomial { xi: p.xi + q.xi, fiber: p.fiber + q.fiber }, a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.ctx);
        for _ in 0..k {
            acc = acc.multiply(self).expect("same context");
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ctx.same_as(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(*m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero(self.ctx);
        for (m, c) in &self.terms {
            out.accumulate(*m, c * factor);
        }
        out
    }

    /// Coefficient of the point class `ξ^{n-1}F`.
    pub fn integrate(&self) -> Rational {
        self.coefficient(self.ctx.rank - 1, 1)
    }
}

impl Mul for &RingElement {
    type Output = RingElement;

    /// Panics on mismatched contexts; use [`RingElement::multiply`] to get
    /// an error instead.
    fn mul(self, rhs: Self) -> RingElement {
        self.multiply(rhs).expect("ring elements on different bundles")
    }
}

impl Add for &RingElement {
    type Output = RingElement;

    fn add(self, rhs: Self) -> RingElement {
        RingElement::add(self, rhs).expect("ring elements on different bundles")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;

    fn sub(self, rhs: Self) -> RingElement {
        RingElement::add(self, &rhs.scale(&int(-1))).expect("ring elements on different bundles")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = format!("({c})");
                if m.xi > 0 {
                    s.push_str(&format!("·ξ^{}", m.xi));
                }
                if m.fiber > 0 {
                    s.push_str("·F");
                }
                s
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

pub fn ring_multiply(p: &RingElement, q: &RingElement) -> Result<RingElement> {
    p.multiply(q)
}

pub fn integrate(p: &RingElement) -> Rational {
    p.integrate()
}
