//! Complex vector bundles over a closed oriented surface, up to the data the
//! rest of the crate needs: rank, degree, and either the degrees of a
//! splitting into line bundles or an opaque semistability marker.

use std::fmt;

use serde::Serialize;

use crate::rational::{frac, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SurfaceGenus(u32);

impl SurfaceGenus {
    pub const fn new(g: u32) -> Self {
        Self(g)
    }

    pub const fn get(self) -> u32 {
        self.0
    }

    pub const fn is_sphere(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for SurfaceGenus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BundleKind {
    /// Degrees of the line summands, sorted ascending.
    Decomposable(Vec<i64>),
    /// A semistable bundle known only by rank and degree.
    SemiStable { rank: u32, degree: i64 },
}

/// A bundle over a surface of fixed genus.
///
/// Decomposable degree lists are kept sorted, so equality is multiset
/// equality of the summand degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BundleSpec {
    kind: BundleKind,
    base: SurfaceGenus,
}

/// `deg / rank`, exact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slope(pub Rational);

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn checked_sum(degrees: &[i64]) -> Result<i64> {
    degrees
        .iter()
        .try_fold(0i64, |acc, &a| acc.checked_add(a))
        .ok_or(Error::Overflow("bundle degree"))
}

impl BundleSpec {
    pub fn decomposable(base: SurfaceGenus, mut degrees: Vec<i64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidInput("a decomposable bundle needs at least one summand".into()));
        }
        if u32::try_from(degrees.len()).is_err() {
            return Err(Error::Overflow("bundle rank"));
        }
        checked_sum(&degrees)?;
        degrees.sort_unstable();
        Ok(Self { kind: BundleKind::Decomposable(degrees), base })
    }

    /// Fails when no semistable bundle of this rank and degree exists over
    /// the base (genus 0 forces `rank | degree`).
    pub fn semistable(base: SurfaceGenus, rank: u32, degree: i64) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput("rank must be at least 1".into()));
        }
        if !semistable_exists(base, rank, degree) {
            return Err(Error::NoSuchSemistable { rank, degree });
        }
        Ok(Self { kind: BundleKind::SemiStable { rank, degree }, base })
    }

    pub fn line(base: SurfaceGenus, degree: i64) -> Self {
        Self { kind: BundleKind::Decomposable(vec![degree]), base }
    }

    pub fn kind(&self) -> &BundleKind {
        &self.kind
    }

    pub fn base(&self) -> SurfaceGenus {
        self.base
    }

    pub fn rank(&self) -> u32 {
        match &self.kind {
            BundleKind::Decomposable(d) => d.len() as u32,
            BundleKind::SemiStable { rank, .. } => *rank,
        }
    }

    pub fn degree(&self) -> i64 {
        match &self.kind {
            // the constructors guarantee the sum fits
            BundleKind::Decomposable(d) => d.iter().sum(),
            BundleKind::SemiStable { degree, .. } => *degree,
        }
    }

    /// Summand degrees, or [`Error::SemiStableOpaque`].
    pub fn degrees(&self) -> Result<&[i64]> {
        match &self.kind {
            BundleKind::Decomposable(d) => Ok(d),
            BundleKind::SemiStable { .. } => Err(Error::SemiStableOpaque),
        }
    }

    pub fn is_decomposable(&self) -> bool {
        matches!(self.kind, BundleKind::Decomposable(_))
    }

    /// Over the sphere every bundle splits; a semistable one is balanced.
    /// Returns the split form of such a bundle, and `self` otherwise.
    pub fn split_over_sphere(&self) -> Self {
        match self.kind {
            BundleKind::SemiStable { rank, degree } if self.base.is_sphere() => {
                let each = degree / i64::from(rank);
                Self { kind: BundleKind::Decomposable(vec![each; rank as usize]), base: self.base }
            }
            _ => self.clone(),
        }
    }

    pub fn slope(&self) -> Slope {
        Slope(frac(self.degree(), i64::from(self.rank())))
    }

    pub fn dual(&self) -> Self {
        let kind = match &self.kind {
            BundleKind::Decomposable(d) => {
                let mut neg: Vec<i64> = d.iter().map(|a| -a).collect();
                neg.reverse();
                BundleKind::Decomposable(neg)
            }
            BundleKind::SemiStable { rank, degree } => BundleKind::SemiStable { rank: *rank, degree: -degree },
        };
        Self { kind, base: self.base }
    }

    /// Tensor with a line bundle of degree `t`.
    pub fn twist(&self, t: i64) -> Result<Self> {
        let overflow = || Error::Overflow("twist");
        let kind = match &self.kind {
            BundleKind::Decomposable(d) => {
                let shifted = d.iter().map(|a| a.checked_add(t).ok_or_else(overflow)).collect::<Result<Vec<_>>>()?;
                checked_sum(&shifted)?;
                BundleKind::Decomposable(shifted)
            }
            BundleKind::SemiStable { rank, degree } => {
                let degree = i64::from(*rank)
                    .checked_mul(t)
                    .and_then(|s| degree.checked_add(s))
                    .ok_or_else(overflow)?;
                BundleKind::SemiStable { rank: *rank, degree }
            }
        };
        Ok(Self { kind, base: self.base })
    }

    /// Degrees of the line summands of the `m`-th symmetric power: one entry
    /// `Σ kᵢ·aᵢ` per exponent vector with `Σ kᵢ = m`, sorted ascending.
    pub fn sym_power(&self, m: u32) -> Result<Self> {
        let degrees = self.degrees()?;
        if m == 0 {
            return Err(Error::InvalidInput("symmetric power exponent must be positive".into()));
        }
        let (rank, _) = sym_rank_degree(degrees.len() as u32, 0, m)?;
        if rank > SYM_POWER_LIMIT {
            return Err(Error::SizeGuard(format!("symmetric power would have rank {rank}")));
        }
        // layers[k] = degrees of the degree-k monomials in the summands seen so far
        let mut layers: Vec<Vec<i64>> = vec![vec![0]];
        layers.extend((1..=m).map(|_| Vec::new()));
        for &a in degrees {
            for k in (1..=m as usize).rev() {
                let mut grown = Vec::new();
                for (j, layer) in layers[..k].iter().enumerate() {
                    let shift = a.checked_mul((k - j) as i64).ok_or(Error::Overflow("symmetric power"))?;
                    for &b in layer {
                        grown.push(b.checked_add(shift).ok_or(Error::Overflow("symmetric power"))?);
                    }
                }
                layers[k].extend(grown);
            }
        }
        let mut out = layers.swap_remove(m as usize);
        out.sort_unstable();
        checked_sum(&out)?;
        Ok(Self { kind: BundleKind::Decomposable(out), base: self.base })
    }

    /// Split bundles are semistable iff all degrees agree.
    pub fn is_semistable(&self) -> bool {
        match &self.kind {
            BundleKind::Decomposable(d) => d.first() == d.last(),
            BundleKind::SemiStable { .. } => true,
        }
    }

    /// `(least quotient line degree, greatest line subbundle degree)` of a
    /// split bundle: the smallest and largest summand degree.
    pub fn quotient_line_degree_bounds(&self) -> Result<(i64, i64)> {
        let d = self.degrees()?;
        Ok((d[0], d[d.len() - 1]))
    }

    pub fn min_degree(&self) -> Result<i64> {
        Ok(self.quotient_line_degree_bounds()?.0)
    }
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            BundleKind::Decomposable(d) => {
                let parts: Vec<String> = d.iter().map(|a| format!("O({a})")).collect();
                write!(f, "{}", parts.join(" ⊕ "))
            }
            BundleKind::SemiStable { rank, degree } => write!(f, "semistable(rank {rank}, degree {degree})"),
        }
    }
}

const SYM_POWER_LIMIT: u64 = 1 << 22;

/// Exact `C(n, k)`, failing on overflow.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is always integral
        acc = acc
            .checked_mul(u128::from(n - i))
            .ok_or(Error::Overflow("binomial coefficient"))?
            / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as u64)
}

/// Rank and degree of `Sym^m` of a rank-`rank`, degree-`degree` bundle:
/// `(C(m+r-1, m), C(m+r-1, m-1)·degree)`.
pub fn sym_rank_degree(rank: u32, degree: i64, m: u32) -> Result<(u64, i64)> {
    if rank == 0 || m == 0 {
        return Err(Error::InvalidInput("rank and exponent must be positive".into()));
    }
    let top = u64::from(m) + u64::from(rank) - 1;
    let sym_rank = binomial(top, u64::from(m))?;
    let factor = i64::try_from(binomial(top, u64::from(m) - 1)?).map_err(|_| Error::Overflow("binomial coefficient"))?;
    let sym_degree = factor.checked_mul(degree).ok_or(Error::Overflow("symmetric power degree"))?;
    Ok((sym_rank, sym_degree))
}

pub fn semistable_exists(g: SurfaceGenus, rank: u32, degree: i64) -> bool {
    rank >= 1 && (g.get() >= 1 || degree.rem_euclid(i64::from(rank)) == 0)
}
