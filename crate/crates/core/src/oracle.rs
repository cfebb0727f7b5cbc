//! Brute-force oracles for the closed formulas, and the sweeps built on them.
//!
//! Nothing here calls into the ring reducer of [`crate::cohomology`] or the
//! symmetric-power routine of [`crate::bundles`]; each oracle recomputes its
//! quantity from scratch so that agreement is evidence, not tautology.
//!
//! Sweep results are reported one line per check:
//!
//! ```text
//! CHECK <name> <input-digest> PASS|FAIL <detail>
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::bundles::{sym_rank_degree, BundleSpec, SurfaceGenus};
use crate::cohomology::{BundleContext, Convention, CurveClass, DivisorClass};
use crate::cones::{kahler_membership, ProjectiveModel};
use crate::rational::{frac, int, Rational};
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const MAX_ORACLE_RANK: usize = 6;
pub const MAX_ORACLE_POWER: u32 = 8;

/// `∫ uᵏ` by binomial expansion of `(x·h + y·F)ᵏ` into a flat term list,
/// reduced by rewriting powers of `h` first and discarding `F²` last.
///
/// With `x = p/q`, `y = r/s` every term is kept over the common
/// denominator `qᵏsᵏ`, so the expansion runs in integers.
pub fn brute_ring_power(u: &DivisorClass, k: u32) -> Result<Rational> {
    let ctx = u.ctx();
    let n = ctx.rank();
    if k > n {
        return Err(Error::InvalidInput(format!("power {k} exceeds rank {n}")));
    }
    let top = BigInt::from(ctx.top_self_intersection());
    let (p, q) = (u.x.numer(), u.x.denom());
    let (r, s) = (u.y.numer(), u.y.denom());
    // (h-exponent, F-exponent, numerator over qᵏsᵏ)
    let mut terms: Vec<(u32, u32, BigInt)> = Vec::new();
    let mut choose = BigInt::one();
    for j in 0..=k {
        // C(k, j)·(p/q)^{k-j}·(r/s)^j = C(k, j)·p^{k-j}·s^{k-j}·r^j·q^j / (qᵏsᵏ)
        let coeff = &choose * Pow::pow(p * s, k - j) * Pow::pow(r * q, j);
        terms.push((k - j, j, coeff));
        choose = choose * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    let mut reduced: Vec<(u32, u32, BigInt)> = Vec::new();
    for (mut a, mut b, mut c) in terms {
        while a >= n {
            a -= 1;
            b += 1;
            c *= &top;
        }
        if b <= 1 {
            reduced.push((a, b, c));
        }
    }
    let numerator = reduced
        .into_iter()
        .filter(|(a, b, _)| *a + 1 == n && *b == 1)
        .fold(BigInt::zero(), |acc, (_, _, c)| acc + c);
    Ok(Rational::new(numerator, Pow::pow(q * s, k)))
}

/// Summand degrees of `Sym^m` of a split bundle, by listing every exponent
/// vector `(k₁, …, k_r)` with `Σ kᵢ = m`.
pub fn enumerate_sym_quotients(b: &BundleSpec, m: u32) -> Result<Vec<i64>> {
    let degrees = b.degrees()?;
    if degrees.len() > MAX_ORACLE_RANK || m > MAX_ORACLE_POWER {
        return Err(Error::SizeGuard(format!(
            "oracle enumeration limited to rank ≤ {MAX_ORACLE_RANK} and m ≤ {MAX_ORACLE_POWER}"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidInput("symmetric power exponent must be positive".into()));
    }
    fn walk(degrees: &[i64], left: u32, acc: i64, out: &mut Vec<i64>) {
        match degrees {
            [] => {}
            [last] => out.push(acc + i64::from(left) * last),
            [first, rest @ ..] => {
                for k in 0..=left {
                    walk(rest, left - k, acc + i64::from(k) * first, out);
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(degrees, m, 0, &mut out);
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub digest: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "CHECK {} {} {} {}", self.name, self.digest, verdict, self.detail)
    }
}

/// Short SHA-256 of a canonical description of the checked inputs.
pub fn input_digest(description: &str) -> String {
    hex::encode(&Sha256::digest(description.as_bytes())[..6])
}

fn line(name: &str, description: &str, pass: bool, detail: String) -> CheckLine {
    CheckLine { name: name.to_string(), digest: input_digest(description), pass, detail }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub seed: Option<u64>,
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.pass)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

fn random_rational(rng: &mut impl Rng) -> Rational {
    frac(rng.gen_range(-24..=24), rng.gen_range(1..=12))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingSweep {
    pub seed: u64,
    pub max_rank: u32,
    pub max_abs_degree: i64,
    pub samples: usize,
}

impl Default for RingSweep {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, max_rank: 6, max_abs_degree: 10, samples: 1000 }
    }
}

/// Every `RING_REDUCER_STRIDE`-th sampled class is also pushed through the
/// ring reducer, which is far slower than the other two routes.
pub const RING_REDUCER_STRIDE: usize = 4;

/// For every `(n, d, convention)` in range, compares the closed form of
/// `∫ uⁿ` against [`brute_ring_power`] on `samples` random classes, and the
/// ring reducer on a stride of them. One line per `(n, convention)`.
pub fn check_ring(sweep: RingSweep) -> Result<CheckReport> {
    if sweep.max_rank == 0 || sweep.max_rank > 12 {
        return Err(Error::SizeGuard("ring sweep rank must be in 1..=12".into()));
    }
    let cases: Vec<(u32, Convention)> = (1..=sweep.max_rank)
        .flat_map(|n| [Convention::Quotient, Convention::Sub].map(|c| (n, c)))
        .collect();
    let lines = cases
        .par_iter()
        .map(|&(n, convention)| {
            let mut rng = ChaCha8Rng::seed_from_u64(sweep.seed ^ (u64::from(n) << 8) ^ convention as u64);
            let mut mismatches = 0usize;
            let mut first = String::new();
            let mut total = 0usize;
            let mut reduced = 0usize;
            for d in -sweep.max_abs_degree..=sweep.max_abs_degree {
                let ctx = BundleContext::new(n, d, convention, SurfaceGenus::new(0)).expect("valid context");
                for i in 0..sweep.samples {
                    let u = DivisorClass::new(random_rational(&mut rng), random_rational(&mut rng), ctx);
                    let oracle = brute_ring_power(&u, n).expect("k = n");
                    let mut agree = u.top_power() == oracle;
                    if i % RING_REDUCER_STRIDE == 0 {
                        agree &= crate::cohomology::RingElement::from_class(&u).pow(n).integrate() == oracle;
                        reduced += 1;
                    }
                    total += 1;
                    if !agree {
                        mismatches += 1;
                        if first.is_empty() {
                            first = format!(" first at d={d} u=({},{})", u.x, u.y);
                        }
                    }
                }
            }
            let desc = format!("ring n={n} conv={convention} |d|<={} samples={} seed={}", sweep.max_abs_degree, sweep.samples, sweep.seed);
            line(
                &format!("ring-top-power[n={n},{convention}]"),
                &desc,
                mismatches == 0,
                format!("{total} classes ({reduced} also through the ring reducer), {mismatches} mismatches{first}"),
            )
        })
        .collect();
    Ok(CheckReport { seed: Some(sweep.seed), lines })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymSweep {
    pub max_rank: usize,
    pub max_power: u32,
    pub max_abs_degree: i64,
}

impl Default for SymSweep {
    fn default() -> Self {
        Self { max_rank: 4, max_power: 6, max_abs_degree: 5 }
    }
}

fn degree_lists(max_rank: usize, max_abs: i64) -> Vec<Vec<i64>> {
    // nondecreasing lists only: degree lists are multisets
    fn extend(cur: &mut Vec<i64>, len: usize, lo: i64, hi: i64, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for a in lo..=hi {
            cur.push(a);
            extend(cur, len, a, hi, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for r in 1..=max_rank {
        extend(&mut Vec::new(), r, -max_abs, max_abs, &mut out);
    }
    out
}

/// Exhaustive comparison of the symmetric-power routine, the binomial rank
/// and degree formulas and the `m·a₁` minimum against enumeration.
pub fn check_sympow(sweep: SymSweep) -> Result<CheckReport> {
    if sweep.max_rank == 0 || sweep.max_rank > MAX_ORACLE_RANK || sweep.max_power == 0 || sweep.max_power > MAX_ORACLE_POWER {
        return Err(Error::SizeGuard(format!(
            "sympow sweep limited to 1 ≤ rank ≤ {MAX_ORACLE_RANK}, 1 ≤ m ≤ {MAX_ORACLE_POWER}"
        )));
    }
    let lists = degree_lists(sweep.max_rank, sweep.max_abs_degree);
    let g = SurfaceGenus::new(0);
    let lines = (1..=sweep.max_power)
        .into_par_iter()
        .map(|m| {
            let mut bad = Vec::new();
            for d in &lists {
                let b = BundleSpec::decomposable(g, d.clone()).expect("nonempty");
                let listed = enumerate_sym_quotients(&b, m).expect("within guard");
                let (rank, degree) = sym_rank_degree(b.rank(), b.degree(), m).expect("small");
                let power = b.sym_power(m).expect("split");
                let ok = power.degrees().expect("split") == listed.as_slice()
                    && listed.len() as u64 == rank
                    && listed.iter().sum::<i64>() == degree
                    && listed[0] == i64::from(m) * d[0];
                if !ok {
                    bad.push(format!("{d:?}"));
                }
            }
            let desc = format!("sympow m={m} rank<={} |a|<={}", sweep.max_rank, sweep.max_abs_degree);
            let detail = match bad.first() {
                None => format!("{} bundles", lists.len()),
                Some(first) => format!("{} of {} bundles disagree, first {first}", bad.len(), lists.len()),
            };
            line(&format!("sympow[m={m}]"), &desc, bad.is_empty(), detail)
        })
        .collect();
    Ok(CheckReport { seed: None, lines })
}

/// Rational grid `{(i/den, j/den)}` for `i ∈ x_range`, `j ∈ y_range`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub x_range: (i64, i64),
    pub y_range: (i64, i64),
    pub denominator: i64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { x_range: (1, 5), y_range: (-5, 5), denominator: 1 }
    }
}

impl GridSpec {
    pub fn points(&self) -> impl Iterator<Item = (Rational, Rational)> + '_ {
        (self.x_range.0..=self.x_range.1).flat_map(move |i| {
            (self.y_range.0..=self.y_range.1).map(move |j| (frac(i, self.denominator), frac(j, self.denominator)))
        })
    }
}

/// Which membership predicate the cone check trusts. `Closed` admits the
/// boundary and exists as a negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Strict,
    Closed,
}

pub const MAX_CHECKED_MULTISECTION: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSample {
    pub tested: usize,
    pub violations: Vec<(Rational, Rational, CurveClass)>,
}

/// For each grid class accepted as Kähler on `P(b)`, checks it is positive
/// on every `deg·l + m·η` with `deg` a summand degree of `Sym^m b`,
/// `m ≤ 5`, plus on `l`.
pub fn sample_cone_check(b: &BundleSpec, grid: &GridSpec, membership: Membership) -> Result<ConeSample> {
    let model = ProjectiveModel::Bundle(b.clone());
    let ctx = model.context()?;
    let mut curves = vec![CurveClass::line(ctx)];
    for m in 1..=MAX_CHECKED_MULTISECTION {
        let mut degrees = enumerate_sym_quotients(b, m)?;
        degrees.dedup();
        curves.extend(degrees.into_iter().map(|a| CurveClass::new(a, i64::from(m), ctx)));
    }
    let a1 = b.min_degree()?;
    let mut tested = 0;
    let mut violations = Vec::new();
    for (x, y) in grid.points() {
        let u = DivisorClass::new(x.clone(), y.clone(), ctx);
        let accepted = match membership {
            Membership::Strict => kahler_membership(&u, &model)?,
            Membership::Closed => x.is_positive() && !(int(a1) * &x + &y).is_negative(),
        };
        if !accepted {
            continue;
        }
        tested += 1;
        for z in &curves {
            if !u.pair(z)?.is_positive() {
                violations.push((x.clone(), y.clone(), *z));
            }
        }
    }
    Ok(ConeSample { tested, violations })
}

/// [`sample_cone_check`] over every split bundle of rank ≤ `max_rank` with
/// degrees in `[-max_abs_degree, max_abs_degree]`, plus the closed-cone
/// negative control, which must find violations.
pub fn check_cone(grid: &GridSpec, max_rank: usize, max_abs_degree: i64) -> Result<CheckReport> {
    if max_rank == 0 || max_rank > MAX_ORACLE_RANK {
        return Err(Error::SizeGuard(format!("cone sweep rank must be in 1..={MAX_ORACLE_RANK}")));
    }
    let lists = degree_lists(max_rank, max_abs_degree);
    let g = SurfaceGenus::new(0);
    let desc_grid = format!("grid x={:?} y={:?} den={}", grid.x_range, grid.y_range, grid.denominator);
    let lines: Vec<CheckLine> = (1..=max_rank)
        .into_par_iter()
        .map(|r| -> Result<Vec<CheckLine>> {
            let mut tested = 0usize;
            let mut strict_violations = 0usize;
            let mut control_hits = 0usize;
            let mut boundary_ok = true;
            let mut bundles = 0usize;
            for d in lists.iter().filter(|d| d.len() == r) {
                bundles += 1;
                let b = BundleSpec::decomposable(g, d.clone())?;
                let strict = sample_cone_check(&b, grid, Membership::Strict)?;
                tested += strict.tested;
                strict_violations += strict.violations.len();
                let closed = sample_cone_check(&b, grid, Membership::Closed)?;
                control_hits += closed.violations.len();
                // boundary class x = 1, y = -a₁ pairs to zero with a₁·l + η
                let ctx = BundleContext::quotient(b.rank(), b.degree(), g)?;
                let boundary = DivisorClass::new(int(1), int(-d[0]), ctx);
                boundary_ok &= boundary.pair(&CurveClass::new(d[0], 1, ctx))?.is_zero();
            }
            let desc = format!("cone rank={r} |a|<={max_abs_degree} {desc_grid}");
            Ok(vec![
                line(
                    &format!("cone-positivity[r={r}]"),
                    &desc,
                    strict_violations == 0,
                    format!("{bundles} bundles, {tested} Kähler grid classes, {strict_violations} violations"),
                ),
                line(
                    &format!("cone-boundary[r={r}]"),
                    &desc,
                    boundary_ok,
                    "boundary class pairs to 0 with the least section".to_string(),
                ),
                line(
                    &format!("cone-negative-control[r={r}]"),
                    &desc,
                    control_hits > 0,
                    format!("closed predicate produced {control_hits} boundary violations"),
                ),
            ])
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(CheckReport { seed: None, lines })
}
