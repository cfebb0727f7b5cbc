//! Command-line front end.
//!
//! Every command prints a human-readable report, or a JSON document with
//! `--json`. Numbers are printed exactly: integers bare, rationals as
//! `p/q`. Exit codes: `0` success, `1` negative verdict (a divisor that is
//! not admissible, a failing oracle check), `2` bad input.
//!
//! `--spec FILE` runs commands described in a JSON file instead of argv;
//! see [`spec_to_argv`] for the mapping.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::blowdown::{
    admissibility_bound, blowdown_verdict, build_matching_triple, BlowdownVerdict, ExceptionalDivisorData,
    MatchingTripleCertificate, Ruling,
};
use crate::bundles::{BundleKind, BundleSpec, SurfaceGenus};
use crate::cohomology::{BundleContext, Convention, CurveClass, DivisorClass};
use crate::cones::{cone_of, kahler_cone_ratio, kahler_membership, KahlerRegion, ProjectiveModel};
use crate::oracle::{check_cone, check_ring, check_sympow, CheckReport, GridSpec, RingSweep, SymSweep, DEFAULT_SEED};
use crate::rational::{parse_int_list, parse_pair, Rational};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pbundle", version, about = "Exact cohomology, Kähler cones and blow-down verdicts for projective bundles over curves")]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Run the command(s) described in a JSON file.
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Intersection numbers, forward cone and ratio of a divisor class.
    Ring(RingArgs),
    /// Slopes, twists, symmetric powers and semistability.
    Bundle {
        #[command(subcommand)]
        action: BundleAction,
    },
    /// Curve cone and Kähler cone of P(E).
    Cone(ConeArgs),
    /// Blow-down verdict and matching-triple certificate for a divisor.
    Blowdown(BlowdownArgs),
    /// Run the brute-force oracle sweeps.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct RingArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub rank: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub deg: i64,
    #[arg(long, default_value = "quotient")]
    pub convention: ConventionArg,
    #[arg(long, default_value_t = 0)]
    pub genus: u32,
    /// Coordinates `X,Y` of `X·h + Y·F`, each an integer or `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    pub class: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Quotient,
    Sub,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Quotient => Convention::Quotient,
            ConventionArg::Sub => Convention::Sub,
        }
    }
}

#[derive(Debug, Args)]
pub struct BundleInput {
    /// Degrees of the line summands, comma separated.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "semistable")]
    pub degrees: Option<String>,
    /// `R,D`: a semistable bundle of rank R and degree D.
    #[arg(long, allow_hyphen_values = true)]
    pub semistable: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub genus: u32,
}

#[derive(Debug, Subcommand)]
pub enum BundleAction {
    /// Summand degrees of the m-th symmetric power.
    Sympow {
        #[command(flatten)]
        input: BundleInput,
        #[arg(short = 'm', long = "power")]
        m: u32,
    },
    Slope {
        #[command(flatten)]
        input: BundleInput,
    },
    /// Tensor with a line bundle of degree T.
    Twist {
        #[command(flatten)]
        input: BundleInput,
        #[arg(short = 't', long = "by", allow_hyphen_values = true)]
        t: i64,
    },
    Semistable {
        #[command(flatten)]
        input: BundleInput,
    },
}

#[derive(Debug, Args)]
pub struct ConeArgs {
    #[command(flatten)]
    pub input: BundleInput,
    /// Class `X,Y` to test for Kähler membership.
    #[arg(long, allow_hyphen_values = true)]
    pub class: Option<String>,
    #[arg(long, default_value = "quotient")]
    pub convention: ConventionArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    Point,
    Surface,
}

#[derive(Debug, Args)]
pub struct BlowdownArgs {
    #[arg(long, default_value = "surface")]
    pub base: BaseArg,
    #[arg(long)]
    pub genus: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<i64>,
    /// `[ω|_D]` as `X,Y`.
    #[arg(long, allow_hyphen_values = true)]
    pub class: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub fiber_rank: u32,
    /// Areas `X,Y` of the two rulings of S²×S².
    #[arg(long)]
    pub ruled_areas: Option<String>,
    #[arg(long, default_value = "sub")]
    pub convention: ConventionArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckTarget {
    Ring,
    Sympow,
    Cone,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub target: CheckTarget,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub max_rank: Option<u32>,
    #[arg(long)]
    pub max_m: Option<u32>,
    /// Random classes per (rank, degree, convention) in the ring sweep.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

/// What a command produced, before rendering.
struct Outcome {
    text: String,
    json: Value,
    code: i32,
}

impl Outcome {
    fn ok(text: String, json: impl Serialize) -> Self {
        Self { text, json: serde_json::to_value(json).expect("serializable report"), code: EXIT_OK }
    }
}

#[derive(Serialize)]
struct ClassJson {
    x: String,
    y: String,
}

impl ClassJson {
    fn of(u: &DivisorClass) -> Self {
        Self { x: u.x.to_string(), y: u.y.to_string() }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum BundleJson {
    Decomposable { degrees: Vec<i64> },
    Semistable { rank: u32, degree: i64 },
}

impl BundleJson {
    fn of(b: &BundleSpec) -> Self {
        match b.kind() {
            BundleKind::Decomposable(d) => Self::Decomposable { degrees: d.clone() },
            BundleKind::SemiStable { rank, degree } => Self::Semistable { rank: *rank, degree: *degree },
        }
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn parse_class(text: &str, ctx: BundleContext) -> Result<DivisorClass> {
    let (x, y) = parse_pair(text)?;
    Ok(DivisorClass::new(x, y, ctx))
}

fn parse_rank(rank: i64) -> Result<u32> {
    u32::try_from(rank)
        .ok()
        .filter(|&r| r >= 1)
        .ok_or_else(|| Error::InvalidInput(format!("rank must be a positive integer, got {rank}")))
}

fn parse_bundle(input: &BundleInput) -> Result<BundleSpec> {
    let g = SurfaceGenus::new(input.genus);
    match (&input.degrees, &input.semistable) {
        (Some(d), None) => BundleSpec::decomposable(g, parse_int_list(d)?),
        (None, Some(s)) => match parse_int_list(s)?.as_slice() {
            [r, d] => BundleSpec::semistable(g, parse_rank(*r)?, *d),
            _ => Err(Error::InvalidInput(format!("--semistable expects R,D, got {s:?}"))),
        },
        _ => Err(Error::InvalidInput("give either --degrees or --semistable".into())),
    }
}

#[derive(Serialize)]
struct RingReport {
    rank: u32,
    degree: i64,
    convention: Convention,
    model_degree: i64,
    genus: SurfaceGenus,
    class: ClassJson,
    top_power: String,
    pair_l: String,
    pair_eta: String,
    forward_cone: bool,
    ratio: Option<String>,
    ratio_out_of_cone: bool,
    topological_type: u32,
}

fn cmd_ring(args: &RingArgs) -> Result<Outcome> {
    // --deg is always deg E for P(E); --convention only picks the basis of --class.
    let quotient = BundleContext::quotient(parse_rank(args.rank)?, args.deg, SurfaceGenus::new(args.genus))?;
    let ctx = match Convention::from(args.convention) {
        Convention::Quotient => quotient,
        Convention::Sub => quotient.converted(),
    };
    let u = parse_class(&args.class, ctx)?;
    let pair_l = u.pair(&CurveClass::line(ctx))?;
    let pair_eta = u.pair(&CurveClass::eta(ctx))?;
    let forward = u.in_forward_cone();
    let ratio = u.ratio().ok();
    let ratio_text = match &ratio {
        Some(r) if r.in_forward_cone => r.value.to_string(),
        Some(r) => format!("{} (out of forward cone)", r.value),
        None => "undefined (out of forward cone)".to_string(),
    };
    let text = format!(
        "class: {u}\nbundle: P^{}-bundle P(E), rank {}, deg E = {}, genus {}\nconvention: {} (model degree {})\nu^n: {}\n<u, l>: {pair_l}\n<u, η>: {pair_eta}\nforward cone: {forward}\nratio: {ratio_text}\ntopological type: {}\n",
        ctx.rank() - 1,
        ctx.rank(),
        args.deg,
        ctx.genus(),
        ctx.convention(),
        ctx.degree(),
        u.top_power(),
        ctx.topological_type(),
    );
    Ok(Outcome::ok(
        text,
        RingReport {
            rank: ctx.rank(),
            degree: args.deg,
            convention: ctx.convention(),
            model_degree: ctx.degree(),
            genus: ctx.genus(),
            class: ClassJson::of(&u),
            top_power: u.top_power().to_string(),
            pair_l: pair_l.to_string(),
            pair_eta: pair_eta.to_string(),
            forward_cone: forward,
            ratio: ratio.as_ref().map(|r| r.value.to_string()),
            ratio_out_of_cone: !forward,
            topological_type: ctx.topological_type(),
        },
    ))
}

fn bundle_text(b: &BundleSpec) -> String {
    match b.kind() {
        BundleKind::Decomposable(d) => join(d),
        BundleKind::SemiStable { rank, degree } => format!("semistable rank {rank}, degree {degree}"),
    }
}

fn cmd_bundle(action: &BundleAction) -> Result<Outcome> {
    match action {
        BundleAction::Sympow { input, m } => {
            let b = parse_bundle(input)?;
            let p = b.sym_power(*m)?;
            let d = p.degrees()?;
            #[derive(Serialize)]
            struct R<'a> {
                degrees: &'a [i64],
                rank: u32,
                degree: i64,
            }
            let text = format!("{} (rank {}, degree {})\n", join(d), p.rank(), p.degree());
            Ok(Outcome::ok(text, R { degrees: d, rank: p.rank(), degree: p.degree() }))
        }
        BundleAction::Slope { input } => {
            let s = parse_bundle(input)?.slope();
            Ok(Outcome::ok(format!("{s}\n"), serde_json::json!({ "slope": s.to_string() })))
        }
        BundleAction::Twist { input, t } => {
            let b = parse_bundle(input)?.twist(*t)?;
            Ok(Outcome::ok(format!("{}\n", bundle_text(&b)), serde_json::json!({ "bundle": BundleJson::of(&b) })))
        }
        BundleAction::Semistable { input } => {
            let s = parse_bundle(input)?.is_semistable();
            Ok(Outcome::ok(format!("{s}\n"), serde_json::json!({ "semistable": s })))
        }
    }
}

#[derive(Serialize)]
struct ConeReport {
    bundle: BundleJson,
    genus: SurfaceGenus,
    rays: Vec<String>,
    kahler_cone: String,
    kahler_is_forward_cone: bool,
    kahler_cone_ratio: String,
    exactness: String,
    class: Option<ClassJson>,
    member: Option<bool>,
}

fn describe_region(region: &KahlerRegion, ctx: &BundleContext) -> String {
    match region {
        KahlerRegion::HalfPlane { a1: 0 } => "x > 0, y > 0".to_string(),
        KahlerRegion::HalfPlane { a1: 1 } => "x > 0, x + y > 0".to_string(),
        KahlerRegion::HalfPlane { a1: -1 } => "x > 0, -x + y > 0".to_string(),
        KahlerRegion::HalfPlane { a1 } => format!("x > 0, {a1}x + y > 0"),
        KahlerRegion::ForwardCone => format!("x > 0, {}x + {}y > 0", ctx.degree(), ctx.rank()),
        KahlerRegion::SlopeBound { bound } => format!("x > 0, y/x > {bound}"),
    }
}

fn cmd_cone(args: &ConeArgs) -> Result<Outcome> {
    let b = parse_bundle(&args.input)?;
    let model = ProjectiveModel::Bundle(b.clone());
    let ctx = model.context()?;
    let cone = cone_of(&model)?;
    let ratio: Rational = kahler_cone_ratio(&b)?;
    let rays: Vec<String> = cone.rays.iter().map(ToString::to_string).collect();
    let region = describe_region(&cone.kahler, &ctx);

    let mut text = format!("bundle: {b}\nrays: {}\n", rays.join(", "));
    if cone.kahler_is_forward_cone {
        text.push_str(&format!("Kähler cone = forward cone ({region})\n"));
    } else {
        text.push_str(&format!("Kähler cone: {region}\n"));
    }
    text.push_str(&format!("Kähler-cone ratio: {ratio}\nexactness: {}\n", cone.exactness));

    let (class, member) = match &args.class {
        Some(c) => {
            let u = match Convention::from(args.convention) {
                Convention::Quotient => parse_class(c, ctx)?,
                Convention::Sub => parse_class(c, ctx.converted())?.convert_convention(),
            };
            let member = kahler_membership(&u, &model)?;
            let verdict = if member { "Kähler" } else { "not Kähler" };
            text.push_str(&format!("class ({}, {}): {verdict}\n", u.x, u.y));
            (Some(ClassJson::of(&u)), Some(member))
        }
        None => (None, None),
    };
    Ok(Outcome::ok(
        text,
        ConeReport {
            bundle: BundleJson::of(&b),
            genus: b.base(),
            rays,
            kahler_cone: region,
            kahler_is_forward_cone: cone.kahler_is_forward_cone,
            kahler_cone_ratio: ratio.to_string(),
            exactness: cone.exactness.to_string(),
            class,
            member,
        },
    ))
}

#[derive(Serialize)]
struct CertificateJson {
    bundle: BundleJson,
    kahler_class: ClassJson,
    restricted_ratio: String,
    weak: bool,
    s1_invariant: bool,
    chosen_ruling: Option<&'static str>,
}

impl CertificateJson {
    fn of(c: &MatchingTripleCertificate, ruling: Option<Ruling>) -> Self {
        Self {
            bundle: BundleJson::of(&c.bundle),
            kahler_class: ClassJson::of(&c.kahler_class),
            restricted_ratio: c.restricted_ratio.to_string(),
            weak: c.weak,
            s1_invariant: c.s1_invariant,
            chosen_ruling: ruling.map(Ruling::as_str),
        }
    }
}

#[derive(Serialize)]
struct BlowdownReport {
    verdict: &'static str,
    reason: Option<String>,
    ratio: Option<String>,
    admissibility_bound: Option<String>,
    certificate: Option<CertificateJson>,
}

fn divisor_from_args(args: &BlowdownArgs) -> Result<ExceptionalDivisorData> {
    if args.base == BaseArg::Point {
        return ExceptionalDivisorData::point(args.fiber_rank.max(1));
    }
    let genus = SurfaceGenus::new(args.genus.ok_or_else(|| Error::InvalidInput("--genus is required".into()))?);
    let alpha = args.alpha.ok_or_else(|| Error::InvalidInput("--alpha is required".into()))?;
    let n = args.fiber_rank;
    if n == 0 {
        return Err(Error::InvalidInput("--fiber-rank must be positive".into()));
    }
    let areas = args.ruled_areas.as_deref().map(parse_pair).transpose()?;
    match (&args.class, areas) {
        (None, Some((x, y))) if genus.is_sphere() && n == 2 && alpha == 2 => ExceptionalDivisorData::ruled_s2xs2(x, y),
        (None, _) => Err(Error::InvalidInput("--class is required".into())),
        (Some(c), areas) => {
            let ctx = match Convention::from(args.convention) {
                Convention::Sub => BundleContext::sub(n, -alpha, genus)?,
                Convention::Quotient => BundleContext::quotient(n, alpha, genus)?,
            };
            ExceptionalDivisorData::surface(genus, n, alpha, parse_class(c, ctx)?, areas)
        }
    }
}

fn cmd_blowdown(args: &BlowdownArgs) -> Result<Outcome> {
    let d = divisor_from_args(args)?;
    let verdict = blowdown_verdict(&d)?;
    let ratio = d.omega_class().map(|_| d.ratio()).transpose()?;
    let bound = match d.base() {
        crate::blowdown::Base::Surface(g) => Some(admissibility_bound(g, d.rank(), d.alpha())),
        crate::blowdown::Base::Point => None,
    };
    let (certificate, ruling) = match &verdict {
        BlowdownVerdict::BlowdownUpToDeformation { certificate, chosen_ruling } => {
            (Some((**certificate).clone()), *chosen_ruling)
        }
        BlowdownVerdict::Undetermined(_) if d.rank() != 2 && ratio.is_some() => (build_matching_triple(&d).ok(), None),
        _ => (None, None),
    };
    let cert_json = certificate.as_ref().map(|c| CertificateJson::of(c, ruling));

    let mut text = match verdict.reason() {
        Some(reason) => format!("{}: {reason}\n", verdict.name()),
        None => format!("verdict: {}\n", verdict.name()),
    };
    if let (Some(r), Some(b)) = (&ratio, &bound) {
        text.push_str(&format!("ratio: {r} (admissible above {b})\n"));
    }
    if let Some(c) = &certificate {
        if let Some(r) = ruling {
            text.push_str(&format!("blow down along the {} ruling\n", r.as_str()));
        }
        text.push_str(&format!(
            "model bundle V: {}\nKähler class on P(V ⊕ O): {}\n",
            c.bundle, c.kahler_class
        ));
        for note in &c.notes {
            text.push_str(&format!("note: {note}\n"));
        }
        text.push_str("certificate:\n");
        text.push_str(&serde_json::to_string_pretty(&cert_json).expect("serializable"));
        text.push('\n');
    }
    let code = if matches!(verdict, BlowdownVerdict::NotAdmissible(_)) { EXIT_NEGATIVE } else { EXIT_OK };
    let report = BlowdownReport {
        verdict: verdict.name(),
        reason: verdict.reason().map(str::to_string),
        ratio: ratio.map(|r| r.to_string()),
        admissibility_bound: bound.map(|b| b.to_string()),
        certificate: cert_json,
    };
    let mut out = Outcome::ok(text, report);
    out.code = code;
    Ok(out)
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    digest: &'a str,
    pass: bool,
    detail: &'a str,
}

fn cmd_check(args: &CheckArgs) -> Result<Outcome> {
    let report: CheckReport = match args.target {
        CheckTarget::Ring => check_ring(RingSweep {
            seed: args.seed,
            max_rank: args.max_rank.unwrap_or(6),
            samples: args.samples,
            ..RingSweep::default()
        })?,
        CheckTarget::Sympow => check_sympow(SymSweep {
            max_rank: args.max_rank.unwrap_or(4) as usize,
            max_power: args.max_m.unwrap_or(6),
            ..SymSweep::default()
        })?,
        CheckTarget::Cone => check_cone(&GridSpec::default(), args.max_rank.unwrap_or(4) as usize, 5)?,
    };
    let failed = report.failures().count();
    let mut text = report.to_string();
    if failed == 0 {
        text.push_str(&format!("all {} checks passed\n", report.lines.len()));
    } else {
        text.push_str(&format!("{failed} of {} checks failed\n", report.lines.len()));
    }
    let checks: Vec<CheckJson<'_>> = report
        .lines
        .iter()
        .map(|l| CheckJson { name: &l.name, digest: &l.digest, pass: l.pass, detail: &l.detail })
        .collect();
    let json = serde_json::json!({ "seed": report.seed, "checks": checks, "all_pass": failed == 0 });
    let mut out = Outcome::ok(text, json);
    out.code = if failed == 0 { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(out)
}

fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Ring(a) => cmd_ring(a),
        Command::Bundle { action } => cmd_bundle(action),
        Command::Cone(a) => cmd_cone(a),
        Command::Blowdown(a) => cmd_blowdown(a),
        Command::Check(a) => cmd_check(a),
    }
}

/// Turns one spec-file entry into the argv it stands for.
///
/// `"command"` becomes the subcommand and `"action"` / `"target"` the
/// second positional word; every other key `k` becomes `--k` (or `-k` for
/// one-letter keys, underscores turned into hyphens). Strings and numbers
/// are passed as the flag value, arrays are comma-joined, `true` becomes a
/// bare flag and `false` / `null` are dropped. Flags keep the key order of
/// the file.
///
/// ```
/// use projective_blowdown::cli::spec_to_argv;
/// let entry = serde_json::json!({"command": "bundle", "action": "sympow", "degrees": [0, 2], "m": 2});
/// assert_eq!(spec_to_argv(&entry).unwrap(), ["bundle", "sympow", "--degrees", "0,2", "-m", "2"]);
/// ```
pub fn spec_to_argv(entry: &Value) -> Result<Vec<String>> {
    let obj = entry
        .as_object()
        .ok_or_else(|| Error::InvalidInput("spec entries must be JSON objects".into()))?;
    let scalar = |v: &Value| -> Result<String> {
        match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            other => Err(Error::InvalidInput(format!("unsupported spec value {other}"))),
        }
    };
    let command = obj
        .get("command")
        .ok_or_else(|| Error::InvalidInput("spec entry without \"command\"".into()))?;
    let mut argv = vec![scalar(command)?];
    for key in ["action", "target"] {
        if let Some(v) = obj.get(key) {
            argv.push(scalar(v)?);
        }
    }
    for (key, value) in obj {
        if matches!(key.as_str(), "command" | "action" | "target") {
            continue;
        }
        let flag = if key.chars().count() == 1 { format!("-{key}") } else { format!("--{}", key.replace('_', "-")) };
        match value {
            Value::Bool(true) => argv.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                let parts = items.iter().map(scalar).collect::<Result<Vec<_>>>()?;
                argv.push(flag);
                argv.push(parts.join(","));
            }
            other => {
                argv.push(flag);
                argv.push(scalar(other)?);
            }
        }
    }
    Ok(argv)
}

fn render(outcome: &Outcome, json: bool, out: &mut dyn Write) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&outcome.json).expect("serializable"))
    } else {
        out.write_all(outcome.text.as_bytes())
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NotAdmissible(_) => EXIT_NEGATIVE,
        _ => EXIT_USAGE,
    }
}

fn run_command(command: &Command, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(command) {
        Ok(outcome) => {
            if render(&outcome, json, out).is_err() {
                return EXIT_USAGE;
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn run_spec(path: &PathBuf, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let parsed: std::result::Result<Value, String> = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))
        .and_then(|s| serde_json::from_str(&s).map_err(|e| format!("malformed spec file: {e}")));
    let entries = match parsed {
        Ok(Value::Array(items)) => items,
        Ok(single) => vec![single],
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut code = EXIT_OK;
    for entry in &entries {
        let argv = match spec_to_argv(entry) {
            Ok(a) => a,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
        };
        let parsed = Cli::try_parse_from(std::iter::once("pbundle".to_string()).chain(argv));
        let step = match parsed {
            Ok(Cli { command: Some(c), json: j, .. }) => run_command(&c, json || j, out, err),
            Ok(_) => {
                let _ = writeln!(err, "error: spec entries cannot nest --spec");
                EXIT_USAGE
            }
            Err(e) => {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            }
        };
        code = code.max(step);
    }
    code
}

/// Parses `args` (including the program name) and runs the command,
/// writing to `out` and `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match (&cli.spec, &cli.command) {
        (Some(path), _) => run_spec(path, cli.json, out, err),
        (None, Some(command)) => run_command(command, cli.json, out, err),
        (None, None) => {
            let _ = writeln!(err, "error: no command given (try --help)");
            EXIT_USAGE
        }
    }
}
