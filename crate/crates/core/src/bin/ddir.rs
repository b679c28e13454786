//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a theorem-backed check failed or a certificate
//! is invalid, 2 invalid input or usage, 3 an exploratory check missed its
//! threshold.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use distinct_directions::census::{
    check_direction_bound, check_distance_bound, direction_census, distance_census, random_polytopal_norm,
    PolytopalNorm,
};
use distinct_directions::extraction::extract_family;
use distinct_directions::generators::{GeneratorKind, GeneratorSpec};
use distinct_directions::geometry::{int, PointSet, Rat};
use distinct_directions::incidence::{build_incidence, corollary_check, dirac_point, dsw_check, DEFAULT_C};
use distinct_directions::io::{parse_rat, read_norm, read_point_set, write_point_set, FamilyFile};
use distinct_directions::segments::{verify_family, CertificateReport, Segment};
use distinct_directions::Error;

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_FINDING: u8 = 3;

#[derive(Parser)]
#[command(name = "ddir", version, about = "Distinct directions, non-convergent segment families and polytopal distance censuses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded point configuration.
    Generate(GenerateArgs),
    /// Count distinct directions and compare with the ceil(d n / 48) bound.
    CensusDirections(InputArgs),
    /// Count distinct distances in a polytopal norm.
    CensusDistances(DistanceArgs),
    /// Spanned lines and their incidences.
    Incidence(InputArgs),
    /// Point with the most distinct connecting lines.
    Dirac(InputArgs),
    /// Special-line dimension bound and the derived star bound.
    DswCheck(ConstantArgs),
    /// Extract a certified non-convergent segment family.
    Extract(ExtractArgs),
    /// Verify a segment family document (or an extract report).
    Verify(InputArgs),
    /// Run every check on one point set.
    CheckBounds(CheckArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    side: usize,
    #[arg(long, default_value_t = 100)]
    height: i64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    /// Input document; standard input when omitted or "-".
    #[arg(long)]
    input: Option<PathBuf>,
    /// Include per-key listings in the report.
    #[arg(long)]
    details: bool,
}

#[derive(Args)]
struct NormArgs {
    /// Norm document; a seeded random polytopal norm when omitted.
    #[arg(long)]
    norm: Option<PathBuf>,
    /// Functional pairs of the random norm.
    #[arg(long, default_value_t = 3)]
    pairs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = rat_arg, default_value = "1/10")]
    mu: Rat,
}

#[derive(Args)]
struct DistanceArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    norm: NormArgs,
}

#[derive(Args)]
struct ConstantArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_parser = rat_arg, default_value = "12")]
    c: Rat,
}

#[derive(Args)]
struct ExtractArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the family document here.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_parser = rat_arg, default_value = "12")]
    c: Rat,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = rat_arg, default_value = "1/10")]
    mu: Rat,
    /// Norm document for the exploratory distance check (skipped if absent).
    #[arg(long)]
    norm: Option<PathBuf>,
}

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

/// Failure that ends the run with exit code 2.
struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<io::Error> for UsageError {
    fn from(e: io::Error) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<(Value, u8), UsageError>;

struct Input {
    text: String,
    digest: String,
}

fn read_input(path: &Option<PathBuf>) -> Result<Input, UsageError> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = fs::read_to_string(p).map_err(|e| UsageError(format!("{}: {e}", p.display())))?;
        }
        _ => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    let digest = format!("sha256:{}", hex::encode(Sha256::digest(text.as_bytes())));
    Ok(Input { text, digest })
}

fn report(command: &str, digest: Option<&str>, parameters: Value, results: Value) -> Value {
    json!({
        "command": command,
        "input_digest": digest,
        "parameters": parameters,
        "results": results,
    })
}

fn rat_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn is_theorem_constant(c: &Rat) -> bool {
    *c >= int(DEFAULT_C)
}

fn certificate_json(r: &CertificateReport) -> Value {
    json!({
        "valid": r.valid,
        "family_size": r.family_size,
        "lower_bound_required": r.lower_bound_required,
        "meets_bound": r.meets_bound,
        "violations": r.violations.iter().map(|v| json!([v.first, v.second, v.kind.to_string()])).collect::<Vec<_>>(),
    })
}

fn generate(args: &GenerateArgs) -> CmdResult {
    let kind: GeneratorKind = args.kind.parse()?;
    let spec = GeneratorSpec {
        kind,
        n: args.n,
        d: args.d,
        seed: args.seed,
        side: args.side,
        height: args.height,
    };
    let set = spec.generate()?;
    let doc = write_point_set(&set);
    let params = json!({
        "kind": kind.name(), "n": args.n, "d": args.d, "seed": args.seed,
        "side": args.side, "height": args.height,
    });
    let results = json!({
        "points": set.len(),
        "ambient_dim": set.ambient_dim(),
        "affine_dim": set.affine_dim(),
        "output_digest": format!("sha256:{}", hex::encode(Sha256::digest(doc.as_bytes()))),
    });
    match &args.output {
        Some(path) => {
            fs::write(path, &doc).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            Ok((report("generate", None, params, results), EXIT_OK))
        }
        None => {
            print!("{doc}");
            Ok((Value::Null, EXIT_OK))
        }
    }
}

fn census_directions(args: &InputArgs) -> CmdResult {
    let input = read_input(&args.input)?;
    let set = read_point_set(&input.text)?;
    let census = direction_census(&set)?;
    let mut results = json!({
        "points": set.len(),
        "affine_dim": set.affine_dim(),
        "distinct_count": census.distinct_count,
        "pair_total": census.pairs.values().sum::<usize>(),
    });
    let mut code = EXIT_OK;
    if set.affine_dim() >= 2 {
        let bound = check_direction_bound(&set)?;
        results["required"] = json!(bound.required);
        results["holds"] = json!(bound.holds);
        if !bound.holds {
            code = EXIT_CHECK_FAILED;
        }
    }
    if args.details {
        results["directions"] = census
            .pairs
            .iter()
            .map(|(d, k)| json!({"direction": d.coords().iter().map(ToString::to_string).collect::<Vec<_>>(), "pairs": k}))
            .collect();
    }
    Ok((report("census-directions", Some(&input.digest), json!({}), results), code))
}

fn load_norm(args: &NormArgs, dim: usize) -> Result<(PolytopalNorm, Value), UsageError> {
    match &args.norm {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            Ok((read_norm(&text)?, json!({"norm_file": path.display().to_string()})))
        }
        None => Ok((
            random_polytopal_norm(dim, args.pairs, args.seed)?,
            json!({"norm": "random", "pairs": args.pairs, "seed": args.seed}),
        )),
    }
}

fn census_distances(args: &DistanceArgs) -> CmdResult {
    let input = read_input(&args.input.input)?;
    let set = read_point_set(&input.text)?;
    let (norm, mut params) = load_norm(&args.norm, set.ambient_dim())?;
    params["mu"] = rat_json(&args.norm.mu);
    let census = distance_census(&set, &norm)?;
    let mut results = json!({
        "points": set.len(),
        "affine_dim": set.affine_dim(),
        "distinct_count": census.distinct_count,
    });
    let mut code = EXIT_OK;
    if set.affine_dim() >= 2 {
        let check = check_distance_bound(&set, &norm, &args.norm.mu)?;
        results["threshold"] = rat_json(&check.threshold);
        results["holds"] = json!(check.holds);
        if !check.holds {
            code = EXIT_FINDING;
        }
    }
    if args.input.details {
        results["distances"] = census
            .pairs
            .iter()
            .map(|(d, k)| json!({"distance": d.to_string(), "pairs": k}))
            .collect();
    }
    Ok((report("census-distances", Some(&input.digest), params, results), code))
}

fn incidence(args: &InputArgs) -> CmdResult {
    let input = read_input(&args.input)?;
    let set = read_point_set(&input.text)?;
    let inc = build_incidence(&set)?;
    let n = set.len();
    let identity = inc.pair_count() == n * (n - 1) / 2;
    let mut results = json!({
        "points": n,
        "lines": inc.lines.len(),
        "special_lines": inc.special_lines().count(),
        "ordinary_lines": inc.ordinary_lines().count(),
        "line_size_histogram": inc.size_histogram().iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
        "pair_identity_holds": identity,
    });
    if args.details {
        results["incidences"] = inc.lines.iter().map(|(_, members)| json!(members)).collect();
    }
    let code = if identity { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok((report("incidence", Some(&input.digest), json!({}), results), code))
}

fn dirac(args: &InputArgs) -> CmdResult {
    let input = read_input(&args.input)?;
    let set = read_point_set(&input.text)?;
    let (index, m) = dirac_point(&set)?;
    let results = json!({
        "points": set.len(),
        "dirac_index": index,
        "star_size": m,
        "coordinates": set.point(index).coords().iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok((report("dirac", Some(&input.digest), json!({}), results), EXIT_OK))
}

fn dsw_results(set: &PointSet, c: &Rat) -> Result<(Value, bool), UsageError> {
    let dsw = dsw_check(set, c)?;
    let cor = corollary_check(set, c)?;
    let value = json!({
        "delta_min": rat_json(&dsw.delta_min),
        "affine_dim": dsw.affine_dim,
        "dimension_bound": dsw.dimension_bound.as_ref().map(rat_json),
        "dsw_holds": dsw.holds,
        "dirac_index": cor.dirac_index,
        "m_max": cor.m_max,
        "star_bound": rat_json(&cor.bound),
        "corollary_holds": cor.holds,
    });
    Ok((value, dsw.holds && cor.holds))
}

fn failed_check_code(c: &Rat) -> u8 {
    if is_theorem_constant(c) {
        EXIT_CHECK_FAILED
    } else {
        EXIT_FINDING
    }
}

fn dsw(args: &ConstantArgs) -> CmdResult {
    let input = read_input(&args.input.input)?;
    let set = read_point_set(&input.text)?;
    let (results, ok) = dsw_results(&set, &args.c)?;
    let code = if ok { EXIT_OK } else { failed_check_code(&args.c) };
    Ok((report("dsw-check", Some(&input.digest), json!({"c": rat_json(&args.c)}), results), code))
}

fn extract(args: &ExtractArgs) -> CmdResult {
    let input = read_input(&args.input.input)?;
    let set = read_point_set(&input.text)?;
    let (family, trace) = extract_family(&set, args.seed)?;
    let cert = family.verified.clone().expect("extraction certifies its output");
    let file = FamilyFile::new(&set, &family.segments);
    if let Some(path) = &args.output {
        let text = serde_json::to_string_pretty(&file).expect("serializable") + "\n";
        fs::write(path, text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    }
    let levels: Vec<Value> = trace
        .levels
        .iter()
        .map(|l| {
            json!({
                "dimension": l.dimension, "points": l.point_count, "center": l.center,
                "star_size": l.star_size, "hyperplane_attempts": l.hyperplane_attempts,
                "s1_size": l.s1_size, "s2_size": l.s2_size, "lifted_size": l.lifted_size,
                "dropped": l.dropped,
            })
        })
        .collect();
    let results = json!({
        "certificate": certificate_json(&cert),
        "trace": {
            "levels": levels,
            "base": {"points": trace.base.point_count, "star_size": trace.base.star_size, "family_size": trace.base.family_size},
            "family_size": trace.family_size,
            "required": trace.required,
        },
        "family": serde_json::to_value(&file).expect("serializable"),
    });
    let code = if cert.valid && cert.meets_bound { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok((report("extract", Some(&input.digest), json!({"seed": args.seed}), results), code))
}

fn verify(args: &InputArgs) -> CmdResult {
    let input = read_input(&args.input)?;
    let doc: Value =
        serde_json::from_str(&input.text).map_err(|e| UsageError(format!("malformed document: {e}")))?;
    let family_doc = match doc.pointer("/results/family") {
        Some(inner) => inner.clone(),
        None => doc,
    };
    let file: FamilyFile = serde_json::from_value(family_doc)
        .map_err(|e| UsageError(format!("not a segment family document: {e}")))?;
    let (set, segments): (PointSet, Vec<Segment>) = file.to_parts()?;
    let cert = verify_family(&set, &segments)?;
    let code = if cert.valid { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok((report("verify", Some(&input.digest), json!({}), certificate_json(&cert)), code))
}

fn check_bounds(args: &CheckArgs) -> CmdResult {
    let input = read_input(&args.input.input)?;
    let set = read_point_set(&input.text)?;
    let mut code = EXIT_OK;
    let mut fail = |c: u8| {
        if code == EXIT_OK || c == EXIT_CHECK_FAILED {
            code = c;
        }
    };
    let directions = check_direction_bound(&set)?;
    if !directions.holds {
        fail(EXIT_CHECK_FAILED);
    }
    let (dsw_value, dsw_ok) = if set.len() >= 3 {
        dsw_results(&set, &args.c)?
    } else {
        (Value::Null, true)
    };
    if !dsw_ok {
        fail(failed_check_code(&args.c));
    }
    let (family, _) = extract_family(&set, args.seed)?;
    let cert = family.verified.clone().expect("extraction certifies its output");
    if !(cert.valid && cert.meets_bound) {
        fail(EXIT_CHECK_FAILED);
    }
    let mut results = json!({
        "points": set.len(),
        "affine_dim": set.affine_dim(),
        "directions": {"distinct_count": directions.census.distinct_count, "required": directions.required, "holds": directions.holds},
        "dsw": dsw_value,
        "certificate": certificate_json(&cert),
    });
    if let Some(path) = &args.norm {
        let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        let norm = read_norm(&text)?;
        let check = check_distance_bound(&set, &norm, &args.mu)?;
        if !check.holds {
            fail(EXIT_FINDING);
        }
        results["distances"] = json!({
            "distinct_count": check.census.distinct_count,
            "threshold": rat_json(&check.threshold),
            "holds": check.holds,
        });
    }
    let params = json!({"c": rat_json(&args.c), "seed": args.seed, "mu": rat_json(&args.mu)});
    Ok((report("check-bounds", Some(&input.digest), params, results), code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Generate(a) => generate(a),
        Command::CensusDirections(a) => census_directions(a),
        Command::CensusDistances(a) => census_distances(a),
        Command::Incidence(a) => incidence(a),
        Command::Dirac(a) => dirac(a),
        Command::DswCheck(a) => dsw(a),
        Command::Extract(a) => extract(a),
        Command::Verify(a) => verify(a),
        Command::CheckBounds(a) => check_bounds(a),
    };
    match outcome {
        Ok((value, code)) => {
            if !value.is_null() {
                let mut out = io::stdout().lock();
                let text = serde_json::to_string_pretty(&value).expect("serializable");
                if writeln!(out, "{text}").is_err() {
                    return ExitCode::from(EXIT_USAGE);
                }
            }
            ExitCode::from(code)
        }
        Err(UsageError(msg)) => {
            eprintln!("ddir: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
