//! Command-line surface for `nfam-core`.
//!
//! Every subcommand prints one JSON report
//! `{"command", "params", "result", "elapsed_ms"}` except
//! `construct --emit vectors`, which prints a family file. Exit codes:
//! 0 success, 1 property violated or conjecture mismatch, 2 usage or
//! validation error, 3 desk-scale guard exceeded.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use nfam_core::extremal::{DEFAULT_MAX_DEPTH, DEFAULT_MAX_UNIVERSE};
use nfam_core::{
    build_k, check_conjecture, closed_form_k_size, derive_profile, enumerate_l, is_downset,
    max_family_search, reference_size, union_violation, Antichain, BalancedCandidate,
    BalancedOptimum, Error, FamilyFile, IntSeq, Params, PolytopeSpec, ProfileError, SearchOptions,
    SearchReport,
};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const MAX_UNIVERSE_ENV: &str = "NFAM_MAX_UNIVERSE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub result: Value,
    pub elapsed_ms: u64,
}

#[derive(Parser, Debug)]
#[command(
    name = "nfam",
    version,
    about = "Exact toolkit for r-wise s-union families in N^n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build K(r, n, a, d) and print it as a family file or its size.
    Construct {
        #[command(flatten)]
        k: KArgs,
        #[arg(long, value_enum, default_value_t = Emit::Vectors)]
        emit: Emit,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the family here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Closed-form size of K next to the enumerated size.
    Count {
        #[command(flatten)]
        k: KArgs,
    },
    /// Check a family file for the r-wise s-union property.
    Verify {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: u64,
        /// Also check closure under the componentwise order.
        #[arg(long)]
        downset: bool,
        /// Also derive the (m, d, a, P) profile.
        #[arg(long)]
        profile: bool,
    },
    /// Exact maximum r-wise s-union family.
    Search {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        all_optima: bool,
        /// Restrict first generators to sorted vectors (size only).
        #[arg(long)]
        symmetry: bool,
        #[command(flatten)]
        guard: Guard,
    },
    /// Search optimum against the best balanced candidate family.
    Conjecture {
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        guard: Guard,
    },
    /// Size of D(U(e_p, d)) with s = d*r + p.
    Refsize {
        #[command(flatten)]
        inst: Instance,
    },
}

#[derive(clap::Args, Debug)]
struct KArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    n: usize,
    /// Center entries, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    a: Vec<u32>,
    #[arg(long)]
    d: u32,
}

#[derive(clap::Args, Debug)]
struct Instance {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: u64,
}

#[derive(clap::Args, Debug)]
struct Guard {
    /// Cap on C(s+n, n); overrides NFAM_MAX_UNIVERSE.
    #[arg(long)]
    max_universe: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: usize,
    /// Worker threads; 1 is the sequential reference path.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Emit {
    Vectors,
    Count,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

/// What a run produced: exit code and the two output streams.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Step = Result<(String, i32), Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    code,
                    stderr: text,
                    ..Outcome::default()
                }
            };
        }
    };
    let start = Instant::now();
    let step = match cli.command {
        Command::Construct {
            k,
            emit,
            format,
            output,
        } => construct(k, emit, format, output, start),
        Command::Count { k } => count(k, start),
        Command::Verify {
            family,
            r,
            s,
            downset,
            profile,
        } => verify(family, r, s, downset, profile, start),
        Command::Search {
            inst,
            all_optima,
            symmetry,
            guard,
        } => search(inst, all_optima, symmetry, guard, start),
        Command::Conjecture { inst, guard } => conjecture(inst, guard, start),
        Command::Refsize { inst } => refsize(inst, start),
    };
    match step {
        Ok((stdout, code)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: EXIT_USAGE,
            stderr: format!("error: {msg}\n"),
            ..Outcome::default()
        },
        Err(Failure::Core(e)) => Outcome {
            code: if e.is_guard() { EXIT_GUARD } else { EXIT_USAGE },
            stderr: format!("error: {e}\n"),
            ..Outcome::default()
        },
    }
}

fn emit_report(command: &str, params: Value, result: Value, start: Instant) -> String {
    let report = Report {
        command: command.to_string(),
        params,
        result,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    let mut text = serde_json::to_string(&report).expect("report serializes");
    text.push('\n');
    text
}

/// Exact integers: JSON numbers when they fit in u64, decimal strings
/// otherwise.
fn big(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn seq(x: &IntSeq) -> Value {
    json!(x.entries())
}

fn antichain(a: &Antichain) -> Value {
    Value::Array(a.members().iter().map(seq).collect())
}

fn k_params(k: &KArgs) -> Result<Params, Failure> {
    if k.a.len() != k.n {
        return Err(Failure::Usage(format!(
            "--a has {} entries but --n is {}",
            k.a.len(),
            k.n
        )));
    }
    Ok(Params::from_center(k.r, IntSeq::new(k.a.clone()), k.d)?)
}

fn k_echo(p: &Params) -> Value {
    json!({"r": p.r(), "n": p.n(), "a": seq(p.a()), "d": p.d(), "s": p.s()})
}

fn construct(
    k: KArgs,
    emit: Emit,
    format: Format,
    output: Option<PathBuf>,
    start: Instant,
) -> Step {
    let params = k_params(&k)?;
    let family = build_k(&params);
    if emit == Emit::Count {
        let result = json!({"size": family.len()});
        return Ok((
            emit_report("construct", k_echo(&params), result, start),
            EXIT_OK,
        ));
    }
    let file = FamilyFile::from_family(&family);
    let body = match format {
        Format::Json => {
            let mut t = serde_json::to_string(&file).expect("family serializes");
            t.push('\n');
            t
        }
        Format::Csv => file.to_csv(),
    };
    match output {
        None => Ok((body, EXIT_OK)),
        Some(path) => {
            std::fs::write(&path, body)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            let result = json!({"size": family.len(), "output": path.display().to_string()});
            Ok((
                emit_report("construct", k_echo(&params), result, start),
                EXIT_OK,
            ))
        }
    }
}

fn count(k: KArgs, start: Instant) -> Step {
    let params = k_params(&k)?;
    let closed = closed_form_k_size(&params);
    let enumerated = enumerate_l(&PolytopeSpec::new(params.clone())).len();
    let constructed = build_k(&params).len();
    let agree = closed.total == BigUint::from(enumerated) && enumerated == constructed;
    let result = json!({
        "closed_form": {
            "base_term": big(&closed.base_term),
            "layer_terms": closed.layer_terms.iter().map(big).collect::<Vec<_>>(),
            "total": big(&closed.total),
        },
        "enumerated": enumerated,
        "constructed": constructed,
        "agree": agree,
    });
    let code = if agree { EXIT_OK } else { EXIT_VIOLATED };
    Ok((emit_report("count", k_echo(&params), result, start), code))
}

fn profile_error_kind(e: &ProfileError) -> &'static str {
    match e {
        ProfileError::EmptyFamily => "empty_family",
        ProfileError::DivisorNotPositive { .. } => "divisor_not_positive",
        ProfileError::NotDivisible { .. } => "not_divisible",
        ProfileError::NegativeD { .. } => "negative_d",
        ProfileError::NegativeEntry { .. } => "negative_entry",
    }
}

fn verify(path: PathBuf, r: usize, s: u64, downset: bool, profile: bool, start: Instant) -> Step {
    if r == 0 {
        return Err(Failure::Usage("--r must be positive".into()));
    }
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file: FamilyFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let family = file.to_family()?;

    let violation = union_violation(&family, r, s);
    let mut result = serde_json::Map::new();
    result.insert("size".into(), json!(family.len()));
    result.insert("union".into(), json!(violation.is_none()));
    result.insert(
        "violation".into(),
        match &violation {
            Some(v) => json!({
                "members": v.members.iter().map(seq).collect::<Vec<_>>(),
                "join": seq(&v.join),
                "weight": v.weight,
            }),
            None => Value::Null,
        },
    );
    let mut ok = violation.is_none();
    if downset {
        let closed = is_downset(&family);
        ok &= closed;
        result.insert("downset".into(), json!(closed));
    }
    if profile {
        let value = match derive_profile(&family, r, s) {
            Ok(p) => json!({
                "m": seq(&p.m),
                "d": p.d,
                "a": seq(&p.a),
                "P": p.p.iter().map(seq).collect::<Vec<_>>(),
                "assumption_holds": p.assumption_holds,
            }),
            Err(e) => json!({"error": profile_error_kind(&e), "message": e.to_string()}),
        };
        result.insert("profile".into(), value);
    }
    let params = json!({
        "family": path.display().to_string(),
        "r": r,
        "s": s,
        "downset": downset,
        "profile": profile,
    });
    let code = if ok { EXIT_OK } else { EXIT_VIOLATED };
    Ok((
        emit_report("verify", params, Value::Object(result), start),
        code,
    ))
}

fn resolve_max_universe(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match std::env::var(MAX_UNIVERSE_ENV) {
        Ok(raw) => raw
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{MAX_UNIVERSE_ENV}={raw:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_MAX_UNIVERSE),
    }
}

fn candidate(c: &BalancedCandidate) -> Value {
    json!({"d": c.d, "a": seq(&c.a), "size": big(&c.size)})
}

fn conjectured(b: &BalancedOptimum) -> Value {
    json!({
        "size": big(&b.size),
        "optima": b.optima.iter().map(candidate).collect::<Vec<_>>(),
        "candidates": b.candidates.iter().map(candidate).collect::<Vec<_>>(),
    })
}

fn search_result(rep: &SearchReport) -> Value {
    json!({
        "universe_size": rep.universe_size,
        "search_max": rep.search_max,
        "all_optima": rep.all_optima,
        "optima": rep.optima.iter().map(antichain).collect::<Vec<_>>(),
        "conjectured": rep.conjectured.as_ref().map(conjectured),
        "match": rep.matches,
        "uniqueness": rep.uniqueness,
        "uniqueness_strict": rep.uniqueness_strict,
        "counterexample": rep.is_counterexample(),
    })
}

fn search_options(
    guard: &Guard,
    all_optima: bool,
    symmetry: bool,
) -> Result<SearchOptions, Failure> {
    Ok(SearchOptions {
        all_optima,
        max_universe: resolve_max_universe(guard.max_universe)?,
        max_depth: guard.max_depth,
        threads: guard.threads as usize,
        symmetry_breaking: symmetry,
    })
}

fn search(inst: Instance, all_optima: bool, symmetry: bool, guard: Guard, start: Instant) -> Step {
    let opts = search_options(&guard, all_optima, symmetry)?;
    let rep = max_family_search(inst.n, inst.r, inst.s, &opts)?;
    let params = json!({
        "n": inst.n,
        "r": inst.r,
        "s": inst.s,
        "all_optima": all_optima,
        "symmetry": symmetry,
        "max_universe": opts.max_universe,
        "max_depth": opts.max_depth,
        "threads": opts.threads,
    });
    Ok((
        emit_report("search", params, search_result(&rep), start),
        EXIT_OK,
    ))
}

fn conjecture(inst: Instance, guard: Guard, start: Instant) -> Step {
    let opts = search_options(&guard, true, false)?;
    let rep = check_conjecture(inst.n, inst.r, inst.s, &opts)?;
    let params = json!({
        "n": inst.n,
        "r": inst.r,
        "s": inst.s,
        "max_universe": opts.max_universe,
        "max_depth": opts.max_depth,
        "threads": opts.threads,
    });
    let code = if rep.is_counterexample() {
        EXIT_VIOLATED
    } else {
        EXIT_OK
    };
    Ok((
        emit_report("conjecture", params, search_result(&rep), start),
        code,
    ))
}

fn refsize(inst: Instance, start: Instant) -> Step {
    if inst.r < 2 {
        return Err(Failure::Usage("--r must be at least 2".into()));
    }
    let d = u32::try_from(inst.s / inst.r as u64)
        .map_err(|_| Failure::Usage("--s is too large".into()))?;
    let p = (inst.s % inst.r as u64) as usize;
    let size = reference_size(inst.n, p, d)?;
    let params = json!({"n": inst.n, "r": inst.r, "s": inst.s});
    let result = json!({"d": d, "p": p, "size": big(&size)});
    Ok((emit_report("refsize", params, result, start), EXIT_OK))
}
