//! Command-line front end. `run` parses arguments, executes one subcommand
//! and returns the exit code together with the buffered output streams.

mod output;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{
    alternating_cap, candidate_count_caps, p_bound, rep_count_cap, sl_order_note, weyl_cap, BoundExpr, CapScope,
    DEFAULT_BIT_BUDGET,
};
use crate::cache::WeightCache;
use crate::candidates::{enumerate_candidates, CandidateOptions, DEFAULT_DIM_CEILING};
use crate::census::{enumerate_weights_cached, prime_degree_census, verify_kac, CensusEntry};
use crate::error::Error;
use crate::rootsystem::{root_system, Family, LieType};
use crate::weyldim::{dual_weight, is_self_dual, weyl_dim, Weight};

pub use output::{CandidateRow, EntryRow, OutputRecord, SCHEMA_VERSION, TOOL_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "liecensus", version, about = "Weyl dimensions, prime-degree censuses and candidate screening")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of the irreducible module with the given highest weight.
    Dim {
        family: String,
        rank: usize,
        /// comma-separated, e.g. 2,5
        weight: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Cartan matrix, root lengths and positive roots.
    Roots {
        family: String,
        rank: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Highest weight of the dual module.
    Dual {
        family: String,
        rank: usize,
        weight: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// All dominant weights with dimension at most --max-dim.
    Enum {
        family: String,
        rank: usize,
        #[arg(long)]
        max_dim: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// cache directory; defaults to $LIECENSUS_CACHE
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Every irreducible module of prime dimension r.
    Census {
        #[arg(long)]
        prime: u64,
        /// include the low-rank duplicates B2, C2, D3 and friends
        #[arg(long)]
        no_canonical: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare the census against the classification list.
    VerifyKac {
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact values of the explicit bounds for degree r.
    Bounds {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long, default_value_t = DEFAULT_BIT_BUDGET)]
        bits: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Screen the Lie-type candidates for SL_r(p^k).
    Candidates {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        allow_self_dual: bool,
        /// exclusive upper limit on p
        #[arg(long)]
        p_limit: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_DIM_CEILING)]
        dim_ceiling: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Largest alternating section of GL_m.
    AltCap {
        #[arg(long)]
        degree: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Dim { .. } => "dim",
            Command::Roots { .. } => "roots",
            Command::Dual { .. } => "dual",
            Command::Enum { .. } => "enum",
            Command::Census { .. } => "census",
            Command::VerifyKac { .. } => "verify-kac",
            Command::Bounds { .. } => "bounds",
            Command::Candidates { .. } => "candidates",
            Command::AltCap { .. } => "alt-cap",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit(_) => EXIT_RESOURCE,
            Error::Invariant(_) => EXIT_INVARIANT,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        kind: "usage",
        message: message.into(),
    }
}

type CmdResult = std::result::Result<RunOutput, Failure>;

pub fn run<I, S>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => RunOutput {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => RunOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: output::error_line("", "usage", e.to_string().trim_end()) + "\n",
                },
            };
        }
    };
    let name = cli.command.name();
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(f) => RunOutput {
            code: f.code,
            stdout: String::new(),
            stderr: output::error_line(name, f.kind, &f.message) + "\n",
        },
    }
}

fn dispatch(cmd: Command) -> CmdResult {
    match cmd {
        Command::Dim {
            family,
            rank,
            weight,
            format,
        } => cmd_dim(&family, rank, &weight, format),
        Command::Roots { family, rank, format } => cmd_roots(&family, rank, format),
        Command::Dual {
            family,
            rank,
            weight,
            format,
        } => cmd_dual(&family, rank, &weight, format),
        Command::Enum {
            family,
            rank,
            max_dim,
            format,
            cache,
        } => cmd_enum(&family, rank, max_dim, format, cache),
        Command::Census {
            prime,
            no_canonical,
            format,
        } => cmd_census(prime, !no_canonical, format),
        Command::VerifyKac { prime, format } => cmd_verify_kac(prime, format),
        Command::Bounds { prime, k, bits, format } => cmd_bounds(prime, k, bits, format),
        Command::Candidates {
            prime,
            k,
            allow_self_dual,
            p_limit,
            dim_ceiling,
            format,
            cache,
        } => {
            let opts = CandidateOptions {
                exclude_self_dual: !allow_self_dual,
                p_limit_override: p_limit,
                dim_ceiling,
                cache: resolve_cache(cache),
                ..CandidateOptions::default()
            };
            cmd_candidates(prime, k, opts, format)
        }
        Command::AltCap { degree, format } => cmd_alt_cap(degree, format),
    }
}

fn resolve_cache(flag: Option<PathBuf>) -> Option<WeightCache> {
    flag.map(WeightCache::new).or_else(WeightCache::from_env)
}

fn parse_type(family: &str, rank: usize) -> std::result::Result<LieType, Failure> {
    Ok(LieType::parse(family, rank)?)
}

fn parse_weight(ty: LieType, s: &str) -> std::result::Result<Weight, Failure> {
    let w: Weight = s
        .parse()
        .map_err(|_| usage(format!("cannot parse weight {s:?}; expected comma-separated integers without spaces")))?;
    if w.len() != ty.rank() {
        return Err(Error::Shape {
            expected: ty.rank(),
            found: w.len(),
        }
        .into());
    }
    Ok(w)
}

fn no_csv(format: Format, command: &str) -> std::result::Result<(), Failure> {
    if format == Format::Csv {
        Err(usage(format!("{command} has no csv output")))
    } else {
        Ok(())
    }
}

/// Replaces every JSON number by its decimal string.
fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}

fn record(command: &str, inputs: Value, result: Value) -> OutputRecord {
    OutputRecord::new(command, stringify_numbers(inputs), stringify_numbers(result))
}

fn ok(stdout: String) -> CmdResult {
    Ok(RunOutput {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    })
}

fn lines(records: &[OutputRecord]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&r.to_line());
        s.push('\n');
    }
    s
}

fn cmd_dim(family: &str, rank: usize, weight: &str, format: Format) -> CmdResult {
    no_csv(format, "dim")?;
    let ty = parse_type(family, rank)?;
    let w = parse_weight(ty, weight)?;
    let d = weyl_dim(ty, &w)?;
    match format {
        Format::Text => ok(format!("{d}\n")),
        _ => {
            let inputs = json!({"type": ty.to_string(), "weight": w.to_string()});
            ok(lines(&[record("dim", inputs, json!(d.to_string()))]))
        }
    }
}

fn cmd_roots(family: &str, rank: usize, format: Format) -> CmdResult {
    no_csv(format, "roots")?;
    let ty = parse_type(family, rank)?;
    let rs = root_system(ty);
    match format {
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "{ty}: {} positive roots", rs.l()).unwrap();
            writeln!(s, "cartan:").unwrap();
            for row in &rs.cartan {
                let row: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
                writeln!(s, "  {}", row.join(" ")).unwrap();
            }
            let lens: Vec<String> = rs.length_factor.iter().map(|t| t.to_string()).collect();
            writeln!(s, "length factors: {}", lens.join(" ")).unwrap();
            for r in &rs.positive_roots {
                let r: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                writeln!(s, "  ({})", r.join(",")).unwrap();
            }
            ok(s)
        }
        _ => {
            let result = json!({
                "type": ty.to_string(),
                "cartan": rs.cartan,
                "length_factors": rs.length_factor.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                "positive_roots": rs.positive_roots,
                "l": rs.l(),
            });
            ok(lines(&[record("roots", json!({"type": ty.to_string()}), result)]))
        }
    }
}

fn cmd_dual(family: &str, rank: usize, weight: &str, format: Format) -> CmdResult {
    no_csv(format, "dual")?;
    let ty = parse_type(family, rank)?;
    let w = parse_weight(ty, weight)?;
    let d = dual_weight(ty, &w)?;
    let sd = is_self_dual(ty, &w)?;
    match format {
        Format::Text => ok(format!("{d}{}\n", if sd { " (self-dual)" } else { "" })),
        _ => {
            let inputs = json!({"type": ty.to_string(), "weight": w.to_string()});
            let result = json!({"dual": d.to_string(), "self_dual": sd});
            ok(lines(&[record("dual", inputs, result)]))
        }
    }
}

fn entry_listing(command: &str, inputs: &Value, entries: &[CensusEntry], format: Format) -> String {
    let rows: Vec<EntryRow> = entries.iter().map(EntryRow::from).collect();
    match format {
        Format::Csv => output::csv_string(&rows),
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                writeln!(s, "{:<4} ({})  dim {}", r.lie_type, r.weight, r.dim).unwrap();
            }
            s
        }
        Format::Json => {
            let recs: Vec<OutputRecord> = rows
                .iter()
                .map(|r| record(command, inputs.clone(), serde_json::to_value(r).expect("rows serialize")))
                .collect();
            lines(&recs)
        }
    }
}

fn cmd_enum(family: &str, rank: usize, max_dim: u64, format: Format, cache: Option<PathBuf>) -> CmdResult {
    let ty = parse_type(family, rank)?;
    let cache = resolve_cache(cache);
    let entries = enumerate_weights_cached(ty, max_dim, cache.as_ref())?;
    let inputs = json!({"type": ty.to_string(), "max_dim": max_dim});
    ok(entry_listing("enum", &inputs, &entries, format))
}

fn cmd_census(r: u64, canonical: bool, format: Format) -> CmdResult {
    let entries = prime_degree_census(r, canonical)?;
    let inputs = json!({"prime": r, "canonical": canonical});
    ok(entry_listing("census", &inputs, &entries, format))
}

fn cmd_verify_kac(r: u64, format: Format) -> CmdResult {
    no_csv(format, "verify-kac")?;
    let report = verify_kac(r)?;
    let code = if report.matches { EXIT_OK } else { EXIT_MISMATCH };
    let stdout = match format {
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "r = {}: {}", r, if report.matches { "match" } else { "MISMATCH" }).unwrap();
            for e in &report.found {
                writeln!(s, "  {:<4} ({})  dim {}", e.lie_type, e.weight, e.dim).unwrap();
            }
            for n in &report.notes {
                writeln!(s, "note: {n}").unwrap();
            }
            s
        }
        _ => {
            let rows = |v: &[CensusEntry]| v.iter().map(EntryRow::from).collect::<Vec<_>>();
            let result = json!({
                "prime": report.prime,
                "match": report.matches,
                "expected": rows(&report.expected),
                "found": rows(&report.found),
                "notes": report.notes,
            });
            lines(&[record("verify-kac", json!({"prime": r}), result)])
        }
    };
    Ok(RunOutput {
        code,
        stdout,
        stderr: String::new(),
    })
}

fn cmd_bounds(r: u64, k: u64, bits: u64, format: Format) -> CmdResult {
    no_csv(format, "bounds")?;
    if r < 2 {
        return Err(Error::domain("bounds need r >= 2").into());
    }
    let budget = |b: BoundExpr| b.with_budget(bits);
    let pb = budget(p_bound(r));
    let caps = candidate_count_caps(r);
    let (bb1, th8, t11) = (budget(caps.bb1), budget(caps.th8), budget(caps.t11));

    let mut weyl = Vec::new();
    let scopes = [
        ("generic", CapScope::Generic),
        ("A", CapScope::Family(Family::A)),
        ("B", CapScope::Family(Family::B)),
        ("C", CapScope::Family(Family::C)),
        ("D", CapScope::Family(Family::D)),
    ];
    for (label, scope) in scopes {
        let cap = weyl_cap(scope, r)?;
        weyl.push((label, cap.rule, cap.strict, budget(cap.bound)));
    }
    let mut reps = Vec::new();
    for (label, fam, p) in [
        ("p=2", None, 2),
        ("type A, p>2", Some(Family::A), 3),
        ("other types, p>2", Some(Family::B), 3),
    ] {
        reps.push((label, budget(rep_count_cap(fam, r, p)?)));
    }
    let sl = sl_order_note(r, k, bits);

    let stdout = match format {
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "p_bound: {}", output::bound_text(&pb)).unwrap();
            for f in &pb.flags {
                writeln!(s, "  flag: {f}").unwrap();
            }
            for (label, _, strict, b) in &weyl {
                let rel = if *strict { "<" } else { "<=" };
                writeln!(s, "weyl cap [{label}]: dim {rel} {}", output::bound_text(b)).unwrap();
            }
            for (label, b) in &reps {
                writeln!(s, "rep count [{label}]: {}", output::bound_text(b)).unwrap();
            }
            writeln!(s, "bb1: {}", output::bound_text(&bb1)).unwrap();
            writeln!(s, "th8: {}", output::bound_text(&th8)).unwrap();
            writeln!(s, "t11: {}", output::bound_text(&t11)).unwrap();
            match (&sl.p0, &sl.order) {
                (Some(p0), Some(o)) => writeln!(s, "|SL_{r}({p0}^{k})| = {o}").unwrap(),
                _ => writeln!(s, "SL order: {}", sl.reason.as_deref().unwrap_or("unavailable")).unwrap(),
            }
            s
        }
        _ => {
            let weyl_json: Vec<Value> = weyl
                .iter()
                .map(|(label, rule, strict, b)| {
                    json!({
                        "scope": label,
                        "rule": rule,
                        "strict": strict,
                        "bound": output::bound_json(b),
                    })
                })
                .collect();
            let reps_json: Vec<Value> = reps
                .iter()
                .map(|(label, b)| json!({"scope": label, "bound": output::bound_json(b)}))
                .collect();
            let result = json!({
                "p_bound": output::bound_json(&pb),
                "weyl_caps": weyl_json,
                "rep_count_caps": reps_json,
                "bb1": output::bound_json(&bb1),
                "th8": output::bound_json(&th8),
                "t11": output::bound_json(&t11),
                "sl_order": {
                    "p0": sl.p0,
                    "k": sl.k,
                    "order": sl.order.as_ref().map(|o| o.to_string()),
                    "reason": sl.reason,
                },
            });
            let inputs = json!({"prime": r, "k": k, "bits": bits});
            lines(&[record("bounds", inputs, result)])
        }
    };
    ok(stdout)
}

fn cmd_candidates(r: u64, k: u64, opts: CandidateOptions, format: Format) -> CmdResult {
    let inputs = json!({
        "prime": r,
        "k": k,
        "exclude_self_dual": opts.exclude_self_dual,
        "p_limit": opts.p_limit_override,
        "dim_ceiling": opts.dim_ceiling,
    });
    let run = enumerate_candidates(r, k, &opts)?;
    let rows: Vec<CandidateRow> = run.records.iter().chain(&run.stubs).map(CandidateRow::from).collect();
    let summary = record(
        "candidates.summary",
        inputs.clone(),
        serde_json::to_value(&run.summary).expect("summary serializes"),
    );
    match format {
        Format::Csv => Ok(RunOutput {
            code: EXIT_OK,
            stdout: output::csv_string(&rows),
            stderr: summary.to_line() + "\n",
        }),
        Format::Json => {
            let mut recs: Vec<OutputRecord> = rows
                .iter()
                .map(|r| record("candidates", inputs.clone(), serde_json::to_value(r).expect("rows serialize")))
                .collect();
            recs.push(summary);
            ok(lines(&recs))
        }
        Format::Text => {
            let mut s = String::new();
            for row in &rows {
                write!(s, "p={:<6} {:<14} ({})  dim {}", row.p, row.group, row.weight, row.dim).unwrap();
                if !row.flags.is_empty() {
                    write!(s, "  [{}]", row.flags).unwrap();
                }
                s.push('\n');
            }
            let sm = &run.summary;
            writeln!(
                s,
                "{} records over {} primes below {} ({})",
                sm.total_records, sm.primes_considered, sm.p_limit, sm.p_limit_source
            )
            .unwrap();
            writeln!(s, "per-p counts within bb1: {}", sm.all_within_bb1).unwrap();
            for n in &sm.truncation_notices {
                writeln!(s, "note: {n}").unwrap();
            }
            ok(s)
        }
    }
}

fn cmd_alt_cap(m: u64, format: Format) -> CmdResult {
    no_csv(format, "alt-cap")?;
    let cap = alternating_cap(m)?;
    match format {
        Format::Text => ok(format!("u <= {} (so u <= {})\n", cap.value, cap.floor)),
        _ => {
            let result = json!({"value": cap.value.to_string(), "floor": cap.floor});
            ok(lines(&[record("alt-cap", json!({"degree": m}), result)]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> RunOutput {
        run(std::iter::once("liecensus").chain(args.iter().copied()))
    }

    #[test]
    fn dim_example() {
        let out = run_args(&["dim", "A", "2", "2,5"]);
        assert_eq!(out.code, 0);
        let rec: OutputRecord = serde_json::from_str(out.stdout.trim()).unwrap();
        assert_eq!(rec.result, json!("81"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["dim", "A", "2", "2, 5"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["dim", "A", "2", "2,5,1"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["nope"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).code, EXIT_OK);
        assert_eq!(run_args(&["candidates", "--prime", "7", "--k", "1"]).code, EXIT_RESOURCE);
        let e = run_args(&["dim", "E", "5", "1,0,0,0,0"]);
        assert_eq!(e.code, EXIT_USAGE);
        let v: Value = serde_json::from_str(e.stderr.trim()).unwrap();
        assert_eq!(v["error"]["kind"], "rank_domain");
    }
}
