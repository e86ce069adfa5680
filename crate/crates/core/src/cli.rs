//! The `posetlab` command line.
//!
//! Exit codes: 0 success, 1 a `check` or `verify` assertion failed, 2 usage
//! or input error. Reports are JSON unless `--format csv` is given. All
//! inputs are read and validated before anything is computed or written.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::chains::{
    chain_weight_average, count_2chains, kleitman_lower_bound, lubell_mass, pair_count, ChainAverageMethod,
};
use crate::embed::FreenessMode;
use crate::family::{
    f23_construction, format_mask, lubell_tail_family, middle_layers, SetFamily,
};
use crate::poset::{NamedPoset, Poset, T3Reading, TreeClass};
use crate::search::{la_exact, saturation_check, verify_free, Saturation, SearchConfig};
use crate::verify::{csv_field, verify_paper, Suite, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "posetlab", version, about = "Forbidden subposet problems on small Boolean lattices")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// How `t3(r)` is read: every non-leaf has Hasse degree r, or r children.
    #[arg(long, global = true, value_enum, default_value_t = Reading::HasseDegree)]
    t3_reading: Reading,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Reading {
    HasseDegree,
    Children,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Weak,
    Induced,
    #[value(alias = "rank_preserving", alias = "rank-preserving")]
    Rp,
}

impl Mode {
    fn freeness(self) -> FreenessMode {
        match self {
            Mode::Weak => FreenessMode::Weak,
            Mode::Induced => FreenessMode::Induced,
            Mode::Rp => FreenessMode::RankPreserving,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate or inspect posets.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Generate or inspect set families.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Test a family for freeness or saturation.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Lubell mass, pair count, 2-chains and chain-weight average of a family.
    Measure(MeasureArgs),
    /// Exact extremal search.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Run the claim verification suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
enum PosetCmd {
    /// Print a named poset in the poset JSON format.
    Gen {
        /// `chain(k)`, `antichain(k)`, `y(h,s)`, `y'(h,s)`, `t3(r)`, `multilevel(a,b,..)`.
        name: String,
    },
    /// Structural summary of a poset given as `named:...` or a JSON path.
    Show { poset: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    /// The `h` middle layers.
    Middle,
    /// The `{Y_{1,2}, Y'_{1,3}}`-free family beating the middle layer (even n).
    F23,
    /// Two tails of full layers with Lubell mass `2(h-1)`.
    Tail,
    /// All subsets.
    Power,
}

#[derive(Debug, Subcommand)]
enum FamilyCmd {
    /// Write a constructed family in the family text format.
    Gen {
        #[arg(long, value_enum)]
        kind: FamilyKind,
        #[arg(long)]
        n: u32,
        /// Number of layers (`middle`) or height parameter (`tail`).
        #[arg(long)]
        h: Option<u32>,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Size, layer profile and Lubell mass of a family file.
    Stats { file: PathBuf },
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    family: PathBuf,
    /// Ground size; must match the file header when given.
    #[arg(long)]
    n: Option<u32>,
    /// `named:y(2,2)` or a poset JSON path; repeatable.
    #[arg(long, required = true)]
    forbid: Vec<String>,
    #[arg(long, value_enum, default_value_t = Mode::Weak)]
    mode: Mode,
}

#[derive(Debug, Subcommand)]
enum CheckCmd {
    /// Exit 0 when the family contains no forbidden copy, 1 with a witness otherwise.
    Free(CheckArgs),
    /// Exit 0 when the family is free and every added set creates a copy.
    Saturated(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    Formula,
    Enumeration,
}

#[derive(Debug, Args)]
struct MeasureArgs {
    #[arg(long)]
    family: PathBuf,
    /// How the chain-weight average is computed (enumeration needs n <= 8).
    #[arg(long, value_enum, default_value_t = Via::Formula)]
    via: Via,
}

#[derive(Debug, Subcommand)]
enum SearchCmd {
    /// Largest family free of every forbidden poset.
    La(LaArgs),
}

#[derive(Debug, Args)]
struct LaArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, required = true)]
    forbid: Vec<String>,
    #[arg(long, value_enum, default_value_t = Mode::Weak)]
    mode: Mode,
    /// Stop after this many milliseconds and report the best family found.
    #[arg(long)]
    budget_ms: Option<u64>,
    #[arg(long, env = "POSETLAB_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Write the optimal family to this path in the family text format.
    #[arg(long)]
    emit_witness: Option<PathBuf>,
    /// Fix the first chosen set up to permutations of the ground set.
    #[arg(long)]
    symmetry: bool,
    /// A free family file used as the initial lower bound.
    #[arg(long)]
    seed_family: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// Exact small-n reproductions and identity checks; exit 1 if any fails.
    Paper {
        /// `all` or a comma-separated list of suite names.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest n for the exact searches and saturation checks.
        #[arg(long, default_value_t = 7)]
        max_n: u32,
    },
}

#[derive(Debug)]
enum Failure {
    /// Bad arguments or unreadable/invalid input: exit 2.
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult = Result<(Output, i32), Failure>;

/// What a command prints on success.
enum Output {
    Text(String),
    Report(Value),
}

/// Parses `args` (program name first) and runs the command with real stdio.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], writing to the given streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((output, code)) => {
            let text = match output {
                Output::Text(t) => t,
                Output::Report(v) => match cli.format {
                    Format::Json => format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")),
                    Format::Csv => to_csv(&v),
                },
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            code
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> CliResult {
    let reading = match cli.t3_reading {
        Reading::HasseDegree => T3Reading::HasseDegree,
        Reading::Children => T3Reading::Children,
    };
    match &cli.command {
        Command::Poset(PosetCmd::Gen { name }) => {
            let poset = named(name, reading)?.build()?;
            Ok((Output::Text(format!("{}\n", poset.to_json())), 0))
        }
        Command::Poset(PosetCmd::Show { poset }) => {
            let (name, poset) = load_poset(poset, reading)?;
            Ok((Output::Report(poset_summary(&name, &poset)), 0))
        }
        Command::Family(FamilyCmd::Gen { kind, n, h, out }) => family_gen(*kind, *n, *h, out.as_deref()),
        Command::Family(FamilyCmd::Stats { file }) => {
            let family = load_family(file, None)?;
            Ok((Output::Report(family_stats(&family)), 0))
        }
        Command::Check(CheckCmd::Free(args)) => check_free(args, reading),
        Command::Check(CheckCmd::Saturated(args)) => check_saturated(args, reading),
        Command::Measure(args) => measure(args),
        Command::Search(SearchCmd::La(args)) => search_la(args, reading),
        Command::Verify(VerifyCmd::Paper { suite, max_n }) => {
            let suites = parse_suites(suite)?;
            let command = format!("verify paper --suite {suite} --max-n {max_n}");
            let report = verify_paper(&command, &VerifyOptions { max_n: *max_n, suites });
            let code = if report.passed() { 0 } else { 1 };
            match cli.format {
                Format::Json => Ok((Output::Report(report.to_json()), code)),
                Format::Csv => Ok((Output::Text(report.to_csv()), code)),
            }
        }
    }
}

fn parse_suites(spec: &str) -> Result<Vec<Suite>, Failure> {
    if spec == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let suites = spec
        .split(',')
        .map(|s| s.trim().parse::<Suite>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(suites)
}

fn named(name: &str, reading: T3Reading) -> Result<NamedPoset, Failure> {
    let mut parsed: NamedPoset = name.parse()?;
    if let NamedPoset::T3 { reading: r, .. } = &mut parsed {
        if !name.trim_start().starts_with("t3c") {
            *r = reading;
        }
    }
    Ok(parsed)
}

/// `named:<name>` or a poset JSON file. Returns a display name with the poset.
fn load_poset(spec: &str, reading: T3Reading) -> Result<(String, Poset), Failure> {
    if let Some(name) = spec.strip_prefix("named:") {
        let named = named(name, reading)?;
        let poset = named.build()?;
        return Ok((named.to_string(), poset));
    }
    let text = fs::read_to_string(spec).map_err(|e| Failure::Input(format!("{spec}: {e}")))?;
    let poset = Poset::from_json(&text).map_err(|e| Failure::Input(format!("{spec}: {e}")))?;
    Ok((spec.to_string(), poset))
}

fn load_posets(specs: &[String], reading: T3Reading) -> Result<(Vec<String>, Vec<Poset>), Failure> {
    let mut names = Vec::new();
    let mut posets = Vec::new();
    for spec in specs {
        let (name, poset) = load_poset(spec, reading)?;
        names.push(name);
        posets.push(poset);
    }
    Ok((names, posets))
}

fn load_family(path: &Path, n: Option<u32>) -> Result<SetFamily, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let family = SetFamily::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if let Some(n) = n {
        if n != family.n() {
            return Err(Failure::Input(format!(
                "--n {n} does not match the family header n={}",
                family.n()
            )));
        }
    }
    Ok(family)
}

fn tree_class_name(class: TreeClass) -> &'static str {
    match class {
        TreeClass::NotTree => "not_tree",
        TreeClass::Tree => "tree",
        TreeClass::MonotoneIncreasing => "monotone_increasing",
        TreeClass::MonotoneDecreasing => "monotone_decreasing",
    }
}

fn poset_summary(name: &str, poset: &Poset) -> Value {
    let ranks = poset.rank_assignment();
    let labels = |xs: Vec<usize>| xs.into_iter().map(|x| poset.label(x).to_string()).collect::<Vec<_>>();
    let rank_map: Map<String, Value> = (0..poset.len())
        .map(|x| (poset.label(x).to_string(), json!(ranks.rank(x))))
        .collect();
    json!({
        "poset": name,
        "elements": poset.labels(),
        "covers": poset.cover_labels().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
        "size": poset.len(),
        "height": poset.height(),
        "graded": ranks.graded,
        "ranks": rank_map,
        "minimal": labels(poset.minimal_elements()),
        "maximal": labels(poset.maximal_elements()),
        "treeClass": tree_class_name(poset.classify_tree()),
    })
}

fn family_gen(kind: FamilyKind, n: u32, h: Option<u32>, out: Option<&Path>) -> CliResult {
    let need_h = || h.ok_or_else(|| Failure::Input(format!("--kind {kind:?} needs --h").to_lowercase()));
    let family = match kind {
        FamilyKind::Middle => middle_layers(n, need_h()?)?,
        FamilyKind::F23 => f23_construction(n)?,
        FamilyKind::Tail => lubell_tail_family(n, need_h()?)?,
        FamilyKind::Power => SetFamily::power_set(n)?,
    };
    let text = family.to_text();
    match out {
        None => Ok((Output::Text(text), 0)),
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let report = json!({
                "written": path.display().to_string(),
                "n": family.n(),
                "size": family.len(),
            });
            Ok((Output::Report(report), 0))
        }
    }
}

fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Integers above `2^53` are emitted as strings.
fn exact_number(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) if x <= 1 << 53 => json!(x),
        _ => json!(v.to_string()),
    }
}

fn family_stats(family: &SetFamily) -> Value {
    json!({
        "n": family.n(),
        "size": family.len(),
        "layerProfile": family.layer_profile().counts(),
        "lubell": ratio_string(&lubell_mass(family)),
        "twoChains": count_2chains(family),
    })
}

fn witness_json(names: &[String], posets: &[Poset], hit: &Option<(usize, crate::embed::Embedding)>) -> Value {
    match hit {
        None => Value::Null,
        Some((i, e)) => {
            let mut w = e.to_json(&posets[*i]);
            if let Value::Object(map) = &mut w {
                map.insert("poset".into(), json!(names[*i]));
            }
            w
        }
    }
}

fn check_free(args: &CheckArgs, reading: T3Reading) -> CliResult {
    let family = load_family(&args.family, args.n)?;
    let (names, posets) = load_posets(&args.forbid, reading)?;
    let mode = args.mode.freeness();
    let (free, hit) = verify_free(&family, &posets, &mode)?;
    let report = json!({
        "command": "check free",
        "n": family.n(),
        "size": family.len(),
        "mode": mode.to_string(),
        "forbidden": names,
        "free": free,
        "witness": witness_json(&names, &posets, &hit),
    });
    Ok((Output::Report(report), if free { 0 } else { 1 }))
}

fn check_saturated(args: &CheckArgs, reading: T3Reading) -> CliResult {
    let family = load_family(&args.family, args.n)?;
    let (names, posets) = load_posets(&args.forbid, reading)?;
    let mode = args.mode.freeness();
    let (free, hit) = verify_free(&family, &posets, &mode)?;
    let mut report = json!({
        "command": "check saturated",
        "n": family.n(),
        "size": family.len(),
        "mode": mode.to_string(),
        "forbidden": names,
        "free": free,
    });
    let map = report.as_object_mut().expect("object");
    if !free {
        map.insert("saturated".into(), json!(false));
        map.insert("witness".into(), witness_json(&names, &posets, &hit));
        return Ok((Output::Report(report), 1));
    }
    let saturated = match saturation_check(&family, &posets, &mode)? {
        Saturation::Saturated => true,
        Saturation::Counterexample(s) => {
            map.insert("counterexample".into(), json!(format_mask(s)));
            false
        }
    };
    map.insert("saturated".into(), json!(saturated));
    Ok((Output::Report(report), if saturated { 0 } else { 1 }))
}

fn measure(args: &MeasureArgs) -> CliResult {
    let family = load_family(&args.family, None)?;
    let via = match args.via {
        Via::Formula => ChainAverageMethod::Formula,
        Via::Enumeration => ChainAverageMethod::Enumeration,
    };
    let avg = chain_weight_average(&family, via)?;
    let report = json!({
        "n": family.n(),
        "size": family.len(),
        "lubell": ratio_string(&lubell_mass(&family)),
        "pairCount": pair_count(&family).to_string(),
        "twoChains": count_2chains(&family),
        "kleitmanBound": exact_number(&kleitman_lower_bound(family.len() as u64, family.n())),
        "chainAvg": ratio_string(&avg),
        "via": format!("{:?}", args.via).to_lowercase(),
    });
    Ok((Output::Report(report), 0))
}

fn search_la(args: &LaArgs, reading: T3Reading) -> CliResult {
    let (names, posets) = load_posets(&args.forbid, reading)?;
    if args.workers == 0 {
        return Err(Failure::Input("--workers must be at least 1".into()));
    }
    let seed = match &args.seed_family {
        Some(path) => Some(load_family(path, Some(args.n))?),
        None => None,
    };
    let cfg = SearchConfig {
        budget: args.budget_ms.map(Duration::from_millis),
        workers: args.workers,
        symmetry: args.symmetry,
        seed,
    };
    let outcome = la_exact(args.n, &posets, &args.mode.freeness(), &cfg)?;
    let mut report = outcome.to_json(&names);
    if let Some(path) = &args.emit_witness {
        fs::write(path, outcome.witness.to_text()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        report["witnessPath"] = json!(path.display().to_string());
    }
    Ok((Output::Report(report), 0))
}

/// Flattens a JSON object into `key,value` rows; nested values use dotted
/// keys and arrays are joined with `;`.
fn to_csv(v: &Value) -> String {
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        }
    }
    fn walk(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, child) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, child, rows);
                }
            }
            Value::Array(items) if items.iter().all(|i| !i.is_object()) => {
                let joined: Vec<String> = items
                    .iter()
                    .map(|i| match i {
                        Value::Array(inner) => inner.iter().map(scalar).collect::<Vec<_>>().join(" "),
                        other => scalar(other),
                    })
                    .collect();
                rows.push((prefix.to_string(), joined.join(";")));
            }
            Value::Array(items) => {
                for (i, child) in items.iter().enumerate() {
                    walk(&format!("{prefix}.{i}"), child, rows);
                }
            }
            other => rows.push((prefix.to_string(), scalar(other))),
        }
    }
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    let mut out = String::from("key,value\n");
    for (k, val) in rows {
        out.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&val)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("posetlab").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn middle_family_gen() {
        let (code, out, _) = run_capture(&["family", "gen", "--kind", "middle", "--n", "4", "--h", "2"]);
        assert_eq!(code, 0);
        let family = SetFamily::parse(&out).unwrap();
        assert_eq!(family.len(), 10);
        assert_eq!(out.lines().count(), 11);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["family", "gen", "--kind", "middle", "--n", "4"]).0, 2);
        assert_eq!(run_capture(&["poset", "gen", "y(0,2)"]).0, 2);
        assert_eq!(run_capture(&["poset", "show", "named:nope(1)"]).0, 2);
        let (code, out, err) = run_capture(&["measure", "--family", "/nonexistent/f.txt"]);
        assert_eq!((code, out.as_str()), (2, ""));
        assert!(err.contains("error"));
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }

    #[test]
    fn t3_reading_flag() {
        let (_, hasse, _) = run_capture(&["poset", "gen", "t3(3)"]);
        let (_, children, _) = run_capture(&["--t3-reading", "children", "poset", "gen", "t3(3)"]);
        let count = |s: &str| Poset::from_json(s).unwrap().len();
        assert_eq!(count(&hasse), 1 + 3 + 6);
        assert_eq!(count(&children), 1 + 3 + 9);
    }

    #[test]
    fn csv_flattening() {
        let v = json!({"a": 1, "b": {"c": "x,y"}, "d": [1, 2], "e": [[1, 2], [3]]});
        assert_eq!(to_csv(&v), "key,value\na,1\nb.c,\"x,y\"\nd,1;2\ne,1 2;3\n");
    }

    #[test]
    fn big_numbers_become_strings() {
        assert_eq!(exact_number(&BigUint::from(5u32)), json!(5));
        assert_eq!(exact_number(&(BigUint::from(1u64 << 60))), json!((1u64 << 60).to_string()));
    }
}
