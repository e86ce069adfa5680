//! The `verify paper` suite: exact small-n reproductions and identity checks.
//!
//! Every check is a pure composition of library calls with fixed seeds and a
//! single search worker, so two runs produce identical reports.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chains::{
    chain_weight_average, count_2chains, kleitman_lower_bound, lubell_mass, pair_count, ChainAverageMethod,
};
use crate::embed::{
    build_inclusion_bigraph, find_copy, greedy_tree_embed, min_degree_subgraph, FreenessMode, InclusionBigraph,
};
use crate::family::{
    f23_construction, f23_printed_size, format_mask, layer_masks, lubell_tail_family, middle_layers, sigma, Mask, SetFamily,
};
use crate::numbers::{binomial_u64, factorial};
use crate::oracle::{brute_force_copy, exhaustive_la};
use crate::poset::{chain, height_two_trees, y, y_prime, Coloring, Poset};
use crate::search::{la_exact, saturation_check, verify_free, Saturation, SearchConfig};

/// `La_rp(4, {Y_{2,2}, Y'_{2,2}})`, first obtained by exhaustive enumeration
/// of all `2^16` families and pinned as a regression value.
pub const PINNED_RP_Y22_N4: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Sperner,
    KatonaTarjan,
    Saturation,
    ChainAverage,
    PairCount,
    Kleitman,
    F23,
    LubellTail,
    TreeEmbedding,
    OracleLa,
    OracleCopy,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Sperner,
        Suite::KatonaTarjan,
        Suite::Saturation,
        Suite::ChainAverage,
        Suite::PairCount,
        Suite::Kleitman,
        Suite::F23,
        Suite::LubellTail,
        Suite::TreeEmbedding,
        Suite::OracleLa,
        Suite::OracleCopy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Sperner => "sperner",
            Suite::KatonaTarjan => "katona-tarjan",
            Suite::Saturation => "saturation",
            Suite::ChainAverage => "chain-average",
            Suite::PairCount => "pair-count",
            Suite::Kleitman => "kleitman",
            Suite::F23 => "f23",
            Suite::LubellTail => "lubell-tail",
            Suite::TreeEmbedding => "tree-embedding",
            Suite::OracleLa => "oracle-la",
            Suite::OracleCopy => "oracle-copy",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Upper limit on `n` for the exact searches and saturation checks.
    pub max_n: u32,
    pub suites: Vec<Suite>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_n: 7,
            suites: Suite::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub suite: String,
    pub claim: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

/// A reported observation that is not asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub id: String,
    pub message: String,
    pub values: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub flags: Vec<Flag>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "passed": self.passed(),
            "summary": {
                "checks": self.checks.len(),
                "failed": self.checks.iter().filter(|c| !c.passed).count(),
            },
            "checks": self.checks,
            "flags": self.flags,
        })
    }

    /// One row per check; flags follow with an empty `passed` column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,suite,claim,expected,actual,passed\n");
        for c in &self.checks {
            let row = [&c.id, &c.suite, &c.claim, &c.expected, &c.actual].map(|s| csv_field(s));
            out.push_str(&format!("{},{}\n", row.join(","), c.passed));
        }
        for f in &self.flags {
            out.push_str(&format!("{},flag,{},,{},\n", csv_field(&f.id), csv_field(&f.message), csv_field(&f.values.to_string())));
        }
        out
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

struct Builder {
    suite: Suite,
    checks: Vec<Check>,
    flags: Vec<Flag>,
}

impl Builder {
    fn check(&mut self, id: impl Into<String>, claim: &str, expected: impl ToString, actual: impl ToString, passed: bool) {
        self.checks.push(Check {
            id: format!("{}/{}", self.suite, id.into()),
            suite: self.suite.to_string(),
            claim: claim.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            passed,
        });
    }

    fn equal<T: ToString + PartialEq>(&mut self, id: impl Into<String>, claim: &str, expected: T, actual: T) {
        let passed = expected == actual;
        self.check(id, claim, expected, actual, passed);
    }
}

/// Runs the selected suites in the fixed order of [`Suite::ALL`].
pub fn verify_paper(command: &str, opts: &VerifyOptions) -> Report {
    let mut b = Builder {
        suite: Suite::Sperner,
        checks: Vec::new(),
        flags: Vec::new(),
    };
    for suite in Suite::ALL {
        if !opts.suites.contains(&suite) {
            continue;
        }
        b.suite = suite;
        match suite {
            Suite::Sperner => sperner(&mut b, opts.max_n),
            Suite::KatonaTarjan => katona_tarjan(&mut b, opts.max_n),
            Suite::Saturation => saturation(&mut b, opts.max_n),
            Suite::ChainAverage => chain_average(&mut b),
            Suite::PairCount => pair_counts(&mut b),
            Suite::Kleitman => kleitman(&mut b),
            Suite::F23 => f23(&mut b),
            Suite::LubellTail => lubell_tail(&mut b),
            Suite::TreeEmbedding => tree_embedding(&mut b),
            Suite::OracleLa => oracle_la(&mut b, opts.max_n),
            Suite::OracleCopy => oracle_copy(&mut b),
        }
    }
    let mut suites: Vec<&str> = opts.suites.iter().map(|s| s.name()).collect();
    suites.sort_by_key(|name| Suite::ALL.iter().position(|s| s.name() == *name));
    suites.dedup();
    Report {
        command: command.to_string(),
        inputs: json!({ "maxN": opts.max_n, "suites": suites, "workers": 1 }),
        checks: b.checks,
        flags: b.flags,
    }
}

fn exact_value(n: u32, forbidden: &[Poset], mode: &FreenessMode) -> String {
    match la_exact(n, forbidden, mode, &SearchConfig::default()) {
        Ok(out) if out.exact => out.value.to_string(),
        Ok(out) => format!(">= {} (incomplete)", out.value),
        Err(e) => format!("error: {e}"),
    }
}

fn sperner(b: &mut Builder, max_n: u32) {
    let c2 = [chain(2).expect("valid")];
    for n in 2..=max_n.min(5) {
        let expected = binomial_u64(n, n / 2).to_string();
        let actual = exact_value(n, &c2, &FreenessMode::Weak);
        b.equal(format!("n={n}"), "Sperner: La(n, chain(2)) = C(n, floor(n/2))", expected, actual);
    }
}

fn katona_tarjan(b: &mut Builder, max_n: u32) {
    let yy = [y(1, 2).expect("valid"), y_prime(1, 2).expect("valid")];
    for n in (4..=max_n.min(5)).filter(|&n| n >= 4) {
        let expected = if n % 2 == 0 {
            binomial_u64(n, n / 2)
        } else {
            2 * binomial_u64(n - 1, (n - 1) / 2)
        };
        let actual = exact_value(n, &yy, &FreenessMode::Weak);
        b.equal(
            format!("n={n}"),
            "Katona-Tarjan: La(n, {Y_{1,2}, Y'_{1,2}})",
            expected.to_string(),
            actual,
        );
    }
}

fn saturation(b: &mut Builder, max_n: u32) {
    let yy = [y(2, 2).expect("valid"), y_prime(2, 2).expect("valid")];
    for n in 5..=max_n.min(7) {
        let family = middle_layers(n, 2).expect("valid");
        let actual = match saturation_check(&family, &yy, &FreenessMode::RankPreserving) {
            Ok(Saturation::Saturated) => "free and saturated".to_string(),
            Ok(Saturation::Counterexample(s)) => format!("free, but {} can be added", format_mask(s)),
            Err(e) => e.to_string(),
        };
        let passed = actual == "free and saturated";
        b.check(
            format!("n={n}"),
            "two middle layers are rank-preserving {Y_{2,2}, Y'_{2,2}}-saturated",
            "free and saturated",
            actual,
            passed,
        );
    }
}

/// Random families over `[n]`, each with its own inclusion density.
pub fn random_families(n: u32, count: usize, seed: u64) -> Vec<SetFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p: f64 = rng.gen_range(0.05..0.95);
            let members: Vec<Mask> = (0..1u32 << n).filter(|_| rng.gen_bool(p)).collect();
            SetFamily::new(n, members).expect("subsets of [n]")
        })
        .collect()
}

/// Seed of the shared chain-average / pair-count corpus at ground size `n`.
pub fn corpus_seed(n: u32) -> u64 {
    0xC0A1_0000 + n as u64
}

fn chain_average(b: &mut Builder) {
    for n in 3..=7 {
        let corpus = random_families(n, 100, corpus_seed(n));
        let agree = corpus
            .iter()
            .filter(|f| {
                let avg = chain_weight_average(f, ChainAverageMethod::Enumeration).expect("n <= 8");
                avg.is_integer() && avg.to_integer() == f.len().into()
            })
            .count();
        b.equal(
            format!("n={n}"),
            "average chain weight over all n! maximal chains equals |F|",
            "100/100".to_string(),
            format!("{agree}/100"),
        );
    }
}

fn pair_counts(b: &mut Builder) {
    for n in 3..=7 {
        let corpus = random_families(n, 100, corpus_seed(n));
        let nf = factorial(n as u64);
        let agree = corpus
            .iter()
            .filter(|f| {
                let scaled = lubell_mass(f) * num_rational::BigRational::from_integer(nf.clone().into());
                scaled.is_integer() && scaled.to_integer() == pair_count(f).into()
            })
            .count();
        b.equal(
            format!("n={n}"),
            "pair count sum |F|!(n-|F|)! equals n! times the Lubell mass",
            "100/100".to_string(),
            format!("{agree}/100"),
        );
    }
}

fn kleitman(b: &mut Builder) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4B1E_17A4);
    let total = 1000;
    let mut violations = 0;
    let mut binding = 0;
    for _ in 0..total {
        let n = rng.gen_range(1..=10u32);
        let p: f64 = rng.gen_range(0.2..1.0);
        let members: Vec<Mask> = (0..1u32 << n).filter(|_| rng.gen_bool(p)).collect();
        let f = SetFamily::new(n, members).expect("subsets of [n]");
        let bound = kleitman_lower_bound(f.len() as u64, n);
        let count = count_2chains(&f);
        if bound > 0u32.into() {
            binding += 1;
        }
        if num_bigint::BigUint::from(count) < bound {
            violations += 1;
        }
    }
    b.equal(
        "random-1000",
        "number of 2-chains is at least (|F| - C(n, n/2)) n / 2",
        "0 violations".to_string(),
        format!("{violations} violations"),
    );
    b.flags.push(Flag {
        id: "kleitman/nontrivial".into(),
        message: "families whose bound is positive".into(),
        values: json!({ "families": total, "positiveBound": binding }),
    });
}

fn f23(b: &mut Builder) {
    let forbidden = [y(1, 2).expect("valid"), y_prime(1, 3).expect("valid")];
    for n in [6u32, 8] {
        let family = f23_construction(n).expect("even n >= 4");
        let free = match verify_free(&family, &forbidden, &FreenessMode::Weak) {
            Ok((true, _)) => "free".to_string(),
            Ok((false, Some((i, _)))) => format!("contains {}", ["Y_{1,2}", "Y'_{1,3}"][i]),
            Ok((false, None)) => "not free".to_string(),
            Err(e) => e.to_string(),
        };
        let passed = free == "free";
        b.check(format!("n={n}/free"), "F_{2,3} is {Y_{1,2}, Y'_{1,3}}-free", "free", free, passed);
        let middle = binomial_u64(n, n / 2);
        let size = family.len() as u64;
        b.check(
            format!("n={n}/size"),
            "|F_{2,3}| exceeds the middle layer",
            format!("> {middle}"),
            size,
            size > middle,
        );
        let printed = f23_printed_size(n).expect("even n >= 4");
        if printed != size.into() {
            b.flags.push(Flag {
                id: format!("f23/n={n}/size-formula"),
                message: "closed-form size C(n-2, n/2+1) + C(n, n/2) - C(n-2, n/2-2) disagrees with the enumerated family".into(),
                values: json!({ "n": n, "formula": printed.to_string(), "enumerated": size }),
            });
        }
    }
}

fn lubell_tail(b: &mut Builder) {
    for h in [3u32, 4] {
        for n in 2 * h..=12 {
            let family = lubell_tail_family(n, h).expect("n >= 2h");
            let mass = lubell_mass(&family);
            let expected = 2 * (h - 1);
            let passed = mass.is_integer() && mass.to_integer() == expected.into();
            b.check(
                format!("h={h}/n={n}/mass"),
                "Lubell mass of the tail construction is 2(h-1)",
                expected,
                mass,
                passed,
            );
        }
    }
    let h = 3u32;
    let s = 1usize << (h - 2);
    let forbidden = [y(h as usize, s).expect("valid"), y_prime(h as usize, s).expect("valid")];
    for n in 2 * h..=10 {
        let family = lubell_tail_family(n, h).expect("n >= 2h");
        let actual = match verify_free(&family, &forbidden, &FreenessMode::Weak) {
            Ok((true, _)) => "free".to_string(),
            Ok((false, _)) => "not free".to_string(),
            Err(e) => e.to_string(),
        };
        let passed = actual == "free";
        b.check(
            format!("h={h}/n={n}/free"),
            "tail construction is {Y_{h,s}, Y'_{h,s}}-free with s = 2^(h-2)",
            "free",
            actual,
            passed,
        );
    }
}

/// Random inclusion graph between two layers with average degree above
/// `threshold`, by rejection sampling.
pub fn random_dense_bigraph(rng: &mut ChaCha8Rng, threshold: usize) -> InclusionBigraph {
    loop {
        let n = rng.gen_range(5..=9u32);
        let i = rng.gen_range(1..n - 1);
        let j = rng.gen_range(i + 1..=(i + 3).min(n - 1));
        let p: f64 = rng.gen_range(0.3..1.0);
        let members: Vec<Mask> = layer_masks(n, i)
            .into_iter()
            .chain(layer_masks(n, j))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let family = SetFamily::new(n, members).expect("subsets of [n]");
        let graph = build_inclusion_bigraph(&family, i, j).expect("i < j <= n");
        if let Some(avg) = graph.average_degree() {
            if avg > threshold.into() {
                return graph;
            }
        }
    }
}

fn tree_embedding(b: &mut Builder) {
    for t in 3..=5usize {
        let trees = height_two_trees(t);
        let mut rng = ChaCha8Rng::seed_from_u64(0x7EE5_0000 + t as u64);
        let graphs = 200;
        let mut ok = 0;
        for _ in 0..graphs {
            let graph = random_dense_bigraph(&mut rng, 2 * (t - 2));
            let core = min_degree_subgraph(&graph, t - 1);
            if core.is_empty() {
                continue;
            }
            let family = SetFamily::new(
                crate::family::MAX_GROUND,
                core.lower().iter().chain(core.upper()).copied(),
            )
            .expect("masks fit");
            let all = trees.iter().all(|tree| {
                greedy_tree_embed(&core, tree)
                    .and_then(|e| e.validate(tree, &family, &FreenessMode::RankPreserving))
                    .is_ok()
            });
            if all {
                ok += 1;
            }
        }
        b.equal(
            format!("t={t}"),
            "average degree > 2(t-2) gives a nonempty (t-1)-core into which every height-2 tree on t vertices embeds greedily",
            format!("{graphs}/{graphs}"),
            format!("{ok}/{graphs}"),
        );
    }
}

fn oracle_la(b: &mut Builder, max_n: u32) {
    if max_n < 4 {
        return;
    }
    let cases: [(&str, Vec<Poset>); 3] = [
        ("chain(2)", vec![chain(2).expect("valid")]),
        ("Y_{1,2}+Y'_{1,2}", vec![y(1, 2).expect("valid"), y_prime(1, 2).expect("valid")]),
        ("Y_{2,2}+Y'_{2,2}", vec![y(2, 2).expect("valid"), y_prime(2, 2).expect("valid")]),
    ];
    for (name, forbidden) in &cases {
        let mut values = Vec::new();
        for mode in [FreenessMode::Weak, FreenessMode::RankPreserving] {
            let expected = match exhaustive_la(4, forbidden, &mode) {
                Ok((v, _)) => v.to_string(),
                Err(e) => e.to_string(),
            };
            let actual = exact_value(4, forbidden, &mode);
            values.push(actual.parse::<usize>().ok());
            b.equal(
                format!("{name}/{mode}"),
                "exact search equals the maximum over all 2^16 families of 2^[4]",
                expected,
                actual,
            );
        }
        if let [Some(weak), Some(rp)] = values[..] {
            b.check(
                format!("{name}/monotone"),
                "weak-free optimum is at most the rank-preserving-free optimum",
                format!("<= {rp}"),
                weak,
                weak <= rp,
            );
        }
    }
    let forbidden = &cases[2].1;
    let actual = exact_value(4, forbidden, &FreenessMode::RankPreserving);
    let sigma = sigma(4, 2).expect("valid").to_u64().expect("small");
    let passed = actual.parse::<u64>().is_ok_and(|v| v >= sigma);
    b.check(
        "Y_{2,2}+Y'_{2,2}/rank_preserving/sigma",
        "two middle layers are a lower bound",
        format!(">= {sigma}"),
        &actual,
        passed,
    );
    b.equal(
        "Y_{2,2}+Y'_{2,2}/rank_preserving/pinned",
        "regression value",
        PINNED_RP_Y22_N4.to_string(),
        actual,
    );
}

/// A random poset on `1..=max_len` elements: each pair `i < j` of a random
/// labelling is related with probability one half, then closed transitively.
pub fn random_poset(rng: &mut ChaCha8Rng, max_len: usize) -> Poset {
    let len = rng.gen_range(1..=max_len);
    let labels: Vec<String> = (0..len).map(|i| format!("p{i}")).collect();
    let mut covers = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            if rng.gen_bool(0.5) {
                covers.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Poset::from_covers(&labels, &covers).expect("acyclic by construction")
}

/// Weak, induced, rank-preserving, or a random valid coloring.
pub fn random_mode(rng: &mut ChaCha8Rng, poset: &Poset) -> FreenessMode {
    match rng.gen_range(0..4) {
        0 => FreenessMode::Weak,
        1 => FreenessMode::Induced,
        2 => FreenessMode::RankPreserving,
        _ => loop {
            let colors: Vec<usize> = (0..poset.len()).map(|_| rng.gen_range(0..poset.len())).collect();
            let coloring = Coloring::new(colors);
            if coloring.validate(poset).is_ok() {
                break FreenessMode::Colored(coloring);
            }
        },
    }
}

fn oracle_copy(b: &mut Builder) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00C0_B1E5);
    let all: Vec<Mask> = (0..16).collect();
    let trials = 10_000;
    let mut disagreements = 0;
    for _ in 0..trials {
        let poset = random_poset(&mut rng, 4);
        let mode = random_mode(&mut rng, &poset);
        let size = rng.gen_range(0..=8);
        let members: Vec<Mask> = all.choose_multiple(&mut rng, size).copied().collect();
        let family = SetFamily::new(4, members).expect("subsets of [4]");
        let fast = find_copy(&family, &poset, &mode);
        let slow = brute_force_copy(family.members(), &poset, &mode);
        let agree = match (&fast, slow) {
            (Ok(Some(e)), Ok(Some(_))) => e.validate(&poset, &family, &mode).is_ok(),
            (Ok(None), Ok(None)) => true,
            (Err(_), Err(_)) => true,
            _ => false,
        };
        if !agree {
            disagreements += 1;
        }
    }
    b.equal(
        "random-10000",
        "copy detector agrees with the injective-assignment brute force",
        "0 disagreements".to_string(),
        format!("{disagreements} disagreements"),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
        assert_eq!(csv_field("plain"), "plain");
    }

    #[test]
    fn small_suites_pass() {
        let opts = VerifyOptions {
            max_n: 4,
            suites: vec![Suite::Sperner, Suite::F23],
        };
        let report = verify_paper("verify paper", &opts);
        assert!(report.passed(), "{:#?}", report.checks);
        assert_eq!(report.checks.len(), 3 + 4);
        assert_eq!(report.flags.len(), 2);
    }

    #[test]
    fn random_generators_are_seeded() {
        assert_eq!(random_families(4, 5, 1), random_families(4, 5, 1));
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut c = ChaCha8Rng::seed_from_u64(3);
        assert!(random_poset(&mut a, 4).same_order(&random_poset(&mut c, 4)));
    }
}
