//! Instance generators and suites that check the structural results on
//! small cases, with deterministic JSON reports.

pub mod gen;
pub mod par;
pub mod suites;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::quiver::Quiver;
pub use par::Exec;

/// Generator and runner settings shared by every suite.
#[derive(Clone, Debug)]
pub struct Params {
    pub nil: usize,
    pub quiver: Quiver,
    /// Cap on the dimension of each vertex module.
    pub max_dim: usize,
    /// Cap on the number of degrees of a generated complex.
    pub max_window: usize,
    /// Resolution length.
    pub length: usize,
    pub seed: u64,
    /// `None` enumerates exhaustively where feasible; `Some(k)` samples k instances.
    pub random: Option<usize>,
    pub exec: Exec,
    /// Record per-case wall time in the report.
    pub timing: bool,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            nil: 2,
            quiver: Quiver::a2(),
            max_dim: 2,
            max_window: 4,
            length: 4,
            seed: 0,
            random: None,
            exec: Exec::Parallel,
            timing: false,
        }
    }
}

impl Params {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nil": self.nil,
            "quiver": self.quiver.to_json(),
            "max_dim": self.max_dim,
            "max_window": self.max_window,
            "length": self.length,
            "seed": self.seed,
            "random": self.random,
        })
    }
}

/// A failed case with everything needed to re-check it.
#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub case: String,
    pub reason: String,
    pub witness: Value,
}

/// What a single case produced.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub failure: Option<(String, Value)>,
    pub tags: Vec<&'static str>,
}

impl Outcome {
    pub fn pass(tag: &'static str) -> Self {
        Outcome { failure: None, tags: vec![tag] }
    }

    pub fn fail(reason: impl Into<String>, witness: Value) -> Self {
        Outcome { failure: Some((reason.into(), witness)), tags: vec![] }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub base: String,
    pub params: Value,
    /// "exhaustive" or "sampled".
    pub mode: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub tally: BTreeMap<String, usize>,
    /// What a pass does and does not establish.
    pub scope: String,
    pub timing_us: Option<BTreeMap<String, u128>>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| json!({"case": f.case, "reason": f.reason, "witness": f.witness}))
            .collect();
        let mut v = json!({
            "suite": self.suite,
            "base": self.base,
            "params": self.params,
            "mode": self.mode,
            "cases": self.cases,
            "passed": self.passed(),
            "failures": failures,
            "tally": self.tally,
            "scope": self.scope,
        });
        if let Some(t) = &self.timing_us {
            let m: Map<String, Value> = t.iter().map(|(k, v)| (k.clone(), json!(*v as u64))).collect();
            v["timing_us"] = Value::Object(m);
        }
        v
    }
}

/// Evaluates `cases` (possibly concurrently) and assembles a report sorted by case id.
pub(crate) fn run_cases<T: Sync, S: Scalar>(
    suite: &str,
    p: &Params,
    mode: &str,
    scope: &str,
    cases: &[T],
    eval: impl Fn(&T) -> Outcome + Sync + Send,
) -> SuiteReport {
    let width = cases.len().max(1).to_string().len();
    let timed = |c: &T| {
        let t = Instant::now();
        let o = eval(c);
        (o, t.elapsed().as_micros())
    };
    let results = par::map_cases(p.exec, cases, timed);
    let mut failures = Vec::new();
    let mut tally = BTreeMap::new();
    let mut timing = BTreeMap::new();
    for (i, (o, us)) in results.into_iter().enumerate() {
        let id = format!("{i:0width$}");
        for t in o.tags {
            *tally.entry(t.to_string()).or_insert(0) += 1;
        }
        if let Some((reason, witness)) = o.failure {
            failures.push(Failure { case: id.clone(), reason, witness });
        }
        timing.insert(id, us);
    }
    SuiteReport {
        suite: suite.to_string(),
        base: S::field().to_string(),
        params: p.to_json(),
        mode: mode.to_string(),
        cases: cases.len(),
        failures,
        tally,
        scope: scope.to_string(),
        timing_us: p.timing.then_some(timing),
    }
}

pub const SUITES: &[&str] = &[
    "adjunction",
    "eta_criterion",
    "hovey",
    "cw_homotopy",
    "ho_equivalence",
    "psi0_ext",
    "ext_independence",
];

/// Runs a suite by name; a `check_` prefix is accepted.
pub fn run_suite<S: Scalar>(name: &str, p: &Params) -> Result<SuiteReport> {
    let key = name.strip_prefix("check_").unwrap_or(name);
    match key {
        "adjunction" => suites::check_adjunction::<S>(p),
        "eta_criterion" => suites::check_eta_criterion::<S>(p),
        "hovey" => suites::check_hovey::<S>(p),
        "cw_homotopy" => suites::check_cw_homotopy::<S>(p),
        "ho_equivalence" => suites::check_ho_equivalence::<S>(p),
        "psi0_ext" => suites::check_psi0_ext::<S>(p),
        "ext_independence" => suites::check_ext_independence::<S>(p),
        _ => Err(Error::Parse(format!("unknown suite `{name}` (known: {})", SUITES.join(", ")))),
    }
}
