//! Executable checks of the structural facts about KMS numerical ranges,
//! run over a grid of sizes and parameters and collected into a JSON report.

mod checks;

pub use checks::*;

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Version tag written into every report.
pub const SUITE_VERSION: &str = "1.0.0";
/// `|a|` within this of 1 counts as exactly on the unit circle.
pub const UNIT_MODULUS_TOL: f64 = 1e-12;
/// `|a|` within this of 1 (but not within `UNIT_MODULUS_TOL`) is skipped as
/// ill-conditioned.
pub const NEAR_UNIT_TOL: f64 = 1e-6;
/// Largest matrix size accepted in a suite configuration.
pub const MAX_SUITE_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// Check parameters. Absent fields are not part of the check.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Params {
    pub n: Option<usize>,
    pub a: Option<Complex64>,
    pub j: Option<usize>,
    pub m: Option<usize>,
}

impl Params {
    pub fn na(n: usize, a: Complex64) -> Self {
        Self { n: Some(n), a: Some(a), ..Self::default() }
    }

    fn to_map(self) -> BTreeMap<String, Value> {
        let mut map = BTreeMap::new();
        if let Some(n) = self.n {
            map.insert("n".into(), json!(n));
        }
        if let Some(a) = self.a {
            map.insert("a".into(), json!({ "re": a.re, "im": a.im }));
        }
        if let Some(j) = self.j {
            map.insert("j".into(), json!(j));
        }
        if let Some(m) = self.m {
            map.insert("m".into(), json!(m));
        }
        map
    }

    fn sort_key(&self) -> [f64; 5] {
        let a = self.a.unwrap_or_default();
        let f = |v: Option<usize>| v.map_or(-1.0, |x| x as f64);
        [f(self.n), a.re, a.im, f(self.j), f(self.m)]
    }
}

/// Outcome of one check. `discrepancy` is the worst error found, scaled so
/// that the check passes iff `discrepancy <= tolerance`; a violated
/// qualitative condition counts as discrepancy 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub measured: BTreeMap<String, f64>,
    pub discrepancy: f64,
    pub tolerance: f64,
    pub elapsed_s: Option<f64>,
    #[serde(skip)]
    key: [f64; 5],
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Accumulates the measurements of one check.
pub(crate) struct Tally {
    id: &'static str,
    params: Params,
    tolerance: f64,
    measured: BTreeMap<String, f64>,
    worst: f64,
    skipped: bool,
}

impl Tally {
    pub(crate) fn new(id: &'static str, params: Params, tolerance: f64) -> Self {
        Self { id, params, tolerance, measured: BTreeMap::new(), worst: 0.0, skipped: false }
    }

    /// Records a value without judging it.
    pub(crate) fn record(&mut self, name: &str, value: f64) {
        self.measured.insert(name.into(), value);
    }

    /// Records an error that must stay below `tol`.
    pub(crate) fn error(&mut self, name: &str, value: f64, tol: f64) {
        self.record(name, value);
        let scaled = if value.is_finite() { value / tol * self.tolerance } else { f64::INFINITY };
        self.worst = self.worst.max(scaled);
    }

    /// Records a condition that must hold.
    pub(crate) fn require(&mut self, name: &str, ok: bool) {
        self.record(name, if ok { 1.0 } else { 0.0 });
        if !ok {
            self.worst = self.worst.max(1.0);
        }
    }

    pub(crate) fn skip(mut self, reason: &str) -> CheckResult {
        self.skipped = true;
        self.record(reason, 1.0);
        self.finish()
    }

    /// Converts a numerical error raised inside the check into a failure.
    pub(crate) fn fail_with(mut self, err: &Error) -> CheckResult {
        self.measured.insert("error".into(), 1.0);
        self.worst = f64::INFINITY;
        let mut r = self.finish();
        r.measured.insert(format!("error: {err}"), 1.0);
        r
    }

    pub(crate) fn finish(self) -> CheckResult {
        let status = if self.skipped {
            Status::Skip
        } else if self.worst <= self.tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckResult {
            id: self.id.into(),
            params: self.params.to_map(),
            status,
            measured: self.measured,
            discrepancy: if self.skipped { 0.0 } else { self.worst },
            tolerance: self.tolerance,
            elapsed_s: None,
            key: self.params.sort_key(),
        }
    }
}

/// Where `|a|` sits relative to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusClass {
    Zero,
    Unit,
    NearUnit,
    Inside,
    Outside,
}

pub fn modulus_class(a: Complex64) -> ModulusClass {
    let r = a.norm();
    if r == 0.0 {
        ModulusClass::Zero
    } else if (r - 1.0).abs() <= UNIT_MODULUS_TOL {
        ModulusClass::Unit
    } else if (r - 1.0).abs() <= NEAR_UNIT_TOL {
        ModulusClass::NearUnit
    } else if r < 1.0 {
        ModulusClass::Inside
    } else {
        ModulusClass::Outside
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub n_values: Vec<usize>,
    #[serde(serialize_with = "serialize_complex_list")]
    pub a_values: Vec<Complex64>,
    pub grid_m: usize,
    pub seed: u64,
    /// Restrict to these check ids; `None` runs everything.
    pub checks: Option<Vec<String>>,
    /// Record wall-clock time per check. Off by default so that reports are
    /// byte-reproducible.
    pub timing: bool,
}

fn serialize_complex_list<S: serde::Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let list: Vec<Value> = v.iter().map(|a| json!({ "re": a.re, "im": a.im })).collect();
    list.serialize(s)
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let r = |x: f64| Complex64::new(x, 0.0);
        Self {
            n_values: (2..=9).collect(),
            a_values: vec![r(0.3), r(0.5), r(0.9), r(1.0), r(1.2), r(2.0), Complex64::new(1.0, 1.0)],
            grid_m: 360,
            seed: 0,
            checks: None,
            timing: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(&n) = self.n_values.iter().find(|&&n| n == 0 || n > MAX_SUITE_N) {
            return Err(Error::InvalidParameter(format!("n = {n} outside 1..={MAX_SUITE_N}")));
        }
        if self.grid_m < 8 {
            return Err(Error::InvalidParameter(format!("grid of {} directions is too coarse", self.grid_m)));
        }
        if let Some(a) = self.a_values.iter().find(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidParameter(format!("parameter {a} is not finite")));
        }
        if let Some(ids) = &self.checks {
            if let Some(bad) = ids.iter().find(|id| !CHECK_IDS.contains(&id.as_str())) {
                return Err(Error::InvalidParameter(format!("unknown check id {bad}")));
            }
        }
        Ok(())
    }

    fn wants(&self, id: &str) -> bool {
        self.checks.as_ref().is_none_or(|ids| ids.iter().any(|x| x == id))
    }
}

type Job = Box<dyn Fn() -> CheckResult + Send + Sync>;

fn plan(cfg: &SuiteConfig) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    let m = cfg.grid_m;
    let seed = cfg.seed;
    let mut add = |id: &str, job: Job| {
        if cfg.wants(id) {
            jobs.push(job);
        }
    };
    for &n in &cfg.n_values {
        add("jordan_disc", Box::new(move || check_jordan_disc(n, m)));
        if n == 3 {
            add("disjoint_submatrix_boundaries", Box::new(move || check_disjoint_submatrix_boundaries(m)));
        }
        for &a in &cfg.a_values {
            add("unitary_phase", Box::new(move || check_unitary_phase(n, a)));
            add("similarity", Box::new(move || check_similarity(n, a)));
            add("conjugate_symmetry", Box::new(move || check_conjugate_symmetry(n, a, m)));
            add("nilpotent", Box::new(move || check_nilpotent(n, a, m)));
            add("monotone_containment", Box::new(move || check_monotone_containment(n, a, m)));
            add("class_map", Box::new(move || check_class_map(n, a)));
            add("top_multiplicity", Box::new(move || check_top_multiplicity(n, a, m)));
            add("circle_touch", Box::new(move || check_circle_touch(n, a, m)));
            add("segment_and_disc", Box::new(move || check_segment_and_disc(n, a, m)));
            if n == 4 {
                add("quartic_constant_term", Box::new(move || check_quartic_constant_term(n, a)));
            }
            add("kipp_pure_power", Box::new(move || check_kipp_pure_power(n, a)));
            add("det_identity", Box::new(move || check_det_identity(n, a)));
            add("span_rank", Box::new(move || check_span_rank(n, a, m)));
            add("cyclic_boundary_vectors", Box::new(move || check_cyclic_boundary_vectors(n, a)));
            add("invariant_block_interior", Box::new(move || check_invariant_block_interior(n, a, m)));
            add("poisson_spectrum", Box::new(move || check_poisson_spectrum(n, a)));
            if n % 2 == 1 {
                add("middle_deletion_minimum", Box::new(move || check_middle_deletion_minimum(n, a)));
            }
            for size in compression_sizes(n) {
                add("compression_strict", Box::new(move || check_compression_strict(n, a, size, seed, m)));
            }
            for j in 1..=n {
                add("middle_deletion_touch", Box::new(move || check_middle_deletion_touch(n, a, j, m)));
                add("standard_inverse_touch", Box::new(move || check_standard_inverse_touch(n, a, j, m)));
            }
        }
    }
    jobs
}

/// Compression sizes tried for an `n`-by-`n` matrix: `1` and `n - 1`.
fn compression_sizes(n: usize) -> Vec<usize> {
    if n <= 2 {
        vec![1]
    } else {
        vec![1, n - 1]
    }
}

/// Runs every selected check, in parallel, and returns the results ordered
/// by id and then by parameters.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let jobs = plan(cfg);
    let timing = cfg.timing;
    let mut results: Vec<CheckResult> = jobs
        .par_iter()
        .map(|job| {
            let start = Instant::now();
            let mut r = job();
            if timing {
                r.elapsed_s = Some(start.elapsed().as_secs_f64());
            }
            r
        })
        .collect();
    results.sort_by(|x, y| {
        x.id.cmp(&y.id).then_with(|| {
            x.key
                .iter()
                .zip(&y.key)
                .map(|(p, q)| p.total_cmp(q))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    results
}

/// The JSON report: `{"suite_version", "config", "results"}`.
pub fn report_json(cfg: &SuiteConfig, results: &[CheckResult]) -> Value {
    json!({
        "suite_version": SUITE_VERSION,
        "config": cfg,
        "results": results,
    })
}

/// Pass/fail/skip counts.
pub fn summarize(results: &[CheckResult]) -> (usize, usize, usize) {
    results.iter().fold((0, 0, 0), |(p, f, s), r| match r.status {
        Status::Pass => (p + 1, f, s),
        Status::Fail => (p, f + 1, s),
        Status::Skip => (p, f, s + 1),
    })
}
