//! Corpus evaluation: every solver on every instance, plus the metrics the
//! competitive analysis is stated in.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::coverage::{default_tolerance, sampled_unseen, verify_watchman, SAMPLE_COUNT};
use super::generate::{gen_random_convex, gen_thin_triangle, random_start, Instance};
use crate::error::Result;
use crate::exec::{self, Execution};
use crate::geometry::Point;
use crate::offline::{ell_tau, ofp, osp};
use crate::online::{competitive_bound, onpa_on_polygon, Phase};

fn default_radius() -> f64 {
    1.0
}

fn default_annulus() -> (f64, f64) {
    (1.1, 5.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSpec {
    /// Random polygons.
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    /// Additional thin triangles with rotated copies and varying base.
    #[serde(default)]
    pub thin_triangles: usize,
    #[serde(default = "default_radius")]
    pub radius: f64,
    /// Start placement, in circumradii around the centroid.
    #[serde(default = "default_annulus")]
    pub annulus: (f64, f64),
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self {
            count: 1000,
            n_min: 3,
            n_max: 12,
            seed: 2024,
            thin_triangles: 100,
            radius: 1.0,
            annulus: default_annulus(),
        }
    }
}

impl CorpusSpec {
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.n_min < 3 || self.n_min > self.n_max || self.n_max > crate::geometry::MAX_VERTICES {
            return Err(format!("need 3 <= n_min <= n_max <= {}", crate::geometry::MAX_VERTICES));
        }
        if !self.radius.is_finite() || self.radius <= 0.0 {
            return Err("radius must be positive".into());
        }
        let (a, b) = self.annulus;
        if !(a >= 1.0 && b > a && b.is_finite()) {
            return Err("annulus must satisfy 1 <= inner < outer".into());
        }
        Ok(())
    }

    /// The corpus, in label order.
    pub fn instances(&self) -> Result<Vec<Instance>> {
        let mut out = Vec::with_capacity(self.count + self.thin_triangles);
        for k in 0..self.count {
            let seed = instance_seed(self.seed, k as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(self.n_min..=self.n_max);
            let poly = gen_random_convex(n, seed, self.radius)?;
            let s = random_start(&poly, &mut rng, self.annulus.0, self.annulus.1);
            out.push(Instance::new(poly, s, format!("rand-{k:05}"), Some(seed))?);
        }
        for k in 0..self.thin_triangles {
            let seed = instance_seed(self.seed ^ 0x7417, k as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let eps = 10f64.powf(rng.gen_range(-3.0..-0.7));
            let rot = rng.gen_range(0.0..TAU);
            let base = gen_thin_triangle(1.0, eps)?;
            let poly = base.polygon.map(|p| p.rotate(rot))?;
            out.push(Instance::new(poly, base.start.rotate(rot), format!("thin-{k:03}"), Some(seed))?);
        }
        Ok(out)
    }
}

fn instance_seed(seed: u64, k: u64) -> u64 {
    let mut z = seed ^ k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub label: String,
    pub onpa_length: f64,
    pub osp_length: f64,
    pub ofp_length: f64,
    pub ell_tau: f64,
    pub ratio_vs_osp: f64,
    pub ratio_vs_ell_tau: f64,
    pub phase_i: f64,
    pub phase_ii: f64,
    pub phase_iii: f64,
    pub coverage_ok: bool,
    /// `ell_tau <= osp <= 3 ell_tau`.
    pub sandwich_ok: bool,
    /// Empty unless a solver failed on this instance.
    pub error: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub max_ratio: f64,
    pub mean_ratio: f64,
    pub coverage_failures: usize,
    pub sandwich_violations: usize,
    pub errors: usize,
    pub max_phase_i_over_ell_tau: f64,
    pub max_phase_ii_iii_over_ell_tau: f64,
    pub bound: f64,
    pub bound_ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult {
    pub reports: Vec<RatioReport>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchOptions {
    pub exec: Execution,
    /// Multiplies every online length; anything but 1 deliberately corrupts
    /// the results (used to exercise the failure path).
    pub fault_scale: f64,
}

impl Default for BatchOptions {
    fn default() -> Self {
        Self { exec: Execution::default(), fault_scale: 1.0 }
    }
}

/// Slack on the sandwich check, relative to `ell_tau`.
const SANDWICH_SLACK: f64 = 1e-9;

/// Runs ONPA, OSP, OFP and `ell_tau` on one instance. Failures are
/// recorded in the report rather than propagated.
pub fn evaluate(inst: &Instance, fault_scale: f64) -> RatioReport {
    let mut r = RatioReport {
        label: inst.label.clone(),
        onpa_length: f64::NAN,
        osp_length: f64::NAN,
        ofp_length: f64::NAN,
        ell_tau: f64::NAN,
        ratio_vs_osp: f64::NAN,
        ratio_vs_ell_tau: f64::NAN,
        phase_i: f64::NAN,
        phase_ii: f64::NAN,
        phase_iii: f64::NAN,
        coverage_ok: false,
        sandwich_ok: false,
        error: String::new(),
    };
    if let Err(e) = fill(inst, fault_scale, &mut r) {
        r.error = e.to_string();
    }
    r
}

fn fill(inst: &Instance, fault_scale: f64, r: &mut RatioReport) -> Result<()> {
    let poly = &inst.polygon;
    let s: Point = inst.start;
    let tol = default_tolerance(poly);
    let off = osp(s, poly)?;
    let free = ofp(poly);
    let tau = ell_tau(s, poly)?;
    r.osp_length = off.length();
    r.ofp_length = free.length();
    r.ell_tau = tau;
    r.sandwich_ok = tau <= r.osp_length * (1.0 + SANDWICH_SLACK) && r.osp_length <= 3.0 * tau * (1.0 + SANDWICH_SLACK);
    let trace = onpa_on_polygon(s, poly)?;
    r.onpa_length = trace.length() * fault_scale;
    r.phase_i = trace.phase_length(Phase::I) * fault_scale;
    r.phase_ii = trace.phase_length(Phase::II) * fault_scale;
    r.phase_iii = trace.phase_length(Phase::III) * fault_scale;
    if r.osp_length > 0.0 {
        r.ratio_vs_osp = r.onpa_length / r.osp_length;
    }
    if tau > 0.0 {
        r.ratio_vs_ell_tau = r.onpa_length / tau;
    }
    let seed = inst.seed.unwrap_or(0);
    r.coverage_ok = trace.terminated
        && trace.path.avoids(poly)
        && verify_watchman(&trace.path, poly, tol).ok
        && sampled_unseen(&trace.path, poly, SAMPLE_COUNT, seed) == 0
        && verify_watchman(&off.path, poly, tol).ok
        && verify_watchman(&free.path, poly, tol).ok;
    Ok(())
}

pub fn summarize(reports: &[RatioReport]) -> Summary {
    let bound = competitive_bound();
    let ok: Vec<&RatioReport> = reports.iter().filter(|r| r.error.is_empty()).collect();
    let max = |f: &dyn Fn(&RatioReport) -> f64| ok.iter().map(|r| f(r)).filter(|v| v.is_finite()).fold(0.0, f64::max);
    let ratios: Vec<f64> = ok.iter().map(|r| r.ratio_vs_osp).filter(|v| v.is_finite()).collect();
    let mean_ratio = if ratios.is_empty() { 0.0 } else { ratios.iter().sum::<f64>() / ratios.len() as f64 };
    let max_ratio = max(&|r| r.ratio_vs_osp);
    let coverage_failures = reports.iter().filter(|r| !r.coverage_ok).count();
    let sandwich_violations = ok.iter().filter(|r| !r.sandwich_ok).count();
    let errors = reports.len() - ok.len();
    Summary {
        instances: reports.len(),
        max_ratio,
        mean_ratio,
        coverage_failures,
        sandwich_violations,
        errors,
        max_phase_i_over_ell_tau: max(&|r| r.phase_i / r.ell_tau),
        max_phase_ii_iii_over_ell_tau: max(&|r| (r.phase_ii + r.phase_iii) / r.ell_tau),
        bound,
        bound_ok: coverage_failures == 0 && errors == 0 && max_ratio <= bound,
    }
}

/// Evaluates a corpus. Instances run independently (in parallel unless
/// asked otherwise); reports come back sorted by label.
pub fn batch_eval(spec: &CorpusSpec, opts: &BatchOptions) -> Result<BatchResult> {
    let instances = spec.instances()?;
    Ok(eval_instances(&instances, opts))
}

pub fn eval_instances(instances: &[Instance], opts: &BatchOptions) -> BatchResult {
    let mut reports = exec::map(instances, opts.exec, |inst| evaluate(inst, opts.fault_scale));
    reports.sort_by(|a, b| a.label.cmp(&b.label));
    let summary = summarize(&reports);
    BatchResult { reports, summary }
}

/// CSV with one row per instance.
pub fn write_csv<W: std::io::Write>(reports: &[RatioReport], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(r).map_err(std::io::Error::other)?;
    }
    if reports.is_empty() {
        w.write_record(CSV_HEADER).map_err(std::io::Error::other)?;
    }
    w.flush()
}

const CSV_HEADER: [&str; 13] = [
    "label",
    "onpa_length",
    "osp_length",
    "ofp_length",
    "ell_tau",
    "ratio_vs_osp",
    "ratio_vs_ell_tau",
    "phase_i",
    "phase_ii",
    "phase_iii",
    "coverage_ok",
    "sandwich_ok",
    "error",
];

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CorpusSpec {
        CorpusSpec { count: 12, n_min: 3, n_max: 8, seed: 9, thin_triangles: 4, ..CorpusSpec::default() }
    }

    #[test]
    fn small_corpus_is_clean_and_deterministic() {
        let a = batch_eval(&small(), &BatchOptions::default()).unwrap();
        assert_eq!(a.reports.len(), 16);
        assert!(a.summary.bound_ok, "{:?}", a.summary);
        assert_eq!(a.summary.sandwich_violations, 0);
        let seq = BatchOptions { exec: Execution::Sequential, ..BatchOptions::default() };
        let b = batch_eval(&small(), &seq).unwrap();
        let (mut ca, mut cb) = (Vec::new(), Vec::new());
        write_csv(&a.reports, &mut ca).unwrap();
        write_csv(&b.reports, &mut cb).unwrap();
        assert_eq!(ca, cb);
    }

    #[test]
    fn empty_corpus() {
        let spec = CorpusSpec { count: 0, thin_triangles: 0, ..CorpusSpec::default() };
        let r = batch_eval(&spec, &BatchOptions::default()).unwrap();
        assert!(r.reports.is_empty());
        assert_eq!(r.summary.max_ratio, 0.0);
        assert!(r.summary.bound_ok);
        let mut out = Vec::new();
        write_csv(&r.reports, &mut out).unwrap();
        assert!(String::from_utf8(out).unwrap().starts_with("label,onpa_length"));
    }

    #[test]
    fn fault_injection_trips_the_bound() {
        let r = batch_eval(&small(), &BatchOptions { fault_scale: 1e3, ..BatchOptions::default() }).unwrap();
        assert!(!r.summary.bound_ok);
    }
}
