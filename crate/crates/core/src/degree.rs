//! Degree sequences of lattice maps by specialization along a generic line.
//!
//! Every initial vertex is put on a random line `a_i + t·b_i` over `F_p`, the
//! rule is iterated on triples of polynomials in `t` with the common factor
//! of each triple removed after every step, and the `t`-degree of a central
//! vertex is recorded. Unlucky specializations can only lower the degree, so
//! several primes and trials are compared and disagreements are reported.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{reduce_triple, Fp, UniPoly};
use crate::geometry::ProjPoint;
use crate::lattice::{apply_rule_each, Indexing, LatticeError, LocalRule, PolygonWindow};
use crate::sample::{random_fp, random_fp_triple, trial_rng};

/// Degenerate specializations are re-drawn at most this many times.
pub const RETRY_BUDGET: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DegreeError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("specialization kept degenerating (prime {prime}, trial {trial}) after {RETRY_BUDGET} retries")]
    RetriesExhausted { prime: u64, trial: usize },
    #[error("need at least 3 consensus degrees, have {0}")]
    TooShort(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Shape of the window the degrees are measured on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowShape {
    /// An interval just long enough for one vertex to survive `m_max` steps.
    Interval,
    /// A closed `n`-gon.
    Cyclic(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeConfig {
    pub m_max: usize,
    pub primes: Vec<u64>,
    pub trials: usize,
    pub seed: u64,
    pub shape: WindowShape,
}

impl DegreeConfig {
    pub fn new(m_max: usize, primes: &[u64], trials: usize, seed: u64) -> Self {
        Self {
            m_max,
            primes: primes.to_vec(),
            trials,
            seed,
            shape: WindowShape::Interval,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub m: usize,
    pub prime: u64,
    pub trial: usize,
    pub degree: usize,
    /// Degree of the common factor removed from the measured vertex at step m.
    pub removed_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub m: usize,
    /// Observed degree and how many runs produced it.
    pub counts: Vec<(usize, usize)>,
    /// Resolved when every dissenting value is below the modal one. An
    /// unlucky specialization can only lower a degree, so a dissent above
    /// the mode cannot be explained that way.
    pub resolved: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeSequence {
    pub map: String,
    pub config: DegreeConfig,
    pub records: Vec<DegreeRecord>,
    /// `consensus[m - 1]` is the modal degree of `T^m`.
    pub consensus: Vec<usize>,
    pub disagreements: Vec<Disagreement>,
}

impl DegreeSequence {
    pub fn unresolved(&self) -> usize {
        self.disagreements.iter().filter(|d| !d.resolved).count()
    }
}

fn generic_line_point(rng: &mut impl rand::Rng, p: u64) -> ProjPoint<UniPoly<Fp>> {
    let a = random_fp_triple(rng, p);
    let b = random_fp_triple(rng, p);
    ProjPoint(std::array::from_fn(|k| UniPoly::linear(a[k], b[k])))
}

fn constant_point(rng: &mut impl rand::Rng, p: u64) -> ProjPoint<UniPoly<Fp>> {
    ProjPoint(std::array::from_fn(|_| {
        UniPoly::constant(random_fp(rng, p))
    }))
}

/// A reduced window and the degree removed at each vertex.
type ReducedStep = (PolygonWindow<UniPoly<Fp>>, Vec<usize>);

/// One step with per-vertex gcd reduction; `None` on any degeneracy.
fn step(
    rule: &LocalRule,
    w: &PolygonWindow<UniPoly<Fp>>,
) -> Result<Option<ReducedStep>, LatticeError> {
    let (out, raw) = apply_rule_each(rule, w)?;
    let mut vertices = Vec::with_capacity(raw.len());
    let mut removed = Vec::with_capacity(raw.len());
    for r in raw {
        let Ok([x, y, z]) = r else { return Ok(None) };
        let Ok(red) = reduce_triple(x, y, z) else {
            return Ok(None);
        };
        removed.push(red.removed_degree);
        vertices.push(ProjPoint(red.polys));
    }
    Ok(Some((PolygonWindow::new(out, vertices)?, removed)))
}

fn tracked_degree(p: &ProjPoint<UniPoly<Fp>>) -> usize {
    p.0.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
}

/// Runs `m_max` steps from the given initial window and returns
/// `(degree, removed_degree)` of the central vertex after each step.
fn run_orbit(
    rule: &LocalRule,
    mut w: PolygonWindow<UniPoly<Fp>>,
    m_max: usize,
) -> Result<Option<Vec<(usize, usize)>>, LatticeError> {
    let mut out = Vec::with_capacity(m_max);
    for _ in 0..m_max {
        let Some((next, removed)) = step(rule, &w)? else {
            return Ok(None);
        };
        let mid = next.len() / 2;
        out.push((tracked_degree(&next.vertices()[mid]), removed[mid]));
        w = next;
    }
    Ok(Some(out))
}

fn initial_indexing(rule: &LocalRule, cfg: &DegreeConfig) -> Indexing {
    match cfg.shape {
        WindowShape::Interval => Indexing::Interval(0, cfg.m_max as i64 * rule.width()),
        WindowShape::Cyclic(n) => Indexing::Cyclic(n),
    }
}

fn one_trial(
    rule: &LocalRule,
    cfg: &DegreeConfig,
    prime: u64,
    trial: usize,
) -> Result<Vec<DegreeRecord>, DegreeError> {
    let indexing = initial_indexing(rule, cfg);
    for attempt in 0..=RETRY_BUDGET {
        let stream = (trial as u64) << 8 | attempt as u64;
        let mut rng = trial_rng(cfg.seed, prime, stream);
        let pts = (0..indexing.len())
            .map(|_| generic_line_point(&mut rng, prime))
            .collect();
        let w = PolygonWindow::new(indexing, pts)?;
        if let Some(orbit) = run_orbit(rule, w, cfg.m_max)? {
            return Ok(orbit
                .into_iter()
                .enumerate()
                .map(|(k, (degree, removed_degree))| DegreeRecord {
                    m: k + 1,
                    prime,
                    trial,
                    degree,
                    removed_degree,
                })
                .collect());
        }
    }
    Err(DegreeError::RetriesExhausted { prime, trial })
}

fn validate(rule: &LocalRule, cfg: &DegreeConfig) -> Result<(), DegreeError> {
    if cfg.m_max == 0 {
        return Err(DegreeError::Config("m_max must be at least 1".into()));
    }
    if cfg.primes.is_empty() || cfg.trials == 0 {
        return Err(DegreeError::Config(
            "need at least one prime and one trial".into(),
        ));
    }
    for &p in &cfg.primes {
        if !crate::field::is_prime(p) || p == 2 || p >= 1 << 32 {
            return Err(DegreeError::Config(format!(
                "{p} is not an odd prime below 2^32"
            )));
        }
    }
    rule.output_indexing(initial_indexing(rule, cfg))?;
    Ok(())
}

/// Measures `deg T^m` for `m = 1..=m_max` over every prime and trial.
pub fn degree_sequence(
    rule: &LocalRule,
    cfg: &DegreeConfig,
) -> Result<DegreeSequence, DegreeError> {
    validate(rule, cfg)?;
    let jobs: Vec<(u64, usize)> = cfg
        .primes
        .iter()
        .flat_map(|&p| (0..cfg.trials).map(move |t| (p, t)))
        .collect();
    let results: Vec<Result<Vec<DegreeRecord>, DegreeError>> = jobs
        .par_iter()
        .map(|&(p, t)| one_trial(rule, cfg, p, t))
        .collect();
    let mut records = Vec::new();
    for r in results {
        records.extend(r?);
    }
    let (consensus, disagreements) = consensus_of(&records, cfg.m_max);
    Ok(DegreeSequence {
        map: rule.to_string(),
        config: cfg.clone(),
        records,
        consensus,
        disagreements,
    })
}

fn consensus_of(records: &[DegreeRecord], m_max: usize) -> (Vec<usize>, Vec<Disagreement>) {
    let mut consensus = Vec::with_capacity(m_max);
    let mut disagreements = Vec::new();
    for m in 1..=m_max {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for r in records.iter().filter(|r| r.m == m) {
            *counts.entry(r.degree).or_default() += 1;
        }
        // Modal value; ties go to the larger degree.
        let (&mode, _) = counts
            .iter()
            .max_by_key(|(d, c)| (**c, **d))
            .expect("at least one record per m");
        consensus.push(mode);
        if counts.len() > 1 {
            let resolved = counts.keys().all(|&d| d <= mode);
            disagreements.push(Disagreement {
                m,
                counts: counts.into_iter().collect(),
                resolved,
            });
        }
    }
    (consensus, disagreements)
}

/// Per-slot degrees of `T^m` at output vertex 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multidegree {
    pub m: usize,
    /// `(offset, degree)` for each offset in the `m`-fold sumset of the
    /// neighborhood, ascending.
    pub per_slot: Vec<(i64, usize)>,
    pub total: usize,
}

/// Offsets that output vertex 0 of `T^m` can depend on.
pub fn dependency_cone(rule: &LocalRule, m: usize) -> Vec<i64> {
    let s = rule.neighborhood();
    let mut cone = vec![0i64];
    for _ in 0..m {
        let mut next: Vec<i64> = cone
            .iter()
            .flat_map(|&c| s.iter().map(move |&o| c + o))
            .collect();
        next.sort_unstable();
        next.dedup();
        cone = next;
    }
    cone
}

/// Specializes one initial slot at a time along a line (all others fixed at
/// random constant points) and records the `t`-degree of vertex 0 of `T^m`.
/// The local formula is multihomogeneous, so the per-slot degrees add up to
/// the total degree.
pub fn multidegree_oracle(
    rule: &LocalRule,
    m: usize,
    prime: u64,
    seed: u64,
) -> Result<Multidegree, DegreeError> {
    if m == 0 {
        return Err(DegreeError::Config("m must be at least 1".into()));
    }
    let (smin, smax) = rule.span();
    let lo = m as i64 * smin;
    let hi = m as i64 * smax;
    let cone = dependency_cone(rule, m);
    let mut per_slot = Vec::with_capacity(cone.len());
    for (slot_id, &slot) in cone.iter().enumerate() {
        let mut found = None;
        for attempt in 0..=RETRY_BUDGET {
            let mut rng = trial_rng(
                seed ^ 0x6d75_6c74,
                prime,
                (slot_id as u64) << 8 | attempt as u64,
            );
            let pts = (lo..=hi)
                .map(|i| {
                    if i == slot {
                        generic_line_point(&mut rng, prime)
                    } else {
                        constant_point(&mut rng, prime)
                    }
                })
                .collect();
            let w = PolygonWindow::new(Indexing::Interval(lo, hi), pts)?;
            if let Some(orbit) = run_orbit(rule, w, m)? {
                found = Some(orbit[m - 1].0);
                break;
            }
        }
        let d = found.ok_or(DegreeError::RetriesExhausted {
            prime,
            trial: slot_id,
        })?;
        per_slot.push((slot, d));
    }
    let total = per_slot.iter().map(|&(_, d)| d).sum();
    Ok(Multidegree { m, per_slot, total })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthLabel {
    ExponentialLike,
    PolynomialLike,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DdEstimate {
    /// `deg_m^{1/m}` for m = 1, 2, ...
    pub root_estimates: Vec<f64>,
    /// `deg_{m+1} / deg_m` for m = 1, 2, ...
    pub ratio_estimates: Vec<f64>,
    pub label: GrowthLabel,
    /// Residual sums of squares of `log deg` against `m` and `log m`.
    pub exponential_rss: f64,
    pub polynomial_rss: f64,
    pub warnings: Vec<String>,
}

fn least_squares_rss(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    xs.iter()
        .zip(ys)
        .map(|(x, y)| (y - my - slope * (x - mx)).powi(2))
        .sum()
}

/// Root and ratio estimates of the growth rate plus a growth-type label.
/// These are finite-`m` estimates only.
pub fn estimate_dd(degrees: &[usize], warnings: Vec<String>) -> Result<DdEstimate, DegreeError> {
    if degrees.len() < 3 {
        return Err(DegreeError::TooShort(degrees.len()));
    }
    let d: Vec<f64> = degrees.iter().map(|&x| x as f64).collect();
    let root_estimates = d
        .iter()
        .enumerate()
        .map(|(k, x)| x.powf(1.0 / (k as f64 + 1.0)))
        .collect();
    let ratio_estimates = d.windows(2).map(|w| w[1] / w[0]).collect();
    let logd: Vec<f64> = d.iter().map(|x| x.max(1.0).ln()).collect();
    let ms: Vec<f64> = (1..=d.len()).map(|m| m as f64).collect();
    let logm: Vec<f64> = ms.iter().map(|m| m.ln()).collect();
    let exponential_rss = least_squares_rss(&ms, &logd);
    let polynomial_rss = least_squares_rss(&logm, &logd);
    let label = if exponential_rss < polynomial_rss {
        GrowthLabel::ExponentialLike
    } else {
        GrowthLabel::PolynomialLike
    };
    Ok(DdEstimate {
        root_estimates,
        ratio_estimates,
        label,
        exponential_rss,
        polynomial_rss,
        warnings,
    })
}

/// [`estimate_dd`] on the consensus of a measured sequence, with its
/// disagreements carried along as warnings.
pub fn estimate_dd_from(seq: &DegreeSequence) -> Result<DdEstimate, DegreeError> {
    let warnings = seq
        .disagreements
        .iter()
        .map(|d| {
            format!(
                "m = {}: degrees disagree across runs {:?} ({})",
                d.m,
                d.counts,
                if d.resolved {
                    "resolved to the mode"
                } else {
                    "unresolved"
                }
            )
        })
        .collect();
    estimate_dd(&seq.consensus, warnings)
}
