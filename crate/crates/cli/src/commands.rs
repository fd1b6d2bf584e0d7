use std::fmt::Write as _;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use skew_pentagram::degree::{
    degree_sequence, estimate_dd, estimate_dd_from, multidegree_oracle, DegreeConfig,
    DegreeSequence, WindowShape,
};
use skew_pentagram::dskp::{all_residuals, generic_orbit, menelaus_orbit_check, EqualLengthOrbit};
use skew_pentagram::field::FieldElem;
use skew_pentagram::geometry::{
    general_linear_position, menelaus_configuration, menelaus_residual_coord, ProjPoint,
};
use skew_pentagram::heights::{random_polygon, random_symmetric_octagon, seeded_height_run};
use skew_pentagram::lattice::{
    apply_rule, dominance_test, iterate_rule, rule_degree, window_from_json, window_to_json,
    LocalRule, PolygonWindow, SkewParams,
};
use skew_pentagram::sample::trial_rng;

use crate::args::*;
use crate::report::{Check, Report};
use crate::{verify, Outcome, UsageError};

fn json_outcome(report: &Report) -> Outcome {
    Outcome {
        text: report.to_json(),
        passed: report.pass,
        diagnostics: None,
    }
}

/// CSV output; a failed report goes to the diagnostics stream.
fn csv_outcome(text: String, report: &Report) -> Outcome {
    Outcome {
        text,
        passed: report.pass,
        diagnostics: (!report.pass).then(|| report.to_json()),
    }
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn iterate(args: &IterateArgs) -> Result<Outcome> {
    let raw = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let value: Value = serde_json::from_str(&raw)
        .map_err(|e| UsageError(format!("{}: {e}", args.input.display())))?;
    let w = window_from_json(&value, args.field.0).map_err(|e| UsageError(e.to_string()))?;
    let out = iterate_rule(&args.map.0, &w, args.steps)?;
    let mut text = serde_json::to_string_pretty(&window_to_json(&out))?;
    text.push('\n');
    Ok(Outcome {
        text,
        passed: true,
        diagnostics: None,
    })
}

fn degree_config(run: &DegreeRunArgs) -> DegreeConfig {
    let mut cfg = DegreeConfig::new(run.mmax, &run.primes.0, run.trials, run.seed);
    if let Some(n) = run.cyclic {
        cfg.shape = WindowShape::Cyclic(n);
    }
    cfg
}

fn measure(run: &DegreeRunArgs) -> Result<DegreeSequence> {
    degree_sequence(&run.map.0, &degree_config(run)).map_err(|e| match e {
        skew_pentagram::degree::DegreeError::Config(msg) => UsageError(msg).into(),
        skew_pentagram::degree::DegreeError::Lattice(l) => UsageError(l.to_string()).into(),
        other => other.into(),
    })
}

pub const DEGREE_ABOUT: &str = "Degrees of the iterates of a local rule, measured by restricting \
to a random line over several primes; the local rule's own degree bounds the first iterate, \
and the sequence is submultiplicative";

/// Properties every measured degree sequence must have.
pub fn degree_checks(rule: &LocalRule, seq: &DegreeSequence) -> Vec<Check> {
    let c = &seq.consensus;
    let d = rule_degree(rule);
    let mut checks = vec![Check::new(
        "first-iterate",
        "the measured degree at m = 1 equals the degree of the local rule",
        c.first() == Some(&d),
        json!({ "measured": c.first(), "rule_degree": d }),
    )];
    let over: Vec<usize> = (1..=c.len())
        .filter(|&m| (c[m - 1] as f64) > (d as f64).powi(m as i32))
        .collect();
    checks.push(Check::new(
        "power-bound",
        "deg T^m is at most (deg T)^m",
        over.is_empty(),
        json!({ "violations_at_m": over }),
    ));
    let mut sub = Vec::new();
    for i in 1..=c.len() {
        for j in i..=c.len() - i {
            if c[i + j - 1] > c[i - 1] * c[j - 1] {
                sub.push((i, j));
            }
        }
    }
    checks.push(Check::new(
        "submultiplicative",
        "deg T^(i+j) is at most deg T^i times deg T^j",
        sub.is_empty(),
        json!({ "violations": sub }),
    ));
    checks.push(Check::new(
        "consensus",
        "runs at different primes and trials agree, or every dissent lies below the mode",
        seq.unresolved() == 0,
        serde_json::to_value(&seq.disagreements).expect("serializable"),
    ));
    if seq.config.shape == WindowShape::Interval {
        let mut rows = Vec::new();
        let mut pass = true;
        for m in 1..=c.len().min(2) {
            // An unlucky specialization only lowers a degree, so the
            // largest value over the primes is the one to compare.
            let mut best = 0;
            for &prime in &seq.config.primes {
                match multidegree_oracle(rule, m, prime, seq.config.seed) {
                    Ok(md) => best = best.max(md.total),
                    Err(e) => {
                        checks.push(Check::error("oracle", "multidegree oracle", e));
                        return checks;
                    }
                }
            }
            pass &= best == c[m - 1];
            rows.push(json!({ "m": m, "oracle": best, "measured": c[m - 1] }));
        }
        checks.push(Check::new(
            "oracle",
            "for m <= 2 the per-slot degrees add up to the measured degree",
            pass,
            json!(rows),
        ));
    }
    checks
}

fn degree_report(run: &DegreeRunArgs, seq: &DegreeSequence) -> Report {
    Report::new(
        "degseq",
        DEGREE_ABOUT,
        serde_json::to_value(&seq.config).expect("serializable"),
        degree_checks(&run.map.0, seq),
    )
}

#[derive(Serialize)]
struct DegreeRow<'a> {
    map: &'a str,
    m: usize,
    prime: u64,
    trial: usize,
    degree: usize,
    removed_degree: usize,
}

pub fn degseq(args: &DegseqArgs) -> Result<Outcome> {
    let seq = measure(&args.run)?;
    let report = degree_report(&args.run, &seq);
    match args.format {
        Format::Json => Ok(json_outcome(&report.with_data(json!({
            "map": seq.map,
            "consensus": seq.consensus,
        })))),
        Format::Csv => {
            let map = args.run.map.to_string();
            let rows: Vec<DegreeRow> = seq
                .records
                .iter()
                .map(|r| DegreeRow {
                    map: &map,
                    m: r.m,
                    prime: r.prime,
                    trial: r.trial,
                    degree: r.degree,
                    removed_degree: r.removed_degree,
                })
                .collect();
            Ok(csv_outcome(to_csv(&rows)?, &report))
        }
    }
}

pub fn dd_estimate(args: &DdEstimateArgs) -> Result<Outcome> {
    let (degrees, estimate, mut checks, config) = match (&args.degrees, args.map) {
        (Some(d), _) => {
            let est = estimate_dd(&d.0, Vec::new()).map_err(|e| UsageError(e.to_string()))?;
            (d.0.clone(), est, Vec::new(), json!({ "degrees": d.0 }))
        }
        (None, Some(map)) => {
            let run = DegreeRunArgs {
                map,
                mmax: args.mmax,
                primes: args.primes.clone(),
                trials: args.trials,
                seed: args.seed,
                cyclic: None,
            };
            let seq = measure(&run)?;
            let est = estimate_dd_from(&seq).map_err(|e| UsageError(e.to_string()))?;
            let checks = degree_checks(&map.0, &seq);
            let config = serde_json::to_value(&seq.config).expect("serializable");
            (seq.consensus, est, checks, config)
        }
        (None, None) => return Err(UsageError("need --map or --degrees".into()).into()),
    };
    let first = degrees[0] as f64;
    let above: Vec<usize> = estimate
        .root_estimates
        .iter()
        .enumerate()
        .filter(|(_, &r)| r > first + 1e-9)
        .map(|(k, _)| k + 1)
        .collect();
    checks.push(Check::new(
        "root-bound",
        "every root estimate deg_m^(1/m) is at most deg_1",
        above.is_empty(),
        json!({ "violations_at_m": above }),
    ));
    let report = Report::new(
        "dd-estimate",
        "Finite-m estimates of the exponential growth rate of a degree sequence, which the \
         degree of the first iterate bounds from above",
        config,
        checks,
    )
    .with_data(json!({ "degrees": degrees, "estimate": estimate }));
    Ok(json_outcome(&report))
}

#[derive(Serialize)]
struct HeightRow {
    map: String,
    n: usize,
    m: usize,
    /// Vertex index, or `max` for the polygon height.
    vertex: String,
    log10_height: String,
    ratio: String,
}

fn fixed(x: f64) -> String {
    format!("{x:.6}")
}

pub fn heights(args: &HeightsArgs) -> Result<Outcome> {
    if args.n < 3 {
        return Err(UsageError("need n >= 3".into()).into());
    }
    if !args.map.distinct_mod(args.n) {
        return Err(UsageError(format!("{} is not distinct mod {}", args.map, args.n)).into());
    }
    let records = match args.start {
        Start::Random => {
            let n = args.n;
            seeded_height_run(args.map, n, args.mmax, args.seed, move |rng| {
                random_polygon(n, rng)
            })
        }
        Start::Symmetric => {
            if args.n != 8 {
                return Err(UsageError("--start symmetric needs --n 8".into()).into());
            }
            seeded_height_run(args.map, 8, args.mmax, args.seed, random_symmetric_octagon)
        }
    }?;
    let map = args.map.to_string();
    let mut rows = Vec::new();
    for r in &records {
        for (k, h) in r.vertex_log10.iter().enumerate() {
            rows.push(HeightRow {
                map: map.clone(),
                n: r.n,
                m: r.m,
                vertex: k.to_string(),
                log10_height: fixed(*h),
                ratio: String::new(),
            });
        }
        rows.push(HeightRow {
            map: map.clone(),
            n: r.n,
            m: r.m,
            vertex: "max".into(),
            log10_height: fixed(r.log10_height),
            ratio: r.ratio.map(fixed).unwrap_or_default(),
        });
    }
    Ok(Outcome {
        text: to_csv(&rows)?,
        passed: true,
        diagnostics: None,
    })
}

pub fn octagon_verify(args: &OctagonArgs) -> Result<Outcome> {
    Ok(json_outcome(&verify::octagon_report(args.seed)))
}

/// The pairs `(b, c)` of equal-length maps `T_{0,b,c,b+c}` checked by
/// default.
pub const EQUAL_LENGTH_PAIRS: [(i64, i64); 3] = [(2, 1), (3, 1), (3, 2)];
const ORBIT_LEN: usize = 30;
const ORBIT_STEPS: usize = 3;
const ORBIT_BOUND: i64 = 8;
/// Fresh draws allowed per Menelaus configuration.
const CONFIG_DRAWS: usize = 100;

fn random_point(field: &FieldSpec, rng: &mut impl rand::Rng) -> ProjPoint<FieldElem> {
    ProjPoint::affine(field.random(rng), field.random(rng))
}

fn distinct_coord(pts: &[&ProjPoint<FieldElem>], k: usize) -> bool {
    let c: Vec<FieldElem> = pts.iter().filter_map(|p| p.affine_coord(k)).collect();
    c.len() == pts.len() && (0..c.len()).all(|i| (i + 1..c.len()).all(|j| c[i] != c[j]))
}

/// Residuals on both coordinates of one random configuration, drawing
/// again whenever B, C, E, F are degenerate or A, D leave the affine chart.
fn menelaus_trial(field: &FieldSpec, seed: u64, trial: u64) -> Option<(usize, [FieldElem; 2])> {
    let mut rng = trial_rng(seed, 7, trial);
    for draw in 0..CONFIG_DRAWS {
        let [b, c, e, f] = std::array::from_fn(|_| random_point(field, &mut rng));
        if !general_linear_position(&[b.clone(), c.clone(), e.clone(), f.clone()]) {
            continue;
        }
        let Ok((a, d)) = menelaus_configuration(&b, &c, &e, &f) else {
            continue;
        };
        let six = [&a, &b, &c, &d, &e, &f];
        if !distinct_coord(&six, 0) || !distinct_coord(&six, 1) {
            continue;
        }
        let (Ok(x), Ok(y)) = (
            menelaus_residual_coord(six, 0),
            menelaus_residual_coord(six, 1),
        ) else {
            continue;
        };
        return Some((draw, [x, y]));
    }
    None
}

fn field_orbit(
    field: &FieldSpec,
    b: i64,
    c: i64,
    len: usize,
    steps: usize,
    seed: u64,
) -> Result<EqualLengthOrbit<FieldElem>> {
    let f = *field;
    Ok(generic_orbit(
        b,
        c,
        len,
        steps,
        ORBIT_BOUND,
        seed,
        move |rng| f.random(rng),
    )?)
}

/// Menelaus products on constructed configurations.
pub fn menelaus_configuration_check(field: &FieldSpec, trials: usize, seed: u64) -> Check {
    let minus_one = field.from_i64(-1);
    let mut redraws = 0;
    let (mut done, mut wrong) = (0, Vec::new());
    for t in 0..trials as u64 {
        match menelaus_trial(field, seed, t) {
            Some((extra, res)) => {
                redraws += extra;
                done += 1;
                if res.iter().any(|r| *r != minus_one) {
                    wrong.push(
                        json!({ "trial": t, "x": res[0].to_string(), "y": res[1].to_string() }),
                    );
                }
            }
            None => wrong.push(json!({ "trial": t, "error": "no nondegenerate draw" })),
        }
    }
    Check::new(
        "configurations",
        "for random B, C, E, F with A = BF.CE and D = BC.EF, the products \
         (A-F)/(F-B) (B-D)/(D-C) (C-E)/(E-A) of x and of y coordinates are -1",
        done == trials && wrong.is_empty(),
        json!({ "configurations": done, "redraws": redraws, "failures": wrong }),
    )
}

/// Menelaus products along orbits of equal-length maps.
pub fn menelaus_orbit_checks(field: &FieldSpec, seed: u64) -> Vec<Check> {
    let minus_one = field.from_i64(-1);
    EQUAL_LENGTH_PAIRS
        .iter()
        .map(|&(b, c)| {
            let name = format!("orbit-{b}-{c}");
            let statement = format!(
                "along an orbit of Skew(0,{b},{c},{}), the six points of every step pair form \
                 a configuration with Menelaus product -1",
                b + c
            );
            let orbit = match field_orbit(field, b, c, ORBIT_LEN, ORBIT_STEPS, seed) {
                Ok(o) => o,
                Err(e) => return Check::error(&name, &statement, e),
            };
            let (mut tested, mut skipped, mut wrong) = (0, 0, 0);
            for m in 0..=orbit.steps().saturating_sub(2) {
                for i in orbit.iterates()[0].indices() {
                    for k in 0..2 {
                        match menelaus_orbit_check(&orbit, i, m, k) {
                            Ok(r) => {
                                tested += 1;
                                wrong += usize::from(r != minus_one);
                            }
                            Err(_) => skipped += 1,
                        }
                    }
                }
            }
            Check::new(
                &name,
                &statement,
                tested >= 20 && wrong == 0,
                json!({ "tested": tested, "outside_window": skipped, "failures": wrong }),
            )
        })
        .collect()
}

pub fn menelaus(args: &MenelausArgs) -> Result<Outcome> {
    let mut checks = vec![menelaus_configuration_check(
        &args.field,
        args.trials,
        args.seed,
    )];
    checks.extend(menelaus_orbit_checks(&args.field, args.seed));
    let report = Report::new(
        "menelaus",
        "Menelaus' theorem in triple-ratio form, on constructed configurations and on the \
         configurations traced out by equal-length skew pentagram maps",
        json!({ "trials": args.trials, "field": args.field.to_string(), "seed": args.seed }),
        checks,
    );
    Ok(json_outcome(&report))
}

/// dSKP residuals of one equal-length orbit pulled back along the index map.
pub fn dskp_check(field: &FieldSpec, b: i64, c: i64, len: usize, steps: usize, seed: u64) -> Check {
    let name = format!("dskp-{b}-{c}");
    let statement = format!(
        "both coordinates of an orbit of Skew(0,{b},{c},{}) pulled back to the octahedral lattice \
         satisfy the dSKP recurrence (residual -1) at 20 or more odd points",
        b + c
    );
    let minus_one = field.from_i64(-1);
    let run = || -> Result<Value> {
        let orbit = field_orbit(field, b, c, len, steps, seed)?;
        let mut per_coord = Vec::new();
        for k in 0..2 {
            let res = all_residuals(&orbit.to_dskp(k, ORBIT_BOUND)?)?;
            let wrong: Vec<String> = res
                .iter()
                .filter(|(_, w)| *w != minus_one)
                .map(|(r, w)| format!("{r:?}: {w}"))
                .collect();
            per_coord.push(json!({ "coordinate": k, "points": res.len(), "failures": wrong }));
        }
        Ok(json!(per_coord))
    };
    match run() {
        Ok(w) => {
            let pass = w.as_array().is_some_and(|a| {
                a.iter().all(|e| {
                    e["points"].as_u64().is_some_and(|n| n >= 20)
                        && e["failures"].as_array().is_some_and(Vec::is_empty)
                })
            });
            Check::new(&name, &statement, pass, w)
        }
        Err(e) => Check::error(&name, &statement, e),
    }
}

pub const INVERSE_WINDOWS: usize = 10;

/// `T_{0,b,c,b+c}` followed by its inverse on random interval windows.
pub fn inverse_check(field: &FieldSpec, b: i64, c: i64, seed: u64) -> Check {
    let name = format!("inverse-{b}-{c}");
    let params = match SkewParams::new(0, b, c, b + c) {
        Ok(p) => p,
        Err(e) => return Check::error(&name, "inverse", e),
    };
    let statement = format!(
        "Skew{} followed by its inverse {} is the identity on {INVERSE_WINDOWS} random windows",
        params,
        params
            .equal_length_inverse()
            .map(|p| p.to_string())
            .unwrap_or_default()
    );
    let run = || -> Result<(usize, usize)> {
        let inv = LocalRule::Skew(params.equal_length_inverse()?);
        let rule = LocalRule::Skew(params);
        let len = 4 * (b + c) as usize + 2;
        let (mut tested, mut wrong) = (0, 0);
        for t in 0.. {
            if tested == INVERSE_WINDOWS || t == 10 * INVERSE_WINDOWS as u64 {
                break;
            }
            let mut rng = trial_rng(seed, 8, t);
            let pts: Vec<_> = (0..len).map(|_| random_point(field, &mut rng)).collect();
            if !general_linear_position(&pts) {
                continue;
            }
            let w = PolygonWindow::interval(0, pts)?;
            let Ok(there) = apply_rule(&rule, &w) else {
                continue;
            };
            let Ok(back) = apply_rule(&inv, &there) else {
                continue;
            };
            tested += 1;
            if back.is_empty()
                || back.indices().iter().any(|&i| {
                    !back
                        .get(i)
                        .is_some_and(|p| w.get(i).is_some_and(|q| p.same_as(q)))
                })
            {
                wrong += 1;
            }
        }
        Ok((tested, wrong))
    };
    match run() {
        Ok((tested, wrong)) => Check::new(
            &name,
            &statement,
            tested == INVERSE_WINDOWS && wrong == 0,
            json!({ "windows": tested, "failures": wrong }),
        ),
        Err(e) => Check::error(&name, &statement, e),
    }
}

pub fn dskp(args: &DskpArgs) -> Result<Outcome> {
    let pairs: Vec<(i64, i64)> = match (args.b, args.c) {
        (Some(b), Some(c)) => vec![(b, c)],
        _ => EQUAL_LENGTH_PAIRS.to_vec(),
    };
    for &(b, c) in &pairs {
        if b <= 0 || c <= 0 || b == c {
            return Err(UsageError(format!("need distinct positive b and c, got {b}, {c}")).into());
        }
    }
    let mut checks = Vec::new();
    for &(b, c) in &pairs {
        checks.push(inverse_check(&args.field, b, c, args.seed));
        checks.push(dskp_check(
            &args.field,
            b,
            c,
            args.len,
            args.steps,
            args.seed,
        ));
    }
    let report = Report::new(
        "dskp",
        "Equal-length skew pentagram maps are invertible and their orbits, pulled back along \
         the index map to the octahedral lattice, solve the dSKP recurrence",
        json!({
            "pairs": pairs,
            "len": args.len,
            "steps": args.steps,
            "field": args.field.to_string(),
            "seed": args.seed,
        }),
        checks,
    );
    Ok(json_outcome(&report))
}

pub fn dominance(args: &DominanceArgs) -> Result<Outcome> {
    if !skew_pentagram::field::is_prime(args.prime) || args.prime < 3 {
        return Err(UsageError(format!("{} is not an odd prime", args.prime)).into());
    }
    let rule = &args.map.0;
    if rule
        .output_indexing(skew_pentagram::lattice::Indexing::Cyclic(args.n))
        .is_err()
    {
        return Err(UsageError(format!(
            "{} is not defined on closed {}-gons",
            args.map, args.n
        ))
        .into());
    }
    let witnessed = dominance_test(rule, args.n, args.prime, args.trials, args.seed);
    let mut statement = String::new();
    write!(
        statement,
        "the differential of {} on closed {}-gons has full rank 2n at some random point mod {}",
        args.map, args.n, args.prime
    )
    .expect("string write");
    let report = Report::new(
        "dominance",
        "A rational map whose differential has full rank somewhere is dominant",
        json!({
            "map": args.map.to_string(),
            "n": args.n,
            "prime": args.prime,
            "trials": args.trials,
            "seed": args.seed,
        }),
        vec![Check::new(
            "full-rank",
            &statement,
            witnessed,
            json!({ "witnessed": witnessed }),
        )],
    );
    Ok(json_outcome(&report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        "q".parse().unwrap()
    }

    #[test]
    fn configurations_over_q_and_fp() {
        assert!(menelaus_configuration_check(&q(), 10, 1).pass);
        let fp: FieldSpec = "fp:10009".parse().unwrap();
        assert!(menelaus_configuration_check(&fp, 10, 1).pass);
    }

    #[test]
    fn inverse_over_q() {
        let c = inverse_check(&q(), 2, 1, 3);
        assert!(c.pass, "{c:?}");
    }

    #[test]
    fn csv_rows_quote_the_map() {
        let rows = [DegreeRow {
            map: "0,2,1,4",
            m: 1,
            prime: 97,
            trial: 0,
            degree: 4,
            removed_degree: 0,
        }];
        let text = to_csv(&rows).unwrap();
        assert_eq!(
            text,
            "map,m,prime,trial,degree,removed_degree\n\"0,2,1,4\",1,97,0,4,0\n"
        );
    }

    #[test]
    fn submultiplicativity_is_checked() {
        let rule = LocalRule::skew(0, 2, 1, 4).unwrap();
        let run = DegreeRunArgs {
            map: MapSpec(rule),
            mmax: 3,
            primes: Primes(vec![193]),
            trials: 1,
            seed: 0,
            cyclic: None,
        };
        let mut seq = measure(&run).unwrap();
        assert!(degree_checks(&rule, &seq).iter().all(|c| c.pass));
        seq.consensus[2] = 1000;
        let failed: Vec<String> = degree_checks(&rule, &seq)
            .into_iter()
            .filter(|c| !c.pass)
            .map(|c| c.name)
            .collect();
        assert_eq!(failed, ["power-bound", "submultiplicative"]);
    }
}
