//! The checks behind `octagon-verify`: the induced map `f` on the moduli of
//! rotationally symmetric octagons, its contracted curves, indeterminacy,
//! topological degree and the lift to the blowup at the rotation's fixed
//! points.

use std::fmt::Display;

use rand::Rng;
use serde_json::{json, Value};
use skew_pentagram::field::{GaussianRational, Gf, GfContext, MPoly, Projective, Ring};
use skew_pentagram::geometry::ProjPoint;
use skew_pentagram::lattice::{apply_rule, LocalRule};
use skew_pentagram::octagon::*;
use skew_pentagram::sample::{random_affine_fp, trial_rng};

use crate::report::{Check, Report};

type Gq = GaussianRational;

pub const ABOUT: &str = "Skew(0,2,1,4) on rotationally symmetric octagons: the induced degree-5 \
map f on moduli, its contracted curves and indeterminacy, its generic fiber size, and the \
pullback on the blowup at the three fixed points of the quarter turn";

fn point<R: Projective + Display>(p: &ProjPoint<R>) -> String {
    let [x, y, z] = p.coords();
    format!("[{x}:{y}:{z}]")
}

fn gq(re: i64, im: i64) -> Gq {
    Gq::from_ints(re, im)
}

fn gq_point(c: [(i64, i64); 3]) -> ProjPoint<Gq> {
    ProjPoint::new(c.map(|(a, b)| gq(a, b))).expect("nonzero")
}

fn compiled(p: u64, k: usize) -> Result<CompiledMap, String> {
    let ctx = GfContext::new(p, k).map_err(|e| e.to_string())?;
    CompiledMap::new(&printed_f(), ctx).map_err(|e| e.to_string())
}

/// The five printed indeterminacy points with their multiplicities.
pub fn printed_indeterminacy() -> [(ProjPoint<Gq>, usize); 5] {
    [
        (gq_point([(0, 0), (0, 0), (1, 0)]), 2),
        (gq_point([(-1, 0), (0, 0), (1, 0)]), 5),
        (gq_point([(1, 0), (0, 1), (0, 0)]), 2),
        (gq_point([(1, 0), (0, -1), (0, 0)]), 2),
        (gq_point([(0, 0), (-1, 0), (1, 0)]), 2),
    ]
}

/// Fields where the fiber count of `[1:1:1]` is computed.
pub const FIBER_FIELDS: [(u64, usize); 3] = [(7, 2), (31, 1), (13, 2)];
/// Fields whose full image histogram is scanned.
pub const HISTOGRAM_FIELDS: [(u64, usize); 3] = [(13, 2), (7, 2), (31, 1)];
pub const CENSUS_PRIMES: [u64; 3] = [13, 17, 29];
pub const RANDOM_TARGETS: usize = 50;

/// Symbolic derivation of `f` from the octagon, compared with the printed
/// intermediate values and the printed formula.
pub fn derivation_checks() -> Vec<Check> {
    let d = derive_f();
    let (v1, normalizer) = printed_intermediates();
    let v1_scale = proportionality_scalar(&d.v1_image, &v1);
    vec![
        Check::new(
            "image-is-symmetric",
            "the image of the symbolic symmetric octagon is again symmetric under the quarter turn",
            d.image_symmetric,
            json!(d.image_symmetric),
        ),
        Check::new(
            "first-image-vertex",
            "the first image vertex is [X-Y+Z : 2Y : X+Y+Z] up to scale",
            v1_scale.is_some(),
            json!({ "scale": v1_scale.map(|s| s.to_string()) }),
        ),
        Check::new(
            "normalizer",
            "the renormalizing matrix has entries P1 = (X+Y+Z)(X-Y+Z), P2 = -2Y(X+Y+Z), P3 = L2 L3",
            d.normalizer == normalizer,
            json!({ "terms": d.normalizer.iter().map(MPoly::num_terms).collect::<Vec<_>>() }),
        ),
        Check::new(
            "derived-formula",
            "the derived map equals the printed degree-5 formula up to one global scalar",
            d.scalar.is_some(),
            json!({ "scalar": d.scalar.map(|s| s.to_string()) }),
        ),
    ]
}

fn dominance_check() -> Check {
    let f = printed_f();
    let jac = jacobian_determinant(&f.components);
    let at = [gq(1, 0), gq(2, 0), gq(3, 0)];
    let value = jac.eval(&at);
    Check::new(
        "dominant",
        "det Df is not identically zero, so f is dominant",
        !value.is_zero(),
        json!({ "point": "[1:2:3]", "det_df": value.to_string() }),
    )
}

fn degree_check() -> Check {
    let f = printed_f();
    let degree = f.degree();
    let witness = f.coprimality_witness();
    Check::new(
        "algebraic-degree",
        "f has algebraic degree 5 and its components share no common factor",
        degree == Some(5) && witness.is_some(),
        json!({
            "degree": degree,
            "coprime_witness": witness.map(|(p, _)| {
                point(&ProjPoint::new(p).expect("nonzero"))
            }),
        }),
    )
}

fn contracted_check() -> Check {
    let r = contracted_curves_check(&printed_f());
    let curves: Vec<Value> = r
        .curves
        .iter()
        .map(|c| {
            json!({
                "curve": c.name,
                "image": c.image.as_ref().map(point),
                "expected": point(&c.expected),
            })
        })
        .collect();
    Check::new(
        "contracted-curves",
        "C1, C2, C3 are contracted to p1, p2, p3; det Df = unit * L1 L2 L3 * q4 with simple linear \
         factors; the nonic q4 is not contracted",
        r.passes(),
        json!({
            "curves": curves,
            "jacobian_unit": r.jacobian_unit.map(|u| u.to_string()),
            "simple_factors": r.simple_factors,
            "q4_not_contracted": r.c4_not_contracted,
        }),
    )
}

fn indeterminacy_check() -> Check {
    let f = printed_f();
    let printed: Vec<Value> = printed_indeterminacy()
        .iter()
        .map(|(p, _)| {
            json!({
                "point": point(p),
                "vanishes": f.eval(p.coords()).iter().all(|c| c.is_zero()),
            })
        })
        .collect();
    let printed_ok = printed.iter().all(|v| v["vanishes"] == json!(true));
    let centers_ok = BlowupChart::ALL
        .iter()
        .all(|c| f.eval(c.center().coords()).iter().all(|x| x.is_zero()));
    match indeterminacy_census(&f, &CENSUS_PRIMES, 2) {
        Ok(census) => {
            let max = census.iter().map(|e| e.count).max().unwrap_or(0);
            Check::new(
                "indeterminacy",
                "the five printed points and p1, p2, p3 are indeterminate; over finite fields the \
                 count of common zeros reaches 12 and never exceeds it",
                printed_ok && centers_ok && max == 12,
                json!({
                    "printed": printed,
                    "fixed_points_indeterminate": centers_ok,
                    "census": census,
                }),
            )
        }
        Err(e) => Check::error("indeterminacy", "census of common zeros", e),
    }
}

fn random_target(ctx: &GfContext, rng: &mut impl Rng) -> [Gf; 3] {
    std::array::from_fn(|_| ctx.element(rng.gen_range(0..ctx.order())))
}

fn topological_degree_check(seed: u64) -> Check {
    let statement = "the fiber of [1:1:1] has 5 points over a field containing all of them, and \
                     no fiber has more than 5, both by a full image histogram and at random targets";
    let run = || -> Result<Value, String> {
        let mut ones = Vec::new();
        for (p, k) in FIBER_FIELDS {
            let m = compiled(p, k)?;
            let one = m.context().from_i64(1);
            let n = fiber_count(&m, &[one, one, one]).map_err(|e| e.to_string())?;
            ones.push(json!({ "p": p, "k": k, "fiber": n }));
        }
        let mut scans = Vec::new();
        for (p, k) in HISTOGRAM_FIELDS {
            let m = compiled(p, k)?;
            let h = image_histogram(&m);
            let ctx = *m.context();
            let mut rng = trial_rng(seed, p, k as u64);
            let (mut tried, mut largest, mut agree) = (0, 0, true);
            while tried < RANDOM_TARGETS {
                let t = random_target(&ctx, &mut rng);
                let Ok(n) = fiber_count(&m, &t) else { continue };
                largest = largest.max(n);
                agree &= n == h.fiber(&t);
                tried += 1;
            }
            scans.push(json!({
                "p": p,
                "k": k,
                "histogram_max": h.max_fiber(&m),
                "random_targets": tried,
                "random_max": largest,
                "random_agree_with_histogram": agree,
            }));
        }
        Ok(json!({ "fiber_of_ones": ones, "scans": scans }))
    };
    match run() {
        Ok(w) => {
            let five = w["fiber_of_ones"]
                .as_array()
                .is_some_and(|a| a.iter().any(|e| e["fiber"] == json!(5)));
            let bounded = w["scans"].as_array().is_some_and(|a| {
                a.iter().all(|s| {
                    s["histogram_max"] == json!(5)
                        && s["random_max"].as_u64().is_some_and(|n| n <= 5)
                        && s["random_agree_with_histogram"] == json!(true)
                })
            });
            Check::new("topological-degree", statement, five && bounded, w)
        }
        Err(e) => Check::error("topological-degree", statement, e),
    }
}

/// The numbered items about `f`: dominance, degree, contracted curves,
/// indeterminacy and topological degree.
pub fn basic_checks(seed: u64) -> Vec<Check> {
    vec![
        dominance_check(),
        degree_check(),
        contracted_check(),
        indeterminacy_check(),
        topological_degree_check(seed),
    ]
}

/// Local intersection multiplicities of two random members of `f*H` at the
/// printed indeterminacy points.
pub fn multiplicity_check(seed: u64) -> Check {
    let statement = "two random pullbacks of lines meet with multiplicity 2, 5, 2, 2, 2 at \
                     [0:0:1], [-1:0:1], [1:i:0], [1:-i:0], [0:-1:1]";
    let f = printed_f();
    let mut rng = trial_rng(seed, 5, 0);
    let mut pull = || {
        f.components.iter().fold(MPoly::zero(&gq(0, 0)), |acc, c| {
            let a = gq(rng.gen_range(-50..=50), rng.gen_range(-50..=50));
            acc + c.scale(&a)
        })
    };
    let mut rows = Vec::new();
    let mut pass = true;
    for draw in 0..2 {
        let (h1, h2) = (pull(), pull());
        for (p, expected) in printed_indeterminacy() {
            match local_intersection_multiplicity(&h1, &h2, &p) {
                Ok(m) => {
                    pass &= m == expected;
                    rows.push(json!({ "draw": draw, "point": point(&p), "multiplicity": m, "expected": expected }));
                }
                Err(e) => return Check::error("multiplicities", statement, e),
            }
        }
    }
    Check::new("multiplicities", statement, pass, json!(rows))
}

/// No curve of the blowup is contracted, and the two unambiguous printed
/// rows match exactly.
pub fn table_check() -> Check {
    let statement = "the lift of f to the blowup contracts none of the six curves C1^, C2^, C3^, \
                     E1, E2, E3, and the printed images of C1^ and E1 are reproduced exactly";
    let f = printed_f();
    let rows = match table1_reproduce(&f) {
        Ok(r) => r,
        Err(e) => return Check::error("blowup-table", statement, e),
    };
    let computed: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "curve": r.curve.name(),
                "image": r.describe(),
                "degree": r.degree(),
                "contracted": r.is_contracted(),
            })
        })
        .collect();
    let mut matched = Vec::new();
    let mut pass = rows.iter().all(|r| !r.is_contracted()) && rows.len() == 6;
    for printed in printed_table_rows() {
        let ok = rows
            .iter()
            .find(|r| r.curve == printed.curve)
            .is_some_and(|r| printed.matches(r));
        pass &= ok;
        matched.push(json!({
            "curve": printed.curve.name(),
            "slope": printed.slope,
            "matches": ok,
        }));
    }
    Check::new(
        "blowup-table",
        statement,
        pass,
        json!({ "rows": computed, "printed": matched }),
    )
}

/// The pullback matrix and its spectrum.
pub fn pullback_checks(seed: u64) -> Vec<Check> {
    let f = printed_f();
    let report = match pullback_matrix(&f, seed) {
        Ok(r) => r,
        Err(e) => return vec![Check::error("pullback-matrix", "pullback on Num X", e)],
    };
    let expected = printed_pullback_matrix();
    let rows = report.matrix.to_i64_rows();
    let mut checks = vec![Check::new(
        "pullback-matrix",
        "the pullback on classes in the basis H, E1, E2, E3 is [[5,1,1,1],[-1,1,0,0],[-1,0,1,0],[-1,0,0,1]]",
        report.matrix == expected,
        json!({ "matrix": rows, "generic_orders": report.generic_orders }),
    )];
    checks.push(match spectral_data(&report.matrix, 10) {
        Ok(s) => {
            let mut roots: Vec<i64> = s
                .integer_roots
                .iter()
                .flat_map(|&(r, k)| std::iter::repeat_n(r, k))
                .collect();
            roots.sort_unstable_by(|a, b| b.cmp(a));
            Check::new(
                "spectral-radius",
                "the characteristic polynomial has integer roots 4, 2, 1, 1, so the first dynamical degree is 4",
                roots == [4, 2, 1, 1] && s.spectral_radius == Some(4),
                serde_json::to_value(&s).expect("serializable"),
            )
        }
        Err(e) => Check::error("spectral-radius", "characteristic polynomial", e),
    });
    checks
}

pub const SEMICONJUGACY_PRIME: u64 = 10007;

/// Iterating the octagon and reading off its moduli agrees with `f`.
pub fn semiconjugacy_check(seed: u64) -> Check {
    let statement = "renormalizing Skew(0,2,1,4) of the octagon of a random point gives f of that \
                     point, at 60 random points mod 10007";
    let rule = LocalRule::skew(0, 2, 1, 4).expect("valid");
    let f = printed_f();
    let mut rng = trial_rng(seed, 6, 0);
    let (mut checked, mut agree) = (0, 0);
    for _ in 0..60 {
        let p = random_affine_fp(&mut rng, SEMICONJUGACY_PRIME);
        let Ok(image) = eval_f(&f, &p) else { continue };
        let Ok(w) = octagon_from_moduli(&p) else {
            continue;
        };
        let Ok(next) = apply_rule(&rule, &w) else {
            continue;
        };
        let Ok(m) = moduli_of(&next) else { continue };
        checked += 1;
        agree += usize::from(m.same_as(&image));
    }
    Check::new(
        "semiconjugacy",
        statement,
        checked >= 50 && agree == checked,
        json!({ "defined": checked, "agree": agree }),
    )
}

pub fn two_cycle_check() -> Check {
    let f = printed_f();
    let a = gq_point([(1, 0), (0, 0), (1, 0)]);
    let b = gq_point([(0, 0), (1, 0), (1, 0)]);
    let fa = eval_f(&f, &a);
    let fb = eval_f(&f, &b);
    let pass = matches!((&fa, &fb), (Ok(x), Ok(y)) if x.same_as(&b) && y.same_as(&a));
    Check::new(
        "two-cycle",
        "f exchanges [1:0:1] and [0:1:1]",
        pass,
        json!({
            "f([1:0:1])": fa.as_ref().map(point).map_err(|e| e.to_string()).ok(),
            "f([0:1:1])": fb.as_ref().map(point).map_err(|e| e.to_string()).ok(),
        }),
    )
}

pub fn octagon_report(seed: u64) -> Report {
    let mut checks = vec![semiconjugacy_check(seed), two_cycle_check()];
    checks.extend(derivation_checks());
    checks.extend(basic_checks(seed));
    checks.push(multiplicity_check(seed));
    checks.push(table_check());
    checks.extend(pullback_checks(seed));
    Report::new("octagon-verify", ABOUT, json!({ "seed": seed }), checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivation_passes() {
        let checks = derivation_checks();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }

    #[test]
    fn cheap_checks_pass() {
        for c in [
            dominance_check(),
            degree_check(),
            two_cycle_check(),
            table_check(),
        ] {
            assert!(c.pass, "{c:?}");
        }
    }
}
