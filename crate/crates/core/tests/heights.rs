use skew_pentagram::field::{rational, Rational};
use skew_pentagram::geometry::ProjPoint;
use skew_pentagram::heights::*;
use skew_pentagram::lattice::{apply_rule, LocalRule, PolygonWindow, SkewParams};
use skew_pentagram::octagon::{moduli_of, octagon_from_moduli};

fn params(s: &str) -> SkewParams {
    s.parse().unwrap()
}

fn ratios(records: &[HeightRecord]) -> Vec<f64> {
    records
        .iter()
        .map(|r| r.ratio.unwrap_or(f64::NAN))
        .collect()
}

#[test]
fn truly_skew_octagon_heights_grow_by_four() {
    let records = seeded_height_run(params("0,2,1,4"), 8, 8, 1, random_symmetric_octagon).unwrap();
    assert_eq!(records.len(), 9);
    let r = ratios(&records);
    for m in 6..=8 {
        assert!((3.5..=4.5).contains(&r[m]), "m={m}: {r:?}");
    }
}

#[test]
fn pentagram_nonagon_heights_grow_slowly() {
    let records =
        seeded_height_run(params("0,2,1,3"), 9, 12, 1, |rng| random_polygon(9, rng)).unwrap();
    let r = ratios(&records);
    for m in 10..=12 {
        assert!(r[m] < 1.5, "m={m}: {r:?}");
    }
    let h: Vec<f64> = records.iter().map(|r| r.log10_height).collect();
    // Far below the 4^m growth of the truly skew map.
    assert!(h[12] < h[6] * 8.0, "{h:?}");
}

#[test]
fn periodic_polygon_is_fixed_and_keeps_its_height() {
    // A quadrilateral repeated twice is fixed by Skew(0,2,1,4) on octagons.
    let quad = [(0, 0), (3, 1), (2, 5), (-1, 2)];
    let pts: Vec<ProjPoint<Rational>> = quad
        .iter()
        .cycle()
        .take(8)
        .map(|&(x, y)| ProjPoint::affine(rational(x, 1), rational(y, 1)))
        .collect();
    let w = PolygonWindow::cyclic(pts).unwrap();
    let records = height_growth_experiment(params("0,2,1,4"), &w, 4).unwrap();
    assert!(records
        .iter()
        .all(|r| r.log10_height == records[0].log10_height));
    let rule = LocalRule::skew(0, 2, 1, 4).unwrap();
    assert!(apply_rule(&rule, &w).unwrap().same_as(&w));
}

#[test]
fn two_cycle_octagons_have_periodic_normalized_heights() {
    let rule = LocalRule::skew(0, 2, 1, 4).unwrap();
    let mut w = octagon_from_moduli(&ProjPoint::affine(rational(1, 1), rational(0, 1))).unwrap();
    let mut heights = Vec::new();
    for _ in 0..6 {
        let next = apply_rule(&rule, &w).unwrap();
        w = octagon_from_moduli(&moduli_of(&next).unwrap()).unwrap();
        heights.push(polygon_height(&w));
    }
    assert_eq!(heights[0], heights[2]);
    assert_eq!(heights[1], heights[3]);
    assert_eq!(heights[2], heights[4]);
}

#[test]
fn runs_are_reproducible() {
    let a = seeded_height_run(params("0,2,1,4"), 8, 4, 9, random_symmetric_octagon).unwrap();
    let b = seeded_height_run(params("0,2,1,4"), 8, 4, 9, random_symmetric_octagon).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}
