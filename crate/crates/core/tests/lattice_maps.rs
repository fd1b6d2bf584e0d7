use skew_pentagram::field::{rational, Fp, Rational};
use skew_pentagram::geometry::{
    general_linear_position, transform_to_frame, ProjPoint, ProjTransform,
};
use skew_pentagram::lattice::{
    apply_rule, dominance_test, iterate_rule, Indexing, LatticeError, LocalRule, PolygonWindow,
    SkewParams,
};
use skew_pentagram::sample::{random_affine_fp, random_affine_rational, random_fp, trial_rng};

const P: u64 = 10009;

fn skew(a: i64, b: i64, c: i64, d: i64) -> LocalRule {
    LocalRule::skew(a, b, c, d).unwrap()
}

fn q(x: i64, y: i64) -> ProjPoint<Rational> {
    ProjPoint::affine(rational(x, 1), rational(y, 1))
}

fn random_fp_window(seed: u64, len: usize, cyclic: bool) -> PolygonWindow<Fp> {
    let mut rng = trial_rng(seed, P, 0);
    let pts: Vec<_> = (0..len).map(|_| random_affine_fp(&mut rng, P)).collect();
    if cyclic {
        PolygonWindow::cyclic(pts).unwrap()
    } else {
        PolygonWindow::interval(-3, pts).unwrap()
    }
}

fn random_transform(seed: u64) -> ProjTransform<Fp> {
    let mut rng = trial_rng(seed, P, 1);
    loop {
        let m = std::array::from_fn(|_| std::array::from_fn(|_| random_fp(&mut rng, P)));
        if let Ok(t) = ProjTransform::new(m) {
            return t;
        }
    }
}

#[test]
fn periodic_polygon_is_fixed() {
    // Points in general linear position, repeated with period d.
    let base = [q(0, 0), q(1, 0), q(0, 1), q(2, 3), q(-1, 4)];
    for (a, b, c, d) in [(0, 2, 1, 3), (0, 2, 1, 4), (0, 3, 1, 5), (0, 1, 2, 5)] {
        let period: Vec<_> = base[..d as usize].to_vec();
        assert!(general_linear_position(&period));
        let pts: Vec<_> = (0..4 * d as usize)
            .map(|i| period[i % d as usize].clone())
            .collect();
        let w = PolygonWindow::interval(0, pts.clone()).unwrap();
        let out = apply_rule(&skew(a, b, c, d), &w).unwrap();
        for i in out.indices() {
            assert!(
                out.get(i).unwrap().same_as(w.get(i).unwrap()),
                "({a},{b},{c},{d}) at {i}"
            );
        }
        let closed = PolygonWindow::cyclic(pts).unwrap();
        assert!(apply_rule(&skew(a, b, c, d), &closed)
            .unwrap()
            .same_as(&closed));
    }
}

/// Rotationally symmetric octagon normalized so that the odd vertices are
/// `(±1, 0), (0, ±1)`; index `k` holds the vertex usually labelled `k + 1`.
fn symmetric_octagon(x: Rational, y: Rational) -> PolygonWindow<Rational> {
    let (one, zero) = (rational(1, 1), rational(0, 1));
    let v = |a: &Rational, b: &Rational| ProjPoint::affine(a.clone(), b.clone());
    PolygonWindow::cyclic(vec![
        v(&one, &zero),
        v(&x, &y),
        v(&zero, &one),
        v(&-y.clone(), &x),
        v(&-one.clone(), &zero),
        v(&-x.clone(), &-y.clone()),
        v(&zero, &-one.clone()),
        v(&y, &-x.clone()),
    ])
    .unwrap()
}

fn renormalized_second_vertex(w: &PolygonWindow<Rational>) -> ProjPoint<Rational> {
    let odd: Vec<_> = [0, 2, 4, 6]
        .iter()
        .map(|&i| w.get(i).unwrap().clone())
        .collect();
    let target = [q(1, 0), q(0, 1), q(-1, 0), q(0, -1)];
    let m = transform_to_frame(
        &[
            odd[0].clone(),
            odd[1].clone(),
            odd[2].clone(),
            odd[3].clone(),
        ],
        &target,
    )
    .unwrap();
    m.apply(w.get(1).unwrap())
}

#[test]
fn symmetric_octagon_two_cycle() {
    let rule = skew(0, 2, 1, 4);
    let start = symmetric_octagon(rational(1, 1), rational(0, 1));
    let once = apply_rule(&rule, &start).unwrap();
    assert!(renormalized_second_vertex(&once).same_as(&q(0, 1)));
    let other = symmetric_octagon(rational(0, 1), rational(1, 1));
    let back = apply_rule(&rule, &other).unwrap();
    assert!(renormalized_second_vertex(&back).same_as(&q(1, 0)));
}

#[test]
fn symmetric_octagon_image_is_symmetric() {
    let rule = skew(0, 2, 1, 4);
    let w = symmetric_octagon(rational(2, 3), rational(-1, 5));
    let out = apply_rule(&rule, &w).unwrap();
    let rot = |p: &ProjPoint<Rational>| {
        let [x, y, z] = p.coords().clone();
        ProjPoint::new([-y, x, z]).unwrap()
    };
    for i in 0..8 {
        assert!(rot(out.get(i).unwrap()).same_as(out.get(i + 2).unwrap()));
    }
}

#[test]
fn equal_length_inverse_round_trip() {
    for (params, seed) in [((0, 2, 1, 3), 0u64), ((0, 3, 1, 4), 100)] {
        let p = SkewParams::new(params.0, params.1, params.2, params.3).unwrap();
        let inv = LocalRule::Skew(p.equal_length_inverse().unwrap());
        let mut tested = 0;
        for trial in 0.. {
            if tested == 10 {
                break;
            }
            let mut rng = trial_rng(seed + trial, 0, 0);
            let pts: Vec<_> = (0..14).map(|_| random_affine_rational(&mut rng)).collect();
            if !general_linear_position(&pts) {
                continue;
            }
            let w = PolygonWindow::interval(0, pts).unwrap();
            let there = apply_rule(&LocalRule::Skew(p), &w).unwrap();
            let back = apply_rule(&inv, &there).unwrap();
            assert!(!back.is_empty());
            tested += 1;
            for i in back.indices() {
                assert!(
                    back.get(i).unwrap().same_as(w.get(i).unwrap()),
                    "{p} trial {trial} index {i}"
                );
            }
        }
    }
}

#[test]
fn truly_skew_has_no_inverse() {
    let p = SkewParams::new(0, 2, 1, 4).unwrap();
    assert_eq!(
        p.equal_length_inverse(),
        Err(LatticeError::NotEqualLength(p))
    );
}

#[test]
fn projective_equivariance() {
    let rules = [
        skew(0, 2, 1, 3),
        skew(0, 2, 1, 4),
        skew(-1, 3, 0, 2),
        LocalRule::Heat,
    ];
    let mut checked = 0;
    for k in 0..100u64 {
        let rule = rules[k as usize % rules.len()];
        let w = random_fp_window(k, 12, k % 2 == 0);
        let a = random_transform(k);
        let (Ok(lhs), Ok(rhs)) = (apply_rule(&rule, &w.transformed(&a)), apply_rule(&rule, &w))
        else {
            continue;
        };
        assert!(lhs.same_as(&rhs.transformed(&a)), "{rule} instance {k}");
        checked += 1;
    }
    assert!(checked >= 95);
}

#[test]
fn shift_equivariance() {
    for k in 0..20u64 {
        let rule = [skew(0, 2, 1, 4), skew(0, 2, 1, 3), LocalRule::Heat][k as usize % 3];
        for cyclic in [false, true] {
            let w = random_fp_window(1000 + k, 11, cyclic);
            for j in [-3, 1, 5] {
                let lhs = apply_rule(&rule, &w.shift(j)).unwrap();
                let rhs = apply_rule(&rule, &w).unwrap().shift(j);
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn shift_rule_is_reindexing() {
    let w = random_fp_window(5, 8, true);
    assert_eq!(apply_rule(&LocalRule::Shift(3), &w).unwrap(), w.shift(3));
    assert_eq!(w.shift(8), w);
    assert_eq!(w.shift(0), w);
    let w = random_fp_window(6, 6, false);
    let shifted = w.shift(2);
    assert_eq!(shifted.indexing(), Indexing::Interval(-5, 0));
    assert_eq!(shifted.vertices(), w.vertices());
}

#[test]
fn direction_reversal_conjugates() {
    for (k, &(a, b, c, d)) in [(0, 2, 1, 3), (0, 2, 1, 4), (0, 3, 1, 7), (-2, 1, 0, 5)]
        .iter()
        .enumerate()
    {
        let p = SkewParams::new(a, b, c, d).unwrap();
        for cyclic in [false, true] {
            let w = random_fp_window(2000 + k as u64, 16, cyclic);
            let lhs = apply_rule(&LocalRule::Skew(p.reversed()), &w.reversed()).unwrap();
            let rhs = apply_rule(&LocalRule::Skew(p), &w).unwrap().reversed();
            assert_eq!(lhs, rhs, "{p}");
        }
    }
}

#[test]
fn scaled_map_is_cartesian_power() {
    let p = SkewParams::new(0, 2, 1, 4).unwrap();
    for k in 2..=3usize {
        let big = LocalRule::Skew(p.scaled(k as i64).unwrap());
        let w = random_fp_window(3000 + k as u64, 9 * k, true);
        let out = apply_rule(&big, &w).unwrap();
        for r in 0..k {
            let small = apply_rule(&LocalRule::Skew(p), &w.residue_class(k, r).unwrap()).unwrap();
            assert_eq!(out.residue_class(k, r).unwrap(), small);
        }
    }
}

#[test]
fn iterates_compose() {
    let rule = skew(0, 2, 1, 3);
    let w = random_fp_window(7, 20, false);
    let twice = apply_rule(&rule, &apply_rule(&rule, &w).unwrap()).unwrap();
    assert_eq!(iterate_rule(&rule, &w, 2).unwrap(), twice);
}

#[test]
fn dominance_witnesses() {
    assert!(dominance_test(&skew(0, 2, 1, 4), 8, P, 3, 1));
    assert!(dominance_test(&skew(0, 2, 1, 3), 5, P, 3, 1));
    assert!(dominance_test(&LocalRule::Shift(2), 6, P, 1, 1));
    assert!(!dominance_test(&skew(0, 2, 1, 4), 4, P, 3, 1));
}
