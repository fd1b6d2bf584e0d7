use skew_pentagram::degree::{
    degree_sequence, estimate_dd_from, multidegree_oracle, DegreeConfig, GrowthLabel, WindowShape,
};
use skew_pentagram::lattice::{rule_degree, LocalRule};

const PRIMES: [u64; 2] = [10009, 65537];

// Reference values from an independent computation: each vertex on a random
// line over F_p, iterated with sympy polynomials and gcd reduction.
const PENTAGRAM_DEGREES: [usize; 5] = [4, 13, 28, 49, 76];
const TRULY_SKEW_DEGREES: [usize; 5] = [4, 16, 64, 256, 1024];

fn skew(a: i64, b: i64, c: i64, d: i64) -> LocalRule {
    LocalRule::skew(a, b, c, d).unwrap()
}

#[test]
fn pentagram_map_degrees_grow_quadratically() {
    let seq = degree_sequence(&skew(0, 2, 1, 3), &DegreeConfig::new(5, &PRIMES, 3, 11)).unwrap();
    assert_eq!(seq.consensus, PENTAGRAM_DEGREES);
    assert_eq!(seq.unresolved(), 0);
    let est = estimate_dd_from(&seq).unwrap();
    assert_eq!(est.label, GrowthLabel::PolynomialLike);
    assert!(est.ratio_estimates.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn truly_skew_degrees_quadruple() {
    let seq = degree_sequence(&skew(0, 2, 1, 4), &DegreeConfig::new(5, &PRIMES, 3, 11)).unwrap();
    assert_eq!(seq.consensus, TRULY_SKEW_DEGREES);
    assert_eq!(seq.unresolved(), 0);
    let est = estimate_dd_from(&seq).unwrap();
    assert_eq!(est.label, GrowthLabel::ExponentialLike);
}

#[test]
fn other_equal_length_map() {
    let seq = degree_sequence(&skew(0, 3, 1, 4), &DegreeConfig::new(4, &PRIMES, 2, 5)).unwrap();
    assert_eq!(seq.consensus, [4, 13, 28, 49]);
}

#[test]
fn oracle_matches_sequence() {
    let md = multidegree_oracle(&skew(0, 2, 1, 3), 1, 193, 1).unwrap();
    assert_eq!(
        md.per_slot.iter().map(|s| s.1).collect::<Vec<_>>(),
        vec![1, 1, 1, 1]
    );
    let md = multidegree_oracle(&skew(0, 2, 1, 3), 2, 193, 1).unwrap();
    assert_eq!(
        md.per_slot.iter().map(|s| s.1).collect::<Vec<_>>(),
        vec![1, 1, 3, 3, 3, 1, 1]
    );
    assert_eq!(md.total, 13);
    let md = multidegree_oracle(&skew(0, 2, 1, 4), 2, 193, 1).unwrap();
    assert_eq!(
        md.per_slot.iter().map(|s| s.1).collect::<Vec<_>>(),
        vec![1, 2, 3, 2, 3, 2, 2, 1]
    );
    assert_eq!(md.total, 16);
    let md = multidegree_oracle(&LocalRule::Heat, 1, 193, 1).unwrap();
    assert_eq!(md.total, 4);
    assert_eq!(md.total, rule_degree(&LocalRule::Heat));
}

#[test]
fn closed_polygons_do_not_exceed_infinite_ones() {
    let mut cfg = DegreeConfig::new(3, &PRIMES, 2, 9);
    cfg.shape = WindowShape::Cyclic(8);
    let closed = degree_sequence(&skew(0, 2, 1, 4), &cfg).unwrap();
    for (m, d) in closed.consensus.iter().enumerate() {
        assert!(*d <= TRULY_SKEW_DEGREES[m]);
    }
    cfg.shape = WindowShape::Cyclic(7);
    let closed = degree_sequence(&skew(0, 2, 1, 3), &cfg).unwrap();
    for (m, d) in closed.consensus.iter().enumerate() {
        assert!(*d <= PENTAGRAM_DEGREES[m]);
    }
}

#[test]
fn submultiplicative() {
    for degs in [PENTAGRAM_DEGREES, TRULY_SKEW_DEGREES] {
        for i in 1..=degs.len() {
            for j in 1..=degs.len() - i {
                assert!(degs[i + j - 1] <= degs[i - 1] * degs[j - 1]);
            }
        }
    }
}
