use skew_pentagram::dskp::{
    all_residuals, generic_rational_orbit, menelaus_orbit_check, DskpError, EqualLengthOrbit,
};
use skew_pentagram::field::{rational, Field, Fp, Rational};
use skew_pentagram::geometry::ProjPoint;
use skew_pentagram::lattice::PolygonWindow;
use skew_pentagram::sample::{random_affine_fp, random_affine_rational, trial_rng};

fn rational_orbit(
    b: i64,
    c: i64,
    len: usize,
    steps: usize,
    seed: u64,
) -> EqualLengthOrbit<Rational> {
    generic_rational_orbit(b, c, len, steps, 8, seed).expect("no generic orbit")
}

#[test]
fn pulled_back_orbits_solve_dskp() {
    for (b, c) in [(2, 1), (3, 1), (3, 2)] {
        let orbit = rational_orbit(b, c, 36, 4, 40 + b as u64);
        for k in 0..2 {
            let patch = orbit.to_dskp(k, 8).unwrap();
            let res = all_residuals(&patch).unwrap();
            assert!(res.len() >= 20, "({b},{c}) only {} points", res.len());
            for (r, w) in res {
                assert_eq!(w, rational(-1, 1), "({b},{c}) coordinate {k} at {r:?}");
            }
        }
    }
}

#[test]
fn pulled_back_orbits_over_fp() {
    let p = 10009;
    let mut rng = trial_rng(3, p, 0);
    let pts: Vec<_> = (0..30).map(|_| random_affine_fp(&mut rng, p)).collect();
    let orbit = EqualLengthOrbit::new(2, 1, PolygonWindow::interval(0, pts).unwrap(), 5).unwrap();
    let res = all_residuals(&orbit.to_dskp(0, 8).unwrap()).unwrap();
    assert!(res.len() >= 20);
    assert!(res.iter().all(|(_, w)| *w == Fp::new(-1, p)));
}

#[test]
fn menelaus_along_orbit() {
    for (b, c) in [(2, 1), (3, 1), (3, 2)] {
        let orbit = rational_orbit(b, c, 30, 3, 7);
        for m in 0..2 {
            for i in 0..4 {
                for k in 0..2 {
                    assert_eq!(
                        menelaus_orbit_check(&orbit, i, m, k).unwrap(),
                        rational(-1, 1)
                    );
                }
            }
        }
    }
}

#[test]
fn printed_last_factor_does_not_close() {
    // The third factor written with x_{i+b+c,m+2} in place of x_{i+b+c,m}.
    let (b, c) = (2, 1);
    let orbit = rational_orbit(b, c, 30, 3, 7);
    let x = |i: i64, m: usize| orbit.coord(i, m, 0).unwrap();
    let (i, m) = (1, 0);
    let f1 = (x(i + b + c, m) - x(i, m + 1))
        .div(&(x(i, m + 1) - x(i + c, m + 1)))
        .unwrap();
    let f2 = (x(i + c, m + 1) - x(i, m + 2))
        .div(&(x(i, m + 2) - x(i + b + c, m + 1)))
        .unwrap();
    let printed = (x(i + b + c, m + 1) - x(i + b, m + 1))
        .div(&(x(i + b, m + 1) - x(i + b + c, m + 2)))
        .unwrap();
    let corrected = (x(i + b + c, m + 1) - x(i + b, m + 1))
        .div(&(x(i + b, m + 1) - x(i + b + c, m)))
        .unwrap();
    assert_eq!(f1.clone() * f2.clone() * corrected, rational(-1, 1));
    assert_ne!(f1 * f2 * printed, rational(-1, 1));
}

#[test]
fn perturbed_orbit_fails() {
    let (b, c) = (2, 1);
    let orbit = rational_orbit(b, c, 24, 3, 9);
    let mut iterates = orbit.iterates().to_vec();
    let mut pts = iterates[1].vertices().to_vec();
    let (x, y) = pts[3].to_affine().unwrap();
    pts[3] = ProjPoint::affine(x + rational(1, 7), y);
    iterates[1] = PolygonWindow::new(iterates[1].indexing(), pts).unwrap();
    let bent = EqualLengthOrbit::from_iterates(b, c, iterates).unwrap();
    assert_ne!(
        menelaus_orbit_check(&bent, 0, 0, 0).unwrap(),
        rational(-1, 1)
    );
    assert_eq!(
        menelaus_orbit_check(&orbit, 0, 0, 0).unwrap(),
        rational(-1, 1)
    );
}

#[test]
fn orbit_needs_coprime_steps() {
    let orbit = rational_orbit(2, 1, 12, 1, 1);
    assert!(orbit.to_dskp(0, 3).is_ok());
    let mut rng = trial_rng(1, 0, 0);
    let pts: Vec<_> = (0..20).map(|_| random_affine_rational(&mut rng)).collect();
    let orbit = EqualLengthOrbit::new(4, 2, PolygonWindow::interval(0, pts).unwrap(), 1).unwrap();
    assert_eq!(
        orbit.to_dskp(0, 3).unwrap_err(),
        DskpError::NotCoprime { b: 4, c: 2 }
    );
}
