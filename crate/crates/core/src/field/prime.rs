use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::elem::FieldElem;
use super::quad::QuadExt;
use super::{scale_first_nonzero_to_one, Field, FieldError, Projective, Ring};

/// Primes ≡ 1 (mod 8): both `i` and `√2` exist in each of these fields.
pub const DEFAULT_PRIMES: [u64; 4] = [97, 193, 257, 10009];

/// Residue in `[0, p)` of the prime field `F_p`, `p < 2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn new(value: i64, p: u64) -> Self {
        assert!((2..(1 << 32)).contains(&p), "modulus out of range: {p}");
        let v = value.rem_euclid(p as i64) as u64;
        Self { value: v, p }
    }

    pub fn from_u64(value: u64, p: u64) -> Self {
        assert!((2..(1 << 32)).contains(&p), "modulus out of range: {p}");
        Self {
            value: value % p,
            p,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Legendre symbol as an element of {0, 1, -1}.
    pub fn legendre(&self) -> i8 {
        if self.value == 0 {
            return 0;
        }
        if self.pow((self.p - 1) / 2).value == 1 {
            1
        } else {
            -1
        }
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(
            self.p, rhs.p,
            "mismatched prime fields F_{} and F_{}",
            self.p, rhs.p
        );
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        let s = self.value + rhs.value;
        Self {
            value: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.p - rhs.value
        };
        Self {
            value: v,
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        Self {
            value: self.value * rhs.value % self.p,
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self {
            value: if self.value == 0 {
                0
            } else {
                self.p - self.value
            },
            p: self.p,
        }
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Self {
            value: 0,
            p: self.p,
        }
    }
    fn one_like(&self) -> Self {
        Self {
            value: 1,
            p: self.p,
        }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::new(n, self.p)
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // extended Euclid on (value, p)
        let (mut r0, mut r1) = (self.p as i64, self.value as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(Self::new(t0, self.p))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

impl Projective for Fp {
    fn normalize_triple(v: [Self; 3]) -> [Self; 3] {
        scale_first_nonzero_to_one(v)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Square root in `F_p` by Tonelli–Shanks; returns the smaller of the two
/// roots, or `None` for a non-residue.
pub fn sqrt_mod(a: Fp) -> Option<Fp> {
    let p = a.modulus();
    if a.is_zero() {
        return Some(a);
    }
    if p == 2 {
        return Some(a);
    }
    if a.legendre() != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .map(|z| Fp::from_u64(z, p))
        .find(|z| z.legendre() == -1)
        .expect("odd prime has a non-residue");
    let mut m = s;
    let mut c = z.pow(q);
    let mut t = a.pow(q);
    let mut r = a.pow(q.div_ceil(2));
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t;
        while !t2.is_one() {
            t2 = t2 * t2;
            i += 1;
        }
        let b = c.pow(1 << (m - i - 1));
        m = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    let other = -r;
    Some(if other.value() < r.value() { other } else { r })
}

/// Smallest quadratic non-residue modulo an odd prime.
pub(crate) fn smallest_non_residue(p: u64) -> u64 {
    (2..p)
        .find(|&r| Fp::from_u64(r, p).legendre() == -1)
        .expect("odd prime has a non-residue")
}

/// Which field the square root of −1 lives in.
pub type ImaginaryUnit = FieldElem;

/// An element `x` with `x² = −1`: in `F_p` when `p ≡ 1 (mod 4)`, otherwise in
/// `F_{p²} = F_p[ω]/(ω² − r)` with `r` the smallest non-residue.
pub fn find_imaginary_unit(p: u64) -> Result<ImaginaryUnit, FieldError> {
    if p == 2 {
        return Err(FieldError::CharacteristicTwo);
    }
    if !is_prime(p) {
        return Err(FieldError::NotOddPrime(p));
    }
    let minus_one = Fp::new(-1, p);
    if p % 4 == 1 {
        let root = sqrt_mod(minus_one).expect("-1 is a residue for p = 1 mod 4");
        return Ok(FieldElem::Prime(root));
    }
    // x = b·ω with b² r = −1.
    let r = smallest_non_residue(p);
    let target = minus_one * Fp::from_u64(r, p).inv().expect("r is nonzero");
    let b = sqrt_mod(target).expect("-1/r is a residue when both are non-residues");
    Ok(FieldElem::Quad(QuadExt::new(Fp::new(0, p), b, r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let p = 10009;
        for v in 1..200 {
            let x = Fp::new(v, p);
            assert!((x * x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn default_primes_are_one_mod_eight() {
        for p in DEFAULT_PRIMES {
            assert!(is_prime(p));
            assert_eq!(p % 8, 1);
        }
    }

    #[test]
    fn sqrt_of_residues() {
        let p = 257;
        for v in 1..p {
            let a = Fp::from_u64(v, p);
            match sqrt_mod(a) {
                Some(r) => assert_eq!(r * r, a),
                None => assert_eq!(a.legendre(), -1),
            }
        }
    }

    #[test]
    fn imaginary_unit_small_primes() {
        assert_eq!(
            find_imaginary_unit(5).unwrap(),
            FieldElem::Prime(Fp::new(2, 5))
        );
        assert_eq!(
            find_imaginary_unit(13).unwrap(),
            FieldElem::Prime(Fp::new(5, 13))
        );
        assert_eq!(find_imaginary_unit(2), Err(FieldError::CharacteristicTwo));
        assert_eq!(find_imaginary_unit(9), Err(FieldError::NotOddPrime(9)));
    }

    #[test]
    fn imaginary_unit_in_f49_matches_exhaustive_search() {
        let unit = match find_imaginary_unit(7).unwrap() {
            FieldElem::Quad(q) => q,
            other => panic!("expected F_49 element, got {other:?}"),
        };
        let r = unit.nonresidue();
        let minus_one = QuadExt::from_base(Fp::new(-1, 7), r);
        let roots: Vec<QuadExt> = (0..7)
            .flat_map(|a| (0..7).map(move |b| (a, b)))
            .map(|(a, b)| QuadExt::new(Fp::new(a, 7), Fp::new(b, 7), r))
            .filter(|x| *x * *x == minus_one)
            .collect();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&unit));
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 97, 193, 257, 10007, 10009] {
            let x = find_imaginary_unit(p).unwrap();
            let sq = x.clone() * x.clone();
            assert!((sq + x.one_like()).is_zero(), "p = {p}");
        }
    }
}
