use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::prime::Fp;
use super::{scale_first_nonzero_to_one, Field, Projective, Ring};

/// Element `a + b·ω` of `F_{p²} = F_p[ω]/(ω² − r)`, `r` a non-residue mod `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Fp,
    b: Fp,
    r: u64,
}

impl QuadExt {
    pub fn new(a: Fp, b: Fp, r: u64) -> Self {
        assert_eq!(a.modulus(), b.modulus());
        Self {
            a,
            b,
            r: r % a.modulus(),
        }
    }

    pub fn from_base(a: Fp, r: u64) -> Self {
        Self::new(a, a.zero_like(), r)
    }

    pub fn parts(&self) -> (Fp, Fp) {
        (self.a, self.b)
    }

    pub fn nonresidue(&self) -> u64 {
        self.r
    }

    pub fn modulus(&self) -> u64 {
        self.a.modulus()
    }

    fn check(&self, rhs: &Self) {
        assert!(
            self.a.modulus() == rhs.a.modulus() && self.r == rhs.r,
            "mismatched quadratic extensions"
        );
    }

    /// Frobenius conjugate `a − bω`.
    pub fn conj(&self) -> Self {
        Self {
            a: self.a,
            b: -self.b,
            r: self.r,
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}w", self.a, self.b)
    }
}

impl Add for QuadExt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        Self {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            r: self.r,
        }
    }
}

impl Sub for QuadExt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        Self {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
            r: self.r,
        }
    }
}

impl Mul for QuadExt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let r = self.a.from_i64_like(self.r as i64);
        Self {
            a: self.a * rhs.a + r * self.b * rhs.b,
            b: self.a * rhs.b + self.b * rhs.a,
            r: self.r,
        }
    }
}

impl Neg for QuadExt {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            r: self.r,
        }
    }
}

impl Ring for QuadExt {
    fn zero_like(&self) -> Self {
        Self {
            a: self.a.zero_like(),
            b: self.a.zero_like(),
            r: self.r,
        }
    }
    fn one_like(&self) -> Self {
        Self {
            a: self.a.one_like(),
            b: self.a.zero_like(),
            r: self.r,
        }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self {
            a: self.a.from_i64_like(n),
            b: self.a.zero_like(),
            r: self.r,
        }
    }
}

impl Field for QuadExt {
    fn inv(&self) -> Option<Self> {
        // (a + bω)(a − bω) = a² − r b² ∈ F_p
        let r = self.a.from_i64_like(self.r as i64);
        let n = self.a * self.a - r * self.b * self.b;
        let ninv = n.inv()?;
        Some(Self {
            a: self.a * ninv,
            b: -self.b * ninv,
            r: self.r,
        })
    }
    fn characteristic(&self) -> u64 {
        self.a.modulus()
    }
}

impl Projective for QuadExt {
    fn normalize_triple(v: [Self; 3]) -> [Self; 3] {
        scale_first_nonzero_to_one(v)
    }
}
