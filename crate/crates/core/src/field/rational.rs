use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, Projective, Ring};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator (maintained by `num_rational`).
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

impl Projective for Rational {
    /// Integer coordinates with gcd 1 and a positive first nonzero entry.
    fn normalize_triple(v: [Self; 3]) -> [Self; 3] {
        let ints = primitive_integer_triple(&v);
        ints.map(Rational::from_integer)
    }
}

/// Clears denominators and content of a rational triple. The all-zero triple
/// is returned unchanged.
pub fn primitive_integer_triple(v: &[Rational; 3]) -> [BigInt; 3] {
    let lcm = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: [BigInt; 3] =
        std::array::from_fn(|k| (v[k].numer() * (&lcm / v[k].denom())).clone());
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    let lead_negative = ints
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative());
    for c in ints.iter_mut() {
        *c = &*c / &g;
        if lead_negative {
            *c = -&*c;
        }
    }
    ints
}
