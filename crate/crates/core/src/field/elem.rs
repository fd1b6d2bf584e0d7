use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational;
use super::prime::Fp;
use super::quad::QuadExt;
use super::rational::Rational;
use super::{scale_first_nonzero_to_one, Field, FieldError, Projective, Ring};

/// Element of one of the exact fields ℚ, ℚ(i), F_p, F_{p²}.
///
/// Binary operators panic when the two operands live in different fields;
/// the `checked_*` methods report the mismatch instead. Nothing is ever
/// promoted from one field into another implicitly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(Rational),
    Gaussian(GaussianRational),
    Prime(Fp),
    Quad(QuadExt),
}

impl FieldElem {
    /// Short name of the field, e.g. `Q`, `Q(i)`, `F_97`, `F_97^2`.
    pub fn field_name(&self) -> String {
        match self {
            FieldElem::Rational(_) => "Q".into(),
            FieldElem::Gaussian(_) => "Q(i)".into(),
            FieldElem::Prime(x) => format!("F_{}", x.modulus()),
            FieldElem::Quad(x) => format!("F_{}^2", x.modulus()),
        }
    }

    pub fn same_field(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElem::Rational(_), FieldElem::Rational(_)) => true,
            (FieldElem::Gaussian(_), FieldElem::Gaussian(_)) => true,
            (FieldElem::Prime(a), FieldElem::Prime(b)) => a.modulus() == b.modulus(),
            (FieldElem::Quad(a), FieldElem::Quad(b)) => {
                a.modulus() == b.modulus() && a.nonresidue() == b.nonresidue()
            }
            _ => false,
        }
    }

    fn require_same(&self, other: &Self) -> Result<(), FieldError> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(FieldError::Mismatch(self.field_name(), other.field_name()))
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.require_same(rhs)?;
        Ok(self.clone() + rhs.clone())
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.require_same(rhs)?;
        Ok(self.clone() - rhs.clone())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.require_same(rhs)?;
        Ok(self.clone() * rhs.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.require_same(rhs)?;
        self.div(rhs)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElem::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_gaussian(&self) -> Option<&GaussianRational> {
        match self {
            FieldElem::Gaussian(z) => Some(z),
            _ => None,
        }
    }

    pub fn as_prime(&self) -> Option<Fp> {
        match self {
            FieldElem::Prime(x) => Some(*x),
            _ => None,
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => write!(f, "{q}"),
            FieldElem::Gaussian(z) => write!(f, "{z}"),
            FieldElem::Prime(x) => write!(f, "{x}"),
            FieldElem::Quad(x) => write!(f, "{x:?}"),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<Rational> for FieldElem {
    fn from(q: Rational) -> Self {
        FieldElem::Rational(q)
    }
}

impl From<GaussianRational> for FieldElem {
    fn from(z: GaussianRational) -> Self {
        FieldElem::Gaussian(z)
    }
}

impl From<Fp> for FieldElem {
    fn from(x: Fp) -> Self {
        FieldElem::Prime(x)
    }
}

impl From<QuadExt> for FieldElem {
    fn from(x: QuadExt) -> Self {
        FieldElem::Quad(x)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldElem {
            type Output = Self;
            fn $method(self, rhs: Self) -> Self {
                match (self, rhs) {
                    (FieldElem::Rational(a), FieldElem::Rational(b)) => {
                        FieldElem::Rational(a.$method(b))
                    }
                    (FieldElem::Gaussian(a), FieldElem::Gaussian(b)) => {
                        FieldElem::Gaussian(a.$method(b))
                    }
                    (FieldElem::Prime(a), FieldElem::Prime(b)) => FieldElem::Prime(a.$method(b)),
                    (FieldElem::Quad(a), FieldElem::Quad(b)) => FieldElem::Quad(a.$method(b)),
                    (a, b) => panic!("{}", FieldError::Mismatch(a.field_name(), b.field_name())),
                }
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for FieldElem {
    type Output = Self;
    fn neg(self) -> Self {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Gaussian(a) => FieldElem::Gaussian(-a),
            FieldElem::Prime(a) => FieldElem::Prime(-a),
            FieldElem::Quad(a) => FieldElem::Quad(-a),
        }
    }
}

macro_rules! dispatch {
    ($self:expr, $x:ident => $body:expr) => {
        match $self {
            FieldElem::Rational($x) => FieldElem::Rational($body),
            FieldElem::Gaussian($x) => FieldElem::Gaussian($body),
            FieldElem::Prime($x) => FieldElem::Prime($body),
            FieldElem::Quad($x) => FieldElem::Quad($body),
        }
    };
}

impl Ring for FieldElem {
    fn zero_like(&self) -> Self {
        dispatch!(self, x => x.zero_like())
    }
    fn one_like(&self) -> Self {
        dispatch!(self, x => x.one_like())
    }
    fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(x) => Ring::is_zero(x),
            FieldElem::Gaussian(x) => Ring::is_zero(x),
            FieldElem::Prime(x) => x.is_zero(),
            FieldElem::Quad(x) => x.is_zero(),
        }
    }
    fn from_i64_like(&self, n: i64) -> Self {
        dispatch!(self, x => x.from_i64_like(n))
    }
}

impl Field for FieldElem {
    fn inv(&self) -> Option<Self> {
        Some(match self {
            FieldElem::Rational(x) => FieldElem::Rational(x.inv()?),
            FieldElem::Gaussian(x) => FieldElem::Gaussian(x.inv()?),
            FieldElem::Prime(x) => FieldElem::Prime(x.inv()?),
            FieldElem::Quad(x) => FieldElem::Quad(x.inv()?),
        })
    }
    fn characteristic(&self) -> u64 {
        match self {
            FieldElem::Rational(_) | FieldElem::Gaussian(_) => 0,
            FieldElem::Prime(x) => x.modulus(),
            FieldElem::Quad(x) => x.modulus(),
        }
    }
}

impl Projective for FieldElem {
    fn normalize_triple(v: [Self; 3]) -> [Self; 3] {
        if let [FieldElem::Rational(a), FieldElem::Rational(b), FieldElem::Rational(c)] = &v {
            let n = Rational::normalize_triple([a.clone(), b.clone(), c.clone()]);
            return n.map(FieldElem::Rational);
        }
        scale_first_nonzero_to_one(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;

    #[test]
    fn mismatch_is_reported() {
        let a = FieldElem::Rational(rational(1, 2));
        let b = FieldElem::Prime(Fp::new(3, 7));
        assert_eq!(
            a.checked_add(&b),
            Err(FieldError::Mismatch("Q".into(), "F_7".into()))
        );
        let c = FieldElem::Prime(Fp::new(3, 11));
        assert!(b.checked_mul(&c).is_err());
    }

    #[test]
    #[should_panic(expected = "mismatched")]
    fn operator_mismatch_panics() {
        let _ = FieldElem::Rational(rational(1, 2)) + FieldElem::Gaussian(GaussianRational::i());
    }

    #[test]
    fn division_by_zero() {
        let a = FieldElem::Prime(Fp::new(3, 7));
        assert_eq!(
            a.checked_div(&a.zero_like()),
            Err(FieldError::DivisionByZero)
        );
    }
}
