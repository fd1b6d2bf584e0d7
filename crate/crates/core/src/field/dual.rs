use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Projective, Ring};

/// Dual number `value + slope·ε` with `ε² = 0`, for forward-mode
/// differentiation of polynomial maps.
#[derive(Clone, PartialEq, Debug)]
pub struct Dual<R> {
    pub value: R,
    pub slope: R,
}

impl<R: Ring> Dual<R> {
    pub fn constant(value: R) -> Self {
        let slope = value.zero_like();
        Self { value, slope }
    }

    /// The independent variable at `value` (slope 1).
    pub fn variable(value: R) -> Self {
        let slope = value.one_like();
        Self { value, slope }
    }
}

impl<R: Ring> Add for Dual<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            value: self.value + rhs.value,
            slope: self.slope + rhs.slope,
        }
    }
}

impl<R: Ring> Sub for Dual<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            value: self.value - rhs.value,
            slope: self.slope - rhs.slope,
        }
    }
}

impl<R: Ring> Mul for Dual<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let slope = self.value.clone() * rhs.slope + self.slope * rhs.value.clone();
        Self {
            value: self.value * rhs.value,
            slope,
        }
    }
}

impl<R: Ring> Neg for Dual<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: -self.value,
            slope: -self.slope,
        }
    }
}

impl<R: Ring> Ring for Dual<R> {
    fn zero_like(&self) -> Self {
        Self::constant(self.value.zero_like())
    }
    fn one_like(&self) -> Self {
        Self::constant(self.value.one_like())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.slope.is_zero()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::constant(self.value.from_i64_like(n))
    }
}

/// Only elements with nonzero value are invertible, so this is a field in
/// the loose sense needed for dehomogenizing: `inv` fails on `ε`.
impl<R: Field> Field for Dual<R> {
    fn inv(&self) -> Option<Self> {
        let vi = self.value.inv()?;
        let slope = -(self.slope.clone() * vi.clone() * vi.clone());
        Some(Self { value: vi, slope })
    }
    fn characteristic(&self) -> u64 {
        self.value.characteristic()
    }
}

impl<R: Ring> Projective for Dual<R> {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    #[test]
    fn derivative_of_cube() {
        let x = Dual::variable(Fp::new(5, 101));
        let y = x.pow(3);
        assert_eq!(y.value, Fp::new(125, 101));
        assert_eq!(y.slope, Fp::new(75, 101));
    }

    #[test]
    fn derivative_of_reciprocal() {
        let x = Dual::variable(Fp::new(4, 101));
        let y = x.inv().unwrap();
        assert_eq!(y.value * Fp::new(4, 101), Fp::new(1, 101));
        assert_eq!(y.slope * Fp::new(16, 101), Fp::new(-1, 101));
    }
}
