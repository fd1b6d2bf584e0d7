use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::UniPoly;
use super::rational::Rational;
use super::FieldError;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "matrix data does not match its shape"
        );
        Self { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "incompatible matrix shapes");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "incompatible vector length");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols))
            .map(|k| self.get(k, k).clone())
            .sum()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `det(xI − m)` by the Faddeev–LeVerrier recursion, which stays in the
/// integers because each trace is divisible by its step index.
pub fn charpoly(m: &IntMatrix) -> Result<UniPoly<Rational>, FieldError> {
    if m.rows != m.cols {
        return Err(FieldError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        mk = m.mul(&mk);
        for j in 0..n {
            mk.data[j * n + j] += &coeffs[n - k + 1];
        }
        let t = m.mul(&mk).trace();
        let (q, r) = t.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = -q;
    }
    Ok(UniPoly::new(
        coeffs.into_iter().map(Rational::from_integer).collect(),
    ))
}

/// Integer roots of a polynomial with rational coefficients, with
/// multiplicities, in increasing order.
pub fn integer_roots(p: &UniPoly<Rational>) -> Vec<(BigInt, usize)> {
    if p.is_zero() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rest = p.clone();
    let zero_mult = rest.t_adic_order().unwrap_or(0);
    if zero_mult > 0 {
        rest = UniPoly::new(rest.coeffs()[zero_mult..].to_vec());
    }
    // Any integer root divides the constant term once denominators are
    // cleared.
    let lcm = rest
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let c0 = (rest.coeff(0) * Rational::from_integer(lcm))
        .to_integer()
        .abs();
    let mut candidates = Vec::new();
    if !c0.is_zero() {
        for d in divisors(&c0) {
            candidates.push(-d.clone());
            candidates.push(d);
        }
    }
    if zero_mult > 0 {
        candidates.push(BigInt::zero());
    }
    candidates.sort();
    candidates.dedup();
    for c in candidates {
        let m = p.root_multiplicity(&Rational::from_integer(c.clone()));
        if m > 0 {
            out.push((c, m));
        }
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let e = n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;

    fn from_linear_factors(roots: &[i64]) -> UniPoly<Rational> {
        roots
            .iter()
            .fold(UniPoly::constant(rational(1, 1)), |acc, &r| {
                acc * UniPoly::linear(rational(-r, 1), rational(1, 1))
            })
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(
            charpoly(&IntMatrix::identity(2)).unwrap(),
            from_linear_factors(&[1, 1])
        );
        assert_eq!(
            charpoly(&IntMatrix::zeros(3, 3)).unwrap(),
            from_linear_factors(&[0, 0, 0])
        );
    }

    #[test]
    fn non_square_rejected() {
        assert_eq!(
            charpoly(&IntMatrix::zeros(2, 3)),
            Err(FieldError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn companion_matrix_roots() {
        // Companion matrix of (x-3)(x+2)^2 = x^3 + x^2 - 8x - 12.
        let m = IntMatrix::from_rows(&[vec![0, 0, 12], vec![1, 0, 8], vec![0, 1, -1]]);
        let cp = charpoly(&m).unwrap();
        assert_eq!(cp, from_linear_factors(&[3, -2, -2]));
        assert_eq!(
            integer_roots(&cp),
            vec![(BigInt::from(-2), 2), (BigInt::from(3), 1)]
        );
    }
}
