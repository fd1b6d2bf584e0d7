use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::UniPoly;
use super::{Field, Projective, Ring};

/// Exponent vector of a monomial `x0^e0 x1^e1 x2^e2`.
pub type Monomial = [u16; 3];

/// Sparse polynomial in three variables.
///
/// Terms are kept in lexicographic exponent order; zero coefficients are
/// never stored. As with [`UniPoly`], a zero element of the coefficient field
/// rides along for building constants.
#[derive(Clone, PartialEq)]
pub struct MPoly<F> {
    terms: BTreeMap<Monomial, F>,
    zero: F,
}

fn mono_add(a: &Monomial, b: &Monomial) -> Monomial {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn mono_div(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    Some([
        a[0].checked_sub(b[0])?,
        a[1].checked_sub(b[1])?,
        a[2].checked_sub(b[2])?,
    ])
}

fn mono_degree(m: &Monomial) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

impl<F: Ring> MPoly<F> {
    pub fn zero(like: &F) -> Self {
        Self {
            terms: BTreeMap::new(),
            zero: like.zero_like(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::term(c, [0, 0, 0])
    }

    pub fn term(c: F, m: Monomial) -> Self {
        let mut p = Self::zero(&c);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable `x_k`.
    pub fn var(k: usize, like: &F) -> Self {
        let mut m = [0; 3];
        m[k] = 1;
        Self::term(like.one_like(), m)
    }

    /// `[X, Y, Z]`
    pub fn vars(like: &F) -> [Self; 3] {
        [Self::var(0, like), Self::var(1, like), Self::var(2, like)]
    }

    pub fn from_terms(like: &F, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(like);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn field_zero(&self) -> &F {
        &self.zero
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(mono_degree).max()
    }

    /// Lowest total degree of a term; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(mono_degree).min()
    }

    pub fn degree_in(&self, k: usize) -> Option<usize> {
        self.terms.keys().map(|m| m[k] as usize).max()
    }

    pub fn min_degree_in(&self, k: usize) -> Option<usize> {
        self.terms.keys().map(|m| m[k] as usize).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(mono_degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| mono_degree(m) == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
            zero: self.zero.clone(),
        }
    }

    /// Coefficient of `x_k^e` viewed as a polynomial in the other variables.
    pub fn coeff_in(&self, k: usize, e: u16) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m[k] == e)
                .map(|(m, c)| {
                    let mut m = *m;
                    m[k] = 0;
                    (m, c.clone())
                })
                .collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(&self.zero);
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone() * s.clone());
        }
        out
    }

    pub fn eval(&self, x: &[F; 3]) -> F {
        let mut powers: [Vec<F>; 3] = std::array::from_fn(|_| vec![self.zero.one_like()]);
        let mut acc = self.zero.clone();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for k in 0..3 {
                let e = m[k] as usize;
                while powers[k].len() <= e {
                    let next = powers[k].last().unwrap().clone() * x[k].clone();
                    powers[k].push(next);
                }
                if e > 0 {
                    t = t * powers[k][e].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Composition `self(g0, g1, g2)`.
    pub fn substitute(&self, g: &[MPoly<F>; 3]) -> Self {
        let mut powers: [Vec<MPoly<F>>; 3] =
            std::array::from_fn(|_| vec![MPoly::constant(self.zero.one_like())]);
        let mut acc = Self::zero(&self.zero);
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for k in 0..3 {
                let e = m[k] as usize;
                while powers[k].len() <= e {
                    let next = powers[k].last().unwrap().clone() * g[k].clone();
                    powers[k].push(next);
                }
                if e > 0 {
                    t = t * powers[k][e].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Evaluates on the parametrized line `p + t·q`.
    pub fn restrict_to_line(&self, p: &[F; 3], q: &[F; 3]) -> UniPoly<F> {
        let coords: [UniPoly<F>; 3] =
            std::array::from_fn(|k| UniPoly::linear(p[k].clone(), q[k].clone()));
        let mut powers: [Vec<UniPoly<F>>; 3] =
            std::array::from_fn(|_| vec![UniPoly::constant(self.zero.one_like())]);
        let mut acc = UniPoly::zero(&self.zero);
        for (m, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for k in 0..3 {
                let e = m[k] as usize;
                while powers[k].len() <= e {
                    let next = powers[k].last().unwrap().clone() * coords[k].clone();
                    powers[k].push(next);
                }
                if e > 0 {
                    t = t * powers[k][e].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn partial(&self, k: usize) -> Self {
        let mut out = Self::zero(&self.zero);
        for (m, c) in &self.terms {
            if m[k] == 0 {
                continue;
            }
            let mut d = *m;
            d[k] -= 1;
            out.add_term(d, c.clone() * c.from_i64_like(m[k] as i64));
        }
        out
    }

    pub fn map_coeffs<G: Ring>(&self, like: &G, f: impl Fn(&F) -> G) -> MPoly<G> {
        let mut out = MPoly::zero(like);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// Sets `x_k = 1`.
    pub fn dehomogenize(&self, k: usize) -> Self {
        let mut out = Self::zero(&self.zero);
        for (m, c) in &self.terms {
            let mut m = *m;
            m[k] = 0;
            out.add_term(m, c.clone());
        }
        out
    }

    /// Substitutes `x_j ↦ x_j + shift_j` for every variable.
    pub fn translate(&self, shift: &[F; 3]) -> Self {
        let vars = Self::vars(&self.zero);
        let g: [Self; 3] =
            std::array::from_fn(|k| vars[k].clone() + Self::constant(shift[k].clone()));
        self.substitute(&g)
    }

    pub fn pow(&self, e: u32) -> Self {
        Ring::pow(self, e as u64)
    }

    fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }
}

impl<F: Field> MPoly<F> {
    /// Exact quotient `self / divisor`, or `None` if the division is not
    /// exact. Uses lexicographic leading terms.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.zero);
        while let Some((m, c)) = rem.leading() {
            let qm = mono_div(m, lm)?;
            let qc = c.clone() * lc_inv.clone();
            let t = Self::term(qc.clone(), qm);
            rem = rem - t * divisor.clone();
            quot.add_term(qm, qc);
        }
        Some(quot)
    }
}

impl<F: Ring + fmt::Debug> fmt::Debug for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["X", "Y", "Z"];
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut s = format!("({c:?})");
                for k in 0..3 {
                    match m[k] {
                        0 => {}
                        1 => s.push_str(&format!("*{}", names[k])),
                        e => s.push_str(&format!("*{}^{e}", names[k])),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Ring> Add for MPoly<F> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<F: Ring> Sub for MPoly<F> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<F: Ring> Neg for MPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
            zero: self.zero,
        }
    }
}

impl<F: Ring> Mul for MPoly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero(&self.zero);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(mono_add(ma, mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Ring> Ring for MPoly<F> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.zero)
    }
    fn one_like(&self) -> Self {
        Self::constant(self.zero.one_like())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::constant(self.zero.from_i64_like(n))
    }
}

impl<F: Ring> Projective for MPoly<F> {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rational, Rational};

    fn vars() -> [MPoly<Rational>; 3] {
        MPoly::vars(&rational(0, 1))
    }

    #[test]
    fn exact_division_round_trip() {
        let [x, y, z] = vars();
        let a = x.clone() * x.clone() - y.clone() * z.clone() + z.clone();
        let b = x.clone() + y.clone() * y.clone() - z.clone();
        let prod = a.clone() * b.clone();
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(b));
        assert_eq!(a.div_exact(&(x + y)), None);
    }

    #[test]
    fn partials_and_substitution() {
        let [x, y, z] = vars();
        let f = x.clone() * x.clone() * y.clone() + z.clone().pow(3);
        assert_eq!(f.partial(0), (x.clone() * y.clone()).scale(&rational(2, 1)));
        let g = f.substitute(&[y.clone(), x.clone(), z.clone()]);
        assert_eq!(g, y.clone() * y * x + z.pow(3));
    }

    #[test]
    fn translate_moves_zero_to_origin() {
        let [x, y, _] = vars();
        let one = rational(1, 1);
        let f =
            (x.clone() - MPoly::constant(one.clone())) * (y.clone() + MPoly::constant(one.clone()));
        let g = f.translate(&[one.clone(), -one, rational(0, 1)]);
        assert_eq!(g, x * y);
        assert_eq!(g.min_degree(), Some(2));
    }

    #[test]
    fn line_restriction_matches_eval() {
        let [x, y, z] = vars();
        let f = x.clone() * y.clone() * z.clone() - z.clone() * z;
        let p = [rational(1, 1), rational(2, 1), rational(-1, 1)];
        let q = [rational(0, 1), rational(1, 3), rational(5, 1)];
        let u = f.restrict_to_line(&p, &q);
        for t in -3..4 {
            let t = rational(t, 1);
            let pt: [Rational; 3] =
                std::array::from_fn(|k| p[k].clone() + t.clone() * q[k].clone());
            assert_eq!(u.eval(&t), f.eval(&pt));
        }
    }
}
