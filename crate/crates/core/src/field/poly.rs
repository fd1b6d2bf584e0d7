use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, FieldError, Projective, Ring};

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The coefficient vector never has a trailing zero; the zero polynomial is
/// the empty vector and reports `degree() == None`. A zero element of the
/// coefficient field is kept alongside so that constants can be built in the
/// right field even for the zero polynomial.
#[derive(Clone, PartialEq)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
    zero: F,
}

impl<F: Ring> UniPoly<F> {
    /// Panics on an empty coefficient list; use [`UniPoly::zero`] instead.
    pub fn new(coeffs: Vec<F>) -> Self {
        let zero = coeffs
            .first()
            .expect("use UniPoly::zero for the zero polynomial")
            .zero_like();
        let mut p = Self { coeffs, zero };
        p.trim();
        p
    }

    pub fn zero(like: &F) -> Self {
        Self {
            coeffs: Vec::new(),
            zero: like.zero_like(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c · t^k`
    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// The parameter `t` itself.
    pub fn t(like: &F) -> Self {
        Self::new(vec![like.zero_like(), like.one_like()])
    }

    /// `a + b·t`
    pub fn linear(a: F, b: F) -> Self {
        Self::new(vec![a, b])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn field_zero(&self) -> &F {
        &self.zero
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(self.zero.clone(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(&self.zero);
        }
        let mut out = Self {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
            zero: self.zero.clone(),
        };
        out.trim();
        out
    }

    pub fn derivative(&self) -> Self {
        let coeffs: Vec<F> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * c.from_i64_like(k as i64))
            .collect();
        let mut out = Self {
            coeffs,
            zero: self.zero.clone(),
        };
        out.trim();
        out
    }

    /// Substitutes another polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(&self.zero), |acc, c| {
                acc * inner.clone() + Self::constant(c.clone())
            })
    }

    pub fn map_coeffs<G: Ring>(&self, like: &G, f: impl Fn(&F) -> G) -> UniPoly<G> {
        let mut out = UniPoly {
            coeffs: self.coeffs.iter().map(f).collect(),
            zero: like.zero_like(),
        };
        out.trim();
        out
    }

    /// Multiplicity of `t` as a factor (the lowest nonzero power).
    pub fn t_adic_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl<F: Field> UniPoly<F> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor
            .leading()
            .unwrap()
            .inv()
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(&self.zero), self.clone());
        }
        let mut quot = vec![self.zero.clone(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            let q = c * lead_inv.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] = rem[k - dd + j].clone() - q.clone() * dc.clone();
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        let mut q = Self {
            coeffs: quot,
            zero: self.zero.clone(),
        };
        let mut r = Self {
            coeffs: rem,
            zero: self.zero.clone(),
        };
        q.trim();
        r.trim();
        (q, r)
    }

    /// Exact quotient, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        x.monic()
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.div_rem(modulus).1;
        let mut acc = Self::constant(self.zero.one_like()).div_rem(modulus).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc * base.clone()).div_rem(modulus).1;
            }
            e >>= 1;
            if e > 0 {
                base = (base.clone() * base).div_rem(modulus).1;
            }
        }
        acc
    }

    /// Multiplicity of `root` as a zero.
    pub fn root_multiplicity(&self, root: &F) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let linear = Self::linear(-root.clone(), root.one_like());
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.div_exact(&linear) {
            p = q;
            m += 1;
        }
        m
    }
}

impl<F: Ring + fmt::Debug> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c:?}"),
                1 => format!("{c:?}*t"),
                _ => format!("{c:?}*t^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<F: Ring> Add for UniPoly<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (k, c) in short.coeffs.into_iter().enumerate() {
            long.coeffs[k] = long.coeffs[k].clone() + c;
        }
        long.trim();
        long
    }
}

impl<F: Ring> Sub for UniPoly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Ring> Neg for UniPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
            zero: self.zero,
        }
    }
}

impl<F: Ring> Mul for UniPoly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero(&self.zero);
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        let mut p = Self {
            coeffs: out,
            zero: self.zero,
        };
        p.trim();
        p
    }
}

impl<F: Ring> Ring for UniPoly<F> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.zero)
    }
    fn one_like(&self) -> Self {
        Self::constant(self.zero.one_like())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        let c = self.zero.from_i64_like(n);
        if c.is_zero() {
            Self::zero(&self.zero)
        } else {
            Self::constant(c)
        }
    }
}

impl<F: Field> Projective for UniPoly<F> {
    fn normalize_triple(v: [Self; 3]) -> [Self; 3] {
        let [a, b, c] = v;
        match reduce_triple(a.clone(), b.clone(), c.clone()) {
            Ok(r) => r.polys,
            Err(_) => [a, b, c],
        }
    }
}

/// Output of [`reduce_triple`].
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedTriple<F: Ring> {
    pub polys: [UniPoly<F>; 3],
    /// Degree of the monic gcd that was divided out.
    pub removed_degree: usize,
}

impl<F: Ring> ReducedTriple<F> {
    /// Max coordinate degree, i.e. the tracked degree of the point.
    pub fn degree(&self) -> usize {
        self.polys
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }
}

/// Divides a triple of polynomials by their monic gcd.
pub fn reduce_triple<F: Field>(
    p0: UniPoly<F>,
    p1: UniPoly<F>,
    p2: UniPoly<F>,
) -> Result<ReducedTriple<F>, FieldError> {
    if p0.is_zero() && p1.is_zero() && p2.is_zero() {
        return Err(FieldError::ZeroTriple);
    }
    let g = UniPoly::gcd(&UniPoly::gcd(&p0, &p1), &p2);
    let removed_degree = g.degree().expect("gcd of a nonzero triple is nonzero");
    if removed_degree == 0 {
        return Ok(ReducedTriple {
            polys: [p0, p1, p2],
            removed_degree,
        });
    }
    let polys = [p0, p1, p2].map(|p| p.div_exact(&g).expect("gcd divides every entry"));
    Ok(ReducedTriple {
        polys,
        removed_degree,
    })
}
