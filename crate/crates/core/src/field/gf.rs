use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::UniPoly;
use super::prime::{is_prime, Fp};
use super::{scale_first_nonzero_to_one, Field, FieldError, Projective, Ring};

pub const MAX_EXTENSION_DEGREE: usize = 6;
const K: usize = MAX_EXTENSION_DEGREE;

/// Descriptor of `F_{p^k} = F_p[x]/(g)` with `g` monic irreducible of degree
/// `k`; `modulus` stores the low coefficients `g_0 .. g_{k-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GfContext {
    p: u32,
    k: u8,
    modulus: [u32; K],
}

impl GfContext {
    /// Builds `F_{p^k}` using the lexicographically first monic irreducible
    /// polynomial of degree `k` (for `k = 1` this is just `F_p`).
    pub fn new(p: u64, k: usize) -> Result<Self, FieldError> {
        if !is_prime(p) || p == 2 {
            return Err(if p == 2 {
                FieldError::CharacteristicTwo
            } else {
                FieldError::NotOddPrime(p)
            });
        }
        assert!(p < (1 << 31), "prime too large for F_(p^k) kernel");
        assert!((1..=K).contains(&k), "extension degree must be in 1..={K}");
        if k == 1 {
            return Ok(Self {
                p: p as u32,
                k: 1,
                modulus: [0; K],
            });
        }
        let total = (p as u128).pow(k as u32);
        for idx in 0..total {
            let mut low = [0u32; K];
            let mut rest = idx;
            for slot in low.iter_mut().take(k) {
                *slot = (rest % p as u128) as u32;
                rest /= p as u128;
            }
            if low[0] == 0 {
                continue;
            }
            let mut coeffs: Vec<Fp> = low[..k]
                .iter()
                .map(|&c| Fp::from_u64(c as u64, p))
                .collect();
            coeffs.push(Fp::from_u64(1, p));
            if is_irreducible(&UniPoly::new(coeffs), p) {
                return Ok(Self {
                    p: p as u32,
                    k: k as u8,
                    modulus: low,
                });
            }
        }
        Err(FieldError::NoIrreducible { p, degree: k })
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> usize {
        self.k as usize
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.k as u32)
    }

    pub fn zero(&self) -> Gf {
        Gf {
            ctx: *self,
            c: [0; K],
        }
    }

    pub fn from_fp(&self, x: Fp) -> Gf {
        assert_eq!(x.modulus(), self.p as u64);
        let mut c = [0; K];
        c[0] = x.value() as u32;
        Gf { ctx: *self, c }
    }

    pub fn from_i64(&self, n: i64) -> Gf {
        self.from_fp(Fp::new(n, self.p as u64))
    }

    /// The `index`-th element in base-`p` enumeration order, `index < q`.
    pub fn element(&self, mut index: u64) -> Gf {
        let mut c = [0; K];
        for slot in c.iter_mut().take(self.k as usize) {
            *slot = (index % self.p as u64) as u32;
            index /= self.p as u64;
        }
        Gf { ctx: *self, c }
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    /// Whether `x` already lies in the prime field.
    pub fn in_prime_field(&self, x: &Gf) -> bool {
        x.c[1..].iter().all(|&c| c == 0)
    }
}

fn is_irreducible(g: &UniPoly<Fp>, p: u64) -> bool {
    // Rabin-style test: gcd(x^{p^i} - x, g) = 1 for i ≤ k/2.
    let k = g.degree().expect("nonzero modulus");
    let x = UniPoly::new(vec![Fp::from_u64(0, p), Fp::from_u64(1, p)]);
    let mut power = x.clone();
    for _ in 0..k / 2 {
        power = power.pow_mod(p, g);
        let diff = power.clone() - x.clone();
        if UniPoly::gcd(&diff, g).degree() != Some(0) {
            return false;
        }
    }
    true
}

/// Element of `F_{p^k}`, carrying its field descriptor.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf {
    ctx: GfContext,
    c: [u32; K],
}

impl Gf {
    pub fn context(&self) -> &GfContext {
        &self.ctx
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.c[..self.ctx.k as usize]
    }

    /// Position in the enumeration order of [`GfContext::element`].
    pub fn index(&self) -> u64 {
        self.coefficients()
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.ctx.p as u64 + c as u64)
    }

    fn check(&self, rhs: &Self) {
        assert!(self.ctx == rhs.ctx, "mismatched finite fields");
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coefficients())
    }
}

impl Add for Gf {
    type Output = Self;
    #[inline]
    fn add(mut self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.ctx.p;
        for j in 0..self.ctx.k as usize {
            let s = self.c[j] + rhs.c[j];
            self.c[j] = if s >= p { s - p } else { s };
        }
        self
    }
}

impl Sub for Gf {
    type Output = Self;
    #[inline]
    fn sub(mut self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.ctx.p;
        for j in 0..self.ctx.k as usize {
            self.c[j] = if self.c[j] >= rhs.c[j] {
                self.c[j] - rhs.c[j]
            } else {
                self.c[j] + p - rhs.c[j]
            };
        }
        self
    }
}

impl Mul for Gf {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.ctx.p as u64;
        let k = self.ctx.k as usize;
        if k == 1 {
            let mut c = [0; K];
            c[0] = (self.c[0] as u64 * rhs.c[0] as u64 % p) as u32;
            return Gf { ctx: self.ctx, c };
        }
        let mut prod = [0u64; 2 * K];
        for i in 0..k {
            if self.c[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + self.c[i] as u64 * rhs.c[j] as u64) % p;
            }
        }
        // x^k ≡ -(g_0 + ... + g_{k-1} x^{k-1})
        for d in (k..2 * k - 1).rev() {
            let top = prod[d];
            if top == 0 {
                continue;
            }
            prod[d] = 0;
            for j in 0..k {
                let m = self.ctx.modulus[j] as u64;
                if m != 0 {
                    let sub = top * m % p;
                    let slot = &mut prod[d - k + j];
                    *slot = (*slot + p - sub) % p;
                }
            }
        }
        let mut c = [0; K];
        for j in 0..k {
            c[j] = prod[j] as u32;
        }
        Gf { ctx: self.ctx, c }
    }
}

impl Neg for Gf {
    type Output = Self;
    fn neg(mut self) -> Self {
        let p = self.ctx.p;
        for j in 0..self.ctx.k as usize {
            self.c[j] = if self.c[j] == 0 { 0 } else { p - self.c[j] };
        }
        self
    }
}

impl Ring for Gf {
    fn zero_like(&self) -> Self {
        self.ctx.zero()
    }
    fn one_like(&self) -> Self {
        self.ctx.from_i64(1)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&c| c == 0)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.ctx.from_i64(n)
    }
}

impl Field for Gf {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        // x^(q-2)
        Some(self.pow(self.ctx.order() - 2))
    }
    fn characteristic(&self) -> u64 {
        self.ctx.p as u64
    }
}

impl Projective for Gf {
    fn normalize_triple(v: [Self; 3]) -> [Self; 3] {
        scale_first_nonzero_to_one(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_nonzero_element_is_invertible() {
        for (p, k) in [(3u64, 2usize), (5, 3), (7, 2), (3, 4)] {
            let ctx = GfContext::new(p, k).unwrap();
            assert_eq!(ctx.order(), p.pow(k as u32));
            for (i, x) in ctx.elements().enumerate().skip(1) {
                assert_eq!(x.index(), i as u64);
                assert!((x * x.inv().unwrap()).is_one(), "p={p} k={k} x={x:?}");
            }
        }
    }

    #[test]
    fn multiplicative_group_order() {
        let ctx = GfContext::new(13, 2).unwrap();
        for x in ctx.elements().skip(1) {
            assert!(x.pow(ctx.order() - 1).is_one());
        }
    }
}
