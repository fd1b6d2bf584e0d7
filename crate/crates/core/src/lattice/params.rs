use std::fmt;

use serde::{Deserialize, Serialize};

use super::LatticeError;

/// Parameters `(a, b, c, d)` of the skew pentagram map: vertex `i` of the
/// image is the meet of the diagonals `v_{i+a} v_{i+b}` and `v_{i+c} v_{i+d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 4]", into = "[i64; 4]")]
pub struct SkewParams {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    EqualLength,
    TrulySkew,
}

impl SkewParams {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, LatticeError> {
        let v = [a, b, c, d];
        for i in 0..4 {
            for j in i + 1..4 {
                if v[i] == v[j] {
                    return Err(LatticeError::RepeatedParameter(v[i]));
                }
            }
        }
        Ok(Self { a, b, c, d })
    }

    pub fn as_array(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn classification(&self) -> Classification {
        if (self.b - self.a).abs() == (self.d - self.c).abs() {
            Classification::EqualLength
        } else {
            Classification::TrulySkew
        }
    }

    pub fn is_equal_length(&self) -> bool {
        self.classification() == Classification::EqualLength
    }

    /// Whether `a < b`, `a < c` and `c < d`.
    pub fn is_conventional(&self) -> bool {
        self.a < self.b && self.a < self.c && self.c < self.d
    }

    /// The same map written with `a < b`, `a < c`, `c < d`: each diagonal is
    /// an unordered pair and the two diagonals may be swapped.
    pub fn normalized(&self) -> Self {
        let p = (self.a.min(self.b), self.a.max(self.b));
        let q = (self.c.min(self.d), self.c.max(self.d));
        let (p, q) = if p.0 < q.0 { (p, q) } else { (q, p) };
        Self {
            a: p.0,
            b: p.1,
            c: q.0,
            d: q.1,
        }
    }

    /// Translates all four parameters so that `a = 0`; composing with a shift
    /// gives the same map up to reindexing.
    pub fn shifted_to_zero(&self) -> Self {
        self.translated(-self.a)
    }

    pub fn translated(&self, k: i64) -> Self {
        Self {
            a: self.a + k,
            b: self.b + k,
            c: self.c + k,
            d: self.d + k,
        }
    }

    /// `(−a, −b, −c, −d)`: the same map after reversing vertex order.
    pub fn reversed(&self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    /// `(ka, kb, kc, kd)`.
    pub fn scaled(&self, k: i64) -> Result<Self, LatticeError> {
        Self::new(k * self.a, k * self.b, k * self.c, k * self.d)
    }

    /// Inverse of an equal-length map in conventional form,
    /// `(a, b, c, d) ↦ (−d, −b, −c, −a)`.
    pub fn equal_length_inverse(&self) -> Result<Self, LatticeError> {
        if !self.is_equal_length() {
            return Err(LatticeError::NotEqualLength(*self));
        }
        if !self.is_conventional() {
            return Err(LatticeError::NotConventional(*self));
        }
        Self::new(-self.d, -self.b, -self.c, -self.a)
    }

    pub fn min(&self) -> i64 {
        self.as_array().into_iter().min().unwrap()
    }

    pub fn max(&self) -> i64 {
        self.as_array().into_iter().max().unwrap()
    }

    pub fn distinct_mod(&self, n: usize) -> bool {
        let n = n as i64;
        let r = self.as_array().map(|x| x.rem_euclid(n));
        (0..4).all(|i| (i + 1..4).all(|j| r[i] != r[j]))
    }
}

impl fmt::Display for SkewParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl std::str::FromStr for SkewParams {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<i64> = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| LatticeError::Parse(s.to_string()))?;
        match parts[..] {
            [a, b, c, d] => Self::new(a, b, c, d),
            _ => Err(LatticeError::Parse(s.to_string())),
        }
    }
}

impl TryFrom<[i64; 4]> for SkewParams {
    type Error = LatticeError;
    fn try_from(v: [i64; 4]) -> Result<Self, Self::Error> {
        Self::new(v[0], v[1], v[2], v[3])
    }
}

impl From<SkewParams> for [i64; 4] {
    fn from(p: SkewParams) -> Self {
        p.as_array()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(a: i64, b: i64, c: i64, d: i64) -> SkewParams {
        SkewParams::new(a, b, c, d).unwrap()
    }

    #[test]
    fn classification() {
        assert!(sp(0, 2, 1, 3).is_equal_length());
        assert!(sp(0, 3, 1, 4).is_equal_length());
        assert!(!sp(0, 2, 1, 4).is_equal_length());
        assert!(SkewParams::new(0, 1, 1, 2).is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(
            sp(0, 2, 1, 3).equal_length_inverse().unwrap(),
            sp(-3, -2, -1, 0)
        );
        assert_eq!(
            sp(0, 3, 1, 4).equal_length_inverse().unwrap(),
            sp(-4, -3, -1, 0)
        );
        assert!(matches!(
            sp(0, 2, 1, 4).equal_length_inverse(),
            Err(LatticeError::NotEqualLength(_))
        ));
        assert!(matches!(
            sp(2, 0, 1, 3).equal_length_inverse(),
            Err(LatticeError::NotConventional(_))
        ));
    }

    #[test]
    fn normalization_is_explicit() {
        let p = sp(4, 1, 2, 0);
        assert_eq!(p.normalized(), sp(0, 2, 1, 4));
        assert_eq!(sp(3, 5, 4, 7).shifted_to_zero(), sp(0, 2, 1, 4));
        assert_eq!("0, 2,1,4".parse::<SkewParams>().unwrap(), sp(0, 2, 1, 4));
    }

    #[test]
    fn distinct_mod_n() {
        assert!(sp(0, 2, 1, 4).distinct_mod(8));
        assert!(!sp(0, 2, 1, 4).distinct_mod(4));
    }
}
