//! Dense integer polynomials in `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial in `q` with integer coefficients, `coeffs[i]` multiplying `q^i`.
///
/// Trailing zeros are never stored, so the zero polynomial has no coefficients
/// and structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c;
        Self { coeffs }
    }

    /// `q^e`.
    pub fn q_pow(e: usize) -> Self {
        Self::monomial(1, e)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Exponent of the lowest nonzero term.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficient of the lowest nonzero term.
    pub fn low_coeff(&self) -> Option<&BigInt> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    /// Nonnegative gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> QPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.div_scalar(&c)
    }

    pub fn scale(&self, c: &BigInt) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar(&self, c: &BigInt) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    /// Multiplies by `q^e`.
    pub fn shift_up(&self, e: usize) -> QPoly {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Divides by `q^e`; the low `e` coefficients must be zero.
    pub fn shift_down(&self, e: usize) -> QPoly {
        debug_assert!(self.coeffs.iter().take(e).all(Zero::is_zero));
        QPoly {
            coeffs: self.coeffs.iter().skip(e).cloned().collect(),
        }
    }

    /// Keeps the terms `q^0 .. q^(m-1)`.
    pub fn truncate(&self, m: usize) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().take(m).cloned().collect())
    }

    /// `q^deg * p(1/q)` for the stored degree.
    pub fn reversed(&self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Applies `q -> q^k`.
    pub fn subst_q_power(&self, k: usize) -> QPoly {
        assert!(k >= 1);
        let Some(deg) = self.degree() else {
            return QPoly::zero();
        };
        let mut coeffs = vec![BigInt::zero(); deg * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        QPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Product truncated below `q^m`.
    pub fn mul_trunc(&self, other: &QPoly, m: usize) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(m);
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QPoly::from_coeffs(coeffs)
    }

    /// Long division over the integers.
    ///
    /// Returns `None` when some step would need a non-integral quotient
    /// coefficient, i.e. the leading coefficient of `divisor` does not divide
    /// the running remainder's leading coefficient. Always succeeds for
    /// divisors with leading coefficient `±1`.
    pub fn div_rem(&self, divisor: &QPoly) -> Option<(QPoly, QPoly)> {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((QPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &qc * d;
                }
            }
            quot[i] = qc;
        }
        rem.truncate(dd);
        Some((QPoly::from_coeffs(quot), QPoly::from_coeffs(rem)))
    }

    /// Exact quotient `self / divisor` over the integers, if it exists.
    pub fn div_exact(&self, divisor: &QPoly) -> Option<QPoly> {
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        if divisor.degree()? > self.degree()? {
            return None;
        }
        match self.div_rem(divisor) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl From<i64> for QPoly {
    fn from(c: i64) -> Self {
        QPoly::constant(c)
    }
}

impl From<BigInt> for QPoly {
    fn from(c: BigInt) -> Self {
        QPoly::constant(c)
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let m = self.coeffs.len() + rhs.coeffs.len() - 1;
        self.mul_trunc(rhs, m)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: &QPoly) -> QPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<QPoly> for &QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for QPoly {
    fn product<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::one(), |a, b| a * b)
    }
}

/// Ascending powers: `1 - 2*q + q^3`; the zero polynomial prints as `0`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_ascending() {
        assert_eq!(
            QPoly::from_i64s(&[1, -2, 0, 1]).to_string(),
            "1 - 2*q + q^3"
        );
        assert_eq!(QPoly::from_i64s(&[0, -1]).to_string(), "-q");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn division_with_remainder() {
        let a = QPoly::from_i64s(&[1, 0, 0, 1]); // 1 + q^3
        let d = QPoly::from_i64s(&[1, 1]);
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(q, QPoly::from_i64s(&[1, -1, 1]));
        assert!(r.is_zero());
        let (q, r) = QPoly::from_i64s(&[0, 1, 1])
            .div_rem(&QPoly::from_i64s(&[1, 0, 1]))
            .unwrap();
        assert_eq!(q, QPoly::one());
        assert_eq!(r, QPoly::from_i64s(&[-1, 1]));
    }

    #[test]
    fn non_integral_division_is_refused() {
        let a = QPoly::from_i64s(&[0, 1]);
        let d = QPoly::from_i64s(&[0, 2]);
        assert!(a.div_rem(&d).is_none());
        assert!(a.div_exact(&d).is_none());
    }

    #[test]
    fn truncated_product() {
        let a = QPoly::from_i64s(&[1, 1, 1]);
        assert_eq!(a.mul_trunc(&a, 3), QPoly::from_i64s(&[1, 2, 3]));
    }
}
