//! Reduced rational functions in `q`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::poly_gcd;
use super::poly::QPoly;
use crate::error::{Error, Result};

/// Element of Q(q) stored as `num / den` in canonical form.
///
/// Canonical means: `num` and `den` have integer coefficients and no common
/// polynomial factor, the joint content of both is 1, and the lowest-order
/// nonzero coefficient of `den` is positive. Zero is `0 / 1`. Equality is
/// therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: QPoly,
    den: QPoly,
}

impl QRat {
    pub fn zero() -> Self {
        Self {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self {
            num: QPoly::constant(c),
            den: QPoly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts(
            QPoly::constant(r.numer().clone()),
            QPoly::constant(r.denom().clone()),
        )
    }

    pub fn from_poly(p: QPoly) -> Self {
        Self::from_parts(p, QPoly::one())
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Self {
        let k = e.unsigned_abs() as usize;
        if e >= 0 {
            Self {
                num: QPoly::q_pow(k),
                den: QPoly::one(),
            }
        } else {
            Self {
                num: QPoly::one(),
                den: QPoly::q_pow(k),
            }
        }
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `num / den`, reduced. Errors on a zero denominator.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    /// Like [`QRat::new`] but panics on a zero denominator.
    pub fn from_parts(num: QPoly, den: QPoly) -> Self {
        Self::new(num, den).expect("zero denominator")
    }

    /// `sign * q^e / den` where `den` has constant term ±1 and is coprime to `q`.
    ///
    /// Skips the gcd; used for the q-factorial coefficients of the sine and
    /// cosine families, which are already reduced by construction.
    pub(crate) fn signed_monomial_over(negative: bool, e: i64, den: &QPoly) -> Self {
        let k = e.unsigned_abs() as usize;
        let mut num = if e >= 0 {
            QPoly::q_pow(k)
        } else {
            QPoly::one()
        };
        let mut den = if e >= 0 { den.clone() } else { den.shift_up(k) };
        if negative {
            num = -num;
        }
        if den.low_coeff().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        Self { num, den }
    }

    fn reduce(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        Self::finish(num, den)
    }

    /// Fixes joint content and sign of an already coprime pair.
    fn finish(mut num: QPoly, mut den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        if den.low_coeff().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        Self { num, den }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The numerator when the denominator is exactly 1.
    pub fn as_poly(&self) -> Option<&QPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inv(&self) -> Option<QRat> {
        if self.is_zero() {
            return None;
        }
        Some(Self::finish(self.den.clone(), self.num.clone()))
    }

    /// Multiplies by `q^e`.
    pub fn mul_q_pow(&self, e: i64) -> QRat {
        if e == 0 || self.is_zero() {
            return self.clone();
        }
        let k = e.unsigned_abs() as usize;
        let (num, den) = if e > 0 {
            let cancel = k.min(self.den.low_order().unwrap());
            (self.num.shift_up(k - cancel), self.den.shift_down(cancel))
        } else {
            let cancel = k.min(self.num.low_order().unwrap());
            (self.num.shift_down(cancel), self.den.shift_up(k - cancel))
        };
        Self { num, den }
    }

    pub fn scale_int(&self, c: &BigInt) -> QRat {
        self * &QRat::from_int(c.clone())
    }

    pub fn pow(&self, e: u32) -> QRat {
        let mut acc = QRat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `q -> 1/q` and clears the resulting negative powers.
    pub fn subst_q_inverse(&self) -> QRat {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        // f(1/q) = rev(num) q^dd / (rev(den) q^dn)
        let shift = dd as i64 - dn as i64;
        let base = Self::finish(self.num.reversed(), self.den.reversed());
        base.mul_q_pow(shift)
    }

    /// Applies `q -> q^k`.
    pub fn subst_q_power(&self, k: usize) -> QRat {
        Self::finish(self.num.subst_q_power(k), self.den.subst_q_power(k))
    }

    /// The value at `q = 1`; the canonical form has no common `(1-q)` factor
    /// left, so a vanishing denominator is a genuine pole.
    pub fn eval_at_q1(&self) -> Result<BigRational> {
        let d = self.den.eval_at_one();
        if d.is_zero() {
            return Err(Error::PoleAtOne);
        }
        Ok(BigRational::new(self.num.eval_at_one(), d))
    }

    /// Value at an integer point, `None` at a pole.
    pub fn eval_int(&self, x: &BigInt) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(self.num.eval(x), d))
    }

    /// Power-series expansion in `q` through `q^(m-1)`.
    ///
    /// Requires the denominator's constant term to be `±1` so that the
    /// expansion stays integral.
    pub fn to_q_series(&self, m: usize) -> Result<QPoly> {
        let d0 = self.den.coeff(0);
        if d0.abs() != BigInt::one() {
            return Err(Error::NotIntegralSeries(self.to_string()));
        }
        let den = self.den.coeffs();
        let num = self.num.coeffs();
        let mut out: Vec<BigInt> = Vec::with_capacity(m);
        for i in 0..m {
            let mut acc = num.get(i).cloned().unwrap_or_default();
            for j in 1..=i.min(den.len().saturating_sub(1)) {
                if !den[j].is_zero() {
                    acc -= &den[j] * &out[i - j];
                }
            }
            out.push(if d0.is_one() { acc } else { -acc });
        }
        Ok(QPoly::from_coeffs(out))
    }
}

impl Default for QRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<QPoly> for QRat {
    fn from(p: QPoly) -> Self {
        QRat::from_poly(p)
    }
}

impl From<i64> for QRat {
    fn from(c: i64) -> Self {
        QRat::from_int(c)
    }
}

impl Add<&QRat> for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Henrici: with g = gcd(b, d), the only possible cancellation is by g.
        let g = poly_gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &self.num * &rhs.den + &rhs.num * &self.den;
            return QRat::finish(num, &self.den * &rhs.den);
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &self.num * &d1 + &rhs.num * &b1;
        if num.is_zero() {
            return QRat::zero();
        }
        let den = &self.den * &d1;
        let h = poly_gcd(&num, &g);
        if h.is_one() {
            QRat::finish(num, den)
        } else {
            QRat::finish(
                num.div_exact(&h).expect("gcd divides"),
                den.div_exact(&h).expect("gcd divides"),
            )
        }
    }
}

impl Sub<&QRat> for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl Mul<&QRat> for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let cancel = |p: &QPoly, g: &QPoly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = cancel(&self.num, &g1) * cancel(&rhs.num, &g2);
        let den = cancel(&self.den, &g2) * cancel(&rhs.den, &g1);
        QRat::finish(num, den)
    }
}

impl Div<&QRat> for &QRat {
    type Output = QRat;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QRat) -> QRat {
        self * &rhs.inv().expect("division by zero QRat")
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: &QRat) -> QRat {
                (&self).$m(rhs)
            }
        }
        impl $tr<QRat> for &QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for QRat {
    fn sum<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for QRat {
    fn product<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::one(), |a, b| a * b)
    }
}

/// Canonical text form `num / den`, both expanded in ascending powers of `q`.
impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}

/// Parses `num / den` or a bare polynomial; the result is reduced.
impl FromStr for QRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('/');
        let num = parts.next().unwrap_or("");
        let den = parts.next();
        if parts.next().is_some() {
            return Err(Error::Parse(format!("more than one '/' in {s:?}")));
        }
        let num: QPoly = num.parse()?;
        let den: QPoly = match den {
            Some(d) => d.parse()?,
            None => QPoly::one(),
        };
        QRat::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    fn r(n: &[i64], d: &[i64]) -> QRat {
        QRat::from_parts(p(n), p(d))
    }

    #[test]
    fn canonical_form_cancels_and_fixes_sign() {
        // (q - q^2) / (1 - q^2) = q / (1 + q)
        let x = r(&[0, 1, -1], &[1, 0, -1]);
        assert_eq!(x.num(), &p(&[0, 1]));
        assert_eq!(x.den(), &p(&[1, 1]));
        let y = r(&[2], &[-4, -4]);
        assert_eq!(y.num(), &p(&[-1]));
        assert_eq!(y.den(), &p(&[2, 2]));
    }

    #[test]
    fn inverse_substitution_examples() {
        let q = QRat::q();
        let qi = q.subst_q_inverse();
        assert_eq!((qi.num(), qi.den()), (&p(&[1]), &p(&[0, 1])));
        let three = QRat::from_poly(p(&[1, 1, 1])).subst_q_inverse();
        assert_eq!(three, r(&[1, 1, 1], &[0, 0, 1]));
        // 1 - q -> (q - 1)/q
        let x = QRat::from_poly(p(&[1, -1])).subst_q_inverse();
        assert_eq!(x, r(&[-1, 1], &[0, 1]));
    }

    #[test]
    fn limit_at_one() {
        let three = QRat::from_poly(p(&[1, 1, 1]));
        assert_eq!(
            three.eval_at_q1().unwrap(),
            BigRational::from_integer(3.into())
        );
        let x = r(&[0, 1], &[1, 1, 1]);
        assert_eq!(
            x.eval_at_q1().unwrap(),
            BigRational::new(1.into(), 3.into())
        );
        assert_eq!(r(&[1], &[1, -1]).eval_at_q1(), Err(Error::PoleAtOne));
    }

    #[test]
    fn q_series_of_reciprocal_bracket() {
        // 1/(1+q+q^2) = 1 - q + q^3 - q^4 + q^6 ...
        let x = r(&[1], &[1, 1, 1]);
        assert_eq!(x.to_q_series(7).unwrap(), p(&[1, -1, 0, 1, -1, 0, 1]));
        assert!(r(&[1], &[2, 1]).to_q_series(3).is_err());
    }

    #[test]
    fn arithmetic_identities() {
        let a = r(&[1], &[1, 1]);
        let b = r(&[0, 1], &[1, 1]);
        assert!((&a + &b).is_one());
        assert_eq!(&a * &QRat::from_poly(p(&[1, 1])), QRat::one());
        assert_eq!(&(&a - &a), &QRat::zero());
        assert_eq!(QRat::q_pow(-2).mul_q_pow(3), QRat::q());
    }

    #[test]
    fn display_and_parse() {
        let x = r(&[0, 1], &[1, 1, 1]);
        assert_eq!(x.to_string(), "q / 1 + q + q^2");
        assert_eq!("q / 1 + q + q^2".parse::<QRat>().unwrap(), x);
        assert_eq!("2*q - 2*q^2 / 2 - 2*q^3".parse::<QRat>().unwrap(), x);
        assert!("1 / 0".parse::<QRat>().is_err());
        assert!("1 / 2 / 3".parse::<QRat>().is_err());
    }
}
