//! Truncated power series in `z` with coefficients in Q(q).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::qrat::QRat;
use crate::error::{Error, Result};

/// Declared symmetry of a series in `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
    None,
}

impl Parity {
    fn name(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
            Parity::None => "no",
        }
    }

    /// True when `z^index` may carry a nonzero coefficient.
    pub fn admits(self, index: usize) -> bool {
        match self {
            Parity::Odd => index % 2 == 1,
            Parity::Even => index.is_multiple_of(2),
            Parity::None => true,
        }
    }

    fn times(self, other: Parity) -> Parity {
        match (self, other) {
            (Parity::None, _) | (_, Parity::None) => Parity::None,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }

    fn plus(self, other: Parity) -> Parity {
        if self == other {
            self
        } else {
            Parity::None
        }
    }
}

/// `c_0 + c_1 z + ... + c_N z^N`; the order `N` is part of the value.
///
/// Binary operations require equal orders and panic otherwise, so a
/// truncation never happens silently.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZSeries {
    coeffs: Vec<QRat>,
    parity: Parity,
}

impl ZSeries {
    /// Checks that the coefficients respect `parity`.
    pub fn new(coeffs: Vec<QRat>, parity: Parity) -> Result<Self> {
        assert!(!coeffs.is_empty(), "a series stores at least z^0");
        if let Some(index) = coeffs
            .iter()
            .enumerate()
            .position(|(i, c)| !c.is_zero() && !parity.admits(i))
        {
            return Err(Error::ParityViolation {
                index,
                parity: parity.name(),
            });
        }
        Ok(Self { coeffs, parity })
    }

    /// Takes the strongest parity the coefficients satisfy.
    pub fn with_inferred_parity(coeffs: Vec<QRat>) -> Self {
        let nz = |odd: bool| {
            coeffs
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || (i % 2 == 1) == odd)
        };
        let parity = if nz(true) {
            Parity::Odd
        } else if nz(false) {
            Parity::Even
        } else {
            Parity::None
        };
        Self { coeffs, parity }
    }

    pub fn zero(order: usize, parity: Parity) -> Self {
        Self {
            coeffs: vec![QRat::zero(); order + 1],
            parity,
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(QRat::one(), order)
    }

    pub fn constant(c: QRat, order: usize) -> Self {
        let mut s = Self::zero(order, Parity::Even);
        s.coeffs[0] = c;
        s
    }

    /// The series `z` through `order` (`order >= 1`).
    pub fn z(order: usize) -> Self {
        assert!(order >= 1);
        let mut s = Self::zero(order, Parity::Odd);
        s.coeffs[1] = QRat::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn coeffs(&self) -> &[QRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &QRat {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QRat::is_zero)
    }

    /// Index of the first nonzero coefficient (the z-order).
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Pads with zeros or truncates to the requested order.
    pub fn with_order(&self, order: usize) -> ZSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, QRat::zero());
        ZSeries {
            coeffs,
            parity: self.parity,
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(usize, &QRat) -> QRat) -> ZSeries {
        ZSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| f(i, c))
                .collect(),
            parity: self.parity,
        }
    }

    pub fn scale(&self, c: &QRat) -> ZSeries {
        self.map_coeffs(|_, x| x * c)
    }

    /// Coefficient of `z^k` in `self * other`, without forming the product.
    pub fn product_coeff(&self, other: &ZSeries, k: usize) -> QRat {
        assert_orders(self, other);
        let mut acc = QRat::zero();
        for i in 0..=k {
            let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }

    /// Multiplies by `z^2`, dropping the top two coefficients.
    pub fn shift_up_two(&self) -> ZSeries {
        let n = self.coeffs.len();
        let mut coeffs = vec![QRat::zero(); 2.min(n)];
        coeffs.extend(self.coeffs.iter().take(n.saturating_sub(2)).cloned());
        ZSeries {
            coeffs,
            parity: self.parity,
        }
    }

    /// Divides by `z^k`; the low `k` coefficients must vanish. Order drops by `k`.
    pub fn shift_down(&self, k: usize) -> ZSeries {
        assert!(
            self.coeffs.iter().take(k).all(QRat::is_zero),
            "low coefficients must vanish"
        );
        assert!(k <= self.order());
        let parity = if k.is_multiple_of(2) {
            self.parity
        } else {
            match self.parity {
                Parity::Odd => Parity::Even,
                Parity::Even => Parity::Odd,
                Parity::None => Parity::None,
            }
        };
        ZSeries {
            coeffs: self.coeffs[k..].to_vec(),
            parity,
        }
    }

    /// Applies `q -> 1/q` to every coefficient.
    pub fn dual(&self) -> ZSeries {
        self.map_coeffs(|_, c| c.subst_q_inverse())
    }

    /// Formal quotient `self / divisor` through the common order.
    pub fn quotient(&self, divisor: &ZSeries) -> Result<ZSeries> {
        if self.order() != divisor.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: divisor.order(),
            });
        }
        let b0_inv = divisor.coeffs[0]
            .inv()
            .ok_or(Error::DivisionByZeroConstantTerm)?;
        let parity = match (self.parity, divisor.parity) {
            (Parity::None, _) | (_, Parity::None) | (_, Parity::Odd) => Parity::None,
            (p, Parity::Even) => p,
        };
        let n = self.order();
        let mut out: Vec<QRat> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            if !parity.admits(k) {
                out.push(QRat::zero());
                continue;
            }
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                let (b, c) = (&divisor.coeffs[j], &out[k - j]);
                if !b.is_zero() && !c.is_zero() {
                    acc = &acc - &(b * c);
                }
            }
            out.push(&acc * &b0_inv);
        }
        Ok(ZSeries {
            coeffs: out,
            parity,
        })
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<ZSeries> {
        ZSeries::one(self.order()).quotient(self)
    }

    /// Scales the coefficient of `z^(2n+1)` (odd series) or `z^(2n)` (even
    /// series) by `q^(direction * n)`.
    ///
    /// For an odd series this is `s(z) -> q^(-1/2) s(z q^(1/2))` with
    /// `direction = +1`; for an even one, `s(z) -> s(z q^(1/2))`. Half-integer
    /// powers never appear in the result.
    pub fn scale_arg_half_power(&self, direction: i64) -> Result<ZSeries> {
        assert!(
            direction == 1 || direction == -1,
            "direction must be +1 or -1"
        );
        match self.parity {
            Parity::None => Err(Error::ParityRequired),
            _ => Ok(self.map_coeffs(|i, c| c.mul_q_pow(direction * (i as i64 / 2)))),
        }
    }
}

fn assert_orders(a: &ZSeries, b: &ZSeries) {
    assert_eq!(a.order(), b.order(), "series orders differ");
}

impl Add<&ZSeries> for &ZSeries {
    type Output = ZSeries;
    fn add(self, rhs: &ZSeries) -> ZSeries {
        assert_orders(self, rhs);
        ZSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            parity: self.parity.plus(rhs.parity),
        }
    }
}

impl Sub<&ZSeries> for &ZSeries {
    type Output = ZSeries;
    fn sub(self, rhs: &ZSeries) -> ZSeries {
        assert_orders(self, rhs);
        ZSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            parity: self.parity.plus(rhs.parity),
        }
    }
}

impl Mul<&ZSeries> for &ZSeries {
    type Output = ZSeries;
    fn mul(self, rhs: &ZSeries) -> ZSeries {
        assert_orders(self, rhs);
        let parity = self.parity.times(rhs.parity);
        let coeffs = (0..=self.order())
            .map(|k| {
                if parity.admits(k) {
                    self.product_coeff(rhs, k)
                } else {
                    QRat::zero()
                }
            })
            .collect();
        ZSeries { coeffs, parity }
    }
}

impl Neg for &ZSeries {
    type Output = ZSeries;
    fn neg(self) -> ZSeries {
        self.map_coeffs(|_, c| -c)
    }
}

impl fmt::Debug for ZSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZSeries[{:?}; order {}](", self.parity, self.order())?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c}) z^{i}")?;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}
