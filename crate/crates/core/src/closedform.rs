//! Generalized Jackson q-sine and q-cosine families indexed by exponent
//! vectors, the tangent and secant quotients they define, and the search for
//! sine-cosine pairs satisfying `sin sin* + cos cos* = 1`, where `*` is the
//! `q -> 1/q` image.

use std::fmt;

use rayon::prelude::*;

use crate::error::Result;
use crate::qalg::{q_factorial, Parity, QRat, ZSeries};
use crate::updown::{Kind, Variant};

/// Weights `q^(A n^2 + B n)` on the sine and `q^(C n^2 + D n)` on the cosine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl ExponentVector {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    /// Image under `q -> 1/q` after rewriting in base `q`.
    pub const fn dual(self) -> Self {
        Self::new(2 - self.a, 1 - self.b, 2 - self.c, -1 - self.d)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

/// `(A,B,C,D) -> (2-A, 1-B, 2-C, -1-D)`.
pub fn dual_vector(v: ExponentVector) -> ExponentVector {
    v.dual()
}

const fn ev(a: i64, b: i64, c: i64, d: i64) -> ExponentVector {
    ExponentVector::new(a, b, c, d)
}

/// The twelve sine-cosine pairs, in a fixed reference order.
pub const PAIR_TABLE: [ExponentVector; 12] = [
    ev(0, 0, 0, 0),
    ev(2, 1, 0, 0),
    ev(0, 0, 2, -1),
    ev(2, 1, 2, -1),
    ev(0, 1, 0, 1),
    ev(2, 0, 0, 1),
    ev(1, 0, 1, 0),
    ev(1, 1, 1, 0),
    ev(0, 1, 2, -2),
    ev(2, 0, 2, -2),
    ev(1, 0, 1, -1),
    ev(1, 1, 1, -1),
];

/// The six dual pairs reducing the twelve pairs to six.
pub const DUAL_TABLE: [(ExponentVector, ExponentVector); 6] = [
    (ev(0, 0, 0, 0), ev(2, 1, 2, -1)),
    (ev(2, 1, 0, 0), ev(0, 0, 2, -1)),
    (ev(0, 1, 0, 1), ev(2, 0, 2, -2)),
    (ev(2, 0, 0, 1), ev(0, 1, 2, -2)),
    (ev(1, 0, 1, 0), ev(1, 1, 1, -1)),
    (ev(1, 1, 1, 0), ev(1, 0, 1, -1)),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigKind {
    Sin,
    Cos,
}

/// `sum_n (-1)^n z^(2n+1) q^(e1 n^2 + e2 n) / [2n+1]_q!` (sine) or the even
/// analogue with `[2n]_q!` (cosine), through `z^order`.
pub fn gen_trig(kind: TrigKind, e1: i64, e2: i64, order: usize) -> ZSeries {
    let (offset, parity) = match kind {
        TrigKind::Sin => (1, Parity::Odd),
        TrigKind::Cos => (0, Parity::Even),
    };
    let mut coeffs = vec![QRat::zero(); order + 1];
    let mut n = 0usize;
    while 2 * n + offset <= order {
        let m = 2 * n + offset;
        let ni = n as i64;
        coeffs[m] = QRat::signed_monomial_over(n % 2 == 1, e1 * ni * ni + e2 * ni, &q_factorial(m));
        n += 1;
    }
    ZSeries::new(coeffs, parity).expect("parity holds by construction")
}

/// Coefficientwise `q -> 1/q`.
pub fn dual_series(s: &ZSeries) -> ZSeries {
    s.dual()
}

fn pair_parts(v: ExponentVector, order: usize) -> [ZSeries; 4] {
    let sin = gen_trig(TrigKind::Sin, v.a, v.b, order);
    let cos = gen_trig(TrigKind::Cos, v.c, v.d, order);
    let dsin = sin.dual();
    let dcos = cos.dual();
    [sin, dsin, cos, dcos]
}

/// `sin * sin* + cos * cos* - 1` through `z^order`.
pub fn pair_residual(v: ExponentVector, order: usize) -> ZSeries {
    let [sin, dsin, cos, dcos] = pair_parts(v, order);
    let s = &(&sin * &dsin) + &(&cos * &dcos);
    &s - &ZSeries::one(order)
}

/// First z-index at which the pair relation fails, or `None` through `order`.
///
/// Stops at the first nonzero coefficient, which is what makes the box search
/// cheap: almost every candidate fails by `z^4`.
pub fn pair_failure_index(v: ExponentVector, order: usize) -> Option<usize> {
    let [sin, dsin, cos, dcos] = pair_parts(v, order);
    (0..=order).step_by(2).find(|&k| {
        let mut c = &sin.product_coeff(&dsin, k) + &cos.product_coeff(&dcos, k);
        if k == 0 {
            c = &c - &QRat::one();
        }
        !c.is_zero()
    })
}

/// Inclusive integer ranges for the four exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBox {
    pub a: (i64, i64),
    pub b: (i64, i64),
    pub c: (i64, i64),
    pub d: (i64, i64),
}

impl SearchBox {
    pub const fn new(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> Self {
        Self { a, b, c, d }
    }

    /// `A, C in [-2, 4]`, `B, D in [-3, 3]`.
    pub const DEFAULT: SearchBox = SearchBox::new((-2, 4), (-3, 3), (-2, 4), (-3, 3));

    /// All vectors in the box in lexicographic order.
    pub fn vectors(&self) -> Vec<ExponentVector> {
        let r = |(lo, hi): (i64, i64)| lo..=hi;
        let mut out = Vec::new();
        for a in r(self.a) {
            for b in r(self.b) {
                for c in r(self.c) {
                    for d in r(self.d) {
                        out.push(ExponentVector::new(a, b, c, d));
                    }
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        let w = |(lo, hi): (i64, i64)| if hi >= lo { (hi - lo + 1) as usize } else { 0 };
        w(self.a) * w(self.b) * w(self.c) * w(self.d)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// All vectors in the box whose pair residual vanishes through `order`,
/// sorted lexicographically. Runs on the current rayon pool.
pub fn search_pairs(bx: &SearchBox, order: usize) -> Vec<ExponentVector> {
    let mut found: Vec<ExponentVector> = bx
        .vectors()
        .into_par_iter()
        .filter(|&v| pair_failure_index(v, order).is_none())
        .collect();
    found.sort();
    found
}

/// `sin^{(A,B)} / cos^{(C,D)}` through `z^order`.
pub fn tan_from_vector(v: ExponentVector, order: usize) -> Result<ZSeries> {
    let sin = gen_trig(TrigKind::Sin, v.a, v.b, order);
    let cos = gen_trig(TrigKind::Cos, v.c, v.d, order);
    sin.quotient(&cos)
}

/// `1 / cos^{(C,D)}` through `z^order`.
pub fn sec_from_vector(c: i64, d: i64, order: usize) -> Result<ZSeries> {
    gen_trig(TrigKind::Cos, c, d, order).reciprocal()
}

/// Exponent data of the closed form belonging to a comparator variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyExponents {
    Tangent(ExponentVector),
    /// `(C, D)` of the cosine in `1 / cos`.
    Secant(i64, i64),
}

/// Closed-form exponents matching each slice recursion.
pub fn variant_vector(variant: Variant) -> FamilyExponents {
    use crate::updown::Comparator::*;
    match (variant.kind(), variant.first(), variant.second()) {
        (Kind::Tangent, Ge, Le) => FamilyExponents::Tangent(ev(1, 1, 1, -1)),
        (Kind::Tangent, Ge, Lt) => FamilyExponents::Tangent(ev(0, 0, 0, 0)),
        (Kind::Tangent, Gt, Lt) => FamilyExponents::Tangent(ev(1, 0, 1, 0)),
        (Kind::Tangent, Le, Ge) => FamilyExponents::Tangent(ev(1, 0, 1, -1)),
        (Kind::Tangent, Le, Gt) => FamilyExponents::Tangent(ev(0, 0, 0, 0)),
        (Kind::Tangent, Lt, Gt) => FamilyExponents::Tangent(ev(1, 1, 1, 0)),
        (Kind::Secant, Le, Ge) => FamilyExponents::Secant(1, -1),
        (Kind::Secant, Le, Gt) => FamilyExponents::Secant(0, 0),
        (Kind::Secant, Lt, Ge) => FamilyExponents::Secant(2, -1),
        (Kind::Secant, Lt, Gt) => FamilyExponents::Secant(1, 0),
        _ => unreachable!("Variant construction admits only the ten families"),
    }
}

/// Closed-form series of a variant through `z^order`.
pub fn closed_form_series(variant: Variant, order: usize) -> Result<ZSeries> {
    match variant_vector(variant) {
        FamilyExponents::Tangent(v) => tan_from_vector(v, order),
        FamilyExponents::Secant(c, d) => sec_from_vector(c, d, order),
    }
}
