//! Tangent polynomials `T_{2n+1}(q) = [2n+1]_q! [z^(2n+1)] tan`, their
//! divisibility by `(1+q)(1+q^2)...(1+q^n)`, and the identities behind it.

use crate::closedform::{gen_trig, tan_from_vector, ExponentVector, TrigKind};
use crate::error::{Error, Result};
use crate::qalg::{binom2, one_plus_q_powers, q_binomial, q_factorial, QPoly, QRat, ZSeries};

const fn ev(a: i64, b: i64, c: i64, d: i64) -> ExponentVector {
    ExponentVector { a, b, c, d }
}

/// The tangent vectors whose polynomials are divisible by `prod (1+q^i)`.
pub const DIVISIBLE_VECTORS: [ExponentVector; 6] = [
    ev(0, 0, 0, 0),
    ev(2, 1, 2, -1),
    ev(0, 1, 0, 1),
    ev(2, 0, 2, -2),
    ev(1, 0, 1, 0),
    ev(1, 1, 1, -1),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentPolynomial {
    pub n: usize,
    pub vector: ExponentVector,
    pub value: QPoly,
}

fn extract(vector: ExponentVector, n: usize, s: &ZSeries) -> Result<TangentPolynomial> {
    let m = 2 * n + 1;
    let scaled = s.coeff(m) * &QRat::from_poly(q_factorial(m));
    match scaled.as_poly() {
        Some(p) => Ok(TangentPolynomial {
            n,
            vector,
            value: p.clone(),
        }),
        None => Err(Error::NotAPolynomial(scaled.to_string())),
    }
}

/// `T_{2n+1}(q)` of one vector.
pub fn big_t(v: ExponentVector, n: usize) -> Result<TangentPolynomial> {
    extract(v, n, &tan_from_vector(v, 2 * n + 1)?)
}

/// `T_1, T_3, ..., T_{2 max_n + 1}` from a single series expansion.
pub fn big_t_all(v: ExponentVector, max_n: usize) -> Result<Vec<TangentPolynomial>> {
    let s = tan_from_vector(v, 2 * max_n + 1)?;
    (0..=max_n).map(|n| extract(v, n, &s)).collect()
}

/// `T_{2n+1}(q) / prod_{i=1}^n (1 + q^i)`.
pub fn check_divisibility(v: ExponentVector, n: usize) -> Result<QPoly> {
    divide_by_products(&big_t(v, n)?)
}

/// Quotient of an already computed tangent polynomial.
pub fn divide_by_products(t: &TangentPolynomial) -> Result<QPoly> {
    let d = one_plus_q_powers(1, t.n);
    let (quot, rem) = t.value.div_rem(&d).expect("monic divisor");
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(Error::NotDivisible {
            remainder: rem.to_string(),
        })
    }
}

/// `T^{dual}_{2n+1}(q) - q^(n(2n+1)) T_{2n+1}(1/q)`; zero for every tangent vector.
pub fn duality_residual(v: ExponentVector, n: usize) -> Result<QRat> {
    Ok(duality_residual_from(&big_t(v, n)?, &big_t(v.dual(), n)?))
}

/// As [`duality_residual`] for precomputed polynomials of a vector and its dual.
pub fn duality_residual_from(t: &TangentPolynomial, dual: &TangentPolynomial) -> QRat {
    assert_eq!(t.n, dual.n);
    let ni = t.n as i64;
    let image = QRat::from_poly(t.value.clone())
        .subst_q_inverse()
        .mul_q_pow(ni * (2 * ni + 1));
    &QRat::from_poly(dual.value.clone()) - &image
}

/// `T^{(0,1,0,1)}_{2n+1} - q^n T^{(0,0,0,0)}_{2n+1}`.
pub fn scaling_residual(n: usize) -> Result<QPoly> {
    let scaled = big_t(ev(0, 1, 0, 1), n)?.value;
    let base = big_t(ev(0, 0, 0, 0), n)?.value;
    Ok(&scaled - &base.shift_up(n))
}

/// Products of the `(1,0,1,0)` sine and cosine with their `q -> 1/q` images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MixedKind {
    /// `[z^(2n+1)] sin_{1/q} cos_q`.
    SincosDual,
    /// `[z^(2n+1)] sin_q cos_{1/q}`.
    SincosDualFlipped,
    /// `[z^(2n)] cos_q cos_{1/q}`.
    CosCos,
    /// `[z^(2n)] sin_q sin_{1/q}`.
    SinSin,
}

impl MixedKind {
    pub const ALL: [MixedKind; 4] = [
        MixedKind::SincosDual,
        MixedKind::SincosDualFlipped,
        MixedKind::CosCos,
        MixedKind::SinSin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MixedKind::SincosDual => "sincos_dual",
            MixedKind::SincosDualFlipped => "sincos_dual_flipped",
            MixedKind::CosCos => "cos_cos",
            MixedKind::SinSin => "sin_sin",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            MixedKind::SincosDual | MixedKind::SincosDualFlipped => 0,
            MixedKind::CosCos | MixedKind::SinSin => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedProduct {
    pub kind: MixedKind,
    pub n: usize,
    pub value: QRat,
    pub closed_form: QRat,
    pub residual: QRat,
}

fn sign(n: usize) -> QRat {
    if n.is_multiple_of(2) {
        QRat::one()
    } else {
        -QRat::one()
    }
}

fn mixed_closed_form(kind: MixedKind, n: usize) -> QRat {
    let ni = n as i64;
    let sq = |p: QPoly| &p * &p;
    match kind {
        MixedKind::SincosDual | MixedKind::SincosDualFlipped => {
            let e = if kind == MixedKind::SincosDual {
                binom2(ni + 1)
            } else {
                binom2(ni)
            };
            let v =
                QRat::from_parts(sq(one_plus_q_powers(1, n)), q_factorial(2 * n + 1)).mul_q_pow(e);
            &sign(n) * &v
        }
        MixedKind::CosCos | MixedKind::SinSin => {
            let num = &sq(one_plus_q_powers(1, n - 1)) * &one_plus_q_powers(n, n);
            let v = &sign(n) * &QRat::from_parts(num, q_factorial(2 * n)).mul_q_pow(binom2(ni));
            if kind == MixedKind::SinSin {
                -v
            } else {
                v
            }
        }
    }
}

/// Coefficient by direct series multiplication, with its residual against the closed form.
pub fn mixed_product(kind: MixedKind, n: usize) -> MixedProduct {
    assert!(n >= kind.min_n());
    let order = 2 * n + 1;
    let sin = gen_trig(TrigKind::Sin, 1, 0, order);
    let cos = gen_trig(TrigKind::Cos, 1, 0, order);
    let value = match kind {
        MixedKind::SincosDual => sin.dual().product_coeff(&cos, 2 * n + 1),
        MixedKind::SincosDualFlipped => sin.product_coeff(&cos.dual(), 2 * n + 1),
        MixedKind::CosCos => cos.product_coeff(&cos.dual(), 2 * n),
        MixedKind::SinSin => sin.product_coeff(&sin.dual(), 2 * n),
    };
    let closed_form = mixed_closed_form(kind, n);
    let residual = &value - &closed_form;
    MixedProduct {
        kind,
        n,
        value,
        closed_form,
        residual,
    }
}

/// LHS minus RHS of the recursion for the `(1,0,1,0)` tangent polynomials:
///
/// `T_{2n+1} + sum_{k=1}^n gauss(2n+1,2k) q^C(k,2) (-1)^k prod_{i<k}(1+q^i)^2 (1+q^k) T_{2n+1-2k}`
/// `= q^C(n,2) (-1)^n prod_{i<=n} (1+q^i)^2`.
pub fn tanrec_residual(n: usize) -> Result<QPoly> {
    let ts = big_t_all(ev(1, 0, 1, 0), n)?;
    tanrec_residual_from(&ts, n)
}

/// As [`tanrec_residual`], reusing precomputed `T_1 .. T_{2n+1}` of `(1,0,1,0)`.
pub fn tanrec_residual_from(ts: &[TangentPolynomial], n: usize) -> Result<QPoly> {
    assert!(n >= 1 && ts.len() > n);
    let ni = n as i64;
    let mut lhs = ts[n].value.clone();
    for k in 1..=n {
        let ki = k as i64;
        let pre = one_plus_q_powers(1, k - 1);
        let w = &(&(&pre * &pre) * &one_plus_q_powers(k, k)) * &q_binomial(2 * ni + 1, 2 * ki);
        let term = (&w * &ts[n - k].value).shift_up(binom2(ki) as usize);
        lhs = if k % 2 == 0 {
            &lhs + &term
        } else {
            &lhs - &term
        };
    }
    let full = one_plus_q_powers(1, n);
    let rhs = (&full * &full).shift_up(binom2(ni) as usize);
    let rhs = if n.is_multiple_of(2) { rhs } else { -rhs };
    Ok(&lhs - &rhs)
}

/// `gauss(2n+1, 2k) prod_{i=1}^k (1+q^i) / prod_{i=n-k+1}^n (1+q^i)`, which is a polynomial.
pub fn gauss_ratio(n: usize, k: usize) -> Result<QPoly> {
    assert!(1 <= k && k <= n);
    let top = &q_binomial(2 * n as i64 + 1, 2 * k as i64) * &one_plus_q_powers(1, k);
    let den = one_plus_q_powers(n - k + 1, n);
    match top.div_rem(&den) {
        Some((quot, rem)) if rem.is_zero() => Ok(quot),
        _ => Err(Error::NotAPolynomial(
            QRat::from_parts(top, den).to_string(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::q_int;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    #[test]
    fn small_tangent_polynomials() {
        assert_eq!(big_t(ev(0, 0, 0, 0), 1).unwrap().value, p(&[0, 1, 1]));
        assert_eq!(big_t(ev(1, 0, 1, 0), 1).unwrap().value, p(&[0, 0, 1, 1]));
        for v in DIVISIBLE_VECTORS {
            assert_eq!(big_t(v, 0).unwrap().value, QPoly::one());
        }
    }

    #[test]
    fn quotients() {
        assert_eq!(check_divisibility(ev(0, 0, 0, 0), 1).unwrap(), p(&[0, 1]));
        assert_eq!(
            check_divisibility(ev(1, 0, 1, 0), 1).unwrap(),
            p(&[0, 0, 1])
        );
        for v in DIVISIBLE_VECTORS {
            for t in big_t_all(v, 5).unwrap() {
                divide_by_products(&t).unwrap_or_else(|e| panic!("{v} n={}: {e}", t.n));
            }
        }
    }

    #[test]
    fn non_divisible_vector_reports_remainder() {
        // (1,0,1,-1) is a tangent family outside the divisible list: T_3 = 1 + q^2
        let err = check_divisibility(ev(1, 0, 1, -1), 1).unwrap_err();
        assert!(matches!(err, Error::NotDivisible { .. }), "{err}");
    }

    #[test]
    fn duality_and_scaling() {
        for v in DIVISIBLE_VECTORS {
            for n in 0..=4 {
                assert!(duality_residual(v, n).unwrap().is_zero(), "{v} n={n}");
            }
        }
        for n in 0..=5 {
            assert!(scaling_residual(n).unwrap().is_zero());
        }
    }

    #[test]
    fn mixed_products_small() {
        let m = mixed_product(MixedKind::SincosDual, 1);
        let sq = p(&[1, 2, 1]);
        assert_eq!(m.value, -QRat::from_parts(sq.shift_up(1), q_factorial(3)));
        assert!(m.residual.is_zero());
        let cc = mixed_product(MixedKind::CosCos, 1);
        assert_eq!(cc.value, -QRat::one());
        assert_eq!(mixed_product(MixedKind::SinSin, 1).value, QRat::one());
        for kind in MixedKind::ALL {
            for n in kind.min_n()..=5 {
                assert!(
                    mixed_product(kind, n).residual.is_zero(),
                    "{} n={n}",
                    kind.name()
                );
            }
        }
    }

    #[test]
    fn recursion_residuals() {
        for n in 1..=5 {
            assert!(tanrec_residual(n).unwrap().is_zero(), "n={n}");
        }
    }

    #[test]
    fn gauss_ratios() {
        assert_eq!(gauss_ratio(1, 1).unwrap(), q_int(3));
        for n in 1..=6 {
            for k in 1..=n {
                gauss_ratio(n, k).unwrap();
            }
        }
    }
}
