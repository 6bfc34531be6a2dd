//! Continued fractions `z / (c_1 - z^2 / (c_2 - z^2 / (c_3 - ...)))` for
//! odd series: coefficient schedules, continuants, convergents and exact
//! coefficient extraction.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qalg::{binom2, one_plus_q_powers, q_factorial, q_int, Parity, QPoly, QRat, ZSeries};

/// Named coefficient schedules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScheduleName {
    /// `(0,0,0,0)`: `c_k = [2k-1]_q q^(1-k)`.
    Thm1,
    /// `(2,1,2,-1)`: the `q -> 1/q` image of `Thm1`, which is `Thm1` again.
    Thm2Dual,
    /// `(0,1,0,1)`: exponents `0, -2, -2, -4, -4, ...`.
    Thm0101,
    /// `(2,0,2,-2)`: exponents `0, 0, -2, -2, -4, ...`.
    Thm2022,
    /// `(1,0,1,0)`, conjectural.
    Conj1010,
    /// `(1,1,1,-1)`, conjectural.
    Conj1111,
}

impl ScheduleName {
    pub const ALL: [ScheduleName; 6] = [
        ScheduleName::Thm1,
        ScheduleName::Thm2Dual,
        ScheduleName::Thm0101,
        ScheduleName::Thm2022,
        ScheduleName::Conj1010,
        ScheduleName::Conj1111,
    ];

    pub const PROVEN: [ScheduleName; 4] = [
        ScheduleName::Thm1,
        ScheduleName::Thm2Dual,
        ScheduleName::Thm0101,
        ScheduleName::Thm2022,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScheduleName::Thm1 => "thm1",
            ScheduleName::Thm2Dual => "thm2_dual",
            ScheduleName::Thm0101 => "thm_0101",
            ScheduleName::Thm2022 => "thm_2022",
            ScheduleName::Conj1010 => "conj_1010",
            ScheduleName::Conj1111 => "conj_1111",
        }
    }

    /// Exponent vector of the tangent family the schedule expands.
    pub fn vector(self) -> crate::closedform::ExponentVector {
        use crate::closedform::ExponentVector as V;
        match self {
            ScheduleName::Thm1 => V::new(0, 0, 0, 0),
            ScheduleName::Thm2Dual => V::new(2, 1, 2, -1),
            ScheduleName::Thm0101 => V::new(0, 1, 0, 1),
            ScheduleName::Thm2022 => V::new(2, 0, 2, -2),
            ScheduleName::Conj1010 => V::new(1, 0, 1, 0),
            ScheduleName::Conj1111 => V::new(1, 1, 1, -1),
        }
    }

    /// `e_k` in `c_k = [2k-1]_q q^(e_k)`, `k >= 1`.
    pub fn exponent(self, k: usize) -> i64 {
        assert!(k >= 1);
        let k = k as i64;
        match self {
            ScheduleName::Thm1 | ScheduleName::Thm2Dual => 1 - k,
            ScheduleName::Thm0101 => -2 * (k / 2),
            ScheduleName::Thm2022 => -2 * ((k - 1) / 2),
            ScheduleName::Conj1010 => {
                let m = k / 2;
                if k % 2 == 1 {
                    m * (2 * m - 1)
                } else {
                    -(m + 1) * (2 * m - 1)
                }
            }
            ScheduleName::Conj1111 => {
                if k % 2 == 0 {
                    let m = k / 2;
                    (m - 1) * (2 * m - 1)
                } else {
                    let m = (k + 1) / 2;
                    -(m - 1) * (2 * m + 1)
                }
            }
        }
    }
}

impl fmt::Display for ScheduleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScheduleName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ScheduleName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownSchedule(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Coefficients {
    Ansatz(ScheduleName),
    Explicit(Vec<QRat>),
}

/// Coefficients `c_1, c_2, ...` of a continued fraction in partial-numerator form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfSchedule {
    name: String,
    coeffs: Coefficients,
}

impl CfSchedule {
    pub fn named(name: ScheduleName) -> Self {
        Self {
            name: name.as_str().to_string(),
            coeffs: Coefficients::Ansatz(name),
        }
    }

    /// A finite schedule, e.g. the output of [`extract_cf`].
    pub fn explicit(name: impl Into<String>, coeffs: Vec<QRat>) -> Self {
        Self {
            name: name.into(),
            coeffs: Coefficients::Explicit(coeffs),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `c_k` for `k >= 1`; `None` past the end of an explicit schedule.
    pub fn coeff(&self, k: usize) -> Option<QRat> {
        assert!(k >= 1);
        match &self.coeffs {
            Coefficients::Ansatz(n) => {
                Some(QRat::from_poly(q_int(2 * k - 1)).mul_q_pow(n.exponent(k)))
            }
            Coefficients::Explicit(v) => v.get(k - 1).cloned(),
        }
    }

    /// `c_1 .. c_depth`. Panics if an explicit schedule is shorter.
    pub fn coeffs(&self, depth: usize) -> Vec<QRat> {
        (1..=depth)
            .map(|k| self.coeff(k).expect("schedule too short"))
            .collect()
    }

    /// `b_k = 1 / (c_k c_{k+1})` of the normalized form `z / (1 - b_1 z^2 / (1 - b_2 z^2 / ...))`.
    pub fn normalized(&self, k: usize) -> Option<QRat> {
        let c = &self.coeff(k)? * &self.coeff(k + 1)?;
        c.inv()
    }
}

/// Looks up a schedule by its name (`thm1`, `conj_1010`, ...).
pub fn schedule(name: &str) -> Result<CfSchedule> {
    Ok(CfSchedule::named(name.parse()?))
}

/// `p_n` (odd) and `q_n` (even) polynomials in `z` of the `n`-th convergent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuantPair {
    pub p: ZSeries,
    pub q: ZSeries,
    pub depth: usize,
}

/// `p_n = c_n p_{n-1} - z^2 p_{n-2}`, `p_0 = 0`, `p_1 = z`; same recursion for
/// `q_n` with `q_0 = 1`, `q_1 = c_1`. Polynomials are stored through `z^max(n,1)`.
pub fn continuants(s: &CfSchedule, n: usize) -> ContinuantPair {
    let order = n.max(1);
    let mut p_prev = ZSeries::zero(order, Parity::Odd);
    let mut q_prev = ZSeries::one(order);
    if n == 0 {
        return ContinuantPair {
            p: p_prev,
            q: q_prev,
            depth: 0,
        };
    }
    let c1 = s.coeff(1).expect("schedule too short");
    let mut p_cur = ZSeries::z(order);
    let mut q_cur = ZSeries::constant(c1, order);
    for k in 2..=n {
        let c = s.coeff(k).expect("schedule too short");
        let p_next = &p_cur.scale(&c) - &p_prev.shift_up_two();
        let q_next = &q_cur.scale(&c) - &q_prev.shift_up_two();
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
    }
    ContinuantPair {
        p: p_cur,
        q: q_cur,
        depth: n,
    }
}

/// `p_n / q_n` expanded through `z^order`.
pub fn convergent(s: &CfSchedule, n: usize, order: usize) -> Result<ZSeries> {
    let c = continuants(s, n);
    c.p.with_order(order).quotient(&c.q.with_order(order))
}

/// Result of [`extract_cf`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfExpansion {
    pub coeffs: Vec<QRat>,
    /// The remainder vanished identically before the requested depth: the
    /// input is itself a convergent of the returned finite fraction.
    pub finite: bool,
}

impl CfExpansion {
    /// `e_k` such that `c_k = [2k-1]_q q^(e_k)`, where that form applies.
    pub fn ansatz_exponents(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| ansatz_exponent(c, i + 1))
            .collect()
    }
}

/// `e` with `c = [2k-1]_q q^e`, if one exists.
pub fn ansatz_exponent(c: &QRat, k: usize) -> Option<i64> {
    let ratio = c / &QRat::from_poly(q_int(2 * k - 1));
    let (num, den) = (ratio.num(), ratio.den());
    let is_q_power =
        |p: &QPoly| p.low_order() == p.degree() && p.low_coeff().is_some_and(|c| *c == 1.into());
    if !is_q_power(num) || !is_q_power(den) {
        return None;
    }
    Some(num.degree()? as i64 - den.degree()? as i64)
}

/// The unique `c_1 .. c_depth` with `t = z / (c_1 - z^2 / (c_2 - ...))`
/// through the available order, by repeated reciprocal-and-shift.
pub fn extract_cf(t: &ZSeries, depth: usize) -> Result<CfExpansion> {
    if t.order() < 2 * depth + 1 {
        return Err(Error::InsufficientOrder {
            order: t.order(),
            depth,
        });
    }
    if t.parity() != Parity::Odd {
        return Err(Error::ParityRequired);
    }
    if t.coeff(1).is_zero() {
        return Err(Error::ZeroLeadingCoefficient { step: 1 });
    }
    // w = z / t = c_1 - z^2 / (c_2 - ...), an even series through z^(order-1)
    let u = t.shift_down(1);
    let mut w = u.reciprocal()?;
    let mut coeffs = Vec::with_capacity(depth);
    for step in 1..=depth {
        let c = w.coeff(0).clone();
        if c.is_zero() {
            return Err(Error::ZeroLeadingCoefficient { step });
        }
        coeffs.push(c.clone());
        if step == depth {
            break;
        }
        // (c - w) / z^2 = 1 / (c_{k+1} - ...)
        let rest = &ZSeries::constant(c, w.order()) - &w;
        let rest = rest.shift_down(2);
        if rest.is_zero() {
            return Ok(CfExpansion {
                coeffs,
                finite: true,
            });
        }
        if rest.coeff(0).is_zero() {
            return Err(Error::ZeroLeadingCoefficient { step: step + 1 });
        }
        w = rest.reciprocal()?;
    }
    Ok(CfExpansion {
        coeffs,
        finite: false,
    })
}

/// `q -> 1/q` applied to each `c_k` of `from`, minus `c_k` of `to`.
///
/// Replacing `q` by `1/q` in a series replaces every partial denominator the
/// same way, so a zero result means the expansion of `from` carries over to
/// the dual family verbatim.
pub fn dual_schedule_residuals(from: &CfSchedule, to: &CfSchedule, depth: usize) -> Vec<QRat> {
    (1..=depth)
        .map(|k| {
            let a = from.coeff(k).expect("schedule too short").subst_q_inverse();
            &a - &to.coeff(k).expect("schedule too short")
        })
        .collect()
}

/// Coefficients of the fraction for `z^(2n+1)`-coefficients scaled by
/// `q^(direction * n)`: `c_k` stays for odd `k` and gains `q^(-direction)` for even `k`.
pub fn scaled_coeffs(coeffs: &[QRat], direction: i64) -> Vec<QRat> {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if (i + 1) % 2 == 0 {
                c.mul_q_pow(-direction)
            } else {
                c.clone()
            }
        })
        .collect()
}

/// Consistency of the normalized-form coefficient `b_k` offered for the
/// `(1,0,1,0)` schedule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BkResidual {
    pub k: usize,
    /// `q^(-k + (-1)^k (2k-1)) / ([k]_q [k+1]_q)`.
    pub proposed: QRat,
    /// Proposed form minus its bracketed rewriting with `(1 ± q^(4k-2))`.
    pub forms_residual: QRat,
    /// `1 / (c_k c_{k+1})` from the `conj_1010` schedule.
    pub from_schedule: QRat,
    /// `proposed - from_schedule`.
    pub schedule_residual: QRat,
    /// Closed form of `1 / (c_k c_{k+1})`: `q^(3k-1)` (odd k) or `q^(k-1)`
    /// (even k) over `[2k-1]_q [2k+1]_q`, minus `from_schedule`.
    pub corrected_residual: QRat,
}

/// Checks the two proposed `b_k` forms against each other and against the
/// `conj_1010` schedule for `k = 1..=depth`.
pub fn bk_equivalence_check(depth: usize) -> Vec<BkResidual> {
    let sched = CfSchedule::named(ScheduleName::Conj1010);
    (1..=depth)
        .map(|k| {
            let ki = k as i64;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let bracket_den = QRat::from_poly(&q_int(k) * &q_int(k + 1));
            let proposed = &QRat::q_pow(-ki + sign * (2 * ki - 1)) / &bracket_den;
            let one = QRat::one();
            let big = QRat::q_pow(4 * ki - 2);
            let half = QRat::from_rational(&crate::qalg::Rational::new(1.into(), 2.into()));
            let base = QRat::q_pow(-3 * ki + 1);
            let bracket = &(&half * &base) * &(&one + &big)
                - &(&(&half * &QRat::from_int(sign)) * &base) * &(&one - &big);
            let bracketed = &bracket / &bracket_den;
            let from_schedule = sched.normalized(k).expect("nonzero schedule coefficients");
            let corrected_exp = if k % 2 == 1 { 3 * ki - 1 } else { ki - 1 };
            let corrected = &QRat::q_pow(corrected_exp)
                / &QRat::from_poly(&q_int(2 * k - 1) * &q_int(2 * k + 1));
            BkResidual {
                k,
                forms_residual: &proposed - &bracketed,
                schedule_residual: &proposed - &from_schedule,
                corrected_residual: &corrected - &from_schedule,
                proposed,
                from_schedule,
            }
        })
        .collect()
}

/// Schedules whose continuants have a known closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedContinuants {
    Thm1,
    Thm0101,
}

impl TryFrom<ScheduleName> for ClosedContinuants {
    type Error = Error;
    fn try_from(n: ScheduleName) -> Result<Self> {
        match n {
            ScheduleName::Thm1 => Ok(ClosedContinuants::Thm1),
            ScheduleName::Thm0101 => Ok(ClosedContinuants::Thm0101),
            other => Err(Error::UnknownSchedule(format!(
                "no closed continuants for {other}"
            ))),
        }
    }
}

/// Continuants from their explicit sums:
///
/// `p_n = sum_k z^(2k+1) (-1)^k [2n-2k-1]! q^(a_k) / ([n-2k-1]! [2k+1]! prod_{i<=n-1-2k} (1+q^i))`
/// `q_n = sum_k z^(2k)   (-1)^k [2n-2k]!   q^(b_k) / ([n-2k]!   [2k]!   prod_{i<=n-2k}   (1+q^i))`
///
/// with `a_k = k(2k+1) - C(n,2)`, `b_k = k(2k-1) - C(n,2)` for `Thm1` and
/// `a_k = 2k(k+1) - C(n,2) - floor(n/2)`, `b_k = 2k^2 - C(n,2) - floor(n/2)`
/// for `Thm0101`.
pub fn closed_continuants(name: ClosedContinuants, n: usize) -> ContinuantPair {
    assert!(n >= 1);
    let order = n;
    let ni = n as i64;
    let shift = match name {
        ClosedContinuants::Thm1 => -binom2(ni),
        ClosedContinuants::Thm0101 => -binom2(ni) - ni / 2,
    };
    let term = |k: usize, odd: bool| -> QRat {
        let ki = k as i64;
        let (top, left, right, prod_hi) = if odd {
            (2 * n - 2 * k - 1, n - 2 * k - 1, 2 * k + 1, n - 1 - 2 * k)
        } else {
            (2 * n - 2 * k, n - 2 * k, 2 * k, n - 2 * k)
        };
        let e = match (name, odd) {
            (ClosedContinuants::Thm1, true) => ki * (2 * ki + 1),
            (ClosedContinuants::Thm1, false) => ki * (2 * ki - 1),
            (ClosedContinuants::Thm0101, true) => 2 * ki * (ki + 1),
            (ClosedContinuants::Thm0101, false) => 2 * ki * ki,
        } + shift;
        let den = &(&q_factorial(left) * &q_factorial(right)) * &one_plus_q_powers(1, prod_hi);
        let v = QRat::from_parts(q_factorial(top), den).mul_q_pow(e);
        if k % 2 == 1 {
            -v
        } else {
            v
        }
    };
    let mut p = vec![QRat::zero(); order + 1];
    let mut q = vec![QRat::zero(); order + 1];
    let mut k = 0;
    while 2 * k < n {
        p[2 * k + 1] = term(k, true);
        k += 1;
    }
    let mut k = 0;
    while 2 * k <= n {
        q[2 * k] = term(k, false);
        k += 1;
    }
    ContinuantPair {
        p: ZSeries::new(p, Parity::Odd).expect("odd by construction"),
        q: ZSeries::new(q, Parity::Even).expect("even by construction"),
        depth: n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ansatz(k: usize, e: i64) -> QRat {
        QRat::from_poly(q_int(2 * k - 1)).mul_q_pow(e)
    }

    #[test]
    fn schedule_exponents() {
        let exps = |n: ScheduleName| (1..=6).map(|k| n.exponent(k)).collect::<Vec<_>>();
        assert_eq!(exps(ScheduleName::Thm1), vec![0, -1, -2, -3, -4, -5]);
        assert_eq!(exps(ScheduleName::Thm0101), vec![0, -2, -2, -4, -4, -6]);
        assert_eq!(exps(ScheduleName::Thm2022), vec![0, 0, -2, -2, -4, -4]);
        assert_eq!(exps(ScheduleName::Conj1010), vec![0, -2, 1, -9, 6, -20]);
        assert_eq!(exps(ScheduleName::Conj1111), vec![0, 0, -5, 3, -14, 10]);
        let s = schedule("conj_1010").unwrap();
        assert_eq!(s.coeff(4).unwrap(), ansatz(4, -9));
        assert!(matches!(schedule("thm9"), Err(Error::UnknownSchedule(_))));
    }

    #[test]
    fn continuant_initial_values() {
        let s = schedule("thm1").unwrap();
        let c0 = continuants(&s, 0);
        assert!(c0.p.is_zero());
        assert_eq!(c0.q, ZSeries::one(1));
        let c1 = continuants(&s, 1);
        assert_eq!(c1.p, ZSeries::z(1));
        assert_eq!(c1.q, ZSeries::constant(s.coeff(1).unwrap(), 1));
        let c2 = continuants(&s, 2);
        let a2 = s.coeff(2).unwrap();
        assert_eq!(c2.p, ZSeries::z(2).scale(&a2));
        assert_eq!(c2.q.coeff(0), &(&a2 * &s.coeff(1).unwrap()));
        assert_eq!(c2.q.coeff(2), &-QRat::one());
    }

    #[test]
    fn first_convergent() {
        let s = schedule("thm1").unwrap();
        let c = convergent(&s, 1, 3).unwrap();
        assert_eq!(c, ZSeries::z(3));
    }

    #[test]
    fn extraction_of_finite_fraction() {
        let z = ZSeries::z(5);
        let e = extract_cf(&z, 2).unwrap();
        assert_eq!(e.coeffs, vec![QRat::one()]);
        assert!(e.finite);
        assert!(matches!(
            extract_cf(&z, 3),
            Err(Error::InsufficientOrder { .. })
        ));
        assert!(matches!(
            extract_cf(&ZSeries::zero(5, Parity::Odd), 2),
            Err(Error::ZeroLeadingCoefficient { step: 1 })
        ));
    }

    #[test]
    fn extraction_inverts_convergent() {
        let s = CfSchedule::explicit("x", vec![QRat::from_int(2), QRat::q(), QRat::from_int(-3)]);
        let t = convergent(&s, 3, 9).unwrap();
        let e = extract_cf(&t, 4).unwrap();
        assert_eq!(e.coeffs, s.coeffs(3));
        assert!(e.finite);
    }

    #[test]
    fn ansatz_exponent_detection() {
        assert_eq!(ansatz_exponent(&ansatz(3, -4), 3), Some(-4));
        assert_eq!(ansatz_exponent(&ansatz(2, 7), 2), Some(7));
        assert_eq!(ansatz_exponent(&QRat::from_int(2), 2), None);
    }

    #[test]
    fn bk_forms_agree_with_each_other_but_not_the_schedule() {
        for r in bk_equivalence_check(6) {
            assert!(r.forms_residual.is_zero(), "k={}", r.k);
            assert!(!r.schedule_residual.is_zero(), "k={}", r.k);
            assert!(r.corrected_residual.is_zero(), "k={}", r.k);
        }
        // k = 1: proposed q^-2 / [2], schedule q^2 / [3]
        let r = &bk_equivalence_check(1)[0];
        assert_eq!(r.proposed, &QRat::q_pow(-2) / &QRat::from_poly(q_int(2)));
        assert_eq!(
            r.from_schedule,
            &QRat::q_pow(2) / &QRat::from_poly(q_int(3))
        );
    }

    #[test]
    fn duality_between_schedules() {
        let s = |n| CfSchedule::named(n);
        assert!(
            dual_schedule_residuals(&s(ScheduleName::Thm1), &s(ScheduleName::Thm2Dual), 8)
                .iter()
                .all(QRat::is_zero)
        );
        assert!(
            dual_schedule_residuals(&s(ScheduleName::Thm0101), &s(ScheduleName::Thm2022), 8)
                .iter()
                .all(QRat::is_zero)
        );
        assert!(
            dual_schedule_residuals(&s(ScheduleName::Conj1010), &s(ScheduleName::Conj1111), 8)
                .iter()
                .all(QRat::is_zero)
        );
        let r = dual_schedule_residuals(&s(ScheduleName::Thm1), &s(ScheduleName::Thm0101), 3);
        assert!(!r[1].is_zero());
    }

    #[test]
    fn scaling_of_schedules() {
        let thm1 = CfSchedule::named(ScheduleName::Thm1).coeffs(6);
        assert_eq!(
            scaled_coeffs(&thm1, 1),
            CfSchedule::named(ScheduleName::Thm0101).coeffs(6)
        );
        assert_eq!(scaled_coeffs(&scaled_coeffs(&thm1, 1), -1), thm1);
        let scaled = scaled_coeffs(&CfSchedule::named(ScheduleName::Conj1010).coeffs(6), 1);
        let e = CfExpansion {
            coeffs: scaled,
            finite: false,
        }
        .ansatz_exponents()
        .unwrap();
        assert_eq!(e, vec![0, -3, 1, -10, 6, -21]);
    }

    #[test]
    fn closed_continuants_first_depths() {
        let c = closed_continuants(ClosedContinuants::Thm1, 1);
        assert_eq!(c.p, ZSeries::z(1));
        assert_eq!(c.q, ZSeries::one(1));
        for n in 1..=4 {
            for (name, sched) in [
                (ClosedContinuants::Thm1, "thm1"),
                (ClosedContinuants::Thm0101, "thm_0101"),
            ] {
                assert_eq!(
                    closed_continuants(name, n),
                    continuants(&schedule(sched).unwrap(), n),
                    "{sched} n={n}"
                );
            }
        }
        assert!(ClosedContinuants::try_from(ScheduleName::Conj1010).is_err());
    }
}
