//! Exact arithmetic kernel: integer polynomials in `q`, reduced rational
//! functions, truncated series in `z`, and the classical q-analogs built on
//! them.

mod gcd;
mod poly;
mod qrat;
mod series;
mod text;

pub use gcd::poly_gcd;
pub use poly::QPoly;
pub use qrat::QRat;
pub use series::{Parity, ZSeries};
pub use text::MAX_PARSED_EXPONENT;

/// Arbitrary-precision rational scalar.
pub type Rational = num_rational::BigRational;

/// `[n]_q = 1 + q + ... + q^(n-1)`; `[0]_q = 0`.
pub fn q_int(n: usize) -> QPoly {
    QPoly::from_i64s(&vec![1; n])
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: usize) -> QPoly {
    (1..=n).map(q_int).product()
}

/// Gaussian binomial `[n]_q! / ([k]_q! [n-k]_q!)`, zero outside `0 <= k <= n`.
pub fn q_binomial(n: i64, k: i64) -> QPoly {
    if n < 0 || k < 0 || k > n {
        return QPoly::zero();
    }
    let (n, k) = (n as usize, k as usize);
    let k = k.min(n - k);
    // [n]_q [n-1]_q ... [n-k+1]_q / [k]_q!
    let top: QPoly = ((n - k + 1)..=n).map(q_int).product();
    top.div_exact(&q_factorial(k))
        .expect("Gaussian binomials are polynomials")
}

/// `(x; q)_n = (1 - x)(1 - x q) ... (1 - x q^(n-1))`.
pub fn q_pochhammer(x: &QRat, n: usize) -> QRat {
    (0..n)
        .map(|j| &QRat::one() - &x.mul_q_pow(j as i64))
        .product()
}

/// `prod_{i=lo}^{hi} (1 + q^i)`, empty product 1.
pub fn one_plus_q_powers(lo: usize, hi: usize) -> QPoly {
    (lo..=hi)
        .map(|i| &QPoly::one() + &QPoly::q_pow(i))
        .product()
}

/// `n (n - 1) / 2` as a signed exponent.
pub fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// `sum_k gauss(n,k) z^k q^(k(k-1)/2) - prod_{j<n} (1 + q^j z)`; always zero.
pub fn verify_product_formula(n: usize, z: &QRat) -> QRat {
    let lhs: QRat = (0..=n)
        .map(|k| {
            let term = QRat::from_poly(q_binomial(n as i64, k as i64)).mul_q_pow(binom2(k as i64));
            &term * &z.pow(k as u32)
        })
        .sum();
    let rhs: QRat = (0..n)
        .map(|j| &QRat::one() + &z.mul_q_pow(j as i64))
        .product();
    &lhs - &rhs
}
