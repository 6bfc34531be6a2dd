//! Brute-force word enumeration over a truncated alphabet.
//!
//! Nothing here touches the slice recursion: words are generated depth-first
//! and discarded as soon as a comparator fails.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::Result;
use crate::qalg::{QPoly, QRat};
use crate::updown::{Comparator, Variant};

/// Letters `1..=m`; the enumerated weight is exact modulo `q^m`, since any
/// omitted word has a letter `>= m + 1` of weight order `>= m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationBound {
    pub m: usize,
}

impl TruncationBound {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1);
        Self { m }
    }
}

fn admits(c: Comparator, a: usize, b: usize) -> bool {
    match c {
        Comparator::Le => a <= b,
        Comparator::Lt => a < b,
        Comparator::Ge => a >= b,
        Comparator::Gt => a > b,
    }
}

// counts[s] += number of completions whose exponent total is s
fn walk(chain: &[Comparator], last: usize, s: usize, m: usize, counts: &mut [u64]) {
    let Some((&c, rest)) = chain.split_first() else {
        counts[s] += 1;
        return;
    };
    for a in 1..=m - s {
        if admits(c, last, a) {
            walk(rest, a, s + a - 1, m, counts);
        }
    }
}

/// Weight `sum prod (1-q) q^(a_i - 1)` of all words `a_1 .. a_n` obeying
/// `chain` (`n - 1` comparators), modulo `q^m`.
pub fn enumerate_chain(chain: &[Comparator], bound: TruncationBound) -> QPoly {
    let m = bound.m;
    let n = chain.len() + 1;
    // partition by first letter; each worker fills its own histogram
    let counts = (1..=m)
        .into_par_iter()
        .map(|a| {
            let mut counts = vec![0u64; m];
            walk(chain, a, a - 1, m, &mut counts);
            counts
        })
        .reduce(
            || vec![0u64; m],
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
                x
            },
        );
    let words = QPoly::from_coeffs(counts.into_iter().map(BigInt::from).collect());
    let p = QPoly::from_i64s(&[1, -1]);
    words.mul_trunc(&p.pow(n as u32), m)
}

/// `tau_n` of a variant by enumeration, modulo `q^m`.
pub fn enumerate_tau(variant: Variant, n: usize, m: usize) -> QPoly {
    assert!(n >= 1);
    enumerate_chain(&variant.chain(n), TruncationBound::new(m))
}

/// Enumeration minus the `q`-expansion of the recursion value, modulo `q^m`.
pub fn oracle_compare(variant: Variant, n: usize, m: usize) -> Result<QPoly> {
    let exact = crate::updown::tau(variant, n)?.value;
    Ok(&enumerate_tau(variant, n, m) - &exact.to_q_series(m)?)
}

/// A chain read right to left.
pub fn reversed_chain(chain: &[Comparator]) -> Vec<Comparator> {
    chain.iter().rev().map(|c| c.flipped()).collect()
}

/// Weight of `chain` minus weight of its right-to-left reading, modulo `q^m`.
pub fn reversal_check(chain: &[Comparator], m: usize) -> QPoly {
    let b = TruncationBound::new(m);
    &enumerate_chain(chain, b) - &enumerate_chain(&reversed_chain(chain), b)
}

/// Number of permutations of `1..=n` with `pi_1 < pi_2 > pi_3 < ...`.
pub fn count_alternating_permutations(n: usize) -> u64 {
    assert!((1..=20).contains(&n));
    fn go(pos: usize, n: usize, last: usize, used: u32) -> u64 {
        if pos == n {
            return 1;
        }
        let up = pos % 2 == 1;
        (1..=n)
            .filter(|&x| used & (1 << x) == 0 && (if up { x > last } else { x < last }))
            .map(|x| go(pos + 1, n, x, used | (1 << x)))
            .sum()
    }
    (1..=n).map(|x| go(1, n, x, 1 << x)).sum()
}

/// `count_alternating_permutations(n) / n!` as an exact rational.
pub fn classical_probability(n: usize) -> QRat {
    let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
    QRat::from_rational(&crate::qalg::Rational::new(
        count_alternating_permutations(n).into(),
        fact,
    ))
}
