//! Polynomial gcd over the rationals via small-prime images and CRT.
//!
//! Every candidate is confirmed by exact trial division over the integers, so
//! an unlucky prime can only cost time, never correctness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::QPoly;

/// Primitive gcd of `a` and `b` over Q[q] (integer coefficients, content 1).
///
/// Returns `1` when the inputs are coprime. The sign of the result is
/// unspecified; callers only divide by it.
pub fn poly_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    let shift = a.low_order().unwrap().min(b.low_order().unwrap());
    let a = a.shift_down(a.low_order().unwrap()).primitive_part();
    let b = b.shift_down(b.low_order().unwrap()).primitive_part();
    let core = if a.is_constant() || b.is_constant() {
        QPoly::one()
    } else if a == b {
        a
    } else if let Some(g) = divides_either(&a, &b) {
        g
    } else {
        modular_gcd(&a, &b)
    };
    core.shift_up(shift)
}

fn divides_either(a: &QPoly, b: &QPoly) -> Option<QPoly> {
    let (small, big) = if a.degree() <= b.degree() {
        (a, b)
    } else {
        (b, a)
    };
    // cheap reject: a divisor must divide at q = 1 as well
    let s1 = small.eval_at_one();
    if !s1.is_zero() && !(big.eval_at_one() % &s1).is_zero() {
        return None;
    }
    big.div_exact(small).map(|_| small.clone())
}

/// Both inputs primitive with nonzero constant term and degree >= 1.
fn modular_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let lca = a.leading().unwrap();
    let lcb = b.leading().unwrap();
    let gamma = lca.gcd(lcb);

    let mut primes = PrimeStream::new();
    let mut best_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut image: Vec<BigInt> = Vec::new();
    let mut last: Option<QPoly> = None;

    loop {
        let p = primes.next_prime();
        let pb = BigInt::from(p);
        if (lca % &pb).is_zero() || (lcb % &pb).is_zero() {
            continue;
        }
        let ap = reduce(a, p);
        let bp = reduce(b, p);
        let gp = gcd_mod(ap, bp, p);
        let deg = gp.len() - 1;
        if deg == 0 {
            return QPoly::one();
        }
        if deg > best_deg {
            continue;
        }
        let g_mod = mod_u64(&gamma, p);
        let scaled: Vec<u64> = gp.iter().map(|&c| mul_mod(c, g_mod, p)).collect();
        if deg < best_deg {
            best_deg = deg;
            modulus = pb;
            image = scaled.into_iter().map(BigInt::from).collect();
            last = None;
        } else {
            crt_combine(&mut image, &modulus, &scaled, p);
            modulus *= &pb;
        }
        let cand = QPoly::from_coeffs(symmetric(&image, &modulus)).primitive_part();
        if last.as_ref() == Some(&cand)
            && a.div_exact(&cand).is_some()
            && b.div_exact(&cand).is_some()
        {
            return cand;
        }
        last = Some(cand);
    }
}

fn crt_combine(image: &mut [BigInt], modulus: &BigInt, residues: &[u64], p: u64) {
    let m_mod = mod_u64(modulus, p);
    let m_inv = inv_mod(m_mod, p);
    for (x, &r) in image.iter_mut().zip(residues) {
        let x_mod = mod_u64(x, p);
        let diff = (r + p - x_mod) % p;
        let t = mul_mod(diff, m_inv, p);
        *x += modulus * BigInt::from(t);
    }
}

fn symmetric(image: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let half: BigInt = modulus >> 1;
    image
        .iter()
        .map(|x| {
            let r = x.mod_floor(modulus);
            if r > half {
                r - modulus
            } else {
                r
            }
        })
        .collect()
}

fn mod_u64(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r.is_negative() {
        r + BigInt::from(p)
    } else {
        r
    };
    r.to_u64().unwrap()
}

fn reduce(a: &QPoly, p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.coeffs().iter().map(|c| mod_u64(c, p)).collect();
    trim(&mut v);
    v
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Monic gcd over GF(p).
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        rem_mod(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    let inv = inv_mod(*a.last().unwrap(), p);
    a.iter().map(|&c| mul_mod(c, inv, p)).collect()
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = *a.last().unwrap();
        if top != 0 {
            let f = mul_mod(top, inv, p);
            let off = a.len() - 1 - db;
            for (j, &bj) in b.iter().enumerate() {
                let t = mul_mod(f, bj, p);
                a[off + j] = (a[off + j] + p - t) % p;
            }
        }
        a.pop();
        trim(a);
    }
}

/// Primes below 2^31 in descending order.
struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    fn new() -> Self {
        Self {
            next: (1 << 31) - 1,
        }
    }

    fn next_prime(&mut self) -> u64 {
        loop {
            let c = self.next;
            self.next -= 2;
            if is_prime(c) {
                return c;
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
