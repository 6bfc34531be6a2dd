//! Parser for the textual polynomial form produced by `Display for QPoly`.
//!
//! Accepts sums of terms `c`, `c*q`, `c*q^e`, `q^e`, `-q`, ... in any order;
//! repeated powers are added together. Whitespace may separate tokens.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::QPoly;
use crate::error::{Error, Result};

/// Largest exponent accepted from text. Keeps a hostile `q^99999999999`
/// from allocating a dense vector of that length.
pub const MAX_PARSED_EXPONENT: usize = 1 << 16;

impl FromStr for QPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        if chars.iter().all(|c| c.is_whitespace()) {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut pos = 0;
        let mut first = true;
        loop {
            pos = skip_ws(&chars, pos);
            if pos >= chars.len() {
                break;
            }
            let negative = match chars[pos] {
                '+' if !first => {
                    pos += 1;
                    false
                }
                '-' => {
                    pos += 1;
                    true
                }
                _ if first => false,
                c => {
                    return Err(Error::Parse(format!(
                        "expected '+' or '-' before term, found {c:?}"
                    )))
                }
            };
            first = false;
            pos = skip_ws(&chars, pos);
            let (coeff, exp, next) = parse_term(&chars, pos)?;
            pos = next;
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            if negative {
                coeffs[exp] -= coeff;
            } else {
                coeffs[exp] += coeff;
            }
        }
        Ok(QPoly::from_coeffs(coeffs))
    }
}

fn skip_ws(chars: &[char], mut pos: usize) -> usize {
    while pos < chars.len() && chars[pos].is_whitespace() {
        pos += 1;
    }
    pos
}

fn parse_term(chars: &[char], mut pos: usize) -> Result<(BigInt, usize, usize)> {
    let start = pos;
    while pos < chars.len() && chars[pos].is_ascii_digit() {
        pos += 1;
    }
    let coeff = if pos > start {
        let digits: String = chars[start..pos].iter().collect();
        digits
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(e.to_string()))?
    } else {
        BigInt::from(1)
    };
    let has_coeff = pos > start;
    let after_coeff = pos;
    pos = skip_ws(chars, pos);
    if has_coeff && pos < chars.len() && chars[pos] == '*' {
        pos = skip_ws(chars, pos + 1);
        if pos >= chars.len() || chars[pos] != 'q' {
            return Err(Error::Parse("expected 'q' after '*'".into()));
        }
    }
    if pos < chars.len() && chars[pos] == 'q' {
        pos += 1;
        let mut exp = 1usize;
        let caret = skip_ws(chars, pos);
        if caret < chars.len() && chars[caret] == '^' {
            pos = skip_ws(chars, caret + 1);
            let es = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == es {
                return Err(Error::Parse("missing exponent after '^'".into()));
            }
            let digits: String = chars[es..pos].iter().collect();
            exp = digits
                .parse::<usize>()
                .ok()
                .filter(|&e| e <= MAX_PARSED_EXPONENT)
                .ok_or_else(|| Error::Parse(format!("exponent {digits} out of range")))?;
        }
        return Ok((coeff, exp, pos));
    }
    if !has_coeff {
        return Err(Error::Parse(format!("expected a term at position {start}")));
    }
    Ok((coeff, 0, after_coeff))
}
