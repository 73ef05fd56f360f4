use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Integer polynomial in `t`, as produced by characteristic polynomials.
///
/// Coefficients are stored in ascending powers with no trailing zeros, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn zero() -> CharPoly {
        CharPoly::default()
    }

    pub fn one() -> CharPoly {
        CharPoly::monomial(BigInt::one(), 0)
    }

    /// `t^k`.
    pub fn t_pow(k: usize) -> CharPoly {
        CharPoly::monomial(BigInt::one(), k)
    }

    pub fn monomial(coeff: BigInt, k: usize) -> CharPoly {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = coeff;
        CharPoly::from_ascending(coeffs)
    }

    /// `t^a (t - 1)^b`.
    pub fn t_pow_times_t_minus_one_pow(a: usize, b: usize) -> CharPoly {
        let t_minus_one = CharPoly::from_ascending(vec![BigInt::from(-1), BigInt::one()]);
        (0..b).fold(CharPoly::t_pow(a), |acc, _| &acc * &t_minus_one)
    }

    pub fn from_ascending(mut coeffs: Vec<BigInt>) -> CharPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        CharPoly { coeffs }
    }

    pub fn from_descending(coeffs: Vec<BigInt>) -> CharPoly {
        CharPoly::from_ascending(coeffs.into_iter().rev().collect())
    }

    pub fn from_i64_descending(coeffs: &[i64]) -> CharPoly {
        CharPoly::from_descending(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn ascending(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn descending(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// `(a_0, …, a_r)` with `χ = Σ (-1)^k a_k t^{d-k}`, where `d` is the degree
    /// and `t^{d-r}` the lowest nonzero power.
    pub fn alt_coeffs(&self) -> Vec<BigInt> {
        let Some(d) = self.degree() else {
            return Vec::new();
        };
        let low = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        (0..=d - low)
            .map(|k| {
                let c = self.coeff(d - k);
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect()
    }

    /// Builds `Σ (-1)^k a_k t^{d-k}`.
    pub fn from_alt_coeffs(d: usize, alt: &[BigInt]) -> CharPoly {
        assert!(alt.len() <= d + 1, "more alternating coefficients than the degree allows");
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (k, a) in alt.iter().enumerate() {
            coeffs[d - k] = if k % 2 == 0 { a.clone() } else { -a };
        }
        CharPoly::from_ascending(coeffs)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_i64(&self, t: i64) -> BigInt {
        self.eval(&BigInt::from(t))
    }
}

impl Add for &CharPoly {
    type Output = CharPoly;
    fn add(self, rhs: &CharPoly) -> CharPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        CharPoly::from_ascending((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &CharPoly {
    type Output = CharPoly;
    fn sub(self, rhs: &CharPoly) -> CharPoly {
        self + &(-rhs)
    }
}

impl Neg for &CharPoly {
    type Output = CharPoly;
    fn neg(self) -> CharPoly {
        CharPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CharPoly {
    type Output = CharPoly;
    fn mul(self, rhs: &CharPoly) -> CharPoly {
        if self.is_zero() || rhs.is_zero() {
            return CharPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CharPoly::from_ascending(out)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            if !mag.is_one() || k == 0 {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for CharPoly {
    type Err = Error;

    /// Parses the rendering produced by `Display`, e.g. `t^2 - 3t + 3`.
    fn from_str(s: &str) -> Result<CharPoly, Error> {
        let bad = || Error::Parse(format!("bad polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut acc = CharPoly::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes()[0] {
                b'-' => (true, &term[1..]),
                b'+' => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef, power) = match body.find('t') {
                None => (body, 0usize),
                Some(pos) => {
                    let rest = &body[pos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (&body[..pos], power)
                }
            };
            let mut c = if coef.is_empty() {
                if power == 0 {
                    return Err(bad());
                }
                BigInt::one()
            } else {
                coef.parse::<BigInt>().map_err(|_| bad())?
            };
            if neg {
                c = -c;
            }
            acc = &acc + &CharPoly::monomial(c, power);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rendering() {
        assert_eq!(CharPoly::from_i64_descending(&[1, -3, 3]).to_string(), "t^2 - 3t + 3");
        assert_eq!(CharPoly::from_i64_descending(&[1, -1, 0, 0]).to_string(), "t^3 - t^2");
        assert_eq!(CharPoly::from_i64_descending(&[1, -2]).to_string(), "t - 2");
        assert_eq!(CharPoly::from_i64_descending(&[-1, 0]).to_string(), "-t");
        assert_eq!(CharPoly::one().to_string(), "1");
        assert_eq!(CharPoly::zero().to_string(), "0");
    }

    #[test]
    fn alternating_coefficients() {
        let p = CharPoly::from_i64_descending(&[1, -3, 2, 0]);
        assert_eq!(p.alt_coeffs(), vec![BigInt::from(1), BigInt::from(3), BigInt::from(2)]);
        assert_eq!(CharPoly::from_alt_coeffs(3, &p.alt_coeffs()), p);
    }

    #[test]
    fn boolean_product() {
        let p = CharPoly::t_pow_times_t_minus_one_pow(2, 3);
        assert_eq!(p, CharPoly::from_i64_descending(&[1, -3, 3, -1, 0, 0]));
        assert_eq!(p.eval_i64(3), BigInt::from(72));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<CharPoly>().is_err());
        assert!("t^".parse::<CharPoly>().is_err());
        assert!("x + 1".parse::<CharPoly>().is_err());
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(coeffs in proptest::collection::vec(-20i64..=20, 0..7)) {
            let p = CharPoly::from_i64_descending(&coeffs);
            prop_assert_eq!(p.to_string().parse::<CharPoly>().unwrap(), p);
        }

        #[test]
        fn multiplication_agrees_with_evaluation(
            a in proptest::collection::vec(-5i64..=5, 0..5),
            b in proptest::collection::vec(-5i64..=5, 0..5),
            t in -4i64..=4,
        ) {
            let (pa, pb) = (CharPoly::from_i64_descending(&a), CharPoly::from_i64_descending(&b));
            prop_assert_eq!((&pa * &pb).eval_i64(t), pa.eval_i64(t) * pb.eval_i64(t));
            prop_assert_eq!((&pa + &pb).eval_i64(t), pa.eval_i64(t) + pb.eval_i64(t));
        }
    }
}
