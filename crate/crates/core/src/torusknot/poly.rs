use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer Laurent polynomial in `t`, stored as exponent -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut poly = LaurentPoly::default();
        for (e, c) in terms {
            poly.add_term(e, c);
        }
        poly
    }

    pub fn one() -> Self {
        LaurentPoly::from_terms([(0, 1)])
    }

    fn add_term(&mut self, exponent: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn coeff(&self, exponent: i64) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Top exponent of a symmetric polynomial (0 for constants).
    pub fn degree(&self) -> i64 {
        self.max_exponent().unwrap_or(0)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(&e, &c)| self.coeff(-e) == c)
    }

    /// Symmetric with `f(1) = 1`.
    pub fn is_normalized(&self) -> bool {
        self.is_symmetric() && self.eval_at_one() == 1
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// `f(t^w)`.
    pub fn substitute_power(&self, w: i64) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e * w, c)))
    }

    /// `f''(1) = sum a_k k (k - 1)`.
    pub fn second_derivative_at_one(&self) -> i64 {
        self.terms().map(|(e, c)| c * e * (e - 1)).sum()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&e, &c)) in self.terms.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if n == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Exact division of ordinary polynomials (ascending coefficients) by a monic divisor.
/// Returns `None` if the remainder is nonzero.
pub(crate) fn divide_exact(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let dl = den.len();
    assert!(dl > 0 && *den.last().unwrap() == 1, "divisor must be monic");
    if num.len() < dl {
        return num.iter().all(|&c| c == 0).then(Vec::new);
    }
    let mut rem = num.to_vec();
    let mut quot = vec![0; num.len() - dl + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dl - 1];
        quot[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    rem.iter().all(|&c| c == 0).then_some(quot)
}

pub(crate) fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `t^n - 1` as ascending coefficients.
pub(crate) fn t_pow_minus_one(n: usize) -> Vec<i64> {
    let mut v = vec![0; n + 1];
    v[0] = -1;
    v[n] = 1;
    v
}
