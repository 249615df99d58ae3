//! Regular (`[c0, c1, ...]^+`, all `c_i >= 1`) and negative (`[a1, a2, ...]^-`,
//! all `a_i >= 2`) continued fractions of positive rationals.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{gcd, Rational};
use crate::error::{domain, Result};

/// Requested length parity for [`cf_plus_expand`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Regular continued fraction `c0 + 1/(c1 + 1/(c2 + ...))` with every `c_i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CfPlus(Vec<i64>);

impl CfPlus {
    pub fn new(coefficients: Vec<i64>) -> Result<Self> {
        if coefficients.is_empty() {
            return domain("continued fraction must be nonempty");
        }
        if let Some(c) = coefficients.iter().find(|&&c| c < 1) {
            return domain(format!("coefficient {c} < 1 in regular continued fraction"));
        }
        Ok(CfPlus(coefficients))
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> CfPlus {
        CfPlus(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for CfPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]+", parts.join(", "))
    }
}

/// Negative continued fraction `a1 - 1/(a2 - 1/(...))` with every `a_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CfMinus(Vec<i64>);

impl CfMinus {
    pub fn new(coefficients: Vec<i64>) -> Result<Self> {
        if coefficients.is_empty() {
            return domain("continued fraction must be nonempty");
        }
        if let Some(c) = coefficients.iter().find(|&&c| c < 2) {
            return domain(format!("coefficient {c} < 2 in negative continued fraction"));
        }
        Ok(CfMinus(coefficients))
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Expands `num/den >= 1` as a regular continued fraction.
///
/// The canonical expansion ends in a coefficient `>= 2` (unless the value is 1).
/// When a parity is requested and the canonical length has the other parity,
/// the tail is rewritten `[..., c] -> [..., c-1, 1]`.
pub fn cf_plus_expand(num: i64, den: i64, parity: Option<Parity>) -> Result<CfPlus> {
    if den <= 0 || num <= 0 {
        return domain(format!("{num}/{den} is not a positive fraction"));
    }
    if num < den {
        return domain(format!("{num}/{den} < 1 has leading coefficient 0"));
    }
    let (mut a, mut b) = (num, den);
    let mut coeffs = Vec::new();
    while b != 0 {
        coeffs.push(a / b);
        (a, b) = (b, a % b);
    }
    let wanted_odd = match parity {
        None => return Ok(CfPlus(coeffs)),
        Some(p) => p == Parity::Odd,
    };
    if (coeffs.len() % 2 == 1) != wanted_odd {
        let last = coeffs.last_mut().expect("nonempty");
        if *last < 2 {
            return domain(format!("{num}/{den} has no expansion of the requested parity"));
        }
        *last -= 1;
        coeffs.push(1);
    }
    Ok(CfPlus(coeffs))
}

/// Convergents `(p_n, q_n)` of a regular continued fraction.
pub fn cf_convergents(cf: &CfPlus) -> Vec<(BigInt, BigInt)> {
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    cf.0.iter()
        .map(|&c| {
            let c = BigInt::from(c);
            let p_next = &c * &p + &p_prev;
            let q_next = &c * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
            (p.clone(), q.clone())
        })
        .collect()
}

pub fn cf_plus_eval(cf: &CfPlus) -> Rational {
    let (p, q) = cf_convergents(cf).pop().expect("nonempty continued fraction");
    Rational::from_bigints(p, q).expect("convergent denominators are positive")
}

/// For `0 < q < p` coprime, returns `q'` with `p/q' = [c_n, ..., c_0]^+`
/// where `p/q = [c_0, ..., c_n]^+` is the canonical expansion.
/// Then `q q' = (-1)^n (mod p)`.
pub fn cf_reverse_dual(p: i64, q: i64) -> Result<i64> {
    if !(0 < q && q < p) || gcd(p, q) != 1 {
        return domain(format!("cf_reverse_dual needs 0 < q < p coprime, got ({p}, {q})"));
    }
    let value = cf_plus_eval(&cf_plus_expand(p, q, None)?.reversed());
    debug_assert_eq!(value.numer(), &BigInt::from(p));
    Ok(value.denom().to_i64().expect("q' < p fits in i64"))
}

/// Expands `p/q > 1` (coprime) as a negative continued fraction with all entries `>= 2`.
pub fn cf_minus_expand(p: i64, q: i64) -> Result<CfMinus> {
    if q <= 0 || p <= q {
        return domain(format!("{p}/{q} must exceed 1 with positive denominator"));
    }
    if gcd(p, q) != 1 {
        return domain(format!("({p}, {q}) not coprime"));
    }
    let (mut a, mut b) = (p, q);
    let mut coeffs = Vec::new();
    while b != 0 {
        let c = (a + b - 1) / b;
        coeffs.push(c);
        (a, b) = (b, c * b - a);
    }
    Ok(CfMinus(coeffs))
}

/// Evaluates `[a1, ..., al]^-`.
pub fn cf_minus_eval(cf: &CfMinus) -> Rational {
    let mut coeffs = cf.0.iter().rev();
    let mut num = BigInt::from(*coeffs.next().expect("nonempty"));
    let mut den = BigInt::one();
    for &c in coeffs {
        (num, den) = (BigInt::from(c) * &num - &den, num);
    }
    Rational::from_bigints(num, den).expect("negative continued fractions with a_i >= 2 exceed 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pairs(v: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
        v.iter().map(|&(a, b)| (a.into(), b.into())).collect()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(cf_plus_expand(3, 2, None).unwrap().coefficients(), &[1, 2]);
        assert_eq!(
            cf_plus_expand(13, 8, Some(Parity::Odd)).unwrap().coefficients(),
            &[1, 1, 1, 1, 2]
        );
        assert_eq!(cf_plus_expand(9, 1, None).unwrap().coefficients(), &[9]);
        assert_eq!(
            cf_plus_expand(13, 8, Some(Parity::Even)).unwrap().coefficients(),
            &[1, 1, 1, 1, 1, 1]
        );
        assert_eq!(cf_plus_expand(1, 1, Some(Parity::Odd)).unwrap().coefficients(), &[1]);
    }

    #[test]
    fn expand_errors() {
        assert!(cf_plus_expand(0, 3, None).is_err());
        assert!(cf_plus_expand(-3, 2, None).is_err());
        assert!(cf_plus_expand(3, 0, None).is_err());
        assert!(cf_plus_expand(2, 3, None).is_err());
        assert!(cf_plus_expand(1, 1, Some(Parity::Even)).is_err());
        assert!(CfPlus::new(vec![]).is_err());
        assert!(CfPlus::new(vec![1, 0]).is_err());
        assert!(CfMinus::new(vec![2, 1]).is_err());
    }

    #[test]
    fn eval_examples() {
        let ev = |v: &[i64]| cf_plus_eval(&CfPlus::new(v.to_vec()).unwrap());
        assert_eq!(ev(&[1, 2]), Rational::new(3, 2));
        assert_eq!(ev(&[1, 1, 1, 1, 2]), Rational::new(13, 8));
        assert_eq!(ev(&[2, 1, 1, 1, 1]), Rational::new(13, 5));
    }

    #[test]
    fn convergent_examples() {
        let cf = CfPlus::new(vec![1, 1, 1, 1, 2]).unwrap();
        let conv = cf_convergents(&cf);
        assert_eq!(conv, pairs(&[(1, 1), (2, 1), (3, 2), (5, 3), (13, 8)]));
        // p_4 q_3 - q_4 p_3 = (-1)^5
        assert_eq!(&conv[4].0 * &conv[3].1 - &conv[4].1 * &conv[3].0, BigInt::from(-1));
        assert_eq!(cf_convergents(&CfPlus::new(vec![7]).unwrap()), pairs(&[(7, 1)]));
    }

    #[test]
    fn reverse_dual_examples() {
        assert_eq!(cf_reverse_dual(13, 8).unwrap(), 5);
        assert_eq!((8 * 5) % 13, 1);
        // [1,2] reversed is [2,1] = 3/1, and 2*1 = -1 mod 3
        assert_eq!(cf_reverse_dual(3, 2).unwrap(), 1);
        assert_eq!(cf_reverse_dual(11, 1).unwrap(), 1);
        assert_eq!(cf_reverse_dual(29, 8).unwrap(), 11);
        assert!(cf_reverse_dual(6, 4).is_err());
        assert!(cf_reverse_dual(5, 5).is_err());
    }

    #[test]
    fn minus_expand_examples() {
        assert_eq!(cf_minus_expand(7, 4).unwrap().coefficients(), &[2, 4]);
        assert_eq!(cf_minus_expand(2, 1).unwrap().coefficients(), &[2]);
        assert_eq!(cf_minus_expand(5, 3).unwrap().coefficients(), &[2, 3]);
        assert_eq!(cf_minus_expand(5, 4).unwrap().coefficients(), &[2, 2, 2, 2]);
        assert!(cf_minus_expand(3, 3).is_err());
        assert!(cf_minus_expand(2, 3).is_err());
        assert!(cf_minus_expand(6, 4).is_err());
    }

    proptest! {
        #[test]
        fn plus_round_trip(num in 1i64..5000, den in 1i64..5000, odd in any::<bool>()) {
            prop_assume!(num >= den);
            let cf = cf_plus_expand(num, den, None).unwrap();
            prop_assert_eq!(cf_plus_eval(&cf), Rational::new(num, den));
            let parity = if odd { Parity::Odd } else { Parity::Even };
            if let Ok(cf) = cf_plus_expand(num, den, Some(parity)) {
                prop_assert_eq!(cf.len() % 2 == 1, odd);
                prop_assert_eq!(cf_plus_eval(&cf), Rational::new(num, den));
            } else {
                prop_assert!(num == den);
            }
        }

        #[test]
        fn determinant_identity(coeffs in proptest::collection::vec(1i64..20, 1..12)) {
            let cf = CfPlus::new(coeffs).unwrap();
            let conv = cf_convergents(&cf);
            for n in 1..conv.len() {
                let det = &conv[n].0 * &conv[n - 1].1 - &conv[n].1 * &conv[n - 1].0;
                let expected = if n % 2 == 1 { 1 } else { -1 };
                prop_assert_eq!(det, BigInt::from(expected));
            }
        }

        #[test]
        fn reversal_identity(p in 2i64..3000, q in 1i64..3000) {
            prop_assume!(q < p && gcd(p, q) == 1);
            let n = cf_plus_expand(p, q, None).unwrap().len() as i64 - 1;
            let qq = cf_reverse_dual(p, q).unwrap();
            prop_assert!(1 <= qq && qq < p.max(2));
            let sign = if n % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!((q * qq - sign).rem_euclid(p), 0);
        }

        #[test]
        fn minus_round_trip(p in 2i64..3000, q in 1i64..3000) {
            prop_assume!(q < p && gcd(p, q) == 1);
            let cf = cf_minus_expand(p, q).unwrap();
            prop_assert!((cf.len() as i64) < p);
            prop_assert!(cf.coefficients().iter().all(|&a| a >= 2));
            prop_assert_eq!(cf_minus_eval(&cf), Rational::new(p, q));
        }
    }
}
