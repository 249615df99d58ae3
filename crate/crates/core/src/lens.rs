//! d-invariants of lens spaces and oriented lens-space classification.
//!
//! `L(p, q)` always means `p/q` surgery on the unknot, and `d(p, q, i)` is its
//! d-invariant in the spin^c structure labelled `i in Z/p`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numtheory::{gcd, Rational};

/// Lens space `L(p, q)` with `p >= 1`, `0 <= q < p`, `gcd(p, q) = 1`.
/// `L(1, 0)` is the 3-sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LensSpace {
    p: i64,
    q: i64,
}

impl LensSpace {
    /// Builds `L(p, q)`, reducing any coprime representative `q` modulo `p`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 {
            return domain(format!("lens space order {p} must be positive"));
        }
        let q = q.rem_euclid(p);
        if p > 1 && gcd(p, q) != 1 {
            return domain(format!("L({p}, {q}): parameters not coprime"));
        }
        Ok(LensSpace { p, q })
    }

    /// The lens space `S^3_{num/den}(U)` for a nonzero coefficient.
    pub fn from_surgery_coefficient(num: i64, den: i64) -> Result<Self> {
        if num == 0 {
            return domain("0-surgery on the unknot is not a lens space");
        }
        let (num, den) = if num < 0 { (-num, -den) } else { (num, den) };
        LensSpace::new(num, den)
    }

    pub fn sphere() -> Self {
        LensSpace { p: 1, q: 0 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `-L(p, q) = L(p, p - q)`.
    pub fn reverse(&self) -> Self {
        LensSpace { p: self.p, q: (-self.q).rem_euclid(self.p) }
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

type DTable = Arc<[Rational]>;

static D_CACHE: Lazy<RwLock<HashMap<(i64, i64), DTable>>> = Lazy::new(Default::default);

/// All of `d(p, q, 0..p)`, memoized. `q` must already be reduced into `[0, p)`.
fn d_table(p: i64, q: i64) -> DTable {
    if let Some(t) = D_CACHE.read().get(&(p, q)) {
        return t.clone();
    }
    let table: DTable = if p == 1 {
        vec![Rational::zero()].into()
    } else {
        let inner = d_table(q, p % q);
        let quarter = Rational::new(1, 4);
        let denom = 4 * p * q;
        (0..p)
            .map(|i| {
                let t = p + q - 1 - 2 * i;
                Rational::new(t * t, denom) - &quarter - &inner[(i % q) as usize]
            })
            .collect::<Vec<_>>()
            .into()
    };
    D_CACHE.write().entry((p, q)).or_insert(table).clone()
}

fn checked_table(p: i64, q: i64) -> Result<(LensSpace, DTable)> {
    let lens = LensSpace::new(p, q)?;
    Ok((lens, d_table(lens.p, lens.q)))
}

fn check_index(p: i64, i: i64) -> Result<usize> {
    if !(0..p).contains(&i) {
        return domain(format!("spin^c index {i} outside [0, {p})"));
    }
    Ok(i as usize)
}

/// `d(p, q, i)` via `d(p,q,i) = -1/4 + (p+q-1-2i)^2/(4pq) - d(q, p mod q, i mod q)`,
/// `d(1, 0, 0) = 0`.
pub fn d_invariant(p: i64, q: i64, i: i64) -> Result<Rational> {
    let (_, table) = checked_table(p, q)?;
    Ok(table[check_index(p, i)?].clone())
}

/// The full list `d(p, q, 0), ..., d(p, q, p-1)` in index order.
pub fn d_invariants(p: i64, q: i64) -> Result<Vec<Rational>> {
    Ok(checked_table(p, q)?.1.to_vec())
}

/// Rescaled invariant `2p * d(p, q, i)`.
pub fn d_tilde(p: i64, q: i64, i: i64) -> Result<Rational> {
    Ok(d_invariant(p, q, i)? * (2 * p))
}

/// `d~(p,q,i) - d~(p,q,j)`, which is always an integer.
pub fn d_tilde_difference(p: i64, q: i64, i: i64, j: i64) -> Result<BigInt> {
    let (_, table) = checked_table(p, q)?;
    let diff = (&table[check_index(p, i)?] - &table[check_index(p, j)?]) * (2 * p);
    if !diff.is_integer() {
        return Err(Error::Unsupported(format!(
            "non-integral rescaled difference {diff} at ({p},{q},{i},{j})"
        )));
    }
    Ok(diff.numer().clone())
}

/// `(D mod 4, q*D mod 4p)` for `D = d~(p,q,i) - d~(p,q,j)`.
pub fn congruence_residues(p: i64, q: i64, i: i64, j: i64) -> Result<(i64, i64)> {
    let diff = d_tilde_difference(p, q, i, j)?;
    let m4 = diff.mod_floor(&BigInt::from(4));
    let m4p = (diff * q).mod_floor(&BigInt::from(4 * p));
    Ok((m4.to_i64().unwrap(), m4p.to_i64().unwrap()))
}

/// The residues the rescaled differences are predicted to have:
/// `2(i-j)(p+1) mod 4` and `2(pq+q-1-i-j)(j-i) mod 4p`.
pub fn congruence_targets(p: i64, q: i64, i: i64, j: i64) -> (i64, i64) {
    let q = q.rem_euclid(p.max(1));
    let m4 = (2 * (i - j) * (p + 1)).rem_euclid(4);
    let m4p = (2 * (p * q + q - 1 - i - j) * (j - i)).rem_euclid(4 * p);
    (m4, m4p)
}

/// Whether `d(p,q,i) - d(p,q,j)` is an even integer, decided by the congruence
/// `(q-1-i-j)(j-i) = 0` modulo `p` (odd `p`) or `2p` (even `p`).
pub fn d_diff_even(p: i64, q: i64, i: i64, j: i64) -> Result<bool> {
    let lens = LensSpace::new(p, q)?;
    check_index(p, i)?;
    check_index(p, j)?;
    let modulus = if p % 2 == 0 { 2 * p } else { p };
    Ok(((lens.q - 1 - i - j) * (j - i)).rem_euclid(modulus) == 0)
}

/// Same predicate as [`d_diff_even`], computed from the exact d-invariants.
pub fn d_diff_even_exact(p: i64, q: i64, i: i64, j: i64) -> Result<bool> {
    let (_, table) = checked_table(p, q)?;
    let half = (&table[check_index(p, i)?] - &table[check_index(p, j)?]) / 2;
    Ok(half.is_integer())
}

/// The multiset of d-invariants of `L(p, q)`, sorted ascending.
pub fn d_multiset(p: i64, q: i64) -> Result<Vec<Rational>> {
    let mut values = d_invariants(p, q)?;
    values.sort();
    Ok(values)
}

pub fn lens_d_multiset(lens: &LensSpace) -> Vec<Rational> {
    d_multiset(lens.p, lens.q).expect("LensSpace parameters are valid")
}

/// Homeomorphism of lens spaces. Oriented: `p1 = p2` and `q2 = q1^{+-1} mod p`.
/// Unoriented additionally allows `q2 = -q1^{+-1} mod p`.
pub fn lens_homeo(a: &LensSpace, b: &LensSpace, oriented: bool) -> bool {
    if a.p != b.p {
        return false;
    }
    let p = a.p;
    if p <= 2 {
        return true;
    }
    let same = |q2: i64| (a.q - q2).rem_euclid(p) == 0 || (a.q * q2 - 1).rem_euclid(p) == 0;
    same(b.q) || (!oriented && same(b.reverse().q))
}

/// Checks `|d(p, q, i)| <= (p - 1)/4` for every `i`.
pub fn d_bound_holds(p: i64, q: i64) -> Result<bool> {
    let (_, table) = checked_table(p, q)?;
    let bound = Rational::new(p - 1, 4);
    Ok(table.iter().all(|d| d.abs() <= bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_invariant(1, 0, 0).unwrap(), Rational::zero());
        assert_eq!(d_invariant(7, 1, 0).unwrap(), r(3, 2));
        assert_eq!(d_invariant(7, 1, 1).unwrap(), r(9, 14));
        assert_eq!(d_invariant(4, 3, 3).unwrap(), r(-3, 4));
        assert_eq!(d_invariant(13, 2, 0).unwrap(), r(18, 13));
        assert_eq!(d_invariant(2, 1, 0).unwrap(), r(1, 4));
        assert_eq!(d_invariant(2, 1, 1).unwrap(), r(-1, 4));
    }

    #[test]
    fn d_errors() {
        assert!(d_invariant(7, 1, 7).is_err());
        assert!(d_invariant(7, 1, -1).is_err());
        assert!(d_invariant(6, 4, 0).is_err());
        assert!(d_invariant(0, 1, 0).is_err());
    }

    #[test]
    fn q_reduced_mod_p() {
        assert_eq!(d_invariants(7, 9).unwrap(), d_invariants(7, 2).unwrap());
        assert_eq!(d_invariants(7, -3).unwrap(), d_invariants(7, 4).unwrap());
        assert_eq!(LensSpace::new(7, 9).unwrap(), LensSpace::new(7, 2).unwrap());
        assert_eq!(LensSpace::new(1, 5).unwrap(), LensSpace::sphere());
    }

    #[test]
    fn d_tilde_examples() {
        assert_eq!(d_tilde(1, 0, 0).unwrap(), Rational::zero());
        assert_eq!(d_tilde(7, 1, 0).unwrap(), Rational::integer(21));
        assert_eq!(d_tilde(7, 1, 1).unwrap() - d_tilde(7, 1, 6).unwrap(), Rational::zero());
    }

    #[test]
    fn congruence_examples() {
        // 21 - 9 = 12
        assert_eq!(d_tilde_difference(7, 1, 0, 1).unwrap(), BigInt::from(12));
        let (m4, m4p) = congruence_residues(7, 1, 0, 1).unwrap();
        assert_eq!((m4, m4p), congruence_targets(7, 1, 0, 1));
        assert_eq!(m4, 0);
        for i in 0..5 {
            assert_eq!(congruence_residues(5, 2, i, i).unwrap(), (0, 0));
        }
        // brute force on L(4,3)
        let d0 = d_tilde(4, 3, 0).unwrap();
        let d3 = d_tilde(4, 3, 3).unwrap();
        let diff = (d0 - d3).to_i64().unwrap();
        assert_eq!(diff.rem_euclid(4), (2 * 3 * 5i64).rem_euclid(4));
        assert_eq!((3 * diff).rem_euclid(16), (2 * (12 + 3 - 1 - 3) * 3i64).rem_euclid(16));
        assert_eq!(congruence_residues(4, 3, 0, 3).unwrap(), congruence_targets(4, 3, 0, 3));
    }

    #[test]
    fn diff_even_examples() {
        assert!(d_diff_even(7, 1, 1, 6).unwrap());
        assert!(!d_diff_even(7, 1, 0, 1).unwrap());
        assert_eq!(d_invariant(7, 1, 0).unwrap() - d_invariant(7, 1, 1).unwrap(), r(6, 7));
        for i in 0..9 {
            assert!(d_diff_even(9, 4, i, i).unwrap());
        }
        assert!(d_diff_even(9, 4, 0, 9).is_err());
    }

    #[test]
    fn multiset_examples() {
        let mut expected = vec![r(9, 14), r(1, 14), r(1, 14), r(9, 14), r(-3, 14), r(-1, 2), r(-3, 14)];
        expected.sort();
        assert_eq!(d_multiset(7, 4).unwrap(), expected);
        assert_eq!(d_multiset(1, 0).unwrap(), vec![Rational::zero()]);
        assert_eq!(d_multiset(7, 2).unwrap(), d_multiset(7, 4).unwrap());
    }

    #[test]
    fn orientation_reversal_negates_multiset() {
        for p in 2..40 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let mut neg: Vec<Rational> = d_multiset(p, q).unwrap().iter().map(|d| -d).collect();
                neg.sort();
                assert_eq!(neg, d_multiset(p, p - q).unwrap(), "L({p},{q})");
            }
        }
    }

    #[test]
    fn conjugation_symmetry() {
        for p in 1..40 {
            for q in 0..p.max(1) {
                if LensSpace::new(p, q).is_err() {
                    continue;
                }
                let t = d_invariants(p, q).unwrap();
                for i in 0..p {
                    let j = (q - 1 - i).rem_euclid(p);
                    assert_eq!(t[i as usize], t[j as usize]);
                }
            }
        }
    }

    #[test]
    fn homeo_examples() {
        let l = |p, q| LensSpace::new(p, q).unwrap();
        assert!(lens_homeo(&l(7, 2), &l(7, 4), true));
        assert!(lens_homeo(&l(29, 8), &l(29, 18).reverse(), true));
        assert!(!lens_homeo(&l(29, 8), &l(29, 18), true));
        assert!(lens_homeo(&l(29, 8), &l(29, 18), false));
        assert!(lens_homeo(&l(11, 3), &l(11, 3), true));
        assert!(!lens_homeo(&l(11, 3), &l(13, 3), false));
        assert!(!lens_homeo(&l(5, 1), &l(5, 2), false));
    }

    #[test]
    fn homeo_agrees_with_d_multisets() {
        // oriented homeomorphic lens spaces have equal d-multisets
        for p in 2..30 {
            for q1 in 1..p {
                for q2 in 1..p {
                    if gcd(p, q1) != 1 || gcd(p, q2) != 1 {
                        continue;
                    }
                    if lens_homeo(&LensSpace::new(p, q1).unwrap(), &LensSpace::new(p, q2).unwrap(), true) {
                        assert_eq!(d_multiset(p, q1).unwrap(), d_multiset(p, q2).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn bound_examples() {
        assert!(d_bound_holds(7, 1).unwrap());
        assert!(d_bound_holds(2, 1).unwrap());
        assert!(d_bound_holds(1, 0).unwrap());
    }

    #[test]
    fn from_surgery_coefficient_signs() {
        assert_eq!(LensSpace::from_surgery_coefficient(-7, 2).unwrap(), LensSpace::new(7, 5).unwrap());
        assert_eq!(LensSpace::from_surgery_coefficient(2, 3).unwrap(), LensSpace::new(2, 1).unwrap());
        assert!(LensSpace::from_surgery_coefficient(0, 1).is_err());
    }
}
