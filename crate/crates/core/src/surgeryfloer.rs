//! Heegaard Floer data of rational surgeries on L-space knots and their mirrors:
//! spin^c index calculus, d-invariants, and the graded towers of `HF_red`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lens::d_invariant;
use crate::numtheory::{ceil_div, floor_div, gcd, Rational};
use crate::torusknot::StaircaseInvariants;

/// A table of `V_k` values for all integers `k`.
pub trait VTable {
    fn v(&self, k: i64) -> i64;
    fn nu_plus(&self) -> i64;
}

impl VTable for StaircaseInvariants {
    fn v(&self, k: i64) -> i64 {
        StaircaseInvariants::v(self, k)
    }

    fn nu_plus(&self) -> i64 {
        StaircaseInvariants::nu_plus(self)
    }
}

/// The formal table `V == 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroTable;

impl VTable for ZeroTable {
    fn v(&self, _k: i64) -> i64 {
        0
    }

    fn nu_plus(&self) -> i64 {
        0
    }
}

/// The mirror of an L-space knot: `V_k = max(0, -k)`, exactly as for the unknot.
#[derive(Debug, Clone, Copy)]
pub struct MirrorTable<'a>(pub &'a StaircaseInvariants);

impl VTable for MirrorTable<'_> {
    fn v(&self, k: i64) -> i64 {
        (-k).max(0)
    }

    fn nu_plus(&self) -> i64 {
        0
    }
}

/// The truncated tower `T(n)`, generated by `U^{1-n}`, with the grading of
/// its bottom element. `n = 0` is the zero module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedTower {
    pub bottom_grading: Rational,
    pub length: i64,
}

impl GradedTower {
    pub fn is_trivial(&self) -> bool {
        self.length == 0
    }

    pub fn top_grading(&self) -> Rational {
        self.bottom_grading.clone() + 2 * (self.length - 1).max(0)
    }
}

/// `HF_red` summand coming from the cone index `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RedPiece {
    pub s: i64,
    pub tower: GradedTower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryHFData {
    pub index: i64,
    pub d_invariant: Rational,
    pub red_pieces: Vec<RedPiece>,
}

fn check_positive_slope(p: i64, q: i64) -> Result<()> {
    if p <= 0 || q <= 0 {
        return domain(format!("slope {p}/{q} must be positive"));
    }
    if gcd(p, q) != 1 {
        return domain(format!("slope {p}/{q} not in lowest terms"));
    }
    Ok(())
}

fn check_index(p: i64, i: i64) -> Result<()> {
    if !(0..p).contains(&i) {
        return domain(format!("spin^c index {i} outside [0, {p})"));
    }
    Ok(())
}

/// Conjugation `i -> q - 1 - i (mod p)`.
pub fn conjugate_index(p: i64, q: i64, i: i64) -> Result<i64> {
    if p < 1 {
        return domain(format!("p = {p} must be positive"));
    }
    check_index(p, i)?;
    Ok((q - 1 - i).rem_euclid(p))
}

/// `d(S^3_{p/q}(K), i) = d(p, q, i) - 2 max(V_{floor(i/q)}, V_{ceil((p-i)/q)})`.
pub fn d_surgery(k: &impl VTable, p: i64, q: i64, i: i64) -> Result<Rational> {
    check_positive_slope(p, q)?;
    check_index(p, i)?;
    let v = k.v(floor_div(i, q)).max(k.v(ceil_div(p - i, q)));
    Ok(d_invariant(p, q, i)? - 2 * v)
}

/// All of `d(S^3_{p/q}(K), i)` for `i in [0, p)`.
pub fn d_surgery_all(k: &impl VTable, p: i64, q: i64) -> Result<Vec<Rational>> {
    check_positive_slope(p, q)?;
    (0..p).map(|i| d_surgery(k, p, q, i)).collect()
}

/// Sorted d-invariants of `S^3_{p/q}(K)` for `p > 0`.
pub fn d_surgery_multiset(k: &impl VTable, p: i64, q: i64) -> Result<Vec<Rational>> {
    let mut v = d_surgery_all(k, p, q)?;
    v.sort();
    Ok(v)
}

/// Sorted d-invariants of `S^3_{p/q}(K)` for `p < 0`, an L-space knot `K`.
///
/// `S^3_{p/q}(K) = -S^3_{-p/q}(mirror K)` and the mirror has `V_k = 0` for
/// `k >= 0`, so only a multiset (no index correspondence) is produced.
pub fn d_surgery_negative(k: &StaircaseInvariants, p: i64, q: i64) -> Result<Vec<Rational>> {
    if p >= 0 {
        return domain(format!("d_surgery_negative needs p < 0, got {p}"));
    }
    let mut v: Vec<Rational> = d_surgery_all(&MirrorTable(k), -p, q)?.into_iter().map(|d| -d).collect();
    v.sort();
    Ok(v)
}

/// Grading of the bottom of the `B^+` tower at cone index 0: `d(p, q, i) - 1`.
pub fn b_anchor_grading(p: i64, q: i64, i: i64) -> Result<Rational> {
    Ok(d_invariant(p, q, i)? - 1)
}

fn floor_term(p: i64, q: i64, i: i64, k: i64) -> i64 {
    floor_div(i + p * k, q)
}

/// `B^+` tower grading at cone index `s`, from the anchor and
/// `gr(s + 1) = gr(s) + 2 floor((i + ps)/q)`.
pub fn b_tower_grading(p: i64, q: i64, i: i64, s: i64) -> Result<Rational> {
    check_positive_slope(p, q)?;
    let anchor = b_anchor_grading(p, q, i)?;
    let shift: i64 = if s >= 0 {
        (0..s).map(|k| floor_term(p, q, i, k)).sum()
    } else {
        -(s..0).map(|k| floor_term(p, q, i, k)).sum::<i64>()
    };
    Ok(anchor + 2 * shift)
}

fn base_grading_unchecked(p: i64, q: i64, i: i64, s: i64, v: &impl VTable) -> Result<Rational> {
    let d = d_invariant(p, q, i)?;
    let vk = v.v(floor_term(p, q, i, s));
    let sum: i64 = if s >= 1 {
        (1..s).map(|k| floor_term(p, q, i, k)).sum()
    } else {
        -(s..=0).map(|k| floor_term(p, q, i, k)).sum::<i64>()
    };
    Ok(d - 2 * vk + 2 * sum)
}

/// Grading of the bottom of the `A^red` tower at cone index `s`:
/// `d - 2 V_{floor((i+sp)/q)} + 2 sum_{k=1}^{s-1} floor((i+pk)/q)` for `s >= 1`,
/// `d - 2 V_{floor((i+sp)/q)} - 2 sum_{k=s}^{0} floor((i+pk)/q)` for `s <= 0`.
pub fn tower_base_grading(p: i64, q: i64, i: i64, s: i64, v: &impl VTable) -> Result<Rational> {
    check_positive_slope(p, q)?;
    if i < 0 || 2 * i > p + q - 1 {
        return domain(format!("index {i} outside [0, (p+q-1)/2] for {p}/{q}"));
    }
    base_grading_unchecked(p, q, i, s, v)
}

/// `HF_red(S^3_{p/q}(K), i)` as a list of graded towers, for `p/q >= 2 nu^+ - 1`.
///
/// An L-space knot has no reduced part. Its mirror contributes `T(V_{|k|}(K))`
/// at every cone index `s` with `k = floor((i + ps)/q)`.
pub fn hf_red_pieces(k: &StaircaseInvariants, mirror: bool, p: i64, q: i64, i: i64) -> Result<Vec<RedPiece>> {
    check_positive_slope(p, q)?;
    check_index(p, i)?;
    let nu = if mirror { 0 } else { k.nu_plus() };
    if (p as i128) < (2 * nu as i128 - 1) * q as i128 {
        return Err(Error::Unsupported(format!(
            "slope {p}/{q} below 2 nu^+ - 1 = {}",
            2 * nu - 1
        )));
    }
    if !mirror {
        return Ok(Vec::new());
    }
    let g = k.genus();
    let table = MirrorTable(k);
    let lo = floor_div(-g * q - i, p) - 1;
    let hi = ceil_div(g * q - i, p) + 1;
    let mut pieces = Vec::new();
    for s in lo..=hi {
        let length = k.v(floor_term(p, q, i, s).abs());
        if length > 0 {
            let bottom_grading = base_grading_unchecked(p, q, i, s, &table)?;
            pieces.push(RedPiece { s, tower: GradedTower { bottom_grading, length } });
        }
    }
    Ok(pieces)
}

/// d-invariants and reduced pieces for every spin^c structure.
pub fn surgery_hf_data(k: &StaircaseInvariants, mirror: bool, p: i64, q: i64) -> Result<Vec<SurgeryHFData>> {
    check_positive_slope(p, q)?;
    (0..p)
        .map(|i| {
            let d_invariant =
                if mirror { d_surgery(&MirrorTable(k), p, q, i)? } else { d_surgery(k, p, q, i)? };
            Ok(SurgeryHFData { index: i, d_invariant, red_pieces: hf_red_pieces(k, mirror, p, q, i)? })
        })
        .collect()
}

/// The two grading sums compared when matching `A^red` towers of slopes that
/// differ by a shift of `t` in the cone index.
///
/// `t > 0`: `k in [1, tq - 1]`; `t < 0`: `k in [tq, 0]`. Summands are
/// `floor((mq + pk)/q)` and `floor((mq + 1 + pk)/q)`.
pub fn grading_match_sums(m: i64, t: i64, p: i64, q: i64) -> Result<(i64, i64)> {
    if t == 0 {
        return domain("grading_match_sums needs t != 0");
    }
    if q < 2 || m < 0 {
        return domain(format!("grading_match_sums needs q >= 2 and m >= 0, got q = {q}, m = {m}"));
    }
    if gcd(p, q) != 1 {
        return domain(format!("({p}, {q}) not coprime"));
    }
    let range = if t > 0 { 1..=t * q - 1 } else { t * q..=0 };
    let (mut a, mut b) = (0i64, 0i64);
    for k in range {
        a += floor_div(m * q + p * k, q);
        b += floor_div(m * q + 1 + p * k, q);
    }
    Ok((a, b))
}

/// Whether the knot Floer data (V-tables; `A^red` vanishes for staircases)
/// of two L-space knots agree, as forced by equal `p/q` surgeries with
/// `p/q > 2g(K_1) - 1`.
pub fn hfk_recovery_verify(k1: &StaircaseInvariants, k2: &StaircaseInvariants, p: i64, q: i64) -> Result<bool> {
    check_positive_slope(p, q)?;
    let g = k1.genus();
    if (p as i128) <= (2 * g as i128 - 1) * q as i128 {
        return Err(Error::Unsupported(format!("slope {p}/{q} not above 2g - 1 = {}", 2 * g - 1)));
    }
    let top = k1.genus().max(k2.genus());
    Ok((0..=top).all(|k| k1.v(k) == k2.v(k)))
}
