//! Characterizing-slope logic for torus knots: affine spin^c maps between
//! surgeries, the `nu^+` bound, cable slopes and their census, torus-torus
//! coincidences and the slope classifier.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lens::{d_diff_even, d_invariant, lens_homeo};
use crate::numtheory::{cf_plus_expand, ceil_div, gcd, CfPlus, Parity, Rational};
use crate::seifert::{surgery_cable, surgery_homeomorphic, surgery_torus_knot, SurgeryResult};
use crate::torusknot::{casson_walker_obstruction, CableKnot, Knot, TorusKnot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MapType {
    I,
    II,
    III,
}

impl fmt::Display for MapType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapType::I => "I",
            MapType::II => "II",
            MapType::III => "III",
        })
    }
}

/// `Fix(J)` for `J(i) = q - 1 - i mod p`, sorted.
pub fn fixed_points(p: i64, q: i64) -> Vec<i64> {
    (0..p).filter(|&s| (2 * s - (q - 1)).rem_euclid(p) == 0).collect()
}

/// Result of matching `i -> a(i - s0) + s1` against the three admissible forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapForm {
    Typed(MapType),
    Violation(String),
}

/// Types a map `i -> a(i - s0) + s1 (mod p)` with `s0, s1 in Fix(J)`, or names
/// the first congruence it violates.
pub fn mapform_classify(a: i64, s0: i64, s1: i64, p: i64, q: i64) -> Result<MapForm> {
    if p < 1 {
        return domain(format!("p = {p} must be positive"));
    }
    let fix = fixed_points(p, q);
    for s in [s0, s1] {
        if !fix.contains(&s.rem_euclid(p)) {
            return domain(format!("{s} is not a fixed point of J for ({p}, {q})"));
        }
    }
    let a = a.rem_euclid(p) as i128;
    let (p128, sq) = (p as i128, a * a);
    let violation = |msg: String| Ok(MapForm::Violation(msg));
    if p % 2 == 1 {
        return if sq % p128 == 1 % p128 {
            Ok(MapForm::Typed(MapType::I))
        } else {
            violation(format!("a^2 = {} != 1 mod {p}", sq % p128))
        };
    }
    let two_p = 2 * p128;
    if (s0 - s1).rem_euclid(p) == 0 {
        return if sq % two_p == 1 {
            Ok(MapForm::Typed(MapType::II))
        } else {
            violation(format!("a^2 = {} != 1 mod {}", sq % two_p, two_p))
        };
    }
    if p % 8 != 0 {
        return violation(format!("s1 = s0 + p/2 needs p = 0 mod 8, got p = {p}"));
    }
    if sq % two_p != p128 + 1 {
        return violation(format!("a^2 = {} != p + 1 mod {}", sq % two_p, two_p));
    }
    Ok(MapForm::Typed(MapType::III))
}

/// An affine bijection `i -> a i + b (mod p)` commuting with `J` and passing the
/// parity test at every index, written as `a(i - s0) + s1` with `s0 = min Fix(J)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMapCandidate {
    pub p: i64,
    pub a: i64,
    pub b: i64,
    pub s0: i64,
    pub s1: i64,
    /// `None` would be a survivor outside the three admissible forms.
    pub map_type: Option<MapType>,
}

impl AffineMapCandidate {
    pub fn apply(&self, i: i64) -> i64 {
        ((self.a as i128 * i as i128 + self.b as i128).rem_euclid(self.p as i128)) as i64
    }

    /// `a = +-1 mod p`: the identity or the conjugation map.
    pub fn is_trivial(&self) -> bool {
        let a = self.a.rem_euclid(self.p);
        a == 1 % self.p || a == self.p - 1
    }
}

impl fmt::Display for AffineMapCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.map_type.map_or("unclassified".to_string(), |t| format!("type {t}"));
        write!(f, "a={} s0={} s1={} {t}", self.a, self.s0, self.s1)
    }
}

/// Every affine bijection of `Z/p` commuting with `J` whose d-differences
/// are all even, each typed by [`mapform_classify`].
pub fn enumerate_affine_maps(p: i64, q: i64) -> Result<Vec<AffineMapCandidate>> {
    if p < 1 || q < 1 || gcd(p, q) != 1 {
        return domain(format!("enumerate_affine_maps needs coprime p, q >= 1, got ({p}, {q})"));
    }
    let s0 = fixed_points(p, q)[0];
    let mut out = Vec::new();
    for a in (0..p).filter(|&a| gcd(a, p) == 1) {
        for b in 0..p {
            // J o phi = phi o J  <=>  2b = (1 - a)(q - 1) mod p
            if (2 * b - (1 - a) * (q - 1)).rem_euclid(p) != 0 {
                continue;
            }
            let phi = |i: i64| (a * i + b).rem_euclid(p);
            let mut passes = true;
            for i in 0..p {
                if !d_diff_even(p, q, i, phi(i))? {
                    passes = false;
                    break;
                }
            }
            if !passes {
                continue;
            }
            let s1 = phi(s0);
            let map_type = match mapform_classify(a, s0, s1, p, q)? {
                MapForm::Typed(t) => Some(t),
                MapForm::Violation(_) => None,
            };
            out.push(AffineMapCandidate { p, a, b, s0, s1, map_type });
        }
    }
    Ok(out)
}

/// `p/(4q) + 1/2 - 3/q - q`.
pub fn nu_plus_bound(p: i64, q: i64) -> Result<Rational> {
    if p <= 0 || q <= 0 {
        return domain(format!("nu_plus_bound needs p, q > 0, got ({p}, {q})"));
    }
    Ok(Rational::new(p, 4 * q) + Rational::new(1, 2) - Rational::new(3, q) - q)
}

/// `min(floor(x/q), ceil((p - x)/q))`.
pub fn f_index(p: i64, q: i64, x: i64) -> i64 {
    x.div_euclid(q).min(ceil_div(p - x, q))
}

/// An index `x` with `d(p,q,x) - d(p,q,phi(x)) > 0` and `f(x) + 1 > nu_plus_bound`,
/// so that any knot pair realizing `phi` has `nu^+ >= f(x) + 1` above the bound.
/// Among all indices with positive difference the one maximizing `f` is tried.
pub fn genusbound_witness(p: i64, q: i64, phi: &AffineMapCandidate) -> Result<Option<i64>> {
    if phi.p != p {
        return domain(format!("map is on Z/{}, not Z/{p}", phi.p));
    }
    if phi.map_type.is_none() || phi.is_trivial() {
        return domain("genusbound_witness needs a typed map with a != +-1");
    }
    let bound = nu_plus_bound(p, q)?;
    let mut best: Option<(i64, i64)> = None;
    for x in 0..p {
        let diff = d_invariant(p, q, x)? - d_invariant(p, q, phi.apply(x))?;
        if diff.is_positive() {
            let f = f_index(p, q, x);
            if best.is_none_or(|(_, bf)| f > bf) {
                best = Some((x, f));
            }
        }
    }
    Ok(best.filter(|&(_, f)| Rational::integer(f + 1) > bound).map(|(x, _)| x))
}

/// A slope `p/q` at which a cable of a torus knot shares its surgery with `T(r,s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CableSlope {
    pub p: i64,
    pub q: i64,
    pub cable: CableKnot,
}

/// The closed form: `q = floor(s/r) >= 2`, `r > q`, `s(q^2 - 1) = rq^3 +- 1`,
/// `p = (r^2 q^4 - 1)/(q^2 - 1)`, cable `(q, (q^2 r^2 - 1)/(q^2 - 1))` of
/// `T(r, (rq +- 1)/(q^2 - 1))`.
pub fn cable_slope(r: i64, s: i64) -> Result<Option<CableSlope>> {
    if !(s > r && r > 1) || gcd(r, s) != 1 {
        return domain(format!("cable_slope needs s > r > 1 coprime, got ({r}, {s})"));
    }
    let q = s / r;
    if q < 2 || r <= q {
        return Ok(None);
    }
    let q2 = q * q - 1;
    let sign = if s * q2 == r * q * q * q + 1 {
        1
    } else if s * q2 == r * q * q * q - 1 {
        -1
    } else {
        return Ok(None);
    };
    let p = (r * r * q * q * q * q - 1) / q2;
    let c = (q * q * r * r - 1) / q2;
    let b = (r * q + sign) / q2;
    let cable = CableKnot::new(q, c, TorusKnot::new(r, b)?)?;
    Ok(Some(CableSlope { p, q, cable }))
}

/// One torus-knot / cable pair with a common surgery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CensusRecord {
    pub r: i64,
    pub s: i64,
    pub p: i64,
    pub q: i64,
    pub w: i64,
    pub c: i64,
    pub companion_r: i64,
    pub companion_b: i64,
    pub verified: bool,
}

pub const CENSUS_TSV_HEADER: &str = "r\ts\tp\tq\tw\tc\tcompanion_r\tcompanion_b\tverified";

impl CensusRecord {
    pub fn torus(&self) -> TorusKnot {
        TorusKnot::new(self.r, self.s).expect("census torus knot")
    }

    pub fn cable(&self) -> CableKnot {
        let companion = TorusKnot::new(self.companion_r, self.companion_b).expect("census companion");
        CableKnot::new(self.w, self.c, companion).expect("census cable")
    }

    /// Key ignoring the companion's parameter order and the verification flag.
    pub fn key(&self) -> (i64, i64, i64, i64, CableKnot) {
        let cable = self.cable();
        let canon = CableKnot::new(cable.w(), cable.c(), cable.companion().canonical()).expect("valid");
        (self.r, self.s, self.p, self.q, canon)
    }

    pub fn to_tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.r, self.s, self.p, self.q, self.w, self.c, self.companion_r, self.companion_b, self.verified
        )
    }
}

impl FromStr for CensusRecord {
    type Err = Error;

    fn from_str(row: &str) -> Result<Self> {
        let cols: Vec<&str> = row.trim_end_matches('\n').split('\t').collect();
        if cols.len() != 9 {
            return Err(Error::Parse(format!("census row needs 9 columns, got {}", cols.len())));
        }
        let int = |i: usize| cols[i].parse::<i64>().map_err(|e| Error::Parse(format!("column {i}: {e}")));
        let verified = cols[8].parse::<bool>().map_err(|e| Error::Parse(format!("column 8: {e}")))?;
        Ok(CensusRecord {
            r: int(0)?,
            s: int(1)?,
            p: int(2)?,
            q: int(3)?,
            w: int(4)?,
            c: int(5)?,
            companion_r: int(6)?,
            companion_b: int(7)?,
            verified,
        })
    }
}

/// Full check of a pair: oriented homeomorphism, zero Casson-Walker difference
/// and equal `|H_1|`.
pub fn verify_pair(torus: &TorusKnot, cable: &CableKnot, p: i64, q: i64) -> Result<bool> {
    let x = surgery_torus_knot(torus.r(), torus.s(), p, q)?;
    let y = surgery_cable(cable, p, q)?;
    let same = match surgery_homeomorphic(&x, &y) {
        Ok(b) => b,
        Err(Error::NotComparable(_)) => false,
        Err(e) => return Err(e),
    };
    let cw = casson_walker_obstruction(&Knot::Torus(*torus), &Knot::Cable(*cable), p, q)?;
    Ok(same && cw.is_zero() && x.h1_order() == y.h1_order())
}

fn record(torus: &TorusKnot, p: i64, q: i64, cable: &CableKnot, verified: bool) -> CensusRecord {
    CensusRecord {
        r: torus.r(),
        s: torus.s(),
        p,
        q,
        w: cable.w(),
        c: cable.c(),
        companion_r: cable.companion().r(),
        companion_b: cable.companion().s(),
        verified,
    }
}

fn torus_pairs(s_max: i64) -> Vec<(i64, i64)> {
    (3..=s_max).flat_map(|s| (2..s).filter(move |&r| gcd(r, s) == 1).map(move |r| (r, s))).collect()
}

/// Every `T(r,s)` with `s <= s_max` whose closed-form cable slope has
/// `q <= q_max`, each verified. Sorted by `(r, s)`.
pub fn cable_census(s_max: i64, q_max: i64) -> Result<Vec<CensusRecord>> {
    if s_max < 2 || q_max < 2 {
        return domain(format!("census bounds must be at least 2, got ({s_max}, {q_max})"));
    }
    let mut out: Vec<CensusRecord> = torus_pairs(s_max)
        .into_par_iter()
        .map(|(r, s)| -> Result<Option<CensusRecord>> {
            let Some(slope) = cable_slope(r, s)? else { return Ok(None) };
            if slope.q > q_max {
                return Ok(None);
            }
            let torus = TorusKnot::new(r, s)?;
            let ok = verify_pair(&torus, &slope.cable, slope.p, slope.q)?;
            Ok(Some(record(&torus, slope.p, slope.q, &slope.cable, ok)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    out.sort();
    Ok(out)
}

fn sorted3(mut v: [i64; 3]) -> [i64; 3] {
    v.sort_unstable();
    v
}

/// Companion candidates `(a, b)` (with `2 <= a`, `|b| >= 2`) whose surgery
/// `S^3_{p/(q w^2)}(T(a,b))` can have the same exceptional fibers as
/// `S^3_{p/q}(T(r,s))`.
fn companion_candidates(r: i64, s: i64, p: i64, q: i64, w: i64) -> Vec<(i64, i64)> {
    let qw2 = q as i128 * (w * w) as i128;
    let m = (p as i128 - (r * s * q) as i128).abs();
    let mut out = Vec::new();
    let mut push = |a: i64, b: i64| {
        if a >= 2 && b.abs() >= 2 && gcd(a, b) == 1 {
            let (a, b) = if a <= b.abs() { (a, b) } else { (b.abs(), a * b.signum()) };
            out.push((a, b));
        }
    };
    if m == 1 {
        // lens space: needs |p - ab q w^2| = 1
        for target in [p as i128 - 1, p as i128 + 1] {
            if target % qw2 != 0 {
                continue;
            }
            let ab = target / qw2;
            let n = ab.unsigned_abs() as i64;
            for a in 2..=n {
                if n % a == 0 {
                    push(a, (n / a) * ab.signum() as i64);
                }
            }
        }
    } else if let Ok(m) = i64::try_from(m) {
        let target = sorted3([r, s, m]);
        let fibers = [r, s, m];
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let (a, b) = (fibers[i], fibers[j]);
            for b in [b, -b] {
                let n = (p as i128 - a as i128 * b as i128 * qw2).abs();
                if let Ok(n) = i64::try_from(n) {
                    if sorted3([a, b.abs(), n]) == target {
                        push(a, b);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Exhaustive search, independent of the closed form: for every `T(r,s)` with
/// `s <= s_max`, every `q, w in [2, q_max]` and every `p` with `p = qwc +- 1`
/// in the window where the exceptional fibers can possibly match, all
/// cables `C(w, c; T(a,b))` with an orientation-preserving common surgery.
pub fn cable_census_brute_force(s_max: i64, q_max: i64) -> Result<Vec<CensusRecord>> {
    if s_max < 2 || q_max < 2 {
        return domain(format!("census bounds must be at least 2, got ({s_max}, {q_max})"));
    }
    let cells: Vec<(i64, i64, i64, i64)> = torus_pairs(s_max)
        .into_iter()
        .flat_map(|(r, s)| (2..=q_max).flat_map(move |q| (2..=q_max).map(move |w| (r, s, q, w))))
        .collect();
    let mut out: Vec<CensusRecord> = cells
        .into_par_iter()
        .map(|(r, s, q, w)| -> Result<Vec<CensusRecord>> {
            let torus = TorusKnot::new(r, s)?;
            let rs = r * s;
            let bound = q * rs * (w * w + 1) / 2 + 2 * rs * q + s + 1;
            let qw = q * w;
            let mut found = Vec::new();
            let mut p = -bound - (-bound).rem_euclid(qw) - 1;
            while p <= bound + 1 {
                for cand in [p, p + 2] {
                    if gcd(cand, q) != 1 {
                        continue;
                    }
                    let sign = if (cand - 1) % qw == 0 { 1 } else { -1 };
                    let c = (cand - sign) / qw;
                    if gcd(w, c) != 1 {
                        continue;
                    }
                    for (a, b) in companion_candidates(r, s, cand, q, w) {
                        let cable = CableKnot::new(w, c, TorusKnot::new(a, b)?)?;
                        let x = surgery_torus_knot(r, s, cand, q)?;
                        let y = surgery_cable(&cable, cand, q)?;
                        if matches!(surgery_homeomorphic(&x, &y), Ok(true)) {
                            let ok = verify_pair(&torus, &cable, cand, q)?;
                            found.push(record(&torus, cand, q, &cable, ok));
                        }
                    }
                }
                p += qw;
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Whether the closed-form census and the exhaustive search find the same pairs.
pub fn census_agrees(formula: &[CensusRecord], brute: &[CensusRecord]) -> bool {
    let a: BTreeSet<_> = formula.iter().map(CensusRecord::key).collect();
    let b: BTreeSet<_> = brute.iter().map(CensusRecord::key).collect();
    a == b
}

/// Orientation-preserving `S^3_{p/q}(T(r,s)) = S^3_{p/q}(T(a,b))`.
pub fn torus_torus_shared(r: i64, s: i64, a: i64, b: i64, p: i64, q: i64) -> Result<bool> {
    let (k1, k2) = (TorusKnot::new(r, s)?, TorusKnot::new(a, b)?);
    if k1.is_same_knot(&k2) {
        surgery_torus_knot(r, s, p, q)?;
        return Ok(true);
    }
    let x = surgery_torus_knot(r, s, p, q)?;
    let y = surgery_torus_knot(a, b, p, q)?;
    if let (SurgeryResult::Seifert(_), SurgeryResult::Seifert(_)) = (x.resolve(), y.resolve()) {
        if !casson_walker_obstruction(&k1.into(), &k2.into(), p, q)?.is_zero() {
            return Ok(false);
        }
    }
    if let (SurgeryResult::Lens(l1), SurgeryResult::Lens(l2)) = (x.resolve(), y.resolve()) {
        return Ok(lens_homeo(&l1, &l2, true));
    }
    match surgery_homeomorphic(&x, &y) {
        Ok(v) => Ok(v),
        Err(Error::NotComparable(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The odd-length expansion of `p/(q r^2)` for `p = qrs +- 1`, assembled from
/// `s/r = [a_0, ..., a_k]^+`:
/// `[a_0, ..., a_k, q-1, 1, a_k - 1, a_{k-1}, ..., a_1]^+` when `p = qrs + (-1)^k`,
/// `[a_0, ..., a_{k-1}, a_k - 1, 1, q-1, a_k, ..., a_1]^+` when `p = qrs - (-1)^k`.
pub fn lens_cf_pattern(r: i64, s: i64, q: i64, p: i64) -> Result<CfPlus> {
    if !(s > r && r > 1) || gcd(r, s) != 1 || q < 2 {
        return domain(format!("lens_cf_pattern needs s > r > 1 coprime and q >= 2, got ({r}, {s}, {q})"));
    }
    let a = cf_plus_expand(s, r, None)?.coefficients().to_vec();
    let k = a.len() - 1;
    let parity = if k % 2 == 0 { 1 } else { -1 };
    let qrs = q * r * s;
    let mut out: Vec<i64> = Vec::with_capacity(2 * k + 3);
    if p == qrs + parity {
        out.extend(&a);
        out.extend([q - 1, 1, a[k] - 1]);
        out.extend(a[1..k].iter().rev());
    } else if p == qrs - parity {
        out.extend(&a[..k]);
        out.extend([a[k] - 1, 1, q - 1]);
        out.extend(a[1..].iter().rev());
    } else {
        return domain(format!("p = {p} is not qrs +- 1 = {qrs} +- 1"));
    }
    CfPlus::new(out)
}

/// Whether [`lens_cf_pattern`] equals the odd-length expansion of `p/(q r^2)`.
pub fn lens_cf_matches(r: i64, s: i64, q: i64, p: i64) -> Result<bool> {
    let pattern = lens_cf_pattern(r, s, q, p)?;
    let direct = cf_plus_expand(p, q * r * r, Some(Parity::Odd))?;
    Ok(pattern == direct)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SlopeCondition {
    ConditionI,
    ConditionII,
    ConditionIII,
}

impl fmt::Display for SlopeCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SlopeCondition::ConditionI => "(i)",
            SlopeCondition::ConditionII => "(ii)",
            SlopeCondition::ConditionIII => "(iii)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    OnlyTrs,
    TrsOrSpecificCable(CableSlope),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeClassification {
    /// All conditions that hold, `(iii)` first.
    pub conditions: Vec<SlopeCondition>,
    /// `None` when no condition holds.
    pub conclusion: Option<Conclusion>,
    /// The closed-form cable pair, when it sits at exactly this slope.
    pub known_cable: Option<CableSlope>,
}

impl SlopeClassification {
    pub fn primary(&self) -> Option<SlopeCondition> {
        self.conditions.first().copied()
    }

    pub fn is_covered(&self) -> bool {
        !self.conditions.is_empty()
    }
}

impl fmt::Display for SlopeClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.primary(), &self.conclusion) {
            (Some(c), Some(Conclusion::OnlyTrs)) => {
                write!(f, "condition {c}: characterizing among q>=2 candidates")
            }
            (Some(c), Some(Conclusion::TrsOrSpecificCable(cs))) => {
                write!(f, "condition {c}: only T(r,s) or the cable {}", cs.cable)
            }
            _ if self.known_cable.is_some() => write!(f, "not covered; known cable pair exists at this slope"),
            _ => write!(f, "not covered"),
        }
    }
}

/// Which of the three slope conditions hold for `T(r,s)` at `p/q`.
pub fn classify_slope(r: i64, s: i64, p: i64, q: i64) -> Result<SlopeClassification> {
    if q < 2 {
        return Err(Error::Unsupported(format!("integer slopes out of scope, got q = {q}")));
    }
    if !(s > r && r > 1) || gcd(r, s) != 1 {
        return domain(format!("classify_slope needs s > r > 1 coprime, got ({r}, {s})"));
    }
    if gcd(p, q) != 1 {
        return domain(format!("slope {p}/{q} not in lowest terms"));
    }
    let hyper = Rational::new(43 * (r * s - r - s), 4);
    let pr = Rational::integer(p);
    let mut conditions = Vec::new();
    if q >= 9 {
        conditions.push(SlopeCondition::ConditionIII);
    }
    if pr <= -hyper.clone() && p <= -32 * q {
        conditions.push(SlopeCondition::ConditionI);
    }
    if pr >= hyper && p >= 32 * q + 2 * q * (r - 1) * (s - 1) {
        conditions.push(SlopeCondition::ConditionII);
    }
    let known_cable = cable_slope(r, s)?.filter(|cs| cs.p == p && cs.q == q);
    let conclusion = if conditions.is_empty() {
        None
    } else if let Some(cs) = known_cable {
        Some(Conclusion::TrsOrSpecificCable(cs))
    } else {
        Some(Conclusion::OnlyTrs)
    };
    Ok(SlopeClassification { conditions, conclusion, known_cable })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    pub hfk_recovery: i64,
    pub technical2_neg: i64,
    pub hyperbolic: Rational,
}

/// `12 + 4q^2 - 2q + 4qg`, `min(2q - 12 - 4q^2, -2qg)` and `43(2g - 1)/4`.
pub fn thresholds(g: i64, q: i64) -> Result<Thresholds> {
    if g < 0 || q < 1 {
        return domain(format!("thresholds need g >= 0, q >= 1, got ({g}, {q})"));
    }
    Ok(Thresholds {
        hfk_recovery: 12 + 4 * q * q - 2 * q + 4 * q * g,
        technical2_neg: (2 * q - 12 - 4 * q * q).min(-2 * q * g),
        hyperbolic: Rational::new(43 * (2 * g - 1), 4),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lens::d_multiset;

    #[test]
    fn fixed_point_sets() {
        assert_eq!(fixed_points(29, 2), vec![15]);
        assert_eq!(fixed_points(16, 1), vec![0, 8]);
        assert_eq!(fixed_points(15, 2), vec![8]);
    }

    #[test]
    fn mapform_examples() {
        assert_eq!(mapform_classify(1, 15, 15, 29, 2).unwrap(), MapForm::Typed(MapType::I));
        assert_eq!(mapform_classify(1, 0, 0, 16, 1).unwrap(), MapForm::Typed(MapType::II));
        assert_eq!(mapform_classify(7, 0, 8, 16, 1).unwrap(), MapForm::Typed(MapType::III));
        assert!(matches!(mapform_classify(3, 8, 8, 15, 2).unwrap(), MapForm::Violation(_)));
        assert!(matches!(mapform_classify(5, 0, 6, 12, 1).unwrap(), MapForm::Violation(_)));
        assert!(mapform_classify(1, 3, 3, 29, 2).is_err());
    }

    #[test]
    fn affine_maps_examples() {
        let maps = enumerate_affine_maps(29, 2).unwrap();
        assert_eq!(maps.len(), 2);
        assert!(maps.iter().all(|m| m.is_trivial() && m.s0 == 15 && m.s1 == 15));
        for (p, q) in [(16, 1), (24, 5), (35, 4)] {
            let maps = enumerate_affine_maps(p, q).unwrap();
            assert!(maps.iter().any(|m| m.a == 1 && m.b == 0), "identity for ({p},{q})");
            assert!(maps.iter().all(|m| m.map_type.is_some()));
        }
        // the type III shape 7(i - 0) + 8 on Z/16 either survives typed III or is filtered out
        let m16 = enumerate_affine_maps(16, 1).unwrap();
        if let Some(m) = m16.iter().find(|m| m.a == 7 && m.s1 == 8) {
            assert_eq!(m.map_type, Some(MapType::III));
        }
    }

    /// A surviving map preserves the multiset of d-invariants mod 2.
    #[test]
    fn affine_maps_preserve_parity_classes() {
        for (p, q) in [(21, 4), (40, 3), (45, 7)] {
            for m in enumerate_affine_maps(p, q).unwrap() {
                for i in 0..p {
                    let diff = d_invariant(p, q, i).unwrap() - d_invariant(p, q, m.apply(i)).unwrap();
                    assert!((diff * Rational::new(1, 2)).is_integer());
                }
            }
        }
        assert!(d_multiset(21, 4).unwrap().len() == 21);
    }

    #[test]
    fn nu_plus_bound_examples() {
        assert_eq!(nu_plus_bound(133, 2).unwrap(), Rational::new(109, 8));
        for q in 1..6 {
            let expected = Rational::integer(8 * q) + Rational::new(1, 2) - Rational::new(3, q) - q;
            assert_eq!(nu_plus_bound(32 * q * q, q).unwrap(), expected);
            assert!(nu_plus_bound(100, q).unwrap() < nu_plus_bound(101, q).unwrap());
        }
        assert!(nu_plus_bound(0, 1).is_err());
    }

    #[test]
    fn genusbound_witness_examples() {
        let maps = enumerate_affine_maps(16, 1).unwrap();
        let identity = maps.iter().find(|m| m.a == 1).unwrap();
        assert!(genusbound_witness(16, 1, identity).is_err());
        for m in maps.iter().filter(|m| !m.is_trivial()) {
            if let Some(x) = genusbound_witness(16, 1, m).unwrap() {
                assert!(Rational::integer(f_index(16, 1, x) + 1) > nu_plus_bound(16, 1).unwrap());
                assert!((d_invariant(16, 1, x).unwrap() - d_invariant(16, 1, m.apply(x)).unwrap()).is_positive());
            }
        }
    }

    #[test]
    fn cable_slope_examples() {
        let cs = cable_slope(5, 13).unwrap().unwrap();
        assert_eq!((cs.p, cs.q), (133, 2));
        assert_eq!(cs.cable.to_string(), "C(2,33;T(5,3))");
        let cs = cable_slope(4, 11).unwrap().unwrap();
        assert_eq!((cs.p, cs.q), (85, 2));
        assert_eq!(cs.cable.to_string(), "C(2,21;T(4,3))");
        assert_eq!(cable_slope(2, 3).unwrap(), None);
        assert_eq!(cable_slope(2, 5).unwrap(), None);
        assert!(cable_slope(3, 3).is_err());
    }

    #[test]
    fn census_small() {
        let census = cable_census(13, 5).unwrap();
        assert_eq!(census.len(), 2);
        assert!(census.iter().all(|r| r.verified));
        assert!(cable_census(10, 5).unwrap().is_empty());
        let row = census[0].to_tsv_row();
        assert_eq!(row.parse::<CensusRecord>().unwrap(), census[0]);
        assert!("1\t2".parse::<CensusRecord>().is_err());
        let brute = cable_census_brute_force(13, 3).unwrap();
        assert!(census_agrees(&census, &brute), "{brute:?}");
    }

    #[test]
    fn torus_torus_examples() {
        assert!(!torus_torus_shared(2, 7, 3, 5, 29, 2).unwrap());
        assert!(torus_torus_shared(2, 7, 2, 7, 29, 2).unwrap());
        assert!(torus_torus_shared(3, 5, 5, 3, 31, 3).unwrap());
        assert!(!torus_torus_shared(2, 3, 2, 5, 13, 2).unwrap());
        assert!(!torus_torus_shared(2, 5, 2, 7, 13, 2).unwrap());
    }

    #[test]
    fn lens_pattern_examples() {
        assert_eq!(lens_cf_pattern(2, 3, 2, 13).unwrap().coefficients(), &[1, 1, 1, 1, 2]);
        assert_eq!(cf_plus_expand(3, 2, None).unwrap().coefficients(), &[1, 2]);
        for (r, s) in [(2, 3), (2, 7), (3, 5), (4, 9)] {
            for q in 2..=5 {
                for p in [q * r * s - 1, q * r * s + 1] {
                    assert!(lens_cf_matches(r, s, q, p).unwrap(), "({r},{s},{q},{p})");
                }
            }
        }
        assert!(lens_cf_pattern(2, 3, 2, 14).is_err());
    }

    #[test]
    fn classify_examples() {
        let c = classify_slope(2, 3, 110, 3).unwrap();
        assert_eq!(c.primary(), Some(SlopeCondition::ConditionII));
        assert_eq!(c.conclusion, Some(Conclusion::OnlyTrs));
        assert_eq!(c.to_string(), "condition (ii): characterizing among q>=2 candidates");
        assert_eq!(classify_slope(2, 3, 107, 3).unwrap().conditions, vec![]);
        let c = classify_slope(5, 13, 133, 2).unwrap();
        assert!(!c.is_covered());
        assert!(c.known_cable.is_some());
        assert_eq!(c.to_string(), "not covered; known cable pair exists at this slope");
        let c = classify_slope(5, 13, 1, 9).unwrap();
        assert_eq!(c.primary(), Some(SlopeCondition::ConditionIII));
        let c = classify_slope(2, 3, -1000, 9).unwrap();
        assert_eq!(c.conditions, vec![SlopeCondition::ConditionIII, SlopeCondition::ConditionI]);
        assert!(matches!(classify_slope(2, 3, 7, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn classify_boundary_is_exact() {
        // rs - r - s = 47 for T(5,13): 43*47/4 = 505.25
        assert!(!classify_slope(5, 13, 505, 2).unwrap().is_covered());
        assert!(classify_slope(5, 13, 507, 2).unwrap().is_covered());
        assert!(!classify_slope(5, 13, -505, 2).unwrap().is_covered());
        assert!(classify_slope(5, 13, -507, 2).unwrap().is_covered());
    }

    #[test]
    fn thresholds_examples() {
        assert_eq!(thresholds(3, 3).unwrap().hfk_recovery, 78);
        assert_eq!(thresholds(24, 2).unwrap().technical2_neg, -96);
        assert_eq!(thresholds(1, 7).unwrap().hyperbolic, Rational::new(43, 4));
        assert!(thresholds(-1, 2).is_err());
    }
}
