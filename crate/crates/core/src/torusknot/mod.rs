//! Torus knots, their cables, Alexander polynomials, torsion coefficients
//! and the staircase values `V_k` of L-space knots.

mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use poly::LaurentPoly;
use poly::{divide_exact, poly_mul, t_pow_minus_one};

use crate::error::{domain, Error, Result};
use crate::numtheory::{gcd, Rational};

/// Torus knot `T(r, s)` with `r >= 2`, `|s| >= 2`, `gcd(r, |s|) = 1`.
/// Negative `s` denotes the mirror of `T(r, |s|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusKnot {
    r: i64,
    s: i64,
}

impl TorusKnot {
    pub fn new(r: i64, s: i64) -> Result<Self> {
        if r < 2 || s.abs() < 2 {
            return domain(format!("T({r},{s}) needs r >= 2 and |s| >= 2"));
        }
        if gcd(r, s) != 1 {
            return domain(format!("T({r},{s}) parameters not coprime"));
        }
        Ok(TorusKnot { r, s })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn is_positive(&self) -> bool {
        self.s > 0
    }

    /// Same knot with parameters ordered `r < |s|`.
    pub fn canonical(&self) -> TorusKnot {
        if self.r <= self.s.abs() {
            *self
        } else {
            TorusKnot { r: self.s.abs(), s: self.r * self.s.signum() }
        }
    }

    pub fn is_same_knot(&self, other: &TorusKnot) -> bool {
        self.canonical() == other.canonical()
    }

    /// `(r - 1)(|s| - 1)/2`.
    pub fn genus(&self) -> i64 {
        (self.r - 1) * (self.s.abs() - 1) / 2
    }

    pub fn alexander(&self) -> LaurentPoly {
        alexander_torus(self.r, self.s.abs()).expect("validated torus knot")
    }

    /// `(r^2 - 1)(s^2 - 1)/12`.
    pub fn delta_second(&self) -> Rational {
        Rational::new((self.r * self.r - 1) * (self.s * self.s - 1), 12)
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.r, self.s)
    }
}

/// The `(w, c)`-cable of a torus knot: winding number `w >= 2`, `gcd(w, c) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CableKnot {
    w: i64,
    c: i64,
    companion: TorusKnot,
}

impl CableKnot {
    pub fn new(w: i64, c: i64, companion: TorusKnot) -> Result<Self> {
        if w < 2 {
            return domain(format!("cable winding number {w} must be at least 2"));
        }
        if gcd(w, c) != 1 {
            return domain(format!("cable parameters ({w},{c}) not coprime"));
        }
        Ok(CableKnot { w, c, companion })
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn companion(&self) -> &TorusKnot {
        &self.companion
    }

    /// Alexander polynomial of the `(w, c)` torus-knot pattern (1 when `|c| <= 1`).
    pub fn pattern_alexander(&self) -> LaurentPoly {
        if self.c.abs() <= 1 {
            LaurentPoly::one()
        } else {
            alexander_torus(self.w, self.c.abs()).expect("gcd(w, c) = 1")
        }
    }

    pub fn alexander(&self) -> LaurentPoly {
        alexander_cable(self)
    }

    pub fn genus(&self) -> i64 {
        self.alexander().degree()
    }

    /// `w^2 Delta''_companion(1) + (w^2 - 1)(c^2 - 1)/12`.
    pub fn delta_second(&self) -> Rational {
        let w2 = self.w * self.w;
        let pattern = Rational::new((w2 - 1) * (self.c * self.c - 1), 12);
        self.companion.delta_second() * w2 + pattern
    }
}

impl fmt::Display for CableKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{};{})", self.w, self.c, self.companion)
    }
}

/// A knot this crate knows how to handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Knot {
    Torus(TorusKnot),
    Cable(CableKnot),
}

impl Knot {
    pub fn alexander(&self) -> LaurentPoly {
        match self {
            Knot::Torus(k) => k.alexander(),
            Knot::Cable(k) => k.alexander(),
        }
    }

    pub fn delta_second(&self) -> Rational {
        match self {
            Knot::Torus(k) => k.delta_second(),
            Knot::Cable(k) => k.delta_second(),
        }
    }

    pub fn genus(&self) -> i64 {
        match self {
            Knot::Torus(k) => k.genus(),
            Knot::Cable(k) => k.genus(),
        }
    }

    /// Positive torus knots, and cables `C(w,c;T)` of a positive torus knot
    /// with `c/w >= 2g(T) - 1`.
    pub fn is_lspace_knot(&self) -> bool {
        match self {
            Knot::Torus(k) => k.is_positive(),
            Knot::Cable(k) => {
                let t = k.companion();
                t.is_positive() && k.w() > 0 && k.c() >= k.w() * (2 * t.genus() - 1)
            }
        }
    }

    /// Staircase data, available exactly for L-space knots.
    pub fn staircase(&self) -> Result<StaircaseInvariants> {
        if !self.is_lspace_knot() {
            return Err(Error::Unsupported(format!("{self} is not an L-space knot")));
        }
        staircase(self, true)
    }
}

impl From<TorusKnot> for Knot {
    fn from(k: TorusKnot) -> Self {
        Knot::Torus(k)
    }
}

impl From<CableKnot> for Knot {
    fn from(k: CableKnot) -> Self {
        Knot::Cable(k)
    }
}

impl fmt::Display for Knot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Knot::Torus(k) => k.fmt(f),
            Knot::Cable(k) => k.fmt(f),
        }
    }
}

fn parse_ints(body: &str, expected: usize, whole: &str) -> Result<Vec<i64>> {
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    if parts.len() != expected {
        return Err(Error::Parse(format!("expected {expected} integers in {whole:?}")));
    }
    parts
        .iter()
        .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("{whole:?}: {e}"))))
        .collect()
}

/// Accepts `T(r,s)` and `C(w,c;T(r,s))`, whitespace-insensitive.
impl FromStr for Knot {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = |prefix: &str| {
            s.strip_prefix(prefix)
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("cannot parse knot {input:?}")))
        };
        if s.starts_with("T(") {
            let v = parse_ints(inner("T(")?, 2, input)?;
            Ok(Knot::Torus(TorusKnot::new(v[0], v[1])?))
        } else if s.starts_with("C(") {
            let body = inner("C(")?;
            let (wc, companion) = body
                .split_once(';')
                .ok_or_else(|| Error::Parse(format!("cable {input:?} lacks ';'")))?;
            let v = parse_ints(wc, 2, input)?;
            let companion = match companion.parse::<Knot>()? {
                Knot::Torus(t) => t,
                Knot::Cable(_) => return Err(Error::Parse("iterated cables unsupported".into())),
            };
            Ok(Knot::Cable(CableKnot::new(v[0], v[1], companion)?))
        } else {
            Err(Error::Parse(format!("cannot parse knot {input:?}")))
        }
    }
}

/// Symmetrized `(t^{rs}-1)(t-1)/((t^r-1)(t^s-1))`, by exact polynomial division.
pub fn alexander_torus(r: i64, s: i64) -> Result<LaurentPoly> {
    if r < 2 || s < 2 || gcd(r, s) != 1 {
        return domain(format!("alexander_torus needs coprime r, s > 1, got ({r},{s})"));
    }
    let (ru, su) = (r as usize, s as usize);
    let num = poly_mul(&t_pow_minus_one(ru * su), &t_pow_minus_one(1));
    let den = poly_mul(&t_pow_minus_one(ru), &t_pow_minus_one(su));
    let quot = divide_exact(&num, &den).expect("cyclotomic quotient is exact");
    let shift = (r - 1) * (s - 1) / 2;
    Ok(LaurentPoly::from_terms(
        quot.into_iter().enumerate().map(|(e, c)| (e as i64 - shift, c)),
    ))
}

/// `Delta_companion(t^w) * Delta_pattern(t)`.
pub fn alexander_cable(k: &CableKnot) -> LaurentPoly {
    k.companion.alexander().substitute_power(k.w).mul(&k.pattern_alexander())
}

/// Torsion coefficients `t_k = sum_{i >= 0} i a_{k+i}` of a normalized Alexander polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionCoefficients {
    alexander: LaurentPoly,
}

impl TorsionCoefficients {
    /// `t_k` for any integer `k`. Vanishes for `k >= deg`, equals `-k` for `k <= -deg`.
    pub fn get(&self, k: i64) -> i64 {
        self.alexander.terms().filter(|&(e, _)| e >= k).map(|(e, c)| (e - k) * c).sum()
    }

    /// Values for `|k| <= deg`.
    pub fn as_map(&self) -> BTreeMap<i64, i64> {
        let d = self.alexander.degree();
        (-d..=d).map(|k| (k, self.get(k))).collect()
    }
}

pub fn torsion_coefficients(poly: &LaurentPoly) -> Result<TorsionCoefficients> {
    if !poly.is_normalized() {
        return domain(format!("{poly} is not a symmetric polynomial with value 1 at t = 1"));
    }
    Ok(TorsionCoefficients { alexander: poly.clone() })
}

/// Inverts [`torsion_coefficients`] via `a_k = t_{k+1} - 2 t_k + t_{k-1}`.
///
/// Only `t_k` for `k >= 0` is required; `a_0` then follows from `Delta(1) = 1`.
/// Entries with negative `k`, when present, must agree with the reconstruction.
pub fn alexander_from_torsion(torsion: &BTreeMap<i64, i64>) -> Result<LaurentPoly> {
    let t = |k: i64| torsion.get(&k).copied().unwrap_or(0);
    let top = torsion.iter().filter(|(&k, &v)| k >= 0 && v != 0).map(|(&k, _)| k).max();
    let Some(top) = top else {
        if torsion.iter().any(|(&k, &v)| k < 0 && v != -k) {
            return domain("negative-index torsion data inconsistent with the trivial polynomial");
        }
        return Ok(LaurentPoly::one());
    };
    let mut terms = Vec::new();
    let mut off_center = 0;
    for k in 1..=top + 1 {
        let a = t(k + 1) - 2 * t(k) + t(k - 1);
        off_center += 2 * a;
        terms.push((k, a));
        terms.push((-k, a));
    }
    terms.push((0, 1 - off_center));
    let poly = LaurentPoly::from_terms(terms);
    let check = torsion_coefficients(&poly)?;
    for (&k, &v) in torsion {
        if check.get(k) != v {
            return domain(format!("torsion data inconsistent at k = {k}"));
        }
    }
    Ok(poly)
}

/// Knot Floer data of an L-space knot: Alexander polynomial, genus, torsion
/// coefficients and the staircase values `V_k = t_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircaseInvariants {
    alexander: LaurentPoly,
    genus: i64,
    torsion: TorsionCoefficients,
}

impl StaircaseInvariants {
    fn from_alexander(alexander: LaurentPoly) -> Result<Self> {
        let torsion = torsion_coefficients(&alexander)?;
        let genus = alexander.degree();
        let st = StaircaseInvariants { alexander, genus, torsion };
        st.check_staircase()?;
        Ok(st)
    }

    fn check_staircase(&self) -> Result<()> {
        let g = self.genus;
        for k in -g - 1..=g {
            let step = self.v(k) - self.v(k + 1);
            if !(0..=1).contains(&step) {
                return domain(format!("V_{k} - V_{} = {step} is not a staircase step", k + 1));
            }
        }
        if g > 0 && self.v(g - 1) != 1 {
            return domain("V_{g-1} != 1: not the torsion data of an L-space knot");
        }
        Ok(())
    }

    pub fn alexander(&self) -> &LaurentPoly {
        &self.alexander
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn torsion(&self) -> &TorsionCoefficients {
        &self.torsion
    }

    /// `V_k`: zero for `k >= g`, otherwise `t_k` (for every integer `k`).
    pub fn v(&self, k: i64) -> i64 {
        if k >= self.genus {
            0
        } else {
            self.torsion.get(k)
        }
    }

    /// `H_k = V_{-k}`.
    pub fn h(&self, k: i64) -> i64 {
        self.v(-k)
    }

    /// `min {k : V_k = 0}`, which equals the genus.
    pub fn nu_plus(&self) -> i64 {
        (0..).find(|&k| self.v(k) == 0).expect("V_k vanishes for k >= g")
    }
}

/// Staircase invariants of a positive torus knot.
pub fn staircase_torus(k: &TorusKnot) -> Result<StaircaseInvariants> {
    if !k.is_positive() {
        return Err(Error::Unsupported(format!("{k} is a negative torus knot, not an L-space knot")));
    }
    let st = StaircaseInvariants::from_alexander(k.alexander())?;
    debug_assert_eq!(st.genus, k.genus());
    Ok(st)
}

/// Staircase invariants of a knot. Cables are accepted only when the caller
/// asserts they are L-space knots; the torsion data is then checked for the
/// staircase shape.
pub fn staircase(knot: &Knot, assume_lspace_cable: bool) -> Result<StaircaseInvariants> {
    match knot {
        Knot::Torus(k) => staircase_torus(k),
        Knot::Cable(k) if assume_lspace_cable => StaircaseInvariants::from_alexander(k.alexander()),
        Knot::Cable(k) => Err(Error::Unsupported(format!(
            "{k}: V_k extraction for cables requires the L-space flag"
        ))),
    }
}

/// `Delta''_K(1)` by the closed forms for torus knots and cables.
pub fn delta_second(knot: &Knot) -> Rational {
    knot.delta_second()
}

/// `(q / 2p)(Delta''_{k1}(1) - Delta''_{k2}(1))`: the Casson-Walker difference
/// between `p/q` surgeries, which must vanish if they are homeomorphic.
pub fn casson_walker_obstruction(k1: &Knot, k2: &Knot, p: i64, q: i64) -> Result<Rational> {
    if p == 0 {
        return domain("Casson-Walker obstruction undefined for p = 0");
    }
    Ok((k1.delta_second() - k2.delta_second()) * Rational::new(q, 2 * p))
}
