//! Seifert fibered spaces over `S^2` with at most three exceptional fibers,
//! and surgeries on torus knots and their cables.
//!
//! `S2(e; b1/a1, ...)` is the boundary of the star-shaped plumbing whose
//! central vertex has weight `-e` and whose arms are the chains `[c1, c2, ...]`
//! with `a_i/b_i = [c1, c2, ...]^-`, `c1` adjacent to the center. In this
//! orientation `S2(-2; 1/2, 2/3, 4/5)` is `+1` surgery on `T(3,2)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lens::{lens_homeo, LensSpace};
use crate::numtheory::{cf_minus_expand, ext_gcd, floor_div, gcd, Rational};
use crate::torusknot::{CableKnot, TorusKnot};

/// An exceptional fiber with invariant `b/a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fiber {
    pub a: i64,
    pub b: i64,
}

impl Fiber {
    pub fn new(b: i64, a: i64) -> Self {
        Fiber { a, b }
    }

    pub fn ratio(&self) -> Rational {
        Rational::new(self.b, self.a)
    }
}

impl fmt::Display for Fiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.b, self.a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeifertInvariants {
    e: i64,
    fibers: Vec<Fiber>,
}

impl SeifertInvariants {
    /// Raw invariants; each fiber needs `a != 0` and `gcd(a, b) = 1`.
    pub fn new(e: i64, fibers: Vec<Fiber>) -> Result<Self> {
        if fibers.len() > 3 {
            return domain(format!("{} exceptional fibers; at most 3 supported", fibers.len()));
        }
        for f in &fibers {
            if f.a == 0 {
                return domain(format!("fiber {f} has a = 0"));
            }
            if gcd(f.a, f.b) != 1 {
                return domain(format!("fiber {f} is not in lowest terms"));
            }
        }
        Ok(SeifertInvariants { e, fibers })
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    /// `e + sum b_i/a_i`.
    pub fn euler_number(&self) -> Rational {
        self.fibers.iter().map(Fiber::ratio).sum::<Rational>() + self.e
    }

    /// `|a_1 a_2 a_3 * euler|`; zero means infinite first homology.
    pub fn h1_order(&self) -> i64 {
        let prod: i64 = self.fibers.iter().map(|f| f.a).product();
        (self.euler_number() * prod).abs().to_i64().expect("h1 order is an integer")
    }

    /// Every fiber with `0 < b < a`, integer fibers absorbed into `e`, sorted.
    pub fn normalize(&self) -> SeifertInvariants {
        let mut e = self.e;
        let mut fibers = Vec::with_capacity(self.fibers.len());
        for f in &self.fibers {
            let (a, b) = if f.a < 0 { (-f.a, -f.b) } else { (f.a, f.b) };
            let k = floor_div(b, a);
            e += k;
            let b = b - k * a;
            if b != 0 {
                fibers.push(Fiber { a, b });
            }
        }
        fibers.sort();
        SeifertInvariants { e, fibers }
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }

    /// Negates `e` and every `b_i`, then normalizes.
    pub fn reverse_orientation(&self) -> SeifertInvariants {
        SeifertInvariants {
            e: -self.e,
            fibers: self.fibers.iter().map(|f| Fiber { a: f.a, b: -f.b }).collect(),
        }
        .normalize()
    }

    /// Number of fibers with `a >= 2` after normalization.
    pub fn exceptional_count(&self) -> usize {
        self.normalize().fibers.len()
    }

    /// Linear plumbing `(arm_1 reversed, -e, arm_2)` of a space with at most
    /// two exceptional fibers.
    pub fn lens_chain(&self) -> Option<Vec<i64>> {
        let n = self.normalize();
        if n.fibers.len() > 2 {
            return None;
        }
        let arm = |f: &Fiber| cf_minus_expand(f.a, f.b).expect("normalized fiber").coefficients().to_vec();
        let mut chain = Vec::new();
        if let Some(f) = n.fibers.first() {
            chain.extend(arm(f).into_iter().rev());
        }
        chain.push(-n.e);
        if let Some(f) = n.fibers.get(1) {
            chain.extend(arm(f));
        }
        Some(chain)
    }

    /// The lens space `S^3_{P/Q}(U)` with `P/Q = [chain]^-`, when there are at
    /// most two exceptional fibers. `S^1 x S^2` is an error.
    pub fn to_lens(&self) -> Result<LensSpace> {
        let chain = self
            .lens_chain()
            .ok_or_else(|| Error::NotComparable(format!("{self} has three exceptional fibers")))?;
        let (mut p, mut q) = (1i128, 0i128);
        for &c in chain.iter().rev() {
            (p, q) = (c as i128 * p - q, p);
        }
        let narrow = |x: i128| i64::try_from(x).map_err(|_| Error::Domain("lens parameters overflow".into()));
        if p == 0 {
            return domain(format!("{self} is S^1 x S^2"));
        }
        LensSpace::from_surgery_coefficient(narrow(p)?, narrow(q)?)
    }
}

impl fmt::Display for SeifertInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S2({}", self.e)?;
        for (i, fib) in self.fibers.iter().enumerate() {
            write!(f, "{}{fib}", if i == 0 { "; " } else { ", " })?;
        }
        write!(f, ")")
    }
}

/// Oriented homeomorphism of small Seifert spaces with three exceptional fibers:
/// equal Euler numbers and equal fiber invariants mod 1 up to permutation.
pub fn sfs_equal_oriented(s1: &SeifertInvariants, s2: &SeifertInvariants) -> Result<bool> {
    let (n1, n2) = (s1.normalize(), s2.normalize());
    if n1.fibers.len() < 3 || n2.fibers.len() < 3 {
        return Err(Error::NotComparable(format!(
            "{n1} vs {n2}: lens-type input, compare with lens_homeo"
        )));
    }
    Ok(n1 == n2)
}

pub fn normalize(s: &SeifertInvariants) -> SeifertInvariants {
    s.normalize()
}

pub fn reverse_orientation(s: &SeifertInvariants) -> SeifertInvariants {
    s.reverse_orientation()
}

pub fn euler_number(s: &SeifertInvariants) -> Rational {
    s.euler_number()
}

pub fn h1_order(s: &SeifertInvariants) -> i64 {
    s.h1_order()
}

/// Outcome of a surgery on a torus knot or cable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurgeryResult {
    Seifert(SeifertInvariants),
    Lens(LensSpace),
    ConnectedSum(LensSpace, LensSpace),
    OrientationReversed(Box<SurgeryResult>),
    /// `p/q = wc` on a cable: a reducible manifold.
    Reducible,
    /// Cable surgery off the `wc +- 1/q` slopes: contains an incompressible torus.
    IncompressibleTorus,
}

impl SurgeryResult {
    /// Pushes orientation reversals into the underlying space.
    pub fn resolve(&self) -> SurgeryResult {
        match self {
            SurgeryResult::OrientationReversed(inner) => match inner.resolve() {
                SurgeryResult::Seifert(s) => SurgeryResult::Seifert(s.reverse_orientation()),
                SurgeryResult::Lens(l) => SurgeryResult::Lens(l.reverse()),
                SurgeryResult::ConnectedSum(a, b) => SurgeryResult::ConnectedSum(a.reverse(), b.reverse()),
                other => other,
            },
            other => other.clone(),
        }
    }

    pub fn reversed(&self) -> SurgeryResult {
        SurgeryResult::OrientationReversed(Box::new(self.clone())).resolve()
    }

    pub fn as_seifert(&self) -> Option<&SeifertInvariants> {
        match self {
            SurgeryResult::Seifert(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_lens(&self) -> Option<&LensSpace> {
        match self {
            SurgeryResult::Lens(l) => Some(l),
            _ => None,
        }
    }

    /// `|H_1|` where defined (0 for infinite).
    pub fn h1_order(&self) -> Option<i64> {
        match self.resolve() {
            SurgeryResult::Seifert(s) => Some(s.h1_order()),
            SurgeryResult::Lens(l) => Some(l.p()),
            SurgeryResult::ConnectedSum(a, b) => Some(a.p() * b.p()),
            _ => None,
        }
    }
}

impl fmt::Display for SurgeryResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurgeryResult::Seifert(s) => s.fmt(f),
            SurgeryResult::Lens(l) => l.fmt(f),
            SurgeryResult::ConnectedSum(a, b) => write!(f, "{a} # {b}"),
            SurgeryResult::OrientationReversed(inner) => write!(f, "-({inner})"),
            SurgeryResult::Reducible => write!(f, "reducible"),
            SurgeryResult::IncompressibleTorus => write!(f, "toroidal"),
        }
    }
}

fn check_slope(p: i64, q: i64) -> Result<()> {
    if q < 1 {
        return domain(format!("slope denominator {q} must be positive"));
    }
    if gcd(p, q) != 1 {
        return domain(format!("slope {p}/{q} not in lowest terms"));
    }
    Ok(())
}

/// `S^3_{p/q}(T(r,s))`. Negative `s` is handled through
/// `S^3_{p/q}(mirror K) = -S^3_{-p/q}(K)`.
pub fn surgery_torus_knot(r: i64, s: i64, p: i64, q: i64) -> Result<SurgeryResult> {
    TorusKnot::new(r, s)?;
    check_slope(p, q)?;
    if s < 0 {
        let inner = surgery_torus_knot(r, -s, -p, q)?;
        return Ok(SurgeryResult::OrientationReversed(Box::new(inner)));
    }
    let rs = r * s;
    let off = p - rs * q;
    if off == 0 {
        return Ok(SurgeryResult::ConnectedSum(
            LensSpace::from_surgery_coefficient(r, s)?,
            LensSpace::from_surgery_coefficient(s, r)?,
        ));
    }
    if off.abs() == 1 {
        let qr2 = i64::try_from(q as i128 * (r * r) as i128 % p as i128).expect("reduced mod p");
        return Ok(SurgeryResult::Lens(LensSpace::from_surgery_coefficient(p, qr2)?));
    }
    // r s' + s r' = 1 with e = 0
    let (_, s_prime, r_prime) = ext_gcd(r, s)?;
    let raw = SeifertInvariants::new(
        0,
        vec![Fiber::new(s_prime, s), Fiber::new(r_prime, r), Fiber::new(q, off)],
    )?;
    Ok(SurgeryResult::Seifert(raw.normalize()))
}

/// `S^3_{p/q}` of a cable of a torus knot, for non-integral slopes.
pub fn surgery_cable(k: &CableKnot, p: i64, q: i64) -> Result<SurgeryResult> {
    if q < 2 {
        return Err(Error::Unsupported(format!("cable surgery needs q >= 2, got {p}/{q}")));
    }
    let (w, c) = (k.w(), k.c());
    if p as i128 == q as i128 * w as i128 * c as i128 {
        return Ok(SurgeryResult::Reducible);
    }
    check_slope(p, q)?;
    let off = p as i128 - q as i128 * w as i128 * c as i128;
    if off.abs() == 1 {
        let companion = k.companion();
        return surgery_torus_knot(companion.r(), companion.s(), p, q * w * w);
    }
    Ok(SurgeryResult::IncompressibleTorus)
}

/// Oriented homeomorphism of two surgery results.
///
/// Small Seifert spaces compare by normalized invariants, lens spaces by
/// `lens_homeo`, connected sums summand-wise. Mixed or marker-only inputs are
/// not comparable.
pub fn surgery_homeomorphic(a: &SurgeryResult, b: &SurgeryResult) -> Result<bool> {
    use SurgeryResult::*;
    match (a.resolve(), b.resolve()) {
        (Seifert(x), Seifert(y)) => {
            if x.exceptional_count() == 3 && y.exceptional_count() == 3 {
                sfs_equal_oriented(&x, &y)
            } else {
                match (x.to_lens(), y.to_lens()) {
                    (Ok(l1), Ok(l2)) => Ok(lens_homeo(&l1, &l2, true)),
                    _ => Err(Error::NotComparable(format!("{x} vs {y}"))),
                }
            }
        }
        (Lens(x), Lens(y)) => Ok(lens_homeo(&x, &y, true)),
        (ConnectedSum(a1, a2), ConnectedSum(b1, b2)) => Ok((lens_homeo(&a1, &b1, true)
            && lens_homeo(&a2, &b2, true))
            || (lens_homeo(&a1, &b2, true) && lens_homeo(&a2, &b1, true))),
        (x, y) => Err(Error::NotComparable(format!("{x} vs {y}"))),
    }
}
