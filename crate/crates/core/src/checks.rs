//! Named verification bundles, shared by the command-line `verify` and the
//! acceptance tests.

use std::fmt;

use crate::charslopes::{
    cable_census, cable_census_brute_force, census_agrees, enumerate_affine_maps, lens_cf_matches,
    lens_cf_pattern, torus_torus_shared,
};
use crate::error::{Error, Result};
use crate::lens::{
    congruence_residues, congruence_targets, d_bound_holds, d_diff_even, d_diff_even_exact, d_invariants,
    d_multiset, lens_d_multiset, lens_homeo, LensSpace,
};
use crate::numtheory::{cf_plus_expand, cf_reverse_dual, gcd, Rational};
use crate::seifert::{surgery_torus_knot, Fiber, SeifertInvariants, SurgeryResult};
use crate::surgeryfloer::{d_surgery_multiset, grading_match_sums};
use crate::torusknot::{alexander_from_torsion, staircase_torus, torsion_coefficients, TorusKnot};

pub const CHECK_NAMES: [&str; 6] = ["poincare", "remark-29-2", "congruences", "moser", "mapform", "contfrac"];

/// Outcome of one bundle. `failures` holds at most [`MAX_REPORTED`] entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub cases: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
}

pub const MAX_REPORTED: usize = 20;

impl CheckReport {
    fn new(name: &str) -> Self {
        CheckReport { name: name.to_string(), cases: 0, failure_count: 0, failures: Vec::new() }
    }

    fn expect(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases, {} failures)", self.name, self.cases, self.failure_count)?;
        for line in &self.failures {
            write!(f, "\n  {line}")?;
        }
        Ok(())
    }
}

pub fn run_check(name: &str) -> Result<CheckReport> {
    match name {
        "poincare" => poincare(),
        "remark-29-2" => remark_29_2(),
        "congruences" => congruences(60),
        "moser" => moser(7, 5, 400),
        "mapform" => mapform(48),
        "contfrac" => contfrac(20, 5),
        other => Err(Error::Parse(format!("unknown check {other:?}; known: {}", CHECK_NAMES.join(", ")))),
    }
}

/// `+1` surgery on `T(3,2)` is `S2(-2; 1/2, 2/3, 4/5)`.
pub fn poincare() -> Result<CheckReport> {
    let mut rep = CheckReport::new("poincare");
    let y = surgery_torus_knot(3, 2, 1, 1)?;
    let expected = SeifertInvariants::new(-2, vec![Fiber::new(1, 2), Fiber::new(2, 3), Fiber::new(4, 5)])?;
    rep.expect(y == SurgeryResult::Seifert(expected.clone()), || format!("got {y}, expected {expected}"));
    rep.expect(y.h1_order() == Some(1), || format!("|H_1| = {:?}", y.h1_order()));
    let e = expected.euler_number();
    rep.expect(e == Rational::new(-1, 30), || format!("Euler number {e}"));
    let st = staircase_torus(&TorusKnot::new(3, 2)?)?;
    let d = d_surgery_multiset(&st, 1, 1)?;
    rep.expect(d == vec![Rational::integer(-2)], || format!("d = {d:?}, expected [-2]"));
    Ok(rep)
}

/// `S^3_{29/2}(T(2,7)) = -S^3_{29/2}(T(3,5))`, and not orientation-preservingly.
pub fn remark_29_2() -> Result<CheckReport> {
    let mut rep = CheckReport::new("remark-29-2");
    let x = surgery_torus_knot(2, 7, 29, 2)?;
    let y = surgery_torus_knot(3, 5, 29, 2)?;
    let l8 = LensSpace::new(29, 8)?;
    let l18 = LensSpace::new(29, 18)?;
    rep.expect(x.as_lens().is_some_and(|l| lens_homeo(l, &l8, true)), || format!("T(2,7): {x}"));
    rep.expect(y.as_lens().is_some_and(|l| lens_homeo(l, &l18, true)), || format!("T(3,5): {y}"));
    let dual = cf_reverse_dual(29, 8)?;
    let len = cf_plus_expand(29, 8, None)?.len();
    rep.expect(len % 2 == 1 && (8 * dual) % 29 == 1, || format!("reverse dual {dual}, length {len}"));
    rep.expect(l18.reverse() == LensSpace::new(29, dual)?, || format!("-L(29,18) = {}", l18.reverse()));
    rep.expect(lens_homeo(&l8, &l18.reverse(), true), || "L(29,8) vs -L(29,18)".into());
    rep.expect(!lens_homeo(&l8, &l18, true), || "L(29,8) = L(29,18) oriented".into());
    let dx = d_surgery_multiset(&staircase_torus(&TorusKnot::new(2, 7)?)?, 29, 2)?;
    let dy = d_surgery_multiset(&staircase_torus(&TorusKnot::new(3, 5)?)?, 29, 2)?;
    let mut neg: Vec<Rational> = dy.iter().map(|d| -d.clone()).collect();
    neg.sort();
    rep.expect(dx == neg, || "d-multisets are not negatives of each other".into());
    rep.expect(dx != dy, || "d-multisets agree, orientation-preserving map not excluded".into());
    rep.expect(!torus_torus_shared(2, 7, 3, 5, 29, 2)?, || "oriented comparison succeeded".into());
    Ok(rep)
}

/// Rescaled-difference congruences, the evenness criterion against the exact
/// values, and the `|d| <= (p-1)/4` bound, for every `p <= p_max`.
pub fn congruences(p_max: i64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("congruences");
    for p in 1..=p_max {
        for q in (0..p.max(1)).filter(|&q| gcd(p, q) == 1) {
            for i in 0..p {
                for j in 0..p {
                    let got = congruence_residues(p, q, i, j)?;
                    let want = congruence_targets(p, q, i, j);
                    rep.expect(got == want, || format!("({p},{q},{i},{j}): residues {got:?} != {want:?}"));
                    let fast = d_diff_even(p, q, i, j)?;
                    let exact = d_diff_even_exact(p, q, i, j)?;
                    rep.expect(fast == exact, || format!("({p},{q},{i},{j}): parity {fast} vs exact {exact}"));
                }
            }
            rep.expect(d_bound_holds(p, q)?, || format!("({p},{q}): |d| bound"));
        }
    }
    Ok(rep)
}

/// `d(p, 1, i) = ((p - 2i)^2 - p)/(4p)`.
pub fn lens_closed_form(p_max: i64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("lens-closed-form");
    for p in 1..=p_max {
        for (i, d) in d_invariants(p, 1)?.into_iter().enumerate() {
            let i = i as i64;
            let want = Rational::new((p - 2 * i) * (p - 2 * i) - p, 4 * p);
            rep.expect(d == want, || format!("d({p},1,{i}) = {d}, closed form {want}"));
        }
    }
    Ok(rep)
}

/// Ni-Wu d-invariants of `S^3_{p/q}(T(r,s))` with `|p - qrs| = 1` against `L(p, q r^2)`.
pub fn moser(s_max: i64, q_max: i64, p_max: i64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("moser");
    for s in 3..=s_max {
        for r in (2..s).filter(|&r| gcd(r, s) == 1) {
            let st = staircase_torus(&TorusKnot::new(r, s)?)?;
            for q in 1..=q_max {
                for p in [q * r * s - 1, q * r * s + 1] {
                    if p > p_max || gcd(p, q) != 1 {
                        continue;
                    }
                    let lhs = d_surgery_multiset(&st, p, q)?;
                    let rhs = d_multiset(p, (q * r * r).rem_euclid(p))?;
                    rep.expect(lhs == rhs, || format!("T({r},{s}) at {p}/{q}"));
                    let y = surgery_torus_knot(r, s, p, q)?;
                    rep.expect(
                        y.as_lens().is_some_and(|l| lens_d_multiset(l) == rhs),
                        || format!("T({r},{s}) at {p}/{q}: Seifert reduction {y}"),
                    );
                }
            }
        }
    }
    let st = staircase_torus(&TorusKnot::new(2, 3)?)?;
    let worked: Vec<Rational> = [(-1, 2), (9, 14), (9, 14), (1, 14), (1, 14), (-3, 14), (-3, 14)]
        .into_iter()
        .map(|(n, d)| Rational::new(n, d))
        .collect();
    let mut worked_sorted = worked;
    worked_sorted.sort();
    rep.expect(d_surgery_multiset(&st, 7, 1)? == worked_sorted, || "S^3_7(T(2,3)) multiset".into());
    rep.expect(d_multiset(7, 4)? == worked_sorted, || "L(7,4) multiset".into());
    Ok(rep)
}

/// Every parity-surviving affine map commuting with conjugation is of type I, II or III.
pub fn mapform(p_max: i64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("mapform");
    for p in 1..=p_max {
        for q in (1..=p.max(1)).filter(|&q| gcd(p, q) == 1 && (q < p || p == 1)) {
            for m in enumerate_affine_maps(p, q)? {
                rep.expect(m.map_type.is_some(), || format!("({p},{q}): unclassified {m}"));
            }
        }
    }
    Ok(rep)
}

/// Odd-length expansions of `p/(q r^2)` for `p = qrs +- 1` against the pattern
/// built from `s/r`.
pub fn contfrac(s_max: i64, q_max: i64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("contfrac");
    let example = lens_cf_pattern(2, 3, 2, 13)?;
    rep.expect(example.coefficients() == [1, 1, 1, 1, 2], || format!("13/8 pattern {example}"));
    for s in 3..=s_max {
        for r in (2..s).filter(|&r| gcd(r, s) == 1) {
            for q in 2..=q_max {
                for p in [q * r * s - 1, q * r * s + 1] {
                    rep.expect(lens_cf_matches(r, s, q, p)?, || format!("({r},{s},{q},{p})"));
                }
            }
        }
    }
    Ok(rep)
}

/// Closed-form census against the exhaustive search, with every pair verified.
pub fn census(s_max: i64, q_max: i64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("census");
    let formula = cable_census(s_max, q_max)?;
    let brute = cable_census_brute_force(s_max, q_max)?;
    for rec in &formula {
        rep.expect(rec.verified, || format!("unverified {rec:?}"));
    }
    rep.expect(census_agrees(&formula, &brute), || {
        format!("formula {} records, search {} records", formula.len(), brute.len())
    });
    Ok(rep)
}

/// Sum differences of the grading match are `|t|` for every sampled input.
pub fn grading_match(q_max: i64, t_max: i64, m_max: i64, p_max: i64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("grading-match");
    for q in 2..=q_max {
        for p in (1..=p_max).filter(|&p| gcd(p, q) == 1) {
            for m in 0..=m_max {
                for t in (-t_max..=t_max).filter(|&t| t != 0) {
                    let (a, b) = grading_match_sums(m, t, p, q)?;
                    rep.expect(b - a == t.abs() && b != a, || format!("m={m} t={t} {p}/{q}: {a} vs {b}"));
                }
            }
        }
    }
    Ok(rep)
}

/// Staircase and Alexander identities for every torus knot with `rs <= rs_max`.
pub fn staircase(rs_max: i64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("staircase");
    for r in 2..=rs_max {
        for s in (r + 1..=rs_max / r).filter(|&s| gcd(r, s) == 1) {
            let k = TorusKnot::new(r, s)?;
            let st = staircase_torus(&k)?;
            let g = st.genus();
            rep.expect(g == (r - 1) * (s - 1) / 2, || format!("T({r},{s}) genus {g}"));
            rep.expect(st.v(g) == 0 && st.v(g - 1) == 1, || format!("T({r},{s}) V_g, V_(g-1)"));
            rep.expect(
                (-g - 2..=g + 2).all(|j| (0..=1).contains(&(st.v(j) - st.v(j + 1)))),
                || format!("T({r},{s}) V steps"),
            );
            let alex = st.alexander();
            rep.expect(alex.eval_at_one() == 1, || format!("T({r},{s}) Delta(1)"));
            rep.expect(alex.is_symmetric(), || format!("T({r},{s}) symmetry"));
            let torsion = torsion_coefficients(alex)?;
            rep.expect(
                (0..=g + 1).all(|j| torsion.get(j) >= 0 && torsion.get(j) >= torsion.get(j + 1)),
                || format!("T({r},{s}) t_k nonincreasing"),
            );
            rep.expect(
                (0..=g).filter(|&j| torsion.get(j) > 0).max() == Some(g - 1),
                || format!("T({r},{s}) max k with t_k > 0"),
            );
            rep.expect(
                alexander_from_torsion(&torsion.as_map())? == *alex,
                || format!("T({r},{s}) Alexander round trip"),
            );
            rep.expect(
                Rational::integer(alex.second_derivative_at_one()) == k.delta_second(),
                || format!("T({r},{s}) second derivative"),
            );
        }
    }
    Ok(rep)
}
