"""Smoke test for the torusslopes extension module.

Build and install first:
    maturin build --release -m crates/python/Cargo.toml -o dist && pip install dist/torusslopes-*.whl
"""

from fractions import Fraction

import torusslopes as ts


def check_lens():
    assert ts.d_invariant(7, 1, 0) == Fraction(3, 2)
    assert ts.d_invariant(1, 0, 0) == 0
    ms = ts.d_multiset(7, 4)
    assert ms == sorted(ms) and len(ms) == 7
    l74 = ts.LensSpace(7, 4)
    assert l74.homeomorphic(ts.LensSpace(7, 2))
    assert str(l74) == "L(7,4)"


def check_knots():
    t = ts.TorusKnot(3, 5)
    assert t.genus() == 4 and t.delta_second() == 16
    cable = ts.parse_knot("C(2,33;T(3,5))")
    assert isinstance(cable, ts.CableKnot)
    assert cable.companion == t and cable.delta_second() == 4 * 16 + 272
    st = ts.staircase("T(3,4)")
    assert st.genus == 3 and [st.v(k) for k in range(5)] == [1, 1, 1, 0, 0]


def check_surgery():
    poincare = ts.surgery("T(3,2)", 1, 1)
    assert str(poincare) == "S2(-2; 1/2, 2/3, 4/5)" and poincare.h1_order() == 1
    assert str(ts.surgery("T(2,3)", 6, 1)) == "L(2,1) # L(3,2)"
    x = ts.surgery(ts.TorusKnot(5, 13), 133, 2)
    y = ts.surgery("C(2,33;T(3,5))", 133, 2)
    assert x.kind == "seifert" and x.homeomorphic(y)
    common = ts.SeifertInvariants(0, [(-3, 5), (8, 13), (2, 3)])
    assert x.as_seifert().equal_oriented(common)
    assert ts.casson_walker_obstruction("T(5,13)", "C(2,33;T(3,5))", 133, 2) == 0
    assert ts.d_surgery("T(2,3)", 1, 1) == [Fraction(-2)]


def check_census():
    records = ts.cable_census(60, 5)
    hit = [r for r in records if (r.r, r.s, r.p, r.q) == (5, 13, 133, 2)]
    assert len(hit) == 1 and hit[0].verified and str(hit[0].cable()) == "C(2,33;T(5,3))"
    assert ts.cable_census(10, 5) == []
    p, q, cable = ts.cable_slope(4, 11)
    assert (p, q, str(cable)) == (85, 2, "C(2,21;T(4,3))")


def check_classification():
    assert ts.classify_slope(2, 3, 110, 3)["summary"] == "condition (ii): characterizing among q>=2 candidates"
    c = ts.classify_slope(5, 13, 133, 2)
    assert not c["covered"] and c["known_cable"] is not None
    assert ts.thresholds(3, 3)["hfk_recovery"] == 78
    maps = ts.enumerate_affine_maps(29, 2)
    assert len(maps) == 2 and all(m["trivial"] for m in maps)
    passed, report = ts.run_check("poincare")
    assert passed, report


def check_errors():
    for bad in (lambda: ts.d_invariant(4, 2, 0), lambda: ts.parse_knot("K(2,3)"), lambda: ts.run_check("nope")):
        try:
            bad()
        except ValueError:
            continue
        raise AssertionError("expected ValueError")
    try:
        ts.staircase("T(2,-3)")
    except NotImplementedError:
        pass
    else:
        raise AssertionError("mirror knots have no staircase")


if __name__ == "__main__":
    for check in (check_lens, check_knots, check_surgery, check_census, check_classification, check_errors):
        check()
        print(f"ok {check.__name__}")
    print("python smoke test passed")
