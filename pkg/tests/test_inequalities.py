import numpy as np
import pytest
from hypothesis import given, strategies as st

from opradius import inequalities as iq
from opradius.harness import draw_inputs
from opradius.inequalities import CATALOG, CHECK_IDS, judge
from opradius.matcore import DimensionError, Rng, random_ginibre
from opradius.radius import Bracket, numerical_radius

seeds = st.integers(0, 2**31)
FAST_CHECKS = [c for c in CHECK_IDS if not CATALOG[c].needs_level]


def ginibre(seed, size):
    return np.asarray(random_ginibre(size, Rng(seed)))


def zero_inputs(check_id, n=1, d=2):
    gen = Rng(0).generator()
    inputs = draw_inputs(check_id, n, d, gen, budget=5)
    for name, kind in CATALOG[check_id].params:
        if kind == iq.OP:
            inputs[name] = np.zeros((n * d, n * d), dtype=complex)
    return inputs


# -- verdict rule ----------------------------------------------------------------


def test_judge_le():
    assert judge(Bracket(0, 1), Bracket(2, 3), "le") == (3, "consistent")
    assert judge(Bracket(2, 2), Bracket(2, 2), "le")[1] == "equality_witness"
    assert judge(Bracket(1, 1), Bracket(0.5, 0.5), "le")[1] == "violated"
    # a gap inside tolerance plus widths is not a violation
    assert judge(Bracket(1 + 5e-8, 1 + 5e-8), Bracket(1, 1), "le")[1] == "equality_witness"
    assert judge(Bracket(1.1, 1.2), Bracket(0.9, 1.0), "le")[1] == "consistent"


def test_judge_eq():
    margin, verdict = judge(Bracket(1, 1), Bracket(2, 2), "eq")
    assert verdict == "violated" and margin == -1
    assert judge(Bracket(2, 2), Bracket(1, 1), "eq")[1] == "violated"
    assert judge(Bracket(1, 1.1), Bracket(1.05, 1.2), "eq")[1] == "equality_witness"


def test_judge_consistency_mode():
    # consistency mode ignores widths and never claims tightness
    assert judge(Bracket(1, 1), Bracket(1, 1), "le", mode="consistency")[1] == "consistent"
    assert judge(Bracket(1.1, 2), Bracket(0, 1), "le", mode="consistency")[1] == "violated"
    with pytest.raises(ValueError):
        judge(Bracket(0, 0), Bracket(0, 0), "ge")


# -- catalog-wide ------------------------------------------------------------------


def test_catalog_ids():
    assert CHECK_IDS == tuple(f"C{i}" for i in range(1, 21))
    with pytest.raises(KeyError):
        iq.get_check("C99")


@pytest.mark.parametrize("check_id", CHECK_IDS)
def test_zero_inputs(check_id):
    spec = CATALOG[check_id]
    results = spec.run(zero_inputs(check_id), n=1, rng=Rng(0).generator())
    assert len(results) == spec.claims
    for r in results:
        assert r.margin >= 0 and r.verdict != "violated"
        if r.relation == "eq":
            assert r.lhs.lo == r.lhs.hi == r.rhs.lo == r.rhs.hi == 0


@pytest.mark.parametrize("check_id", CHECK_IDS)
@pytest.mark.parametrize("n,d", [(1, 2), (2, 1)])
def test_random_inputs_never_violate(check_id, n, d):
    spec = CATALOG[check_id]
    for trial in range(4):
        gen = Rng(99, trial).generator()
        inputs = draw_inputs(check_id, n, d, gen, budget=10)
        results = spec.run(inputs, n=n, rng=gen)
        assert len(results) == spec.claims
        assert all(r.verdict != "violated" for r in results), results
        assert len({r.input_digest for r in results}) == 1


@given(seeds, st.sampled_from(["C1", "C3", "C4", "C9", "C10", "C11", "C12", "C16"]))
def test_property_no_violation(seed, check_id):
    x, y = ginibre(seed, 2), ginibre(seed + 1, 2)
    inputs = {"x": x, "y": y}
    assert all(r.verdict != "violated" for r in CATALOG[check_id].run(inputs))


@given(seeds, st.floats(0.1, 10))
def test_scaling_monotonicity(seed, lam):
    x, y = ginibre(seed, 2), ginibre(seed + 7, 2)
    base = iq.check_C9(x, y)
    scaled = iq.check_C9(lam * x, lam * y)
    tol = 1e-8 * (1 + lam)
    for r0, r1 in zip(base, scaled):
        for b0, b1 in ((r0.lhs, r1.lhs), (r0.rhs, r1.rhs)):
            assert abs(b1.lo - lam * b0.lo) <= tol + lam * b0.width
            assert abs(b1.hi - lam * b0.hi) <= tol + lam * b0.width


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        iq.check_C3(np.eye(2), np.eye(3))
    with pytest.raises(DimensionError):
        iq.check_C5(np.eye(3), np.eye(3), *([np.eye(2)] * 4))
    with pytest.raises(DimensionError):
        iq.check_C13(np.eye(3), np.eye(3), 5, n=2)
    with pytest.raises(ValueError):
        iq.check_C7(np.eye(2), np.eye(2), np.eye(1), np.eye(1), sign=0)


def test_result_round_trip():
    r = iq.check_C1(ginibre(1, 3))[0]
    assert iq.CheckResult.from_dict(r.to_dict()) == r


# -- specific witnesses --------------------------------------------------------------


def test_sandwich_nilpotent():
    lower, upper = iq.check_C1(np.array([[0, 1], [0, 0]]))
    assert lower.rhs.contains(0.5)
    assert abs(lower.margin) < 1e-12 and lower.verdict == "equality_witness"
    assert upper.margin == pytest.approx(0.5, abs=1e-12)


@given(seeds, st.integers(1, 3))
def test_C9_diagonal_witness(seed, d):
    x = ginibre(seed, d)
    lower, upper = iq.check_C9(x, x)
    assert lower.verdict == upper.verdict == "equality_witness"
    assert upper.lhs.contains(numerical_radius(x).mid, tol=1e-8)


def test_C3_lower_tight_for_nilpotent_and_zero():
    lower, _ = iq.check_C3(np.array([[0, 1], [0, 0]]), np.zeros((2, 2)))
    assert lower.verdict == "equality_witness"


@given(seeds)
def test_C8_block_identity(seed):
    x, y = ginibre(seed, 3), ginibre(seed + 1, 3)
    results = iq.check_C8(x, y, 1.234)
    assert len(results) == 5
    c = results[2]
    assert c.lhs.gap(c.rhs) <= 1e-7 and c.verdict == "equality_witness"


@given(seeds)
def test_C16_diagonal_reduces_to_C17(seed):
    x = ginibre(seed, 2)
    lower, upper = iq.check_C16(x, x)
    (ident,) = iq.check_C17(x)
    assert lower.rhs == ident.lhs
    assert ident.lhs.gap(ident.rhs) <= 1e-7


def test_C2_unitary_level():
    x = ginibre(3, 4)
    u = np.array([[0, 1], [1, 0]], dtype=complex)
    (r,) = iq.check_C2(x, u)
    assert r.verdict == "equality_witness"


def test_C15_pinching_parts():
    x, y, z, w = (ginibre(s, 2) for s in range(4))
    diag, off = iq.check_C15(x, y, z, w)
    from opradius.matcore import block
    assert diag.lhs == numerical_radius(block(x, 0, 0, w))
    assert off.lhs == numerical_radius(block(0, y, z, 0))


def test_C19_rotation_identity():
    x, y, z, w = (ginibre(s, 2) for s in range(4))
    ident, bound = iq.check_C19(x, y, z, w)
    assert ident.relation == "eq" and ident.verdict == "equality_witness"
    assert bound.verdict != "violated"


def test_wmax_checks_use_consistency_mode():
    x1, x2 = ginibre(1, 2), ginibre(2, 2)
    for check in (iq.check_C13, iq.check_C14):
        results = check(x1, x2, 20, n=2, rng=Rng(0))
        assert [r.mode for r in results] == ["consistency"] * 2
        assert all(r.verdict == "consistent" for r in results)


def test_wmax_checks_at_level_one_are_tight_where_exact():
    # at n = 1 every W_max equals the norm, so C14's upper bound is a norm inequality
    x1, x2 = ginibre(5, 2), ginibre(6, 2)
    lower, upper = iq.check_C14(x1, x2, 5, n=1)
    assert upper.rhs.width <= 1e-9
    assert upper.rhs.contains(np.linalg.norm(x1, 2) + np.linalg.norm(x2, 2), tol=1e-9)
