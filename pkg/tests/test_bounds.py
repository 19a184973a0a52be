import math
from decimal import Decimal, getcontext

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weilbounds import bounds as B
from weilbounds.counter import AFFINE, PROJECTIVE, Flags, VarietySpec, count_points, count_table
from weilbounds.errors import NotApplicable
from weilbounds.ffield import make_field
from weilbounds.invariants import pi
from weilbounds.mpoly import parse_poly

SMOOTH = Flags(irreducible=True, nonsingular=True, normal=True, isolated_singularities=True,
               complete_intersection=True)
ISOLATED = Flags(irreducible=True, normal=True, isolated_singularities=True,
                 complete_intersection=True)
ELLIPTIC = "x1^2*x2 - x0^3 - x0*x2^2 - x2^3"
NODAL = "x1^2*x2 - x0^3 - x0^2*x2"

getcontext().prec = 60


def _variety(p, N, forms, flags=SMOOTH, sing_dim=-1, ambient=PROJECTIVE, dim=None):
    nvars = N + 1 if ambient == PROJECTIVE else N
    dim = N - len(forms) if dim is None else dim
    return VarietySpec(make_field(p), ambient, N, [parse_poly(f, nvars, p) for f in forms],
                       dim, sing_dim, flags)


def _inputs(q, N, n, md, s=-1, flags=SMOOTH):
    return B.BoundInputs(q, N, n, tuple(md), s, flags)


# -- constants ------------------------------------------------------------------

def test_constant_examples():
    assert B.katz_sigma_bound(1, 3, 2) == 3456
    assert B.katz_sigma_bound(1, 1, 1) == 256
    assert B.katz_sigma_bound(2, 2, 3) == 76832
    assert B.tau_bound(1, 3, 2) == 3888
    assert B.tau_bound(1, 2, 3) == 11250
    assert B.tau_bound(3, 1, 2) == 15552
    assert B.affine_constant(1, 3, 2) == 2592
    assert B.affine_constant(1, 1, 2) == 768
    assert B.affine_constant(2, 2, 2) == 8232


def test_katz_eight_toggle():
    assert B.tau_bound(1, 3, 2, katz_eight=True) == 3456 + 2
    assert B.tau_bound(1, 3, 2, katz_eight=True) < B.tau_bound(1, 3, 2)


@given(st.integers(1, 6), st.integers(1, 8), st.integers(1, 8))
def test_constant_ordering(m, delta, N):
    assert B.affine_constant(m, delta, N) < B.katz_sigma_bound(m, delta, N) < B.tau_bound(m, delta, N)


# -- bracketing -------------------------------------------------------------------

@given(st.integers(-50, 50), st.integers(0, 9), st.integers(2, 400))
def test_bracket_term_against_decimal(coeff, h, q):
    lo, hi = B.bracket_term(coeff, h, q)
    value = Decimal(coeff) * Decimal(q ** h).sqrt()
    assert lo <= value <= hi
    assert hi - lo <= 1
    if h % 2 == 0 or math.isqrt(q**h) ** 2 == q**h:
        assert lo == hi


def test_bracket_examples():
    assert B.bracket_term(2, 1, 5) == (4, 5)
    assert B.bracket_term(2, 3, 5) == (22, 23)
    assert B.bracket_term(-2, 1, 5) == (-5, -4)
    assert B.bracket_term(3, 2, 5) == (15, 15)
    assert B.bracket_term(1, 1, 9) == (3, 3)


def test_verdicts():
    w = B.Window("w", B.CENTERED, 5, 4, 5, 6)
    assert w.verdict(10) == B.PASS
    assert w.verdict(11) == B.PASS_MARGINAL
    assert w.verdict(12) == B.FAIL
    assert w.verdict(1) == B.PASS_MARGINAL
    up = B.Window("u", B.UPPER, 5, 16, 16)
    assert up.verdict(16) == B.PASS and up.verdict(17) == B.FAIL
    low = B.Window("l", B.LOWER, 5, 3, 4)
    assert low.verdict(4) == B.PASS and low.verdict(3) == B.PASS_MARGINAL and low.verdict(2) == B.FAIL


# -- windows ----------------------------------------------------------------------

def test_main_theorem_plane_cubic():
    w = B.main_theorem_window(_inputs(5, 2, 1, (3,)))
    assert (w.center, w.lo, w.hi) == (6, 4, 5)


def test_main_theorem_cone_over_cubic():
    w = B.main_theorem_window(_inputs(5, 3, 2, (3,), s=0, flags=ISOLATED))
    assert w.center == 31
    tau = B.tau_bound(1, 3, 3)
    assert tau == 23328
    # leading term 2 q^(3/2) has floor 22; the surrogate term adds tau q
    assert w.lo == 22 + tau * 5 and w.hi == 23 + tau * 5
    assert B.SURROGATE_C in w.tags


def test_main_theorem_top_singular_dimension_drops_leading_term():
    # s = n - 1: only C q^((2n-1)/2)
    w = B.main_theorem_window(_inputs(5, 3, 2, (3,), s=1, flags=ISOLATED))
    lo, hi = B.bracket_term(B.tau_bound(1, 3, 3), 3, 5)
    assert (w.lo, w.hi) == (lo, hi)


def test_main_theorem_applicability():
    with pytest.raises(NotApplicable):
        B.main_theorem_window(_inputs(5, 2, 1, (3,), flags=Flags(irreducible=True)))
    with pytest.raises(NotApplicable):
        B.main_theorem_window(_inputs(5, 2, 1, (3,), flags=ISOLATED))  # s = -1 without nonsingular
    with pytest.raises(NotApplicable):
        B.main_theorem_window(_inputs(5, 2, 1, (3,), s=0, flags=ISOLATED), s=-1)


@given(st.integers(2, 6), st.lists(st.integers(1, 4), min_size=1, max_size=3), st.integers(2, 50))
def test_deligne_is_main_theorem_at_minus_one(N, md, q):
    if len(md) > N - 1:
        return
    inp = _inputs(q, N, N - len(md), md)
    a, b = B.main_theorem_window(inp), B.deligne_window(inp)
    assert (a.center, a.lo, a.hi) == (b.center, b.lo, b.hi)


def test_normal_ci_is_main_theorem_at_n_minus_two():
    inp = _inputs(7, 4, 3, (2,), s=0, flags=ISOLATED)
    a = B.normal_ci_window(inp)
    b = B.main_theorem_window(inp, 1)
    assert (a.center, a.lo, a.hi) == (b.center, b.lo, b.hi)


def test_regular_codim2_uses_general_theorem():
    inp = _inputs(5, 4, 3, (2,), s=0, flags=ISOLATED)
    w = B.regular_codim2_window(inp)
    ref = B.main_theorem_window(inp, 0)
    assert (w.lo, w.hi) == (ref.lo, ref.hi) and B.CASE_R2_NOTE in w.tags


def test_curve_and_hypersurface_windows():
    assert B.curve_weil_window(_inputs(5, 2, 1, (3,))).lo == 4
    nodal = _inputs(5, 2, 1, (3,), s=0, flags=ISOLATED)
    w = B.hypersurface_isolated_window(nodal)
    assert (w.lo, w.hi) == (20, 20) and B.R_NP_CAVEAT in w.tags
    iso = B.isolated_sing_window(nodal)
    # b'_0(1, 3) q + (b_1 + 0) q^(1/2) = 2*5 + 2*sqrt(5)
    assert (iso.lo, iso.hi) == (14, 15)


def test_lang_weil():
    w = B.lang_weil_window(5, 1, 3, 1, 3, 2)
    assert w.hi == 5 + 3888 and w.lo == 4 + 3888
    for d in (1, 2):
        w = B.lang_weil_window(7, 2, d, 1, d, 3)
        assert w.lo == w.hi == B.tau_bound(1, d, 3) * 7
    w = B.lang_weil_window(5, 2, 3, 1, 3, 3)
    assert w.lo == 22 + 23328 * 5


def test_affine_lang_weil():
    line = _variety(7, 2, ["x0 + 2*x1 + 3"], ambient=AFFINE, dim=1)
    w = B.affine_lang_weil_window(7, 1, 1, 1, 1, 2)
    assert w.center == 7 and w.lo == w.hi == B.affine_constant(1, 1, 2)
    assert w.verdict(count_points(line)) == B.PASS
    assert B.affine_lang_weil_window(5, 1, 2, 1, 2, 2).formula == f"{B.affine_constant(1, 2, 2)}"
    nodal = _variety(5, 2, ["x1^2 - x0^3 - x0^2"], flags=ISOLATED, sing_dim=0, ambient=AFFINE,
                     dim=1)
    brute = sum(1 for x in range(5) for y in range(5) if (y * y - x**3 - x * x) % 5 == 0)
    assert count_points(nodal) == brute
    assert B.affine_lang_weil_window(5, 1, 3, 1, 3, 2).verdict(brute) == B.PASS


def _schmidt_decimal(q, N, d):
    sq = Decimal(q).sqrt()
    return (Decimal(q) ** (N - 1) - (d - 1) * (d - 2) * Decimal(q) ** (N - 2) * sq
            - 12 * (d + 3) ** (N + 1) * Decimal(q) ** (N - 2))


def test_schmidt():
    for q in (5, 7, 49):
        for N in (2, 3, 4):
            assert B.schmidt_lower_bound(q, N, 1) == q ** (N - 1) - 12 * 4 ** (N + 1) * q ** (N - 2)
    # exact floor of 5 - 2 sqrt(5) - 2592 = -2591.47...
    assert B.schmidt_lower_bound(5, 2, 3) == -2592
    assert "vacuous (negative)" in B.schmidt_window(5, 2, 3).tags


@pytest.mark.parametrize("N,d", [(2, 3), (2, 4), (3, 3), (3, 5)])
def test_schmidt_floor_is_exact(N, d):
    for q in list(range(2, 200)) + list(range(2600, 2800)):
        assert B.schmidt_lower_bound(q, N, d) == math.floor(_schmidt_decimal(q, N, d))


def test_schmidt_threshold_search():
    # real-valued oracle: q - 2 sqrt(q) - 2592 > 0 iff sqrt(q) > 1 + sqrt(2593)
    root = 1 + Decimal(2593).sqrt()
    q0 = int(root * root) + 1
    assert q0 == 2696
    assert next(q for q in range(2, 10**4) if _schmidt_decimal(q, 2, 3) > 0) == q0
    # at q0 the bound lies in (0, 1), so its floor is 0 and the bracket straddles it
    assert B.schmidt_lower_bound(q0 - 1, 2, 3) < 0 == B.schmidt_lower_bound(q0, 2, 3)
    assert B.schmidt_window(q0, 2, 3).hi == 1
    assert all(B.schmidt_lower_bound(q, 2, 3) > 0 for q in range(q0 + 1, q0 + 500))


def test_upper_bounds():
    assert B.serre_upper(5, 1, 3) == 16
    assert B.algset_upper(5, 2, 3) == 93
    assert B.lachaud_upper(5, 3, 2, 2) == 56
    with pytest.raises(NotApplicable):
        B.serre_upper(3, 1, 5)
    with pytest.raises(NotApplicable):
        B.lachaud_upper(5, 4, 1, 2)


def test_small_codim_applicability():
    w = B.small_codim_window(5, 4, 3, -1, 1, 2)
    assert w.center == pi(3, 5) and B.SURROGATE_C in w.tags
    assert (w.lo, w.hi) == B.bracket_term(B.tau_bound(1, 2, 4), 3, 5)
    for s in (-1, 0):
        with pytest.raises(NotApplicable):
            B.small_codim_window(5, 3, 1, s, 2, 2)


# -- evaluate_all ---------------------------------------------------------------------

def _by_name(report, r=1):
    return {rec.name: rec for rec in report.records if rec.r == r}


def test_evaluate_all_plane_cubic():
    v = _variety(5, 2, [ELLIPTIC])
    report = B.evaluate_all(v, count_table(v, 2))
    recs = _by_name(report)
    assert recs["curve_weil"].verdict == B.PASS and recs["curve_weil"].actual == 9
    assert recs["serre"].verdict == B.PASS and recs["serre"].lo == 16
    assert recs["algset"].verdict == B.PASS and recs["algset"].lo == 18
    assert not recs["regular_codim2"].applicable and recs["regular_codim2"].reason
    assert _by_name(report, 2)["deligne"].q == 25
    assert report.failures() == []


def test_evaluate_all_whole_plane():
    v = VarietySpec(make_field(5), PROJECTIVE, 2, [], 2, -1, SMOOTH)
    report = B.evaluate_all(v, count_table(v, 1))
    centered = [rec for rec in report.records if rec.applicable and rec.kind == B.CENTERED]
    for name in ("main_theorem", "deligne", "isolated_sing"):
        rec = _by_name(report)[name]
        assert rec.actual == rec.center == 31 and rec.lo == 0
    assert all(rec.verdict == B.PASS for rec in centered)


def test_evaluate_all_reducible_conic_is_flagged():
    v = _variety(5, 2, ["x0*x1"])
    report = B.evaluate_all(v, count_table(v, 1))
    recs = _by_name(report)
    assert recs["main_theorem"].actual == 11 and recs["main_theorem"].center == 6
    assert recs["curve_weil"].verdict == B.FAIL
    assert any("suspect" in w for w in report.warnings)


def test_conjectural_bound_failure_is_not_fatal():
    v = _variety(5, 2, [ELLIPTIC])
    report = B.evaluate_all(v, count_table(v, 1))
    rec = next(r for r in report.records if r.name == "lachaud")
    assert rec.is_conjecture
    rec.verdict = B.FAIL
    assert report.failures() == [] and report.failures(include_conjectures=True) == [rec]


def test_katz_eight_changes_surrogate_windows():
    v = _variety(5, 2, [ELLIPTIC])
    counts = count_table(v, 1)
    plain = _by_name(B.evaluate_all(v, counts))["lang_weil"]
    eight = _by_name(B.evaluate_all(v, counts, katz_eight=True))["lang_weil"]
    assert plain.lo - eight.lo == B.tau_bound(1, 3, 2) - B.tau_bound(1, 3, 2, katz_eight=True)
