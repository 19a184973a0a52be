import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weilbounds.errors import (
    ArityMismatch,
    DegreeCapExceeded,
    FieldMismatch,
    IndexOutOfRange,
    PolySyntaxError,
    UnknownVariable,
    ZeroPolynomial,
)
from weilbounds.ffield import make_field
from weilbounds.mpoly import (
    MPoly,
    evaluate,
    is_homogeneous,
    jacobian_at,
    parse_poly,
    partial_derivative,
    total_degree,
)

FERMAT = "x0^3 + x1^3 + x2^3"
NODAL = "x1^2*x2 - x0^3 - x0^2*x2"


def test_parse_examples():
    f = parse_poly(FERMAT, 3, 7)
    assert len(f.terms) == 3
    g = parse_poly("5*x0 + x1", 2, 5)
    assert g.coeffs == {(0, 1): 1}
    h = parse_poly(NODAL, 3, 5)
    assert sorted(h.coeffs.values()) == [1, 4, 4]


def test_parse_merges_and_reduces():
    f = parse_poly("x0*x1 + 2*x1*x0 - 3*x0^1*x1", 2, 7)
    assert f.is_zero
    assert parse_poly("7", 1, 7).is_zero
    assert parse_poly("  -x0 ", 1, 5).coeffs == {(1,): 4}


@pytest.mark.parametrize("src,pos", [("x0 +", 4), ("x0 ** 2", 4), ("2x0", 1), ("x0 + y", 5), ("", 0)])
def test_syntax_errors_report_position(src, pos):
    with pytest.raises(PolySyntaxError) as exc:
        parse_poly(src, 2, 5)
    assert exc.value.position == pos


def test_parse_errors():
    with pytest.raises(UnknownVariable):
        parse_poly("x3", 3, 5)
    with pytest.raises(DegreeCapExceeded):
        parse_poly("x0^65", 1, 5)
    with pytest.raises(DegreeCapExceeded):
        parse_poly("x0^3*x0^3", 1, 5, degree_cap=5)


def test_degree_and_homogeneity():
    f = parse_poly(FERMAT, 3, 7)
    assert total_degree(f) == 3 and is_homogeneous(f)
    g = parse_poly("x0^2 + x1", 2, 7)
    assert total_degree(g) == 2 and not is_homogeneous(g)
    one = MPoly.constant(2, 7, 1)
    assert total_degree(one) == 0 and is_homogeneous(one)
    with pytest.raises(ZeroPolynomial):
        total_degree(MPoly.constant(2, 7, 0))


def test_partial_derivatives():
    assert partial_derivative(parse_poly("x0^3", 1, 5), 0).coeffs == {(2,): 3}
    assert partial_derivative(parse_poly("x0^3", 1, 3), 0).is_zero
    assert str(partial_derivative(parse_poly("x1^2*x2", 3, 5), 2)) == "x1^2"
    with pytest.raises(IndexOutOfRange):
        partial_derivative(parse_poly("x0", 2, 5), 2)


def test_evaluate_examples():
    f7 = make_field(7)
    fermat = parse_poly(FERMAT, 3, 7)
    assert evaluate(fermat, (f7(1), f7(-1), f7(0))) == f7.zero
    f4 = make_field(2, 2)
    t = f4((0, 1))
    assert evaluate(parse_poly("x0*x1", 2, 2), (t, t + 1)) == f4.one
    f5 = make_field(5)
    nodal = parse_poly(NODAL, 3, 5)
    assert evaluate(nodal, (f5(0), f5(0), f5(1))) == f5.zero


def test_evaluate_errors():
    f5 = make_field(5)
    with pytest.raises(ArityMismatch):
        evaluate(parse_poly("x0", 2, 5), (f5(1),))
    with pytest.raises(FieldMismatch):
        evaluate(parse_poly("x0", 1, 7), (f5(1),))


def test_evaluate_over_extension_field():
    f25 = make_field(5, 2)
    f = parse_poly("x0^2 - 2", 1, 5)
    # 2 is a non-square mod 5, so it has exactly two square roots in F_25
    roots = [a for a in map(f25.from_index, range(25)) if not evaluate(f, (a,))]
    assert len(roots) == 2


def test_jacobian_examples():
    f5, f7 = make_field(5), make_field(7)
    _, rank = jacobian_at([parse_poly(NODAL, 3, 5)], (f5(0), f5(0), f5(1)))
    assert rank == 0
    matrix, rank = jacobian_at([parse_poly(FERMAT, 3, 7)], (f7(1), f7(-1), f7(0)))
    assert [x.index for x in matrix[0]] == [3, 3, 0] and rank == 1
    lines = [parse_poly("x0", 3, 7), parse_poly("x1", 3, 7)]
    assert jacobian_at(lines, (f7(2), f7(5), f7(1)))[1] == 2
    dependent = [parse_poly("x0 + x1", 2, 7), parse_poly("2*x0 + 2*x1", 2, 7)]
    assert jacobian_at(dependent, (f7(1), f7(1)))[1] == 1


def test_canonical_string():
    f = parse_poly("x1^2*x2 - x0^3 - x0*x2^2 - x2^3", 3, 5)
    assert str(f) == "4*x0^3 + 4*x0*x2^2 + x1^2*x2 + 4*x2^3"
    assert str(MPoly.constant(2, 5, 1)) == "1"
    assert str(MPoly.constant(2, 5, 0)) == "0"


# -- properties ---------------------------------------------------------------

P = 7
NV = 3


def _monomials(deg, nvars):
    if nvars == 1:
        yield (deg,)
        return
    for e in range(deg + 1):
        for rest in _monomials(deg - e, nvars - 1):
            yield (e,) + rest


polys = st.dictionaries(
    st.tuples(*[st.integers(0, 4)] * NV), st.integers(-20, 20), max_size=6
).map(lambda d: MPoly.from_dict(NV, P, d))


@st.composite
def homogeneous(draw):
    deg = draw(st.integers(1, 5))
    monos = list(_monomials(deg, NV))
    chosen = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=5))
    coeffs = {m: draw(st.integers(1, P - 1)) for m in chosen}
    return MPoly.from_dict(NV, P, coeffs), deg


points = st.tuples(*[st.integers(0, 48)] * NV)


@settings(max_examples=150, deadline=None)
@given(polys, polys, points)
def test_evaluation_is_a_ring_homomorphism(f, g, pt):
    fld = make_field(P, 2)
    x = tuple(fld.from_index(i) for i in pt)
    assert evaluate(f + g, x) == evaluate(f, x) + evaluate(g, x)
    assert evaluate(f * g, x) == evaluate(f, x) * evaluate(g, x)
    assert evaluate(f - g, x) == evaluate(f, x) - evaluate(g, x)


@settings(max_examples=150, deadline=None)
@given(homogeneous())
def test_euler_relation(fd):
    f, d = fd
    lhs = MPoly.constant(NV, P, 0)
    for i in range(NV):
        lhs = lhs + MPoly.variable(NV, P, i) * partial_derivative(f, i)
    assert lhs == f * d


@settings(max_examples=150, deadline=None)
@given(polys)
def test_print_parse_round_trip(f):
    assert parse_poly(str(f), NV, P).coeffs == f.coeffs
