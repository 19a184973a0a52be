"""Sparse multivariate polynomials with prime-field integer coefficients.

Coefficients are integers in ``[1, p)``; since those live in the prime
subfield, a polynomial can be evaluated at points of any F_{p^m} without an
embedding map.

Input grammar (no parentheses, no implicit multiplication)::

    expr   := term (('+'|'-') term)*      unary minus allowed on the first term
    term   := factor ('*' factor)*
    factor := INT | VAR ('^' INT)?
    VAR    := 'x' INT
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    DegreeCapExceeded,
    FieldMismatch,
    IndexOutOfRange,
    PolySyntaxError,
    UnknownVariable,
    ZeroPolynomial,
)
from .ffield import FieldElement, FieldSpec

DEFAULT_DEGREE_CAP = 64


def _grlex_key(exps):
    return (sum(exps), exps)


@dataclass(frozen=True)
class MPoly:
    nvars: int
    p: int
    terms: tuple  # ((exponents, coeff), ...) in descending graded-lex order

    @classmethod
    def from_dict(cls, nvars: int, p: int, coeffs: dict) -> "MPoly":
        items = []
        for exps, c in coeffs.items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ArityMismatch(f"monomial {exps} has wrong arity for {nvars} variables")
            c %= p
            if c:
                items.append((exps, c))
        items.sort(key=lambda t: _grlex_key(t[0]), reverse=True)
        return cls(nvars, p, tuple(items))

    @classmethod
    def constant(cls, nvars: int, p: int, c: int) -> "MPoly":
        return cls.from_dict(nvars, p, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, p: int, i: int) -> "MPoly":
        exps = [0] * nvars
        exps[i] = 1
        return cls.from_dict(nvars, p, {tuple(exps): 1})

    @property
    def coeffs(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.nvars != other.nvars or self.p != other.p:
            raise FieldMismatch("polynomials over different rings")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        acc = self.coeffs
        for exps, c in other.terms:
            acc[exps] = acc.get(exps, 0) + c
        return MPoly.from_dict(self.nvars, self.p, acc)

    def __neg__(self) -> "MPoly":
        return MPoly.from_dict(self.nvars, self.p, {e: -c for e, c in self.terms})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return MPoly.from_dict(self.nvars, self.p, {e: c * other for e, c in self.terms})
        self._check(other)
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return MPoly.from_dict(self.nvars, self.p, acc)

    __rmul__ = __mul__

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.terms:
            factors = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e]
            if c != 1 or not factors:
                factors.insert(0, str(c))
            parts.append("*".join(factors))
        return " + ".join(parts)


# -- parsing ----------------------------------------------------------------

def _tokenize(src: str):
    toks = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(("INT", int(src[i:j]), i))
            i = j
        elif ch in "+-*^x":
            toks.append((ch, ch, i))
            i += 1
        else:
            raise PolySyntaxError(f"unexpected character {ch!r}", i)
    toks.append(("END", None, n))
    return toks


def parse_poly(src: str, nvars: int, p: int, *, degree_cap: int = DEFAULT_DEGREE_CAP) -> MPoly:
    toks = _tokenize(src)
    pos = 0

    def peek():
        return toks[pos]

    def take(kind):
        nonlocal pos
        tok = toks[pos]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "END" else repr(tok[1])
            raise PolySyntaxError(f"expected {kind}, found {what}", tok[2])
        pos += 1
        return tok

    def factor(exps):
        kind, val, at = peek()
        if kind == "INT":
            take("INT")
            return val
        if kind == "x":
            take("x")
            _, idx, idx_at = take("INT")
            if idx >= nvars:
                raise UnknownVariable(f"x{idx} at position {at} (only x0..x{nvars - 1})")
            e = 1
            if peek()[0] == "^":
                take("^")
                e = take("INT")[1]
            exps[idx] += e
            if exps[idx] > degree_cap:
                raise DegreeCapExceeded(f"exponent of x{idx} exceeds {degree_cap}")
            return 1
        what = "end of input" if kind == "END" else repr(val)
        raise PolySyntaxError(f"expected a factor, found {what}", at)

    def term():
        exps = [0] * nvars
        c = factor(exps)
        while peek()[0] == "*":
            take("*")
            c *= factor(exps)
        return tuple(exps), c

    acc: dict = {}
    sign = 1
    if peek()[0] == "-":
        take("-")
        sign = -1
    while True:
        exps, c = term()
        acc[exps] = acc.get(exps, 0) + sign * c
        kind = peek()[0]
        if kind == "END":
            break
        if kind not in "+-":
            raise PolySyntaxError(f"unexpected {peek()[1]!r}", peek()[2])
        take(kind)
        sign = 1 if kind == "+" else -1
    return MPoly.from_dict(nvars, p, acc)


# -- structure --------------------------------------------------------------

def total_degree(f: MPoly) -> int:
    if not f.terms:
        raise ZeroPolynomial("total degree of the zero polynomial")
    return max(sum(e) for e, _ in f.terms)


def is_homogeneous(f: MPoly) -> bool:
    return len({sum(e) for e, _ in f.terms}) <= 1


def partial_derivative(f: MPoly, i: int) -> MPoly:
    if not 0 <= i < f.nvars:
        raise IndexOutOfRange(f"variable index {i} outside 0..{f.nvars - 1}")
    acc = {}
    for exps, c in f.terms:
        if exps[i]:
            e = list(exps)
            e[i] -= 1
            acc[tuple(e)] = c * exps[i]
    return MPoly.from_dict(f.nvars, f.p, acc)


# -- evaluation -------------------------------------------------------------

def eval_index(fld: FieldSpec, terms, point) -> int:
    """Value (as an index) of a term list at a point given by indices."""
    total = 0
    mul, add, pw = fld.mul_idx, fld.add_idx, fld.pow_idx
    for exps, c in terms:
        v = c
        for x, e in zip(point, exps):
            if e:
                v = mul(v, pw(x, e))
                if not v:
                    break
        if v:
            total = add(total, v)
    return total


def _point_field(point) -> FieldSpec:
    fields = {x.field for x in point}
    if len(fields) > 1:
        raise FieldMismatch("point coordinates live in different fields")
    return fields.pop()


def evaluate(f: MPoly, point) -> FieldElement:
    if len(point) != f.nvars:
        raise ArityMismatch(f"point has {len(point)} coordinates, expected {f.nvars}")
    fld = _point_field(point)
    if fld.p != f.p:
        raise FieldMismatch(f"characteristic {fld.p} differs from {f.p}")
    return fld.from_index(eval_index(fld, f.terms, [x.index for x in point]))


def rank_index(fld: FieldSpec, rows) -> int:
    """Rank of a matrix of field indices by Gaussian elimination."""
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = fld.inv_idx(m[rank][col])
        prow = [fld.mul_idx(inv, v) for v in m[rank]]
        m[rank] = prow
        for i in range(len(m)):
            if i != rank and m[i][col]:
                factor = fld.neg_idx(m[i][col])
                m[i] = [fld.add_idx(a, fld.mul_idx(factor, b)) for a, b in zip(m[i], prow)]
        rank += 1
    return rank


def jacobian_at(forms, point):
    """Jacobian matrix (d f_j / d x_i)(point) and its rank over the point's field."""
    if not forms:
        return [], 0
    nvars, p = forms[0].nvars, forms[0].p
    if any(f.nvars != nvars or f.p != p for f in forms):
        raise FieldMismatch("forms do not share a polynomial ring")
    if len(point) != nvars:
        raise ArityMismatch(f"point has {len(point)} coordinates, expected {nvars}")
    fld = _point_field(point)
    if fld.p != p:
        raise FieldMismatch(f"characteristic {fld.p} differs from {p}")
    idx = [x.index for x in point]
    rows = [
        [eval_index(fld, partial_derivative(f, i).terms, idx) for i in range(nvars)]
        for f in forms
    ]
    matrix = [[fld.from_index(v) for v in row] for row in rows]
    return matrix, rank_index(fld, rows)
