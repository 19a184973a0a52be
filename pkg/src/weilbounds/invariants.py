"""Exact combinatorial invariants of complete intersections.

Everything here is arbitrary-precision integer (or exact rational) arithmetic:
``(delta + 1)**N`` and the binomials overflow machine words quickly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyRange, InvalidParams, ShapeMismatch


@dataclass(frozen=True)
class Multidegree:
    degrees: tuple

    def __post_init__(self):
        degrees = tuple(int(d) for d in self.degrees)
        if not degrees:
            raise InvalidParams("a multidegree needs at least one degree")
        if any(d < 1 for d in degrees):
            raise InvalidParams(f"degrees must be positive, got {degrees}")
        object.__setattr__(self, "degrees", degrees)

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def d(self) -> int:
        return math.prod(self.degrees)

    @property
    def delta(self) -> int:
        return max(self.degrees)

    def power(self, nu) -> int:
        """d^nu = d_1^nu_1 ... d_r^nu_r."""
        return math.prod(d**e for d, e in zip(self.degrees, nu))


def as_multidegree(md) -> Multidegree:
    if isinstance(md, Multidegree):
        return md
    if isinstance(md, int):
        return Multidegree((md,))
    return Multidegree(tuple(md))


@dataclass(frozen=True)
class BettiValue:
    value: int
    N: int
    n: int
    multidegree: Multidegree

    def __int__(self):
        return self.value


def pi(n: int, q: int) -> int:
    """Number of points of P^n(F_q); pi(-1, q) = 0."""
    if n < -1:
        raise InvalidParams(f"pi is defined for n >= -1, got {n}")
    return sum(q**i for i in range(n + 1))


def epsilon(i: int) -> int:
    return 1 if i % 2 == 0 else 0


def compositions(c: int, r: int) -> list[tuple]:
    """All r-tuples of positive integers summing to c, in lexicographic order."""
    if r < 1 or c < r:
        raise EmptyRange(f"no compositions of {c} into {r} positive parts")
    out = []
    for cuts in itertools.combinations(range(1, c), r - 1):
        bounds = (0,) + cuts + (c,)
        out.append(tuple(b - a for a, b in zip(bounds, bounds[1:])))
    return out


def _check_ci(N: int, md: Multidegree) -> int:
    n = N - md.r
    if n < 0:
        raise InvalidParams(f"codimension {md.r} exceeds ambient dimension {N}")
    return n


def primitive_betti(N: int, md) -> BettiValue:
    """Primitive middle Betti number b'_n(N, d) of a nonsingular complete intersection."""
    md = as_multidegree(md)
    n = _check_ci(N, md)
    r = md.r
    total = 0
    for c in range(r, N + 1):
        inner = sum(md.power(nu) for nu in compositions(c, r))
        total += (-1) ** c * math.comb(N + 1, c + 1) * inner
    value = (-1) ** (n + 1) * (n + 1) + (-1) ** N * total
    return BettiValue(value, N, n, md)


def middle_betti(N: int, md) -> int:
    """Full middle Betti number b_n(N, d) = b'_n + epsilon_n."""
    b = primitive_betti(N, md)
    return b.value + epsilon(b.n)


def betti_bound(N: int, md) -> tuple[int, int]:
    md = as_multidegree(md)
    n = _check_ci(N, md)
    first = (-1) ** (n + 1) * (n + 1) + md.d * math.comb(N + 1, n) * (md.delta + 1) ** n
    second = math.comb(N + 1, n) * (md.delta + 1) ** N
    return first, second


def _exact(x: Fraction) -> int:
    if x.denominator != 1:
        raise AssertionError(f"closed form produced a non-integer {x}")
    return x.numerator


def closed_form_hypersurface(N: int, d) -> int:
    if not isinstance(d, int):
        md = as_multidegree(d)
        if md.r != 1:
            raise ShapeMismatch("hypersurface closed form needs exactly one degree")
        d = md.degrees[0]
    if N < 1 or d < 1:
        raise ShapeMismatch(f"hypersurface closed form needs N >= 1 and d >= 1 (got {N}, {d})")
    return _exact(Fraction(d - 1, d) * ((d - 1) ** N - (-1) ** N))


def closed_form_ci_curve(N: int, md) -> int:
    md = as_multidegree(md)
    if md.r != N - 1:
        raise ShapeMismatch(f"curve closed form needs r = N - 1, got r = {md.r}, N = {N}")
    return md.d * (sum(md.degrees) - N - 1) + 2


def closed_form_ci_surface(N: int, md) -> int:
    """Primitive b'_2 of a complete-intersection surface (r = N - 2)."""
    md = as_multidegree(md)
    r = md.r
    if r != N - 2:
        raise ShapeMismatch(f"surface closed form needs r = N - 2, got r = {r}, N = {N}")
    s1 = sum(md.degrees)
    # quadratic term runs over unordered pairs i <= j
    h2 = sum(a * b for a, b in itertools.combinations_with_replacement(md.degrees, 2))
    b2 = md.d * (math.comb(r + 3, 2) - (r + 3) * s1 + h2) - 2
    return b2 - 1


def closed_form_two_forms(N: int, d) -> int:
    """b'_n(N, (d, d)) for two forms of one common degree d."""
    if not isinstance(d, int):
        md = as_multidegree(d)
        if md.r != 2 or md.degrees[0] != md.degrees[1]:
            raise ShapeMismatch("two-form closed form needs r = 2 with equal degrees")
        d = md.degrees[0]
    if N < 2:
        raise ShapeMismatch("two forms need N >= 2")
    return _exact(
        (N - 1) * (d - 1) ** N + 2 * Fraction(d - 1, d) * ((d - 1) ** (N - 1) + (-1) ** N)
    )


def matching_closed_forms(N: int, md) -> dict[str, int]:
    """Every closed form whose shape fits (N, md), keyed by name."""
    md = as_multidegree(md)
    out = {}
    if md.r == 1 and N >= 1:
        out["hypersurface"] = closed_form_hypersurface(N, md.degrees[0])
    if md.r == N - 1:
        out["ci_curve"] = closed_form_ci_curve(N, md)
    if md.r == N - 2:
        out["ci_surface"] = closed_form_ci_surface(N, md)
    if md.r == 2 and md.degrees[0] == md.degrees[1]:
        out["two_forms"] = closed_form_two_forms(N, md.degrees[0])
    return out


def hilbert_series_ci(N: int, md, t_max: int) -> list[int]:
    """Coefficients 0..t_max of prod(1 - T^d_i) / (1 - T)^(N+1)."""
    md = as_multidegree(md)
    if t_max < 0:
        raise InvalidParams("t_max must be nonnegative")
    num = [0] * (t_max + 1)
    num[0] = 1
    for d in md.degrees:
        for t in range(t_max, d - 1, -1):
            num[t] -= num[t - d]
    # 1/(1-T)^(N+1) has coefficients comb(t + N, N)
    return [
        sum(num[j] * math.comb(t - j + N, N) for j in range(t + 1))
        for t in range(t_max + 1)
    ]


def ci_degree(md) -> int:
    return as_multidegree(md).d


def plane_arith_genus(d: int) -> int:
    """Arithmetic genus (d-1)(d-2)/2 of a plane curve of degree d."""
    if d < 1:
        raise InvalidParams("degree must be positive")
    return (d - 1) * (d - 2) // 2
