"""Zeta series from point counts and curve zeta numerators.

For a curve, ``Z(X, T) = P_1(T) / ((1 - T)(1 - qT))`` with
``P_1(T) = sum a_i T^i = prod (1 - w_j T)``. The power sums
``p_r = sum w_j^r = q^r + 1 - N_r`` and the coefficients ``a_i`` determine each
other through Newton's identities

    p_r + a_1 p_{r-1} + ... + a_{r-1} p_1 + r a_r = 0,

so fitting and predicting never need the roots themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .counter import CountTable
from .errors import InsufficientCounts, NonIntegralCoefficients


@dataclass(frozen=True)
class ZetaSeries:
    q: int
    coefficients: tuple  # exact Fractions, c_0 = 1


@dataclass(frozen=True)
class CurveZeta:
    q: int
    g: int
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if not self.a or self.a[0] != 1:
            raise ValueError("a_0 must be 1")


@dataclass
class RHDiagnostic:
    exact_pass: bool
    numeric_pass: bool
    worst_deviation: float
    moduli: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.exact_pass and self.numeric_pass


def _need(counts: CountTable, upto: int):
    missing = [r for r in range(1, upto + 1) if r not in counts.entries]
    if missing:
        raise InsufficientCounts(f"counts missing for r = {missing}")


def exp_series(log_coeffs, t_max: int) -> list[Fraction]:
    """Coefficients of exp(sum_{r>=1} l_r T^r) through T^t_max.

    ``log_coeffs[r]`` is l_r (index 0 ignored). Uses n c_n = sum_k k l_k c_{n-k}.
    """
    c = [Fraction(1)] + [Fraction(0)] * t_max
    for n in range(1, t_max + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if k < len(log_coeffs):
                acc += k * Fraction(log_coeffs[k]) * c[n - k]
        c[n] = acc / n
    return c


def zeta_series_from_counts(counts: CountTable, t_max: int) -> ZetaSeries:
    """Exact coefficients of exp(sum N_r T^r / r) through T^t_max."""
    _need(counts, t_max)
    logs = [0] + [Fraction(counts.entries[r], r) for r in range(1, t_max + 1)]
    return ZetaSeries(counts.q, tuple(exp_series(logs, t_max)))


def power_sums_from_coefficients(a, r_max: int) -> list[int]:
    """p_1..p_r_max of the reciprocal roots of sum a_i T^i (a_0 = 1)."""
    p = [0] * (r_max + 1)
    for r in range(1, r_max + 1):
        acc = r * a[r] if r < len(a) else 0
        for i in range(1, r):
            if i < len(a):
                acc += a[i] * p[r - i]
        p[r] = -acc
    return p[1:]


def counts_from_curve_zeta(cz: CurveZeta, r: int) -> int:
    """N_r = q^r + 1 - p_r."""
    return cz.q**r + 1 - power_sums_from_coefficients(cz.a, r)[r - 1]


def fit_curve_numerator(counts: CountTable, q: int, g: int) -> CurveZeta:
    """Recover a_1..a_2g from N_1..N_2g; raises when some a_r is not an integer."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    _need(counts, 2 * g)
    p = [q**r + 1 - counts.entries[r] for r in range(1, 2 * g + 1)]
    a = [1]
    for r in range(1, 2 * g + 1):
        acc = p[r - 1] + sum(a[i] * p[r - i - 1] for i in range(1, r))
        if acc % r:
            raise NonIntegralCoefficients(
                f"a_{r} = {-Fraction(acc, r)} is not an integer (wrong genus or inconsistent counts)")
        a.append(-acc // r)
    return CurveZeta(q, g, tuple(a))


def check_functional_equation(cz: CurveZeta) -> bool:
    """a_{2g-i} == q^(g-i) a_i for 0 <= i <= g."""
    g, a = cz.g, cz.a
    if len(a) != 2 * g + 1:
        return False
    return all(a[2 * g - i] == cz.q ** (g - i) * a[i] for i in range(g + 1))


def check_riemann_hypothesis(cz: CurveZeta, tol: float = 1e-6) -> RHDiagnostic:
    """Exact test a_1^2 <= 4 g^2 q, plus |w| = sqrt(q) for every reciprocal root."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    g, q = cz.g, cz.q
    if g == 0:
        return RHDiagnostic(True, True, 0.0, [])
    a1 = cz.a[1] if len(cz.a) > 1 else 0
    exact = a1 * a1 <= 4 * g * g * q
    # reciprocal roots are the roots of a_0 x^deg + a_1 x^(deg-1) + ... + a_deg
    roots = np.roots(np.array(cz.a, dtype=float))
    sq = math.sqrt(q)
    moduli = sorted(float(abs(z)) for z in roots)
    if len(moduli) != 2 * g:
        return RHDiagnostic(exact, False, math.inf, moduli)
    worst = max((abs(mod - sq) / sq for mod in moduli), default=0.0)
    return RHDiagnostic(exact, worst <= tol, worst, moduli)


def cone_counts(curve_counts: CountTable, q: int, m_max: int) -> CountTable:
    """Counts of the projective cone over a plane curve: q^m N_m + 1."""
    _need(curve_counts, m_max)
    return CountTable(q, {m: q**m * curve_counts.entries[m] + 1 for m in range(1, m_max + 1)})


def series_of_rational(numerator, denominator_roots, t_max: int) -> list[Fraction]:
    """numerator(T) / prod(1 - c T) for c in denominator_roots, through T^t_max."""
    out = [Fraction(numerator[i]) if i < len(numerator) else Fraction(0) for i in range(t_max + 1)]
    for c in denominator_roots:
        for i in range(1, t_max + 1):
            out[i] += c * out[i - 1]
    return out


def cone_factorization_check(cz_curve: CurveZeta, cone: CountTable, t_max: int) -> bool:
    """Z(cone) == P_1(C, qT) / ((1 - q^2 T)(1 - qT)(1 - T)) through T^t_max."""
    _need(cone, t_max)
    q = cz_curve.q
    lhs = zeta_series_from_counts(cone, t_max).coefficients
    twisted = [a * q**i for i, a in enumerate(cz_curve.a)]
    rhs = series_of_rational(twisted, [q * q, q, 1], t_max)
    return list(lhs) == rhs
