"""Point-count windows and the verdict engine.

A window is a sum of terms ``coeff * q**(h/2)``. Terms with odd ``h`` are
irrational; each is bracketed as ``isqrt(coeff**2 * q**h)`` and that value
plus one (unless the square is exact), so every verdict is decided in
integers:

* PASS: the observed deviation fits under the floor bracket, so the real
  inequality holds;
* FAIL: it exceeds the ceiling bracket, so the real inequality is violated;
* PASS_MARGINAL: it falls between the two brackets.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .counter import AFFINE, PROJECTIVE, CountTable, Flags, VarietySpec
from .errors import NotApplicable
from .invariants import Multidegree, epsilon, middle_betti, pi, primitive_betti

PASS = "PASS"
PASS_MARGINAL = "PASS_MARGINAL"
FAIL = "FAIL"
NA = "N/A"

CENTERED = "centered"
UPPER = "upper"
LOWER = "lower"

R_NP_CAVEAT = "conditional on (R_{n,p})"
SURROGATE_C = "surrogate C: constant replaced by the tau bound"
WHOLE_SPACE = "no forms: X is the whole projective space"
CASE_R2_NOTE = (
    "evaluated as the main theorem at s = n-3, i.e. with b'_2(N-n+2, d); "
    "the alternative index b'_2(N-n-2, d) is not used"
)


# -- constants --------------------------------------------------------------

def _katz_core(m: int, delta: int, N: int) -> int:
    return 2**m * (m * delta + 3) ** (N + 1)


def katz_sigma_bound(m: int, delta: int, N: int) -> int:
    """Bound 8 * 2^m * (m delta + 3)^(N+1) on the sum of Betti numbers."""
    return 8 * _katz_core(m, delta, N)


def tau_bound(m: int, delta: int, N: int, *, katz_eight: bool = False) -> int:
    """Bound on the total degree of Z(X,T)/Z(P^n,T); default 9 * 2^m (m delta + 3)^(N+1).

    With ``katz_eight`` the sharper sigma constant is propagated: tau <= sigma + n
    and n <= N, giving 8 * 2^m (m delta + 3)^(N+1) + N.
    """
    if katz_eight:
        return katz_sigma_bound(m, delta, N) + N
    return 9 * _katz_core(m, delta, N)


def affine_constant(m: int, delta: int, N: int) -> int:
    return 6 * _katz_core(m, delta, N)


# -- exact bracketing -------------------------------------------------------

def bracket_term(coeff: int, half_exp: int, q: int) -> tuple[int, int]:
    """Integer floor/ceil of coeff * q^(half_exp / 2)."""
    if half_exp < 0:
        raise ValueError("negative exponents are not supported")
    if half_exp % 2 == 0:
        v = coeff * q ** (half_exp // 2)
        return v, v
    sq = coeff * coeff * q**half_exp
    root = math.isqrt(sq)
    lo, hi = root, root + (root * root != sq)
    return (lo, hi) if coeff >= 0 else (-hi, -lo)


def bracket(terms, q: int) -> tuple[int, int]:
    lo = hi = 0
    for coeff, half_exp in terms:
        a, b = bracket_term(coeff, half_exp, q)
        lo += a
        hi += b
    return lo, hi


def _fmt_terms(terms) -> str:
    parts = []
    for coeff, h in terms:
        if coeff == 0:
            continue
        if h == 0:
            parts.append(f"{coeff}")
        elif h % 2 == 0:
            parts.append(f"{coeff}*q^{h // 2}")
        else:
            parts.append(f"{coeff}*q^({h}/2)")
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Window:
    name: str
    kind: str
    q: int
    lo: int
    hi: int
    center: int | None = None
    formula: str = ""
    tags: tuple = ()
    is_conjecture: bool = False

    def verdict(self, actual: int) -> str:
        if self.kind == CENTERED:
            dev = abs(actual - self.center)
            return PASS if dev <= self.lo else FAIL if dev > self.hi else PASS_MARGINAL
        if self.kind == UPPER:
            return PASS if actual <= self.lo else FAIL if actual > self.hi else PASS_MARGINAL
        return PASS if actual >= self.hi else FAIL if actual < self.lo else PASS_MARGINAL


def _centered(name, q, center, terms, tags=(), conjecture=False) -> Window:
    lo, hi = bracket(terms, q)
    return Window(name, CENTERED, q, lo, hi, center, _fmt_terms(terms), tuple(tags), conjecture)


def _upper(name, q, value, formula, conjecture=False) -> Window:
    return Window(name, UPPER, q, value, value, None, formula, (), conjecture)


# -- inputs -----------------------------------------------------------------

@dataclass(frozen=True)
class BoundInputs:
    q: int
    N: int
    n: int
    multidegree: tuple
    s: int = -1
    flags: Flags = Flags()
    ambient: str = PROJECTIVE

    @property
    def m(self) -> int:
        return len(self.multidegree)

    @property
    def delta(self) -> int:
        return max(self.multidegree, default=1)

    @property
    def d(self) -> int:
        return math.prod(self.multidegree)

    @classmethod
    def from_variety(cls, v: VarietySpec, q: int | None = None) -> "BoundInputs":
        return cls(q or v.q, v.N, v.dim, v.multidegree, v.sing_dim, v.flags, v.ambient)


def _require(cond: bool, reason: str):
    if not cond:
        raise NotApplicable(reason)


def _require_ci(inp: BoundInputs):
    _require(inp.ambient == PROJECTIVE, "needs a projective variety")
    _require(inp.flags.complete_intersection, "needs a complete intersection")


def _whole_space(name: str, inp: BoundInputs) -> Window:
    # no forms: X = P^N, N_1 = pi_N exactly
    return _centered(name, inp.q, pi(inp.N, inp.q), [], [WHOLE_SPACE])


# -- complete-intersection windows -------------------------------------------

def main_theorem_window(inp: BoundInputs, s: int | None = None, *, katz_eight: bool = False,
                        name: str = "main_theorem") -> Window:
    """|N_1 - pi_n| <= b'_{n-s-1}(N-s-1, d) q^((n+s+1)/2) + C_s q^((n+s)/2)."""
    _require_ci(inp)
    s = inp.s if s is None else s
    n, N = inp.n, inp.N
    _require(-1 <= s <= n - 1, f"needs -1 <= s <= n-1 (s={s}, n={n})")
    _require(inp.s <= s, f"declared dim Sing X = {inp.s} exceeds s = {s}")
    _require(s == -1 or inp.flags.irreducible or s <= n - 2,
             "needs an irreducible complete intersection")
    if s == -1:
        _require(inp.flags.nonsingular, "s = -1 needs the nonsingular flag")
    if inp.m == 0:
        return _whole_space(name, inp)
    md = Multidegree(inp.multidegree)
    terms = []
    if s < n - 1:
        terms.append((primitive_betti(N - s - 1, md).value, n + s + 1))
    tags = []
    if s >= 0:
        terms.append((tau_bound(inp.m, inp.delta, N, katz_eight=katz_eight), n + s))
        tags.append(SURROGATE_C)
    return _centered(name, inp.q, pi(n, inp.q), terms, tags)


def deligne_window(inp: BoundInputs, *, katz_eight: bool = False) -> Window:
    _require(inp.flags.nonsingular, "needs a nonsingular variety")
    return main_theorem_window(inp, -1, katz_eight=katz_eight, name="deligne")


def normal_ci_window(inp: BoundInputs, *, katz_eight: bool = False) -> Window:
    _require(inp.n >= 1, "needs n >= 1")
    _require(inp.flags.normal or inp.flags.nonsingular or inp.s <= inp.n - 2,
             "needs a normal complete intersection")
    return main_theorem_window(inp, inp.n - 2, katz_eight=katz_eight, name="normal_ci")


def regular_codim2_window(inp: BoundInputs, *, katz_eight: bool = False) -> Window:
    _require(inp.n >= 2, "needs n >= 2")
    _require(inp.s <= inp.n - 3, "needs dim Sing X <= n-3")
    w = main_theorem_window(inp, inp.n - 3, katz_eight=katz_eight, name="regular_codim2")
    return Window(w.name, w.kind, w.q, w.lo, w.hi, w.center, w.formula,
                  w.tags + (CASE_R2_NOTE,), w.is_conjecture)


def isolated_sing_window(inp: BoundInputs) -> Window:
    """b'_{n-1}(N-1, d) q^((n+1)/2) + (b_n(N, d) + eps_n) q^(n/2)."""
    _require_ci(inp)
    _require(inp.n >= 1, "needs n >= 1")
    _require(inp.flags.isolated_singularities or inp.s <= 0,
             "needs at most isolated singularities")
    if inp.m == 0:
        return _whole_space("isolated_sing", inp)
    md = Multidegree(inp.multidegree)
    n, N = inp.n, inp.N
    terms = [
        (primitive_betti(N - 1, md).value, n + 1),
        (middle_betti(N, md) + epsilon(n), n),
    ]
    return _centered("isolated_sing", inp.q, pi(n, inp.q), terms, [R_NP_CAVEAT])


def hypersurface_isolated_window(inp: BoundInputs) -> Window:
    """(d-1)^(n+1) q^((n+1)/2) for a hypersurface in P^(n+1)."""
    _require(inp.ambient == PROJECTIVE, "needs a projective variety")
    _require(inp.m == 1 and inp.N == inp.n + 1, "needs a hypersurface in P^(n+1)")
    _require(inp.flags.isolated_singularities or inp.s <= 0,
             "needs at most isolated singularities")
    n, d = inp.n, inp.d
    return _centered("hypersurface_isolated", inp.q, pi(n, inp.q),
                     [((d - 1) ** (n + 1), n + 1)], [R_NP_CAVEAT])


def curve_weil_window(inp: BoundInputs) -> Window:
    """|N_1 - (q+1)| <= b_1 sqrt(q) for an irreducible curve."""
    _require(inp.ambient == PROJECTIVE, "needs a projective curve")
    _require(inp.n == 1, "needs a curve (n = 1)")
    _require(inp.flags.irreducible, "needs an irreducible curve")
    d = inp.d
    b1 = (d - 1) * (d - 2)
    formula_note = "b_1 <= (d-1)(d-2)"
    if inp.flags.complete_intersection and inp.m == inp.N - 1:
        b1 = primitive_betti(inp.N, Multidegree(inp.multidegree)).value
        formula_note = "b_1 <= b_1(N, d)"
    w = _centered("curve_weil", inp.q, inp.q + 1, [(b1, 1)])
    return Window(w.name, w.kind, w.q, w.lo, w.hi, w.center, w.formula, (formula_note,))


# -- Lang-Weil family --------------------------------------------------------

def lang_weil_window(q: int, n: int, d: int, m: int, delta: int, N: int, *,
                     katz_eight: bool = False) -> Window:
    """(d-1)(d-2) q^(n-1/2) + C q^(n-1), C bounded by tau_bound(m, delta, N)."""
    _require(n >= 1, "needs n >= 1")
    terms = [((d - 1) * (d - 2), 2 * n - 1), (tau_bound(m, delta, N, katz_eight=katz_eight), 2 * n - 2)]
    return _centered("lang_weil", q, pi(n, q), terms, [SURROGATE_C])


def affine_lang_weil_window(q: int, n: int, d: int, m: int, delta: int, N: int) -> Window:
    _require(n >= 1, "needs n >= 1")
    terms = [((d - 1) * (d - 2), 2 * n - 1), (affine_constant(m, delta, N), 2 * n - 2)]
    return _centered("affine_lang_weil", q, q**n, terms, [SURROGATE_C])


def _schmidt_terms(q, N, d):
    return [(1, 2 * N - 2), (-(d - 1) * (d - 2), 2 * N - 3), (-12 * (d + 3) ** (N + 1), 2 * N - 4)]


def schmidt_lower_bound(q: int, N: int, d: int) -> int:
    """Floor of q^(N-1) - (d-1)(d-2) q^(N-3/2) - 12 (d+3)^(N+1) q^(N-2); may be negative."""
    _require(N >= 2, "needs N >= 2")
    return bracket(_schmidt_terms(q, N, d), q)[0]


def schmidt_window(q: int, N: int, d: int) -> Window:
    _require(N >= 2, "needs N >= 2")
    lo, hi = bracket(_schmidt_terms(q, N, d), q)
    tags = ("vacuous (negative)",) if hi < 0 else ()
    return Window("schmidt_lower", LOWER, q, lo, hi, None, _fmt_terms(_schmidt_terms(q, N, d)), tags)


def serre_upper(q: int, n: int, d: int) -> int:
    _require(d <= q + 1, f"needs d <= q+1 (d={d}, q={q})")
    return d * q**n + pi(n - 1, q)


def algset_upper(q: int, n: int, d: int) -> int:
    return d * pi(n, q)


def lachaud_upper(q: int, N: int, n: int, d: int) -> int:
    _require(2 * n >= N, f"needs n >= N/2 (n={n}, N={N})")
    _require(d <= q + 1, f"needs d <= q+1 (d={d}, q={q})")
    return d * pi(n, q) - (d - 1) * pi(2 * n - N, q)


def small_codim_window(q: int, N: int, n: int, s: int, m: int, delta: int, *,
                       katz_eight: bool = False) -> Window:
    _require(N - n <= n - s - 1, f"needs codim {N - n} <= n-s-1 = {n - s - 1}")
    terms = [(tau_bound(m, delta, N, katz_eight=katz_eight), N + s)]
    return _centered("small_codim", q, pi(n, q), terms, [SURROGATE_C])


# -- verdict engine -----------------------------------------------------------

@dataclass
class Record:
    name: str
    r: int
    q: int
    applicable: bool
    reason: str = ""
    kind: str = ""
    center: int | None = None
    lo: int | None = None
    hi: int | None = None
    actual: int | None = None
    verdict: str = NA
    is_conjecture: bool = False
    formula: str = ""
    tags: list = field(default_factory=list)


@dataclass
class BoundReport:
    variety: str
    q: int
    records: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def failures(self, include_conjectures: bool = False) -> list:
        return [rec for rec in self.records
                if rec.verdict == FAIL and (include_conjectures or not rec.is_conjecture)]

    def to_dict(self) -> dict:
        return {
            "variety": self.variety,
            "q": self.q,
            "records": [asdict(rec) for rec in self.records],
            "warnings": list(self.warnings),
        }


def _window_builders(inp: BoundInputs, katz_eight: bool):
    q, N, n, d, m, delta = inp.q, inp.N, inp.n, inp.d, inp.m, inp.delta
    if inp.ambient == AFFINE:
        def schmidt():
            _require(m == 1, "needs a hypersurface")
            _require(inp.flags.irreducible, "needs an absolutely irreducible polynomial")
            return schmidt_window(q, N, d)
        return [
            ("affine_lang_weil", lambda: affine_lang_weil_window(q, n, d, m, delta, N)),
            ("schmidt_lower", schmidt),
        ]

    def lang_weil():
        _require(inp.flags.irreducible, "needs an irreducible variety")
        return lang_weil_window(q, n, d, m, delta, N, katz_eight=katz_eight)

    def small_codim():
        _require(inp.flags.irreducible, "needs a projective variety")
        return small_codim_window(q, N, n, inp.s, m, delta, katz_eight=katz_eight)

    def serre():
        _require(m == 1, "needs a hypersurface")
        return _upper("serre", q, serre_upper(q, n, d), "d q^n + pi_{n-1}")

    def lachaud():
        _require(inp.flags.complete_intersection, "needs a complete intersection")
        return _upper("lachaud", q, lachaud_upper(q, N, n, d), "d pi_n - (d-1) pi_{2n-N}",
                      conjecture=True)

    return [
        ("main_theorem", lambda: main_theorem_window(inp, katz_eight=katz_eight)),
        ("deligne", lambda: deligne_window(inp, katz_eight=katz_eight)),
        ("normal_ci", lambda: normal_ci_window(inp, katz_eight=katz_eight)),
        ("regular_codim2", lambda: regular_codim2_window(inp, katz_eight=katz_eight)),
        ("isolated_sing", lambda: isolated_sing_window(inp)),
        ("hypersurface_isolated", lambda: hypersurface_isolated_window(inp)),
        ("curve_weil", lambda: curve_weil_window(inp)),
        ("lang_weil", lang_weil),
        ("small_codim", small_codim),
        ("serre", serre),
        ("algset", lambda: _upper("algset", q, algset_upper(q, n, d), "d pi_n")),
        ("lachaud", lachaud),
    ]


def evaluate_all(v: VarietySpec, counts: CountTable, *, katz_eight: bool = False) -> BoundReport:
    """Evaluate every window against N_r, with q replaced by q^r for each r."""
    if 1 not in counts.entries:
        raise ValueError("count table must contain r = 1")
    report = BoundReport(v.name, v.q)
    for r in sorted(counts.entries):
        qr = v.q**r
        actual = counts.entries[r]
        inp = BoundInputs.from_variety(v, qr)
        for name, build in _window_builders(inp, katz_eight):
            try:
                w = build()
            except NotApplicable as exc:
                report.records.append(Record(name, r, qr, False, exc.reason))
                continue
            report.records.append(Record(
                name, r, qr, True, "", w.kind, w.center, w.lo, w.hi, actual,
                w.verdict(actual), w.is_conjecture, w.formula, list(w.tags)))
    _add_warnings(v, report)
    return report


def _add_warnings(v: VarietySpec, report: BoundReport):
    failed = {rec.name for rec in report.failures(include_conjectures=True)}
    if "algset" in failed:
        report.warnings.append(
            "count exceeds d*pi_n: the declared dimension or degree is implausible")
    if failed & {"main_theorem", "deligne", "normal_ci", "regular_codim2", "curve_weil",
                 "lang_weil", "small_codim", "affine_lang_weil"}:
        report.warnings.append(
            "a centered window failed: a declared flag (irreducible, nonsingular, normal, "
            "sing_dim) is suspect")
    if "lachaud" in failed:
        report.warnings.append("the complete-intersection upper bound is violated (conjecture; non-fatal)")
    if any(R_NP_CAVEAT in rec.tags for rec in report.records):
        report.warnings.append(
            "isolated-singularity windows assume resolution of singularities (R_{n,p})")
