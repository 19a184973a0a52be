"""Exhaustive point counting over F_{q^r}.

Projective points are enumerated by normalized representatives: the first
nonzero coordinate is 1. The stream is ordered by the position of that
leading 1, then by the base-q value of the free coordinates that follow it.
A partition ``i`` of ``P`` takes the free-coordinate indices congruent to ``i``
mod ``P`` inside every block, so any partitioning visits every point once and
the merged count is independent of schedule.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import InconsistentDeclaration, NonHomogeneousForm, SizeCapExceeded
from .ffield import DEFAULT_FIELD_CAP, FieldSpec, extend_field
from .invariants import pi
from .mpoly import MPoly, eval_index, is_homogeneous, partial_derivative, rank_index, total_degree

DEFAULT_POINT_CAP = 10**9

PROJECTIVE = "projective"
AFFINE = "affine"


@dataclass(frozen=True)
class Flags:
    irreducible: bool = False
    nonsingular: bool = False
    normal: bool = False
    isolated_singularities: bool = False
    complete_intersection: bool = False


@dataclass(frozen=True)
class VarietySpec:
    field: FieldSpec
    ambient: str
    N: int
    forms: tuple
    dim: int
    sing_dim: int = -1
    flags: Flags = Flags()
    name: str = ""
    cone_of: str | None = None  # path of the base curve when X is a cone over it

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        if self.ambient not in (PROJECTIVE, AFFINE):
            raise ValueError(f"ambient must be {PROJECTIVE!r} or {AFFINE!r}")
        nvars = self.nvars
        for i, f in enumerate(self.forms):
            if f.nvars != nvars:
                raise InconsistentDeclaration(
                    f"form #{i} has {f.nvars} variables, ambient needs {nvars}")
            if f.p != self.field.p:
                raise InconsistentDeclaration(f"form #{i} is over F_{f.p}, field is F_{self.field.p}")
            if self.ambient == PROJECTIVE and not is_homogeneous(f):
                raise NonHomogeneousForm(i)
        if self.sing_dim < -1:
            raise InconsistentDeclaration("sing_dim must be >= -1")
        if self.flags.nonsingular and self.sing_dim != -1:
            raise InconsistentDeclaration("nonsingular variety must declare sing_dim = -1")
        if self.flags.complete_intersection and self.dim != self.N - len(self.forms):
            raise InconsistentDeclaration(
                f"complete intersection of {len(self.forms)} forms in dimension {self.N} "
                f"has dimension {self.N - len(self.forms)}, declared {self.dim}")

    @property
    def nvars(self) -> int:
        return self.N + 1 if self.ambient == PROJECTIVE else self.N

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def multidegree(self) -> tuple:
        return tuple(total_degree(f) for f in self.forms)

    @property
    def m(self) -> int:
        return len(self.forms)

    @property
    def delta(self) -> int:
        return max(self.multidegree, default=1)

    @property
    def degree(self) -> int:
        """Product of the form degrees (the Bezout number)."""
        return math.prod(self.multidegree) if self.forms else 1


@dataclass
class CountTable:
    q: int
    entries: dict = field(default_factory=dict)

    def __getitem__(self, r):
        return self.entries[r]

    @property
    def r_max(self) -> int:
        return max(self.entries, default=0)

    def as_list(self, upto=None):
        upto = self.r_max if upto is None else upto
        return [self.entries[r] for r in range(1, upto + 1)]


# -- enumeration ------------------------------------------------------------

def _check_point_cap(total: int, point_cap: int):
    if total > point_cap:
        raise SizeCapExceeded(f"{total} points exceed point cap {point_cap}")


def _digits(idx: int, q: int, n: int):
    out = [0] * n
    for j in range(n - 1, -1, -1):
        idx, out[j] = divmod(idx, q)
    return out


def _projective_indices(N: int, q: int, part: int = 0, nparts: int = 1):
    """Normalized representatives as coordinate-index lists."""
    for lead in range(N + 1):
        nfree = N - lead
        prefix = [0] * lead + [1]
        for idx in range(part, q**nfree, nparts):
            yield prefix + _digits(idx, q, nfree)


def enumerate_projective(N: int, f: FieldSpec, *, point_cap: int = DEFAULT_POINT_CAP):
    """Yield every point of P^N(f) once as a tuple of FieldElements."""
    _check_point_cap(pi(N, f.q), point_cap)
    for pt in _projective_indices(N, f.q):
        yield tuple(f.from_index(x) for x in pt)


def _affine_indices(N: int, q: int, part: int = 0, nparts: int = 1):
    for idx in range(part, q**N, nparts):
        yield _digits(idx, q, N)


def _vanishes(fld, forms_terms, pt) -> bool:
    for terms in forms_terms:
        if eval_index(fld, terms, pt):
            return False
    return True


def _count_partition(args) -> int:
    fld, ambient, N, forms_terms, part, nparts = args
    gen = (_projective_indices if ambient == PROJECTIVE else _affine_indices)(N, fld.q, part, nparts)
    return sum(1 for pt in gen if _vanishes(fld, forms_terms, pt))


def resolve_partitions(partitions: int | None) -> int:
    """WEILBOUNDS_THREADS, when set, overrides the requested partition count."""
    env = os.environ.get("WEILBOUNDS_THREADS")
    if env:
        partitions = int(env)
    return max(1, partitions or 1)


def count_points(v: VarietySpec, r: int = 1, *, partitions: int = 1, workers: int = 1,
                 point_cap: int = DEFAULT_POINT_CAP, field_cap: int = DEFAULT_FIELD_CAP) -> int:
    """|X(F_{q^r})| by exhaustive enumeration.

    ``partitions`` splits the point stream; ``workers > 1`` runs the partitions
    in a process pool. The result does not depend on either.
    """
    fld = extend_field(v.field, r, field_cap=field_cap)
    total = pi(v.N, fld.q) if v.ambient == PROJECTIVE else fld.q**v.N
    _check_point_cap(total, point_cap)
    if not v.forms:
        return total
    if fld.k > 1:
        fld.tables  # build once before fan-out
    forms_terms = [f.terms for f in v.forms]
    jobs = [(fld, v.ambient, v.N, forms_terms, i, partitions) for i in range(partitions)]
    if workers > 1 and partitions > 1:
        with ProcessPoolExecutor(max_workers=min(workers, partitions)) as pool:
            return sum(pool.map(_count_partition, jobs))
    return sum(_count_partition(job) for job in jobs)


def count_table(v: VarietySpec, r_max: int, **kwargs) -> CountTable:
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    return CountTable(v.q, {r: count_points(v, r, **kwargs) for r in range(1, r_max + 1)})


def singular_census(v: VarietySpec, r: int = 1, *, point_cap: int = DEFAULT_POINT_CAP,
                    field_cap: int = DEFAULT_FIELD_CAP) -> list[tuple]:
    """F_{q^r}-points of X where the Jacobian of the forms has rank < #forms.

    For a complete intersection these are exactly the singular rational
    points. An empty result says nothing about points over larger fields.
    """
    if v.ambient != PROJECTIVE:
        raise ValueError("singular census is defined for projective varieties")
    fld = extend_field(v.field, r, field_cap=field_cap)
    _check_point_cap(pi(v.N, fld.q), point_cap)
    forms_terms = [f.terms for f in v.forms]
    partials = [[partial_derivative(f, i).terms for i in range(v.nvars)] for f in v.forms]
    out = []
    for pt in _projective_indices(v.N, fld.q):
        if not _vanishes(fld, forms_terms, pt):
            continue
        rows = [[eval_index(fld, t, pt) for t in row] for row in partials]
        if rank_index(fld, rows) < len(v.forms):
            out.append(tuple(fld.from_index(x) for x in pt))
    return out
