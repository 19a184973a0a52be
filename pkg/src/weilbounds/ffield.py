"""Exact arithmetic in F_p and F_{p^k}.

Elements of F_{p^k} are coefficient vectors ``(c_0, ..., c_{k-1})`` in the
polynomial basis ``1, t, ..., t^{k-1}`` modulo a monic irreducible polynomial.
Internally an element is also addressed by its *index*, the base-p integer
``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``; the counting kernels work on indices
and log/antilog tables, the public ``FieldElement`` type wraps the vector.

The modulus chosen by :func:`make_field` is the lexicographically smallest
monic irreducible polynomial of degree k (coefficients compared constant term
first), so two calls with the same (p, k) always build the same model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .errors import DivisionByZero, FieldMismatch, NotPrime, SizeCapExceeded

DEFAULT_FIELD_CAP = 2**20


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_p, lists with the constant term first ---------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, f, p):
    """Remainder of a modulo the monic polynomial f."""
    a = _trim(a)
    df = len(f) - 1
    while len(a) - 1 >= df:
        c = a[-1]
        shift = len(a) - 1 - df
        for i in range(df + 1):
            a[shift + i] = (a[shift + i] - c * f[i]) % p
        a = _trim(a)
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        b = [(c * inv) % p for c in b]
        a, b = b, _poly_mod(a, b, p)
    return a


def _x_pow_p_iter(f, p, times):
    """x^(p^times) mod f by repeated p-th powering."""
    x = _poly_mod([0, 1], f, p)
    for _ in range(times):
        acc = [1]
        base = x
        e = p
        while e:
            if e & 1:
                acc = _poly_mod(_poly_mul(acc, base, p), f, p)
            base = _poly_mod(_poly_mul(base, base, p), f, p)
            e >>= 1
        x = acc
    return x


def is_irreducible(coeffs, p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_p.

    ``coeffs`` is constant-term first and must be monic.
    """
    f = _trim(coeffs)
    k = len(f) - 1
    if k < 1 or f[-1] != 1:
        return False
    if k == 1:
        return True
    if f[0] == 0:
        return False
    if _poly_sub(_x_pow_p_iter(f, p, k), [0, 1], p):
        return False
    for ell in prime_factors(k):
        h = _poly_sub(_x_pow_p_iter(f, p, k // ell), [0, 1], p)
        if len(_poly_gcd(f, h, p)) != 1:
            return False
    return True


# -- fields -----------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Concrete model of F_{p^k}; immutable and safe to share."""

    p: int
    k: int
    modulus: tuple
    q: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p ** self.k)
        object.__setattr__(self, "modulus", tuple(self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def __getstate__(self):
        # tables are rebuilt lazily on the other side of a process boundary
        return {"p": self.p, "k": self.k, "modulus": self.modulus, "q": self.q}

    # digits <-> index
    def digits(self, idx: int) -> tuple:
        p = self.p
        out = []
        for _ in range(self.k):
            idx, c = divmod(idx, p)
            out.append(c)
        return tuple(out)

    def from_digits(self, rep) -> int:
        idx = 0
        for c in reversed(rep):
            idx = idx * self.p + c
        return idx

    # index arithmetic: the hot path of the counting kernels
    def add_idx(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def neg_idx(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return -a % p
        if p == 2:
            return a
        out, scale = 0, 1
        while a:
            a, x = divmod(a, p)
            out += (-x % p) * scale
            scale *= p
        return out

    def mul_idx(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self.tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv_idx(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self.tables
        return exp[-log[a] % (self.q - 1)]

    def pow_idx(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.k == 1:
            return pow(a, e, self.p)
        exp, log = self.tables
        return exp[log[a] * e % (self.q - 1)]

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _poly_mul(_trim(self.digits(a)), _trim(self.digits(b)), self.p)
        rem = _poly_mod(prod, self.modulus, self.p)
        return self.from_digits(rem + [0] * (self.k - len(rem)))

    @cached_property
    def primitive_index(self) -> int:
        """Smallest index generating the multiplicative group."""
        order = self.q - 1
        if order == 1:
            return 1
        factors = prime_factors(order)
        for g in range(2, self.q):
            if all(self._slow_pow(g, order // ell) != 1 for ell in factors):
                return g
        raise AssertionError("no primitive element found")  # unreachable for a field

    def _slow_pow(self, a: int, e: int) -> int:
        acc = 1
        while e:
            if e & 1:
                acc = self._slow_mul(acc, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return acc

    @cached_property
    def tables(self):
        """(antilog, log) tables; log[0] is -1."""
        g = self.primitive_index
        exp = [0] * (self.q - 1)
        log = [-1] * self.q
        x = 1
        for i in range(self.q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        return exp, log

    # element constructors
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to another field")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.digits(value % self.p))
        rep = tuple(int(c) % self.p for c in value)
        if len(rep) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(rep)}")
        return FieldElement(self, rep)

    def from_index(self, idx: int) -> "FieldElement":
        return FieldElement(self, self.digits(idx))

    @property
    def zero(self):
        return self.from_index(0)

    @property
    def one(self):
        return self.from_index(1)

    @property
    def gen(self):
        """The class of t (equals the residue 0 when k = 1)."""
        return self.from_index(self.p if self.k > 1 else 0)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    rep: tuple

    @property
    def index(self) -> int:
        return self.field.from_digits(self.rep)

    def _other(self, other):
        if isinstance(other, int):
            return self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch("operands live in different fields")
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.field.from_index(self.field.add_idx(self.index, other.index))

    __radd__ = __add__

    def __neg__(self):
        return self.field.from_index(self.field.neg_idx(self.index))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.field.from_index(self.field.mul_idx(self.index, other.index))

    __rmul__ = __mul__

    def inverse(self):
        return self.field.from_index(self.field.inv_idx(self.index))

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        return self.field.from_index(self.field.pow_idx(self.index, e))

    def __bool__(self):
        return any(self.rep)

    def __repr__(self):
        if self.field.k == 1:
            return str(self.rep[0])
        terms = []
        for i, c in enumerate(self.rep):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


def make_field(p: int, k: int = 1, *, field_cap: int = DEFAULT_FIELD_CAP) -> FieldSpec:
    if not is_prime(p):
        raise NotPrime(p)
    if k < 1:
        raise ValueError("extension degree must be at least 1")
    if p**k > field_cap:
        raise SizeCapExceeded(f"q = {p}^{k} exceeds field cap {field_cap}")
    if k == 1:
        return FieldSpec(p, 1, (0, 1))
    for low in itertools.product(range(p), repeat=k):
        coeffs = low + (1,)
        if is_irreducible(coeffs, p):
            return FieldSpec(p, k, coeffs)
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")


def extend_field(base: FieldSpec, r: int, *, field_cap: int = DEFAULT_FIELD_CAP) -> FieldSpec:
    """F_{q^r} as a fresh model of F_{p^(k r)}; no embedding of ``base`` is kept."""
    if r < 1:
        raise ValueError("extension degree must be at least 1")
    if r == 1:
        return base
    return make_field(base.p, base.k * r, field_cap=field_cap)


def enumerate_elements(f: FieldSpec):
    """All q elements, ordered by index (rep read as a base-p integer)."""
    return [f.from_index(i) for i in range(f.q)]


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def neg(a: FieldElement) -> FieldElement:
    return -a


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, e: int) -> FieldElement:
    return a**e


def frobenius(a: FieldElement) -> FieldElement:
    """a -> a^p; its k-fold iterate is the identity on F_{p^k}."""
    return a**a.field.p
