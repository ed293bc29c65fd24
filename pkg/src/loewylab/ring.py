"""Coefficients, monomials, polynomials and monomial orders over a prime field.

Monomials are exponent tuples.  Polynomials are sparse dicts ``{exponents: coeff}``
with coefficients stored as ints in ``[0, p)``; the :class:`Polynomial` wrapper
adds the ring data (characteristic and variable count) and arithmetic.

Two orders are supported: ``grevlex`` (global, degree compatible) and ``ds``
(local: lowest total degree wins, ties broken reverse lexicographically).  Under
``ds`` the leading term of ``f`` is a term of its initial form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

DEFAULT_CHAR = 32003
INF = float("inf")

Mono = tuple  # tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    q = 3
    while q * q <= p:
        if p % q == 0:
            return False
        q += 2
    return True


@dataclass(frozen=True)
class Scalar:
    """An element of the prime field F_p."""

    value: int
    p: int = DEFAULT_CHAR

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.p != self.p:
                raise ValueError("characteristic mismatch")
            return other.value
        return other % self.p

    def __add__(self, other):
        return Scalar(self.value + self._other(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.value - self._other(other), self.p)

    def __rsub__(self, other):
        return Scalar(self._other(other) - self.value, self.p)

    def __mul__(self, other):
        return Scalar(self.value * self._other(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.value, self.p)

    def inverse(self) -> "Scalar":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return Scalar(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * Scalar(self._other(other), self.p).inverse()

    def __bool__(self):
        return self.value != 0


# ---------------------------------------------------------------- monomials

def mono_deg(m: Mono) -> int:
    return sum(m)


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    """True when ``a`` divides ``b``."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_quo(b: Mono, a: Mono) -> Mono:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(x if x > y else y for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int) -> list[Mono]:
    """All exponent vectors in ``n`` variables of total degree ``d``, grevlex-descending."""
    if n == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, slots - 1)

    rec((), d, n)
    out.sort(key=grevlex_key, reverse=True)
    return out


# ---------------------------------------------------------------- orders

@lru_cache(maxsize=None)
def grevlex_key(m: Mono):
    return (sum(m), tuple(-e for e in reversed(m)))


@lru_cache(maxsize=None)
def ds_key(m: Mono):
    return (-sum(m), tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex`` or ``ds``; modules use position-over-term with component 0 highest."""

    kind: str = "ds"

    def __post_init__(self):
        if self.kind not in ("grevlex", "ds"):
            raise ValueError(f"unsupported monomial order {self.kind!r}")

    @property
    def is_local(self) -> bool:
        return self.kind == "ds"

    @property
    def key(self):
        return ds_key if self.kind == "ds" else grevlex_key

    def term_key(self, term):
        """Sort key of a module term ``(component, exponents)``; larger is leading."""
        c, m = term
        return (-c, self.key(m))


DS = MonomialOrder("ds")
GREVLEX = MonomialOrder("grevlex")

LT, EQ, GT = -1, 0, 1


def mono_cmp(order: MonomialOrder, a: Mono, b: Mono) -> int:
    if len(a) != len(b):
        raise ValueError("monomials live in different rings")
    ka, kb = order.key(a), order.key(b)
    if ka == kb:
        return EQ
    return GT if ka > kb else LT


# ---------------------------------------------------------------- polynomials

class Polynomial:
    """Sparse polynomial over F_p in ``nvars`` variables.  Treated as immutable."""

    __slots__ = ("terms", "nvars", "p")

    def __init__(self, terms: Mapping[Mono, int] | None, nvars: int, p: int = DEFAULT_CHAR):
        self.nvars = nvars
        self.p = p
        clean = {}
        for m, c in (terms or {}).items():
            c %= p
            if c:
                if len(m) != nvars:
                    raise ValueError("exponent vector has the wrong length")
                clean[tuple(m)] = c
        self.terms = clean

    # constructors
    @classmethod
    def zero(cls, nvars, p=DEFAULT_CHAR):
        return cls({}, nvars, p)

    @classmethod
    def constant(cls, c, nvars, p=DEFAULT_CHAR):
        return cls({(0,) * nvars: c}, nvars, p)

    @classmethod
    def var(cls, i, nvars, p=DEFAULT_CHAR):
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars, p)

    @classmethod
    def monomial(cls, m: Mono, c=1, p=DEFAULT_CHAR):
        return cls({tuple(m): c}, len(m), p)

    def _like(self, terms):
        out = Polynomial.__new__(Polynomial)
        out.terms, out.nvars, out.p = terms, self.nvars, self.p
        return out

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.p != self.p or other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, Scalar):
            other = other.value
        if isinstance(other, int):
            return Polynomial.constant(other, self.nvars, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._like(add_terms(self.terms, other.terms, 1, self.p))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._like(add_terms(self.terms, other.terms, -1, self.p))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.p
        return self._like({m: p - c for m, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._like(mul_terms(self.terms, other.terms, self.p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.constant(1, self.nvars, self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)):
            other = self._coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.p == other.p and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Largest total degree of a term (-1 for zero)."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def leading_term(self, order: MonomialOrder = DS):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def homogeneous_part(self, d: int) -> "Polynomial":
        return self._like({m: c for m, c in self.terms.items() if sum(m) == d})

    def truncate(self, d: int) -> "Polynomial":
        """Drop every term of degree >= d."""
        return self._like({m: c for m, c in self.terms.items() if sum(m) < d})

    def scale(self, c: int) -> "Polynomial":
        c %= self.p
        if c == 0:
            return self._like({})
        return self._like({m: v * c % self.p for m, v in self.terms.items()})

    def shift(self, m: Mono) -> "Polynomial":
        return self._like({mono_mul(k, m): v for k, v in self.terms.items()})

    def evaluate_at_origin(self) -> int:
        return self.constant_term()


def add_terms(a: dict, b: dict, sign: int, p: int) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = (out.get(m, 0) + sign * c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def mul_terms(a: dict, b: dict, p: int) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = (out.get(m, 0) + ca * cb) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def ord_in_Q(f: Polynomial):
    """m-adic order of ``f`` in the polynomial ring: least degree of a term, ``inf`` for 0."""
    if f.is_zero():
        return INF
    return min(sum(m) for m in f.terms)


def initial_form(f: Polynomial) -> Polynomial:
    """The lowest-degree homogeneous part of ``f``."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no initial form")
    return f.homogeneous_part(ord_in_Q(f))


# ---------------------------------------------------------------- printing

def default_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


def _signed(c: int, p: int) -> int:
    return c - p if c > p // 2 else c


def format_poly(f: Polynomial, names: Iterable[str] | None = None, order: MonomialOrder = GREVLEX) -> str:
    names = list(names) if names is not None else default_names(f.nvars)
    if f.is_zero():
        return "0"
    parts = []
    for m in sorted(f.terms, key=order.key, reverse=True):
        c = _signed(f.terms[m], f.p)
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        body = "*".join(factors)
        if not body:
            s = str(abs(c))
        elif abs(c) == 1:
            s = body
        else:
            s = f"{abs(c)}*{body}"
        parts.append(("-" if c < 0 else "+", s))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, s in parts[1:]:
        out += f" {sign} {s}"
    return out
