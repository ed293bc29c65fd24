"""The associated graded ring ``R^g = k[x]/in(I)`` and its Hilbert series.

``in(I)`` is generated by the initial forms of a ``ds`` standard basis of ``I``;
its grevlex Groebner basis gives standard-monomial bases of every graded piece.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from functools import cached_property

from .presentation import RingSpec
from .ring import DS, GREVLEX, Polynomial, initial_form, mono_divides, monomials_of_degree
from .stdbasis import StdBasis, buchberger, standard_basis, vec_from_poly

log = logging.getLogger(__name__)


class SopSamplingError(RuntimeError):
    """No system of parameters found within the retry budget."""


class GenericityError(RuntimeError):
    """Two random choices that should agree generically disagreed."""


# ---------------------------------------------------------------- integer polynomials in t

def _tpoly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def tpoly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _tpoly_trim(out)


def tpoly_add(a, b, sign=1):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + sign * (b[i] if i < len(b) else 0) for i in range(n)]
    return _tpoly_trim(out)


def one_minus_t_power(k):
    out = [1]
    for _ in range(k):
        out = tpoly_mul(out, [1, -1])
    return out


def tpoly_str(a, var="t"):
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        parts.append(("-" if c < 0 else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / (1-t)^denom_power``."""

    numerator: tuple
    denom_power: int

    def reduced(self):
        """Cancel factors ``(1-t)``; returns ``(h, d)`` with ``h(1) != 0``."""
        h, d = list(self.numerator), self.denom_power
        while d > 0 and h and sum(h) == 0:
            # synthetic division by (1 - t): q_i = sum_{k<=i} h_k
            q, acc = [], 0
            for c in h[:-1]:
                acc += c
                q.append(acc)
            h, d = _tpoly_trim(q), d - 1
        return h, d

    @property
    def dim(self) -> int:
        return self.reduced()[1]

    @property
    def multiplicity(self) -> int:
        return sum(self.reduced()[0])

    def coefficients(self, upto: int) -> list:
        """Hilbert function values for degrees ``0..upto``."""
        h = list(self.numerator)
        vals = [h[i] if i < len(h) else 0 for i in range(upto + 1)]
        for _ in range(self.denom_power):
            acc = 0
            for i in range(upto + 1):
                acc += vals[i]
                vals[i] = acc
        return vals

    def __str__(self):
        return f"({tpoly_str(list(self.numerator))}) / (1-t)^{self.denom_power}"


# ---------------------------------------------------------------- Hilbert numerators of monomial ideals

def minimal_monomials(monos):
    monos = sorted(set(tuple(m) for m in monos), key=sum)
    out = []
    for m in monos:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def _hn(gens):
    if not gens:
        return [1]
    # coprime generators: product of (1 - t^deg)
    support = [set(i for i, e in enumerate(m) if e) for m in gens]
    seen = set()
    coprime = True
    for s in support:
        if s & seen:
            coprime = False
            break
        seen |= s
    if coprime:
        out = [1]
        for m in gens:
            out = tpoly_mul(out, [1] + [0] * (sum(m) - 1) + [-1])
        return out
    # pivot on a variable appearing in the most generators
    counts = {}
    for m in gens:
        if sum(m) > 1:
            for i, e in enumerate(m):
                if e:
                    counts[i] = counts.get(i, 0) + 1
    v = max(counts, key=lambda i: (counts[i], -i))
    pivot = tuple(1 if k == v else 0 for k in range(len(gens[0])))
    plus = minimal_monomials(list(gens) + [pivot])
    colon = minimal_monomials([tuple(e - 1 if k == v and e > 0 else e for k, e in enumerate(m)) for m in gens])
    return tpoly_add(_hn(plus), tpoly_mul([0, 1], _hn(colon)))


def hilbert_numerator(leading_monomials, nvars: int) -> HilbertSeries:
    """Hilbert series of ``k[x_1..x_nvars]/(leading_monomials)``."""
    gens = minimal_monomials(leading_monomials)
    if any(sum(m) == 0 for m in gens):
        return HilbertSeries((), nvars)
    return HilbertSeries(tuple(_hn(gens)), nvars)


def monomial_support_dim(leading_monomials, nvars: int) -> int:
    """Krull dimension of ``k[x]/(monomials)``: largest variable set containing no generator's support."""
    gens = minimal_monomials(leading_monomials)
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in gens]
    if any(not s for s in supports):
        return -1
    best = 0
    for mask in range(1 << nvars):
        U = frozenset(i for i in range(nvars) if mask >> i & 1)
        if len(U) > best and not any(s <= U for s in supports):
            best = len(U)
    return best


# ---------------------------------------------------------------- tangent cone

@dataclass
class GradedView:
    """``R^g`` presented as ``k[x]/in(I)``."""

    ring: RingSpec
    in_I: list
    gb: StdBasis
    leading_monomials: list
    hilbert: HilbertSeries
    sbasis: StdBasis | None = None
    _basis_cache: dict = field(default_factory=dict, repr=False)
    _mult_cache: dict = field(default_factory=dict, repr=False)

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def p(self) -> int:
        return self.ring.char

    @property
    def dim(self) -> int:
        return self.hilbert.dim

    @cached_property
    def hilbert_numerator_reduced(self):
        return self.hilbert.reduced()[0]

    def basis(self, j: int) -> list:
        """Standard monomials of degree ``j`` (a k-basis of ``(R^g)_j``)."""
        if j not in self._basis_cache:
            lm = self.leading_monomials
            self._basis_cache[j] = [m for m in monomials_of_degree(self.nvars, j)
                                    if not any(mono_divides(g, m) for g in lm)] if j >= 0 else []
        return self._basis_cache[j]

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form modulo ``in(I)`` (a combination of standard monomials)."""
        r = self.gb.reduce_full(vec_from_poly(f))
        return Polynomial({m: c for (_, m), c in r.items()}, self.nvars, self.p)

    def times_var(self, v: int, m) -> dict:
        """Normal form of ``x_v * m`` for a standard monomial ``m``, as ``{monomial: coeff}``."""
        key = (v, m)
        if key not in self._mult_cache:
            mm = tuple(e + (1 if k == v else 0) for k, e in enumerate(m))
            self._mult_cache[key] = self.reduce(Polynomial.monomial(mm, 1, self.p)).terms
        return self._mult_cache[key]

    def quotient_hilbert(self, forms) -> HilbertSeries:
        """Hilbert series of ``R^g/(forms)`` for homogeneous ``forms``."""
        if not forms:
            return self.hilbert
        B = buchberger(list(self.in_I) + list(forms), nvars=self.nvars, p=self.p)
        return hilbert_numerator(B.leading_monomials(), self.nvars)


def tangent_cone(R: RingSpec, degree_cap=None) -> GradedView:
    """Associated graded ring of the local ring ``R``."""
    n, p = R.nvars, R.char
    kw = {} if degree_cap is None else {"degree_cap": degree_cap}
    if R.gens:
        S = standard_basis(list(R.gens), DS, **kw)
        in_I = [initial_form(f) for f in S.polys()]
    else:
        S, in_I = None, []
    gb = buchberger(in_I, nvars=n, p=p) if in_I else StdBasis(GREVLEX, 1, n, p, [])
    lm = minimal_monomials(gb.leading_monomials())
    return GradedView(R, in_I, gb, lm, hilbert_numerator(lm, n), S)


def krull_dim(G: GradedView) -> int:
    return G.dim


# ---------------------------------------------------------------- generic linear forms

def random_linear_form(rng: random.Random, nvars: int, p: int) -> Polynomial:
    terms = {}
    for v in range(nvars):
        e = [0] * nvars
        e[v] = 1
        terms[tuple(e)] = rng.randrange(p)
    return Polynomial(terms, nvars, p)


def random_linear_sop(G: GradedView, rng_seed=0, retries: int = 20) -> list:
    """``dim R`` random linear forms whose images form a system of parameters of ``R^g``.

    The same forms, read in ``R``, are a superficial sequence.
    """
    rng = rng_seed if isinstance(rng_seed, random.Random) else random.Random(rng_seed)
    d = G.dim
    if d <= 0:
        return []
    if G.p < 10 * G.nvars:
        log.warning("characteristic %d is small for %d variables; sop sampling may fail", G.p, G.nvars)
    for _ in range(retries):
        forms = [random_linear_form(rng, G.nvars, G.p) for _ in range(d)]
        if G.quotient_hilbert(forms).dim == 0:
            return forms
    raise SopSamplingError(f"no linear system of parameters after {retries} attempts")


@dataclass
class CMWitness:
    is_cm: bool
    sop: list
    series: HilbertSeries
    quotient_series: HilbertSeries


def _cm_on(G: GradedView, forms) -> CMWitness:
    d = len(forms)
    Hq = G.quotient_hilbert(forms)
    expected = tpoly_mul(list(G.hilbert.numerator), one_minus_t_power(d))
    return CMWitness(list(Hq.numerator) == expected, forms, G.hilbert, Hq)


def is_cohen_macaulay(G: GradedView, rng_seed=0, confirm: bool = True) -> CMWitness:
    """Decide whether ``R^g`` is Cohen-Macaulay by the regular-sequence Hilbert criterion."""
    if G.dim == 0:
        return CMWitness(True, [], G.hilbert, G.hilbert)
    rng = random.Random(rng_seed)
    w = _cm_on(G, random_linear_sop(G, rng))
    if confirm:
        w2 = _cm_on(G, random_linear_sop(G, rng))
        if w.is_cm != w2.is_cm:
            raise GenericityError("Cohen-Macaulay test disagrees between two random systems of parameters")
    return w


# ---------------------------------------------------------------- positive weights

def homogenizing_weights(polys, nvars: int, max_weight: int = 6):
    """A positive integer weight vector making every polynomial weighted homogeneous, or ``None``.

    Standard weights are preferred; otherwise the search minimizes the largest weight.
    """
    diffs = set()
    for f in polys:
        monos = list(f.terms)
        for m in monos[1:]:
            diffs.add(tuple(a - b for a, b in zip(m, monos[0])))
    if all(sum(d) == 0 for d in diffs):
        return (1,) * nvars
    from itertools import product
    for top in range(2, max_weight + 1):
        for w in product(range(1, top + 1), repeat=nvars):
            if max(w) != top:
                continue
            if all(sum(a * b for a, b in zip(w, d)) == 0 for d in diffs):
                return tuple(w)
    return None


def weighted_degree(m, w) -> int:
    return sum(a * b for a, b in zip(m, w))


def monomials_of_weight(w, D: int) -> list:
    """Exponent vectors ``m`` with ``sum(w_i m_i) = D``."""
    n = len(w)
    out = []

    def rec(i, left, prefix):
        if i == n - 1:
            if left % w[i] == 0:
                out.append(prefix + (left // w[i],))
            return
        for e in range(left // w[i] + 1):
            rec(i + 1, left - e * w[i], prefix + (e,))

    if D >= 0 and n:
        rec(0, D, ())
    return out


def random_weighted_linear_sop(G: GradedView, weights, rng_seed=0, retries: int = 20) -> list:
    """Random linear sop whose elements are each weighted homogeneous for ``weights``.

    Each element is a combination of variables sharing one weight; weight
    patterns are tried from the most populated class downwards.
    """
    from itertools import combinations_with_replacement
    rng = rng_seed if isinstance(rng_seed, random.Random) else random.Random(rng_seed)
    d = G.dim
    if d <= 0:
        return []
    classes = {}
    for v, wt in enumerate(weights):
        classes.setdefault(wt, []).append(v)
    order = sorted(classes, key=lambda wt: (-len(classes[wt]), wt))
    for pattern in combinations_with_replacement(order, d):
        for _ in range(max(1, retries // 4)):
            forms = []
            for wt in pattern:
                terms = {}
                for v in classes[wt]:
                    e = [0] * G.nvars
                    e[v] = 1
                    terms[tuple(e)] = rng.randrange(1, G.p)
                forms.append(Polynomial(terms, G.nvars, G.p))
            if G.quotient_hilbert(forms).dim == 0:
                return forms
    raise SopSamplingError("no weighted homogeneous linear system of parameters found")
