"""Artinian reductions, Loewy lengths, generalized Loewy length and Cohen presentations."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .graded import GradedView, is_cohen_macaulay, random_linear_sop, tangent_cone
from .linalg import common_kernel, matmul, nullspace, rank
from .presentation import RingSpec
from .ring import DS, INF, Polynomial, mono_divides, monomials_of_degree, ord_in_Q
from .stdbasis import StdBasis, _staircase_top, minimalize_generators, standard_basis, vec_from_poly

log = logging.getLogger(__name__)


class NotZeroDimensional(ValueError):
    """The given elements do not cut the ring down to finite length."""


@dataclass
class ArtinAlgebra:
    """A finite-length quotient ``R/J`` with a basis of standard monomials.

    Elements are coordinate vectors over ``basis``; ``mult[v]`` is the matrix of
    multiplication by the ``v``-th variable acting on column vectors.
    """

    ring: RingSpec
    cut: list
    sbasis: StdBasis
    basis: list
    trunc: int
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {m: i for i, m in enumerate(self.basis)}

    @property
    def length(self) -> int:
        return len(self.basis)

    @property
    def p(self) -> int:
        return self.ring.char

    def reduce(self, f: Polynomial) -> Polynomial:
        r = self.sbasis.reduce_full(vec_from_poly(f))
        return Polynomial({m: c for (_, m), c in r.items()}, self.ring.nvars, self.p)

    def coords(self, f: Polynomial) -> np.ndarray:
        out = np.zeros(self.length, dtype=np.int64)
        for m, c in self.reduce(f).terms.items():
            out[self._index[m]] = c
        return out

    def element(self, vec) -> Polynomial:
        return Polynomial({m: int(c) for m, c in zip(self.basis, vec) if int(c) % self.p}, self.ring.nvars, self.p)

    def operator(self, f: Polynomial) -> np.ndarray:
        """Matrix of multiplication by ``f``."""
        cols = [self.coords(f * Polynomial.monomial(m, 1, self.p)) for m in self.basis]
        return np.array(cols, dtype=np.int64).T.reshape(self.length, self.length)

    @cached_property
    def mult(self) -> list:
        n = self.ring.nvars
        return [self.operator(Polynomial.var(v, n, self.p)) for v in range(n)]

    def loewy_length(self) -> int:
        """``1 + max degree of a standard monomial``: the standard monomials of degree
        ``>= j`` span ``m^j`` (a ``ds`` leading term sits in lowest degree)."""
        if not self.basis:
            return 0
        return 1 + max(sum(m) for m in self.basis)

    def loewy_length_matrices(self) -> int:
        """Same number from powers of ``m`` acting on the whole algebra (independent route)."""
        if not self.basis:
            return 0
        p = self.p
        V = np.eye(self.length, dtype=np.int64)
        j = 0
        while V.shape[1]:
            j += 1
            W = np.hstack([matmul(M, V, p) for M in self.mult]) if self.mult else np.zeros((self.length, 0), np.int64)
            r = rank(W, p)
            if r == 0:
                return j
            V = _column_basis(W, p)
        return j

    def socle(self) -> np.ndarray:
        """Basis (rows) of ``0 :_A m``."""
        return common_kernel(self.mult, self.length, self.p)

    def socle_element_of_order(self, n: int, weights=None):
        """A nonzero element of ``(0 : m) ∩ m^n`` as a polynomial, or ``None``.

        With ``weights`` the element is chosen weighted homogeneous (the socle of a
        weighted-graded algebra is graded).
        """
        K = self.socle()
        if K.shape[0] == 0:
            return None
        if weights is None:
            groups = [[i for i, m in enumerate(self.basis) if sum(m) >= n]]
        else:
            by_w = {}
            for i, m in enumerate(self.basis):
                if sum(m) >= n:
                    by_w.setdefault(sum(a * b for a, b in zip(m, weights)), []).append(i)
            groups = [by_w[k] for k in sorted(by_w, reverse=True)]
        for keep in groups:
            other = [i for i in range(self.length) if i not in set(keep)]
            if other:
                # combinations of socle vectors vanishing outside the kept coordinates
                C = nullspace(K[:, other].T, self.p)
                if C.shape[0] == 0:
                    continue
                vec = matmul(C[:1], K, self.p)[0]
            else:
                vec = K[0]
            if vec.any():
                return self.element(vec)
        return None

    def socle_max_order_element(self):
        """``(s, n)`` with ``s`` a nonzero socle element of order ``n = ll - 1``."""
        n = self.loewy_length() - 1
        return self.socle_element_of_order(n), n


def _column_basis(W, p):
    from .linalg import rref
    R, piv = rref(np.asarray(W).T % p, p)
    return R[:len(piv)].T.copy()


class LoewyBoundExceeded(NotZeroDimensional):
    """``R/(cut)`` has Loewy length at least the largest truncation tried (or infinite length)."""


TRUNCATIONS = (8, 16, 24)


def artinian_reduction(R: RingSpec, cut, degree_cap=None, truncations=TRUNCATIONS) -> ArtinAlgebra:
    """``R/(cut)`` as a finite-dimensional algebra.

    The standard basis is computed modulo ``m^T`` for growing ``T``.  When the
    truncated quotient has Loewy length ``L < T`` then ``m^L`` lies in
    ``J + m^(L+1)``, hence in ``J`` (Nakayama), and the truncated quotient is
    ``R/J`` itself.  Raises :class:`LoewyBoundExceeded` if no ``T`` works.
    """
    kw = {} if degree_cap is None else {"degree_cap": degree_cap}
    gens = list(R.gens) + [f for f in cut if not f.is_zero()]
    n, p = R.nvars, R.char
    if not gens:
        if n == 0:
            return ArtinAlgebra(R, list(cut), StdBasis(DS, 1, 0, p, [], 1), [()], 1)
        raise NotZeroDimensional("the ring has positive dimension")
    if n == 0:
        return ArtinAlgebra(R, list(cut), StdBasis(DS, 1, 0, p, [{(0, ()): 1}], None), [], 0)
    for T in truncations:
        S = standard_basis(gens, DS, trunc=T, **kw)
        if S.is_unit_ideal():
            return ArtinAlgebra(R, list(cut), S, [], 0)
        lm = [m for (_, m) in S.leads]
        top = _staircase_top(lm, n)
        if top is not None and top + 1 < T:
            trunc = top + 1
            S = StdBasis(DS, 1, n, p, S.elems, trunc)
            basis = [m for d in range(trunc) for m in monomials_of_degree(n, d)
                     if not any(mono_divides(g, m) for g in lm)]
            return ArtinAlgebra(R, list(cut), S, basis, trunc)
    raise LoewyBoundExceeded(f"no Loewy length below {truncations[-1]} (possibly infinite length)")


def loewy_length(R: RingSpec, cut=()) -> int:
    return artinian_reduction(R, cut).loewy_length()


# ---------------------------------------------------------------- generalized Loewy length

@dataclass
class GllEstimate:
    value: int
    certified: bool
    samples: int
    best_sop: list
    regularity: int | None = None
    values: list = field(default_factory=list)


def random_sparse_sop_element(rng: random.Random, nvars: int, p: int, max_order: int, terms: int = 3) -> Polynomial:
    """A few random monomials of degree ``1..max_order`` with random coefficients."""
    out = {}
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(1, max_order)
        e = [0] * nvars
        for _ in range(d):
            e[rng.randrange(nvars)] += 1
        out[tuple(e)] = rng.randrange(1, p)
    return Polynomial(out, nvars, p)


def candidate_sops(R: RingSpec, G: GradedView, k: int, max_param_order: int, seed: int) -> list:
    """The sops tried in sampling iteration ``k``: one generic linear sop and one
    sparse sop of order at most ``o`` for each ``o = 1..max_param_order``.

    Every candidate has its own random stream, so the candidates of a smaller
    configuration are among those of a larger one.
    """
    d = G.dim
    out = [random_linear_sop(G, random.Random(f"{seed}:{k}:linear"))]
    for o in range(1, max_param_order + 1):
        rng = random.Random(f"{seed}:{k}:{o}")
        out.append([random_sparse_sop_element(rng, R.nvars, R.char, o) for _ in range(d)])
    return out


def gll_estimate(R: RingSpec, samples: int = 50, max_param_order: int = 3, seed: int = 0,
                 G: GradedView | None = None, regularity: int | None = None) -> GllEstimate:
    """Upper bound ``min ll(R/(sop))`` over sampled sops; exact when ``R^g`` is Cohen-Macaulay.

    ``samples`` iterations each try the candidates of :func:`candidate_sops`, so
    the estimate can only decrease when ``samples`` or ``max_param_order`` grow.
    When ``R^g`` is Cohen-Macaulay the value equals ``reg R^g + 1`` and is marked
    certified.
    """
    G = G or tangent_cone(R)
    d = G.dim
    if d == 0:
        v = loewy_length(R)
        return GllEstimate(v, True, 1, [], regularity, [v])
    best, best_sop, values = None, None, []
    for k in range(samples):
        for sop in candidate_sops(R, G, k, max_param_order, seed):
            try:
                v = loewy_length(R, sop)
            except NotZeroDimensional:
                continue
            values.append(v)
            if best is None or v < best:
                best, best_sop = v, sop
    cm = is_cohen_macaulay(G, seed).is_cm
    if cm:
        if regularity is None:
            from .koszul import castelnuovo_mumford_regularity
            regularity = castelnuovo_mumford_regularity(G, seed).value
        if best != regularity + 1:
            raise AssertionError(f"strict Cohen-Macaulay ring with gll sample {best} but reg + 1 = {regularity + 1}")
    return GllEstimate(best, cm, len(values), best_sop, regularity, values)


# ---------------------------------------------------------------- Cohen presentation data

@dataclass
class CohenPresentation:
    generators: list
    orders: list
    codim: int
    dim: int
    is_ci: bool
    minimal_embedding: bool

    @property
    def ord(self):
        return min(self.orders) if self.orders else None

    @property
    def maxord(self):
        return max(self.orders) if self.orders else None

    @property
    def t_mark_bound(self):
        """``sum(orders) - codim + 1`` for complete intersections (1 for a regular ring)."""
        if not self.is_ci:
            return None
        return sum(self.orders) - self.codim + 1


def cohen_presentation(R: RingSpec, G: GradedView | None = None) -> CohenPresentation:
    """Minimal generators of the defining ideal with their orders.

    ``minimal_embedding`` is False when some generator has order 1 (the presentation
    is then not minimal in embedding dimension and the order-based bounds do not apply).
    """
    G = G or tangent_cone(R)
    gens = minimalize_generators(list(R.gens))
    orders = [int(ord_in_Q(g)) for g in gens]
    c = len(gens)
    return CohenPresentation(gens, orders, c, G.dim, c == R.nvars - G.dim, all(o >= 2 for o in orders))
