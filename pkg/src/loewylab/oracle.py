"""Brute-force truncated linear algebra, used to cross-check the standard-basis machinery.

Everything here works modulo ``m^(D+1)``: the ideal ``I + m^(D+1)`` of the
polynomial ring is spanned by truncated monomial multiples of the generators,
so its dimension data come from one sparse elimination.  The pivot of a row is
its lowest-degree term, which makes the pivots in degree ``j`` a basis of the
degree ``j`` part of the ideal of initial forms for every ``j <= D``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graded import random_linear_sop, tangent_cone
from .linalg import SparseEchelon
from .localring import NotZeroDimensional, artinian_reduction
from .presentation import RingSpec
from .ring import Polynomial, ds_key, monomials_of_degree, ord_in_Q
from .stdbasis import StdBasis, standard_basis, vec_from_poly


class TruncatedIdeal:
    """``(gens) + m^(D+1)`` in ``k[x_1..x_n]`` as an echelonized span of truncated multiples."""

    def __init__(self, gens, nvars: int, p: int, D: int):
        self.nvars, self.p, self.D = nvars, p, D
        self.ech = SparseEchelon(p, ds_key)
        rows = []
        for g in gens:
            if g.is_zero():
                continue
            o = int(ord_in_Q(g))
            for e in range(D - o + 1):
                for mu in monomials_of_degree(nvars, e):
                    rows.append((o + e, mu, g))
        # low-degree rows first keeps the reductions short
        rows.sort(key=lambda r: r[0])
        for _, mu, g in rows:
            self.ech.add(self._truncated(g.shift(mu)))

    def _truncated(self, f: Polynomial) -> dict:
        return {m: c for m, c in f.terms.items() if sum(m) <= self.D}

    def pivots_in_degree(self, j: int) -> int:
        return sum(1 for m in self.ech.pivots() if sum(m) == j)

    def hilbert_function(self) -> list:
        """``dim (R^g)_j`` for ``j = 0..D``."""
        return [len(monomials_of_degree(self.nvars, j)) - self.pivots_in_degree(j) for j in range(self.D + 1)]

    def contains(self, f: Polynomial) -> bool:
        return not self.ech.reduce(self._truncated(f))


def brute_force_hilbert(R: RingSpec, D: int, cut=()) -> list:
    gens = list(R.gens) + [f for f in cut if not f.is_zero()]
    return TruncatedIdeal(gens, R.nvars, R.char, D).hilbert_function()


def brute_force_loewy_length(R: RingSpec, cut=(), D: int = 12):
    """Smallest ``j`` with ``(R/cut)^g_j = 0`` (then ``m^j = 0`` by Nakayama); ``None`` if not seen by ``D``."""
    hf = brute_force_hilbert(R, D, cut)
    for j, h in enumerate(hf):
        if h == 0:
            return j
    return None


def dimension_from_hilbert(hf: list, tail: int = 5):
    """Krull dimension read off the last ``tail`` values of a Hilbert function.

    The Hilbert function is a polynomial of degree ``dim - 1`` in large degree
    (identically zero in dimension 0).  Returns ``None`` when the tail is too
    short to decide.
    """
    vals = list(hf[-tail:])
    if not any(vals):
        return 0
    k = 0
    while len(vals) > 1:
        vals = [b - a for a, b in zip(vals, vals[1:])]
        k += 1
        if not any(vals):
            return k
    return None


def brute_force_member(R: RingSpec, f: Polynomial, D: int) -> bool:
    """Is ``f`` in ``I + m^(D+1)``?"""
    return TruncatedIdeal(list(R.gens), R.nvars, R.char, D).contains(f)


# ---------------------------------------------------------------- cross-check against the library

@dataclass
class OracleReport:
    ring: str
    max_degree: int
    checks: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def record(self, name: str, library, brute):
        self.checks[name] = {"library": library, "brute_force": brute, "ok": library == brute}
        if library != brute:
            self.mismatches.append(name)


def random_probe(rng: random.Random, nvars: int, p: int, max_deg: int, terms: int = 4) -> Polynomial:
    out = {}
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(0, max_deg)
        e = [0] * nvars
        for _ in range(d):
            e[rng.randrange(nvars)] += 1
        out[tuple(e)] = rng.randrange(1, p)
    return Polynomial(out, nvars, p)


def membership_probes(R: RingSpec, rng: random.Random, count: int, max_deg: int) -> list:
    """Random polynomials and random elements of ``I`` (so both answers occur)."""
    n, p = R.nvars, R.char
    probes = []
    for k in range(count):
        if R.gens and k % 2 == 0:
            f = Polynomial.zero(n, p)
            for g in R.gens:
                f = f + g * random_probe(rng, n, p, max(0, max_deg - g.degree()), 2)
            # perturb some of them by a high-degree term
            if k % 4 == 0:
                f = f + random_probe(rng, n, p, max_deg, 1)
            probes.append(f)
        else:
            probes.append(random_probe(rng, n, p, max_deg))
    return probes


def cross_check(R: RingSpec, max_degree: int = 12, member_degree: int = 8, probes: int = 20,
                seed: int = 0) -> OracleReport:
    """Compare Hilbert function, dimension, membership and Loewy length with brute force."""
    rep = OracleReport(R.name or "ring", max_degree)
    n, p = R.nvars, R.char
    G = tangent_cone(R)
    hf = brute_force_hilbert(R, max_degree)
    rep.record("hilbert_function", G.hilbert.coefficients(max_degree), hf)
    rep.record("dim", G.dim, dimension_from_hilbert(hf))

    rng = random.Random(seed)
    S = standard_basis(list(R.gens), nvars=n, p=p) if R.gens else None
    T = TruncatedIdeal(list(R.gens), n, p, member_degree)
    lib, brute = [], []
    for f in membership_probes(R, rng, probes, member_degree):
        brute.append(T.contains(f))
        if S is None:
            lib.append(all(sum(m) > member_degree for m in f.terms))
        else:
            St = StdBasis(S.order, 1, n, p, S.elems, member_degree + 1)
            lib.append(St.contains(vec_from_poly(f)))
    rep.record("membership", lib, brute)

    cut = [] if G.dim == 0 else random_linear_sop(G, rng)
    try:
        A = artinian_reduction(R, cut)
        rep.record("loewy_length", A.loewy_length(), brute_force_loewy_length(R, cut, max_degree))
        rep.record("loewy_length_matrices", A.loewy_length_matrices(), A.loewy_length())
    except NotZeroDimensional:
        rep.record("loewy_length", "positive dimension", brute_force_loewy_length(R, cut, max_degree))
    return rep


# ---------------------------------------------------------------- Betti numbers over artinian rings

def _span_basis(rows, p):
    from .linalg import rref
    if len(rows) == 0:
        return rows
    R, piv = rref(rows, p)
    return R[:len(piv)]


def artinian_betti_numbers(R: RingSpec, J, d: int) -> list:
    """``beta_0..beta_d`` of ``R/J`` over an artinian ``R`` by finite-dimensional linear algebra.

    A submodule ``N`` of ``A^b`` is a subspace of ``k^(b*L)`` closed under the
    variables.  Its minimal number of generators is ``dim N - dim mN``; the next
    syzygy is the kernel of the induced map ``A^beta -> A^b``.  No standard bases
    of modules are involved.
    """
    import numpy as np
    from .linalg import matmul, nullspace, rank
    A = artinian_reduction(R, [])
    L, p, mult = A.length, A.p, A.mult
    if L == 0:
        raise ValueError("zero ring")

    def act(v, rows):
        # multiply each length-L block of every row by the variable matrix
        b = rows.shape[1] // L
        return np.hstack([matmul(rows[:, k * L:(k + 1) * L], mult[v].T, p) for k in range(b)])

    def submodule(gens):
        V = _span_basis(np.array(gens, dtype=np.int64) % p, p)
        while True:
            W = _span_basis(np.vstack([V] + [act(v, V) for v in range(len(mult))]), p)
            if W.shape[0] == V.shape[0]:
                return V
            V = W

    # N_1 = J inside A^1
    N = submodule([A.coords(f) for f in J] or [np.zeros(L, dtype=np.int64)])
    betti, b = [1], 1
    for _ in range(d):
        if N.shape[0] == 0 or not N.any():
            betti.append(0)
            N = np.zeros((0, L), dtype=np.int64)
            continue
        mN = _span_basis(np.vstack([act(v, N) for v in range(len(mult))]), p) if mult else N[:0]
        # minimal generators: a complement of mN inside N
        gens, cur = [], mN
        for row in N:
            test = np.vstack([cur, row[None, :]]) if cur.shape[0] else row[None, :]
            if rank(test, p) > cur.shape[0]:
                gens.append(row)
                cur = _span_basis(test, p)
        beta = len(gens)
        betti.append(beta)
        # the map A^beta -> A^b sending e_k * basis monomial to that multiple of gens[k]
        images = []
        for g in gens:
            for m in A.basis:
                op = A.operator(Polynomial.monomial(m, 1, p))
                images.append(np.hstack([matmul(op, g[k * L:(k + 1) * L][:, None], p)[:, 0] for k in range(b)]))
        K = nullspace(np.array(images, dtype=np.int64).T % p, p)
        N = K if K.shape[0] else np.zeros((0, beta * L), dtype=np.int64)
        b = beta
    return betti
