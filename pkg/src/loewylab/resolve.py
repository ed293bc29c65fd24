"""Minimal free resolutions over ``R = Q/I`` up to a requested homological degree.

A matrix is a :class:`Mat`: ``nrows`` plus a list of column vectors in the sparse
``{(row, exponents): coeff}`` format.  Resolutions are built by iterated
syzygies; redundant generators are removed by splitting off unit entries with
unit column scalings, so no power series inverses are needed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .linalg import rank
from .presentation import RingSpec
from .ring import Polynomial
from .stdbasis import (
    DEFAULT_DEGREE_CAP,
    standard_basis,
    syzygies,
    vec_add,
    vec_from_poly,
    vec_mul_poly,
    vec_ord,
)

log = logging.getLogger(__name__)


@dataclass
class Mat:
    nrows: int
    cols: list

    @property
    def ncols(self) -> int:
        return len(self.cols)

    def entry(self, r: int, c: int, nvars: int, p: int) -> Polynomial:
        return Polynomial({m: a for (k, m), a in self.cols[c].items() if k == r}, nvars, p)

    def rows(self, nvars: int, p: int) -> list:
        return [[self.entry(r, c, nvars, p) for c in range(self.ncols)] for r in range(self.nrows)]

    @classmethod
    def from_rows(cls, rows, nrows=None) -> "Mat":
        nrows = len(rows) if nrows is None else nrows
        ncols = len(rows[0]) if rows else 0
        cols = []
        for c in range(ncols):
            v = {}
            for r in range(nrows):
                for m, a in rows[r][c].terms.items():
                    v[(r, m)] = a
            cols.append(v)
        return cls(nrows, cols)


def mat_apply(A: Mat, v: dict, p: int, nvars: int) -> dict:
    """``A v`` for a vector ``v`` over ``A.ncols`` components."""
    out = {}
    by_comp = {}
    for (c, m), a in v.items():
        by_comp.setdefault(c, {})[m] = a
    for c, terms in by_comp.items():
        out = vec_add(out, vec_mul_poly(A.cols[c], Polynomial(terms, nvars, p)), p)
    return out


def mat_mul(A: Mat, B: Mat, p: int, nvars: int) -> Mat:
    return Mat(A.nrows, [mat_apply(A, col, p, nvars) for col in B.cols])


def is_zero_mod(v: dict, ideal_basis, rank_: int) -> bool:
    """Every component of ``v`` lies in the ideal with standard basis ``ideal_basis``."""
    if not v:
        return True
    if ideal_basis is None:
        return False
    by_comp = {}
    for (c, m), a in v.items():
        by_comp.setdefault(c, {})[(0, m)] = a
    return all(ideal_basis.contains(w) for w in by_comp.values())


def _constant_entry(col: dict, row: int, nvars: int) -> int:
    return col.get((row, (0,) * nvars), 0)


def _split_units(prev: Mat, nxt: Mat, nvars: int, p: int):
    """Remove unit entries of ``nxt``: each one makes a basis vector of the middle module redundant.

    For a unit ``u = nxt[r, q]`` the row ``r`` and column ``q`` of ``nxt`` and the
    column ``r`` of ``prev`` are dropped; the other columns become ``u*b_k - b[r,k]*b_q``.
    """
    zero = (0,) * nvars
    while True:
        found = None
        for q, col in enumerate(nxt.cols):
            for (r, m), a in col.items():
                if m == zero:
                    found = (r, q)
                    break
            if found:
                break
        if not found:
            return prev, nxt
        r, q = found
        bq = nxt.cols[q]
        u = Polynomial({m: a for (k, m), a in bq.items() if k == r}, nvars, p)
        new_cols = []
        for k, col in enumerate(nxt.cols):
            if k == q:
                continue
            brk = Polynomial({m: a for (kk, m), a in col.items() if kk == r}, nvars, p)
            if brk.is_zero():
                w = col
            else:
                w = vec_add(vec_mul_poly(col, u), vec_mul_poly(bq, brk), p, -1)
            new_cols.append(_drop_row(w, r))
        nxt = Mat(nxt.nrows - 1, new_cols)
        prev = Mat(prev.nrows, prev.cols[:r] + prev.cols[r + 1:])


def _drop_row(v: dict, r: int) -> dict:
    out = {}
    for (c, m), a in v.items():
        if c == r:
            if a:
                raise AssertionError("row to drop still has an entry")
            continue
        out[(c - 1 if c > r else c, m)] = a
    return out


@dataclass
class Resolution:
    ring: RingSpec
    diffs: list  # diffs[i] is d_{i+1}: F_{i+1} -> F_i
    rank0: int
    extra: Mat | None = field(default=None, repr=False)  # unpruned next syzygies

    @property
    def length(self) -> int:
        return len(self.diffs)

    def betti(self) -> list:
        return [self.rank0] + [D.ncols for D in self.diffs]

    def check_complex(self) -> bool:
        n, p = self.ring.nvars, self.ring.char
        IB = standard_basis(list(self.ring.gens), nvars=n, p=p) if self.ring.gens else None
        for i in range(1, len(self.diffs)):
            for col in mat_mul(self.diffs[i - 1], self.diffs[i], p, n).cols:
                if not is_zero_mod(col, IB, self.diffs[i - 1].nrows):
                    return False
        return True

    def is_minimal(self) -> bool:
        n = self.ring.nvars
        zero = (0,) * n
        return all(m != zero for D in self.diffs for col in D.cols for (_, m) in col)


def _clean(cols, IB, nrows, p):
    out, seen = [], set()
    for v in cols:
        v = {t: a % p for t, a in v.items() if a % p}
        if is_zero_mod(v, IB, nrows):
            continue
        key = frozenset(v.items())
        if key in seen:
            continue
        seen.add(key)
        out.append(v)
    return out


def minimal_resolution(R: RingSpec, presentation: Mat, d: int, degree_cap=DEFAULT_DEGREE_CAP) -> Resolution:
    """``F_d -> ... -> F_0`` for the module ``coker(presentation)``.

    Syzygies are computed one step further so that ``d_d`` itself is minimal.
    """
    n, p = R.nvars, R.char
    IB = standard_basis(list(R.gens), nvars=n, p=p) if R.gens else None
    D1 = Mat(presentation.nrows, _clean(presentation.cols, IB, presentation.nrows, p))
    # unit entries in the presentation drop module generators
    _, D1 = _split_units(Mat(0, [{}] * D1.nrows), D1, n, p)
    diffs = [Mat(D1.nrows, _clean(D1.cols, IB, D1.nrows, p))]
    for i in range(1, d + 1):
        cur = diffs[i - 1]
        syz = syzygies(cur.cols, cur.nrows, n, p, R.gens, degree_cap=degree_cap) if cur.ncols else []
        cur, nxt = _split_units(cur, Mat(cur.ncols, _clean(syz, IB, cur.ncols, p)), n, p)
        diffs[i - 1] = cur
        diffs.append(Mat(nxt.nrows, _clean(nxt.cols, IB, nxt.nrows, p)))
    return Resolution(R, diffs[:d], diffs[0].nrows, diffs[d])


min_resolution = minimal_resolution


def residue_field_presentation(R: RingSpec) -> Mat:
    n, p = R.nvars, R.char
    return Mat(1, [vec_from_poly(Polynomial.var(v, n, p)) for v in range(n)])


def cyclic_presentation(R: RingSpec, J) -> Mat:
    """Presentation of ``R/J`` (one generator, relations ``J``)."""
    return Mat(1, [vec_from_poly(f) for f in J])


def betti_numbers(R: RingSpec, presentation: Mat, d: int) -> list:
    return minimal_resolution(R, presentation, d).betti()


# ---------------------------------------------------------------- Tor over artinian rings

def _entry_operator(A, f: Polynomial) -> np.ndarray:
    return A.operator(f)


def tor_dims_via_tensor(R: RingSpec, F: Resolution, module_cut, d: int) -> list:
    """``dim_k H_i(F ⊗ R/J)`` for ``i <= d``, with ``F`` resolving some module and ``R/J`` artinian."""
    from .localring import artinian_reduction
    A = artinian_reduction(R, module_cut)
    n, p, L = R.nvars, R.char, A.length
    ranks = []
    for D in F.diffs:
        if D.ncols == 0 or D.nrows == 0:
            ranks.append(0)
            continue
        blocks = [[_entry_operator(A, D.entry(r, c, n, p)) for c in range(D.ncols)] for r in range(D.nrows)]
        ranks.append(rank(np.block(blocks) % p, p) if L else 0)
    betti = F.betti()
    out = []
    for i in range(d + 1):
        r_in = ranks[i - 1] if 1 <= i <= len(ranks) else 0
        r_out = ranks[i] if i < len(ranks) else None
        if r_out is None:
            raise ValueError("resolution too short for the requested degree")
        out.append(betti[i] * L - r_in - r_out)
    return out


def tor_with_residue_field(R: RingSpec, J, d: int) -> dict:
    """``dim Tor_i(R/J, k)`` two ways: Betti numbers of ``R/J`` and homology of ``F^k ⊗ R/J``."""
    direct = minimal_resolution(R, cyclic_presentation(R, J), d).betti()
    Fk = minimal_resolution(R, residue_field_presentation(R), d + 1)
    via_k = tor_dims_via_tensor(R, Fk, J, d)
    return {"betti": direct, "tensor": via_k}


# ---------------------------------------------------------------- complexity probe

@dataclass
class ComplexityReport:
    applicable: bool
    t: int
    mu: int
    betti: list
    bounds: dict  # 2m -> required lower bound
    ok: bool
    reason: str = ""


def complexity_probe(R: RingSpec, J, d: int, presentation_size: int | None = None) -> ComplexityReport:
    """Check ``beta_{2m}(R/J) >= C(t-1+m, m) * mu(R/J)`` for ``2m <= d``.

    Applies when ``ll(R/J) < ord(R)``; ``t`` is the number of minimal generators of ``I``.
    """
    from .localring import artinian_reduction, cohen_presentation
    cp = cohen_presentation(R)
    t = presentation_size if presentation_size is not None else cp.codim
    ll = artinian_reduction(R, J).loewy_length()
    if cp.ord is None or ll >= cp.ord:
        return ComplexityReport(False, t, 1, [], {}, True, f"ll = {ll} is not below ord(R) = {cp.ord}")
    betti = minimal_resolution(R, cyclic_presentation(R, J), d).betti()
    mu = betti[0]
    bounds = {2 * m: comb(t - 1 + m, m) * mu for m in range(d // 2 + 1)}
    ok = all(betti[k] >= b for k, b in bounds.items())
    return ComplexityReport(True, t, mu, betti, bounds, ok)


def min_entry_order(F: Resolution):
    return min((vec_ord(c) for D in F.diffs for c in D.cols if c), default=None)
