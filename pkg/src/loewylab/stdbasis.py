"""Standard bases of submodules of free modules over k[x] or its localization at the origin.

Module elements are sparse dicts ``{(component, exponents): coeff}``; an ideal is
the rank-one case.  Orders are position-over-term (component 0 highest) over
``ds`` (local, Mora's ecart-driven normal form) or ``grevlex`` (global,
Buchberger).  Every computation in the local order holds in ``k[x]`` localized
at ``(x)``: a zero normal form means membership after multiplying by a unit.

When the caller knows ``m^N F`` is contained in the submodule, passing
``trunc=N`` drops all terms of degree ``>= N``.  For ideals the bound is found
automatically once the leading ideal becomes zero-dimensional.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass, field

from .ring import (
    DS,
    GREVLEX,
    MonomialOrder,
    Polynomial,
    ds_key,
    grevlex_key,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_quo,
    monomials_of_degree,
)

log = logging.getLogger(__name__)

DEFAULT_DEGREE_CAP = 80


class ResourceError(RuntimeError):
    """A standard basis computation exceeded its degree cap."""


# ---------------------------------------------------------------- vectors

def vec_from_polys(polys, offset: int = 0) -> dict:
    out = {}
    for i, f in enumerate(polys):
        for m, c in f.terms.items():
            out[(i + offset, m)] = c
    return out


def vec_from_poly(f: Polynomial, comp: int = 0) -> dict:
    return {(comp, m): c for m, c in f.terms.items()}


def polys_from_vec(v: dict, rank: int, nvars: int, p: int, offset: int = 0) -> list:
    parts = [dict() for _ in range(rank)]
    for (c, m), a in v.items():
        if offset <= c < offset + rank:
            parts[c - offset][m] = a
    return [Polynomial(t, nvars, p) for t in parts]


def vec_add(a: dict, b: dict, p: int, scale: int = 1) -> dict:
    out = dict(a)
    for t, c in b.items():
        v = (out.get(t, 0) + scale * c) % p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def vec_scale_shift(v: dict, c: int, m, p: int, comp_shift: int = 0) -> dict:
    return {(k[0] + comp_shift, mono_mul(k[1], m)): a * c % p for k, a in v.items()}


def vec_mul_poly(v: dict, f: Polynomial) -> dict:
    p = f.p
    out = {}
    for (c, m), a in v.items():
        for mf, b in f.terms.items():
            t = (c, mono_mul(m, mf))
            w = (out.get(t, 0) + a * b) % p
            if w:
                out[t] = w
            else:
                out.pop(t, None)
    return out


def vec_truncate(v: dict, n) -> dict:
    if n is None:
        return v
    return {t: c for t, c in v.items() if sum(t[1]) < n}


def vec_deg(v: dict) -> int:
    return max((sum(t[1]) for t in v), default=-1)


def vec_ord(v: dict):
    return min((sum(t[1]) for t in v), default=float("inf"))


def _term_key(order: MonomialOrder):
    mk = ds_key if order.is_local else grevlex_key

    def key(t):
        return (-t[0], mk(t[1]))

    return key


def leading(v: dict, order: MonomialOrder = DS):
    return max(v, key=_term_key(order))


# ---------------------------------------------------------------- normal forms

class _Elem:
    __slots__ = ("vec", "lt", "lc_inv", "ecart", "unit", "alive")

    def __init__(self, vec, key, p, unit=None):
        self.vec = vec
        self.lt = max(vec, key=key)
        self.lc_inv = pow(vec[self.lt], -1, p)
        self.ecart = vec_deg(vec) - sum(self.lt[1])
        self.unit = unit
        self.alive = True


def _reduce_step(h: dict, lt, g: _Elem, p: int, trunc):
    """``h - (lc(h)/lc(g)) x^a g`` in place; returns the multiplier ``(coef, a)``."""
    a = mono_quo(lt[1], g.lt[1])
    f = h[lt] * g.lc_inv % p
    for (c, m), v in g.vec.items():
        mm = tuple(x + y for x, y in zip(m, a))
        if trunc is not None and sum(mm) >= trunc:
            continue
        t = (c, mm)
        w = (h.get(t, 0) - f * v) % p
        if w:
            h[t] = w
        else:
            h.pop(t, None)
    return f, a


def _find_reducer(T, lt, local):
    c, m = lt
    best = None
    for g in T:
        if not g.alive:
            continue
        gc, gm = g.lt
        if gc == c and mono_divides(gm, m):
            if not local:
                return g
            if best is None or g.ecart < best.ecart:
                best = g
                if best.ecart == 0:
                    break
    return best


def _nf(h: dict, S, order: MonomialOrder, p: int, trunc=None, track_unit=False):
    """Mora's weak normal form of ``h`` against the elements ``S``.

    Returns ``(r, u)`` with ``u*h - r`` in the span of ``S`` (``u`` a unit, a dict
    ``{exponents: coeff}``; ``None`` unless ``track_unit``).
    """
    key = _term_key(order)
    local = order.is_local
    h = dict(vec_truncate(h, trunc))
    nvars = len(next(iter(h))[1]) if h else 0
    u = {(0,) * nvars: 1} if track_unit and h else None
    T = list(S)
    while h:
        lt = max(h, key=key)
        g = _find_reducer(T, lt, local)
        if g is None:
            return h, u
        if local:
            eh = vec_deg(h) - sum(lt[1])
            if g.ecart > eh:
                T.append(_Elem(dict(h), key, p, unit=dict(u) if u is not None else None))
        f, a = _reduce_step(h, lt, g, p, trunc)
        if u is not None and g.unit is not None:
            for m, v in g.unit.items():
                mm = mono_mul(m, a)
                if trunc is not None and sum(mm) >= trunc:
                    continue
                w = (u.get(mm, 0) - f * v) % p
                if w:
                    u[mm] = w
                else:
                    u.pop(mm, None)
    return h, u


def _reduce_full(h: dict, S, order: MonomialOrder, p: int, trunc=None) -> dict:
    """Reduce every term; requires a global order or a truncation degree."""
    if order.is_local and trunc is None:
        raise ValueError("full reduction in a local order needs a truncation degree")
    key = _term_key(order)
    h = dict(vec_truncate(h, trunc))
    out = {}
    while h:
        lt = max(h, key=key)
        g = _find_reducer(S, lt, False)
        if g is None:
            out[lt] = h.pop(lt)
            continue
        _reduce_step(h, lt, g, p, trunc)
    return out


def mora_nf(f, G, order: MonomialOrder = DS, p: int | None = None):
    """Weak normal form of ``f`` against the list ``G`` (vectors or polynomials)."""
    as_poly = isinstance(f, Polynomial)
    if as_poly:
        p = f.p
        fv = vec_from_poly(f)
        Gv = [vec_from_poly(g) for g in G]
    else:
        fv, Gv = f, G
        if p is None:
            raise ValueError("pass p for vector input")
    key = _term_key(order)
    S = [_Elem(dict(g), key, p) for g in Gv if g]
    r, _ = _nf(fv, S, order, p)
    if as_poly:
        return polys_from_vec(r, 1, f.nvars, p)[0]
    return r


# ---------------------------------------------------------------- standard bases

@dataclass
class StdBasis:
    """A standard basis (local order) or Groebner basis (global order)."""

    order: MonomialOrder
    rank: int
    nvars: int
    p: int
    elems: list = field(default_factory=list)
    trunc: int | None = None

    def __post_init__(self):
        key = _term_key(self.order)
        self._elems = [_Elem(v, key, self.p) for v in self.elems]

    @property
    def leads(self):
        return [e.lt for e in self._elems]

    def leading_monomials(self, comp: int = 0) -> list:
        return [m for c, m in self.leads if c == comp]

    def polys(self) -> list:
        if self.rank != 1:
            raise ValueError("not an ideal")
        return [polys_from_vec(v, 1, self.nvars, self.p)[0] for v in self.elems]

    def nf(self, v) -> dict:
        if isinstance(v, Polynomial):
            v = vec_from_poly(v)
        return _nf(v, self._elems, self.order, self.p, self.trunc)[0]

    def nf_with_unit(self, v):
        """``(r, u)`` with ``u*v - r`` in the submodule; ``u`` a unit as ``{exponents: coeff}``."""
        r, u = _nf(v, self._elems, self.order, self.p, self.trunc, track_unit=True)
        if u is None:
            u = {(0,) * self.nvars: 1}
        return r, u

    def reduce_full(self, v) -> dict:
        if isinstance(v, Polynomial):
            v = vec_from_poly(v)
        return _reduce_full(v, self._elems, self.order, self.p, self.trunc)

    def contains(self, v) -> bool:
        return not self.nf(v)

    def is_unit_ideal(self) -> bool:
        zero = (0,) * self.nvars
        return any(m == zero for _, m in self.leads)


def _update_pairs(S, new_idx, pairs, counter, rank1):
    """Gebauer-Moeller style update; pairs are heap items (key, id, i, j)."""
    f = S[new_idx]
    fc, fm = f.lt
    live = [i for i in range(new_idx) if S[i].alive and S[i].lt[0] == fc]
    # drop old pairs whose lcm is strictly divisible by lt(f) (chain criterion B_k)
    kept = []
    for item in pairs:
        _, _, i, j = item
        gi, gj = S[i], S[j]
        if not (gi.alive and gj.alive):
            continue
        if gi.lt[0] == fc:
            L = mono_lcm(gi.lt[1], gj.lt[1])
            if mono_divides(fm, L) and L != mono_lcm(gi.lt[1], fm) and L != mono_lcm(gj.lt[1], fm):
                continue
        kept.append(item)
    pairs[:] = kept
    heapq.heapify(pairs)
    by_lcm = {}
    for i in live:
        L = mono_lcm(S[i].lt[1], fm)
        by_lcm.setdefault(L, []).append(i)
    minimal = []
    for L in sorted(by_lcm, key=lambda m: (sum(m), grevlex_key(m))):
        if not any(mono_divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        idxs = by_lcm[L]
        if rank1 and any(mono_mul(S[i].lt[1], fm) == L for i in idxs):
            continue  # coprime leading monomials
        i = min(idxs)
        heapq.heappush(pairs, ((sum(L), next(counter)), next(counter), i, new_idx))


def _staircase_top(lead_monos, nvars):
    """Max degree of a monomial outside the ideal ``lead_monos`` (None if infinite)."""
    for v in range(nvars):
        if not any(all(e == 0 for k, e in enumerate(m) if k != v) for m in lead_monos):
            return None
    if any(sum(m) == 0 for m in lead_monos):
        return -1
    top = 0
    stack = [(0,) * nvars]
    seen = set(stack)
    while stack:
        m = stack.pop()
        top = max(top, sum(m))
        for v in range(nvars):
            mm = m[:v] + (m[v] + 1,) + m[v + 1:]
            if mm in seen:
                continue
            seen.add(mm)
            if not any(mono_divides(g, mm) for g in lead_monos):
                stack.append(mm)
    return top


def standard_basis(gens, order: MonomialOrder = DS, rank: int | None = None, nvars: int | None = None,
                   p: int | None = None, trunc: int | None = None,
                   degree_cap: int | None = DEFAULT_DEGREE_CAP) -> StdBasis:
    """Standard basis of the submodule generated by ``gens`` (polynomials or vectors)."""
    gens = list(gens)
    if gens and isinstance(gens[0], Polynomial):
        nvars, p = gens[0].nvars, gens[0].p
        rank = 1
        gens = [vec_from_poly(g) for g in gens]
    if nvars is None or p is None:
        raise ValueError("nvars and p are required for vector input")
    if rank is None:
        rank = 1 + max((t[0] for g in gens for t in g), default=0)
    key = _term_key(order)
    rank1 = rank == 1
    auto_trunc = rank1 and order.is_local
    S: list[_Elem] = []
    pairs: list = []
    counter = itertools.count()

    def add(h):
        nonlocal trunc
        e = _Elem(h, key, p)
        if degree_cap is not None and vec_deg(h) > degree_cap:
            raise ResourceError(f"standard basis element of degree {vec_deg(h)} exceeds cap {degree_cap}")
        S.append(e)
        # elements whose leading term is now redundant stay for pair bookkeeping
        _update_pairs(S, len(S) - 1, pairs, counter, rank1)
        if auto_trunc and sum(1 for c in e.lt[1] if c) <= 1:
            if sum(e.lt[1]) == 0:
                return True
            top = _staircase_top([g.lt[1] for g in S if g.alive], nvars)
            if top is not None and (trunc is None or top + 1 < trunc):
                trunc = top + 1
                for g in S:
                    if not g.alive:
                        continue
                    v = vec_truncate(g.vec, trunc)
                    if not v:
                        g.alive = False
                    elif len(v) != len(g.vec):
                        g.vec = v
                        g.ecart = vec_deg(v) - sum(g.lt[1])
        return False

    for g in gens:
        g = vec_truncate({t: c % p for t, c in g.items() if c % p}, trunc)
        if not g:
            continue
        h, _ = _nf(g, [e for e in S if e.alive], order, p, trunc)
        if h and add(h):
            return StdBasis(order, 1, nvars, p, [{(0, (0,) * nvars): 1}], None)
    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        gi, gj = S[i], S[j]
        if not (gi.alive and gj.alive):
            continue
        L = mono_lcm(gi.lt[1], gj.lt[1])
        if trunc is not None and sum(L) >= trunc:
            continue
        ai, aj = mono_quo(L, gi.lt[1]), mono_quo(L, gj.lt[1])
        s = vec_scale_shift(gi.vec, gi.lc_inv, ai, p)
        s = vec_add(s, vec_scale_shift(gj.vec, gj.lc_inv, aj, p), p, -1)
        s = vec_truncate(s, trunc)
        if not s:
            continue
        h, _ = _nf(s, [e for e in S if e.alive], order, p, trunc)
        if h and add(h):
            return StdBasis(order, 1, nvars, p, [{(0, (0,) * nvars): 1}], None)
    live = [e for e in S if e.alive]
    # minimalize: drop elements whose leading term another element divides
    keep = []
    for idx, e in enumerate(live):
        c, m = e.lt
        redundant = False
        for jdx, f in enumerate(live):
            if jdx == idx or f.lt[0] != c or not mono_divides(f.lt[1], m):
                continue
            if f.lt[1] != m or jdx < idx:
                redundant = True
                break
        if not redundant:
            keep.append(e)
    elems = [e.vec for e in keep]
    if rank1 and trunc is not None:
        # m^trunc lies in the ideal; report its monomials outside the leading ideal
        leads = [e.lt[1] for e in keep]
        for a in monomials_of_degree(nvars, trunc):
            if not any(mono_divides(m, a) for m in leads):
                elems.append({(0, a): 1})
    return StdBasis(order, rank, nvars, p, elems, trunc)


def buchberger(gens, order: MonomialOrder = GREVLEX, **kw) -> StdBasis:
    """Groebner basis in a global order."""
    if order.is_local:
        raise ValueError("buchberger needs a global order")
    return standard_basis(gens, order, **kw)


# ---------------------------------------------------------------- module operations over R = Q/I

def _ideal_vectors(ideal, rank, offset=0):
    return [vec_from_poly(f, c + offset) for c in range(rank) for f in ideal]


def syzygies(gens, rank: int, nvars: int, p: int, ideal=(), order: MonomialOrder = DS,
             trunc=None, degree_cap=DEFAULT_DEGREE_CAP) -> list:
    """Generators of ``{w in R^s : sum_j w_j gens_j = 0 in R^rank}`` with ``R = Q/ideal``.

    Uses the doubled module ``(g_j, e_j)``, ``(f e_c, 0)`` under position-over-term
    order with the first ``rank`` components highest.
    """
    s = len(gens)
    doubled = []
    for j, g in enumerate(gens):
        v = dict(g)
        v[(rank + j, (0,) * nvars)] = 1
        doubled.append(v)
    doubled += _ideal_vectors(ideal, rank)
    doubled += _ideal_vectors(ideal, s, rank)
    B = standard_basis(doubled, order, rank + s, nvars, p, trunc=trunc, degree_cap=degree_cap)
    out = []
    for v in B.elems:
        if all(t[0] >= rank for t in v):
            w = {(c - rank, m): a for (c, m), a in v.items()}
            out.append(w)
    return out


class ConstrainedPreimage:
    """Solver for ``sum_j v_j columns_j = u * target`` modulo ``ideal`` with every ``v_j`` in ``m^n``.

    The submodule ``m^n * (columns)`` is generated by ``x^a * columns_j`` with
    ``|a| = n``; its standard basis (with the coefficient block tracked in extra
    components) is computed once and reused for every target.
    """

    def __init__(self, columns, n: int, nvars: int, p: int, rank: int, ideal=(),
                 order: MonomialOrder = DS, degree_cap=DEFAULT_DEGREE_CAP):
        self.s, self.nvars, self.p, self.rank = len(columns), nvars, p, rank
        doubled = []
        for j, col in enumerate(columns):
            for a in monomials_of_degree(nvars, n):
                v = vec_scale_shift(col, 1, a, p)
                v[(rank + j, a)] = 1
                doubled.append(v)
        doubled += _ideal_vectors(ideal, rank)
        self.basis = standard_basis(doubled, order, rank + self.s, nvars, p, degree_cap=degree_cap)

    def solve(self, target: dict):
        """``(v, u)`` with ``u`` a unit polynomial (1 whenever no unit was needed), or ``None``."""
        nvars, p, rank = self.nvars, self.p, self.rank
        if not target:
            return {}, Polynomial.constant(1, nvars, p)
        r, u = self.basis.nf_with_unit(dict(target))
        if any(t[0] < rank for t in r):
            return None
        # u*target - r lies in the module; r = (0, w) so sum_j (-w_j) col_j = u*target
        v = {(c - rank, m): (-a) % p for (c, m), a in r.items()}
        upoly = Polynomial(u, nvars, p)
        if len(upoly.terms) == 1 and upoly.constant_term():
            inv = pow(upoly.constant_term(), -1, p)
            v = {t: a * inv % p for t, a in v.items()}
            upoly = Polynomial.constant(1, nvars, p)
        return v, upoly


class ExactComplexPreimage:
    """Constrained preimages along an exact complex ``A_{i+2} -> A_{i+1} -> A_i`` over ``R = Q/ideal``.

    A solution of ``d v = u * target`` inside ``m^n A_{i+1}`` exists iff some
    unconstrained solution ``a0`` lies in ``m^n A_{i+1} + d(A_{i+2}) + ideal*A_{i+1}``.
    That membership only matters modulo ``m^n`` in every component, so the second
    standard basis is computed with truncation ``n`` (a finite-dimensional problem).
    ``next_columns`` must generate the kernel of ``columns`` modulo the ideal.
    The returned ``v`` lies in ``m^n A_{i+1}`` modulo the ideal.
    """

    def __init__(self, columns, next_columns, n: int, nvars: int, p: int, rank: int, ideal=(),
                 order: MonomialOrder = DS, degree_cap=DEFAULT_DEGREE_CAP):
        self.s, self.n, self.nvars, self.p, self.rank = len(columns), n, nvars, p, rank
        self.next_columns = list(next_columns)
        first = []
        for j, col in enumerate(columns):
            v = dict(col)
            v[(rank + j, (0,) * nvars)] = 1
            first.append(v)
        first += _ideal_vectors(ideal, rank)
        self.lift_basis = standard_basis(first, order, rank + self.s, nvars, p, degree_cap=degree_cap)
        second = []
        for k, col in enumerate(self.next_columns):
            v = dict(col)
            v[(self.s + k, (0,) * nvars)] = 1
            second.append(v)
        second += _ideal_vectors(ideal, self.s)
        self.adjust_basis = (standard_basis(second, order, self.s + len(self.next_columns), nvars, p,
                                            trunc=n, degree_cap=degree_cap) if n > 0 else None)

    def solve(self, target: dict):
        nvars, p, rank, s = self.nvars, self.p, self.rank, self.s
        one = Polynomial.constant(1, nvars, p)
        if not target:
            return {}, one
        r, u1 = self.lift_basis.nf_with_unit(dict(target))
        if any(t[0] < rank for t in r):
            return None
        # u1*target = d(a0) with a0 = -w
        a0 = {(c - rank, m): (-a) % p for (c, m), a in r.items()}
        u = Polynomial(u1, nvars, p)
        if self.adjust_basis is None or not a0:
            return _normalize_unit(a0, u, p)
        r2, u2 = self.adjust_basis.nf_with_unit(dict(a0))
        if any(t[0] < s for t in r2):
            return None
        # u2*a0 + d(w2) lies in m^n A + ideal*A and has image u2*u1*target
        u2p = Polynomial(u2, nvars, p)
        v = vec_mul_poly(a0, u2p)
        for (c, m), a in r2.items():
            v = vec_add(v, vec_scale_shift(self.next_columns[c - s], a, m, p), p)
        return _normalize_unit(v, u * u2p, p)


def _normalize_unit(v, u, p):
    if len(u.terms) == 1 and u.constant_term():
        inv = pow(u.constant_term(), -1, p)
        return {t: a * inv % p for t, a in v.items() if a * inv % p}, Polynomial.constant(1, u.nvars, p)
    return v, u


def preimage_in_submodule(target: dict, columns, n: int, nvars: int, p: int, rank: int, ideal=(),
                          order: MonomialOrder = DS, degree_cap=DEFAULT_DEGREE_CAP):
    """One-shot :class:`ConstrainedPreimage`: ``(v, u)`` or ``None``."""
    if not target:
        return {}, Polynomial.constant(1, nvars, p)
    return ConstrainedPreimage(columns, n, nvars, p, rank, ideal, order, degree_cap).solve(target)


def submodule_intersection(A, B, rank: int, nvars: int, p: int, ideal=(), order: MonomialOrder = DS,
                           degree_cap=DEFAULT_DEGREE_CAP) -> StdBasis:
    """Standard basis of ``(A + I F) ∩ (B + I F)`` inside ``F = Q^rank``."""
    doubled = []
    for a in A:
        doubled.append({**a, **{(c + rank, m): v for (c, m), v in a.items()}})
    doubled += [dict(b) for b in B]
    doubled += _ideal_vectors(ideal, rank)
    doubled += _ideal_vectors(ideal, rank, rank)
    S = standard_basis(doubled, order, 2 * rank, nvars, p, degree_cap=degree_cap)
    gens = [{(c - rank, m): a for (c, m), a in v.items()} for v in S.elems if all(t[0] >= rank for t in v)]
    return standard_basis(gens + _ideal_vectors(ideal, rank), order, rank, nvars, p, degree_cap=degree_cap)


def minimalize_generators(gens, extra=(), order: MonomialOrder = DS, degree_cap=DEFAULT_DEGREE_CAP) -> list:
    """A minimal generating subset of the ideal ``(gens)`` in the local ring ``Q/(extra)``.

    Drops ``f`` whenever ``f`` lies in ``(other kept gens) + m*(gens) + (extra)``.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    n, p = gens[0].nvars, gens[0].p
    mI = [g * Polynomial.var(v, n, p) for g in gens for v in range(n)]
    keep = list(gens)
    i = 0
    while i < len(keep):
        others = keep[:i] + keep[i + 1:]
        B = standard_basis(others + mI + list(extra), order, degree_cap=degree_cap)
        if B.contains(keep[i]):
            keep.pop(i)
        else:
            i += 1
    return keep
