"""Chain-map certificates for Loewy lower bounds.

Given a superficial linear sop ``x`` that is a regular sequence, let ``A`` be the
Koszul complex on ``x`` over ``R`` and ``F`` a minimal resolution of ``k``.  If
``s`` lifts a socle element of ``R/(x)`` lying in ``m^n``, multiplication by
``s`` extends to a chain map ``sigma: F -> A`` with every entry in ``m^n``
whenever each lift can be chosen inside ``m^n A``.  Such a ``sigma`` up to
homological degree ``d`` shows that every nonzero module ``M`` with
``Tor_{d+1}(M, k) = 0`` has Loewy length at least ``n + 1``.

The builder stores ``sigma_i = W_i / D_i`` with polynomial numerators ``W_i`` and
unit denominators ``D_i`` (constants in the homogeneous case), so that every
check is polynomial arithmetic followed by a normal form.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from itertools import combinations

from .graded import (
    homogenizing_weights,
    monomials_of_weight,
    random_linear_sop,
    random_weighted_linear_sop,
    tangent_cone,
    weighted_degree,
)
from .linalg import solve
from .localring import NotZeroDimensional, artinian_reduction
from .presentation import RingSpec, parse_poly, parse_ring, serialize_ring
from .resolve import Mat, mat_apply, mat_mul, minimal_resolution, residue_field_presentation, is_zero_mod
from .ring import INF, Polynomial, format_poly, ord_in_Q
from .stdbasis import (
    DEFAULT_DEGREE_CAP,
    ConstrainedPreimage,
    buchberger,
    ExactComplexPreimage,
    StdBasis,
    standard_basis,
    submodule_intersection,
    syzygies,
    vec_add,
    vec_from_poly,
    vec_mul_poly,
    vec_ord,
)

log = logging.getLogger(__name__)

SCHEMA = 1


class InvalidCertificate(ValueError):
    pass


# ---------------------------------------------------------------- Koszul complex over R

def koszul_differential(sop, i: int, nvars: int, p: int) -> Mat:
    """``d_i : wedge^i R^d -> wedge^{i-1} R^d`` on the sequence ``sop``; bases are sorted subsets."""
    d = len(sop)
    src = list(combinations(range(d), i))
    tgt = {S: r for r, S in enumerate(combinations(range(d), i - 1))} if i >= 1 else {}
    cols = []
    for S in src:
        v = {}
        for pos, k in enumerate(S):
            T = S[:pos] + S[pos + 1:]
            f = sop[k] if pos % 2 == 0 else -sop[k]
            v = vec_add(v, vec_from_poly(f, tgt[T]), p)
        cols.append(v)
    return Mat(len(tgt), cols)


def koszul_rank(d: int, i: int) -> int:
    return len(list(combinations(range(d), i))) if 0 <= i <= d else 0


def order_in_ring(v: dict, IB) -> float:
    """m-adic order in ``R = Q/I`` of a vector: least order of the weak normal forms of its entries.

    For a ``ds`` standard basis the leading term of a nonzero normal form sits in
    its initial form, which is then outside ``in(I)``; hence its degree is the order in ``R``.
    """
    by_comp = {}
    for (c, m), a in v.items():
        by_comp.setdefault(c, {})[(0, m)] = a
    best = INF
    for w in by_comp.values():
        r = IB.nf(w) if IB is not None else w
        if r:
            best = min(best, min(sum(m) for (_, m) in r))
    return best


def matrix_order(M: Mat, IB) -> float:
    return min((order_in_ring(c, IB) for c in M.cols if c), default=INF)


# ---------------------------------------------------------------- weighted-graded lifting

class NotHomogeneous(ValueError):
    pass


class WeightedPreimage:
    """Constrained preimages for weighted-homogeneous data by linear algebra in one degree.

    With ``I``, the sop and the target homogeneous for positive weights ``w``,
    a solution of ``d v = target`` modulo ``I`` with ``v`` in ``m^n A_{i+1}``
    exists in the local ring iff it exists in the graded ring, and then it can be
    taken homogeneous.  The unknowns are the coefficients of monomials of the
    right weighted degree and standard degree ``>= n``; equations are
    coefficients of normal forms with respect to a Groebner basis of ``I``.
    """

    def __init__(self, sop, i1: int, n: int, R: RingSpec, weights, gb):
        self.R, self.w, self.gb, self.n = R, weights, gb, n
        self.sop = sop
        self.dA = koszul_differential(sop, i1, R.nvars, R.char)
        self.src = list(combinations(range(len(sop)), i1))
        self.tgt = list(combinations(range(len(sop)), i1 - 1))
        self.sop_w = [_poly_weight(f, weights) for f in sop]

    def _shift(self, S) -> int:
        return sum(self.sop_w[j] for j in S)

    def _nf(self, v: dict) -> dict:
        p = self.R.char
        by_comp = {}
        for (c, m), a in v.items():
            by_comp.setdefault(c, {})[(0, m)] = a
        out = {}
        for c, w in by_comp.items():
            for (_, m), a in (self.gb.reduce_full(w) if self.gb is not None else w).items():
                out[(c, m)] = a % p
        return {t: a for t, a in out.items() if a}

    def solve(self, target: dict):
        R, p = self.R, self.R.char
        one = Polynomial.constant(1, R.nvars, p)
        if not target:
            return {}, one
        degs = {weighted_degree(m, self.w) + self._shift(self.tgt[c]) for (c, m) in target}
        if len(degs) != 1:
            raise NotHomogeneous("target is not weighted homogeneous")
        D = degs.pop()
        rhs = self._nf(target)
        if not rhs:
            return {}, one
        unknowns, images = [], []
        for j, S in enumerate(self.src):
            for mu in monomials_of_weight(self.w, D - self._shift(S)):
                if sum(mu) < self.n:
                    continue
                img = self._nf(vec_mul_poly(self.dA.cols[j], Polynomial.monomial(mu, 1, p)))
                if img:
                    unknowns.append((j, mu))
                    images.append(img)
        keys = sorted(set(rhs) | {t for img in images for t in img})
        index = {t: r for r, t in enumerate(keys)}
        import numpy as np
        A = np.zeros((len(keys), len(unknowns)), dtype=np.int64)
        for c, img in enumerate(images):
            for t, a in img.items():
                A[index[t], c] = a
        b = np.zeros(len(keys), dtype=np.int64)
        for t, a in rhs.items():
            b[index[t]] = a
        x = solve(A, b, p) if unknowns else None
        if x is None:
            return None
        v = {}
        for (j, mu), c in zip(unknowns, x):
            if int(c):
                v[(j, mu)] = int(c)
        return v, one


def _poly_weight(f: Polynomial, w) -> int:
    degs = {weighted_degree(m, w) for m in f.terms}
    if len(degs) != 1:
        raise NotHomogeneous("polynomial is not weighted homogeneous")
    return degs.pop()


# ---------------------------------------------------------------- certificate data

@dataclass
class CertificateFailure:
    """The lifting stopped: no preimage inside ``m^n A`` at ``step`` (0 means no socle element of order ``n``)."""

    step: int
    reason: str
    residual: str = ""
    n: int | None = None
    sop: list = field(default_factory=list)

    ok = False

    def summary(self) -> dict:
        return {"ok": False, "failure_step": self.step, "reason": self.reason, "n": self.n}


@dataclass
class LiftCertificate:
    ring: RingSpec
    sop: list
    n: int
    d: int
    socle_elt: Polynomial
    F: list  # d_1 .. d_d of the resolution of k, as Mat
    W: list  # numerators W_0 .. W_d: F_i -> A_i
    D: list  # unit denominators D_0 .. D_d
    seed: int | None = None
    method: str = "exact"

    ok = True

    @property
    def min_entry_order(self) -> list:
        """Per ``sigma_i`` the least order in ``R`` of an entry (``inf`` for a zero matrix)."""
        R = self.ring
        IB = standard_basis(list(R.gens), nvars=R.nvars, p=R.char) if R.gens else None
        return [matrix_order(M, IB) for M in self.W]

    def summary(self) -> dict:
        return {"ok": True, "n": self.n, "d": self.d,
                "min_entry_order": [None if o == INF else int(o) for o in self.min_entry_order]}


def build_certificate(R: RingSpec, d: int = 4, rng_seed: int = 0, target_n: int | None = None,
                      sop=None, degree_cap=DEFAULT_DEGREE_CAP, method: str = "auto"):
    """Build ``sigma: F -> A`` up to degree ``d`` or return :class:`CertificateFailure`.

    ``method="graded"`` solves each lifting step by linear algebra in a single
    weighted degree (the ideal, sop and socle element are then weighted
    homogeneous); ``method="exact"`` lifts through the exactness of the Koszul
    complex with a truncated adjustment step; ``method="generators"`` solves
    directly in the submodule generated by ``x^a * columns`` with ``|a| = n``.
    All three decide the same question; ``auto`` picks ``graded`` when weights exist.
    """
    if method not in ("auto", "graded", "exact", "generators"):
        raise ValueError(f"unknown lifting method {method!r}")
    n_vars, p = R.nvars, R.char
    G = tangent_cone(R)
    weights = homogenizing_weights(R.gens, n_vars) if method in ("auto", "graded") else None
    if method == "graded" and weights is None:
        raise ValueError("the ideal is not homogeneous for any small positive weights")
    if sop is None:
        rng = random.Random(rng_seed)
        sop = random_weighted_linear_sop(G, weights, rng) if weights else random_linear_sop(G, rng)
    sop = list(sop)
    if weights is not None:
        try:
            for f in sop:
                _poly_weight(f, weights)
        except NotHomogeneous:
            if method == "graded":
                raise
            weights = None
    if method == "auto":
        method = "graded" if weights is not None else "exact"
    if len(sop) != G.dim:
        raise ValueError(f"expected {G.dim} sop elements, got {len(sop)}")
    try:
        Rbar = artinian_reduction(R, sop)
    except NotZeroDimensional as e:
        raise ValueError("not a system of parameters") from e
    # regular sequence check: for a superficial sop, length(R/(x)) = e(R) exactly when R is CM
    if sop and Rbar.length != G.hilbert.multiplicity:
        return CertificateFailure(0, f"sop is not a regular sequence: length {Rbar.length} "
                                     f"!= multiplicity {G.hilbert.multiplicity}", n=target_n, sop=sop)
    ll = Rbar.loewy_length()
    n = ll - 1 if target_n is None else target_n
    s = Rbar.socle_element_of_order(n, weights)
    if s is None:
        return CertificateFailure(0, f"no socle element of order {n} in R/(x) (Loewy length {ll})", n=n, sop=sop)

    F = minimal_resolution(R, residue_field_presentation(R), d, degree_cap=degree_cap)
    dR = len(sop)
    one = Polynomial.constant(1, n_vars, p)
    W = [Mat(1, [vec_from_poly(s)])]
    D = [one]
    IB = standard_basis(list(R.gens), nvars=n_vars, p=p) if R.gens else None
    gb = buchberger(list(R.gens), nvars=n_vars, p=p) if (R.gens and method == "graded") else None
    for i in range(d):
        dF = F.diffs[i]
        targets = [mat_apply(W[i], col, p, n_vars) for col in dF.cols]
        rows_next = koszul_rank(dR, i + 1)
        if rows_next == 0:
            for j, t in enumerate(targets):
                if not is_zero_mod(t, IB, W[i].nrows):
                    return CertificateFailure(i + 1, "sigma_i composed with d^F is not zero while A_{i+1} = 0",
                                              _fmt_vec(t, R), n, sop)
            W.append(Mat(0, [{} for _ in dF.cols]))
            D.append(D[-1])
            continue
        dA = koszul_differential(sop, i + 1, n_vars, p)
        if method == "graded":
            solver = WeightedPreimage(sop, i + 1, n, R, weights, gb)
        elif method == "exact":
            nxt = koszul_differential(sop, i + 2, n_vars, p).cols if i + 2 <= dR else []
            solver = ExactComplexPreimage(dA.cols, nxt, n, n_vars, p, dA.nrows, R.gens, degree_cap=degree_cap)
        else:
            solver = ConstrainedPreimage(dA.cols, n, n_vars, p, dA.nrows, R.gens, degree_cap=degree_cap)
        sols = []
        for j, t in enumerate(targets):
            res = solver.solve(t)
            if res is None:
                return CertificateFailure(i + 1, f"no preimage inside m^{n} A_{i + 1} for column {j}",
                                          _fmt_vec(t, R), n, sop)
            sols.append(res)
        units = [u for _, u in sols]
        cols = []
        for j, (v, _) in enumerate(sols):
            for k, u in enumerate(units):
                if k != j and u != one:
                    v = vec_mul_poly(v, u)
            cols.append(v)
        Dn = D[-1]
        for u in units:
            if u != one:
                Dn = Dn * u
        W.append(Mat(rows_next, cols))
        D.append(Dn)
    return LiftCertificate(R, sop, n, d, s, F.diffs[:d], W, D, rng_seed, method)


def _fmt_vec(v: dict, R: RingSpec) -> str:
    comps = {}
    for (c, m), a in v.items():
        comps.setdefault(c, {})[m] = a
    return "; ".join(f"[{c}] {format_poly(Polynomial(t, R.nvars, R.char), R.vars)}" for c, t in sorted(comps.items()))


# ---------------------------------------------------------------- independent verification

@dataclass
class VerificationReport:
    ok: bool
    checks: dict
    errors: list


def verify_certificate(cert: LiftCertificate, check_exactness: bool = True,
                       degree_cap=DEFAULT_DEGREE_CAP) -> VerificationReport:
    """Re-check a certificate from its data alone.

    Checks: ``F`` is a minimal complex resolving ``k`` (exactness recomputed at
    ``F_1 .. F_{d-1}``), the sop cuts ``R`` to finite length and is regular,
    the socle condition on ``s``, the chain law for every step, unit denominators
    and entry orders ``>= n``.
    """
    R = cert.ring
    n_vars, p = R.nvars, R.char
    errors, checks = [], {}
    IB = standard_basis(list(R.gens), nvars=n_vars, p=p) if R.gens else None
    zero = (0,) * n_vars

    # the sop and socle element
    G = tangent_cone(R)
    if len(cert.sop) != G.dim:
        errors.append("sop length differs from dim R")
    try:
        Rbar = artinian_reduction(R, cert.sop)
        regular = not cert.sop or Rbar.length == G.hilbert.multiplicity
        checks["sop_regular"] = regular
        if not regular:
            errors.append("sop is not a regular sequence")
        s = Rbar.reduce(cert.socle_elt)
        socle_ok = not s.is_zero() and all(
            Rbar.reduce(cert.socle_elt * Polynomial.var(v, n_vars, p)).is_zero() for v in range(n_vars))
        checks["socle"] = socle_ok
        if not socle_ok:
            errors.append("socle element is zero or not killed by m in R/(x)")
    except NotZeroDimensional:
        errors.append("sop does not cut R to finite length")
    checks["socle_order"] = order_in_ring(vec_from_poly(cert.socle_elt), IB) >= cert.n
    if not checks["socle_order"]:
        errors.append("socle element is not in m^n")

    # F resolves k
    F = cert.F
    d = cert.d
    if len(F) != d or len(cert.W) != d + 1 or len(cert.D) != d + 1:
        errors.append("matrix counts do not match the depth")
        return VerificationReport(False, checks, errors)
    k_ok = F[0].nrows == 1 if d else True
    if d:
        image = standard_basis([c for c in F[0].cols] + ([vec_from_poly(f) for f in R.gens]),
                               rank=1, nvars=n_vars, p=p, degree_cap=degree_cap)
        k_ok = k_ok and all(image.contains(vec_from_poly(Polynomial.var(v, n_vars, p))) for v in range(n_vars))
        k_ok = k_ok and all(m != zero for c in F[0].cols for (_, m) in c)
    checks["F_presents_k"] = k_ok
    if not k_ok:
        errors.append("d_1 does not present the residue field")
    minimal = all(m != zero for M in F for c in M.cols for (_, m) in c)
    checks["F_minimal"] = minimal
    if not minimal:
        errors.append("F is not minimal")
    cx = True
    for i in range(1, d):
        if F[i].nrows != F[i - 1].ncols:
            cx = False
            continue
        for col in mat_mul(F[i - 1], F[i], p, n_vars).cols:
            if not is_zero_mod(col, IB, F[i - 1].nrows):
                cx = False
    checks["F_complex"] = cx
    if not cx:
        errors.append("F is not a complex")
    if check_exactness and cx:
        exact = True
        for i in range(1, d):
            syz = syzygies(F[i - 1].cols, F[i - 1].nrows, n_vars, p, R.gens, degree_cap=degree_cap)
            img = standard_basis(list(F[i].cols) + [vec_from_poly(f, c) for c in range(F[i].nrows) for f in R.gens],
                                 rank=F[i].nrows, nvars=n_vars, p=p, degree_cap=degree_cap)
            if not all(img.contains(z) for z in syz):
                exact = False
                errors.append(f"F is not exact at F_{i}")
        checks["F_exact"] = exact

    # chain law D_i dA_{i+1} W_{i+1} = D_{i+1} W_i dF_{i+1}
    dR = len(cert.sop)
    units = all(Dk.constant_term() for Dk in cert.D)
    checks["denominators_units"] = units
    if not units:
        errors.append("a denominator is not a unit")
    W0 = cert.W[0]
    checks["sigma0"] = (W0.nrows == 1 and W0.ncols == 1 and cert.D[0].constant_term() != 0
                        and _same_mod(vec_mul_poly(vec_from_poly(cert.socle_elt), cert.D[0]), W0.cols[0], IB, 1, p))
    if not checks["sigma0"]:
        errors.append("sigma_0 is not multiplication by the socle element")
    law = True
    for i in range(d):
        Wi, Wn, dF = cert.W[i], cert.W[i + 1], F[i]
        lhs_cols = [vec_mul_poly(mat_apply(Wi, col, p, n_vars), cert.D[i + 1]) for col in dF.cols]
        if koszul_rank(dR, i + 1) == 0:
            rhs_cols = [{} for _ in dF.cols]
        else:
            dA = koszul_differential(cert.sop, i + 1, n_vars, p)
            if Wn.ncols != dF.ncols:
                law = False
                break
            rhs_cols = [vec_mul_poly(mat_apply(dA, c, p, n_vars), cert.D[i]) for c in Wn.cols]
        for a, b in zip(lhs_cols, rhs_cols):
            if not _same_mod(a, b, IB, max(1, koszul_rank(dR, i)), p):
                law = False
                errors.append(f"chain law fails at step {i + 1}")
                break
    checks["chain_law"] = law
    orders = [matrix_order(M, IB) for M in cert.W]
    checks["entry_orders"] = all(o >= cert.n for o in orders)
    if not checks["entry_orders"]:
        errors.append(f"entry orders {orders} fall below n = {cert.n}")
    return VerificationReport(not errors, checks, errors)


def _same_mod(a: dict, b: dict, IB, rank_: int, p: int) -> bool:
    """``a == b`` entrywise modulo the ideal with standard basis ``IB``."""
    return is_zero_mod(vec_add(a, b, p, -1), IB, rank_)


def certified_bound(cert: LiftCertificate, verification: VerificationReport | None = None) -> dict:
    """The statement a verified certificate proves."""
    if isinstance(cert, CertificateFailure):
        raise InvalidCertificate(f"no certificate: failure at step {cert.step}")
    verification = verification or verify_certificate(cert)
    if not verification.ok:
        raise InvalidCertificate("; ".join(verification.errors))
    R = cert.ring
    return {
        "statement": f"every nonzero R-module M with Tor^R_{cert.d + 1}(M, k) = 0 satisfies ll_R(M) >= {cert.n + 1}",
        "bound": cert.n + 1,
        "d": cert.d,
        "ring": serialize_ring(R),
        "sop": [R.fmt(f) for f in cert.sop],
        "seed": cert.seed,
        "char": R.char,
    }


# ---------------------------------------------------------------- serialization

def _mat_to_rows(M: Mat, R: RingSpec) -> dict:
    return {"nrows": M.nrows, "ncols": M.ncols,
            "rows": [[R.fmt(e) for e in row] for row in M.rows(R.nvars, R.char)]}


def _mat_from_rows(doc: dict, R: RingSpec) -> Mat:
    rows = [[R.poly(e) for e in row] for row in doc["rows"]]
    if doc["nrows"] == 0:
        return Mat(0, [{} for _ in range(doc["ncols"])])
    return Mat.from_rows(rows, doc["nrows"])


def certificate_to_json(cert: LiftCertificate) -> str:
    R = cert.ring
    doc = {
        "schema": SCHEMA,
        "kind": "loewylab.certificate",
        "ring": serialize_ring(R),
        "sop": [R.fmt(f) for f in cert.sop],
        "n": cert.n,
        "d": cert.d,
        "seed": cert.seed,
        "socle": R.fmt(cert.socle_elt),
        "F": [_mat_to_rows(M, R) for M in cert.F],
        "sigma_numerators": [_mat_to_rows(M, R) for M in cert.W],
        "sigma_denominators": [R.fmt(u) for u in cert.D],
    }
    return json.dumps(doc, indent=1)


def certificate_from_json(text: str) -> LiftCertificate:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA or doc.get("kind") != "loewylab.certificate":
        raise InvalidCertificate("unsupported certificate document")
    R = parse_ring(doc["ring"])
    return LiftCertificate(
        ring=R,
        sop=[R.poly(f) for f in doc["sop"]],
        n=doc["n"],
        d=doc["d"],
        socle_elt=R.poly(doc["socle"]),
        F=[_mat_from_rows(M, R) for M in doc["F"]],
        W=[_mat_from_rows(M, R) for M in doc["sigma_numerators"]],
        D=[R.poly(u) for u in doc["sigma_denominators"]],
        seed=doc.get("seed"),
    )


# ---------------------------------------------------------------- linearity defect

def linearity_defect_check(R: RingSpec, sop, i_max: int, j: int, degree_cap=DEFAULT_DEGREE_CAP) -> dict:
    """Compare ``d(A_{i+1}) ∩ m^{j+1} A_i`` with ``d(m^j A_{i+1})`` in the Koszul complex on ``sop``.

    Returns ``{i: bool}`` for ``0 <= i <= i_max``; equality is decided by mutual membership.
    """
    from .ring import monomials_of_degree
    n_vars, p = R.nvars, R.char
    dR = len(sop)
    out = {}
    for i in range(i_max + 1):
        r_i = koszul_rank(dR, i)
        if r_i == 0 or koszul_rank(dR, i + 1) == 0:
            out[i] = True
            continue
        dA = koszul_differential(sop, i + 1, n_vars, p)
        mj1 = [vec_from_poly(Polynomial.monomial(a, 1, p), c)
               for c in range(r_i) for a in monomials_of_degree(n_vars, j + 1)]
        left = submodule_intersection(dA.cols, mj1, r_i, n_vars, p, R.gens, degree_cap=degree_cap)
        right_gens = [vec_mul_poly(col, Polynomial.monomial(a, 1, p))
                      for col in dA.cols for a in monomials_of_degree(n_vars, j)]
        ideal_vecs = [vec_from_poly(f, c) for c in range(r_i) for f in R.gens]
        right = standard_basis(right_gens + ideal_vecs, rank=r_i, nvars=n_vars, p=p, degree_cap=degree_cap)
        out[i] = all(right.contains(v) for v in left.elems) and all(left.contains(v) for v in right_gens)
    return out
