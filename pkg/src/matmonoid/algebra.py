"""Sparse elements of the matrix-monoid algebra over exact rationals, the
closed-form unit of each rank ideal, the subspace idempotents that
decompose it, and exhaustive unit verification.

Conventions: the unit of the ideal of rank <= r matrices is

    eta_r = q^(-(n-1)r) mu(r) sum_m mu(srk m) [n-1-rank m choose r-rank m]_q [m]

summed over semi-idempotent matrices m of rank <= r, where
mu(i) = (-1)^i q^(i choose 2) and srk is the stable rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from . import matfq, subgrpd
from .errors import BudgetExceededError
from .exact import rat_to_str
from .matfq import (MatFq, enumerate_matrices, enumerate_semi_idempotents,
                    identity, mat_mul, mat_rank, stable_rank)
from .qcomb import gl_order, mu, q_binomial

MAX_PRODUCT_PAIRS = 10 ** 8
GL_ENUMERATION_LIMIT = 10 ** 4
_GENERATION_CHECK_LIMIT = 50000


class AlgElem:
    """Sparse rational combination of basis matrices, keyed by the canonical
    row-major byte encoding."""

    __slots__ = ("n", "ctx", "terms")

    def __init__(self, n, ctx, terms=None):
        self.n = n
        self.ctx = ctx
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[key] = c

    def coeff(self, m):
        key = m.entries if isinstance(m, MatFq) else m
        return self.terms.get(key, Fraction(0))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, AlgElem) and self.n == other.n
                and self.ctx.q == other.ctx.q and self.terms == other.terms)

    def __repr__(self):
        return "AlgElem(n=%d, q=%d, %d terms)" % (self.n, self.ctx.q, len(self.terms))

    def support(self):
        """Deterministically ordered support as MatFq values."""
        return [MatFq(self.ctx, self.n, self.n, k) for k in sorted(self.terms)]


def alg_zero(n, ctx):
    return AlgElem(n, ctx)


def alg_basis(m):
    """The basis element [m]."""
    return AlgElem(m.rows, m.ctx, {m.entries: Fraction(1)})


def alg_from_terms(n, ctx, terms):
    return AlgElem(n, ctx, terms)


def alg_add(a, b):
    if a.n != b.n or a.ctx.q != b.ctx.q:
        raise ValueError("mismatched algebras")
    terms = dict(a.terms)
    for key, c in b.terms.items():
        nc = terms.get(key, Fraction(0)) + c
        if nc:
            terms[key] = nc
        else:
            terms.pop(key, None)
    return AlgElem(a.n, a.ctx, terms)


def alg_scale(a, c):
    c = Fraction(c)
    if not c:
        return alg_zero(a.n, a.ctx)
    return AlgElem(a.n, a.ctx, {k: c * v for k, v in a.terms.items()})


def alg_sub(a, b):
    return alg_add(a, alg_scale(b, -1))


def alg_mul(a, b, pair_budget=MAX_PRODUCT_PAIRS):
    """Convolution product: [x][y] = [xy] extended bilinearly."""
    if a.n != b.n or a.ctx.q != b.ctx.q:
        raise ValueError("mismatched algebras")
    pairs = len(a.terms) * len(b.terms)
    if pairs > pair_budget:
        raise BudgetExceededError(
            "product of %d x %d terms exceeds the pair budget" % (len(a.terms), len(b.terms)))
    n, ctx = a.n, a.ctx
    out = {}
    amats = [(MatFq(ctx, n, n, k), c) for k, c in a.terms.items()]
    for bkey, cb in b.terms.items():
        bm = MatFq(ctx, n, n, bkey)
        for am, ca in amats:
            key = mat_mul(am, bm).entries
            nc = out.get(key, Fraction(0)) + ca * cb
            if nc:
                out[key] = nc
            else:
                out.pop(key, None)
    return AlgElem(n, ctx, out)


def transpose_antiinvolution(a):
    """[x] -> [x transposed], linearly."""
    out = {}
    for key, c in a.terms.items():
        tk = matfq.transpose(MatFq(a.ctx, a.n, a.n, key)).entries
        out[tk] = out.get(tk, Fraction(0)) + c
    return AlgElem(a.n, a.ctx, out)


def alg_to_json(a):
    items = []
    for key in sorted(a.terms):
        m = MatFq(a.ctx, a.n, a.n, key)
        items.append({"matrix": m.to_rows(), "coeff": rat_to_str(a.terms[key])})
    return {"n": a.n, "q": a.ctx.q, "terms": items}


def e_matrix(n, r, ctx):
    """The standard rank-r idempotent diag(I_r, 0)."""
    ent = bytearray(n * n)
    for i in range(r):
        ent[i * n + i] = 1
    return MatFq(ctx, n, n, bytes(ent))


def _semi_idempotent_data(n, ctx, max_rank, budget):
    """List of (key, rank, stable_rank) over semi-idempotents of rank <= max_rank."""
    out = []
    for m in enumerate_semi_idempotents(n, ctx, max_rank, budget):
        out.append((m.entries, mat_rank(m), stable_rank(m)))
    return out


def eta_r(n, ctx, r, budget=matfq.DEFAULT_ENUM_BUDGET):
    """Closed-form unit of the ideal of rank <= r matrices (0 <= r <= n-1);
    for r = n the unit of the whole algebra, [identity], is returned."""
    if not 0 <= r <= n:
        raise ValueError("0 <= r <= n required")
    if r == n:
        return alg_basis(identity(ctx, n))
    q = ctx.q
    scale = Fraction(mu(r, q), q ** ((n - 1) * r))
    terms = {}
    for key, rank, srk in _semi_idempotent_data(n, ctx, r, budget):
        terms[key] = scale * mu(srk, q) * q_binomial(n - 1 - rank, r - rank, q)
    return AlgElem(n, ctx, terms)


def eta_r_alt(n, ctx, r, budget=matfq.DEFAULT_ENUM_BUDGET):
    """The same unit through the rank-layered double sum; must agree with
    eta_r exactly."""
    if not 0 <= r <= n - 1:
        raise ValueError("0 <= r <= n-1 required")
    q = ctx.q
    data = _semi_idempotent_data(n, ctx, r, budget)
    terms = {}
    for j in range(r + 1):
        layer = Fraction(1, q ** ((n - j) * j) * mu(j, q))
        for key, rank, srk in data:
            if rank > j:
                continue
            c = layer * mu(srk, q) * q_binomial(n - rank, j - rank, q)
            if c:
                terms[key] = terms.get(key, Fraction(0)) + c
    return AlgElem(n, ctx, terms)


def eta_corank1(n, ctx, budget=matfq.DEFAULT_ENUM_BUDGET):
    """Corank-1 simplification: -mu(n)^(-1) sum over singular semi-idempotents
    of mu(srk m) [m]; must equal eta_r at r = n-1."""
    q = ctx.q
    scale = -Fraction(1, mu(n, q))
    terms = {}
    for key, rank, srk in _semi_idempotent_data(n, ctx, n - 1, budget):
        terms[key] = scale * mu(srk, q)
    return AlgElem(n, ctx, terms)


def eta_W(w, budget=matfq.DEFAULT_ENUM_BUDGET):
    """Subspace idempotent: scaled signed sum over semi-idempotent T with
    image inside W."""
    ctx = w.ctx
    n = w.n
    q = ctx.q
    dim = w.r
    count = q ** (dim * n)
    if count > budget:
        raise BudgetExceededError("eta_W enumeration of %d matrices over budget" % count)
    scale = Fraction(1, q ** (dim * (n - dim)) * mu(dim, q))
    vectors = w.elements()
    terms = {}
    from itertools import product as iproduct
    for cols in iproduct(vectors, repeat=n):
        ent = bytearray(n * n)
        for j, col in enumerate(cols):
            for i in range(n):
                ent[i * n + j] = col[i]
        t = MatFq(ctx, n, n, bytes(ent))
        if matfq.is_semi_idempotent(t):
            terms[t.entries] = scale * mu(stable_rank(t), q)
    return AlgElem(n, ctx, terms)


def _check_complement(w, u):
    if w.n != u.n or w.ctx.q != u.ctx.q:
        raise ValueError("subspaces live in different spaces")
    if w.r + u.r != w.n or subgrpd.intersect(w, u).r != 0:
        raise ValueError("not a complement")


def _embedding_matrices(w, u):
    """Change-of-basis for V = W + U: columns are W's basis then U's basis."""
    ctx = w.ctx
    n = w.n
    cols = [list(row) for row in w.basis.to_rows()] + \
           [list(row) for row in u.basis.to_rows()]
    change = matfq.transpose(matfq.from_rows(ctx, cols))
    return change, matfq.mat_inverse(change)


def _extend_by_zero(t, change, change_inv, n, ctx):
    """i_{W,U}(T): act by T on W, by zero on U, in standard coordinates."""
    r = t.rows
    block = bytearray(n * n)
    for i in range(r):
        for j in range(r):
            block[i * n + j] = t[i, j]
    emb = MatFq(ctx, n, n, bytes(block))
    return mat_mul(mat_mul(change, emb), change_inv)


def epsilon_WU(w, u):
    """Idempotent supported on all semi-idempotent maps W -> W extended by
    zero on the complement U."""
    return _epsilon(w, u, singular_only=False)


def epsilon_star_WU(w, u):
    """Unit of the subalgebra spanned by the singular maps W -> W extended
    by zero on U."""
    return _epsilon(w, u, singular_only=True)


def _epsilon(w, u, singular_only):
    _check_complement(w, u)
    ctx = w.ctx
    n = w.n
    r = w.r
    q = ctx.q
    change, change_inv = _embedding_matrices(w, u)
    sign = Fraction(-1 if singular_only else 1, mu(r, q))
    terms = {}
    for t in enumerate_semi_idempotents(r, ctx):
        rank = mat_rank(t)
        if singular_only and rank == r:
            continue
        full = _extend_by_zero(t, change, change_inv, n, ctx)
        c = sign * mu(stable_rank(t), q)
        key = full.entries
        terms[key] = terms.get(key, Fraction(0)) + c
    return AlgElem(n, ctx, terms)


def E_prime_W(w):
    """Sum of the subspace idempotents over all subspaces of W."""
    ctx = w.ctx
    total = alg_zero(w.n, ctx)
    for sub in subgrpd.all_subspaces(w.n, ctx):
        if sub.r <= w.r and w.contains_subspace(sub):
            total = alg_add(total, eta_W(sub))
    return total


def E_prime_W_direct(w):
    """The same element from its direct description: scaled signed sum over
    semi-idempotent T with image exactly W."""
    ctx = w.ctx
    n = w.n
    q = ctx.q
    scale = Fraction(1, mu(w.r, q))
    terms = {}
    from itertools import product as iproduct
    vectors = w.elements()
    for cols in iproduct(vectors, repeat=n):
        ent = bytearray(n * n)
        for j, col in enumerate(cols):
            for i in range(n):
                ent[i * n + j] = col[i]
        t = MatFq(ctx, n, n, bytes(ent))
        if mat_rank(t) != w.r or not matfq.is_semi_idempotent(t):
            continue
        terms[t.entries] = scale * mu(stable_rank(t), q)
    return AlgElem(n, ctx, terms)


def _find_primitive(ctx):
    q = ctx.q
    for g in range(2, q):
        seen = set()
        x = 1
        for _ in range(q - 1):
            x = ctx.mul(x, g)
            seen.add(x)
        if len(seen) == q - 1:
            return g
    raise AssertionError("no primitive element found")


def gl_generators(n, ctx):
    """Small generating set of the invertible matrices: an n-cycle
    permutation, a transvection, and (q > 2) a primitive diagonal.  The
    closure is verified by breadth-first search while the group order is
    within the check limit."""
    if n == 0:
        return []
    gens = []
    if n > 1:
        perm = bytearray(n * n)
        for i in range(n):
            perm[((i + 1) % n) * n + i] = 1
        gens.append(MatFq(ctx, n, n, bytes(perm)))
        trans = bytearray(identity(ctx, n).entries)
        trans[0 * n + 1] = 1
        gens.append(MatFq(ctx, n, n, bytes(trans)))
    if ctx.q > 2:
        diag = bytearray(identity(ctx, n).entries)
        diag[0] = _find_primitive(ctx)
        gens.append(MatFq(ctx, n, n, bytes(diag)))
    order = gl_order(n, ctx.q)
    if order <= _GENERATION_CHECK_LIMIT:
        seen = {identity(ctx, n).entries}
        frontier = [identity(ctx, n)]
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    prod = mat_mul(m, g)
                    if prod.entries not in seen:
                        seen.add(prod.entries)
                        nxt.append(prod)
            frontier = nxt
        if len(seen) != order:
            raise AssertionError("generating set failed closure check")
    return gens


def _conjugation_invariant_under(u, g):
    """Whether [g^-1] u [g] = u, checked term by term."""
    ctx = u.ctx
    ginv = matfq.mat_inverse(g)
    for key, c in u.terms.items():
        t = MatFq(ctx, u.n, u.n, key)
        conj = mat_mul(mat_mul(ginv, t), g)
        if u.terms.get(conj.entries) != c:
            return False
    return True


def kuhn_check(u, r, budget=matfq.DEFAULT_ENUM_BUDGET):
    """Unit criterion for the rank-r ideal: conjugation invariance plus
    absorbing the standard rank-r idempotent from the left."""
    n, ctx = u.n, u.ctx
    e = alg_basis(e_matrix(n, r, ctx))
    if alg_mul(u, e) != e:
        return False
    if gl_order(n, ctx.q) <= GL_ENUMERATION_LIMIT:
        group = matfq.enumerate_gl(n, ctx, budget)
    else:
        group = gl_generators(n, ctx)
    return all(_conjugation_invariant_under(u, g) for g in group)


@dataclass
class UnitReport:
    passed: bool
    exhaustive: bool
    checked: int
    counterexample: tuple | None = None
    warning: str | None = None


def _rank_le_count(n, r, q):
    """Number of n x n matrices over F_q of rank <= r."""
    total = 0
    for k in range(r + 1):
        cnt = q_binomial(n, k, q)
        for i in range(k):
            cnt *= q ** n - q ** i
        total += cnt
    return total


def _verify_unit_python(u, r, targets):
    n, ctx = u.n, u.ctx
    supp = [(MatFq(ctx, n, n, k), c) for k, c in u.terms.items()]
    checked = 0
    for m in targets:
        mkey = m.entries
        for left in (True, False):
            acc = {}
            for t, c in supp:
                prod = mat_mul(t, m) if left else mat_mul(m, t)
                key = prod.entries
                nc = acc.get(key, Fraction(0)) + c
                if nc:
                    acc[key] = nc
                else:
                    acc.pop(key, None)
            if acc != {mkey: Fraction(1)}:
                return UnitReport(False, True, checked,
                                  (m.to_rows(), "left" if left else "right"))
        checked += 1
    return UnitReport(True, True, checked)


def _verify_unit_numpy(u, r, targets):
    n, ctx = u.n, u.ctx
    q = ctx.q
    keys = sorted(u.terms)
    denom = lcm(*[u.terms[k].denominator for k in keys])
    coeffs = np.array([int(u.terms[k] * denom) for k in keys], dtype=np.int64)
    supp = np.frombuffer(b"".join(keys), dtype=np.uint8).reshape(len(keys), n, n)
    supp = supp.astype(np.int64)
    place = q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
    size = q ** (n * n)
    assert int(np.abs(coeffs).sum()) < 2 ** 60
    checked = 0
    for m in targets:
        marr = np.frombuffer(m.entries, dtype=np.uint8).reshape(n, n).astype(np.int64)
        mid = int(place @ np.frombuffer(m.entries, dtype=np.uint8).astype(np.int64))
        for left in (True, False):
            prod = (supp @ marr if left else marr @ supp) % q
            ids = prod.reshape(len(keys), -1) @ place
            acc = np.zeros(size, dtype=np.int64)
            np.add.at(acc, ids, coeffs)
            ok = acc[mid] == denom
            if ok:
                acc[mid] = 0
                ok = not acc.any()
            if not ok:
                return UnitReport(False, True, checked,
                                  (m.to_rows(), "left" if left else "right"))
        checked += 1
    return UnitReport(True, True, checked)


def verify_unit(u, r, pair_budget=MAX_PRODUCT_PAIRS,
                enum_budget=matfq.DEFAULT_ENUM_BUDGET):
    """Exhaustively check u [m] = [m] = [m] u over every matrix of rank <= r.

    When the product-pair budget would be exceeded the report falls back to
    the criterion check (conjugation invariance plus idempotent absorption)
    and is flagged as non-exhaustive.
    """
    n, ctx = u.n, u.ctx
    q = ctx.q
    estimated = 2 * len(u.terms) * _rank_le_count(n, r, q)
    if estimated > pair_budget or q ** (n * n) > enum_budget:
        passed = kuhn_check(u, r, enum_budget)
        return UnitReport(passed, False, 0,
                          warning="pair budget exceeded; criterion check only")
    targets = [m for m in enumerate_matrices(n, ctx, enum_budget) if mat_rank(m) <= r]
    if ctx.e == 1 and q ** (n * n) <= matfq.DEFAULT_ENUM_BUDGET and len(u.terms) * len(targets) > 10 ** 5:
        return _verify_unit_numpy(u, r, targets)
    return _verify_unit_python(u, r, targets)
