"""Subspaces of F_q^n, the subspace groupoid algebras, and the canonical
rank-r homomorphisms from the matrix-monoid algebra.

A subspace is identified with the unique reduced-row-echelon basis of its
row space; the RREF byte string is the canonical key and sort order.  The
canonical coordinate map F_q^r -> U sends the k-th standard basis vector
to the k-th RREF basis row, so every groupoid term is stored as
(src, dst, iso) with iso expressed in those coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

from . import matfq
from .matfq import MatFq, from_rows, mat_mul, mat_rank, rref


class Subspace:
    """An r-dimensional subspace of F_q^n, canonically presented."""

    __slots__ = ("ctx", "n", "r", "basis", "_pivots")

    def __init__(self, basis):
        if basis.rows and mat_rank(basis) != basis.rows:
            raise ValueError("basis rows are dependent")
        canon = rref(basis)
        self.ctx = basis.ctx
        self.n = basis.cols
        self.r = canon.rows
        self.basis = canon
        self._pivots = tuple(
            next(j for j in range(self.n) if canon[i, j]) for i in range(self.r))

    @property
    def key(self):
        return self.basis.entries

    @property
    def pivots(self):
        return self._pivots

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.n == other.n
                and self.ctx.q == other.ctx.q and self.key == other.key)

    def __hash__(self):
        return hash((self.ctx.q, self.n, self.key))

    def __repr__(self):
        return "Subspace(n=%d, r=%d, %r)" % (self.n, self.r, self.basis.to_rows())

    def elements(self):
        """All q^r vectors of the subspace as tuples."""
        ctx = self.ctx
        rows = self.basis.to_rows()
        vecs = []
        for coeffs in product(range(ctx.q), repeat=self.r):
            v = [0] * self.n
            for c, row in zip(coeffs, rows):
                if c:
                    for j in range(self.n):
                        v[j] = ctx.add(v[j], ctx.mul(c, row[j]))
            vecs.append(tuple(v))
        return vecs

    def contains_vector(self, vec):
        ctx = self.ctx
        v = list(vec)
        for i, p in enumerate(self._pivots):
            c = v[p]
            if c:
                row = self.basis.to_rows()[i]
                for j in range(self.n):
                    v[j] = ctx.sub(v[j], ctx.mul(c, row[j]))
        return not any(v)

    def contains_subspace(self, other):
        return all(self.contains_vector(row) for row in other.basis.to_rows())


def subspace_of_span(ctx, n, rows):
    """Subspace spanned by the given row vectors."""
    if not rows:
        return Subspace(MatFq(ctx, 0, n, b""))
    m = rref(from_rows(ctx, [list(r) for r in rows]))
    return Subspace(m if m.rows else MatFq(ctx, 0, n, b""))


def intersect(a, b):
    """Intersection of two subspaces of the same ambient space."""
    if a.n != b.n:
        raise ValueError("ambient dimension mismatch")
    ctx = a.ctx
    # kernel method: coefficient vectors (x | y) with x*A - y*B = 0 give
    # the intersection vectors x*A; signs are irrelevant for the span.
    if a.r == 0 or b.r == 0:
        return subspace_of_span(ctx, a.n, [])
    stacked = [list(row) for row in a.basis.to_rows()] + \
              [list(row) for row in b.basis.to_rows()]
    rows = len(stacked)
    basis_vecs = _nullspace_fq(ctx, [[stacked[i][j] for i in range(rows)]
                                     for j in range(a.n)])
    arows = a.basis.to_rows()
    out = []
    for vec in basis_vecs:
        x = vec[:a.r]
        v = [0] * a.n
        for c, row in zip(x, arows):
            if c:
                for j in range(a.n):
                    v[j] = ctx.add(v[j], ctx.mul(c, row[j]))
        out.append(v)
    return subspace_of_span(ctx, a.n, out)


def _nullspace_fq(ctx, rows):
    """Right null space basis of a matrix over F_q given as row lists."""
    if not rows:
        return []
    ncols = len(rows[0])
    work = [list(r) for r in rows]
    pivots = matfq._echelon(work, ctx, reduced=True)
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for i, p in enumerate(pivots):
            vec[p] = ctx.neg(work[i][f])
        out.append(vec)
    return out


_SUBSPACE_CACHE = {}


def enumerate_subspaces(n, r, ctx):
    """All r-dimensional subspaces of F_q^n, sorted by RREF byte key."""
    cache_key = (ctx.q, n, r)
    cached = _SUBSPACE_CACHE.get(cache_key)
    if cached is not None:
        return cached
    if r < 0 or r > n:
        raise ValueError("0 <= r <= n required")
    q = ctx.q
    out = []
    if r == 0:
        out.append(Subspace(MatFq(ctx, 0, n, b"")))
    else:
        for pivots in combinations(range(n), r):
            free_pos = []
            for i in range(r):
                for j in range(pivots[i] + 1, n):
                    if j not in pivots:
                        free_pos.append((i, j))
            base = bytearray(r * n)
            for i, p in enumerate(pivots):
                base[i * n + p] = 1
            for values in product(range(q), repeat=len(free_pos)):
                ent = bytearray(base)
                for (i, j), v in zip(free_pos, values):
                    ent[i * n + j] = v
                out.append(Subspace(MatFq(ctx, r, n, bytes(ent))))
    out.sort(key=lambda s: s.key)
    _SUBSPACE_CACHE[cache_key] = out
    return out


def all_subspaces(n, ctx):
    out = []
    for r in range(n + 1):
        out.extend(enumerate_subspaces(n, r, ctx))
    return out


def canonical_iso(u):
    """Matrix of the canonical map F_q^r -> U (columns are RREF basis rows)."""
    return matfq.transpose(u.basis)


def image_subspace(m, u):
    """The subspace m(U)."""
    if u.r == 0:
        return subspace_of_span(m.ctx, m.rows, [])
    img = mat_mul(m, canonical_iso(u))  # n x r, columns span m(U)
    cols = [[img[i, l] for i in range(m.rows)] for l in range(u.r)]
    return subspace_of_span(m.ctx, m.rows, cols)


def restriction_iso(m, src, dst):
    """Coordinates of m|_src : src -> dst through the canonical maps.

    Requires m(src) = dst with full rank; entries of the r x r matrix are
    read off at dst's pivot columns.
    """
    img = mat_mul(m, canonical_iso(src))  # n x r
    rows = [[img[p, l] for l in range(src.r)] for p in dst.pivots]
    return from_rows(m.ctx, rows) if src.r else MatFq(m.ctx, 0, 0, b"")


class GroupoidElem:
    """Sparse element of the groupoid algebra on r-dimensional subspaces.

    Terms map (src_key, dst_key, iso_key) to rational coefficients; iso is
    the r x r invertible matrix of the morphism in canonical coordinates.
    """

    __slots__ = ("n", "r", "ctx", "terms")

    def __init__(self, n, r, ctx, terms=None):
        self.n = n
        self.r = r
        self.ctx = ctx
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[key] = c

    def __eq__(self, other):
        return (isinstance(other, GroupoidElem) and self.n == other.n
                and self.r == other.r and self.ctx.q == other.ctx.q
                and self.terms == other.terms)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return "GroupoidElem(n=%d, r=%d, %d terms)" % (self.n, self.r, len(self.terms))


def groupoid_zero(n, r, ctx):
    return GroupoidElem(n, r, ctx)


def groupoid_unit(n, r, ctx):
    """Sum of identity morphisms over all r-dimensional subspaces."""
    idk = matfq.identity(ctx, r).entries
    terms = {(u.key, u.key, idk): Fraction(1) for u in enumerate_subspaces(n, r, ctx)}
    return GroupoidElem(n, r, ctx, terms)


def groupoid_add(x, y):
    if (x.n, x.r) != (y.n, y.r):
        raise ValueError("mismatched groupoid algebras")
    terms = dict(x.terms)
    for key, c in y.terms.items():
        nc = terms.get(key, Fraction(0)) + c
        if nc:
            terms[key] = nc
        else:
            terms.pop(key, None)
    return GroupoidElem(x.n, x.r, x.ctx, terms)


def groupoid_scale(x, c):
    c = Fraction(c)
    return GroupoidElem(x.n, x.r, x.ctx,
                        {k: c * v for k, v in x.terms.items()})


def groupoid_mul(x, y):
    """Product [b][a] = [b compose a]; pairs whose endpoints do not match
    contribute zero."""
    if (x.n, x.r) != (y.n, y.r):
        raise ValueError("mismatched groupoid algebras")
    ctx = x.ctx
    r = x.r
    out = {}
    by_dst = {}
    for (s2, d2, i2), c2 in y.terms.items():
        by_dst.setdefault(d2, []).append((s2, i2, c2))
    for (s1, d1, i1), c1 in x.terms.items():
        matches = by_dst.get(s1)
        if not matches:
            continue
        m1 = MatFq(ctx, r, r, i1)
        for s2, i2, c2 in matches:
            comp = mat_mul(m1, MatFq(ctx, r, r, i2))
            key = (s2, d1, comp.entries)
            nc = out.get(key, Fraction(0)) + c1 * c2
            if nc:
                out[key] = nc
            else:
                out.pop(key, None)
    return GroupoidElem(x.n, x.r, x.ctx, out)


def psi_r(a, r):
    """Canonical homomorphism into the rank-r groupoid algebra: each basis
    matrix restricts to every r-dimensional subspace whose image keeps
    dimension r."""
    n, ctx = a.n, a.ctx
    subspaces = enumerate_subspaces(n, r, ctx)
    out = {}
    for mkey, coeff in a.terms.items():
        m = MatFq(ctx, n, n, mkey)
        for u in subspaces:
            img = mat_mul(m, canonical_iso(u)) if r else MatFq(ctx, n, 0, b"")
            cols = [[img[i, l] for i in range(n)] for l in range(r)]
            dst = subspace_of_span(ctx, n, cols)
            if dst.r != r:
                continue
            iso = restriction_iso(m, u, dst)
            key = (u.key, dst.key, iso.entries)
            nc = out.get(key, Fraction(0)) + coeff
            if nc:
                out[key] = nc
            else:
                out.pop(key, None)
    return GroupoidElem(n, r, ctx, out)


def psi_full(a):
    """The tuple (psi_0(a), ..., psi_n(a))."""
    return [psi_r(a, r) for r in range(a.n + 1)]


def groupoid_basis(n, r, ctx):
    """Deterministic basis order of the rank-r groupoid algebra:
    (src, dst, iso) sorted lexicographically."""
    keys = []
    subspaces = enumerate_subspaces(n, r, ctx)
    gl = matfq.enumerate_gl(r, ctx)
    for src in subspaces:
        for dst in subspaces:
            for g in gl:
                keys.append((src.key, dst.key, g.entries))
    keys.sort()
    return keys


def groupoid_to_matrix_algebra(x):
    """Block-matrix realization: an N x N array (N = number of subspaces,
    in enumerate_subspaces order) whose (j, i) entry is the group-algebra
    element collecting the morphisms sent from U_i to U_j."""
    subspaces = enumerate_subspaces(x.n, x.r, x.ctx)
    index = {u.key: i for i, u in enumerate(subspaces)}
    nsub = len(subspaces)
    blocks = [[{} for _ in range(nsub)] for _ in range(nsub)]
    for (src, dst, iso), c in x.terms.items():
        cell = blocks[index[dst]][index[src]]
        cell[iso] = cell.get(iso, Fraction(0)) + c
    return blocks


def group_alg_mul(d1, d2, ctx, r):
    """Convolution product of two group-algebra elements of GL_r given as
    dicts matrix-key -> coefficient."""
    out = {}
    for k1, c1 in d1.items():
        m1 = MatFq(ctx, r, r, k1)
        for k2, c2 in d2.items():
            prod = mat_mul(m1, MatFq(ctx, r, r, k2)).entries
            nc = out.get(prod, Fraction(0)) + c1 * c2
            if nc:
                out[prod] = nc
            else:
                out.pop(prod, None)
    return out


def preimage_of_groupoid_basis(src, dst, iso):
    """Explicit preimage of the basis morphism [iso: src -> dst] under the
    rank-r homomorphism: extend by zero on a complement and multiply by the
    subspace idempotent of src."""
    from . import algebra

    ctx = src.ctx
    n = src.n
    r = src.r
    if dst.r != r or mat_rank(iso) != r:
        raise ValueError("not an isomorphism of r-dimensional subspaces")
    f_src = canonical_iso(src)
    f_dst = canonical_iso(dst)
    image_cols = mat_mul(f_dst, iso) if r else MatFq(ctx, n, 0, b"")
    # complement basis: standard vectors at src's non-pivot positions
    nonpiv = [j for j in range(n) if j not in src.pivots]
    cols = []
    for l in range(r):
        cols.append([f_src[i, l] for i in range(n)])
    for j in nonpiv:
        cols.append([1 if i == j else 0 for i in range(n)])
    change = matfq.transpose(from_rows(ctx, cols))  # columns: src basis then complement
    target_cols = []
    for l in range(r):
        target_cols.append([image_cols[i, l] for i in range(n)])
    for _ in nonpiv:
        target_cols.append([0] * n)
    target = matfq.transpose(from_rows(ctx, target_cols))
    m = mat_mul(target, matfq.mat_inverse(change))
    return algebra.alg_mul(algebra.alg_basis(m), algebra.eta_W(src))


def psi_matrix(n, ctx):
    """Exact matrix of the direct-sum map a -> (psi_0(a), ..., psi_n(a)) on
    the basis of all n x n matrices (columns) against the concatenated
    groupoid bases (rows)."""
    from .exact import RatMatrix

    col_keys = [m.entries for m in matfq.enumerate_matrices(n, ctx)]
    row_index = {}
    offset = 0
    for r in range(n + 1):
        for key in groupoid_basis(n, r, ctx):
            row_index[(r,) + key] = offset
            offset += 1
    entries = [[Fraction(0)] * len(col_keys) for _ in range(offset)]
    from . import algebra
    for j, mkey in enumerate(col_keys):
        elem = algebra.alg_from_terms(n, ctx, {mkey: Fraction(1)})
        for r in range(n + 1):
            img = psi_r(elem, r)
            for key, c in img.terms.items():
                entries[row_index[(r,) + key]][j] = c
    return RatMatrix(entries)
