"""Explicit simple modules of the matrix-monoid algebra, their characters,
restriction to the invertible group and to smaller monoids, self-duality,
and the strip-combinatorics multiplicity inversion.

A simple module is built from an irreducible representation of the rank-r
invertible group: the underlying space is (representation space) tensor
(free space on the r-dimensional subspaces), and a basis matrix acts
through its rank-preserving restrictions re-expressed in the canonical
subspace coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import matfq, qcomb, subgrpd
from .algebra import e_matrix
from .exact import RatMatrix, SparseEchelon
from .matfq import MatFq, identity, mat_mul
from .qcomb import gl_order, is_horizontal_strip, is_vertical_strip


@dataclass
class GroupRep:
    """Total map from the invertible r x r matrices to exact invertible
    rational matrices."""
    name: str
    r: int
    ctx: object
    dim: int
    images: dict  # matrix key -> RatMatrix

    def image(self, g):
        key = g.entries if isinstance(g, MatFq) else g
        return self.images[key]


@dataclass
class MonoidModule:
    """Total action of the n x n matrix monoid by exact rational matrices."""
    name: str
    n: int
    ctx: object
    dim: int
    action: dict  # matrix key -> RatMatrix

    def act(self, m):
        key = m.entries if isinstance(m, MatFq) else m
        return self.action[key]


@dataclass
class IrrepCatalog:
    reps: list
    complete: bool


def extend_by_closure(r, ctx, generator_images, name, dim):
    """Extend images on a generating set to the whole group by breadth-first
    closure, verifying totality against the group order."""
    images = {identity(ctx, r).entries: RatMatrix.identity(dim)}
    frontier = [identity(ctx, r)]
    gens = [(g, img) for g, img in generator_images]
    while frontier:
        nxt = []
        for m in frontier:
            base = images[m.entries]
            for g, img in gens:
                prod = mat_mul(m, g)
                if prod.entries not in images:
                    images[prod.entries] = base * img
                    nxt.append(prod)
        frontier = nxt
    if len(images) != gl_order(r, ctx.q):
        raise ValueError("generators do not generate the whole group")
    return GroupRep(name, r, ctx, dim, images)


def trivial_rep(r, ctx):
    one = RatMatrix([[1]])
    images = {g.entries: one for g in matfq.enumerate_gl(r, ctx)}
    return GroupRep("trivial", r, ctx, 1, images)


def _gl2_f2_irreps(ctx):
    """The three irreducibles of the six-element group of invertible 2 x 2
    matrices over F_2, via its permutation action on the nonzero vectors."""
    vecs = [(0, 1), (1, 0), (1, 1)]
    vec_index = {v: i for i, v in enumerate(vecs)}
    group = matfq.enumerate_gl(2, ctx)
    trivial, sign, standard = {}, {}, {}
    for g in group:
        perm = []
        for v in vecs:
            w = (g[0, 0] * v[0] ^ g[0, 1] * v[1], g[1, 0] * v[0] ^ g[1, 1] * v[1])
            perm.append(vec_index[w])
        inversions = sum(1 for i in range(3) for j in range(i + 1, 3)
                         if perm[i] > perm[j])
        parity = -1 if inversions % 2 else 1
        trivial[g.entries] = RatMatrix([[1]])
        sign[g.entries] = RatMatrix([[parity]])
        # standard 2-dim piece of the permutation action on sum-zero vectors,
        # in the basis e0-e1, e1-e2; coords of sum-zero (a,b,c) are (a, a+b)
        cols = []
        for basis_vec in ((1, -1, 0), (0, 1, -1)):
            img = [0, 0, 0]
            for i, c in enumerate(basis_vec):
                img[perm[i]] += c
            cols.append((img[0], img[0] + img[1]))
        standard[g.entries] = RatMatrix([[cols[0][0], cols[1][0]],
                                         [cols[0][1], cols[1][1]]])
    return [GroupRep("trivial", 2, ctx, 1, trivial),
            GroupRep("sign", 2, ctx, 1, sign),
            GroupRep("standard", 2, ctx, 2, standard)]


def builtin_irreps(r, ctx):
    """Built-in irreducible representations of the rank-r invertible group.

    Complete for r = 0, for r = 1 at q = 2, and for (r, q) = (2, 2); other
    sizes carry only the trivial representation and are flagged incomplete.
    """
    if r == 0:
        return IrrepCatalog([GroupRep("trivial", 0, ctx, 1,
                                      {b"": RatMatrix([[1]])})], True)
    if r == 1 and ctx.q == 2:
        return IrrepCatalog([trivial_rep(1, ctx)], True)
    if r == 2 and ctx.q == 2:
        return IrrepCatalog(_gl2_f2_irreps(ctx), True)
    return IrrepCatalog([trivial_rep(r, ctx)], False)


def build_L(n, pi, dim_budget=512, enum_budget=matfq.DEFAULT_ENUM_BUDGET):
    """The simple module attached to an irreducible representation of the
    rank-r invertible group: subspace-indexed blocks acted on through the
    canonical coordinate maps."""
    ctx = pi.ctx
    r = pi.r
    if r > n:
        raise ValueError("representation rank exceeds the monoid size")
    subspaces = subgrpd.enumerate_subspaces(n, r, ctx)
    nsub = len(subspaces)
    d = pi.dim
    dim = d * nsub
    if dim > dim_budget:
        raise ValueError("module dimension %d exceeds the budget %d" % (dim, dim_budget))
    index = {u.key: i for i, u in enumerate(subspaces)}
    action = {}
    for m in matfq.enumerate_matrices(n, ctx, enum_budget):
        entries = [[Fraction(0)] * dim for _ in range(dim)]
        for i, u in enumerate(subspaces):
            dst = subgrpd.image_subspace(m, u)
            if dst.r != r:
                continue
            j = index[dst.key]
            g = subgrpd.restriction_iso(m, u, dst)
            block = pi.image(g)
            for a in range(d):
                for b in range(d):
                    entries[j * d + a][i * d + b] = block[a, b]
        action[m.entries] = RatMatrix(entries)
    name = "L_%d(%s_%d)" % (n, pi.name, r)
    return MonoidModule(name, n, ctx, dim, action)


def character(module):
    """Trace of every action matrix, keyed by the matrix byte key."""
    return {key: op.trace() for key, op in module.action.items()}


def character_fixed_subspace_formula(n, pi, enum_budget=matfq.DEFAULT_ENUM_BUDGET):
    """Independent character computation: sum the representation traces over
    the subspaces the matrix fixes."""
    ctx = pi.ctx
    r = pi.r
    subspaces = subgrpd.enumerate_subspaces(n, r, ctx)
    out = {}
    for m in matfq.enumerate_matrices(n, ctx, enum_budget):
        total = Fraction(0)
        for u in subspaces:
            dst = subgrpd.image_subspace(m, u)
            if dst.r == r and dst.key == u.key:
                total += pi.image(subgrpd.restriction_iso(m, u, dst)).trace()
        out[m.entries] = total
    return out


def simple_catalog(n, ctx, dim_budget=512):
    """All simple modules for the given size, labeled (rank, irrep name).

    Raises if the built-in irreducibles are incomplete for some rank."""
    out = []
    for r in range(n + 1):
        catalog = builtin_irreps(r, ctx)
        if not catalog.complete:
            raise ValueError("irreducible fixtures incomplete for r=%d, q=%d"
                             % (r, ctx.q))
        for pi in catalog.reps:
            out.append(((r, pi.name), build_L(n, pi, dim_budget)))
    return out


def restrict_to_group_char(module):
    """Character restricted to the invertible matrices."""
    n, ctx = module.n, module.ctx
    chars = character(module)
    return {g.entries: chars[g.entries] for g in matfq.enumerate_gl(n, ctx)}


def _parabolic_levi_part(g, r):
    """Upper-left r x r block when g lies in the standard parabolic (lower
    block below the first r columns is zero), else None."""
    n = g.rows
    for i in range(r, n):
        for j in range(r):
            if g[i, j]:
                return None
    rows = [[g[i, j] for j in range(r)] for i in range(r)]
    return matfq.from_rows(g.ctx, rows) if r else MatFq(g.ctx, 0, 0, b"")


def parabolic_induction_char(pi, n, group_budget=10 ** 6):
    """Character of the induction from the standard block parabolic of the
    representation inflated from its rank-r factor."""
    ctx = pi.ctx
    r = pi.r
    group = matfq.enumerate_gl(n, ctx)
    if len(group) > group_budget:
        raise ValueError("group enumeration beyond budget")
    p_size = 0
    infl = {}
    for g in group:
        levi = _parabolic_levi_part(g, r)
        if levi is not None:
            p_size += 1
            infl[g.entries] = pi.image(levi).trace()
    inverses = {x.entries: matfq.mat_inverse(x) for x in group}
    out = {}
    for g in group:
        total = Fraction(0)
        for x in group:
            conj = mat_mul(mat_mul(inverses[x.entries], g), x)
            val = infl.get(conj.entries)
            if val is not None:
                total += val
        out[g.entries] = total / p_size
    return out


def _column_space_basis(op):
    """Pivot-column basis of the column space of an exact matrix."""
    rows = [list(r) for r in op.transpose().entries]
    echelon = SparseEchelon()
    basis_cols = []
    for j, row in enumerate(rows):
        if echelon.insert({i: v for i, v in enumerate(row) if v}):
            basis_cols.append(j)
    return [[op[i, j] for i in range(op.rows)] for j in basis_cols]


def _embed_matrix(a, n):
    """diag(a, 0) of size n for a square matrix a of size s <= n."""
    s = a.rows
    ent = bytearray(n * n)
    for i in range(s):
        for j in range(s):
            ent[i * n + j] = a[i, j]
    return MatFq(a.ctx, n, n, bytes(ent))


def restrict_to_submonoid(module, s, enum_budget=matfq.DEFAULT_ENUM_BUDGET):
    """Image of the standard rank-s idempotent with the smaller monoid
    acting through block embedding."""
    n, ctx = module.n, module.ctx
    proj = module.act(e_matrix(n, s, ctx))
    basis = _column_space_basis(proj)
    k = len(basis)
    if k == 0:
        action = {m.entries: RatMatrix.zero(0, 0)
                  for m in matfq.enumerate_matrices(s, ctx, enum_budget)}
        return MonoidModule("%s|M_%d" % (module.name, s), s, ctx, 0, action)
    cols = RatMatrix([[basis[j][i] for j in range(k)] for i in range(module.dim)])
    action = {}
    for m in matfq.enumerate_matrices(s, ctx, enum_budget):
        full = module.act(_embed_matrix(m, n))
        img = full * cols
        x = _solve_in_basis(cols, img)
        action[m.entries] = x
    return MonoidModule("%s|M_%d" % (module.name, s), s, ctx, k, action)


def _solve_in_basis(cols, img):
    """Solve cols * X = img for X given cols with full column rank."""
    rows, k = cols.rows, cols.cols
    aug = [list(cols.entries[i]) + list(img.entries[i]) for i in range(rows)]
    from .exact import _eliminate
    pivots = _eliminate(aug)
    if pivots != list(range(k)):
        raise ValueError("basis columns are dependent")
    return RatMatrix([row[k:] for row in aug[:k]])


def self_duality_check(module):
    """Character identity for the transpose-twisted dual: every matrix and
    its transpose have equal trace."""
    chars = character(module)
    n, ctx = module.n, module.ctx
    for key, val in chars.items():
        t = matfq.transpose(MatFq(ctx, n, n, key))
        if chars[t.entries] != val:
            return False
    return True


def multiplicities_n_from_m(m_values, max_size=None):
    """Per-rank multiplicities from monoid multiplicities: sum over
    horizontal strips within each opaque pure label."""
    if not m_values:
        return {}
    if max_size is None:
        max_size = max(sum(lam) for _, lam in m_values)
    out = {}
    for lam in qcomb.partitions_up_to(max_size):
        by_label = {}
        for (label, mu_), v in m_values.items():
            if is_horizontal_strip(lam, mu_):
                by_label[label] = by_label.get(label, 0) + v
        for label, v in by_label.items():
            if v:
                out[(label, lam)] = v
    return out


def multiplicities_m_from_n(n_values):
    """Inverse transform: signed sum over vertical strips."""
    if not n_values:
        return {}
    max_size = max(sum(lam) for _, lam in n_values)
    out = {}
    for lam in qcomb.partitions_up_to(max_size):
        by_label = {}
        for (label, mu_), v in n_values.items():
            if is_vertical_strip(lam, mu_):
                sign = (-1) ** (sum(lam) - sum(mu_))
                by_label[label] = by_label.get(label, 0) + sign * v
        for label, v in by_label.items():
            if v:
                out[(label, lam)] = v
    return out


def decompose(module, catalog=None):
    """Multiplicity of each simple module via the exact character system;
    characters of distinct simples are linearly independent."""
    n, ctx = module.n, module.ctx
    if catalog is None:
        catalog = simple_catalog(n, ctx)
    labels = [label for label, _ in catalog]
    chars = [character(simple) for _, simple in catalog]
    target = character(module)
    keys = sorted(target)
    rows = [[chars[c][key] for c in range(len(catalog))] for key in keys]
    aug = [row + [target[key]] for row, key in zip(rows, keys)]
    from .exact import _eliminate
    pivots = _eliminate(aug)
    ncols = len(catalog)
    sol = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        if p == ncols:
            raise ValueError("character system is inconsistent")
        sol[p] = aug[i][ncols]
    # consistency and integrality
    for row, key in zip(rows, keys):
        acc = sum((c * s for c, s in zip(row, sol)), Fraction(0))
        if acc != target[key]:
            raise ValueError("character system is inconsistent")
    out = {}
    for label, value in zip(labels, sol):
        if value:
            if value.denominator != 1 or value < 0:
                raise ValueError("non-integral multiplicity %s for %r" % (value, label))
            out[label] = int(value)
    return out


def permutation_module(n, ctx, tensor_power=1, enum_budget=matfq.DEFAULT_ENUM_BUDGET):
    """The basic permutation module on F_q^n (or a tensor power of it)."""
    vectors = list(_all_vectors(n, ctx))
    from itertools import product as iproduct
    basis = list(iproduct(range(len(vectors)), repeat=tensor_power))
    index = {b: i for i, b in enumerate(basis)}
    dim = len(basis)
    action = {}
    for m in matfq.enumerate_matrices(n, ctx, enum_budget):
        entries = [[Fraction(0)] * dim for _ in range(dim)]
        images = [_apply(m, v) for v in vectors]
        vec_index = {v: i for i, v in enumerate(vectors)}
        img_idx = [vec_index[w] for w in images]
        for col, b in enumerate(basis):
            target = tuple(img_idx[i] for i in b)
            entries[index[target]][col] += 1
        action[m.entries] = RatMatrix(entries)
    name = "k[F_%d^%d]^(x%d)" % (ctx.q, n, tensor_power)
    return MonoidModule(name, n, ctx, dim, action)


def _all_vectors(n, ctx):
    from itertools import product as iproduct
    for v in iproduct(range(ctx.q), repeat=n):
        yield v


def _apply(m, v):
    ctx = m.ctx
    n = m.rows
    out = []
    for i in range(n):
        s = 0
        for j in range(n):
            s = ctx.add(s, ctx.mul(m[i, j], v[j]))
        out.append(s)
    return tuple(out)
