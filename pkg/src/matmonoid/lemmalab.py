"""Brute-force verification engine for the counting identities behind the
unit formula: last-column extension counts of Jordan-type matrices, the
corank-1 extension identities, the vanishing and inner-sum reductions, and
the shift-independent weighted sums.

Partial linear maps with coordinate domains are represented as n x n
matrices whose columns beyond the domain dimension are zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from . import matfq, subgrpd
from .matfq import MatFq, from_rows, is_semi_idempotent, mat_rank, stable_rank
from .qcomb import mu, q_binomial


class PartialMap(NamedTuple):
    """Linear map defined on the first dom_dim coordinates of F_q^n, stored
    as an n x n matrix whose remaining columns are zero."""
    mat: MatFq
    dom_dim: int


def partial_map(mat, dom_dim):
    n = mat.rows
    if mat.cols != n:
        raise ValueError("expected a square matrix")
    for j in range(dom_dim, n):
        if any(mat[i, j] for i in range(n)):
            raise ValueError("columns beyond the domain must be zero")
    return PartialMap(mat, dom_dim)


def _coordinate_subspace(ctx, n, j):
    rows = [[1 if c == i else 0 for c in range(n)] for i in range(j)]
    return subgrpd.subspace_of_span(ctx, n, rows)


def pm_image(t):
    """Image subspace of the partial map."""
    n = t.mat.rows
    cols = [[t.mat[i, j] for i in range(n)] for j in range(t.dom_dim)]
    return subgrpd.subspace_of_span(t.mat.ctx, n, cols)


def pm_rank(t):
    return pm_image(t).r


def _apply_to_subspace(t, s):
    """T(S) for a subspace S: map the part of S inside the domain."""
    ctx = t.mat.ctx
    n = t.mat.rows
    dom = _coordinate_subspace(ctx, n, t.dom_dim)
    inter = subgrpd.intersect(s, dom)
    imgs = []
    for row in inter.basis.to_rows():
        v = [0] * n
        for j in range(t.dom_dim):
            c = row[j]
            if c:
                for i in range(n):
                    v[i] = ctx.add(v[i], ctx.mul(c, t.mat[i, j]))
        imgs.append(v)
    return subgrpd.subspace_of_span(ctx, n, imgs)


def _stable_image(t):
    """The stabilized image of the partial-power chain of T."""
    ctx = t.mat.ctx
    n = t.mat.rows
    current = subgrpd.subspace_of_span(
        ctx, n, [[1 if c == i else 0 for c in range(n)] for i in range(n)])
    for _ in range(n + 1):
        nxt = _apply_to_subspace(t, current)
        if nxt.key == current.key:
            break
        current = nxt
    return current


def pm_is_semi_idempotent(t):
    """Whether T eventually acts as the identity on its stable image."""
    ctx = t.mat.ctx
    n = t.mat.rows
    w = _stable_image(t)
    dom = _coordinate_subspace(ctx, n, t.dom_dim)
    for row in w.basis.to_rows():
        if not dom.contains_vector(row):
            return False
        v = [0] * n
        for j in range(t.dom_dim):
            c = row[j]
            if c:
                for i in range(n):
                    v[i] = ctx.add(v[i], ctx.mul(c, t.mat[i, j]))
        if list(v) != list(row):
            return False
    return True


def pm_stable_rank(t):
    if not pm_is_semi_idempotent(t):
        raise ValueError("stable rank of a non-semi-idempotent partial map")
    return _stable_image(t).r


def diag_jordan(parts, ctx):
    """Block diagonal of lower Jordan blocks with eigenvalue zero."""
    n = sum(parts)
    ent = bytearray(n * n)
    pos = 0
    for part in parts:
        for j in range(part - 1):
            ent[(pos + j + 1) * n + (pos + j)] = 1
        pos += part
    return MatFq(ctx, n, n, bytes(ent))


def column_extension_counts(base):
    """Replace the last column of a square matrix in every possible way and
    tally the semi-idempotent outcomes by (rank, stable rank)."""
    ctx = base.ctx
    n = base.rows
    counts = {}
    from itertools import product
    for col in product(range(ctx.q), repeat=n):
        ent = bytearray(base.entries)
        for i in range(n):
            ent[i * n + (n - 1)] = col[i]
        cand = MatFq(ctx, n, n, bytes(ent))
        if is_semi_idempotent(cand):
            key = (mat_rank(cand), stable_rank(cand))
            counts[key] = counts.get(key, 0) + 1
    return counts


def count_extensions_jordan(parts, ctx, same_rank=False):
    """Counts of nilpotent versus non-nilpotent semi-idempotent last-column
    modifications of a zero-eigenvalue Jordan block diagonal; same_rank
    restricts to modifications preserving the rank (meaningful when the
    last block has size > 1)."""
    parts = tuple(parts)
    if not parts or any(p <= 0 for p in parts):
        raise ValueError("parts must be positive")
    base = diag_jordan(parts, ctx)
    base_rank = mat_rank(base)
    counts = column_extension_counts(base)
    nilpotent = 0
    semi = 0
    for (rank, srk), c in counts.items():
        if same_rank and rank != base_rank:
            continue
        if srk == 0:
            nilpotent += c
        else:
            semi += c
    return nilpotent, semi


def e_counts(t, target_rank=None):
    """Stable-rank tally of semi-idempotent full extensions of a partial map
    with domain of codimension one; optionally restricted by rank."""
    if t.dom_dim != t.mat.rows - 1:
        raise ValueError("domain must have codimension 1")
    counts = column_extension_counts(t.mat)
    out = {}
    for (rank, srk), c in counts.items():
        if target_rank is not None and rank != target_rank:
            continue
        out[srk] = out.get(srk, 0) + c
    return out


def image_in_domain(t):
    """Whether the image of the partial map lies inside its domain."""
    dom = _coordinate_subspace(t.mat.ctx, t.mat.rows, t.dom_dim)
    return dom.contains_subspace(pm_image(t))


def check_vanishing_sum(t, r, f):
    """For a semi-idempotent partial map on the first n-1 coordinates whose
    image leaves them, the mu-weighted f(rank) sum over semi-idempotent
    extensions of rank <= r vanishes."""
    n = t.mat.rows
    if t.dom_dim != n - 1:
        raise ValueError("domain must have codimension 1")
    if not pm_is_semi_idempotent(t):
        raise ValueError("partial map must be semi-idempotent")
    if image_in_domain(t):
        raise ValueError("image must not lie inside the domain")
    q = t.mat.ctx.q
    total = Fraction(0)
    for (rank, srk), c in column_extension_counts(t.mat).items():
        if rank <= r:
            total += c * mu(srk, q) * f[rank]
    return total == 0


def inner_sum(t_small, r, f):
    """E(f, T): mu-weighted f(rank) sum over semi-idempotent extensions of a
    square semi-idempotent acting on the first n-1 coordinates."""
    ctx = t_small.ctx
    m = t_small.rows
    n = m + 1
    rows = [list(row) + [0] for row in t_small.to_rows()]
    rows.append([0] * n)
    base = from_rows(ctx, rows)
    q = ctx.q
    total = Fraction(0)
    for (rank, srk), c in column_extension_counts(base).items():
        if rank <= r:
            total += c * mu(srk, q) * f[rank]
    return total


def check_inner_sum(t_small, r, f):
    """Compare the enumerated inner sum with its closed form."""
    if not is_semi_idempotent(t_small):
        raise ValueError("base map must be semi-idempotent")
    rank = mat_rank(t_small)
    if rank > r:
        raise ValueError("base rank must be <= r")
    q = t_small.ctx.q
    srk = stable_rank(t_small)
    value = inner_sum(t_small, r, f)
    if rank <= r - 1:
        expected = mu(srk, q) * q ** rank * (f[rank] - f[rank + 1])
    else:
        expected = mu(srk, q) * q ** rank * f[rank]
    return value == expected


def h_ell(ell, j, t_r, n, ctx):
    """The shift-weighted sum q^(ell*j) * sum over semi-idempotent maps of
    the first n-ell coordinates extending the given partial map, of
    mu(srk S) [n-ell-rank S choose j-rank S]_q, over ranks <= j."""
    r = t_r.dom_dim
    if not 0 <= ell <= n - r:
        raise ValueError("0 <= ell <= n - r required")
    if not pm_is_semi_idempotent(t_r):
        raise ValueError("base partial map must be semi-idempotent")
    q = ctx.q
    size = n - ell
    # fixed first r columns; they must vanish below row size to extend
    for col in range(r):
        for i in range(size, n):
            if t_r.mat[i, col]:
                return Fraction(0)
    from itertools import product
    total = Fraction(0)
    free = size * (size - r)
    for values in product(range(q), repeat=free):
        ent = bytearray(size * size)
        for i in range(size):
            for col in range(r):
                ent[i * size + col] = t_r.mat[i, col]
        pos = 0
        for i in range(size):
            for col in range(r, size):
                ent[i * size + col] = values[pos]
                pos += 1
        s = MatFq(ctx, size, size, bytes(ent))
        if not is_semi_idempotent(s):
            continue
        rank = mat_rank(s)
        if rank > j:
            continue
        total += mu(stable_rank(s), q) * q_binomial(size - rank, j - rank, q)
    return Fraction(q ** (ell * j)) * total


def enumerate_partial_maps(n, dom_dim, ctx, semi_idempotent_only=True):
    """All partial maps on the first dom_dim coordinates (optionally only
    the semi-idempotent ones)."""
    from itertools import product
    out = []
    for values in product(range(ctx.q), repeat=n * dom_dim):
        ent = bytearray(n * n)
        pos = 0
        for i in range(n):
            for j in range(dom_dim):
                ent[i * n + j] = values[pos]
                pos += 1
        t = PartialMap(MatFq(ctx, n, n, bytes(ent)), dom_dim)
        if not semi_idempotent_only or pm_is_semi_idempotent(t):
            out.append(t)
    return out
