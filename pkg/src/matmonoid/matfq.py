"""Matrices over F_q: arithmetic, rank, semi-idempotency, conjugacy-class
types, canonical byte encodings, and (budgeted) enumeration.

A matrix is stored as a byte string of field-element indices in row-major
order; the byte string doubles as the canonical sparse-map key.  Matrix
enumeration is lexicographic on that encoding, with the first entry most
significant.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import BudgetExceededError
from .qcomb import partitions

DEFAULT_ENUM_BUDGET = 2 ** 24

# Below this many candidate matrices the plain Python filter is used even
# over prime fields; above it the vectorized screen pays off.
_NUMPY_MIN = 4096
_NUMPY_CHUNK = 1 << 18


class MatFq:
    """Immutable matrix over a fixed F_q context."""

    __slots__ = ("ctx", "rows", "cols", "entries")

    def __init__(self, ctx, rows, cols, entries):
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        if any(x >= ctx.q for x in entries):
            raise ValueError("entry index out of range for F_%d" % ctx.q)
        self.ctx = ctx
        self.rows = rows
        self.cols = cols
        self.entries = bytes(entries)

    @property
    def key(self):
        """Canonical hashable key: the row-major byte string."""
        return self.entries

    def __eq__(self, other):
        return (isinstance(other, MatFq) and self.ctx.q == other.ctx.q
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.ctx.q, self.rows, self.cols, self.entries))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self):
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __repr__(self):
        return "MatFq(q=%d, %r)" % (self.ctx.q, self.to_rows())


def from_rows(ctx, rows):
    r = len(rows)
    c = len(rows[0]) if r else 0
    flat = bytearray()
    for row in rows:
        if len(row) != c:
            raise ValueError("ragged rows")
        flat.extend(row)
    return MatFq(ctx, r, c, bytes(flat))


def zeros(ctx, rows, cols):
    return MatFq(ctx, rows, cols, bytes(rows * cols))


def identity(ctx, n):
    e = bytearray(n * n)
    for i in range(n):
        e[i * n + i] = 1
    return MatFq(ctx, n, n, bytes(e))


def mat_mul(a, b):
    if a.cols != b.rows:
        raise ValueError("dimension mismatch: %dx%d by %dx%d"
                         % (a.rows, a.cols, b.rows, b.cols))
    ctx = a.ctx
    q = ctx.q
    add_t = ctx.add_table
    mul_t = ctx.mul_table
    ae, be = a.entries, b.entries
    n, k, m = a.rows, a.cols, b.cols
    out = bytearray(n * m)
    for i in range(n):
        arow = ae[i * k:(i + 1) * k]
        base = i * m
        for j in range(m):
            s = 0
            for t in range(k):
                s = add_t[s * q + mul_t[arow[t] * q + be[t * m + j]]]
            out[base + j] = s
    return MatFq(ctx, n, m, bytes(out))


def transpose(a):
    out = bytearray(a.rows * a.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            out[j * a.rows + i] = a.entries[i * a.cols + j]
    return MatFq(a.ctx, a.cols, a.rows, bytes(out))


def mat_pow(a, k):
    if a.rows != a.cols:
        raise ValueError("powers need a square matrix")
    if k < 0:
        raise ValueError("negative power")
    result = identity(a.ctx, a.rows)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def _echelon(rows, ctx, reduced=False):
    """In-place elimination on a list of row lists; returns pivot columns."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    pr = 0
    for col in range(ncols):
        pivot = -1
        for i in range(pr, nrows):
            if rows[i][col]:
                pivot = i
                break
        if pivot < 0:
            continue
        rows[pr], rows[pivot] = rows[pivot], rows[pr]
        inv = ctx.inv(rows[pr][col])
        if inv != 1:
            rows[pr] = [ctx.mul(inv, x) for x in rows[pr]]
        rng = range(nrows) if reduced else range(pr + 1, nrows)
        for i in rng:
            if i != pr and rows[i][col]:
                f = rows[i][col]
                rows[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(rows[i], rows[pr])]
        pivots.append(col)
        pr += 1
        if pr == nrows:
            break
    return pivots


def mat_rank(a):
    if a.rows == 0 or a.cols == 0:
        return 0
    rows = a.to_rows()
    return len(_echelon(rows, a.ctx))


def mat_inverse(a):
    if a.rows != a.cols:
        raise ValueError("inverse needs a square matrix")
    n = a.rows
    ctx = a.ctx
    aug = [row + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(a.to_rows())]
    pivots = _echelon(aug, ctx, reduced=True)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return from_rows(ctx, [row[n:] for row in aug])


def rref(a):
    """Reduced row echelon form with zero rows dropped."""
    if a.rows == 0:
        return a
    rows = a.to_rows()
    pivots = _echelon(rows, a.ctx, reduced=True)
    return from_rows(a.ctx, rows[:len(pivots)]) if pivots else \
        MatFq(a.ctx, 0, a.cols, b"")


def is_semi_idempotent(a):
    """True iff a^(n+1) = a^n, i.e. eigenvalues lie in {0,1} with the
    1-eigenspace equal to the generalized 1-eigenspace."""
    if a.rows != a.cols:
        raise ValueError("semi-idempotency needs a square matrix")
    an = mat_pow(a, a.rows)
    return mat_mul(a, an) == an


def stable_rank(a):
    if a.rows != a.cols:
        raise ValueError("stable rank needs a square matrix")
    return mat_rank(mat_pow(a, a.rows))


def rank_sequence(a):
    """(rank a^0, rank a^1, ..., rank a^n) as a tuple."""
    if a.rows != a.cols:
        raise ValueError("rank sequence needs a square matrix")
    n = a.rows
    seq = [n]
    power = identity(a.ctx, n)
    for _ in range(n):
        power = mat_mul(power, a)
        seq.append(mat_rank(power))
    return tuple(seq)


class SemiIdemType(NamedTuple):
    """Conjugacy-class data of a semi-idempotent: identity-block size plus
    the partition giving the nilpotent block's Jordan type."""
    stable_rank: int
    nilpotent_partition: tuple


def semi_idempotent_types(n):
    """All (i, lam) with i + |lam| = n; i descending, lam lex descending."""
    out = []
    for i in range(n, -1, -1):
        for lam in partitions(n - i):
            out.append(SemiIdemType(i, lam))
    return out


def type_to_rank_sequence(t, n):
    i, lam = t
    if i + sum(lam) != n:
        raise ValueError("type does not fit size %d" % n)
    return tuple(i + sum(max(part - j, 0) for part in lam) for j in range(n + 1))


def semi_idem_type(a):
    """Recover (stable rank, nilpotent partition) from the rank sequence."""
    if not is_semi_idempotent(a):
        raise ValueError("matrix is not semi-idempotent")
    seq = rank_sequence(a)
    i = seq[-1]
    conj = [seq[j - 1] - seq[j] for j in range(1, len(seq))]
    conj = [c for c in conj if c]
    # conj is the conjugate of the nilpotent partition
    lam = []
    if conj:
        for row in range(conj[0]):
            lam.append(sum(1 for c in conj if c > row))
    return SemiIdemType(i, tuple(lam))


def partial_injective_jordan(t, n, ctx):
    """Representative of the class (i, lam): diag(I_i, J_lam(0)) conjugated
    by the basis permutation that lists kernel basis vectors last, so the
    first rank columns are non-zero and the remaining columns are zero."""
    i, lam = t
    if i + sum(lam) != n or any(p <= 0 for p in lam):
        raise ValueError("invalid type for size %d" % n)
    # images[src] = dst index, or None for kernel vectors
    images = {}
    kernel = []
    pos = 0
    for k in range(i):
        images[pos] = pos
        pos += 1
    for part in lam:
        for j in range(part - 1):
            images[pos + j] = pos + j + 1
        kernel.append(pos + part - 1)
        pos += part
    order = [k for k in range(n) if k not in kernel] + kernel
    newpos = {old: new for new, old in enumerate(order)}
    out = bytearray(n * n)
    for src, dst in images.items():
        out[newpos[dst] * n + newpos[src]] = 1
    return MatFq(ctx, n, n, bytes(out))


def enumerate_matrices(n, ctx, budget=DEFAULT_ENUM_BUDGET):
    """All n x n matrices over F_q in lexicographic order of their byte
    encoding (first entry most significant)."""
    total = ctx.q ** (n * n)
    if budget is not None and total > budget:
        raise BudgetExceededError(
            "enumerating %d matrices exceeds the budget %d" % (total, budget))
    return _iter_matrices(n, ctx, total)


def _iter_matrices(n, ctx, total):
    q = ctx.q
    size = n * n
    for idx in range(total):
        ent = bytearray(size)
        rem = idx
        for pos in range(size - 1, -1, -1):
            ent[pos] = rem % q
            rem //= q
        yield MatFq(ctx, n, n, bytes(ent))


def _semi_idempotent_keys_numpy(n, q, total):
    """Byte keys of all semi-idempotent n x n matrices over a prime field,
    in lexicographic order, via a chunked vectorized screen."""
    size = n * n
    place = q ** np.arange(size - 1, -1, -1, dtype=np.int64)
    keys = []
    for start in range(0, total, _NUMPY_CHUNK):
        stop = min(start + _NUMPY_CHUNK, total)
        idx = np.arange(start, stop, dtype=np.int64)
        digits = (idx[:, None] // place[None, :]) % q
        mats = digits.reshape(-1, n, n).astype(np.int64)
        power = np.broadcast_to(np.eye(n, dtype=np.int64), mats.shape).copy()
        k = n
        base = mats
        while k:
            if k & 1:
                power = np.einsum("bij,bjk->bik", power, base) % q
            k >>= 1
            if k:
                base = np.einsum("bij,bjk->bik", base, base) % q
        nxt = np.einsum("bij,bjk->bik", mats, power) % q
        mask = np.all(nxt == power, axis=(1, 2))
        flat = digits[mask].astype(np.uint8)
        keys.extend(row.tobytes() for row in flat)
    return keys


def enumerate_semi_idempotents(n, ctx, max_rank=None, budget=DEFAULT_ENUM_BUDGET):
    """Semi-idempotent n x n matrices of rank <= max_rank, lexicographic order."""
    if max_rank is None:
        max_rank = n
    total = ctx.q ** (n * n)
    if budget is not None and total > budget:
        raise BudgetExceededError(
            "enumerating %d matrices exceeds the budget %d" % (total, budget))
    if ctx.e == 1 and total >= _NUMPY_MIN:
        for key in _semi_idempotent_keys_numpy(n, ctx.q, total):
            m = MatFq(ctx, n, n, key)
            if mat_rank(m) <= max_rank:
                yield m
    else:
        for m in _iter_matrices(n, ctx, total):
            if is_semi_idempotent(m) and mat_rank(m) <= max_rank:
                yield m


def enumerate_gl(n, ctx, budget=DEFAULT_ENUM_BUDGET):
    """All invertible n x n matrices, lexicographic order."""
    if n == 0:
        return [MatFq(ctx, 0, 0, b"")]
    return [m for m in enumerate_matrices(n, ctx, budget) if mat_rank(m) == n]
