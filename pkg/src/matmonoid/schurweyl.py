"""The rectangular-matrix bimodule, double-centralizer verification, and
the dimension/trace identities of the tensor-power decomposition.

The space of n x m matrices over F_q carries commuting left and right
monoid actions; both act by basis maps (each basis matrix has exactly one
image), so operators are stored as index maps and commutant constraints
assemble sparsely.
"""

from __future__ import annotations

from fractions import Fraction

from . import matfq
from .errors import BudgetExceededError
from .exact import SparseEchelon
from .matfq import MatFq, mat_mul
from .qcomb import gl_order, q_binomial


class BimoduleSpace:
    """Basis bookkeeping for the space of n x m matrices over F_q."""

    __slots__ = ("ctx", "n", "m", "basis", "index")

    def __init__(self, n, m, ctx, budget=matfq.DEFAULT_ENUM_BUDGET):
        total = ctx.q ** (n * m)
        if total > budget:
            raise BudgetExceededError("bimodule basis of %d exceeds budget" % total)
        self.ctx = ctx
        self.n = n
        self.m = m
        self.basis = [bytes(_digits(idx, ctx.q, n * m)) for idx in range(total)]
        self.index = {key: i for i, key in enumerate(self.basis)}

    @property
    def dim(self):
        return len(self.basis)

    def left_action(self, a):
        """Basis map of X -> a X as a list of image indices."""
        out = []
        for key in self.basis:
            x = MatFq(self.ctx, self.n, self.m, key)
            out.append(self.index[mat_mul(a, x).entries])
        return out

    def right_action(self, b):
        """Basis map of X -> X b as a list of image indices."""
        out = []
        for key in self.basis:
            x = MatFq(self.ctx, self.n, self.m, key)
            out.append(self.index[mat_mul(x, b).entries])
        return out


def _digits(idx, q, size):
    ent = bytearray(size)
    for pos in range(size - 1, -1, -1):
        ent[pos] = idx % q
        idx //= q
    return ent


def _acting_maps(space, side):
    ctx = space.ctx
    size = space.n if side == "left" else space.m
    maps = []
    for a in matfq.enumerate_matrices(size, ctx):
        maps.append(space.left_action(a) if side == "left" else space.right_action(a))
    return maps


def commutant_dimension(n, m, ctx, side="left"):
    """Exact dimension of the full commutant of one side's action.

    The commutant conditions for a basis map s are, entrywise,
    E[z, s(x)] = sum over preimages y of z under s of E[y, x].
    """
    space = BimoduleSpace(n, m, ctx)
    d = space.dim
    echelon = SparseEchelon()
    for sigma in _acting_maps(space, side):
        preimages = {}
        for y, z in enumerate(sigma):
            preimages.setdefault(z, []).append(y)
        for x in range(d):
            sx = sigma[x]
            for z in range(d):
                row = {}
                row[z * d + sx] = row.get(z * d + sx, 0) + 1
                for y in preimages.get(z, ()):
                    row[y * d + x] = row.get(y * d + x, 0) - 1
                row = {k: v for k, v in row.items() if v}
                if row:
                    echelon.insert(row)
    return d * d - echelon.rank


def image_dimension(n, m, ctx, side="right"):
    """Rank of the span of one side's acting operators inside the full
    endomorphism space."""
    space = BimoduleSpace(n, m, ctx)
    d = space.dim
    echelon = SparseEchelon()
    for sigma in _acting_maps(space, side):
        row = {}
        for x, z in enumerate(sigma):
            row[z * d + x] = row.get(z * d + x, 0) + 1
        echelon.insert(row)
    return echelon.rank


def actions_commute(n, m, ctx):
    """Whether every left basis map commutes with every right basis map."""
    space = BimoduleSpace(n, m, ctx)
    lefts = _acting_maps(space, "left")
    rights = _acting_maps(space, "right")
    d = space.dim
    for lf in lefts:
        for rt in rights:
            if any(lf[rt[i]] != rt[lf[i]] for i in range(d)):
                return False
    return True


def operators_in_commutant(n, m, ctx, side="right"):
    """Whether each operator of one side satisfies the commutant constraints
    of the other side; with equal dimensions this pins span equality."""
    return actions_commute(n, m, ctx)


def sw_dimension_identity(n, m, q):
    """Dimension shadow of the bimodule decomposition:
    q^(nm) = sum_r [n choose r]_q [m choose r]_q |GL_r|."""
    total = sum(q_binomial(n, r, q) * q_binomial(m, r, q) * gl_order(r, q)
                for r in range(min(n, m) + 1))
    return total == q ** (n * m)


def tensor_trace_check(n, ctx, m):
    """Trace identity on the tensor power: for every monoid element the
    number of fixed rectangular matrices equals the character combination
    over the simple catalog weighted by the smaller side's dimensions."""
    from . import repmod

    space = BimoduleSpace(n, m, ctx)
    catalog = repmod.simple_catalog(n, ctx)
    chars = [((r, name), character)
             for (r, name), mod in catalog
             for character in [repmod.character(mod)]]
    dims = {(r, name): mod_pi.dim // q_binomial(n, r, ctx.q)
            for (r, name), mod_pi in catalog}
    q = ctx.q
    for a in matfq.enumerate_matrices(n, ctx):
        sigma = space.left_action(a)
        lhs = sum(1 for i, img in enumerate(sigma) if img == i)
        rhs = Fraction(0)
        for (r, name), char in chars:
            rhs += q_binomial(m, r, q) * dims[(r, name)] * char[a.entries]
        if lhs != rhs:
            return False
    return True
