"""The computational discovery pipeline for the rank-ideal unit: build the
class-indexed linear system from last-column-block modifications of class
representatives, solve it exactly per field size, interpolate the counts
in q, solve the triangular polynomial system, and diff the result against
the closed form.

Classes are keyed by the rank sequence (rank u^0, ..., rank u^n); with the
keys in ascending lexicographic order the system matrix is upper
triangular and its diagonal entries are powers of q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import algebra, matfq
from .errors import BudgetExceededError, InterpolationError
from .exact import Laurent, RatMatrix, laurent_interpolate, rat_solve
from .fq import field_new
from .matfq import MatFq, mat_rank, rank_sequence, semi_idempotent_types, \
    type_to_rank_sequence
from .qcomb import mu


def class_keys(n, r):
    """Rank sequences of all semi-idempotent classes of rank <= r, in
    ascending lexicographic order; the standard idempotent's class
    (n, r, r, ...) comes last."""
    keys = []
    for t in semi_idempotent_types(n):
        seq = type_to_rank_sequence(t, n)
        if seq[1] <= r:
            keys.append((seq, t))
    keys.sort(key=lambda kt: kt[0])
    assert keys[-1][0] == (n,) + (r,) * n
    return keys


@dataclass
class KovacsSystem:
    keys: list          # ClassKey tuples, ascending lexicographic
    A: RatMatrix        # integer counts a[row][col]
    rhs: list           # unit vector at the standard idempotent's class


def build_system(n, r, ctx, budget=matfq.DEFAULT_ENUM_BUDGET):
    """Count, for each class representative u_G, the semi-idempotent
    matrices of rank <= r agreeing with it on the first r columns, tallied
    by rank sequence."""
    q = ctx.q
    mods = q ** (n * (n - r))
    pairs = class_keys(n, r)
    keys = [k for k, _ in pairs]
    index = {k: i for i, k in enumerate(keys)}
    if mods * len(keys) > budget:
        raise BudgetExceededError(
            "system enumeration %d exceeds budget %d" % (mods * len(keys), budget))
    counts = [[0] * len(keys) for _ in keys]
    for row, (key, typ) in enumerate(pairs):
        rep = matfq.partial_injective_jordan(typ, n, ctx)
        base = bytearray(rep.entries)
        free_cols = range(r, n)
        for values in product(range(q), repeat=n * (n - r)):
            ent = bytearray(base)
            pos = 0
            for i in range(n):
                for j in free_cols:
                    ent[i * n + j] = values[pos]
                    pos += 1
            cand = MatFq(ctx, n, n, bytes(ent))
            if not matfq.is_semi_idempotent(cand):
                continue
            if mat_rank(cand) > r:
                continue
            col = index.get(rank_sequence(cand))
            if col is not None:
                counts[row][col] += 1
    rhs = [Fraction(1) if k == keys[-1] else Fraction(0) for k in keys]
    return KovacsSystem(keys, RatMatrix(counts), rhs)


def solve_unit_coeffs(n, r, ctx, budget=matfq.DEFAULT_ENUM_BUDGET):
    """Exact per-class unit coefficients at a fixed field size."""
    system = build_system(n, r, ctx, budget)
    sol = rat_solve(system.A, system.rhs)
    return dict(zip(system.keys, sol))


def _fit_count_polynomial(samples):
    """Adaptive exact fit of integer count samples [(q, value)]: lowest
    degree whose fit reproduces every held-out sample."""
    samples = sorted(samples)
    for used in range(1, len(samples)):
        try:
            return laurent_interpolate(samples, 0, used - 1)
        except InterpolationError:
            continue
    raise ValueError("count samples admit no polynomial fit")


def interpolate_coeffs(n, r, q_samples, budget=matfq.DEFAULT_ENUM_BUDGET):
    """Per-class unit coefficients as Laurent polynomials in q.

    The integer system counts are interpolated across the sampled field
    sizes (held-out verified), the triangular system is solved over
    Laurent polynomials, and every resulting coefficient is re-verified
    against the exact per-q solutions.
    """
    q_samples = sorted(set(q_samples))
    if len(q_samples) < 3:
        raise ValueError("need at least 3 distinct sample sizes")
    systems = {}
    for qv in q_samples:
        ctx = field_new(qv)
        systems[qv] = build_system(n, r, ctx, budget)
    keys = systems[q_samples[0]].keys
    size = len(keys)
    entries = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            samples = [(qv, systems[qv].A[i, j]) for qv in q_samples]
            if all(v == 0 for _, v in samples):
                entries[i][j] = Laurent.zero()
            else:
                entries[i][j] = _fit_count_polynomial(samples)
    # ascending key order makes the system upper triangular with monomial
    # q-power diagonals; back substitution divides only by monomials
    for i in range(size):
        for j in range(i):
            if not entries[i][j].is_zero():
                raise AssertionError("system is not upper triangular")
        if not entries[i][i].is_monomial():
            raise AssertionError("diagonal entry is not a q-power")
    rhs = [Laurent.const(1) if k == keys[-1] else Laurent.zero() for k in keys]
    sol = [Laurent.zero()] * size
    for i in range(size - 1, -1, -1):
        acc = rhs[i]
        for j in range(i + 1, size):
            acc = acc - entries[i][j] * sol[j]
        sol[i] = acc.divide_by_monomial(entries[i][i])
    lower = -((n - 1) * r + n * (n - 1) // 2)
    for lau in sol:
        if not lau.is_zero() and (lau.min_deg < lower or lau.max_deg > 0):
            raise AssertionError("solution degree outside the safe window")
    for qv in q_samples:
        exact = rat_solve(systems[qv].A, systems[qv].rhs)
        for lau, val in zip(sol, exact):
            if lau.eval(qv) != val:
                raise AssertionError("interpolated solution fails at q=%d" % qv)
    return dict(zip(keys, sol))


@dataclass
class CompareReport:
    matches: bool
    checked: int
    mismatches: list


def compare_with_closed_form(n, r, ctx, budget=matfq.DEFAULT_ENUM_BUDGET):
    """Expand the solved per-class coefficients over every matrix in each
    class and diff term-by-term against the closed-form unit."""
    coeffs = solve_unit_coeffs(n, r, ctx, budget)
    expanded = {}
    for m in matfq.enumerate_semi_idempotents(n, ctx, r, budget):
        expanded[m.entries] = coeffs[rank_sequence(m)]
    closed = algebra.eta_r(n, ctx, r, budget)
    mismatches = []
    for key in set(expanded) | set(closed.terms):
        a = expanded.get(key, Fraction(0))
        b = closed.terms.get(key, Fraction(0))
        if a != b:
            m = MatFq(ctx, n, n, key)
            mismatches.append((m.to_rows(), a, b))
    return CompareReport(not mismatches, len(expanded), mismatches)


def format_table(values, laurent=False):
    """Render a class-coefficient table in the one-line-per-class layout
    '(G): value' with classes in ascending order."""
    lines = []
    for key in sorted(values):
        val = values[key]
        text = str(val) if laurent else \
            (str(val) if isinstance(val, str) else _frac_str(val))
        lines.append("%s: %s" % (repr(tuple(key)), text))
    return lines


def _frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)
