"""q-binomials, the sign factor mu, partitions, strips, and the
horizontal/vertical strip inversion operators on partition functions."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def partitions(n):
    """All partitions of n as weakly decreasing tuples, lexicographic descending."""
    if n < 0:
        return ()
    result = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            result.append(tuple(prefix))
            return
        for k in range(min(largest, remaining), 0, -1):
            prefix.append(k)
            rec(remaining - k, k, prefix)
            prefix.pop()

    rec(n, n, [])
    return tuple(result)


def partitions_up_to(bound):
    """All partitions of size <= bound, ordered by size then lex descending."""
    out = []
    for k in range(bound + 1):
        out.extend(partitions(k))
    return out


def conjugate(lam):
    if not lam:
        return ()
    cols = [0] * lam[0]
    for part in lam:
        for i in range(part):
            cols[i] += 1
    return tuple(cols)


def contains(lam, mu):
    """Whether the diagram of mu fits inside the diagram of lam."""
    if len(mu) > len(lam):
        return False
    return all(m <= l for l, m in zip(lam, mu))


def is_horizontal_strip(lam, mu):
    """lam/mu has at most one box per column (requires mu inside lam)."""
    if not contains(lam, mu):
        return False
    lc, mc = conjugate(lam), conjugate(mu)
    return all(lc[i] - (mc[i] if i < len(mc) else 0) <= 1 for i in range(len(lc)))


def is_vertical_strip(lam, mu):
    """lam/mu has at most one box per row (requires mu inside lam)."""
    if not contains(lam, mu):
        return False
    return all(lam[i] - (mu[i] if i < len(mu) else 0) <= 1 for i in range(len(lam)))


def q_binomial(n, m, q):
    """Gaussian binomial coefficient evaluated at an integer q >= 2.

    Out-of-range m returns 0 by convention.
    """
    if m < 0 or m > n:
        return 0
    m = min(m, n - m)
    result = 1
    for i in range(1, m + 1):
        result = result * (q ** (n - m + i) - 1)
        div = q ** i - 1
        assert result % div == 0
        result //= div
    return result


def mu(n, q):
    """(-1)^n * q^(n choose 2); the sign-and-power factor in unit coefficients."""
    return (-1) ** n * q ** (n * (n - 1) // 2)


def gl_order(r, q):
    """Order of the group of invertible r x r matrices over F_q."""
    result = 1
    for i in range(r):
        result *= q ** r - q ** i
    return result


def sum_identity_check(t, r, q):
    """Evaluate sum_{j=t..r} mu(j) q^(-(r-1)j) [r-t choose j-t]_q and compare
    with delta_{r,t} / mu(r)."""
    if not (1 <= t <= r):
        raise ValueError("need 1 <= t <= r")
    lhs = Fraction(0)
    for j in range(t, r + 1):
        lhs += Fraction(mu(j, q), q ** ((r - 1) * j)) * q_binomial(r - t, j - t, q)
    rhs = Fraction(1, mu(r, q)) if r == t else Fraction(0)
    return lhs == rhs


class PartitionFn:
    """Finitely supported rational function on partitions, truncated to a
    stated size bound."""

    __slots__ = ("values", "bound")

    def __init__(self, values, bound):
        self.bound = bound
        self.values = {}
        for lam, v in values.items():
            v = Fraction(v)
            if v:
                if sum(lam) > bound:
                    raise ValueError("support exceeds the degree bound")
                self.values[tuple(lam)] = v

    def __call__(self, lam):
        return self.values.get(tuple(lam), Fraction(0))

    def __eq__(self, other):
        return (isinstance(other, PartitionFn)
                and self.values == other.values and self.bound == other.bound)

    def __repr__(self):
        return "PartitionFn(%r, bound=%d)" % (self.values, self.bound)


def delta_fn(lam, bound):
    return PartitionFn({tuple(lam): 1}, bound)


def op_A(phi):
    """Sum phi over horizontal strips: (A phi)(lam) = sum_{lam/mu in HS} phi(mu)."""
    out = {}
    for lam in partitions_up_to(phi.bound):
        total = Fraction(0)
        for mu_, v in phi.values.items():
            if is_horizontal_strip(lam, mu_):
                total += v
        if total:
            out[lam] = total
    return PartitionFn(out, phi.bound)


def op_B(phi):
    """Signed sum over vertical strips:
    (B phi)(lam) = sum_{lam/mu in VS} (-1)^(|lam|-|mu|) phi(mu)."""
    out = {}
    for lam in partitions_up_to(phi.bound):
        total = Fraction(0)
        size = sum(lam)
        for mu_, v in phi.values.items():
            if is_vertical_strip(lam, mu_):
                total += (-1) ** (size - sum(mu_)) * v
        if total:
            out[lam] = total
    return PartitionFn(out, phi.bound)
