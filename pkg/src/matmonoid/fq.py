"""Finite field contexts F_q with table-driven element arithmetic.

Field elements are dense indices 0..q-1 (one byte each), so matrices over
F_q can be stored as byte strings and enumerated cheaply.  Index 0 is the
additive identity and index 1 the multiplicative identity.  For extension
fields the index is the value of the coefficient vector read in base p
with the constant term as the least significant digit, so 0 -> 0 and
1 -> 1 automatically.
"""

from __future__ import annotations

from functools import lru_cache

DEFAULT_MAX_Q = 49

# Irreducible moduli over F_p for the built-in extension sizes, stored as
# coefficient tuples (c0, c1, ..., 1) with the constant term first.
_BUILTIN_MODULI = {
    4: (1, 1, 1),            # x^2 + x + 1 over F_2
    8: (1, 1, 0, 1),         # x^3 + x + 1 over F_2
    9: (1, 0, 1),            # x^2 + 1 over F_3
    16: (1, 1, 0, 0, 1),     # x^4 + x + 1 over F_2
    25: (2, 0, 1),           # x^2 + 2 over F_5
    27: (1, 2, 0, 1),        # x^3 + 2x + 1 over F_3
    32: (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1 over F_2
    49: (3, 1, 1),           # x^2 + x + 3 over F_7
}


class FieldSpec:
    """Immutable arithmetic context for F_q, q = p^e.

    Tables are flat tuples indexed by a*q + b; they are verified for the
    field axioms at construction time (exhaustively for q <= 9, on a
    deterministic sample for larger q).
    """

    __slots__ = ("q", "p", "e", "modulus",
                 "add_table", "mul_table", "inv_table", "neg_table")

    def __init__(self, q, p, e, modulus, add_table, mul_table, inv_table, neg_table):
        self.q = q
        self.p = p
        self.e = e
        self.modulus = modulus
        self.add_table = add_table
        self.mul_table = mul_table
        self.inv_table = inv_table
        self.neg_table = neg_table

    def add(self, a, b):
        return self.add_table[a * self.q + b]

    def mul(self, a, b):
        return self.mul_table[a * self.q + b]

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add_table[a * self.q + self.neg_table[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.q)
        return self.inv_table[a]

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return "FieldSpec(q=%d)" % self.q


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_power(q):
    """Return (p, e) with q = p^e and p prime, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if not _is_prime(p):
            continue
        if q % p:
            continue
        e = 0
        m = q
        while m % p == 0:
            m //= p
            e += 1
        return (p, e) if m == 1 else None
    return None


def _poly_mul_mod(a, b, modulus, p):
    """Multiply coefficient tuples over F_p and reduce mod a monic modulus."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    e = len(modulus) - 1
    # modulus is monic: x^e = -(lower coefficients)
    for d in range(len(prod) - 1, e - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for k in range(e):
                prod[d - e + k] = (prod[d - e + k] - c * modulus[k]) % p
    return tuple(prod[:e])


def _poly_divides(div, poly, p):
    """Trial division of dense coefficient lists over F_p; both monic-ish."""
    rem = list(poly)
    dd = len(div) - 1
    lead_inv = pow(div[-1], p - 2, p)
    while len(rem) - 1 >= dd and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dd:
            break
        factor = rem[-1] * lead_inv % p
        shift = len(rem) - 1 - dd
        for k in range(len(div)):
            rem[shift + k] = (rem[shift + k] - factor * div[k]) % p
    return not any(rem)


def _is_irreducible(modulus, p):
    e = len(modulus) - 1
    if e < 1 or modulus[-1] % p == 0:
        return False
    # Root test settles degrees <= 3.
    for x in range(p):
        acc = 0
        for c in reversed(modulus):
            acc = (acc * x + c) % p
        if acc == 0:
            return False
    if e <= 3:
        return True
    # Brute-force factor search over monic polynomials of degree 2..e//2.
    for d in range(2, e // 2 + 1):
        for idx in range(p ** d):
            coeffs = [(idx // p ** k) % p for k in range(d)] + [1]
            if _poly_divides(coeffs, list(modulus), p):
                return False
    return True


def _verify_tables(spec):
    q = spec.q
    add, mul = spec.add, spec.mul
    for a in range(q):
        if add(a, 0) != a or mul(a, 1) != a or mul(a, 0) != 0:
            raise AssertionError("identity axiom failed for q=%d" % q)
        if add(a, spec.neg(a)) != 0:
            raise AssertionError("negation table broken for q=%d" % q)
        if a and mul(a, spec.inv(a)) != 1:
            raise AssertionError("inverse table broken for q=%d" % q)
    for a in range(q):
        for b in range(q):
            if add(a, b) != add(b, a) or mul(a, b) != mul(b, a):
                raise AssertionError("commutativity failed for q=%d" % q)
    if q <= 9:
        triples = [(a, b, c) for a in range(q) for b in range(q) for c in range(q)]
    else:
        stride = max(1, q // 5)
        sample = list(range(0, q, stride))
        triples = [(a, b, c) for a in sample for b in sample for c in sample]
    for a, b, c in triples:
        if add(add(a, b), c) != add(a, add(b, c)):
            raise AssertionError("additive associativity failed for q=%d" % q)
        if mul(mul(a, b), c) != mul(a, mul(b, c)):
            raise AssertionError("multiplicative associativity failed for q=%d" % q)
        if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
            raise AssertionError("distributivity failed for q=%d" % q)


@lru_cache(maxsize=None)
def _build_field(q, modulus, max_q):
    pe = _prime_power(q)
    if pe is None:
        raise ValueError("q=%d is not a prime power" % q)
    p, e = pe
    if q > max_q:
        raise ValueError("q=%d exceeds the supported size limit %d" % (q, max_q))

    if e == 1:
        modulus = ()
        add_table = tuple((a + b) % p for a in range(q) for b in range(q))
        mul_table = tuple((a * b) % p for a in range(q) for b in range(q))
        neg_table = tuple((-a) % p for a in range(q))
        inv_table = tuple(pow(a, p - 2, p) if a else 0 for a in range(q))
    else:
        if modulus is None:
            modulus = _BUILTIN_MODULI.get(q)
            if modulus is None:
                raise ValueError("no built-in modulus for q=%d; supply one" % q)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree %d over F_%d" % (e, p))
        if not _is_irreducible(modulus, p):
            raise ValueError("modulus is reducible over F_%d" % p)

        def coeffs(i):
            return tuple((i // p ** k) % p for k in range(e))

        def index(cs):
            return sum(c * p ** k for k, c in enumerate(cs))

        add_table = []
        for a in range(q):
            ca = coeffs(a)
            for b in range(q):
                cb = coeffs(b)
                add_table.append(index(tuple((x + y) % p for x, y in zip(ca, cb))))
        mul_table = []
        for a in range(q):
            ca = coeffs(a)
            for b in range(q):
                mul_table.append(index(_poly_mul_mod(ca, coeffs(b), modulus, p)))
        add_table = tuple(add_table)
        mul_table = tuple(mul_table)
        neg_table = tuple(index(tuple((-c) % p for c in coeffs(a))) for a in range(q))
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul_table[a * q + b] == 1:
                    inv[a] = b
                    break
            else:
                raise AssertionError("no inverse found; modulus not irreducible?")
        inv_table = tuple(inv)

    spec = FieldSpec(q, p, e, modulus, add_table, mul_table, inv_table, neg_table)
    _verify_tables(spec)
    return spec


def field_new(q, modulus=None, max_q=DEFAULT_MAX_Q):
    """Build (or fetch the cached) arithmetic context for F_q.

    A user-supplied modulus is accepted for extension fields and checked
    for irreducibility.  Raises ValueError for non-prime-powers and for
    sizes beyond max_q.
    """
    return _build_field(q, tuple(modulus) if modulus is not None else None, max_q)


def add(ctx, a, b):
    return ctx.add(a, b)


def mul(ctx, a, b):
    return ctx.mul(a, b)


def neg(ctx, a):
    return ctx.neg(a)


def inv(ctx, a):
    return ctx.inv(a)
