"""Exact rational linear algebra and Laurent polynomials in q.

Rationals are Python fractions; there is no floating point anywhere in
this package.  Matrices here are small (at most a few hundred rows), so
plain fraction-arithmetic Gaussian elimination is used throughout.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InconsistentSamplesError, InsufficientSamplesError

Rat = Fraction


def rat_to_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def rat_from_str(s):
    return Fraction(s)


class RatMatrix:
    """Dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = [[Fraction(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged rows")

    @staticmethod
    def identity(n):
        return RatMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows, cols):
        return RatMatrix([[0] * cols for _ in range(rows)])

    def __eq__(self, other):
        return (isinstance(other, RatMatrix) and self.entries == other.entries)

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __mul__(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = [[sum((self.entries[i][k] * other.entries[k][j]
                     for k in range(self.cols)), Fraction(0))
                for j in range(other.cols)] for i in range(self.rows)]
        return RatMatrix(out)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RatMatrix([[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.entries, other.entries)])

    def scale(self, c):
        c = Fraction(c)
        return RatMatrix([[c * x for x in row] for row in self.entries])

    def trace(self):
        return sum((self.entries[i][i] for i in range(min(self.rows, self.cols))),
                   Fraction(0))

    def transpose(self):
        return RatMatrix([[self.entries[i][j] for i in range(self.rows)]
                          for j in range(self.cols)])

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def __repr__(self):
        return "RatMatrix(%r)" % self.entries


def _eliminate(rows, reduced=True):
    """In-place elimination over Fraction row lists; returns pivot columns."""
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
        inv = 1 / rows[pr][col]
        if inv != 1:
            rows[pr] = [inv * x for x in rows[pr]]
        rng = range(nrows) if reduced else range(pr + 1, nrows)
        for i in rng:
            if i != pr and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[pr])]
        pivots.append(col)
        pr += 1
        if pr == nrows:
            break
    return pivots


def rat_rank(a):
    rows = [list(row) for row in a.entries]
    return len(_eliminate(rows, reduced=False))


def rat_solve(a, b):
    """Exact solution of a square non-singular system A x = b."""
    if a.rows != a.cols:
        raise ValueError("system matrix must be square")
    if len(b) != a.rows:
        raise ValueError("right-hand side has wrong length")
    aug = [list(row) + [Fraction(b[i])] for i, row in enumerate(a.entries)]
    pivots = _eliminate(aug)
    if len(pivots) != a.rows or pivots != list(range(a.rows)):
        raise ValueError("matrix is singular")
    return [row[-1] for row in aug]


def rat_inverse(a):
    if a.rows != a.cols:
        raise ValueError("inverse needs a square matrix")
    n = a.rows
    aug = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(a.entries)]
    pivots = _eliminate(aug)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return RatMatrix([row[n:] for row in aug])


def null_space(a):
    """Basis of the right null space as a list of Fraction vectors."""
    rows = [list(row) for row in a.entries]
    pivots = _eliminate(rows)
    free = [j for j in range(a.cols) if j not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * a.cols
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -rows[i][f]
        basis.append(vec)
    return basis


class SparseEchelon:
    """Incremental exact echelon basis over sparse rational rows.

    Rows are dicts column -> Fraction.  insert() reduces a row against the
    current basis and absorbs it when non-zero; rank is the basis size.
    """

    def __init__(self):
        self._rows = {}  # leading column -> normalized sparse row

    def insert(self, row):
        row = {c: Fraction(v) for c, v in row.items() if v}
        while row:
            lead = min(row)
            base = self._rows.get(lead)
            if base is None:
                lv = row[lead]
                self._rows[lead] = {c: v / lv for c, v in row.items()}
                return True
            f = row[lead]
            for c, v in base.items():
                nv = row.get(c, Fraction(0)) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return False

    @property
    def rank(self):
        return len(self._rows)

    def reduces_to_zero(self, row):
        row = {c: Fraction(v) for c, v in row.items() if v}
        while row:
            lead = min(row)
            base = self._rows.get(lead)
            if base is None:
                return False
            f = row[lead]
            for c, v in base.items():
                nv = row.get(c, Fraction(0)) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return True


class Laurent:
    """Exact Laurent polynomial in q with rational coefficients."""

    __slots__ = ("min_deg", "coeffs")

    def __init__(self, min_deg, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        lo = 0
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        while lo < len(coeffs) and coeffs[lo] == 0:
            lo += 1
        if lo == len(coeffs):
            self.min_deg = 0
            self.coeffs = ()
        else:
            self.min_deg = min_deg + lo
            self.coeffs = tuple(coeffs[lo:])

    @staticmethod
    def zero():
        return Laurent(0, ())

    @staticmethod
    def const(c):
        return Laurent(0, (Fraction(c),))

    @staticmethod
    def monomial(c, d):
        return Laurent(d, (Fraction(c),))

    def is_zero(self):
        return not self.coeffs

    def is_monomial(self):
        return len(self.coeffs) == 1

    @property
    def max_deg(self):
        return self.min_deg + len(self.coeffs) - 1 if self.coeffs else 0

    def __eq__(self, other):
        return (isinstance(other, Laurent) and self.min_deg == other.min_deg
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.min_deg, self.coeffs))

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.min_deg, other.min_deg)
        hi = max(self.max_deg, other.max_deg)
        out = [Fraction(0)] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.min_deg - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.min_deg - lo + i] += c
        return Laurent(lo, out)

    def __neg__(self):
        return Laurent(self.min_deg, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return Laurent.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Laurent(self.min_deg + other.min_deg, out)

    def divide_by_monomial(self, other):
        if not other.is_monomial():
            raise ValueError("divisor is not a monomial")
        c = other.coeffs[0]
        return Laurent(self.min_deg - other.min_deg, [x / c for x in self.coeffs])

    def eval(self, qval):
        qval = Fraction(qval)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * qval + c
        return acc * qval ** self.min_deg

    def to_json(self):
        return {"min_deg": self.min_deg, "coeffs": [rat_to_str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(obj):
        return Laurent(obj["min_deg"], [Fraction(c) for c in obj["coeffs"]])

    def _poly_str(self):
        # self.min_deg assumed >= 0 here
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            d = self.min_deg + i
            mag = abs(c)
            if d == 0:
                body = rat_to_str(mag)
            else:
                var = "q" if d == 1 else "q^%d" % d
                body = var if mag == 1 else "%s*%s" % (rat_to_str(mag), var)
            if not terms:
                terms.append(body if c > 0 else "-" + body)
            else:
                terms.append((" + " if c > 0 else " - ") + body)
        return "".join(terms) if terms else "0"

    def __str__(self):
        if self.is_zero():
            return "0"
        if self.min_deg >= 0:
            return self._poly_str()
        k = -self.min_deg
        num = Laurent(0, self.coeffs)
        den = "q" if k == 1 else "q^%d" % k
        if num.is_monomial():
            c = num.coeffs[0] if num.min_deg == 0 else None
            if c is not None:
                sign = "-" if c < 0 else ""
                mag = abs(c)
                return "%s%s/%s" % (sign, rat_to_str(mag), den)
        return "(%s)/%s" % (num._poly_str(), den)

    def __repr__(self):
        return "Laurent(%s)" % str(self)


def _lagrange_fit(points):
    """Exact polynomial coefficients (low degree first) through the points."""
    coeffs = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            # multiply basis by (x - xj)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                nxt[k] -= c * xj
                nxt[k + 1] += c
            basis = nxt
            denom *= xi - xj
        scale = yi / denom
        for k, c in enumerate(basis):
            coeffs[k] += scale * c
    return coeffs


def laurent_interpolate(samples, min_deg_bound, max_deg_bound):
    """Fit a Laurent polynomial with support in [min_deg_bound, max_deg_bound]
    through exact samples (q_value, value), verifying every held-out sample.

    Needs (max - min + 1) samples for the fit plus at least one extra.
    """
    if max_deg_bound < min_deg_bound:
        raise ValueError("empty degree window")
    width = max_deg_bound - min_deg_bound + 1
    seen = {}
    for qv, val in samples:
        if qv in seen and seen[qv] != Fraction(val):
            raise InconsistentSamplesError("conflicting samples at q=%s" % qv)
        seen[qv] = Fraction(val)
    samples = sorted(seen.items())
    if len(samples) < width + 1:
        raise InsufficientSamplesError(
            "need %d samples (fit %d, hold out >= 1), got %d"
            % (width + 1, width, len(samples)))
    fit_pts = [(Fraction(qv), Fraction(val) * Fraction(qv) ** (-min_deg_bound))
               for qv, val in samples[:width]]
    coeffs = _lagrange_fit(fit_pts)
    result = Laurent(min_deg_bound, coeffs)
    for qv, val in samples:
        if result.eval(qv) != val:
            raise InconsistentSamplesError(
                "held-out sample at q=%s is not reproduced" % qv)
    return result
