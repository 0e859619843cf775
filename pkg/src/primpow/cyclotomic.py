"""Exact arithmetic in cyclotomic fields Q(zeta_n) and dense matrices over them.

A field element is a polynomial in zeta_n reduced modulo the n-th cyclotomic
polynomial, stored as a vector of phi(n) rationals.  This representation is
canonical per conductor, so equality is coefficient comparison after lifting
both operands into a common conductor.  All operations are pure; values are
immutable and hashable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

_ZERO = Fraction(0)
_ONE = Fraction(1)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("conductor must be positive")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return tuple(out)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    # num, den monic-ish integer polys (low-to-high); den must divide num exactly
    num = list(num)
    deg_d = len(den) - 1
    lead = den[-1]
    quot = [0] * (len(num) - deg_d)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            raise ArithmeticError("non-exact polynomial division")
        quot[i - deg_d] = q
        for j, dj in enumerate(den):
            num[i - deg_d + j] -= q * dj
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, low degree first, monic."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in _divisors(n):
        if d < n:
            poly = _poly_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_vectors(n: int) -> tuple[tuple[int, ...], ...]:
    """Coefficient vectors of zeta_n^m mod Phi_n for m = 0 .. 2*phi(n)-2.

    Degrees up to 2*phi-2 cover products of two reduced elements.
    """
    phi = euler_phi(n)
    if n == 1:
        return ((1,),) * 1 + tuple((1,) for _ in range(2 * phi - 2))
    marker = cyclotomic_polynomial(n)
    # x^phi = -(marker[0] + marker[1] x + ... + marker[phi-1] x^{phi-1})
    rows: list[tuple[int, ...]] = []
    for m in range(phi):
        row = [0] * phi
        row[m] = 1
        rows.append(tuple(row))
    for m in range(phi, 2 * phi - 1):
        prev = rows[m - 1]
        shifted = [0] + list(prev[: phi - 1])
        top = prev[phi - 1]
        if top:
            for j in range(phi):
                shifted[j] -= top * marker[j]
        rows.append(tuple(shifted))
    return tuple(rows)


@lru_cache(maxsize=None)
def _root_power_vector(n: int, m: int) -> tuple[int, ...]:
    """Coefficient vector of zeta_n^m mod Phi_n for any m >= 0."""
    phi = euler_phi(n)
    m %= n
    if m < 2 * phi - 1:
        return _power_vectors(n)[m]
    marker = cyclotomic_polynomial(n)
    row = list(_power_vectors(n)[phi - 1])
    for _ in range(phi - 1, m):
        top = row[phi - 1]
        row = [0] + row[: phi - 1]
        if top:
            for j in range(phi):
                row[j] -= top * marker[j]
    return tuple(row)


@lru_cache(maxsize=None)
def _conj_rows(n: int) -> tuple[tuple[int, ...], ...]:
    # image of basis power zeta^j under zeta -> zeta^(n-1)
    return tuple(_root_power_vector(n, ((n - 1) * j) % n) for j in range(euler_phi(n)))


@lru_cache(maxsize=None)
def _embed_rows(d: int, n: int) -> tuple[tuple[int, ...], ...]:
    # image of the conductor-d basis power zeta_d^j inside conductor n
    if n % d:
        raise ValueError("conductor %d does not divide %d" % (d, n))
    step = n // d
    return tuple(_root_power_vector(n, j * step) for j in range(euler_phi(d)))


def _solve_in_subfield(d: int, n: int, coeffs) -> tuple[Fraction, ...] | None:
    """Express a conductor-n coefficient vector in the conductor-d basis, if possible."""
    rows = _embed_rows(d, n)
    ncols = euler_phi(d)
    nrows = euler_phi(n)
    # solve sum_j y_j * rows[j] = coeffs by Gaussian elimination on the transpose
    aug = [[Fraction(rows[j][i]) for j in range(ncols)] + [Fraction(coeffs[i])]
           for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            return None
    sol = [_ZERO] * ncols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][ncols]
    return tuple(sol)


class CycNum:
    """Element of Q(zeta_n), reduced mod Phi_n.

    Binary operations lift both arguments to the lcm of their conductors.
    Hashing canonicalizes to the smallest cyclotomic subfield containing the
    value, so equal values hash equally across conductors.
    """

    __slots__ = ("n", "coeffs", "_canon")

    def __init__(self, n: int, coeffs):
        coeffs = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coeffs)
        if len(coeffs) != euler_phi(n):
            raise ValueError("need %d coefficients for conductor %d" % (euler_phi(n), n))
        self.n = n
        self.coeffs = coeffs
        self._canon = None

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_rational(r) -> "CycNum":
        return CycNum(1, (Fraction(r),))

    @staticmethod
    def zero() -> "CycNum":
        return CycNum(1, (_ZERO,))

    @staticmethod
    def one() -> "CycNum":
        return CycNum(1, (_ONE,))

    @staticmethod
    def root_of_unity(n: int, power: int = 1) -> "CycNum":
        """zeta_n^power, stored at the primitive conductor."""
        if n < 1:
            raise ValueError("order must be positive")
        power %= n
        g = gcd(power, n)
        if g:
            n, power = n // g, power // g
        if n == 1:
            return CycNum.one()
        if n == 2:
            return CycNum.from_rational(-1)
        if n % 2 == 0 and (n // 2) % 2 == 1:
            # zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
            m = n // 2
            sign = -1 if power % 2 else 1
            base = CycNum.root_of_unity(m, (power * ((m + 1) // 2)) % m)
            return -base if sign < 0 else base
        vec = _root_power_vector(n, power)
        return CycNum(n, vec)

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number: %r" % (self,))
        return self.coeffs[0]

    def embed(self, m: int) -> "CycNum":
        """The same field element re-expressed at conductor m (n must divide m)."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError("conductor %d does not divide %d" % (self.n, m))
        if self.is_rational():
            phi = euler_phi(m)
            return CycNum(m, (self.coeffs[0],) + (_ZERO,) * (phi - 1))
        rows = _embed_rows(self.n, m)
        phi = euler_phi(m)
        out = [_ZERO] * phi
        for c, row in zip(self.coeffs, rows):
            if c:
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CycNum(m, out)

    def canonical(self) -> tuple[int, tuple[Fraction, ...]]:
        """(conductor, coefficients) at the smallest cyclotomic subfield."""
        if self._canon is not None:
            return self._canon
        n, coeffs = self.n, self.coeffs
        while True:
            if all(c == 0 for c in coeffs[1:]):
                self._canon = (1, (coeffs[0],))
                return self._canon
            for p in _prime_factors(n):
                d = n // p
                if d <= 2:
                    continue  # Q(zeta_1) and Q(zeta_2) are Q; rational case above
                sol = _solve_in_subfield(d, n, coeffs)
                if sol is not None:
                    n, coeffs = d, sol
                    break
            else:
                self._canon = (n, coeffs)
                return self._canon

    # -- arithmetic -----------------------------------------------------

    def _unify(self, other: "CycNum") -> tuple["CycNum", "CycNum"]:
        if self.n == other.n:
            return self, other
        m = self.n * other.n // gcd(self.n, other.n)
        return self.embed(m), other.embed(m)

    @staticmethod
    def _coerce(x) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return CycNum.from_rational(x)
        raise TypeError("cannot coerce %r to CycNum" % (x,))

    def __add__(self, other):
        try:
            other = CycNum._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._unify(other)
        return CycNum(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        try:
            other = CycNum._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return CycNum._coerce(other) - self

    def __mul__(self, other):
        try:
            other = CycNum._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return CycNum.zero()
        if self.is_rational():
            r = self.coeffs[0]
            return CycNum(other.n, tuple(r * c for c in other.coeffs))
        if other.is_rational():
            r = other.coeffs[0]
            return CycNum(self.n, tuple(r * c for c in self.coeffs))
        a, b = self._unify(other)
        phi = euler_phi(a.n)
        conv = [_ZERO] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        rows = _power_vectors(a.n)
        out = list(conv[:phi])
        for m in range(phi, 2 * phi - 1):
            c = conv[m]
            if c:
                row = rows[m]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CycNum(a.n, out)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if self.is_rational():
            return CycNum.from_rational(1 / self.coeffs[0])
        # extended Euclid for (self, Phi_n) over Q[x]; gcd is a nonzero constant
        phi = euler_phi(self.n)

        def _deg(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i] != 0:
                    return i
            return -1

        def _polymul(p, q):
            out = [_ZERO] * (len(p) + len(q) - 1)
            for i, a in enumerate(p):
                if a:
                    for j, b in enumerate(q):
                        if b:
                            out[i + j] += a * b
            return out

        def _polysub(p, q):
            out = list(p) + [_ZERO] * max(0, len(q) - len(p))
            for i, b in enumerate(q):
                out[i] -= b
            while len(out) > 1 and out[-1] == 0:
                out.pop()
            return out

        def _polydivmod(p, q):
            dq = _deg(q)
            rem = list(p)
            quot = [_ZERO] * max(1, _deg(p) - dq + 1)
            while _deg(rem) >= dq:
                dr = _deg(rem)
                c = rem[dr] / q[dq]
                quot[dr - dq] = c
                for j in range(dq + 1):
                    rem[dr - dq + j] -= c * q[j]
                while len(rem) > 1 and rem[-1] == 0:
                    rem.pop()
            return quot, rem

        r0 = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        r1 = list(self.coeffs)
        while len(r1) > 1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [_ZERO], [_ONE]
        while _deg(r1) > 0:
            q, rem = _polydivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _polysub(s0, _polymul(q, s1))
        if _deg(r1) != 0:
            raise ZeroDivisionError("zero divisor mod Phi_n (cannot happen for a field)")
        unit = r1[0]
        # s1 * self = unit (mod Phi_n); reduce s1 and divide by the unit
        _, red = _polydivmod(s1, [Fraction(c) for c in cyclotomic_polynomial(self.n)]) \
            if _deg(s1) >= phi else (None, s1)
        inv = [(red[i] if i < len(red) else _ZERO) / unit for i in range(phi)]
        return CycNum(self.n, inv)

    def __truediv__(self, other):
        other = CycNum._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycNum._coerce(other) * self.inverse()

    def conj(self) -> "CycNum":
        """Complex conjugation: the field automorphism zeta -> zeta^(n-1)."""
        if self.is_rational():
            return self
        rows = _conj_rows(self.n)
        phi = euler_phi(self.n)
        out = [_ZERO] * phi
        for c, row in zip(self.coeffs, rows):
            if c:
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CycNum(self.n, out)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycNum.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycNum):
            return NotImplemented
        if self.n == other.n:
            return self.coeffs == other.coeffs
        return self.canonical() == other.canonical()

    def __hash__(self):
        n, coeffs = self.canonical()
        if n == 1:
            return hash(coeffs[0])
        return hash((n, coeffs))

    def __repr__(self):
        n, coeffs = self.canonical()
        if n == 1:
            return "CycNum(%s)" % (coeffs[0],)
        terms = []
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                terms.append("%s*z%d^%d" % (c, n, i))
        return "CycNum(" + (" + ".join(terms) or "0") + ")"

    # -- serialization ---------------------------------------------------

    def to_obj(self):
        return {"n": self.n, "coeffs": ["%d/%d" % (c.numerator, c.denominator) for c in self.coeffs]}

    @staticmethod
    def from_obj(obj) -> "CycNum":
        return CycNum(obj["n"], tuple(Fraction(s) for s in obj["coeffs"]))


def as_cyc(x) -> CycNum:
    return CycNum._coerce(x)


class SingularMatrixError(ArithmeticError):
    """Raised when inverting a singular matrix; carries the zero determinant."""

    def __init__(self, determinant):
        super().__init__("matrix is singular (determinant = %r)" % (determinant,))
        self.determinant = determinant


class CycMatrix:
    """Dense matrix with CycNum entries.  Immutable."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        self.rows = tuple(tuple(as_cyc(x) for x in row) for row in rows)
        if not self.rows or not self.rows[0]:
            raise ValueError("matrix must have positive dimensions")
        ncols = len(self.rows[0])
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged rows")
        self._hash = None

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @staticmethod
    def identity(n: int) -> "CycMatrix":
        one, zero = CycNum.one(), CycNum.zero()
        return CycMatrix([[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(r: int, c: int) -> "CycMatrix":
        zero = CycNum.zero()
        return CycMatrix([[zero] * c for _ in range(r)])

    @staticmethod
    def diagonal(entries) -> "CycMatrix":
        entries = [as_cyc(e) for e in entries]
        zero = CycNum.zero()
        n = len(entries)
        return CycMatrix([[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("dimension mismatch in matrix addition")
        return CycMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CycMatrix([[-x for x in row] for row in self.rows])

    def scale(self, c) -> "CycMatrix":
        c = as_cyc(c)
        return CycMatrix([[c * x for x in row] for row in self.rows])

    def __mul__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matrix product")
        bt = list(zip(*other.rows))
        out = []
        zero = CycNum.zero()
        for row in self.rows:
            new_row = []
            for col in bt:
                acc = zero
                for x, y in zip(row, col):
                    if not x.is_zero() and not y.is_zero():
                        acc = acc + x * y
                new_row.append(acc)
            out.append(new_row)
        return CycMatrix(out)

    def transpose(self) -> "CycMatrix":
        return CycMatrix(list(zip(*self.rows)))

    def conj(self) -> "CycMatrix":
        return CycMatrix([[x.conj() for x in row] for row in self.rows])

    def kron(self, other: "CycMatrix") -> "CycMatrix":
        """Kronecker product; block (i, j) equals self[i, j] * other."""
        out = []
        for i in range(self.nrows):
            for p in range(other.nrows):
                row = []
                for j in range(self.ncols):
                    a = self.rows[i][j]
                    row.extend(a * b for b in other.rows[p])
                out.append(row)
        return CycMatrix(out)

    def determinant(self) -> CycNum:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        m = [list(row) for row in self.rows]
        det = CycNum.one()
        for c in range(n):
            pr = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
            if pr is None:
                return CycNum.zero()
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = -det
            pivot = m[c][c]
            det = det * pivot
            inv = pivot.inverse()
            for i in range(c + 1, n):
                if not m[i][c].is_zero():
                    f = m[i][c] * inv
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return det

    def inverse(self) -> "CycMatrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        zero, one = CycNum.zero(), CycNum.one()
        aug = [list(row) + [one if i == j else zero for j in range(n)]
               for i, row in enumerate(self.rows)]
        for c in range(n):
            pr = next((i for i in range(c, n) if not aug[i][c].is_zero()), None)
            if pr is None:
                raise SingularMatrixError(CycNum.zero())
            aug[c], aug[pr] = aug[pr], aug[c]
            inv = aug[c][c].inverse()
            aug[c] = [x * inv for x in aug[c]]
            for i in range(n):
                if i != c and not aug[i][c].is_zero():
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        return CycMatrix([row[n:] for row in aug])

    def __pow__(self, e: int):
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        if e < 0:
            return self.inverse() ** (-e)
        result = CycMatrix.identity(self.nrows)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if i == j:
                    if not x.is_rational() or x.coeffs[0] != 1:
                        return False
                elif not x.is_zero():
                    return False
        return True

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "CycMatrix":
        return CycMatrix([row[c0:c1] for row in self.rows[r0:r1]])

    @staticmethod
    def block(blocks) -> "CycMatrix":
        """Assemble from a 2-D grid of CycMatrix blocks."""
        out = []
        for block_row in blocks:
            heights = {b.nrows for b in block_row}
            if len(heights) != 1:
                raise ValueError("inconsistent block heights")
            for i in range(block_row[0].nrows):
                row = []
                for b in block_row:
                    row.extend(b.rows[i])
                out.append(row)
        return CycMatrix(out)

    def column(self, j: int) -> tuple[CycNum, ...]:
        return tuple(row[j] for row in self.rows)

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if self.nrows != other.nrows or self.ncols != other.ncols:
            return False
        return all(x == y for r, s in zip(self.rows, other.rows) for x, y in zip(r, s))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols,
                               tuple(hash(x) for row in self.rows for x in row)))
        return self._hash

    def __repr__(self):
        return "CycMatrix(%d x %d)" % (self.nrows, self.ncols)

    def to_obj(self):
        return [[x.to_obj() for x in row] for row in self.rows]

    @staticmethod
    def from_obj(obj) -> "CycMatrix":
        return CycMatrix([[CycNum.from_obj(x) for x in row] for row in obj])


def mat_mul(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    return a * b


def mat_add(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    return a + b


def mat_inverse(m: CycMatrix) -> CycMatrix:
    return m.inverse()


def kron(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    return a.kron(b)


def conj(x: CycNum) -> CycNum:
    return x.conj()


def conj_matrix(m: CycMatrix) -> CycMatrix:
    return m.conj()


def embed(x: CycNum, m: int) -> CycNum:
    return x.embed(m)


# -- generic exact linear algebra over the field -------------------------

def rref(rows: list[list[CycNum]]) -> tuple[list[list[CycNum]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot column indices)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(rows: list[list[CycNum]], ncols: int) -> list[tuple[CycNum, ...]]:
    """Basis of the right nullspace of the given row system (RREF convention)."""
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    zero, one = CycNum.zero(), CycNum.one()
    basis = []
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for row, p in zip(red, pivots):
            vec[p] = -row[f]
        basis.append(tuple(vec))
    return basis


def solve_consistent(rows: list[list[CycNum]], rhs: list[CycNum]):
    """One solution of rows * x = rhs, or None when inconsistent."""
    if not rows:
        return None if any(not b.is_zero() for b in rhs) else ()
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    for row, p in zip(red, pivots):
        if p == ncols:
            return None
    zero = CycNum.zero()
    sol = [zero] * ncols
    for row, p in zip(red, pivots):
        sol[p] = row[ncols]
    return tuple(sol)
