"""The representation catalogue and the oriented-characteristic machinery.

A representation of F_2 is a pair of invertible matrices over a cyclotomic
field.  A representation is oriented characteristic when every
orientation-preserving automorphism of F_2 is absorbed by conjugation in
GL(n, C) and every orientation-reversing one by conjugation composed with
complex conjugation; this reduces to six matrix identities in three witness
matrices, checked exactly here.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from primpow.cyclotomic import CycMatrix, CycNum, nullspace
from primpow.farey import Slope, normal_generators, outer_rep, primitive_word, slope_sequence
from primpow.words import Word, random_word, shear_power

ONE = CycNum.one()
I4 = CycNum.root_of_unity(4)  # the imaginary unit


class ImageOverflowError(RuntimeError):
    """Image closure exceeded the requested bound."""


class MissingWitnessError(RuntimeError):
    """Operation requires a representation with a verified witness."""


class CharWitness:
    """Witness matrices (M1, M2, Mminus) for the characteristic criterion."""

    __slots__ = ("m1", "m2", "mminus")

    def __init__(self, m1: CycMatrix, m2: CycMatrix, mminus: CycMatrix):
        for m in (m1, m2, mminus):
            m.inverse()  # raises on a singular witness
        self.m1 = m1
        self.m2 = m2
        self.mminus = mminus


class Rep:
    """Homomorphism F_2 -> GL(n) given by the images of a and b."""

    def __init__(self, img_a: CycMatrix, img_b: CycMatrix, name: str = "",
                 witness: CharWitness | None = None):
        if img_a.nrows != img_a.ncols or img_b.nrows != img_b.ncols:
            raise ValueError("generator images must be square")
        if img_a.nrows != img_b.nrows:
            raise ValueError("generator images must share a dimension")
        self.img_a = img_a
        self.img_b = img_b
        self.inv_a = img_a.inverse()
        self.inv_b = img_b.inverse()
        self.name = name
        self.witness = witness

    @property
    def dim(self) -> int:
        return self.img_a.nrows

    def evaluate(self, w: Word) -> CycMatrix:
        out = CycMatrix.identity(self.dim)
        for gen, exp in w.runs:
            if exp > 0:
                base = self.img_a if gen == 0 else self.img_b
                out = out * base ** exp
            else:
                base = self.inv_a if gen == 0 else self.inv_b
                out = out * base ** (-exp)
        return out

    def conductor(self) -> int:
        n = 1
        for m in (self.img_a, self.img_b):
            for row in m.rows:
                for x in row:
                    c = x.canonical()[0]
                    n = n * c // gcd(n, c)
        return n

    def to_obj(self):
        return {"n": self.dim, "conductor": self.conductor(), "name": self.name,
                "img_a": self.img_a.to_obj(), "img_b": self.img_b.to_obj()}

    def __repr__(self):
        return "Rep(%s, dim %d)" % (self.name or "anonymous", self.dim)


def evaluate(rep: Rep, w: Word) -> CycMatrix:
    return rep.evaluate(w)


def tensor(r1: Rep, r2: Rep) -> Rep:
    """Tensor product; witnesses combine as Kronecker products."""
    witness = None
    if r1.witness is not None and r2.witness is not None:
        witness = CharWitness(r1.witness.m1.kron(r2.witness.m1),
                              r1.witness.m2.kron(r2.witness.m2),
                              r1.witness.mminus.kron(r2.witness.mminus))
    name = "tensor(%s,%s)" % (r1.name, r2.name) if r1.name and r2.name else ""
    return Rep(r1.img_a.kron(r2.img_a), r1.img_b.kron(r2.img_b), name, witness)


def conj_rep(r: Rep) -> Rep:
    witness = None
    if r.witness is not None:
        witness = CharWitness(r.witness.m1.conj(), r.witness.m2.conj(),
                              r.witness.mminus.conj())
    return Rep(r.img_a.conj(), r.img_b.conj(),
               "conj(%s)" % r.name if r.name else "", witness)


def characteristic_failures(rep: Rep, w: CharWitness) -> tuple[str, ...]:
    """Labels of the criterion equations that fail, empty when all hold."""
    a, b = rep.img_a, rep.img_b
    ab = a * b
    checks = [
        ("1a", w.m1 == a * w.m1 * b),
        ("1b", w.m1 * a == b * w.m1),
        ("2a", w.m2 * a == a * w.m2),
        ("2b", w.m2 * b == ab * w.m2),
        ("-a", w.mminus == a * w.mminus * a.conj()),
        ("-b", w.mminus * b.conj() == b * w.mminus),
    ]
    return tuple(label for label, ok in checks if not ok)


def check_characteristic(rep: Rep, w: CharWitness) -> bool:
    return not characteristic_failures(rep, w)


# -- the builtin catalogue -------------------------------------------------

def _m(rows) -> CycMatrix:
    return CycMatrix(rows)


def _omega(k: int) -> CycNum:
    return CycNum.root_of_unity(k)


def _sign_rep() -> Rep:
    w = CharWitness(
        _m([[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
        _m([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
        CycMatrix.identity(3))
    return Rep(CycMatrix.diagonal([-1, -1, 1]), CycMatrix.diagonal([1, -1, -1]),
               "rho2", w)


def _heisenberg_rep(k: int) -> Rep:
    if k < 3 or k % 2 == 0:
        raise ValueError("odd k >= 3 required")
    w = _omega(k)
    img_a = CycMatrix.diagonal([w ** i for i in range(k)])
    rows = [[ONE if j == i + 1 else CycNum.zero() for j in range(k)] for i in range(k)]
    rows[k - 1][0] = ONE
    img_b = CycMatrix(rows)
    m1 = CycMatrix([[w ** ((i - 1) * (j - 1)) for j in range(1, k + 1)]
                    for i in range(1, k + 1)])
    m2 = CycMatrix.diagonal([w ** (-((i - 1) * (i - 2)) // 2 % k)
                             for i in range(1, k + 1)])
    return Rep(img_a, img_b, "rho_odd:%d" % k,
               CharWitness(m1, m2, CycMatrix.identity(k)))


def _quaternion_rep() -> Rep:
    i = I4
    w = CharWitness(_m([[1, i], [i, 1]]), CycMatrix.diagonal([i, 1]),
                    CycMatrix.identity(2))
    return Rep(_m([[i, 0], [0, -i]]), _m([[0, 1], [-1, 0]]), "rho4", w)


def _rho6() -> Rep:
    r = tensor(_sign_rep(), _heisenberg_rep(3))
    r.name = "rho6"
    return r


def _trho4() -> Rep:
    i = I4
    img_a = CycMatrix.diagonal([i, -i, 1, 1])
    img_b = _m([[0, 1, 1, 0], [-1, 0, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]])
    m1 = _m([[2, 2 * i, i - 1, -i - 1],
             [2 * i, 2, -i + 1, -i - 1],
             [0, 0, 2 * i - 2, 0],
             [0, 0, 0, -2 * i - 2]])
    m2 = CycMatrix.diagonal([i, 1, 1, i])
    return Rep(img_a, img_b, "trho4", CharWitness(m1, m2, CycMatrix.identity(4)))


def _trho6() -> Rep:
    base = _rho6()
    cols = [_difference_column(9, 0, 2), _difference_column(9, 3, 5),
            _basis_column(9, 7)]
    rep = _block_extension(base, [(_zero_column(9), col) for col in cols])
    rep.name = "trho6"
    w = _omega(3)
    h = Fraction(1, 2)
    m1 = _m([
        [0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, -h],
        [0, 0, 0, 0, 0, 0, 1, w, w * w, 0, 0, 1],
        [0, 0, 0, 0, 0, 0, 1, w * w, w, 0, 0, 1],
        [0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, w, w * w, 0, 0, 0, 0, -2 * w - 1, 0],
        [0, 0, 0, 1, w * w, w, 0, 0, 0, 0, 2 * w + 1, 0],
        [1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0],
        [1, w, w * w, 0, 0, 0, 0, 0, 0, -1, 0, 0],
        [1, w * w, w, 0, 0, 0, 0, 0, 0, -1, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, Fraction(-3, 2)],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -2 * w - 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, -2, 0, 0],
    ])
    m2 = _m([
        [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, w * w, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, w * w, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, w * w, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, w * w],
    ])
    rep.witness = CharWitness(m1, m2, CycMatrix.identity(12))
    return rep


def _trho_odd(k: int) -> Rep:
    base = _heisenberg_rep(k)
    cols = [(_zero_column(k), _difference_column(k, j, k - 1 - j))
            for j in range(1, (k - 3) // 2 + 1)]
    rep = _block_extension(base, cols)
    rep.name = "trho_odd:%d" % k
    return rep


def _ttrho4() -> Rep:
    i = I4
    img_a = CycMatrix.diagonal([1, -1, -i, -i, -1, 1, i, i, 1])
    img_b = _m([
        [0, 0, 0, 0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, -1, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 1, 0, 1],
        [0, 0, 0, 0, 0, 0, 0, 1, 0],
        [0, -1, -1, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, -1, 0, 0, 0, 0, 0],
        [0, 0, -1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, -1, 0, 0, 0, 0, -1],
        [0, 0, 0, 0, 0, 0, 0, 0, 1],
    ])
    m1 = _m([
        [2, 2 * i, i - 1, -i - 1, -2 * i, 2, i + 1, i - 1, i - 1],
        [2 * i, 2, -i + 1, -i - 1, 2, -2 * i, -i - 1, i - 1, i - 1],
        [0, 0, 2 * i - 2, 0, 0, 0, 2 * i + 2, 0, 2],
        [0, 0, 0, -2 * i - 2, 0, 0, 0, 2 * i - 2, -2],
        [-2 * i, 2, i + 1, i - 1, 2, 2 * i, i - 1, -i - 1, -i - 1],
        [2, -2 * i, -i - 1, i - 1, 2 * i, 2, -i + 1, -i - 1, i + 1],
        [0, 0, 2 * i + 2, 0, 0, 0, 2 * i - 2, 0, -2],
        [0, 0, 0, 2 * i - 2, 0, 0, 0, -2 * i - 2, -2],
        [0, 0, 0, 0, 0, 0, 0, 0, 4],
    ])
    m2 = CycMatrix.diagonal([1, -i, -i, 1, i, 1, 1, i, 1])
    return Rep(img_a, img_b, "ttrho4", CharWitness(m1, m2, CycMatrix.identity(9)))


def _zero_column(n: int):
    return tuple(CycNum.zero() for _ in range(n))


def _basis_column(n: int, i: int, sign: int = 1):
    return tuple((ONE if sign > 0 else -ONE) if j == i else CycNum.zero()
                 for j in range(n))


def _difference_column(n: int, i: int, j: int):
    return tuple(ONE if t == i else (-ONE if t == j else CycNum.zero())
                 for t in range(n))


def _block_extension(base: Rep, columns) -> Rep:
    """Extension with the given (a-column, b-column) translation pairs."""
    n = base.dim
    m = len(columns)
    zero = CycNum.zero()
    rows_a, rows_b = [], []
    cols_a = [tuple(col[0]) for col in columns]
    cols_b = [tuple(col[1]) for col in columns]
    for i in range(n):
        rows_a.append(list(base.img_a.rows[i]) + [cols_a[j][i] for j in range(m)])
        rows_b.append(list(base.img_b.rows[i]) + [cols_b[j][i] for j in range(m)])
    for i in range(m):
        tail = [ONE if j == n + i else zero for j in range(n + m)]
        rows_a.append(tail)
        rows_b.append(list(tail))
    return Rep(CycMatrix(rows_a), CycMatrix(rows_b))


_BUILDERS = {
    "rho2": _sign_rep,
    "rho4": _quaternion_rep,
    "rho6": _rho6,
    "trho4": _trho4,
    "trho6": _trho6,
    "ttrho4": _ttrho4,
}


def builtin(name: str, k: int | None = None) -> Rep:
    """Catalogue lookup: rho2, rho4, rho6, rho_odd:k, trho4, trho6,
    trho_odd:k, ttrho4 (rhoK / trhoK aliases accepted for odd K)."""
    if ":" in name:
        base, _, karg = name.partition(":")
        return builtin(base, int(karg))
    if name in _BUILDERS and k is None:
        return _BUILDERS[name]()
    if name == "rho_odd":
        if k is None:
            raise ValueError("rho_odd requires k")
        return _heisenberg_rep(k)
    if name == "trho_odd":
        if k is None:
            raise ValueError("trho_odd requires k")
        return _trho_odd(k)
    if name.startswith("rho") and name[3:].isdigit() and int(name[3:]) % 2 == 1:
        return _heisenberg_rep(int(name[3:]))
    if name.startswith("trho") and name[4:].isdigit() and int(name[4:]) % 2 == 1:
        return _trho_odd(int(name[4:]))
    raise ValueError("unknown representation %r" % (name,))


def catalogue_names() -> list[str]:
    return ["rho2", "rho4", "rho6", "rho_odd:<k>", "trho4", "trho6",
            "trho_odd:<k>", "ttrho4"]


# -- witness solving -------------------------------------------------------

def _vec_index(n: int, i: int, j: int) -> int:
    return i * n + j


def _witness_system(a: CycMatrix, b: CycMatrix, left_mul, right_mul):
    """Rows of the linear system M = left*M*right (entries of M unknown)."""
    n = a.nrows
    zero = CycNum.zero()
    rows = []
    for i in range(n):
        for j in range(n):
            row = [zero] * (n * n)
            row[_vec_index(n, i, j)] = ONE
            for p in range(n):
                for q in range(n):
                    c = left_mul.rows[i][p] * right_mul.rows[q][j]
                    if not c.is_zero():
                        row[_vec_index(n, p, q)] = row[_vec_index(n, p, q)] - c
            rows.append(row)
    return rows


def _commuting_system(a: CycMatrix, left: CycMatrix, right: CycMatrix):
    """Rows of M*right = left*M as a linear system in M's entries."""
    n = left.nrows
    zero = CycNum.zero()
    rows = []
    for i in range(n):
        for j in range(n):
            row = [zero] * (n * n)
            for q in range(n):
                c = right.rows[q][j]
                if not c.is_zero():
                    row[_vec_index(n, i, q)] = row[_vec_index(n, i, q)] + c
            for p in range(n):
                c = left.rows[i][p]
                if not c.is_zero():
                    row[_vec_index(n, p, j)] = row[_vec_index(n, p, j)] - c
            rows.append(row)
    return rows


def _invertible_in_span(basis, n: int) -> CycMatrix | None:
    """Deterministic search for an invertible matrix in a solution span."""
    if not basis:
        return None

    def to_matrix(vec):
        return CycMatrix([[vec[_vec_index(n, i, j)] for j in range(n)] for i in range(n)])

    candidates = [to_matrix(v) for v in basis]
    for m in candidates:
        if not m.determinant().is_zero():
            return m
    # the determinant restricted to the moment curve sum(t^i * V_i) is a
    # polynomial of degree <= n*(len-1); enough integer points decide it
    bound = n * (len(basis) - 1) + 2
    for t in range(1, bound):
        vec = [CycNum.zero()] * (n * n)
        scale = 1
        for bvec in basis:
            for idx in range(n * n):
                if not bvec[idx].is_zero():
                    vec[idx] = vec[idx] + bvec[idx] * scale
            scale *= t
        m = to_matrix(vec)
        if not m.determinant().is_zero():
            return m
    return None


def solve_witness(rep: Rep) -> CharWitness | None:
    """Solve the three witness conditions exactly; None when no invertible
    solution exists on the searched specializations."""
    a, b = rep.img_a, rep.img_b
    n = rep.dim
    # condition (1): M = a M b  and  M a = b M
    rows1 = _witness_system(a, b, a, b) + _commuting_system(a, b, a)
    sol1 = _invertible_in_span(nullspace(rows1, n * n), n)
    if sol1 is None:
        return None
    # condition (2): M a = a M  and  M b = (ab) M
    rows2 = _commuting_system(a, a, a) + _commuting_system(a, a * b, b)
    sol2 = _invertible_in_span(nullspace(rows2, n * n), n)
    if sol2 is None:
        return None
    # condition (-): M = a M conj(a)  and  M conj(b) = b M
    rowsm = _witness_system(a, b, a, a.conj()) + _commuting_system(a, b, b.conj())
    solm = _invertible_in_span(nullspace(rowsm, n * n), n)
    if solm is None:
        return None
    witness = CharWitness(sol1, sol2, solm)
    if characteristic_failures(rep, witness):
        return None
    return witness


# -- image closure and consequences -----------------------------------------

def image_elements(rep: Rep, bound: int = 10 ** 6) -> list[CycMatrix]:
    """All elements of the image group, by breadth-first closure."""
    if bound < 1:
        raise ValueError("bound must be positive")
    ident = CycMatrix.identity(rep.dim)
    seen = {ident: None}
    order = [ident]
    frontier = [ident]
    gens = [rep.img_a, rep.img_b, rep.inv_a, rep.inv_b]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = m * g
                if prod not in seen:
                    seen[prod] = None
                    order.append(prod)
                    nxt.append(prod)
                    if len(order) > bound:
                        raise ImageOverflowError(
                            "image exceeds bound %d" % bound)
        frontier = nxt
    return order


def image_closure(rep: Rep, bound: int = 10 ** 6) -> int:
    return len(image_elements(rep, bound))


def _flatten_rational(x: CycNum, conductor: int):
    lifted = x.embed(conductor)
    return list(lifted.coeffs)


def matrix_rational_vector(m: CycMatrix, conductor: int):
    vec = []
    for row in m.rows:
        for x in row:
            vec.extend(_flatten_rational(x, conductor))
    return vec


def _common_conductor(mats) -> int:
    n = 1
    for m in mats:
        for row in m.rows:
            for x in row:
                c = x.canonical()[0]
                n = n * c // gcd(n, c)
    return n


def additive_span_rank(rep: Rep, bound: int = 10 ** 6) -> int:
    """Z-rank of the additive group generated by all image matrices."""
    elements = image_elements(rep, bound)
    conductor = _common_conductor(elements)
    vectors = [matrix_rational_vector(m, conductor) for m in elements]
    return _rational_rank(vectors)


def _rational_rank(vectors) -> int:
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][c]
        rows[rank] = [x / pv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def kernel_contains_Pk(rep: Rep, k: int, samples: int = 20, seed: int = 0) -> bool:
    """Whether the kernel contains every primitive k-th power.

    Backed by the characteristic-kernel argument: for a representation with
    a verified witness it suffices that a^k maps to the identity.  The
    normal-generator words for min(k, 5) and a sample of random primitive
    words are checked as defense in depth.
    """
    if rep.witness is None:
        raise MissingWitnessError("representation %r has no verified witness" % rep.name)
    if characteristic_failures(rep, rep.witness):
        raise MissingWitnessError("witness for %r fails verification" % rep.name)
    a_pow = rep.evaluate(Word.generator(0) ** k)
    if not a_pow.is_identity():
        return False
    for s, _ in normal_generators(min(max(k, 2), 5)):
        if not rep.evaluate(primitive_word(s) ** k).is_identity():
            return False
    rng = random.Random(seed)
    slopes = slope_sequence(40)
    for _ in range(samples):
        s = rng.choice(slopes)
        conj = random_word(rng, rng.randint(0, 6))
        w = (conj * primitive_word(s) * conj.inverse()) ** k
        if not rep.evaluate(w).is_identity():
            return False
    return True


class MultitwistPreconditionError(RuntimeError):
    """The slope's primitive k-th power is not in the kernel."""


def multitwist_check(rep: Rep, s: Slope, k: int, samples: int = 50,
                     seed: int = 0) -> bool:
    """The twist automorphism at a kernel slope acts trivially on the image.

    With psi the standard automorphism at s, verifies that
    psi o shear^k o psi^-1 fixes the image of random words.
    """
    w = primitive_word(s)
    if not rep.evaluate(w ** k).is_identity():
        raise MultitwistPreconditionError(
            "image of %s^%d is not the identity" % (w, k))
    psi = outer_rep(s)
    twist = psi.compose(shear_power(k)).compose(psi.inverse())
    rng = random.Random(seed)
    for _ in range(samples):
        h = random_word(rng, rng.randint(1, 10))
        if rep.evaluate(twist.apply(h)) != rep.evaluate(h):
            return False
    return True
