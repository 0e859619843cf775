"""Reduced words in the free group on two generators, plus endomorphisms,
abelianization, conjugacy and primitivity tests.

Words are stored run-length encoded as (generator, exponent) pairs with
generator 0 = a and 1 = b.  The commutator convention throughout is
[x, y] = x^-1 y^-1 x y.

Serialization uses lowercase for generators and uppercase for inverses
("abAB" is a b a^-1 b^-1); runs may be written with an explicit caret
("a^2", "B^3"), never as a bare digit.
"""

from __future__ import annotations

from math import gcd

A, B = 0, 1
_LETTERS = {("a", 1): (A, 1), ("A", 1): (A, -1), ("b", 1): (B, 1), ("B", 1): (B, -1)}
_NAMES = {A: ("a", "A"), B: ("b", "B")}


def _merge_runs(runs):
    """Freely reduce a run sequence; adjacent equal generators merge and cancel."""
    out = []
    for gen, exp in runs:
        if exp == 0:
            continue
        while out and out[-1][0] == gen:
            pg, pe = out.pop()
            exp += pe
            if exp == 0:
                break
        else:
            out.append((gen, exp))
            continue
        if exp != 0:
            out.append((gen, exp))
    return tuple(out)


class Word:
    """Freely reduced word in F_2 = <a, b>.  Immutable."""

    __slots__ = ("runs",)

    def __init__(self, runs=()):
        self.runs = _merge_runs(runs)

    @staticmethod
    def identity() -> "Word":
        return _IDENTITY

    @staticmethod
    def generator(gen: int, exp: int = 1) -> "Word":
        if gen not in (A, B):
            raise ValueError("generator must be 0 (a) or 1 (b)")
        return Word(((gen, exp),))

    @staticmethod
    def from_letters(letters) -> "Word":
        """Build from signed letters: +1/-1 for a^{\\pm1}, +2/-2 for b^{\\pm1}."""
        runs = []
        for let in letters:
            if let in (1, -1):
                runs.append((A, 1 if let > 0 else -1))
            elif let in (2, -2):
                runs.append((B, 1 if let > 0 else -1))
            else:
                raise ValueError("bad letter %r" % (let,))
        return Word(runs)

    @staticmethod
    def parse(text: str) -> "Word":
        """Parse the {a, A, b, B} syntax with optional caret exponents."""
        runs = []
        i = 0
        n = len(text)
        while i < n:
            ch = text[i]
            if ch not in "aAbB":
                raise ValueError("unexpected character %r at position %d" % (ch, i))
            gen = A if ch in "aA" else B
            sign = 1 if ch.islower() else -1
            i += 1
            exp = 1
            if i < n and text[i] == "^":
                i += 1
                j = i
                if j < n and text[j] == "-":
                    j += 1
                while j < n and text[j].isdigit():
                    j += 1
                if j == i or (text[i] == "-" and j == i + 1):
                    raise ValueError("malformed exponent at position %d" % i)
                exp = int(text[i:j])
                i = j
            elif i < n and text[i].isdigit():
                raise ValueError("bare digit at position %d; write exponents as ^n" % i)
            runs.append((gen, sign * exp))
        return Word(runs)

    # -- structure --------------------------------------------------------

    def is_identity(self) -> bool:
        return not self.runs

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.runs)

    def letters(self):
        """Signed letters, a = +-1 and b = +-2, fully expanded."""
        out = []
        for gen, exp in self.runs:
            letter = (gen + 1) * (1 if exp > 0 else -1)
            out.extend([letter] * abs(exp))
        return out

    def abelianization(self) -> tuple[int, int]:
        ea = sum(e for g, e in self.runs if g == A)
        eb = sum(e for g, e in self.runs if g == B)
        return (ea, eb)

    # -- group operations ---------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.runs + other.runs)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.runs)))

    def __pow__(self, e: int) -> "Word":
        if e < 0:
            return self.inverse() ** (-e)
        result = _IDENTITY
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate_by(self, h: "Word") -> "Word":
        """h * self * h^-1."""
        return h * self * h.inverse()

    def cyclic_reduction(self) -> "Word":
        w = self
        while len(w.runs) > 1 and w.runs[0][0] == w.runs[-1][0]:
            (g, e0), (_, e1) = w.runs[0], w.runs[-1]
            if (e0 > 0) == (e1 > 0):
                break
            strip = min(abs(e0), abs(e1))
            head = (g, e0 - strip * (1 if e0 > 0 else -1))
            tail = (g, e1 - strip * (1 if e1 > 0 else -1))
            w = Word((head,) + w.runs[1:-1] + (tail,))
        return w

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.runs == other.runs

    def __hash__(self):
        return hash(self.runs)

    def __str__(self):
        parts = []
        for gen, exp in self.runs:
            name = _NAMES[gen][0 if exp > 0 else 1]
            k = abs(exp)
            parts.append(name if k == 1 else "%s^%d" % (name, k))
        return "".join(parts)

    def __repr__(self):
        return "Word(%r)" % (str(self),)


_IDENTITY = Word(())

WORD_A = Word.generator(A)
WORD_B = Word.generator(B)


def reduce_letters(letters) -> Word:
    """Freely reduce a raw signed-letter sequence into a Word."""
    return Word.from_letters(letters)


def multiply(u: Word, v: Word) -> Word:
    return u * v


def invert(u: Word) -> Word:
    return u.inverse()


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x^-1 y^-1 x y."""
    return x.inverse() * y.inverse() * x * y


def abelianize(u: Word) -> tuple[int, int]:
    return u.abelianization()


def conjugate_test(u: Word, v: Word) -> bool:
    """True iff u and v are conjugate: compare cyclic reductions as cyclic words."""
    cu = tuple(u.cyclic_reduction().letters())
    cv = tuple(v.cyclic_reduction().letters())
    if len(cu) != len(cv):
        return False
    if not cu:
        return True
    doubled = cu + cu
    n = len(cu)
    return any(doubled[i:i + n] == cv for i in range(n))


class Endo:
    """Endomorphism of F_2 given by the images of the generators."""

    __slots__ = ("image_a", "image_b")

    def __init__(self, image_a: Word, image_b: Word):
        self.image_a = image_a
        self.image_b = image_b

    def apply(self, w: Word) -> Word:
        runs = []
        for gen, exp in w.runs:
            img = self.image_a if gen == A else self.image_b
            runs.extend((img ** exp).runs)
        return Word(runs)

    def compose(self, other: "Endo") -> "Endo":
        """self o other: apply other first."""
        return Endo(self.apply(other.image_a), self.apply(other.image_b))

    def abelianization_matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """2x2 integer matrix with columns ab(image_a), ab(image_b)."""
        ca = self.image_a.abelianization()
        cb = self.image_b.abelianization()
        return ((ca[0], cb[0]), (ca[1], cb[1]))

    def __eq__(self, other):
        if not isinstance(other, Endo):
            return NotImplemented
        return self.image_a == other.image_a and self.image_b == other.image_b

    def __hash__(self):
        return hash((self.image_a, self.image_b))

    def __repr__(self):
        return "Endo(a -> %s, b -> %s)" % (self.image_a, self.image_b)


IDENTITY_ENDO = Endo(WORD_A, WORD_B)


class Automorphism(Endo):
    """Endomorphism with a verified two-sided inverse."""

    __slots__ = ("inv_image_a", "inv_image_b")

    def __init__(self, image_a, image_b, inv_image_a, inv_image_b, *, _checked=False):
        super().__init__(image_a, image_b)
        self.inv_image_a = inv_image_a
        self.inv_image_b = inv_image_b
        if not _checked:
            inv = Endo(inv_image_a, inv_image_b)
            if (self.apply(inv_image_a) != WORD_A or self.apply(inv_image_b) != WORD_B
                    or inv.apply(image_a) != WORD_A or inv.apply(image_b) != WORD_B):
                raise ValueError("candidate inverse does not invert the endomorphism")

    def inverse_endo(self) -> Endo:
        return Endo(self.inv_image_a, self.inv_image_b)

    def inverse(self) -> "Automorphism":
        return Automorphism(self.inv_image_a, self.inv_image_b,
                            self.image_a, self.image_b, _checked=True)

    def compose(self, other: "Automorphism") -> "Automorphism":
        if not isinstance(other, Automorphism):
            raise TypeError("can only compose automorphisms with automorphisms")
        inv = other.inverse_endo().compose(self.inverse_endo())
        fwd = Endo.compose(self, other)
        return Automorphism(fwd.image_a, fwd.image_b,
                            inv.image_a, inv.image_b, _checked=True)

    def apply_inverse(self, w: Word) -> Word:
        return self.inverse_endo().apply(w)

    def __repr__(self):
        return "Automorphism(a -> %s, b -> %s)" % (self.image_a, self.image_b)


def apply_endo(phi: Endo, u: Word) -> Word:
    return phi.apply(u)


def _auto(ia, ib, ja, jb):
    return Automorphism(Word.parse(ia), Word.parse(ib), Word.parse(ja), Word.parse(jb))


# The standard symmetry lifts.  psi0 has order 3, psi1 order 4; psi2 is the
# shear fixing a; psi_minus inverts a and reverses orientation.
PSI_0 = _auto("b", "BA", "BA", "a")
PSI_1 = _auto("b", "A", "B", "a")
PSI_2 = _auto("a", "ab", "a", "Ab")
PSI_MINUS = _auto("A", "b", "A", "b")

IDENTITY_AUTO = Automorphism(WORD_A, WORD_B, WORD_A, WORD_B, _checked=True)


def shear_power(m: int) -> Automorphism:
    """psi_2^m in closed form: a -> a, b -> a^m b."""
    return Automorphism(WORD_A, Word(((A, m), (B, 1))),
                        WORD_A, Word(((A, -m), (B, 1))), _checked=True)


def inner_automorphism(h: Word) -> Automorphism:
    """Conjugation g -> h g h^-1."""
    hi = h.inverse()
    return Automorphism(h * WORD_A * hi, h * WORD_B * hi,
                        hi * WORD_A * h, hi * WORD_B * h, _checked=True)


def is_primitive(u: Word) -> bool:
    """True iff u belongs to a two-element generating set of F_2.

    There is one primitive conjugacy pair per coprime abelianization
    +-(p, q), so it suffices to compare against the standard word of that
    slope up to conjugacy and inversion.
    """
    from primpow.farey import Slope, primitive_word  # deferred; farey builds on words

    p, q = u.abelianization()
    if gcd(abs(p), abs(q)) != 1:
        return False
    w = primitive_word(Slope(p, q))
    return conjugate_test(u, w) or conjugate_test(u, w.inverse())


def random_word(rng, length: int) -> Word:
    """Random freely reduced word of exactly the given letter count."""
    letters = []
    choices = (1, -1, 2, -2)
    while len(letters) < length:
        let = rng.choice(choices)
        if letters and letters[-1] == -let:
            continue
        letters.append(let)
    return Word.from_letters(letters)
