"""Coset enumeration and finite-quotient comparisons."""

import random

import pytest

from primpow.cosets import (
    CosetLimitExceeded,
    Presentation,
    iso_order_exponent_check,
    multiplication_table,
    todd_coxeter,
)
from primpow.farey import normal_generators
from primpow.reps import builtin, image_closure
from primpow.words import Word, commutator


def words(*texts):
    return [Word.parse(t) for t in texts]


A, B = Word.parse("a"), Word.parse("b")

SQUARES = Presentation(words("a^2", "b^2", "abab"))
CUBES = Presentation(words("a^3", "b^3", "ababab", "aBaBaB"))
HEISENBERG = Presentation([A ** 3, B ** 3, commutator(A, B) ** 3,
                           commutator(A, commutator(A, B)),
                           commutator(B, commutator(A, B))])


class TestToddCoxeter:
    def test_square_quotient(self):
        assert todd_coxeter(SQUARES) == 4

    def test_cube_quotient(self):
        assert todd_coxeter(CUBES) == 27

    def test_heisenberg_presentation(self):
        assert todd_coxeter(HEISENBERG) == 27

    def test_relator_order_independence(self):
        rng = random.Random(0)
        rel = list(CUBES.relators)
        for _ in range(6):
            rng.shuffle(rel)
            assert todd_coxeter(Presentation(rel)) == 27

    def test_fourth_power_relators_overflow(self):
        rel4 = [w for _, w in normal_generators(4)]
        with pytest.raises(CosetLimitExceeded):
            todd_coxeter(Presentation(rel4), 10 ** 5)

    def test_empty_presentation_rejected(self):
        with pytest.raises(ValueError):
            Presentation([])

    def test_identity_relator_rejected(self):
        with pytest.raises(ValueError):
            Presentation([Word.identity()])

    def test_agrees_with_matrix_closures(self):
        assert todd_coxeter(SQUARES) == image_closure(builtin("rho2"))
        assert todd_coxeter(CUBES) == image_closure(builtin("rho_odd:3"))


class TestMultiplicationTable:
    def test_klein_consistency(self):
        klein = Presentation([A ** 2, B ** 2, commutator(A, B)])
        assert iso_order_exponent_check(multiplication_table(SQUARES),
                                        multiplication_table(klein))

    def test_heisenberg_consistency(self):
        assert iso_order_exponent_check(multiplication_table(CUBES),
                                        multiplication_table(HEISENBERG))

    def test_cyclic_four_inconsistent(self):
        c4 = Presentation([A ** 4, B * A.inverse()])
        table = multiplication_table(c4)
        assert table.order == 4
        assert 4 in table.element_orders
        assert not iso_order_exponent_check(multiplication_table(SQUARES), table)

    def test_orders_divide_group_order(self):
        table = multiplication_table(CUBES)
        assert all(table.order % n == 0 for n in table.element_orders)
