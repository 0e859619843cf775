"""Integer lattices, unipotent coordinates, orbit lattices, and the
faithfulness chain."""

import random

import pytest

from primpow.kernels import (
    FaithfulReport,
    GammaShapeError,
    IntLattice,
    conjugate_orbit_lattice,
    exact_sequence_report,
    gamma_decode,
    gamma_encode,
    gaussian_pair_vector,
    np_words,
    snf,
    verify_faithful_p4,
)
from primpow.reps import builtin
from primpow.words import Word, abelianize, commutator

par = Word.parse
A, B = par("a"), par("b")

LAMBDA = IntLattice(4, [gaussian_pair_vector((-1, 0), (1, 0)),
                        gaussian_pair_vector((0, -1), (0, -1)),
                        gaussian_pair_vector((-1, 0), (-1, 0)),
                        gaussian_pair_vector((0, 0), (1, 1))])


class TestSnf:
    def test_identity(self):
        assert snf([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]) == \
            (4, (1, 1, 1, 1))

    def test_divisibility_chain(self):
        rng = random.Random(0)
        for _ in range(40):
            n = rng.randint(1, 4)
            ncols = n + rng.randint(0, 2)
            m = [[rng.randint(-8, 8) for _ in range(ncols)] for _ in range(n)]
            rank, divisors = snf(m)
            assert rank == len(divisors)
            for x, y in zip(divisors, divisors[1:]):
                assert y % x == 0

    def test_index_equals_determinant(self):
        rng = random.Random(1)
        for _ in range(30):
            n = rng.randint(2, 4)
            m = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
            lattice = IntLattice(n, m)
            index = lattice.index_in_ambient()
            rank, divisors = snf(m)
            if index is not None:
                prod = 1
                for d in divisors:
                    prod *= d
                assert prod == index


class TestIntLattice:
    def test_ambient_index_of_the_four_generators(self):
        lam_prime = IntLattice(4, [gaussian_pair_vector((-2, -2), (2, -2)),
                                   gaussian_pair_vector((-2, 2), (2, 2)),
                                   gaussian_pair_vector((4, 0), (0, 0)),
                                   gaussian_pair_vector((0, 0), (0, 4))])
        assert lam_prime.index_in_ambient() == 2 ** 7
        assert LAMBDA.index_in_ambient() == 2
        assert LAMBDA.contains_lattice(lam_prime)
        assert LAMBDA.index_of_sublattice(lam_prime) == 2 ** 6

    def test_membership(self):
        assert LAMBDA.contains((0, 0, 0, 2))
        assert not LAMBDA.contains((1, 0, 0, 0))

    def test_basis_canonical_under_generator_shuffle(self):
        rng = random.Random(2)
        gens = list(LAMBDA.generators)
        for _ in range(10):
            rng.shuffle(gens)
            assert IntLattice(4, gens) == LAMBDA

    def test_join_of_the_two_relator_lattices(self):
        lam1 = IntLattice(4, [gaussian_pair_vector((-1, 0), (1, 0)),
                              gaussian_pair_vector((0, -1), (0, -1)),
                              gaussian_pair_vector((-1, 0), (-1, 0)),
                              gaussian_pair_vector((0, 1), (0, -1))])
        lam2 = IntLattice(4, [gaussian_pair_vector((0, 0), (1, 1)),
                              gaussian_pair_vector((0, 0), (1, -1)),
                              gaussian_pair_vector((-1, -1), (0, 0)),
                              gaussian_pair_vector((-1, 1), (0, 0))])
        joined = IntLattice(4, list(lam1.basis) + list(lam2.basis))
        assert joined == LAMBDA


class TestGamma:
    def test_round_trip(self):
        rng = random.Random(3)
        for _ in range(30):
            z = (rng.randint(-9, 9), rng.randint(-9, 9))
            w_ = (rng.randint(-9, 9), rng.randint(-9, 9))
            assert gamma_decode(gamma_encode(z, w_)) == (z, w_)

    def test_identity_decodes_to_zero(self):
        from primpow.cyclotomic import CycMatrix

        assert gamma_decode(CycMatrix.identity(4)) == ((0, 0), (0, 0))

    def test_known_values(self):
        t4 = builtin("trho4")
        assert gamma_decode(t4.evaluate(par("a^2b^2"))) == ((-1, 0), (1, 0))
        assert gamma_decode(t4.evaluate(par("aBab"))) == ((0, 0), (1, 1))

    def test_shape_violation_reported(self):
        t4 = builtin("trho4")
        with pytest.raises(GammaShapeError):
            gamma_decode(t4.evaluate(par("a")))


class TestNpWords:
    def test_auxiliary_words(self):
        words = np_words()
        assert words["A"] == par("bABa")
        assert words["B"] == par("BabA")
        assert words["C"] == par("BAba")
        assert words["D"] == par("a^2bABABAba")
        assert words["E"] == par("BababA^3Ba")

    def test_g_words_reduced_and_balanced(self):
        words = np_words()
        for i in range(4):
            g = words["g%d" % i]
            assert not g.is_identity()
        assert abelianize(words["g2"]) == (0, 0)

    def test_g_words_in_the_quotient_kernel(self):
        rho4 = builtin("rho4")
        words = np_words()
        for i in range(4):
            assert rho4.evaluate(words["g%d" % i]).is_identity()


class TestOrbitLattices:
    def test_quaternion_orbit_equals_the_kernel_lattice(self):
        lat = conjugate_orbit_lattice(builtin("rho4"), builtin("trho4"),
                                      [par("a^2b^2"), par("aBab")])
        assert lat.rank == 4
        projected = IntLattice(4, [(v[0], v[1], v[4], v[5]) for v in lat.basis])
        assert projected == LAMBDA

    def test_order_independence(self):
        relators = [par("a^2b^2"), par("aBab")]
        lat1 = conjugate_orbit_lattice(builtin("rho4"), builtin("trho4"), relators)
        lat2 = conjugate_orbit_lattice(builtin("rho4"), builtin("trho4"),
                                       list(reversed(relators)))
        assert lat1 == lat2

    def test_rank_18(self):
        rel = [commutator(A, commutator(A, B)), commutator(B, commutator(A, B))]
        lat = conjugate_orbit_lattice(builtin("rho6"), builtin("trho6"), rel)
        assert lat.rank == 18

    def test_odd_rank_formula_k5(self):
        lat = conjugate_orbit_lattice(builtin("rho_odd:5"), builtin("trho_odd:5"),
                                      [par("abABAbaB")])
        assert lat.rank == 20

    def test_non_kernel_relator_rejected(self):
        with pytest.raises(ValueError):
            conjugate_orbit_lattice(builtin("rho4"), builtin("trho4"), [par("a")])


class TestExactSequences:
    def test_quaternion_pair(self):
        order, rank = exact_sequence_report(builtin("rho4"), builtin("trho4"),
                                            [par("a^2b^2"), par("aBab")])
        assert (order, rank) == (8, 4)

    def test_nine_dimensional_pair(self):
        rel = [commutator(A, commutator(A, B)), commutator(B, commutator(A, B))]
        order, rank = exact_sequence_report(builtin("rho6"), builtin("trho6"), rel)
        assert (order, rank) == (108, 18)

    def test_central_rank_one(self):
        order, rank = exact_sequence_report(builtin("trho4"), builtin("ttrho4"),
                                            [commutator(A, B) ** 2], bound=500)
        assert order is None
        assert rank == 1


class TestFaithfulChain:
    def test_all_steps_pass(self):
        report = verify_faithful_p4()
        assert isinstance(report, FaithfulReport)
        assert report.passed
        names = [s.name for s in report.steps]
        assert any("2^7" not in n and "ambient" in n for n in names)
        assert len(report.steps) == 17

    def test_gamma_values_of_the_generators(self):
        report = verify_faithful_p4()
        gamma_steps = [s for s in report.steps if s.name.startswith("(ii)")]
        assert [s.computed for s in gamma_steps] == [
            ((-2, -2), (2, -2)), ((-2, 2), (2, 2)), ((4, 0), (0, 0)),
            ((0, 0), (0, 4))]

    def test_lower_bound_step(self):
        report = verify_faithful_p4()
        final = report.steps[-1]
        assert final.computed == 2 ** 12
