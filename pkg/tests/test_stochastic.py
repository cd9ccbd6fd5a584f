"""Exact decomposition of left stochastic matrices into convex PLM combinations."""

from fractions import Fraction

import pytest

from plmonoid import (
    Decomposition,
    DimensionMismatchError,
    NotLeftStochasticError,
    Plm,
    StochasticMatrix,
    WeightSumNotOneError,
    ZeroColumnError,
    convex_combine,
    decompose,
    first_positive_plm,
    first_positive_rows,
    identity,
    is_left_stochastic,
    random_left_stochastic,
    recompose,
    row_plm,
)
from plmonoid.verify import enumerate_plms

F = Fraction

# the running 3x3 example: column sums are exactly 1, entries are mixed tenths
B = StochasticMatrix(
    (
        (F(1, 10), F(0), F(1, 5)),
        (F(9, 10), F(1, 2), F(4, 5)),
        (F(0), F(1, 2), F(0)),
    )
)


class TestStochasticMatrix:
    def test_entries_normalize_to_fractions(self):
        m = StochasticMatrix((("1/2", "1/2"), (F(1, 2), F(1, 2))))
        assert m.entries[0][0] == F(1, 2)
        assert isinstance(m.entries[0][0], Fraction)

    def test_rejects_negative_entries(self):
        with pytest.raises(NotLeftStochasticError) as err:
            StochasticMatrix(((F(-1, 2), F(1)), (F(3, 2), F(0))))
        assert err.value.column == 1

    def test_rejects_non_square_and_empty(self):
        with pytest.raises(ValueError):
            StochasticMatrix(((F(1),), (F(0),)))
        with pytest.raises(ValueError):
            StochasticMatrix(())

    def test_from_plm_and_column_sums(self):
        m = StochasticMatrix.from_plm(Plm((2, 3, 3)))
        assert m.entries == (
            (F(0), F(0), F(0)),
            (F(1), F(0), F(0)),
            (F(0), F(1), F(1)),
        )
        assert m.column_sums() == (F(1), F(1), F(1))


def test_is_left_stochastic():
    assert is_left_stochastic(B)
    assert not is_left_stochastic(StochasticMatrix(((F(1, 2), F(0)), (F(0), F(1)))))
    for a in enumerate_plms(3):
        assert is_left_stochastic(StochasticMatrix.from_plm(a))


class TestFirstPositive:
    def test_worked_example(self):
        m = StochasticMatrix(((F(0), F(1, 3)), (F(1), F(2, 3))))
        assert first_positive_rows(m) == (2, 1)
        assert first_positive_plm(m) == Plm((2, 1))

    def test_on_the_running_example(self):
        assert first_positive_rows(B) == (1, 2, 1)

    def test_zero_column_raises(self):
        m = StochasticMatrix(((F(0), F(1)), (F(0), F(0))))
        with pytest.raises(ZeroColumnError) as err:
            first_positive_rows(m)
        assert err.value.column == 1

    def test_atol_skips_dust(self):
        dust = F(1, 10**15)
        m = StochasticMatrix(((dust, F(1)), (F(1) - dust, F(0))))
        assert first_positive_rows(m) == (1, 1)
        assert first_positive_rows(m, atol=F(1, 10**12)) == (2, 1)
        assert first_positive_plm(m, atol=F(1, 10**12)) == Plm((2, 1))


class TestDecompose:
    def test_running_example_full_sequence(self):
        dec = decompose(B)
        assert dec.terms == (
            (F(1, 10), Plm((1, 2, 1))),
            (F(1, 10), Plm((2, 2, 1))),
            (F(3, 10), Plm((2, 2, 2))),
            (F(1, 2), Plm((2, 3, 2))),
        )
        assert recompose(dec).entries == B.entries

    def test_first_term_is_the_first_positive_plm(self):
        dec = decompose(B)
        lam, p = dec.terms[0]
        assert p == first_positive_plm(B)
        assert lam == min(
            B.entries[p.colmap[j] - 1][j] for j in range(3)
        )

    def test_plm_input_gives_single_unit_term(self):
        for a in enumerate_plms(3):
            dec = decompose(StochasticMatrix.from_plm(a))
            assert dec.terms == ((F(1), a),)

    def test_doubly_uniform_matrix(self):
        m = StochasticMatrix(((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2))))
        dec = decompose(m)
        assert dec.terms == ((F(1, 2), row_plm(2, 1)), (F(1, 2), row_plm(2, 2)))

    def test_rejects_bad_column_sums(self):
        m = StochasticMatrix(((F(1, 2), F(0)), (F(0), F(1))))
        with pytest.raises(NotLeftStochasticError) as err:
            decompose(m)
        assert err.value.column == 1
        assert err.value.total == F(1, 2)

    def test_random_matrices_round_trip(self):
        for d in range(2, 7):
            for seed in range(20):
                m = random_left_stochastic(d, seed=seed)
                dec = decompose(m)
                assert recompose(dec).entries == m.entries
                assert sum(lam for lam, _ in dec.terms) == 1
                assert all(0 < lam <= 1 for lam, _ in dec.terms)
                assert len(dec.terms) <= d * d

    def test_zero_counts_strictly_grow_along_the_walk(self):
        # replay the remainder walk from the output alone and recheck the
        # structural facts the greedy argument promises
        m = random_left_stochastic(5, seed=99)
        dec = decompose(m)
        work = [list(row) for row in m.entries]
        zeros = sum(1 for row in work for x in row if x == 0)
        for lam, p in dec.terms:
            for j in range(5):
                work[p.colmap[j] - 1][j] -= lam
            assert all(x >= 0 for row in work for x in row)
            new_zeros = sum(1 for row in work for x in row if x == 0)
            assert new_zeros > zeros
            zeros = new_zeros
        assert all(x == 0 for row in work for x in row)

    def test_first_weight_below_one_iff_not_a_plm(self):
        for seed in range(10):
            m = random_left_stochastic(4, seed=seed)
            dec = decompose(m)
            is_plm = all(x in (0, 1) for row in m.entries for x in row)
            assert (dec.terms[0][0] == 1) == is_plm


class TestConvexCombine:
    def test_exact_reconstruction(self):
        m = convex_combine([(F(1, 3), Plm((2, 1))), (F(2, 3), identity(2))])
        assert m.entries == ((F(2, 3), F(1, 3)), (F(1, 3), F(2, 3)))

    def test_zero_weights_are_allowed_here(self):
        m = convex_combine([(F(0), Plm((2, 1))), (F(1), identity(2))])
        assert m.entries == StochasticMatrix.from_plm(identity(2)).entries

    def test_weight_validation(self):
        with pytest.raises(WeightSumNotOneError):
            convex_combine([(F(1, 2), identity(2))])
        with pytest.raises(WeightSumNotOneError):
            convex_combine([])
        with pytest.raises(ValueError):
            convex_combine([(F(-1, 2), identity(2)), (F(3, 2), identity(2))])
        with pytest.raises(DimensionMismatchError):
            convex_combine([(F(1, 2), identity(2)), (F(1, 2), identity(3))])


class TestDecompositionType:
    def test_validation(self):
        with pytest.raises(WeightSumNotOneError):
            Decomposition(())
        with pytest.raises(WeightSumNotOneError):
            Decomposition(((F(1, 2), identity(2)),))
        with pytest.raises(ValueError):
            Decomposition(((F(0), identity(2)), (F(1), identity(2))))
        with pytest.raises(DimensionMismatchError):
            Decomposition(((F(1, 2), identity(2)), (F(1, 2), identity(3))))

    def test_term_count_bound_enforced(self):
        # five distinct weights cannot fit the 4-term bound at d = 2
        weights = [F(1, 5)] * 5
        plms = [identity(2), Plm((2, 1)), row_plm(2, 1), row_plm(2, 2), identity(2)]
        with pytest.raises(ValueError):
            Decomposition(tuple(zip(weights, plms)))

    def test_json_shape(self):
        d = decompose(B).to_json_dict()
        assert d["dim"] == 3
        assert d["terms"][0] == {"lambda": "1/10", "colmap": [1, 2, 1]}
        assert [t["lambda"] for t in d["terms"]] == ["1/10", "1/10", "3/10", "1/2"]


class TestRandomLeftStochastic:
    def test_always_valid(self):
        for d in range(1, 9):
            for seed in (0, 1, 17):
                m = random_left_stochastic(d, seed=seed)
                assert m.dim == d
                assert is_left_stochastic(m)

    def test_deterministic_per_seed(self):
        assert random_left_stochastic(4, seed=5).entries == random_left_stochastic(4, seed=5).entries
        assert random_left_stochastic(4, seed=5).entries != random_left_stochastic(4, seed=6).entries

    def test_denominator_bound(self):
        m = random_left_stochastic(6, seed=3, max_denominator=50)
        assert all(x.denominator <= 50 for row in m.entries for x in row)

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            random_left_stochastic(0, seed=1)
        with pytest.raises(ValueError):
            random_left_stochastic(3, seed=1, max_denominator=0)
