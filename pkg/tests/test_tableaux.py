"""Exact combinatorics tests, with brute-force and closed-form oracles."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nscodec import (
    StandardTableau,
    YoungDiagram,
    frobenius_multiplicity,
    fundamental_equivalent_shape,
    irrep_dimension,
    partitions,
    standard_tableau_count,
    standard_tableaux,
)


def brute_force_tableaux(shape: YoungDiagram) -> list[tuple[tuple[int, ...], ...]]:
    """Independent oracle: filter all n! fillings for the standard property."""
    cells = shape.cells()
    n = shape.n_boxes
    found = []
    for perm in itertools.permutations(range(1, n + 1)):
        grid = {cell: label for cell, label in zip(cells, perm)}
        ok = True
        for (i, j), label in grid.items():
            if (i, j + 1) in grid and grid[(i, j + 1)] <= label:
                ok = False
                break
            if (i + 1, j) in grid and grid[(i + 1, j)] <= label:
                ok = False
                break
        if ok:
            rows = tuple(
                tuple(grid[(i, j)] for j in range(shape.rows[i]))
                for i in range(shape.n_rows)
            )
            found.append(rows)
    return found


def weyl_dimension(shape: YoungDiagram, d: int) -> int:
    """Independent oracle: Weyl dimension formula over padded row lengths."""
    if shape.n_rows > d:
        return 0
    lam = shape.rows + (0,) * (d - shape.n_rows)
    num, den = 1, 1
    for i in range(d):
        for j in range(i + 1, d):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    assert num % den == 0
    return num // den


@st.composite
def small_shapes(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    return draw(st.sampled_from(partitions(n)))


class TestYoungDiagram:
    def test_rejects_bad_rows(self):
        with pytest.raises(ValueError):
            YoungDiagram((1, 2))
        with pytest.raises(ValueError):
            YoungDiagram((2, 0))
        with pytest.raises(ValueError):
            YoungDiagram(())

    def test_hooks_of_two_one(self):
        shape = YoungDiagram((2, 1))
        assert [shape.hook_length(i, j) for i, j in shape.cells()] == [3, 1, 1]

    def test_column_lengths(self):
        assert YoungDiagram((3, 1)).column_lengths() == (2, 1, 1)


class TestStandardTableau:
    def test_rejects_non_standard(self):
        with pytest.raises(ValueError):
            StandardTableau(((2, 1), (3,)))
        with pytest.raises(ValueError):
            StandardTableau(((1, 3), (2, 2)))
        with pytest.raises(ValueError):
            StandardTableau(((3,), (1, 2)))

    def test_columns(self):
        t = StandardTableau(((1, 2), (3,)))
        assert t.columns() == [(1, 3), (2,)]


class TestEnumeration:
    def test_two_one_fillings_and_order(self):
        tabs = standard_tableaux(YoungDiagram((2, 1)))
        assert [t.rows for t in tabs] == [((1, 2), (3,)), ((1, 3), (2,))]

    def test_two_one_one_count(self):
        shape = YoungDiagram((2, 1, 1))
        brute = brute_force_tableaux(shape)
        assert len(brute) == 3
        assert standard_tableau_count(shape) == 3
        assert [t.rows for t in standard_tableaux(shape)] == sorted(brute)

    @pytest.mark.parametrize(
        "rows", [(3,), (2, 2), (3, 1), (2, 1, 1), (3, 2, 1), (2, 2, 2)]
    )
    def test_matches_brute_force(self, rows):
        shape = YoungDiagram(rows)
        assert {t.rows for t in standard_tableaux(shape)} == set(
            brute_force_tableaux(shape)
        )

    @settings(deadline=None, max_examples=60)
    @given(small_shapes())
    def test_hook_count_equals_enumeration(self, shape):
        tabs = standard_tableaux(shape)
        assert standard_tableau_count(shape) == len(tabs)
        words = [t.row_word() for t in tabs]
        assert words == sorted(words)
        assert len(set(words)) == len(words)


class TestFrobeniusMultiplicity:
    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_fundamental_shape_gives_d(self, d):
        assert frobenius_multiplicity(fundamental_equivalent_shape(d), d) == d

    def test_single_row_padded(self):
        assert frobenius_multiplicity(YoungDiagram((3,)), 2) == 1

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_agrees_with_hook_count_on_whole_domain(self, d):
        for shape in partitions(d + 1):
            if shape.n_rows <= d:
                assert frobenius_multiplicity(shape, d) == standard_tableau_count(
                    shape
                )

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            frobenius_multiplicity(YoungDiagram((1, 1, 1)), 2)  # too many rows
        with pytest.raises(ValueError):
            frobenius_multiplicity(YoungDiagram((2, 2)), 2)  # wrong box count
        with pytest.raises(ValueError):
            frobenius_multiplicity(YoungDiagram((2, 1)), 1)


class TestIrrepDimension:
    @pytest.mark.parametrize(
        "rows,d,expected",
        [
            ((3,), 2, 4),
            ((2, 1), 2, 2),
            ((2, 1), 3, 8),
            ((1, 1, 1), 2, 0),
            ((1,), 5, 5),
        ],
    )
    def test_known_values(self, rows, d, expected):
        assert irrep_dimension(YoungDiagram(rows), d) == expected

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_fundamental_equivalent_has_dimension_d(self, d):
        assert irrep_dimension(fundamental_equivalent_shape(d), d) == d

    @settings(deadline=None, max_examples=60)
    @given(small_shapes(), st.integers(min_value=2, max_value=5))
    def test_matches_weyl_formula(self, shape, d):
        assert irrep_dimension(shape, d) == weyl_dimension(shape, d)


class TestDimensionSumRule:
    @pytest.mark.parametrize("d,n", [(2, 3), (2, 4), (3, 4)])
    def test_tensor_power_dimension(self, d, n):
        total = sum(
            standard_tableau_count(shape) * irrep_dimension(shape, d)
            for shape in partitions(n)
        )
        assert total == d**n

    def test_three_qubit_breakdown(self):
        terms = []
        for shape in partitions(3):
            dim = irrep_dimension(shape, 2)
            terms.extend([dim] * standard_tableau_count(shape))
        assert sorted(t for t in terms if t) == [2, 2, 4]
        assert sum(terms) == 8


class TestFundamentalEquivalentShape:
    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_shape(self, d):
        shape = fundamental_equivalent_shape(d)
        assert shape.rows == (2,) + (1,) * (d - 1)
        assert shape.n_boxes == d + 1
        assert shape.n_rows == d

    def test_rejects_small_d(self):
        with pytest.raises(ValueError):
            fundamental_equivalent_shape(1)


def test_partitions_of_four():
    assert [p.rows for p in partitions(4)] == [
        (4,),
        (3, 1),
        (2, 2),
        (2, 1, 1),
        (1, 1, 1, 1),
    ]
