"""Young diagrams, standard tableaux, and exact dimension counts.

Everything here is exact integer combinatorics: hook-length and
Frobenius-style counts for symmetric-group irreps, and the hook-content
formula for SU(d) irrep dimensions.  These are the bookkeeping tools that
decide how many protected copies of the fundamental representation live
inside a (d+1)-fold tensor power of C^d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial


@dataclass(frozen=True, order=True)
class YoungDiagram:
    """A partition drawn as left-justified rows of boxes.

    Parameters
    ----------
    rows : tuple of int
        Row lengths, weakly decreasing, all positive.
    """

    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("a Young diagram needs at least one row")
        if any(not isinstance(r, int) or r < 1 for r in self.rows):
            raise ValueError(f"row lengths must be positive integers, got {self.rows}")
        if any(a < b for a, b in zip(self.rows, self.rows[1:])):
            raise ValueError(f"row lengths must be weakly decreasing, got {self.rows}")

    @property
    def n_boxes(self) -> int:
        return sum(self.rows)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def column_lengths(self) -> tuple[int, ...]:
        """Lengths of the columns (the conjugate partition)."""
        return tuple(
            sum(1 for r in self.rows if r > j) for j in range(self.rows[0])
        )

    def hook_length(self, i: int, j: int) -> int:
        """Arm plus leg plus one for the box in row i, column j (0-indexed)."""
        if not (0 <= i < self.n_rows and 0 <= j < self.rows[i]):
            raise ValueError(f"box ({i}, {j}) is outside the diagram {self.rows}")
        arm = self.rows[i] - j - 1
        leg = self.column_lengths()[j] - i - 1
        return arm + leg + 1

    def cells(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j in range(r)]


@dataclass(frozen=True)
class StandardTableau:
    """A Young diagram filled with 1..n, increasing along rows and columns."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        shape = YoungDiagram(tuple(len(r) for r in self.rows))
        labels = sorted(itertools.chain.from_iterable(self.rows))
        if labels != list(range(1, shape.n_boxes + 1)):
            raise ValueError(f"filling must use each of 1..{shape.n_boxes} once")
        for row in self.rows:
            if any(a >= b for a, b in zip(row, row[1:])):
                raise ValueError(f"row entries must increase left to right: {row}")
        for upper, lower in zip(self.rows, self.rows[1:]):
            if any(upper[j] >= lower[j] for j in range(len(lower))):
                raise ValueError("column entries must increase top to bottom")

    @property
    def shape(self) -> YoungDiagram:
        return YoungDiagram(tuple(len(r) for r in self.rows))

    @property
    def n_boxes(self) -> int:
        return sum(len(r) for r in self.rows)

    def row_word(self) -> tuple[int, ...]:
        """Concatenation of the rows, top to bottom; used as a sort key."""
        return tuple(itertools.chain.from_iterable(self.rows))

    def columns(self) -> list[tuple[int, ...]]:
        width = len(self.rows[0])
        return [
            tuple(row[j] for row in self.rows if len(row) > j) for j in range(width)
        ]


def fundamental_equivalent_shape(d: int) -> YoungDiagram:
    """Shape (2, 1, ..., 1) with d rows and d+1 boxes.

    Adding one box below a full column of d boxes yields the unique shape on
    d+1 boxes whose SU(d) irrep is equivalent to the fundamental (the full
    column contributes only a determinant factor).
    """
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"local dimension d must be an integer >= 2, got {d}")
    return YoungDiagram((2,) + (1,) * (d - 1))


def standard_tableaux(shape: YoungDiagram) -> tuple[StandardTableau, ...]:
    """All standard tableaux of the given shape.

    Returned in lexicographic order of the row-reading word, so the result is
    deterministic and the first tableau always has 1..r filling its top row.
    """
    n = shape.n_boxes
    results: list[StandardTableau] = []
    fill: list[list[int]] = [[] for _ in shape.rows]

    def place(label: int) -> None:
        if label > n:
            results.append(StandardTableau(tuple(tuple(r) for r in fill)))
            return
        for r, row in enumerate(shape.rows):
            if len(fill[r]) >= row:
                continue
            if r > 0 and len(fill[r - 1]) <= len(fill[r]):
                continue
            fill[r].append(label)
            place(label + 1)
            fill[r].pop()

    place(1)
    results.sort(key=StandardTableau.row_word)
    return tuple(results)


def standard_tableau_count(shape: YoungDiagram) -> int:
    """Number of standard tableaux, by the hook length formula."""
    hooks = 1
    for i, j in shape.cells():
        hooks *= shape.hook_length(i, j)
    n_fact = factorial(shape.n_boxes)
    if n_fact % hooks:
        raise ArithmeticError(
            f"hook product {hooks} does not divide {shape.n_boxes}! for {shape.rows}"
        )
    return n_fact // hooks


def frobenius_multiplicity(shape: YoungDiagram, d: int) -> int:
    """Multiplicity of the shape's irrep inside (C^d)^(d+1), in closed form.

    Pads the shape with zero-length rows to exactly d rows and evaluates

        (d+1)! * prod_{1<=i<j<=d} (v_i - v_j + j - i) / prod_i (v_i + d - i)!

    with exact integers.  Only the d+1-box, at-most-d-row domain that arises
    in the encoder construction is accepted; anything else is a domain error.
    """
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"local dimension d must be an integer >= 2, got {d}")
    if shape.n_rows > d:
        raise ValueError(
            f"shape {shape.rows} has {shape.n_rows} rows; at most {d} allowed"
        )
    if shape.n_boxes != d + 1:
        raise ValueError(
            f"shape {shape.rows} has {shape.n_boxes} boxes; exactly {d + 1} required"
        )
    v = shape.rows + (0,) * (d - shape.n_rows)
    numerator = factorial(d + 1)
    for i in range(d):
        for j in range(i + 1, d):
            numerator *= v[i] - v[j] + j - i
    denominator = 1
    for i in range(d):
        denominator *= factorial(v[i] + d - 1 - i)
    result = Fraction(numerator, denominator)
    if result.denominator != 1:
        raise ArithmeticError(
            f"multiplicity of {shape.rows} at d={d} is not integral: {result}"
        )
    return int(result)


def irrep_dimension(shape: YoungDiagram, d: int) -> int:
    """Dimension of the SU(d) irrep for this shape, by hook content.

    Shapes with more than d rows do not occur for SU(d); their dimension is
    zero (an explicit zero, not an error), which is exactly what the tensor
    dimension sum rule needs.
    """
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"local dimension d must be an integer >= 2, got {d}")
    if shape.n_rows > d:
        return 0
    result = Fraction(1)
    for i, j in shape.cells():
        result *= Fraction(d + j - i, shape.hook_length(i, j))
    if result.denominator != 1:
        raise ArithmeticError(
            f"hook content product for {shape.rows} at d={d} is not integral"
        )
    return int(result)


def partitions(n: int) -> tuple[YoungDiagram, ...]:
    """All partitions of n as diagrams, largest first part first."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    out: list[YoungDiagram] = []

    def descend(remaining: int, cap: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(YoungDiagram(prefix))
            return
        for part in range(min(cap, remaining), 0, -1):
            descend(remaining - part, part, prefix + (part,))

    descend(n, n, ())
    return tuple(out)
