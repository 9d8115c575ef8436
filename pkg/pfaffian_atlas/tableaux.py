"""
Tableaux
d-tableaux, the delete bumping step, KRS on bi-tableaux, the Burge variant BKRS
with its inverse, and the width of two-lined arrays.
"""

import logging
from bisect import bisect_left
from collections import Counter
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from pfaffian_atlas.errors import CapExceededError, InvalidInputError
from pfaffian_atlas.pfaffian_core import Monomial

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]
Rows = List[List[int]]


class Tableau(BaseModel):
    """
    A tableau stored column-major: strictly increasing columns whose lengths
    weakly decrease left to right. A d-tableau has every column of even length.
    """

    model_config = ConfigDict(frozen=True)

    columns: Tuple[Tuple[int, ...], ...] = ()

    @field_validator("columns")
    @classmethod
    def validate_columns(cls, columns):
        for col in columns:
            if not col:
                raise ValueError("columns must be non-empty")
            if col[0] < 1:
                raise ValueError(f"column {list(col)} must contain positive integers")
            if any(a >= b for a, b in zip(col, col[1:])):
                raise ValueError(f"column {list(col)} must be strictly increasing")
        lengths = [len(c) for c in columns]
        if any(a < b for a, b in zip(lengths, lengths[1:])):
            raise ValueError(f"column lengths {lengths} must weakly decrease")
        return columns

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Tableau":
        rows = [list(r) for r in rows if r]
        lengths = [len(r) for r in rows]
        if any(a < b for a, b in zip(lengths, lengths[1:])):
            raise InvalidInputError(f"row lengths {lengths} must weakly decrease")
        width = lengths[0] if lengths else 0
        return cls(columns=tuple(
            tuple(r[c] for r in rows if len(r) > c) for c in range(width)
        ))

    @property
    def rows(self) -> List[List[int]]:
        depth = len(self.columns[0]) if self.columns else 0
        return [[col[r] for col in self.columns if len(col) > r] for r in range(depth)]

    @property
    def shape(self) -> Tuple[int, ...]:
        """Row lengths."""
        return tuple(len(r) for r in self.rows)

    @property
    def length(self) -> int:
        """Size of the first column."""
        return len(self.columns[0]) if self.columns else 0

    @property
    def cells(self) -> int:
        return sum(len(c) for c in self.columns)

    @property
    def is_d_tableau(self) -> bool:
        return all(len(c) % 2 == 0 for c in self.columns)

    def entry(self, row: int, col: int) -> int:
        return self.columns[col][row]

    def __str__(self):
        return "\n".join(" ".join(str(v) for v in r) for r in self.rows)


class TwoLinedArray(BaseModel):
    """
    Pairs (u_k, v_k) with u weakly decreasing and v weakly increasing on ties of u.
    Identified with the monomial prod X_{min(u,v), max(u,v)}.
    """

    model_config = ConfigDict(frozen=True)

    pairs: Tuple[Tuple[int, int], ...] = ()

    @model_validator(mode="after")
    def validate_order(self):
        for u, v in self.pairs:
            if u < 1 or v < 1:
                raise ValueError(f"pair ({u},{v}) must contain positive integers")
        for (u1, v1), (u2, v2) in zip(self.pairs, self.pairs[1:]):
            if u1 < u2 or (u1 == u2 and v1 > v2):
                raise ValueError(f"pairs ({u1},{v1}), ({u2},{v2}) violate the array order")
        return self

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[int, int]]) -> "TwoLinedArray":
        """Sort arbitrary pairs into array order."""
        return cls(pairs=tuple(sorted(((u, v) for u, v in pairs), key=lambda p: (-p[0], p[1]))))

    @classmethod
    def from_monomial(cls, m: Monomial) -> "TwoLinedArray":
        """The BKRS-format array of a monomial: X_ij^e gives e copies of (j, i)."""
        return cls.from_pairs([(j, i) for (i, j), e in m.exps for _ in range(e)])

    @property
    def top(self) -> List[int]:
        return [u for u, _ in self.pairs]

    @property
    def bottom(self) -> List[int]:
        return [v for _, v in self.pairs]

    @property
    def is_bkrs_format(self) -> bool:
        return all(u > v for u, v in self.pairs)

    @property
    def monomial(self) -> Monomial:
        for u, v in self.pairs:
            if u == v:
                raise InvalidInputError(f"pair ({u},{v}) has no variable X_{{{u},{u}}}")
        return Monomial.from_points((min(u, v), max(u, v)) for u, v in self.pairs)


class BKRSStep(BaseModel):
    """One removal of bkrs: the entry u at cell, its upper neighbour and the delete path."""

    model_config = ConfigDict(frozen=True)

    u: int
    cell: Cell
    upper_neighbour: int
    path: Tuple[Cell, ...]
    v: int


def _rows(t: Tableau) -> Rows:
    return [list(r) for r in t.rows]


def _tableau(rows: Rows) -> Tableau:
    return Tableau.from_rows([r for r in rows if r])


def is_standard(t: Tableau) -> bool:
    """True iff every row weakly increases left to right."""
    return all(a <= b for row in t.rows for a, b in zip(row, row[1:]))


def _is_corner(rows: Rows, r: int, c: int) -> bool:
    if r >= len(rows) or c != len(rows[r]) - 1:
        return False
    return r + 1 >= len(rows) or len(rows[r + 1]) <= c


def _delete_at(rows: Rows, r: int, c: int) -> Tuple[int, List[Cell]]:
    """Remove the corner (r, c) and bump upward; mutates rows. Returns (v, path)."""
    if not _is_corner(rows, r, c):
        raise InvalidInputError(f"cell ({r},{c}) is not a corner")
    carried = rows[r].pop()
    if not rows[r]:
        rows.pop(r)
    path = [(r, c)]
    for rr in range(r - 1, -1, -1):
        row = rows[rr]
        k = len(row) - 1
        while k >= 0 and row[k] >= carried:
            k -= 1
        if k < 0:
            raise InvalidInputError(f"row {rr} has no entry smaller than {carried}")
        row[k], carried = carried, row[k]
        path.append((rr, k))
    return carried, path


def delete(t: Tableau, u: int, column: Optional[int] = None) -> Tuple[int, Tableau]:
    """
    Remove the corner entry u and bubble upward.

    Each row above receives the carried value in place of its rightmost entry
    strictly smaller than it; the value pushed out of the first row is returned.

    Args:
        t: Source tableau
        u: Entry occupying a corner of t
        column: Column of the corner when u sits at several corners (default rightmost)

    Returns:
        (v, tableau with one cell fewer)

    Raises:
        InvalidInputError: If u is not at a corner of t
    """
    rows = _rows(t)
    corners = [
        (r, len(row) - 1) for r, row in enumerate(rows)
        if row[-1] == u and _is_corner(rows, r, len(row) - 1)
    ]
    if column is not None:
        corners = [cell for cell in corners if cell[1] == column]
    if not corners:
        raise InvalidInputError(f"entry {u} does not occupy a corner")
    r, c = max(corners, key=lambda cell: cell[1])
    v, _ = _delete_at(rows, r, c)
    return v, _tableau(rows)


def _largest_cell(rows: Rows) -> Cell:
    """Largest entry; ties go to the largest column index."""
    best: Optional[Cell] = None
    for r, row in enumerate(rows):
        for c, value in enumerate(row):
            if best is None or (value, c) > (rows[best[0]][best[1]], best[1]):
                best = (r, c)
    return best


def krs(t1: Tableau, t2: Tableau) -> TwoLinedArray:
    """
    Knuth-Robinson-Schensted on a pair of standard tableaux of equal shape.

    Raises:
        InvalidInputError: On shape mismatch or non-standard input
    """
    if t1.shape != t2.shape:
        raise InvalidInputError(f"shape mismatch: {t1.shape} vs {t2.shape}")
    if not (is_standard(t1) and is_standard(t2)):
        raise InvalidInputError("krs requires standard tableaux")
    rows1, rows2 = _rows(t1), _rows(t2)
    pairs = []
    while rows1:
        r, c = _largest_cell(rows1)
        u = rows1[r].pop()
        if not rows1[r]:
            rows1.pop(r)
        v, _ = _delete_at(rows2, r, c)
        pairs.append((u, v))
    return TwoLinedArray.from_pairs(pairs)


def bkrs_trace(t: Tableau) -> List[BKRSStep]:
    """
    The step-by-step record of bkrs in removal order.

    Raises:
        InvalidInputError: If t is not a standard d-tableau
    """
    if not t.is_d_tableau:
        raise InvalidInputError("bkrs requires a d-tableau")
    if not is_standard(t):
        raise InvalidInputError("bkrs requires a standard tableau")
    rows = _rows(t)
    steps = []
    while rows:
        r, c = _largest_cell(rows)
        u = rows[r].pop()
        if not rows[r]:
            rows.pop(r)
        upper = rows[r - 1][c]
        v, path = _delete_at(rows, r - 1, c)
        steps.append(BKRSStep(u=u, cell=(r, c), upper_neighbour=upper, path=tuple(path), v=v))
    return steps


def bkrs(t: Tableau) -> TwoLinedArray:
    """Burge's variant of KRS on a single standard d-tableau; every pair has u > v."""
    return TwoLinedArray.from_pairs([(step.u, step.v) for step in bkrs_trace(t)])


def first_column_discipline(trace: Sequence[BKRSStep]) -> bool:
    """
    True iff no delete path enters the first column from another column, so an
    entry leaves column 1 only once everything below it there has moved.
    """
    for step in trace:
        for below, above in zip(step.path, step.path[1:]):
            if above[1] == 0 and below[1] != 0:
                return False
    return True


def _row_insert(rows: Rows, value: int) -> Cell:
    """Schensted row insertion (bump the leftmost entry > value); mutates rows."""
    carried = value
    for r, row in enumerate(rows):
        k = bisect_left(row, carried + 1)
        if k == len(row):
            row.append(carried)
            return (r, k)
        row[k], carried = carried, row[k]
    rows.append([carried])
    return (len(rows) - 1, 0)


def _unremove(rows: Rows, u: int, v: int) -> Optional[Rows]:
    """Reverse one bkrs step, or None when (u, v) cannot have been removed last."""
    rows = [list(r) for r in rows]
    r, c = _row_insert(rows, v)
    target = r + 1
    if target < len(rows):
        if len(rows[target]) != c:
            return None
    elif c != 0:
        return None
    if u <= rows[r][c]:
        return None
    for rr, row in enumerate(rows):
        for cc, value in enumerate(row):
            if value > u or (value == u and cc > c):
                return None
    if target < len(rows):
        rows[target].append(u)
    else:
        rows.append([u])
    return rows


def _preimages(rows: Rows, remaining: Counter) -> Iterator[Rows]:
    if not remaining:
        yield rows
        return
    u = min(pu for pu, _ in remaining)
    for v in sorted({pv for pu, pv in remaining if pu == u}):
        grown = _unremove(rows, u, v)
        if grown is None:
            continue
        rest = remaining.copy()
        rest[(u, v)] -= 1
        if not rest[(u, v)]:
            del rest[(u, v)]
        yield from _preimages(grown, rest)


def bkrs_inverse(a: TwoLinedArray) -> Tableau:
    """
    The unique standard d-tableau t with bkrs(t) == a.

    Steps are undone from the last removal backwards: v is row-inserted and u is
    placed directly below the new cell. Ties among equal u are searched, and every
    candidate is confirmed by running bkrs forward.

    Raises:
        InvalidInputError: If a is not in BKRS format or not in the image of bkrs
    """
    if not a.is_bkrs_format:
        raise InvalidInputError("not in BKRS image format: every pair needs u > v")
    for rows in _preimages([], Counter(a.pairs)):
        candidate = _tableau(rows)
        if candidate.is_d_tableau and is_standard(candidate) and bkrs(candidate) == a:
            return candidate
    logger.debug(f"No bkrs preimage for {a.pairs}")
    raise InvalidInputError(f"array {list(a.pairs)} is not in the image of bkrs")


def width(a: TwoLinedArray) -> int:
    """
    Length of the longest chain of pairs with u strictly decreasing and v strictly
    increasing.

    Pairs sharing a top entry are read with v descending, so the strictly
    increasing subsequence of the bottom line takes at most one of them.
    """
    piles: List[int] = []
    for _, v in sorted(a.pairs, key=lambda p: (-p[0], -p[1])):
        k = bisect_left(piles, v)
        if k == len(piles):
            piles.append(v)
        else:
            piles[k] = v
    return len(piles)


def monomial_width(m: Monomial) -> int:
    """Width of a monomial read as its BKRS-format array."""
    return width(TwoLinedArray.from_monomial(m))


def _standard_fillings(shape: Sequence[int], max_entry: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    def extend(prefix: List[Tuple[int, ...]]) -> Iterator[Tuple[Tuple[int, ...], ...]]:
        if len(prefix) == len(shape):
            yield tuple(prefix)
            return
        size = shape[len(prefix)]
        left = prefix[-1] if prefix else None
        for col in combinations(range(1, max_entry + 1), size):
            if left is None or all(col[r] >= left[r] for r in range(size)):
                yield from extend(prefix + [col])

    yield from extend([])


def _even_shapes(max_cells: int, max_height: int, max_columns: Optional[int]) -> Iterator[Tuple[int, ...]]:
    """Column-length sequences: even, weakly decreasing, total <= max_cells."""
    def extend(prefix: List[int], budget: int, cap: int) -> Iterator[Tuple[int, ...]]:
        yield tuple(prefix)
        if max_columns is not None and len(prefix) >= max_columns:
            return
        for h in range(2, min(cap, budget) + 1, 2):
            yield from extend(prefix + [h], budget - h, h)

    yield from extend([], max_cells, max_height)


def enumerate_standard_tableaux(
    max_entry: int,
    max_cells: int,
    max_columns: Optional[int] = None,
    cap: Optional[int] = None,
) -> List[Tableau]:
    """
    Every standard d-tableau with entries <= max_entry and at most max_cells cells,
    the empty tableau included.

    Args:
        max_entry: Largest entry allowed
        max_cells: Largest number of cells
        max_columns: Optional bound on the number of columns
        cap: Optional bound on the corpus size

    Returns:
        Tableaux ordered by shape, then by columns
    """
    corpus = []
    for shape in sorted(_even_shapes(max_cells, max_entry, max_columns)):
        for columns in _standard_fillings(shape, max_entry):
            corpus.append(Tableau(columns=columns))
            if cap is not None and len(corpus) > cap:
                raise CapExceededError("standard tableau corpus", cap)
    logger.info(f"Enumerated {len(corpus)} standard d-tableaux (entries <= {max_entry}, cells <= {max_cells})")
    return corpus
