"""
Pfaffian Core
Index tuples and the Pfaffian poset, exact sparse polynomials in the variables
X_ij (i < j), the anti-diagonal term order and Pfaffian expansion.
"""

import logging
from fractions import Fraction
from functools import lru_cache, total_ordering
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from pfaffian_atlas.errors import InvalidInputError

logger = logging.getLogger(__name__)

IndexTuple = Tuple[int, ...]
LatticePoint = Tuple[int, int]
Coefficient = Union[int, Fraction]


def index_tuple(indices: Iterable[int], n: Optional[int] = None) -> IndexTuple:
    """
    Validate and normalize a Pfaffian index tuple [a1, ..., a2t].

    Args:
        indices: Strictly increasing positive integers of even length
        n: Ambient matrix size; when given, every index must be <= n

    Returns:
        The indices as a tuple

    Raises:
        InvalidInputError: If the tuple is empty, odd, non-increasing or out of range
    """
    try:
        values = tuple(int(a) for a in indices)
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"index tuple must contain integers: {e}") from e
    if not values or len(values) % 2:
        raise InvalidInputError(f"index tuple {list(values)} must have even length >= 2")
    if values[0] < 1:
        raise InvalidInputError(f"index tuple {list(values)} must contain positive integers")
    if any(a >= b for a, b in zip(values, values[1:])):
        raise InvalidInputError(f"index tuple {list(values)} must be strictly increasing")
    if n is not None and values[-1] > n:
        raise InvalidInputError(f"index {values[-1]} out of range for n = {n}")
    return values


def lattice_point(point: Iterable[int], n: Optional[int] = None) -> LatticePoint:
    """Validate a point (i, j) of the grid X+ = {1 <= i < j <= n}."""
    try:
        i, j = (int(c) for c in point)
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"lattice point must be a pair of integers: {e}") from e
    if not 1 <= i < j:
        raise InvalidInputError(f"lattice point ({i},{j}) must satisfy 1 <= i < j")
    if n is not None and j > n:
        raise InvalidInputError(f"lattice point ({i},{j}) out of range for n = {n}")
    return (i, j)


def upper_grid(n: int) -> List[LatticePoint]:
    """All points of X+ for ambient size n, row-major."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def poset_leq(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """
    Natural order on Pfaffians: alpha <= beta iff alpha is at least as long and
    alpha_i <= beta_i for every position of beta.
    """
    if len(alpha) < len(beta):
        return False
    return all(a <= b for a, b in zip(alpha, beta))


@total_ordering
class Monomial:
    """
    A monomial in the variables X_ij, stored as ((i, j), e) pairs sorted by (i, j).

    Ordering is the anti-diagonal lex order: X_ij > X_kl iff i < k, or i = k and j > l.
    """

    __slots__ = ("exps", "_key")

    def __init__(self, exps: Union[Mapping[LatticePoint, int], Iterable[Tuple[LatticePoint, int]]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        merged: Dict[LatticePoint, int] = {}
        for point, e in items:
            if e < 0:
                raise InvalidInputError(f"negative exponent {e} at {point}")
            if e:
                merged[point] = merged.get(point, 0) + e
        self.exps: Tuple[Tuple[LatticePoint, int], ...] = tuple(sorted(merged.items()))
        # variables in decreasing precedence, encoded so tuple comparison is lex
        self._key = tuple(
            (-i, j, e) for (i, j), e in sorted(self.exps, key=lambda x: (x[0][0], -x[0][1]))
        )

    @classmethod
    def unit(cls) -> "Monomial":
        return cls()

    @classmethod
    def variable(cls, i: int, j: int) -> "Monomial":
        return cls((((i, j), 1),))

    @classmethod
    def from_points(cls, points: Iterable[LatticePoint]) -> "Monomial":
        """Product of the variables at the given points (repeats multiply)."""
        return cls((p, 1) for p in points)

    @property
    def key(self) -> tuple:
        return self._key

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    @property
    def support(self) -> Tuple[LatticePoint, ...]:
        return tuple(p for p, _ in self.exps)

    def is_unit(self) -> bool:
        return not self.exps

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.exps)

    def as_dict(self) -> Dict[LatticePoint, int]:
        return dict(self.exps)

    def __hash__(self):
        return hash(self.exps)

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.exps == other.exps

    def __lt__(self, other):
        return self._key < other._key

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.exps + other.exps)

    def __pow__(self, power: int) -> "Monomial":
        return Monomial((p, e * power) for p, e in self.exps)

    def divides(self, other: "Monomial") -> bool:
        mine = dict(other.exps)
        return all(mine.get(p, 0) >= e for p, e in self.exps)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise InvalidInputError(f"{other} does not divide {self}")
        theirs = dict(other.exps)
        return Monomial((p, e - theirs.get(p, 0)) for p, e in self.exps)

    def lcm(self, other: "Monomial") -> "Monomial":
        merged = dict(self.exps)
        for p, e in other.exps:
            merged[p] = max(merged.get(p, 0), e)
        return Monomial(merged)

    def is_coprime(self, other: "Monomial") -> bool:
        return not set(self.support) & set(other.support)

    def __str__(self):
        if not self.exps:
            return "1"
        ordered = sorted(self.exps, key=lambda x: (x[0][0], -x[0][1]))
        return "*".join(
            f"X[{i},{j}]^{e}" if e > 1 else f"X[{i},{j}]" for (i, j), e in ordered
        )

    def __repr__(self):
        return f"Monomial({self})"


class Term(NamedTuple):
    coefficient: Fraction
    monomial: Monomial


class Polynomial:
    """Exact sparse polynomial over the rationals; no zero coefficients are stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Coefficient]] = None):
        self.terms: Dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            if c != 0:
                self.terms[m] = Fraction(c)

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, c: Coefficient) -> "Polynomial":
        return cls({Monomial.unit(): c})

    @classmethod
    def from_monomial(cls, m: Monomial, c: Coefficient = 1) -> "Polynomial":
        return cls({m: c})

    @classmethod
    def variable(cls, i: int, j: int) -> "Polynomial":
        return cls({Monomial.variable(i, j): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> List[Term]:
        """Terms in decreasing term order."""
        return [Term(self.terms[m], m) for m in sorted(self.terms, reverse=True)]

    def __iter__(self) -> Iterator[Term]:
        return iter(self.sorted_terms())

    def __add__(self, other: "Polynomial") -> "Polynomial":
        result = dict(self.terms)
        for m, c in other.terms.items():
            result[m] = result.get(m, 0) + c
        return Polynomial(result)

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        result = dict(self.terms)
        for m, c in other.terms.items():
            result[m] = result.get(m, 0) - c
        return Polynomial(result)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        result: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                result[m] = result.get(m, 0) + c1 * c2
        return Polynomial(result)

    def scale(self, c: Coefficient, m: Optional[Monomial] = None) -> "Polynomial":
        """Multiply by the term c*m (m defaults to 1)."""
        if m is None or m.is_unit():
            return Polynomial({mono: c * v for mono, v in self.terms.items()})
        return Polynomial({mono * m: c * v for mono, v in self.terms.items()})

    def initial_term(self) -> Term:
        return initial_term(self)

    def monic(self) -> "Polynomial":
        lead = initial_term(self)
        if lead.coefficient == 1:
            return self
        return self.scale(1 / lead.coefficient)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, m in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if m.is_unit():
                body = str(mag)
            elif mag == 1:
                body = str(m)
            else:
                body = f"{mag}*{m}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"Polynomial({self})"


def term_cmp(m1: Monomial, m2: Monomial) -> int:
    """Compare two monomials under the anti-diagonal lex order; returns -1, 0 or 1."""
    if m1.key == m2.key:
        return 0
    return 1 if m1.key > m2.key else -1


def initial_term(p: Polynomial) -> Term:
    """
    Leading term of a polynomial under the anti-diagonal order.

    Raises:
        InvalidInputError: If p is the zero polynomial
    """
    if not p.terms:
        raise InvalidInputError("zero polynomial has no initial term")
    lead = max(p.terms)
    return Term(p.terms[lead], lead)


def adiag(indices: Sequence[int]) -> Monomial:
    """Main anti-diagonal X_{a1,a2t} X_{a2,a2t-1} ... X_{at,at+1} of a Pfaffian."""
    alpha = index_tuple(indices)
    t = len(alpha) // 2
    return Monomial.from_points((alpha[k], alpha[-1 - k]) for k in range(t))


def is_adiag(m: Monomial) -> bool:
    """True iff m = X_{i1 j1} ... X_{it jt} with i1 < ... < it < jt < ... < j1."""
    if m.is_unit() or not m.is_squarefree():
        return False
    points = sorted(m.support)
    rows = [i for i, _ in points]
    cols = [j for _, j in points]
    if any(a >= b for a, b in zip(rows, rows[1:])):
        return False
    if any(a <= b for a, b in zip(cols, cols[1:])):
        return False
    return rows[-1] < cols[-1]


def adiag_length(m: Monomial) -> int:
    """Length t of a t-adiag; 0 when m is not an anti-diagonal."""
    return m.degree if is_adiag(m) else 0


def _pivot_expansion(alpha: IndexTuple, position: int) -> Polynomial:
    # (-1)^(i+j+1) X_{min,max} Pf(rest) with 1-based positions i, j
    result = Polynomial.zero()
    i = position + 1
    for q in range(len(alpha)):
        if q == position:
            continue
        j = q + 1
        sign = 1 if (i + j + 1) % 2 == 0 else -1
        lo, hi = sorted((alpha[position], alpha[q]))
        rest = tuple(a for k, a in enumerate(alpha) if k not in (position, q))
        minor = _pfaffian_first_row(rest) if rest else Polynomial.constant(1)
        result = result + minor.scale(sign, Monomial.variable(lo, hi))
    return result


@lru_cache(maxsize=None)
def _pfaffian_first_row(alpha: IndexTuple) -> Polynomial:
    if len(alpha) == 2:
        return Polynomial.variable(alpha[0], alpha[1])
    return _pivot_expansion(alpha, 0)


def pfaffian_polynomial(indices: Sequence[int], n: int, row: Optional[int] = None) -> Polynomial:
    """
    Pfaffian of the generic skew-symmetric submatrix on the given rows/columns.

    Expanded recursively along the first row, with minors memoized on their index
    sets. Passing row expands the outer step along that position instead.

    Args:
        indices: Index tuple [a1, ..., a2t]
        n: Ambient matrix size
        row: Optional 0-based position of the row used for the outer expansion

    Returns:
        The Pfaffian as an exact polynomial; [i, j] gives +X_ij

    Raises:
        InvalidInputError: If the tuple is invalid, out of range, or row is not a position
    """
    alpha = index_tuple(indices, n)
    if row is None or len(alpha) == 2:
        return _pfaffian_first_row(alpha)
    if not 0 <= row < len(alpha):
        raise InvalidInputError(f"row position {row} outside 0..{len(alpha) - 1}")
    return _pivot_expansion(alpha, row)


def _perfect_matchings(items: Tuple[int, ...]) -> Iterator[List[Tuple[int, int]]]:
    if not items:
        yield []
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for matching in _perfect_matchings(rest):
            yield [(first, items[k])] + matching


def perfect_matching_pfaffian(indices: Sequence[int], n: Optional[int] = None) -> Polynomial:
    """
    Pfaffian as the signed sum over perfect matchings of the index set.

    The sign of a matching is (-1)^(number of crossing pairs). Independent of the
    recursive expansion and used as an oracle for it.
    """
    alpha = index_tuple(indices, n)
    result: Dict[Monomial, Fraction] = {}
    for matching in _perfect_matchings(alpha):
        crossings = sum(
            1 for (a, b), (c, d) in combinations(matching, 2) if a < c < b < d or c < a < d < b
        )
        m = Monomial.from_points(matching)
        result[m] = result.get(m, 0) + (-1) ** crossings
    return Polynomial(result)


def pfaffian_product(tuples: Iterable[Sequence[int]], n: int) -> Polynomial:
    """Product of the Pfaffians of several index tuples."""
    result = Polynomial.constant(1)
    for indices in tuples:
        result = result * pfaffian_polynomial(indices, n)
    return result


def all_index_tuples(n: int, max_size: int, min_size: int = 2) -> Iterator[IndexTuple]:
    """Every index tuple over {1..n} of even size in [min_size, max_size], by size then lex."""
    for size in range(max(2, min_size), max_size + 1, 2):
        yield from combinations(range(1, n + 1), size)
