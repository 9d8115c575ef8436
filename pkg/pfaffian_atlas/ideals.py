"""
Ideals
Pfaffian ideals cogenerated by one index tuple: natural generators, reduction,
the G-Pfaffian predicate, region maps, initial-ideal generators and the explicit
counterexample to the G-basis property.
"""

import logging
from itertools import combinations
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from pfaffian_atlas.config import get_settings
from pfaffian_atlas.errors import (
    CapExceededError,
    InvalidInputError,
    NotGPfaffianError,
    PreconditionError,
)
from pfaffian_atlas.pfaffian_core import (
    IndexTuple,
    LatticePoint,
    Monomial,
    Polynomial,
    adiag,
    all_index_tuples,
    index_tuple,
    initial_term,
    pfaffian_polynomial,
    poset_leq,
)
from pfaffian_atlas.tableaux import Tableau, enumerate_standard_tableaux

logger = logging.getLogger(__name__)

REGIONS = ("A", "B", "C", "D", "E")


class CogeneratorSpec(BaseModel):
    """The ideal I_alpha of the n x n generic skew-symmetric matrix cogenerated by alpha."""

    model_config = ConfigDict(frozen=True)

    alpha: Tuple[int, ...]
    n: int

    @field_validator("alpha", mode="before")
    @classmethod
    def parse_alpha(cls, value):
        if isinstance(value, str):
            value = [v for v in value.replace(" ", "").split(",") if v]
        try:
            return index_tuple(value)
        except InvalidInputError as e:
            raise ValueError(str(e)) from e

    @model_validator(mode="after")
    def check_range(self):
        if self.n < 2:
            raise ValueError(f"n = {self.n} must be at least 2")
        if self.alpha[-1] > self.n:
            raise ValueError(f"index {self.alpha[-1]} out of range for n = {self.n}")
        return self

    @property
    def t(self) -> int:
        return len(self.alpha) // 2

    @property
    def is_reduced(self) -> bool:
        return self.alpha[0] == 1

    @property
    def a(self) -> int:
        """Second index; for t = 1 the convention a := b applies."""
        return self.alpha[1] if self.t > 1 else self.alpha[-1]

    @property
    def b(self) -> int:
        return self.alpha[-1]

    def __str__(self):
        return f"{list(self.alpha)} (n={self.n})"


class RegionMap(BaseModel):
    """Partition of X+ into the regions A..E of a reduced G-Pfaffian cogenerator."""

    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    n: int

    @classmethod
    def for_spec(cls, spec: CogeneratorSpec) -> "RegionMap":
        return cls(a=spec.a, b=spec.b, n=spec.n)

    def classify(self, point: LatticePoint) -> str:
        i, j = point
        if j <= self.a - 1:
            return "A"
        if i <= self.a - 1:
            return "C" if j >= self.b else "B"
        return "E" if j >= self.b else "D"

    def points(self, region: str) -> List[LatticePoint]:
        return [
            (i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1)
            if self.classify((i, j)) == region
        ]


def region_of(point: LatticePoint, spec: CogeneratorSpec) -> str:
    """Region label A..E of a lattice point."""
    return RegionMap.for_spec(spec).classify(point)


def reduce_cogenerator(spec: CogeneratorSpec) -> CogeneratorSpec:
    """Shift alpha so that it starts at 1; n shrinks by the same amount."""
    shift = spec.alpha[0] - 1
    if not shift:
        return spec
    return CogeneratorSpec(alpha=tuple(a - shift for a in spec.alpha), n=spec.n - shift)


def is_g_pfaffian(alpha: Sequence[int]) -> bool:
    """True iff a_i = a_{i-1} + 1 for i = 3, ..., 2t-1."""
    alpha = index_tuple(alpha)
    return all(alpha[k] == alpha[k - 1] + 1 for k in range(2, len(alpha) - 1))


def in_ideal(beta: Sequence[int], alpha: Sequence[int]) -> bool:
    """Membership of the Pfaffian beta in I_alpha: beta is not >= alpha."""
    return not poset_leq(alpha, beta)


def default_max_size(spec: CogeneratorSpec) -> int:
    return min(2 * spec.t + 2, spec.n - spec.n % 2)


def natural_generators(
    spec: CogeneratorSpec,
    max_size: Optional[int] = None,
    cap: Optional[int] = None,
) -> List[IndexTuple]:
    """
    All index tuples beta over {1..n} of size <= max_size with beta not >= alpha.

    Args:
        spec: Cogenerator and ambient size
        max_size: Even bound on the tuple size (default min(2t+2, n))
        cap: Largest number of generators returned (default from settings)

    Returns:
        Generators ordered by size, then lexicographically

    Raises:
        InvalidInputError: If max_size is odd or exceeds n
        CapExceededError: If more than cap generators qualify
    """
    max_size = default_max_size(spec) if max_size is None else max_size
    if max_size % 2 or max_size > spec.n or max_size < 2:
        raise InvalidInputError(f"max_size {max_size} must be even and in 2..{spec.n}")
    cap = cap if cap is not None else get_settings().generator_cap
    generators = []
    for beta in all_index_tuples(spec.n, max_size):
        if in_ideal(beta, spec.alpha):
            generators.append(beta)
            if len(generators) > cap:
                logger.error(f"Generator enumeration for {spec} exceeded cap {cap}")
                raise CapExceededError(f"natural generators of {spec}", cap)
    return generators


def generator_polynomials(spec: CogeneratorSpec, max_size: Optional[int] = None,
                          cap: Optional[int] = None) -> List[Polynomial]:
    return [pfaffian_polynomial(beta, spec.n) for beta in natural_generators(spec, max_size, cap)]


def sum_generators(spec1: CogeneratorSpec, spec2: CogeneratorSpec,
                   max_size: Optional[int] = None, cap: Optional[int] = None) -> List[IndexTuple]:
    """Union of the natural generators of I_alpha and I_beta on the same matrix."""
    if spec1.n != spec2.n:
        raise InvalidInputError(f"ambient sizes differ: {spec1.n} vs {spec2.n}")
    size = max_size if max_size is not None else max(default_max_size(spec1), default_max_size(spec2))
    union = set(natural_generators(spec1, size, cap)) | set(natural_generators(spec2, size, cap))
    return sorted(union, key=lambda beta: (len(beta), beta))


def adiags_of_length(n: int, s: int) -> Iterable[Monomial]:
    """Every s-adiag of X+: one per 2s-subset of {1..n}."""
    for gamma in combinations(range(1, n + 1), 2 * s):
        yield adiag(gamma)


def require_reduced_g_pfaffian(spec: CogeneratorSpec, what: str = "initial-ideal description") -> None:
    if not is_g_pfaffian(spec.alpha):
        logger.error(f"{spec} is not G-Pfaffian")
        raise NotGPfaffianError(f"{what} applies only to G-Pfaffians")
    if not spec.is_reduced:
        raise PreconditionError(f"{spec} is not reduced; apply reduce_cogenerator first")


def _sorted_monomials(monomials: Iterable[Monomial]) -> List[Monomial]:
    return sorted(set(monomials), key=lambda m: (m.degree, m.exps))


def initial_ideal_generators(spec: CogeneratorSpec, minimal: bool = False) -> List[Monomial]:
    """
    Monomial generators of the initial ideal of I_alpha for a reduced G-Pfaffian alpha.

    The full description lists variables in A, 2-adiags in the first a-1 rows,
    t-adiags in the first b-1 columns and all (t+1)-adiags. The minimal variant
    keeps variables in A, 2-adiags in B+C, t-adiags in B+D with at most one point
    in B, and (t+1)-adiags avoiding A with at most one point in B+C, at most one
    in B and at most t-1 in B+D.

    Args:
        spec: Reduced G-Pfaffian cogenerator
        minimal: Return the inclusion-minimal generating set

    Returns:
        Deduplicated monomials sorted by degree, then support

    Raises:
        NotGPfaffianError: If alpha is not G-Pfaffian
        PreconditionError: If alpha is not reduced
    """
    require_reduced_g_pfaffian(spec)
    regions = RegionMap.for_spec(spec)
    a, b, n, t = spec.a, spec.b, spec.n, spec.t

    def count(m: Monomial, allowed: str) -> int:
        return sum(1 for p in m.support if regions.classify(p) in allowed)

    found: List[Monomial] = [
        Monomial.variable(i, j) for i, j in regions.points("A")
    ]
    if not minimal:
        found += [m for m in adiags_of_length(n, 2) if max(i for i, _ in m.support) <= a - 1]
        found += [m for m in adiags_of_length(n, t) if max(j for _, j in m.support) <= b - 1]
        found += list(adiags_of_length(n, t + 1))
    else:
        found += [m for m in adiags_of_length(n, 2) if count(m, "BC") == 2]
        found += [
            m for m in adiags_of_length(n, t)
            if count(m, "BD") == t and count(m, "B") <= 1
        ]
        found += [
            m for m in adiags_of_length(n, t + 1)
            if count(m, "A") == 0
            and count(m, "BC") <= 1
            and count(m, "B") <= 1
            and count(m, "BD") <= t - 1
        ]
    result = _sorted_monomials(found)
    logger.info(f"Initial ideal of {spec}: {len(result)} generators (minimal={minimal})")
    return result


def gap_index(alpha: Sequence[int]) -> int:
    """
    i = min{k >= 2 : a_k + 1 < a_{k+1}} (1-based, with a_{2t+1} = infinity).
    """
    alpha = index_tuple(alpha)
    for k in range(2, len(alpha)):
        if alpha[k - 1] + 1 < alpha[k]:
            return k
    return len(alpha)


class Counterexample(NamedTuple):
    """An element of I_alpha whose initial monomial escapes the generators' adiags."""

    element: Polynomial
    witness: Monomial
    gap_index: int
    beta1: IndexTuple
    gamma1: IndexTuple
    beta2: IndexTuple
    gamma2: IndexTuple


def counterexample_witness(spec: CogeneratorSpec) -> Counterexample:
    """
    Build beta1*gamma1 - beta2*gamma2 for a non-G-Pfaffian alpha.

    Raises:
        PreconditionError: If alpha is G-Pfaffian, or the gap index is >= 2t-1
    """
    alpha = spec.alpha
    if is_g_pfaffian(alpha):
        raise PreconditionError(f"{spec} is G-Pfaffian; its natural generators are a G-basis")
    t = spec.t
    i = gap_index(alpha)
    if i >= 2 * t - 1:
        raise PreconditionError(f"construction precondition violated: i = {i} >= 2t-1 = {2 * t - 1}")

    def a(k: int) -> int:
        return alpha[k - 1]

    head = tuple(alpha[:i]) + (a(i) + 1,)
    if i % 2 == 0:
        beta1, gamma1 = head + (a(i + 1),), (a(1), a(i + 2))
        beta2, gamma2 = head + (a(i + 2),), (a(1), a(i + 1))
    else:
        beta1, gamma1 = head + (a(i + 1), a(i + 3)), (a(2), a(i + 2))
        beta2, gamma2 = head + (a(i + 2), a(i + 3)), (a(2), a(i + 1))
    n = spec.n
    element = (pfaffian_polynomial(beta1, n) * pfaffian_polynomial(gamma1, n)
               - pfaffian_polynomial(beta2, n) * pfaffian_polynomial(gamma2, n))
    witness = initial_term(element).monomial
    logger.info(f"Counterexample for {spec}: i = {i}, witness {witness}")
    return Counterexample(element, witness, i, beta1, gamma1, beta2, gamma2)


def standard_monomial_basis(spec: CogeneratorSpec, max_columns: int = 3,
                            cap: Optional[int] = None) -> List[Tableau]:
    """
    Standard d-tableaux with entries <= n, at most max_columns columns, whose first
    column lies in I_alpha. Their products of Pfaffians span I_alpha.
    """
    height = spec.n - spec.n % 2
    corpus = enumerate_standard_tableaux(spec.n, height * max_columns, max_columns, cap)
    return [t for t in corpus if t.columns and in_ideal(t.columns[0], spec.alpha)]


def sturmfels_case(beta: Sequence[int], alpha: Sequence[int]) -> Optional[str]:
    """
    First of the four ways beta can fail beta >= alpha: "i" b1 < a1, "ii" b2 < a2,
    "iii" s = t and b_2t < a_2t, "iv" s > t. None when none applies.
    """
    s, t = len(beta) // 2, len(alpha) // 2
    if beta[0] < alpha[0]:
        return "i"
    if beta[1] < alpha[1]:
        return "ii"
    if s == t and beta[-1] < alpha[-1]:
        return "iii"
    if s > t:
        return "iv"
    return None


def divides_any(m: Monomial, generators: Iterable[Monomial]) -> Optional[Monomial]:
    """The first generator dividing m, if any."""
    for g in generators:
        if g.divides(m):
            return g
    return None


def generator_adiags(spec: CogeneratorSpec, max_size: Optional[int] = None,
                     cap: Optional[int] = None) -> Dict[IndexTuple, Monomial]:
    return {beta: adiag(beta) for beta in natural_generators(spec, max_size, cap)}
