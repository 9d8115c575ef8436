"""
Multiplicity
Degree of R/I_alpha for G-Pfaffian alpha as a sum of binomial determinants
counting non-intersecting lattice paths.
"""

import logging
from typing import List, Sequence, Tuple

import sympy
from pydantic import BaseModel, ConfigDict

from pfaffian_atlas.complex import lattice_paths, path_families
from pfaffian_atlas.errors import NotGPfaffianError
from pfaffian_atlas.ideals import CogeneratorSpec, is_g_pfaffian, reduce_cogenerator
from pfaffian_atlas.pfaffian_core import LatticePoint

logger = logging.getLogger(__name__)


def binomial(n: int, k: int) -> int:
    """C(n, k), zero whenever k < 0, n < 0 or k > n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return int(sympy.binomial(n, k))


def path_count(q: LatticePoint, p: LatticePoint) -> int:
    """Monotone unit-step paths from q to p, ignoring the diagonal."""
    rows, cols = p[0] - q[0], p[1] - q[1]
    return binomial(rows + cols, rows)


def constrained_path_count(q: LatticePoint, p: LatticePoint) -> int:
    """Paths from q to p that stay strictly above the diagonal (reflection formula)."""
    (xq, yq), (xp, yp) = q, p
    top = xp + yp - xq - yq
    return binomial(top, xp - xq) - binomial(top, xp - yq)


class LGVMatrix(BaseModel):
    """t x t matrix of constrained path counts from Q_1..Q_{t-1}, (h, b) to P_1..P_t."""

    model_config = ConfigDict(frozen=True)

    h: int
    k: int
    sources: Tuple[LatticePoint, ...]
    sinks: Tuple[LatticePoint, ...]
    entries: Tuple[Tuple[int, ...], ...]

    @property
    def determinant(self) -> int:
        return int(sympy.Matrix(self.entries).det(method="bareiss"))


def lgv_sources(spec: CogeneratorSpec, h: int, k: int) -> List[LatticePoint]:
    t, a, b = spec.t, spec.a, spec.b
    sources = [(a, a + 2 * i - 1) for i in range(1, t - 1)]
    if t >= 2:
        sources.append((a, k))
    sources.append((h, b))
    return sources


def lgv_sinks(spec: CogeneratorSpec) -> List[LatticePoint]:
    return [(spec.n - 2 * j + 1, spec.n) for j in range(1, spec.t + 1)]


def lgv_matrix(spec: CogeneratorSpec, h: int, k: int) -> LGVMatrix:
    sources, sinks = lgv_sources(spec, h, k), lgv_sinks(spec)
    entries = tuple(tuple(constrained_path_count(q, p) for p in sinks) for q in sources)
    return LGVMatrix(h=h, k=k, sources=tuple(sources), sinks=tuple(sinks), entries=entries)


class MultiplicityTerm(BaseModel):
    """One (h, k) summand: prefix path count times the LGV determinant."""

    model_config = ConfigDict(frozen=True)

    h: int
    k: int
    prefix_paths: int
    determinant: int

    @property
    def value(self) -> int:
        return self.prefix_paths * self.determinant


def _require_g(spec: CogeneratorSpec) -> CogeneratorSpec:
    if not is_g_pfaffian(spec.alpha):
        logger.error(f"Multiplicity requested for non-G-Pfaffian {spec}")
        raise NotGPfaffianError("the multiplicity formula applies only to G-Pfaffians")
    return reduce_cogenerator(spec)


def multiplicity_terms(spec: CogeneratorSpec) -> List[MultiplicityTerm]:
    """
    The (h, k) summands of the multiplicity, after reducing alpha.

    For t = 1 there is a single term (1, b-1) with prefix count 1.
    """
    reduced = _require_g(spec)
    t, a, b = reduced.t, reduced.a, reduced.b
    if t == 1:
        cells = [(1, b - 1, 1)]
    else:
        cells = [
            (h, k, path_count((1, a), (h, k)))
            for h in range(1, a)
            for k in range(a + 2 * t - 3, b)
        ]
    return [
        MultiplicityTerm(h=h, k=k, prefix_paths=r, determinant=lgv_matrix(reduced, h, k).determinant)
        for h, k, r in cells
    ]


def multiplicity(spec: CogeneratorSpec) -> int:
    """
    e(R/I_alpha) for a G-Pfaffian alpha.

    Raises:
        NotGPfaffianError: If alpha is not G-Pfaffian
    """
    total = sum(term.value for term in multiplicity_terms(spec))
    logger.info(f"Multiplicity of {spec}: {total}")
    return total


def count_path_families(sources: Sequence[LatticePoint], sinks: Sequence[LatticePoint]) -> int:
    """Brute-force count of vertex-disjoint path families sources[i] -> sinks[i] inside X+."""
    return sum(1 for _ in path_families(list(zip(sources, sinks)), frozenset()))


def constrained_path_count_bruteforce(q: LatticePoint, p: LatticePoint) -> int:
    return sum(1 for _ in lattice_paths(q, p))
