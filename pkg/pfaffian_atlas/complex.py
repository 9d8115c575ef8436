"""
Complex
The simplicial complex of the squarefree initial ideal of a reduced G-Pfaffian
ideal: light-and-shadow decompositions, the face test, facets as families of
non-intersecting lattice paths, purity, the ball certificate and shelling.
"""

import heapq
import logging
from collections import Counter
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from pfaffian_atlas.config import get_settings
from pfaffian_atlas.errors import CapExceededError, InvalidInputError
from pfaffian_atlas.ideals import (
    CogeneratorSpec,
    RegionMap,
    initial_ideal_generators,
    require_reduced_g_pfaffian,
)
from pfaffian_atlas.pfaffian_core import LatticePoint, lattice_point, upper_grid

logger = logging.getLogger(__name__)

Path = Tuple[LatticePoint, ...]


class Face(BaseModel):
    """A set of points of X+, kept sorted."""

    model_config = ConfigDict(frozen=True)

    points: Tuple[LatticePoint, ...] = ()

    @field_validator("points", mode="before")
    @classmethod
    def normalize(cls, value):
        try:
            return tuple(sorted({lattice_point(p) for p in value}))
        except InvalidInputError as e:
            raise ValueError(str(e)) from e


class ShadowDecomposition(BaseModel):
    """Z = Z'_1 + Z_1 + ... + Z_r: the moon staircase and the sunlight layers of the rest."""

    model_config = ConfigDict(frozen=True)

    moon_first: Tuple[LatticePoint, ...]
    sun_chains: Tuple[Tuple[LatticePoint, ...], ...]

    @property
    def r(self) -> int:
        return len(self.sun_chains)


class FacetSpec(BaseModel):
    """
    A facet given by its label (h, k) and its vertex-disjoint lattice paths.

    Paths are listed as Q -> P_hk (absent when t = 1), Q^h -> P_t, then
    Q_i -> P_i for i = 1..t-1.
    """

    model_config = ConfigDict(frozen=True)

    h: int
    k: int
    paths: Tuple[Path, ...]

    @property
    def points(self) -> Tuple[LatticePoint, ...]:
        return tuple(sorted(p for path in self.paths for p in path))

    @property
    def face(self) -> FrozenSet[LatticePoint]:
        return frozenset(p for path in self.paths for p in path)

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "k": self.k,
            "points": [list(p) for p in self.points],
            "paths": [[list(p) for p in path] for path in self.paths],
        }


FaceLike = Union[Face, FacetSpec, Iterable[LatticePoint]]


def _point_set(z: FaceLike) -> Set[LatticePoint]:
    if isinstance(z, (Face, FacetSpec)):
        return set(z.points)
    return {tuple(p) for p in z}


def moonlight(z: Iterable[LatticePoint]) -> Set[LatticePoint]:
    """delta'(Z): points with no point of Z strictly up-right (i' < i, j' > j)."""
    z = set(z)
    return {(i, j) for i, j in z if not any(p < i and q > j for p, q in z)}


def sunlight(z: Iterable[LatticePoint]) -> Set[LatticePoint]:
    """delta(Z): points with no point of Z strictly lower-left (i' > i, j' < j)."""
    z = set(z)
    return {(i, j) for i, j in z if not any(p > i and q < j for p, q in z)}


def sun_layers(z: Iterable[LatticePoint]) -> List[Tuple[LatticePoint, ...]]:
    """Iterated sunlight: delta(Z), delta(Z - delta(Z)), ..."""
    rest = set(z)
    layers = []
    while rest:
        layer = sunlight(rest)
        layers.append(tuple(sorted(layer)))
        rest -= layer
    return layers


def shadow_decompose(z: FaceLike) -> ShadowDecomposition:
    points = _point_set(z)
    moon = moonlight(points)
    return ShadowDecomposition(
        moon_first=tuple(sorted(moon)),
        sun_chains=tuple(sun_layers(points - moon)),
    )


def is_face(z: FaceLike, spec: CogeneratorSpec) -> bool:
    """
    Face test for the complex of a reduced G-Pfaffian spec.

    Z is a face iff Z avoids A, Z - Z'_1 lies in D + E, r <= t-1, and when
    r = t-1 and Z'_1 meets B + D, Z'_1 avoids F: the points of B + D strictly
    up-right of some point of Z_{t-1}.

    Raises:
        NotGPfaffianError: If alpha is not G-Pfaffian
        PreconditionError: If alpha is not reduced
    """
    require_reduced_g_pfaffian(spec, "face test")
    regions = RegionMap.for_spec(spec)
    points = _point_set(z)
    labels = {p: regions.classify(p) for p in points}
    if "A" in labels.values():
        return False
    decomposition = shadow_decompose(points)
    moon = decomposition.moon_first
    if any(labels[p] not in "DE" for chain in decomposition.sun_chains for p in chain):
        return False
    t = spec.t
    if decomposition.r > t - 1:
        return False
    if t >= 2 and decomposition.r == t - 1:
        moon_bd = [p for p in moon if labels[p] in "BD"]
        last = decomposition.sun_chains[t - 2]
        for i, j in moon_bd:
            if any(q_i > i and q_j < j for q_i, q_j in last):
                return False
    return True


def facet_size(spec: CogeneratorSpec) -> int:
    """d = 2nt - 1 - b - 2(t-1)a - (2t-3)(t-1)."""
    n, t, a, b = spec.n, spec.t, spec.a, spec.b
    return 2 * n * t - 1 - b - 2 * (t - 1) * a - (2 * t - 3) * (t - 1)


def facet_labels(spec: CogeneratorSpec) -> List[Tuple[int, int]]:
    """The (h, k) cells: h in 1..a-1, k in a+2t-3..b-1; (1, b-1) when t = 1."""
    t, a, b = spec.t, spec.a, spec.b
    if t == 1:
        return [(1, b - 1)]
    return [(h, k) for h in range(1, a) for k in range(a + 2 * t - 3, b)]


def path_endpoints(spec: CogeneratorSpec, h: int, k: int) -> List[Tuple[LatticePoint, LatticePoint]]:
    """Start and end of every path of the facets labelled (h, k), in FacetSpec order."""
    n, t, a, b = spec.n, spec.t, spec.a, spec.b

    def p(j: int) -> LatticePoint:
        return (n - 2 * j + 1, n)

    if t == 1:
        return [((1, b), p(1))]
    ends = [((1, a), (h, k)), ((h, b), p(t))]
    for i in range(1, t):
        start = (a, k) if i == t - 1 else (a, a + 2 * i - 1)
        ends.append((start, p(i)))
    return ends


def lattice_paths(start: LatticePoint, end: LatticePoint,
                  blocked: FrozenSet[LatticePoint] = frozenset()) -> Iterator[Path]:
    """Saturated paths inside X+ from start to end with unit steps (i+1, j) or (i, j+1)."""
    (i0, j0), (i1, j1) = start, end
    if i0 > i1 or j0 > j1 or start in blocked or end in blocked:
        return

    def extend(path: List[LatticePoint]) -> Iterator[Path]:
        i, j = path[-1]
        if (i, j) == end:
            yield tuple(path)
            return
        for step in ((i + 1, j), (i, j + 1)):
            si, sj = step
            if si <= i1 and sj <= j1 and si < sj and step not in blocked:
                path.append(step)
                yield from extend(path)
                path.pop()

    yield from extend([start])


def path_families(ends: Sequence[Tuple[LatticePoint, LatticePoint]],
                   used: FrozenSet[LatticePoint]) -> Iterator[Tuple[Path, ...]]:
    if not ends:
        yield ()
        return
    start, end = ends[0]
    for path in lattice_paths(start, end, used):
        for rest in path_families(ends[1:], used | frozenset(path)):
            yield (path,) + rest


def enumerate_facets(spec: CogeneratorSpec, cap: Optional[int] = None) -> List[FacetSpec]:
    """
    All facets of the complex as families of vertex-disjoint saturated paths.

    Args:
        spec: Reduced G-Pfaffian spec
        cap: Largest number of facets (default from settings)

    Returns:
        Facets sorted by (h, k) and then by point set

    Raises:
        CapExceededError: If there are more than cap facets
    """
    require_reduced_g_pfaffian(spec, "facet enumeration")
    cap = cap if cap is not None else get_settings().facet_cap
    facets: List[FacetSpec] = []
    for h, k in facet_labels(spec):
        cell = []
        for paths in path_families(path_endpoints(spec, h, k), frozenset()):
            cell.append(FacetSpec.model_construct(h=h, k=k, paths=paths))
            if len(facets) + len(cell) > cap:
                logger.error(f"Facet enumeration for {spec} exceeded cap {cap}")
                raise CapExceededError(f"facets of {spec}", cap)
        logger.info(f"Facets of {spec} in cell (h={h}, k={k}): {len(cell)}")
        facets.extend(sorted(cell, key=lambda f: f.points))
    return facets


def verify_pure_and_dimension(spec: CogeneratorSpec,
                              facets: Optional[Sequence[FacetSpec]] = None) -> Tuple[bool, int]:
    """(all facets have d points, d - 1)."""
    d = facet_size(spec)
    facets = enumerate_facets(spec) if facets is None else facets
    sizes = Counter(len(f.face) for f in facets)
    pure = set(sizes) == {d}
    if not pure:
        logger.warning(f"Facet sizes of {spec} are {dict(sizes)}, expected all {d}")
    return pure, d - 1


class _Bits:
    """Bitmask encoding of a finite universe of points."""

    def __init__(self, universe: Iterable[Hashable]):
        self.index: Dict[Hashable, int] = {}
        for p in universe:
            self.index.setdefault(p, len(self.index))

    def mask(self, points: Iterable[Hashable]) -> int:
        value = 0
        for p in points:
            value |= 1 << self.index[p]
        return value


def _face_sets(facets: Sequence[Union[FacetSpec, Iterable[Hashable]]]) -> List[FrozenSet[Hashable]]:
    return [f.face if isinstance(f, FacetSpec) else frozenset(f) for f in facets]


def ball_certificate(facets: Sequence[Union[FacetSpec, Iterable[Hashable]]]) -> bool:
    """Every ridge lies in at most two facets and some ridge lies in exactly one."""
    sets = _face_sets(facets)
    bits = _Bits(p for f in sets for p in sorted(f, key=repr))
    ridges: Counter = Counter()
    for f in sets:
        mask = bits.mask(f)
        for p in f:
            ridges[mask ^ (1 << bits.index[p])] += 1
    if not ridges:
        return False
    counts = set(ridges.values())
    return max(counts) <= 2 and 1 in counts


def find_shelling_violation(order: Sequence[Union[FacetSpec, Iterable[Hashable]]]) -> Optional[Tuple[int, int]]:
    """
    First (i, j), i < j, with no x in F_j - F_i such that F_j - F_l = {x} for some l < j.
    """
    sets = _face_sets(order)
    bits = _Bits(p for f in sets for p in sorted(f, key=repr))
    masks = [bits.mask(f) for f in sets]
    for j in range(1, len(masks)):
        fj = masks[j]
        diffs = [fj & ~masks[i] for i in range(j)]
        reachable = 0
        for diff in diffs:
            if diff and diff & (diff - 1) == 0:
                reachable |= diff
        for i, diff in enumerate(diffs):
            if not diff & reachable:
                return (i, j)
    return None


def verify_shelling(order: Sequence[Union[FacetSpec, Iterable[Hashable]]]) -> bool:
    return find_shelling_violation(order) is None


def _up_right_closure(points: Iterable[LatticePoint], n: int) -> Set[LatticePoint]:
    closure = set()
    for u, v in points:
        for p in range(1, u + 1):
            for q in range(v, n + 1):
                closure.add((p, q))
    return closure


def _components(facet: FacetSpec, t: int) -> List[Tuple[LatticePoint, ...]]:
    decomposition = shadow_decompose(facet)
    chains = list(decomposition.sun_chains)[: t - 1]
    chains += [()] * (t - 1 - len(chains))
    return chains + [decomposition.moon_first]


def shelling_order(facets: Sequence[FacetSpec], spec: Optional[CogeneratorSpec] = None,
                   cap: Optional[int] = None) -> List[FacetSpec]:
    """
    Order facets so that lower-left facets come first.

    F' precedes F whenever every component of F (sun chains, then the moon
    staircase) lies in the up-right closure of the matching component of F',
    but not conversely. Among available facets the first, by sorted point list,
    that keeps the shelling condition is taken.

    Raises:
        CapExceededError: If there are more than cap facets
    """
    cap = cap if cap is not None else get_settings().shelling_cap
    if len(facets) > cap:
        logger.error(f"Shelling order refused: {len(facets)} facets over cap {cap}")
        raise CapExceededError(f"shelling order of {len(facets)} facets", cap)
    if not facets:
        return []
    n = spec.n if spec is not None else max(j for f in facets for _, j in f.points)
    t = spec.t if spec is not None else max(len(f.paths) - 1, 1)
    bits = _Bits(upper_grid(n))
    comps = [[bits.mask(c) for c in _components(f, t)] for f in facets]
    closures = [[bits.mask(_up_right_closure(c, n)) for c in _components(f, t)] for f in facets]

    def above(x: int, y: int) -> bool:
        return all(zx & ~ry == 0 for zx, ry in zip(comps[x], closures[y]))

    m = len(facets)
    successors: List[List[int]] = [[] for _ in range(m)]
    indegree = [0] * m
    for x in range(m):
        for y in range(m):
            if x != y and above(x, y) and not above(y, x):
                successors[y].append(x)
                indegree[x] += 1

    masks = [bits.mask(f.face) for f in facets]
    keys = [f.points for f in facets]
    available = [(keys[x], x) for x in range(m) if indegree[x] == 0]
    heapq.heapify(available)
    placed: List[int] = []

    def extends_shelling(x: int) -> bool:
        diffs = [masks[x] & ~masks[i] for i in placed]
        reachable = 0
        for diff in diffs:
            if diff and diff & (diff - 1) == 0:
                reachable |= diff
        return all(diff & reachable for diff in diffs)

    while available:
        skipped = []
        chosen = None
        while available:
            candidate = heapq.heappop(available)
            if extends_shelling(candidate[1]):
                chosen = candidate
                break
            skipped.append(candidate)
        if chosen is None:
            chosen, skipped = skipped[0], skipped[1:]
            logger.warning(f"No available facet extends the shelling after {len(placed)} placed; taking {chosen[0]}")
        for item in skipped:
            heapq.heappush(available, item)
        x = chosen[1]
        placed.append(x)
        for y in successors[x]:
            indegree[y] -= 1
            if indegree[y] == 0:
                heapq.heappush(available, (keys[y], y))
    logger.info(f"Shelling order over {m} facets computed")
    return [facets[x] for x in placed]


class ForbiddenMonomialOracle:
    """Face test by divisibility: Z is a face iff no initial-ideal generator is supported in Z."""

    def __init__(self, spec: CogeneratorSpec):
        self.spec = spec
        self.bits = _Bits(upper_grid(spec.n))
        generators = initial_ideal_generators(spec, minimal=False)
        self.masks = sorted({self.bits.mask(g.support) for g in generators})

    def __call__(self, z: FaceLike) -> bool:
        mask = self.bits.mask(_point_set(z))
        return not any(g & ~mask == 0 for g in self.masks)


def face_oracle(z: FaceLike, spec: CogeneratorSpec) -> bool:
    return ForbiddenMonomialOracle(spec)(z)


def maximal_faces_bruteforce(spec: CogeneratorSpec) -> List[FrozenSet[LatticePoint]]:
    """
    Maximal faces by depth-first search over subsets of X+, pruning at the first
    forbidden generator. Independent of the path description of facets.
    """
    require_reduced_g_pfaffian(spec, "maximal-face search")
    oracle = ForbiddenMonomialOracle(spec)
    bits, gens = oracle.bits, oracle.masks
    grid = upper_grid(spec.n)
    by_top: Dict[int, List[int]] = {}
    for g in gens:
        by_top.setdefault(g.bit_length() - 1, []).append(g)
    maximal: List[int] = []

    def blocked(mask: int, idx: int) -> bool:
        bit = 1 << idx
        grown = mask | bit
        return any(g & bit and g & ~grown == 0 for g in gens)

    def search(mask: int, start: int) -> None:
        extended = False
        for idx in range(start, len(grid)):
            grown = mask | (1 << idx)
            if any(g & ~grown == 0 for g in by_top.get(idx, ())):
                continue
            extended = True
            search(grown, idx + 1)
        if not extended and all(mask >> idx & 1 or blocked(mask, idx) for idx in range(len(grid))):
            maximal.append(mask)

    search(0, 0)
    points = {v: k for k, v in bits.index.items()}
    return sorted(
        (frozenset(points[i] for i in range(len(grid)) if m >> i & 1) for m in maximal),
        key=lambda f: sorted(f),
    )


def random_subsets(spec: CogeneratorSpec, samples: int, seed: int = 0,
                   max_size: Optional[int] = None) -> Iterator[List[LatticePoint]]:
    """Seeded random subsets of X+ with sizes uniform in [0, max_size]."""
    grid = upper_grid(spec.n)
    max_size = min(facet_size(spec) + 2 if max_size is None else max_size, len(grid))
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        size = int(rng.integers(0, max_size + 1))
        chosen = rng.choice(len(grid), size=size, replace=False)
        yield [grid[int(c)] for c in chosen]
