"""
Groebner
Buchberger's algorithm over the anti-diagonal order, with exact rational
coefficients. Used as the independent oracle for every G-basis claim.
"""

import heapq
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from pfaffian_atlas.config import get_settings
from pfaffian_atlas.errors import BudgetExceededError, CapExceededError, InvalidInputError, PreconditionError
from pfaffian_atlas.pfaffian_core import Monomial, Polynomial, initial_term

logger = logging.getLogger(__name__)


def leading_monomials(polys: Iterable[Polynomial]) -> List[Monomial]:
    return [initial_term(p).monomial for p in polys]


def normal_form(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """
    Full remainder of f on division by basis.

    The leading term is always reduced by the first basis element (in listed order)
    whose initial monomial divides it; otherwise it moves to the remainder.
    """
    leads = [initial_term(g) for g in basis]
    work: Dict[Monomial, Fraction] = dict(f.terms)
    remainder: Dict[Monomial, Fraction] = {}
    while work:
        m = max(work)
        c = work[m]
        for g, (lc, lm) in zip(basis, leads):
            if lm.divides(m):
                quotient = m / lm
                factor = c / lc
                for mono, coeff in g.terms.items():
                    key = mono * quotient
                    value = work.get(key, 0) - factor * coeff
                    if value:
                        work[key] = value
                    else:
                        work.pop(key, None)
                break
        else:
            remainder[m] = c
            del work[m]
    return Polynomial(remainder)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    cf, mf = initial_term(f)
    cg, mg = initial_term(g)
    lcm = mf.lcm(mg)
    return f.scale(1 / cf, lcm / mf) - g.scale(1 / cg, lcm / mg)


def in_monomial_ideal(m: Monomial, generators: Iterable[Monomial]) -> bool:
    return any(g.divides(m) for g in generators)


def monomial_span_equal(g1: Iterable[Monomial], g2: Iterable[Monomial]) -> bool:
    """True iff the two sets generate the same monomial ideal."""
    g1, g2 = list(g1), list(g2)
    return all(in_monomial_ideal(m, g2) for m in g1) and all(in_monomial_ideal(m, g1) for m in g2)


class BasisComputation:
    """
    State of a Buchberger run: input generators, the basis grown so far and the
    pending S-pairs. A computation that ran out of budget can be resumed.
    """

    def __init__(self, generators: Sequence[Polynomial]):
        self.generators: List[Polynomial] = list(generators)
        self.computed_basis: List[Polynomial] = []
        self.pairs_processed = 0
        self.pairs_pruned = 0
        self.zero_reductions = 0
        self._queue: List[Tuple[tuple, int, int, int]] = []
        self._counter = 0
        for g in self.generators:
            self._add(g.monic())

    @property
    def pending_pairs(self) -> int:
        return len(self._queue)

    @property
    def is_complete(self) -> bool:
        return not self._queue

    @property
    def leading_monomials(self) -> List[Monomial]:
        return leading_monomials(self.computed_basis)

    def _add(self, h: Polynomial) -> None:
        new = len(self.computed_basis)
        self.computed_basis.append(h)
        lm_new = initial_term(h).monomial
        for k in range(new):
            lm_k = initial_term(self.computed_basis[k]).monomial
            if lm_k.is_coprime(lm_new):
                self.pairs_pruned += 1
                continue
            heapq.heappush(self._queue, (lm_k.lcm(lm_new).key, self._counter, k, new))
            self._counter += 1

    def run(self, max_pairs: int) -> "BasisComputation":
        """Process pairs until none remain or max_pairs have been processed in total."""
        while self._queue:
            if self.pairs_processed >= max_pairs:
                logger.info(
                    f"Buchberger stopped at budget: {self.pairs_processed} pairs, "
                    f"basis size {len(self.computed_basis)}, {self.pending_pairs} pending"
                )
                raise BudgetExceededError(self.pairs_processed, partial=self)
            _, _, i, j = heapq.heappop(self._queue)
            self.pairs_processed += 1
            s = s_polynomial(self.computed_basis[i], self.computed_basis[j])
            h = normal_form(s, self.computed_basis)
            if h.is_zero():
                self.zero_reductions += 1
                continue
            self._add(h.monic())
            if self.pairs_processed % 500 == 0:
                logger.info(
                    f"Buchberger: {self.pairs_processed} pairs, basis size {len(self.computed_basis)}"
                )
        logger.info(
            f"Buchberger finished: {self.pairs_processed} pairs, {self.pairs_pruned} pruned, "
            f"basis size {len(self.computed_basis)}"
        )
        return self


def buchberger(
    gens: Sequence[Polynomial],
    max_pairs: Optional[int] = None,
    max_generators: Optional[int] = None,
    max_n: Optional[int] = None,
    resume: Optional[BasisComputation] = None,
) -> BasisComputation:
    """
    Groebner basis of the ideal generated by gens.

    Pairs are processed by the normal strategy (smallest lcm first, ties by
    insertion order); pairs with coprime leading monomials are skipped. New
    basis elements are made monic.

    Args:
        gens: Nonzero generators
        max_pairs: Total S-pair budget (default from settings)
        max_generators: Largest accepted input size (default from settings)
        max_n: Largest variable index accepted (default from settings)
        resume: A computation previously interrupted by BudgetExceededError

    Returns:
        The completed BasisComputation

    Raises:
        InvalidInputError: If a generator is zero
        CapExceededError: If there are too many generators
        PreconditionError: If a variable index exceeds max_n
        BudgetExceededError: If the pair budget runs out; carries the partial computation
    """
    settings = get_settings()
    max_pairs = max_pairs if max_pairs is not None else settings.max_pairs
    if resume is not None:
        return resume.run(max_pairs)

    max_generators = max_generators if max_generators is not None else settings.max_generators
    max_n = max_n if max_n is not None else settings.max_n
    if any(g.is_zero() for g in gens):
        logger.error("Buchberger called with a zero generator")
        raise InvalidInputError("buchberger requires nonzero generators")
    if len(gens) > max_generators:
        logger.error(f"Buchberger refused: {len(gens)} generators over cap {max_generators}")
        raise CapExceededError(f"{len(gens)} Buchberger generators", max_generators)
    largest = max((j for g in gens for m in g.terms for (_, j) in m.support), default=0)
    if largest > max_n:
        logger.error(f"Buchberger refused: variable index {largest} over max_n {max_n}")
        raise PreconditionError(f"variable index {largest} exceeds max_n = {max_n}")

    logger.info(f"Starting Buchberger on {len(gens)} generators (budget {max_pairs} pairs)")
    return BasisComputation(gens).run(max_pairs)


class SPairFailure(NamedTuple):
    i: int
    j: int
    remainder: Polynomial


def certify_basis(basis: Sequence[Polynomial]) -> Optional[SPairFailure]:
    """
    Check every S-pair of basis reduces to zero.

    Returns:
        None when basis is a Groebner basis, otherwise the first failing pair
    """
    for j in range(len(basis)):
        for i in range(j):
            s = s_polynomial(basis[i], basis[j])
            remainder = normal_form(s, basis)
            if not remainder.is_zero():
                return SPairFailure(i, j, remainder)
    return None
