"""
Verification suites for Pfaffian Atlas.
Each suite runs an exhaustive or seeded randomized corpus against an independent
oracle and returns a CheckReport with the corpus size and, on failure, a certificate.
"""

import logging
from functools import lru_cache
from typing import Any, Dict, Optional

from pydantic import BaseModel

from pfaffian_atlas.codec import monomial_to_json, polynomial_to_json, to_jsonable
from pfaffian_atlas.complex import (
    ForbiddenMonomialOracle,
    ball_certificate,
    enumerate_facets,
    facet_size,
    find_shelling_violation,
    is_face,
    random_subsets,
    shelling_order,
)
from pfaffian_atlas.config import Settings, get_settings
from pfaffian_atlas.errors import BudgetExceededError, CapExceededError
from pfaffian_atlas.groebner import buchberger, in_monomial_ideal, monomial_span_equal, normal_form
from pfaffian_atlas.ideals import (
    CogeneratorSpec,
    counterexample_witness,
    divides_any,
    gap_index,
    generator_adiags,
    initial_ideal_generators,
    is_g_pfaffian,
    natural_generators,
    reduce_cogenerator,
    standard_monomial_basis,
    sturmfels_case,
    sum_generators,
)
from pfaffian_atlas.multiplicity import multiplicity
from pfaffian_atlas.pfaffian_core import (
    Polynomial,
    adiag,
    all_index_tuples,
    initial_term,
    pfaffian_polynomial,
    upper_grid,
)
from pfaffian_atlas.tableaux import (
    bkrs,
    bkrs_inverse,
    bkrs_trace,
    enumerate_standard_tableaux,
    first_column_discipline,
    krs,
    width,
)

logger = logging.getLogger(__name__)

CHECKS = (
    "gbasis", "purity", "ball", "shelling", "face-oracle", "krs-square",
    "width", "roundtrip", "adiag", "sturmfels", "sum-gbasis",
)

# together these reach all four cases of the sturmfels check
STURMFELS_CORPUS = (((1, 3, 4, 6), 6), ((2, 4, 5, 7), 7), ((2, 3), 5))


class CheckReport(BaseModel):
    """Outcome of one verification suite."""

    check: str
    verified: bool
    corpus_size: int
    seed: Optional[int] = None
    details: Dict[str, Any] = {}
    certificate: Optional[Any] = None


@lru_cache(maxsize=8)
def _tableau_corpus(max_entry: int, max_cells: int):
    return enumerate_standard_tableaux(max_entry, max_cells)


class AtlasValidator:
    """Runs the verification suites behind `verify --check`."""

    def __init__(self, settings: Optional[Settings] = None):
        """
        Initialize the validator.

        Args:
            settings: Caps, budgets, seed and sample count (default from environment)
        """
        self.settings = settings or get_settings()

    def run(self, check: str, spec: Optional[CogeneratorSpec] = None, **options) -> CheckReport:
        """Dispatch a check by its CLI name."""
        handlers = {
            "gbasis": lambda: self.validate_gbasis(spec),
            "purity": lambda: self.validate_purity(spec),
            "ball": lambda: self.validate_ball(spec),
            "shelling": lambda: self.validate_shelling(spec),
            "face-oracle": lambda: self.validate_face_oracle(spec, options.get("samples"), options.get("seed")),
            "krs-square": lambda: self.validate_krs_square(**self._corpus_options(options)),
            "width": lambda: self.validate_width(**self._corpus_options(options)),
            "roundtrip": lambda: self.validate_roundtrip(**self._corpus_options(options)),
            "adiag": lambda: self.validate_adiag(options.get("max_n") or 8),
            "sturmfels": lambda: self.validate_sturmfels(spec, options.get("max_columns") or 3),
            "sum-gbasis": lambda: self.validate_sum_gbasis(spec, options.get("other")),
        }
        if check not in handlers:
            raise ValueError(f"unknown check {check!r}; expected one of {', '.join(CHECKS)}")
        try:
            report = handlers[check]()
        except Exception as e:
            logger.error(f"Error running check {check}: {e}")
            raise
        logger.info(f"Check {check}: verified={report.verified} over {report.corpus_size} cases")
        return report

    @staticmethod
    def _corpus_options(options: Dict[str, Any]) -> Dict[str, int]:
        return {
            "max_entry": options.get("max_entry") or 6,
            "max_cells": options.get("max_cells") or 8,
        }

    def validate_gbasis(self, spec: CogeneratorSpec) -> CheckReport:
        """
        Compare the initial ideal of I_alpha with the span of the generators'
        anti-diagonals.

        A non-G-Pfaffian alpha whose gap index is below 2t-1 is refuted directly by
        the counterexample element, without a Groebner basis. Otherwise Buchberger
        runs on the natural generators; for reduced G-Pfaffians the leading
        monomials are also compared with both described initial-ideal generator sets.

        Args:
            spec: Cogenerator to test

        Returns:
            CheckReport; on failure the certificate names a monomial of the initial
            ideal outside the anti-diagonal span
        """
        generators = natural_generators(spec, cap=self.settings.generator_cap)
        adiags = [adiag(beta) for beta in generators]
        g_pfaffian = is_g_pfaffian(spec.alpha)
        details: Dict[str, Any] = {
            "alpha": list(spec.alpha),
            "n": spec.n,
            "g_pfaffian": g_pfaffian,
            "generators": len(generators),
        }

        if not g_pfaffian and gap_index(spec.alpha) < 2 * spec.t - 1:
            witness = counterexample_witness(spec)
            outside = not in_monomial_ideal(witness.witness, adiags)
            details["gap_index"] = witness.gap_index
            certificate = {
                "element": polynomial_to_json(witness.element),
                "witness": monomial_to_json(witness.witness),
                "factors": [list(witness.beta1), list(witness.gamma1), list(witness.beta2), list(witness.gamma2)],
                "witness_outside_adiag_span": outside,
            }
            if spec.n <= self.settings.max_n:
                certificate["normal_form_zero"] = self._reduces_to_zero(witness.element, generators, spec.n)
            return CheckReport(check="gbasis", verified=not outside, corpus_size=len(generators),
                               details=details, certificate=certificate)

        gens = [pfaffian_polynomial(beta, spec.n) for beta in generators]
        computation = buchberger(
            gens,
            max_pairs=self.settings.max_pairs,
            max_generators=self.settings.max_generators,
            max_n=self.settings.max_n,
        )
        leading = computation.leading_monomials
        verified = monomial_span_equal(adiags, leading)
        details.update({
            "basis_size": len(computation.computed_basis),
            "pairs_processed": computation.pairs_processed,
            "adiag_span_equal": verified,
        })
        if verified and spec.is_reduced and g_pfaffian:
            for minimal in (False, True):
                agrees = monomial_span_equal(initial_ideal_generators(spec, minimal=minimal), leading)
                details[f"described_{'minimal' if minimal else 'full'}_equal"] = agrees
                verified = verified and agrees

        certificate = None
        outside = [m for m in leading if not in_monomial_ideal(m, adiags)]
        if outside:
            certificate = {"leading_monomial": monomial_to_json(outside[0])}
        return CheckReport(check="gbasis", verified=verified, corpus_size=len(gens),
                           details=details, certificate=certificate)

    def _reduces_to_zero(self, element: Polynomial, generators, n: int) -> Optional[bool]:
        gens = [pfaffian_polynomial(beta, n) for beta in generators]
        try:
            computation = buchberger(gens, max_pairs=self.settings.max_pairs,
                                     max_generators=self.settings.max_generators, max_n=self.settings.max_n)
        except (BudgetExceededError, CapExceededError) as e:
            logger.warning(f"Skipping the ideal-membership check: {e}")
            return None
        return normal_form(element, computation.computed_basis).is_zero()

    def validate_sum_gbasis(self, spec: CogeneratorSpec, other: Optional[CogeneratorSpec]) -> CheckReport:
        """Generators of two G-Pfaffian ideals together form a G-basis of the sum."""
        if other is None:
            raise ValueError("sum-gbasis needs a second cogenerator")
        union = sum_generators(spec, other, cap=self.settings.generator_cap)
        gens = [pfaffian_polynomial(beta, spec.n) for beta in union]
        computation = buchberger(gens, max_pairs=self.settings.max_pairs,
                                 max_generators=self.settings.max_generators, max_n=self.settings.max_n)
        adiags = [adiag(beta) for beta in union]
        verified = monomial_span_equal(adiags, computation.leading_monomials)
        certificate = None
        if not verified:
            outside = next(m for m in computation.leading_monomials if not in_monomial_ideal(m, adiags))
            certificate = {"leading_monomial": monomial_to_json(outside)}
        return CheckReport(
            check="sum-gbasis", verified=verified, corpus_size=len(gens),
            details={"alpha": list(spec.alpha), "beta": list(other.alpha), "n": spec.n,
                     "basis_size": len(computation.computed_basis)},
            certificate=certificate,
        )

    def _facets(self, spec: CogeneratorSpec):
        return enumerate_facets(reduce_cogenerator(spec), cap=self.settings.facet_cap)

    def validate_purity(self, spec: CogeneratorSpec) -> CheckReport:
        """Every facet is a face with d points, and the number of facets equals e(R)."""
        reduced = reduce_cogenerator(spec)
        facets = self._facets(spec)
        d = facet_size(reduced)
        expected = multiplicity(reduced)
        certificate = None
        for facet in facets:
            if len(facet.face) != d or not is_face(facet, reduced):
                certificate = facet.to_json()
                break
        verified = certificate is None and len(facets) == expected
        if certificate is None and not verified:
            certificate = {"facets": len(facets), "multiplicity": expected}
        return CheckReport(
            check="purity", verified=verified, corpus_size=len(facets),
            details={"dimension": d - 1, "facet_size": d, "multiplicity": expected},
            certificate=certificate,
        )

    def validate_ball(self, spec: CogeneratorSpec) -> CheckReport:
        facets = self._facets(spec)
        verified = ball_certificate(facets)
        return CheckReport(check="ball", verified=verified, corpus_size=len(facets))

    def validate_shelling(self, spec: CogeneratorSpec) -> CheckReport:
        reduced = reduce_cogenerator(spec)
        facets = self._facets(spec)
        order = shelling_order(facets, reduced, cap=self.settings.shelling_cap)
        violation = find_shelling_violation(order)
        certificate = None
        if violation is not None:
            i, j = violation
            certificate = {"earlier": order[i].to_json(), "later": order[j].to_json()}
        return CheckReport(check="shelling", verified=violation is None,
                           corpus_size=len(order), certificate=certificate)

    def validate_face_oracle(self, spec: CogeneratorSpec, samples: Optional[int] = None,
                             seed: Optional[int] = None) -> CheckReport:
        """
        is_face against the forbidden-monomial oracle: exhaustive when X+ has at
        most 15 points, seeded random subsets otherwise.
        """
        reduced = reduce_cogenerator(spec)
        oracle = ForbiddenMonomialOracle(reduced)
        grid = upper_grid(reduced.n)
        samples = self.settings.samples if samples is None else samples
        seed = self.settings.seed if seed is None else seed
        if len(grid) <= 15:
            subsets = (
                [p for bit, p in enumerate(grid) if mask >> bit & 1] for mask in range(1 << len(grid))
            )
            used_seed = None
        else:
            subsets = random_subsets(reduced, samples, seed)
            used_seed = seed
        checked = 0
        certificate = None
        for z in subsets:
            checked += 1
            if is_face(z, reduced) != oracle(z):
                certificate = {"points": [list(p) for p in sorted(z)], "is_face": is_face(z, reduced)}
                break
        return CheckReport(check="face-oracle", verified=certificate is None, corpus_size=checked,
                           seed=used_seed, certificate=certificate)

    def validate_krs_square(self, max_entry: int = 6, max_cells: int = 8) -> CheckReport:
        """krs(T, T) equals bkrs(T) squared as monomials."""
        corpus = _tableau_corpus(max_entry, max_cells)
        for t in corpus:
            if krs(t, t).monomial != bkrs(t).monomial ** 2:
                return CheckReport(check="krs-square", verified=False, corpus_size=len(corpus),
                                   certificate=to_jsonable(t))
        return CheckReport(check="krs-square", verified=True, corpus_size=len(corpus))

    def validate_width(self, max_entry: int = 6, max_cells: int = 8) -> CheckReport:
        """width(bkrs(T)) = length(T) / 2 and width(krs(T, T)) = length(T)."""
        corpus = _tableau_corpus(max_entry, max_cells)
        for t in corpus:
            law = None
            if width(bkrs(t)) != t.length // 2:
                law = "bkrs"
            elif width(krs(t, t)) != t.length:
                law = "krs"
            if law:
                return CheckReport(check="width", verified=False, corpus_size=len(corpus),
                                   certificate={"law": law, "tableau": to_jsonable(t)})
        return CheckReport(check="width", verified=True, corpus_size=len(corpus))

    def validate_roundtrip(self, max_entry: int = 6, max_cells: int = 8) -> CheckReport:
        """bkrs_inverse undoes bkrs, bkrs is injective and the first column empties from below."""
        corpus = _tableau_corpus(max_entry, max_cells)
        images = {}
        for t in corpus:
            trace = bkrs_trace(t)
            image = bkrs(t)
            failure = None
            if not first_column_discipline(trace):
                failure = "first-column"
            elif image in images:
                failure = "collision"
            elif bkrs_inverse(image) != t:
                failure = "inverse"
            if failure:
                return CheckReport(check="roundtrip", verified=False, corpus_size=len(corpus),
                                   certificate={"failure": failure, "tableau": to_jsonable(t),
                                                "array": to_jsonable(image)})
            images[image] = t
        return CheckReport(check="roundtrip", verified=True, corpus_size=len(corpus))

    def validate_adiag(self, max_n: int = 8) -> CheckReport:
        """The initial term of every Pfaffian with entries <= max_n is +-adiag."""
        checked = 0
        for alpha in all_index_tuples(max_n, max_n - max_n % 2):
            checked += 1
            lead = initial_term(pfaffian_polynomial(alpha, max_n))
            if lead.monomial != adiag(alpha) or abs(lead.coefficient) != 1:
                return CheckReport(check="adiag", verified=False, corpus_size=checked,
                                   certificate={"alpha": list(alpha), "initial": monomial_to_json(lead.monomial)})
        return CheckReport(check="adiag", verified=True, corpus_size=checked)

    def validate_sturmfels(self, spec: Optional[CogeneratorSpec] = None, max_columns: int = 3) -> CheckReport:
        """
        Every standard tableau whose first column lies in I_alpha has bkrs image
        divisible by some generator anti-diagonal; tallies the four ways a first
        column can fail beta >= alpha.

        Args:
            spec: A single G-Pfaffian cogenerator (default: STURMFELS_CORPUS)
            max_columns: Largest number of tableau columns

        Returns:
            CheckReport; verified only when no tableau fails and every case was hit
        """
        specs = [spec] if spec is not None else [CogeneratorSpec(alpha=a, n=n) for a, n in STURMFELS_CORPUS]
        for s in specs:
            if not is_g_pfaffian(s.alpha):
                raise ValueError(f"the sturmfels check applies only to G-Pfaffians, not {s}")
        cases: Dict[str, int] = {"i": 0, "ii": 0, "iii": 0, "iv": 0}
        details: Dict[str, Any] = {"cases": cases, "instances": [[list(s.alpha), s.n] for s in specs]}
        checked = 0
        for s in specs:
            tableaux = standard_monomial_basis(s, max_columns)
            adiags = list(generator_adiags(s, cap=self.settings.generator_cap).values())
            logger.info(f"Sturmfels corpus for {s}: {len(tableaux)} tableaux")
            for t in tableaux:
                checked += 1
                case = sturmfels_case(t.columns[0], s.alpha)
                if case is not None:
                    cases[case] += 1
                if divides_any(bkrs(t).monomial, adiags) is None:
                    return CheckReport(check="sturmfels", verified=False, corpus_size=checked, details=details,
                                       certificate={"alpha": list(s.alpha), "n": s.n,
                                                    "tableau": to_jsonable(t), "case": case})
        empty = [case for case, count in cases.items() if not count]
        if empty:
            logger.warning(f"Sturmfels check left cases {empty} without tableaux")
            return CheckReport(check="sturmfels", verified=False, corpus_size=checked, details=details,
                               certificate={"empty_cases": empty})
        return CheckReport(check="sturmfels", verified=True, corpus_size=checked, details=details)
