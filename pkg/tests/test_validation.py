"""Tests for the verification suites."""

import pytest

from pfaffian_atlas.config import Settings
from pfaffian_atlas.groebner import normal_form
from pfaffian_atlas.ideals import CogeneratorSpec, counterexample_witness, generator_polynomials, is_g_pfaffian
from pfaffian_atlas.pfaffian_core import all_index_tuples
from pfaffian_atlas.validation import AtlasValidator, CheckReport


@pytest.fixture
def validator():
    return AtlasValidator(Settings(samples=300, seed=1))


def test_gbasis_positive(validator, spec_1346):
    report = validator.validate_gbasis(spec_1346)
    assert isinstance(report, CheckReport)
    assert report.verified
    assert report.corpus_size == 10
    assert report.details["described_full_equal"]
    assert report.details["described_minimal_equal"]
    assert report.certificate is None


def test_gbasis_negative(validator, spec_1245):
    report = validator.run("gbasis", spec_1245)
    assert not report.verified
    assert report.certificate["witness"] == [[[1, 3], 1], [[1, 5], 1], [[2, 4], 1]]
    assert report.certificate["witness_outside_adiag_span"]
    assert report.certificate["normal_form_zero"] is True


def test_sum_gbasis(validator, spec_1346):
    other = CogeneratorSpec(alpha=(1, 2, 3, 6), n=6)
    report = validator.run("sum-gbasis", spec_1346, other=other)
    assert report.verified


def test_sum_gbasis_needs_second_spec(validator, spec_1346):
    with pytest.raises(ValueError):
        validator.run("sum-gbasis", spec_1346)


def test_complex_checks(validator, spec_1346):
    purity = validator.run("purity", spec_1346)
    assert purity.verified
    assert purity.corpus_size == 7
    assert purity.details == {"dimension": 9, "facet_size": 10, "multiplicity": 7}
    assert validator.run("ball", spec_1346).verified
    assert validator.run("shelling", spec_1346).verified


def test_purity_reduces_first(validator):
    report = validator.validate_purity(CogeneratorSpec(alpha=(2, 4, 5, 7), n=7))
    assert report.verified
    assert report.details["multiplicity"] == 7


def test_face_oracle_exhaustive_small(validator):
    report = validator.run("face-oracle", CogeneratorSpec(alpha=(1, 3, 4, 5), n=5))
    assert report.verified
    assert report.corpus_size == 1 << 10
    assert report.seed is None


def test_face_oracle_random(validator):
    report = validator.validate_face_oracle(CogeneratorSpec(alpha=(1, 3, 4, 7), n=7))
    assert report.verified
    assert report.corpus_size == 300
    assert report.seed == 1


def test_tableau_checks(validator):
    for check in ("krs-square", "width", "roundtrip"):
        report = validator.run(check, max_entry=5, max_cells=6)
        assert report.verified, check
        assert report.corpus_size > 100


def test_adiag_check(validator):
    report = validator.run("adiag", max_n=6)
    assert report.verified
    assert report.corpus_size == 15 + 15 + 1


def test_sturmfels_single_alpha_reports_empty_cases(validator, spec_1346):
    report = validator.run("sturmfels", spec_1346, max_columns=1)
    assert not report.verified
    assert report.certificate == {"empty_cases": ["i", "iv"]}
    cases = report.details["cases"]
    assert cases["ii"] > 0
    assert cases["iii"] > 0


def test_sturmfels_corpus_reaches_every_case(validator):
    report = validator.run("sturmfels", max_columns=1)
    assert report.verified
    assert report.details["instances"] == [[[1, 3, 4, 6], 6], [[2, 4, 5, 7], 7], [[2, 3], 5]]
    assert all(count > 0 for count in report.details["cases"].values())


def test_sturmfels_rejects_non_g_pfaffian(validator, spec_1245):
    with pytest.raises(ValueError):
        validator.run("sturmfels", spec_1245)


def test_unknown_check(validator):
    with pytest.raises(ValueError):
        validator.run("no-such-check")


@pytest.mark.slow
def test_full_tableau_corpus():
    validator = AtlasValidator()
    for check in ("krs-square", "width", "roundtrip"):
        assert validator.run(check, max_entry=6, max_cells=8).verified


@pytest.mark.slow
@pytest.mark.parametrize("alpha,n", [((1, 3, 4, 6), 6), ((1, 2, 3, 5), 7), ((1, 4, 5, 7), 7), ((1, 2, 3, 4, 5, 7), 7)])
def test_gbasis_positive_larger(alpha, n):
    assert AtlasValidator().validate_gbasis(CogeneratorSpec(alpha=alpha, n=n)).verified


@pytest.mark.slow
def test_sturmfels_full_corpus():
    report = AtlasValidator().run("sturmfels", max_columns=3)
    assert report.verified
    assert all(count > 0 for count in report.details["cases"].values())


def _specs(max_n, g_pfaffian):
    return [
        CogeneratorSpec(alpha=alpha, n=n)
        for n in range(4, max_n + 1)
        for alpha in all_index_tuples(n, n - n % 2)
        if is_g_pfaffian(alpha) == g_pfaffian
    ]


@pytest.mark.slow
@pytest.mark.parametrize("spec", _specs(7, True), ids=str)
def test_gbasis_every_g_pfaffian(spec):
    report = AtlasValidator().validate_gbasis(spec)
    assert report.verified
    assert report.details["adiag_span_equal"]
    if spec.is_reduced:
        assert report.details["described_full_equal"]
        assert report.details["described_minimal_equal"]


@pytest.mark.slow
@pytest.mark.parametrize("spec", _specs(7, False), ids=str)
def test_gbasis_every_non_g_pfaffian(spec):
    report = AtlasValidator().validate_gbasis(spec)
    assert not report.verified
    assert report.certificate["witness_outside_adiag_span"]
    assert report.certificate["normal_form_zero"] is True
    found = counterexample_witness(spec)
    assert not normal_form(found.element, generator_polynomials(spec)).is_zero()
