"""
Command-line interface for Pfaffian Atlas.
Every subcommand prints one JSON document (or a plain-text rendering) on stdout;
diagnostics go to stderr. Exit status: 0 success, 1 invalid input, 2 violation.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, Optional, Sequence, Tuple

from pydantic import BaseModel, ValidationError, field_validator, model_validator

from pfaffian_atlas import __version__
from pfaffian_atlas.codec import dumps, monomial_to_json, polynomial_to_json, rational_to_json, to_jsonable
from pfaffian_atlas.complex import enumerate_facets, facet_size
from pfaffian_atlas.config import Settings, get_settings
from pfaffian_atlas.errors import AtlasError
from pfaffian_atlas.ideals import (
    CogeneratorSpec,
    counterexample_witness,
    initial_ideal_generators,
    natural_generators,
    reduce_cogenerator,
)
from pfaffian_atlas.multiplicity import multiplicity_terms
from pfaffian_atlas.pfaffian_core import adiag, initial_term, pfaffian_polynomial
from pfaffian_atlas.tableaux import Tableau, TwoLinedArray, bkrs, bkrs_inverse, krs, width
from pfaffian_atlas.validation import AtlasValidator
from pfaffian_atlas.validation.suites import CHECKS

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VIOLATION = 2

NEEDS_SPEC = {"pfaffian", "generators", "initial-ideal", "facets", "multiplicity", "counterexample"}
SPEC_CHECKS = {"gbasis", "purity", "ball", "shelling", "face-oracle", "sum-gbasis"}
OPTIONAL_SPEC_CHECKS = {"sturmfels"}


class CommandConfig(BaseModel):
    """Validated arguments of one invocation."""

    subcommand: str
    alpha: Optional[Tuple[int, ...]] = None
    n: Optional[int] = None
    beta: Optional[Tuple[int, ...]] = None
    row: Optional[int] = None
    max_size: Optional[int] = None
    minimal: bool = False
    count_only: bool = False
    tableau: Optional[Tableau] = None
    other: Optional[Tableau] = None
    array: Optional[TwoLinedArray] = None
    check: Optional[str] = None
    seed: Optional[int] = None
    samples: Optional[int] = None
    max_entry: Optional[int] = None
    max_cells: Optional[int] = None
    max_columns: Optional[int] = None
    adiag_n: Optional[int] = None
    output: str = "json"
    settings: Settings

    @field_validator("alpha", "beta", mode="before")
    @classmethod
    def split_tuple(cls, value):
        if isinstance(value, str):
            return [int(v) for v in value.replace(" ", "").split(",") if v]
        return value

    @field_validator("tableau", "other", "array", mode="before")
    @classmethod
    def parse_json(cls, value):
        if isinstance(value, str):
            return json.loads(value)
        return value

    @model_validator(mode="after")
    def check_spec(self):
        if self.subcommand in NEEDS_SPEC or self.check in SPEC_CHECKS or self.alpha is not None:
            self.spec()
        if self.check == "sum-gbasis" and self.beta is None:
            raise ValueError("sum-gbasis needs --beta")
        return self

    def spec(self) -> CogeneratorSpec:
        if self.alpha is None or self.n is None:
            raise ValueError(f"{self.subcommand} needs --alpha and --n")
        return CogeneratorSpec(alpha=self.alpha, n=self.n)

    def other_spec(self) -> Optional[CogeneratorSpec]:
        if self.beta is None:
            return None
        return CogeneratorSpec(alpha=self.beta, n=self.n)


class AtlasArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = AtlasArgumentParser(
        prog="pfaffian-atlas",
        description="Exact computations on one-cogenerated Pfaffian ideals.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, help_text: str, spec: bool = False) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text)
        if spec:
            sub.add_argument("--alpha", required=True, help="Index tuple, e.g. 1,3,4,6")
            sub.add_argument("--n", type=int, required=True, help="Size of the skew-symmetric matrix")
        sub.add_argument("--output", choices=("json", "text"), default="json")
        sub.add_argument("--verbose", action="store_true", help="Log progress at INFO on stderr")
        sub.add_argument("--generator-cap", type=int)
        sub.add_argument("--max-generators", type=int)
        sub.add_argument("--max-pairs", type=int)
        sub.add_argument("--max-n", type=int, help="Largest matrix size accepted by Buchberger")
        sub.add_argument("--facet-cap", type=int)
        sub.add_argument("--shelling-cap", type=int)
        return sub

    sub = add("pfaffian", "Pfaffian polynomial of an index tuple", spec=True)
    sub.add_argument("--row", type=int, help="1-based position to expand along")

    sub = add("generators", "Natural generators of I_alpha", spec=True)
    sub.add_argument("--max-size", type=int)
    sub.add_argument("--count-only", action="store_true")

    sub = add("initial-ideal", "Monomial generators of the initial ideal", spec=True)
    sub.add_argument("--minimal", action="store_true")

    sub = add("krs", "KRS of a pair of standard tableaux of equal shape")
    sub.add_argument("--tableau", required=True, help='JSON, e.g. {"columns":[[1,3],[2]]}')
    sub.add_argument("--other", help="Second tableau (default: the first)")

    sub = add("bkrs", "Burge correspondence of a standard d-tableau")
    sub.add_argument("--tableau", required=True)

    sub = add("bkrs-inverse", "Standard d-tableau of a BKRS-format two-lined array")
    sub.add_argument("--array", required=True, help='JSON, e.g. {"pairs":[[5,2],[4,3]]}')

    sub = add("facets", "Facets of the complex of in(I_alpha)", spec=True)
    sub.add_argument("--count-only", action="store_true")

    add("multiplicity", "Multiplicity of R/I_alpha", spec=True)
    add("counterexample", "Element of I_alpha whose initial term escapes the generators", spec=True)

    sub = add("verify", "Run a verification suite")
    sub.add_argument("--check", required=True, choices=CHECKS)
    sub.add_argument("--alpha")
    sub.add_argument("--n", type=int)
    sub.add_argument("--beta", help="Second cogenerator for sum-gbasis")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--samples", type=int)
    sub.add_argument("--max-entry", type=int, help="Tableau corpus: largest entry")
    sub.add_argument("--max-cells", type=int, help="Tableau corpus: largest number of cells")
    sub.add_argument("--max-columns", type=int, help="Sturmfels corpus: largest number of columns")
    sub.add_argument("--adiag-n", type=int, help="adiag corpus: largest entry")
    return parser


def _settings_from_args(args: argparse.Namespace) -> Settings:
    overrides = {
        key: getattr(args, key)
        for key in ("generator_cap", "max_generators", "max_pairs", "max_n", "facet_cap", "shelling_cap")
        if getattr(args, key, None) is not None
    }
    for key in ("seed", "samples"):
        if getattr(args, key, None) is not None:
            overrides[key] = getattr(args, key)
    base = get_settings()
    return Settings(**{**base.model_dump(), **overrides})


def _spec_payload(spec: CogeneratorSpec) -> Dict[str, Any]:
    return {"alpha": list(spec.alpha), "n": spec.n}


def _reduced_payload(spec: CogeneratorSpec) -> Tuple[CogeneratorSpec, Dict[str, Any]]:
    reduced = reduce_cogenerator(spec)
    return reduced, {**_spec_payload(spec), "reduced_alpha": list(reduced.alpha), "reduced_n": reduced.n}


def _array_payload(array: TwoLinedArray) -> Dict[str, Any]:
    try:
        monomial = monomial_to_json(array.monomial)
    except AtlasError:
        monomial = None
    return {"pairs": [list(p) for p in array.pairs], "monomial": monomial, "width": width(array)}


def cmd_pfaffian(config: CommandConfig) -> Tuple[int, Dict[str, Any]]:
    spec = config.spec()
    row = None if config.row is None else config.row - 1
    poly = pfaffian_polynomial(spec.alpha, spec.n, row=row)
    lead = initial_term(poly)
    return EXIT_OK, {
        **_spec_payload(spec),
        "polynomial": polynomial_to_json(poly),
        "terms": len(poly),
        "initial_term": {"coeff": rational_to_json(lead.coefficient), "monomial": monomial_to_json(lead.monomial)},
        "adiag": monomial_to_json(adiag(spec.alpha)),
    }


def cmd_generators(config: CommandConfig) -> Tuple[int, Dict[str, Any]]:
    spec = config.spec()
    generators = natural_generators(spec, config.max_size, cap=config.settings.generator_cap)
    payload = {**_spec_payload(spec), "count": len(generators)}
    if not config.count_only:
        payload["generators"] = [list(beta) for beta in generators]
    return EXIT_OK, payload


def cmd_initial_ideal(config: CommandConfig) -> Tuple[int, Dict[str, Any]]:
    reduced, payload = _reduced_payload(config.spec())
    generators = initial_ideal_generators(reduced, minimal=config.minimal)
    payload.update({
        "minimal": config.minimal,
        "count": len(generators),
        "generators": [monomial_to_json(m) for m in generators],
    })
    return EXIT_OK, payload


def cmd_krs(config: CommandConfig) -> Tuple[int, Dict[str, Any]]:
    other = config.other if config.other is not None else config.tableau
    return EXIT_OK, _array_payload(krs(config.tableau, other))


def cmd_bkrs(config: CommandConfig) -> Tuple[int, Dict[str, Any]]:
    return EXIT_OK, _array_payload(bkrs(config.tableau))


def cmd_bkrs_inverse(config: CommandConfig) -> Tuple[int, Dict[str, Any]]:
    t = bkrs_inverse(config.array)
    return EXIT_OK, {"columns": [list(c) for c in t.columns], "length": t.length}


def cmd_facets(config: CommandConfig) -> Tuple[int, Dict[str, Any]]:
    reduced, payload = _reduced_payload(config.spec())
    facets = enumerate_facets(reduced, cap=config.settings.facet_cap)
    payload.update({"count": len(facets), "facet_size": facet_size(reduced)})
    if not config.count_only:
        payload["facets"] = [f.to_json() for f in facets]
    return EXIT_OK, payload


def cmd_multiplicity(config: CommandConfig) -> Tuple[int, Dict[str, Any]]:
    reduced, payload = _reduced_payload(config.spec())
    terms = multiplicity_terms(reduced)
    payload.update({
        "multiplicity": str(sum(term.value for term in terms)),
        "terms": [{**term.model_dump(), "value": term.value} for term in terms],
    })
    return EXIT_OK, payload


def cmd_counterexample(config: CommandConfig) -> Tuple[int, Dict[str, Any]]:
    spec = config.spec()
    found = counterexample_witness(spec)
    return EXIT_OK, {
        **_spec_payload(spec),
        "gap_index": found.gap_index,
        "beta1": list(found.beta1),
        "gamma1": list(found.gamma1),
        "beta2": list(found.beta2),
        "gamma2": list(found.gamma2),
        "element": polynomial_to_json(found.element),
        "witness": monomial_to_json(found.witness),
    }


def cmd_verify(config: CommandConfig) -> Tuple[int, Dict[str, Any]]:
    wants_spec = config.check in SPEC_CHECKS or (config.check in OPTIONAL_SPEC_CHECKS and config.alpha is not None)
    spec = config.spec() if wants_spec else None
    validator = AtlasValidator(config.settings)
    report = validator.run(
        config.check,
        spec,
        other=config.other_spec() if spec is not None else None,
        seed=config.seed,
        samples=config.samples,
        max_entry=config.max_entry,
        max_cells=config.max_cells,
        max_columns=config.max_columns,
        max_n=config.adiag_n,
    )
    return (EXIT_OK if report.verified else EXIT_VIOLATION), report.model_dump(mode="json")


HANDLERS = {
    "pfaffian": cmd_pfaffian,
    "generators": cmd_generators,
    "initial-ideal": cmd_initial_ideal,
    "krs": cmd_krs,
    "bkrs": cmd_bkrs,
    "bkrs-inverse": cmd_bkrs_inverse,
    "facets": cmd_facets,
    "multiplicity": cmd_multiplicity,
    "counterexample": cmd_counterexample,
    "verify": cmd_verify,
}


def render_text(payload: Dict[str, Any]) -> str:
    """One `key: value` line per top-level field; nested values as compact JSON."""
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(to_jsonable(value), sort_keys=True, separators=(",", ":"))
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def run(config: CommandConfig) -> Tuple[int, Dict[str, Any]]:
    """
    Dispatch a validated command.

    Returns:
        (exit status, JSON-ready payload)
    """
    handler = HANDLERS.get(config.subcommand)
    if handler is None:
        raise ValueError(f"unknown subcommand {config.subcommand!r}")
    logger.info(f"Running {config.subcommand}")
    return handler(config)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run the command and print its report."""
    args = build_parser().parse_args(argv)
    base = get_settings()
    level = logging.INFO if args.verbose else getattr(logging, base.log_level.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )

    try:
        fields = {k: v for k, v in vars(args).items() if k in CommandConfig.model_fields}
        config = CommandConfig(settings=_settings_from_args(args), **fields)
        status, payload = run(config)
    except (ValidationError, AtlasError, ValueError) as e:
        logger.error(f"{args.subcommand} failed: {e}", exc_info=args.verbose)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID

    print(render_text(payload) if config.output == "text" else dumps(payload))
    return status


if __name__ == "__main__":
    sys.exit(main())
