# ABOUTME: The algvol command line with field, volume, search, verify, pi-demo and kunneth subcommands
# ABOUTME: Emits one JSON document on stdout; logs and a timing summary go to stderr

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from pydantic import BaseModel

from app.config import Settings, get_settings
from app.models.errors import ComputationError, ConvergenceError, InvalidInputError, VolumeEngineError
from app.models.reports import (
    OutputDocument,
    VerifyReport,
    field_out,
    operand_in,
    oracle_out,
    pi_demo_out,
    product_report,
    scaling_out,
    search_report,
    volume_report,
)
from app.services.catalog import catalog_field
from app.services.number_field import FieldElement, NumberField, make_field
from app.services.oracle import PiDemoInput, QuadratureConfig, convergence_report, numeric_value, pi_demo, riemann_volume_r1
from app.services.volume import (
    ConstructionInput,
    Normalization,
    VolumeConstruction,
    check_scaling,
    cutkosky_volume,
    kunneth_product,
    pq_demo,
    run_primitive_search,
)
from app.utils.parsing import parse_coordinates, parse_polynomial, parse_rational

logger = logging.getLogger(__name__)


class JsonArgumentParser(argparse.ArgumentParser):
    """Argument errors become InvalidInputError so they are reported as JSON."""

    def error(self, message):
        raise InvalidInputError(f"{self.prog}: {message}")


@dataclass
class CommandOutcome:
    result: BaseModel
    summary: str
    warnings: list[str] = field(default_factory=list)
    failure: VolumeEngineError | None = None


# --- argument parsing ----------------------------------------------------------

def _add_field_selector(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--quadratic", type=int, metavar="D", help="Q(sqrt D) for squarefree D >= 2")
    group.add_argument("--cyclotomic", type=int, metavar="N", help="Q(zeta_N + zeta_N^-1)")
    group.add_argument("--period", type=int, nargs=2, metavar=("L", "K"), help="degree-K period field of conductor L")
    group.add_argument("--minpoly", metavar="POLY", help='defining polynomial, e.g. "x^2-2" or --minpoly=-2,0,1')


def _add_construction_flags(parser: argparse.ArgumentParser, allow_alpha: bool = True) -> None:
    if allow_alpha:
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument("--alpha", metavar="COORDS", help='coordinates in the power basis, e.g. "0,1"')
        group.add_argument("--auto-search", type=int, metavar="BOUND", help="search for alpha up to this max-norm")
    parser.add_argument("--t0", type=int, help="integration bound (default: smallest valid integer)")
    parser.add_argument("--d0", type=int, default=1, help="polarization degree (default: 1)")
    parser.add_argument(
        "--normalization",
        choices=[n.value for n in Normalization],
        default=Normalization.RAW_INTEGRAL.value,
        help="volume normalization (default: raw_integral)",
    )


def build_parser() -> argparse.ArgumentParser:
    common = JsonArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, help="decimal digits of numeric values")
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    common.add_argument("--quiet", action="store_true", help="warnings only on stderr")

    parser = JsonArgumentParser(prog="algvol", description="Exact algebraic volumes of divisors")
    sub = parser.add_subparsers(dest="command", required=True)

    p_field = sub.add_parser("field", parents=[common], help="describe a number field")
    _add_field_selector(p_field)
    p_field.add_argument("--require-totally-real", action="store_true", help="reject fields with complex embeddings")

    p_volume = sub.add_parser("volume", parents=[common], help="exact volume for one field element")
    _add_field_selector(p_volume)
    _add_construction_flags(p_volume)

    p_search = sub.add_parser("search", parents=[common], help="primitive element search, then its volume")
    _add_field_selector(p_search)
    p_search.add_argument("--bound", type=int, help="max-norm bound (default: 3)")
    _add_construction_flags(p_search, allow_alpha=False)

    p_verify = sub.add_parser("verify", parents=[common], help="exact volume plus the Riemann-sum oracle")
    _add_field_selector(p_verify)
    _add_construction_flags(p_verify)
    p_verify.add_argument("--kmin", type=int, help="first number of Riemann steps (default: 16)")
    p_verify.add_argument("--kmax", type=int, help="last number of Riemann steps (default: 4096)")
    p_verify.add_argument("--threshold", help="largest acceptable final residual (default: 1e-4)")
    p_verify.add_argument("--scale-check", type=int, metavar="K", help="also check the scaling identity for k*alpha")

    p_pi = sub.add_parser("pi-demo", parents=[common], help="the disk quadrature giving 3*pi*N")
    p_pi.add_argument("--N", type=int, required=True, help="intersection number N >= 1")
    p_pi.add_argument("--tol", help="level-to-level tolerance (default: 1e-8)")
    p_pi.add_argument("--max-level", type=int, help="subdivision depth cap (default: 22)")

    p_kunneth = sub.add_parser("kunneth", parents=[common], help="product of two volumes")
    p_kunneth.add_argument("reports", nargs="*", help="two stored volume or product documents")
    p_kunneth.add_argument("--pq", type=int, nargs=2, metavar=("P", "Q"), help="degree p*q demonstration")
    return parser


def _float_flag(flag: str, text: str) -> float:
    """A rational flag value that must survive conversion to a float."""
    value = parse_rational(text)
    try:
        converted = float(value)
    except OverflowError as exc:
        raise InvalidInputError(f"{flag} is out of range", details={"value": text}) from exc
    if value and not converted:
        raise InvalidInputError(f"{flag} is out of range", details={"value": text})
    return converted


def settings_from_args(args: argparse.Namespace) -> Settings:
    """Settings from the flags that were given; everything else keeps its default."""
    overrides = {}
    if args.digits is not None:
        if args.digits < 0:
            raise InvalidInputError("--digits must be non-negative")
        overrides["default_digits"] = args.digits
    if getattr(args, "bound", None) is not None:
        overrides["search_bound"] = args.bound
    if getattr(args, "kmin", None) is not None:
        overrides["riemann_k_min"] = args.kmin
    if getattr(args, "kmax", None) is not None:
        overrides["riemann_k_max"] = args.kmax
    if getattr(args, "threshold", None) is not None:
        overrides["convergence_threshold"] = _float_flag("--threshold", args.threshold)
    if getattr(args, "tol", None) is not None:
        overrides["pi_tolerance"] = _float_flag("--tol", args.tol)
    if getattr(args, "max_level", None) is not None:
        overrides["pi_max_level"] = args.max_level
    return Settings(**overrides) if overrides else get_settings()


def configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


# --- shared resolution -----------------------------------------------------------

def resolve_field(args: argparse.Namespace, settings: Settings) -> NumberField:
    require = getattr(args, "require_totally_real", False)
    if args.minpoly is not None:
        return make_field(parse_polynomial(args.minpoly), require_totally_real=require, settings=settings)
    if args.quadratic is not None:
        nf = catalog_field("quadratic", args.quadratic, settings=settings)
    elif args.cyclotomic is not None:
        nf = catalog_field("cyclotomic", args.cyclotomic, settings=settings)
    else:
        nf = catalog_field("period", *args.period, settings=settings)
    if require and not nf.totally_real:
        raise InvalidInputError("field is not totally real")
    return nf


def field_warnings(nf: NumberField) -> list[str]:
    warnings = []
    if not nf.irreducibility_proved:
        warnings.append("irreducibility of the defining polynomial is unproved")
    if not nf.galois_attested:
        warnings.append("field is not attested Galois; the volume degree may fall below the field degree")
    return warnings


def resolve_alpha(args: argparse.Namespace, nf: NumberField) -> FieldElement:
    if args.alpha is not None:
        return nf.element(parse_coordinates(args.alpha))
    return run_primitive_search(nf, args.auto_search).element


def _construct(args: argparse.Namespace, nf: NumberField, alpha: FieldElement, settings: Settings) -> VolumeConstruction:
    inp = ConstructionInput(
        field=nf,
        alpha=alpha,
        t0=args.t0,
        d0=args.d0,
        normalization=Normalization(args.normalization),
    )
    return cutkosky_volume(inp, settings)


def _volume_warnings(res: VolumeConstruction) -> list[str]:
    warnings = field_warnings(res.field)
    if res.volume.minimality != "proved":
        warnings.append("minimality of the volume polynomial is unproved")
    return warnings


# --- subcommands -------------------------------------------------------------------

def cmd_field(args: argparse.Namespace, settings: Settings) -> CommandOutcome:
    nf = resolve_field(args, settings)
    return CommandOutcome(
        result=field_out(nf),
        summary=f"field of degree {nf.degree}, totally real: {nf.totally_real}",
        warnings=field_warnings(nf),
    )


def cmd_volume(args: argparse.Namespace, settings: Settings) -> CommandOutcome:
    nf = resolve_field(args, settings)
    res = _construct(args, nf, resolve_alpha(args, nf), settings)
    return CommandOutcome(
        result=volume_report(res),
        summary=f"volume {res.numeric_value} of degree {res.volume_degree} (field degree {nf.degree})",
        warnings=_volume_warnings(res),
    )


def cmd_search(args: argparse.Namespace, settings: Settings) -> CommandOutcome:
    nf = resolve_field(args, settings)
    outcome = run_primitive_search(nf, settings.search_bound)
    res = _construct(args, nf, outcome.element, settings)
    return CommandOutcome(
        result=search_report(nf, outcome, res),
        summary=f"accepted candidate {outcome.examined} of the search; volume {res.numeric_value}",
        warnings=_volume_warnings(res),
    )


def cmd_verify(args: argparse.Namespace, settings: Settings) -> CommandOutcome:
    nf = resolve_field(args, settings)
    alpha = resolve_alpha(args, nf)
    res = _construct(args, nf, alpha, settings)
    raw = res.volume.scale(1 / res.normalization_constant)
    cfg = QuadratureConfig(k_min=settings.riemann_k_min, k_max=settings.riemann_k_max)
    report = riemann_volume_r1(res.m_alpha, res.beta, res.t0, cfg, exact=raw, settings=settings)
    summary = convergence_report(report, settings.convergence_threshold)
    scaling = check_scaling(alpha, args.scale_check, settings) if args.scale_check is not None else None
    failure = None
    if not summary.passed:
        failure = ConvergenceError(summary.reason, details={"final_residual": summary.final_residual})
    elif scaling is not None and not scaling.identical:
        failure = ComputationError("scaled volume is not identical after rescaling", details={"k": scaling.k})
    result = VerifyReport(
        volume=volume_report(res),
        oracle=oracle_out(report, summary),
        scaling=scaling_out(scaling) if scaling is not None else None,
    )
    return CommandOutcome(
        result=result,
        summary=f"volume {res.numeric_value}; oracle {'passed' if summary.passed else 'failed'}",
        warnings=_volume_warnings(res),
        failure=failure,
    )


def cmd_pi_demo(args: argparse.Namespace, settings: Settings) -> CommandOutcome:
    cfg = QuadratureConfig.from_settings(settings)
    report = pi_demo(PiDemoInput(N=args.N, config=cfg), settings)
    return CommandOutcome(
        result=pi_demo_out(report),
        summary=f"value {report.value:.10f}, value/(3N) = {report.ratio:.10f}, residual {report.pi_residual:.2e}",
    )


def _load_report(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}", details={"reason": str(exc)}) from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON", details={"reason": str(exc)}) from exc


def cmd_kunneth(args: argparse.Namespace, settings: Settings) -> CommandOutcome:
    if args.pq is not None:
        if args.reports:
            raise InvalidInputError("give either two report files or --pq, not both")
        prod = pq_demo(*args.pq, settings=settings)
    elif len(args.reports) == 2:
        (a, dim_a), (b, dim_b) = (operand_in(_load_report(path)) for path in args.reports)
        prod = kunneth_product(a, dim_a, b, dim_b, settings)
    else:
        raise InvalidInputError("kunneth needs exactly two report files or --pq P Q")
    warnings = []
    if prod.volume.minimality != "proved":
        warnings.append("minimality of the product polynomial is unproved")
    numeric = numeric_value(prod.volume, settings.default_digits)
    return CommandOutcome(
        result=product_report(prod, numeric),
        summary=f"product volume of degree {prod.volume_degree} in dimension {prod.ambient_dimension}",
        warnings=warnings,
    )


HANDLERS = {
    "field": cmd_field,
    "volume": cmd_volume,
    "search": cmd_search,
    "verify": cmd_verify,
    "pi-demo": cmd_pi_demo,
    "kunneth": cmd_kunneth,
}


def run(argv: list[str] | None = None) -> tuple[OutputDocument, int, str]:
    """
    Parse and execute one command.

    Returns:
        The output document, the exit code (0, 2 or 3) and a one-line summary
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    schema_version = get_settings().schema_version
    echo: dict = {"argv": argv}
    try:
        args = build_parser().parse_args(argv)
        echo = {key: value for key, value in sorted(vars(args).items())}
        configure_logging(args)
        settings = settings_from_args(args)
        outcome = HANDLERS[args.command](args, settings)
    except VolumeEngineError as exc:
        document = OutputDocument(schema_version=schema_version, command=echo, error=exc.to_response())
        return document, exc.exit_code, f"error {exc.code}: {exc.message}"
    except ArithmeticError as exc:
        logger.exception("computation failed")
        failure = ComputationError(str(exc))
        document = OutputDocument(schema_version=schema_version, command=echo, error=failure.to_response())
        return document, failure.exit_code, f"error {failure.code}: {failure.message}"
    document = OutputDocument(
        schema_version=settings.schema_version,
        command=echo,
        result=outcome.result,
        warnings=outcome.warnings,
        error=outcome.failure.to_response() if outcome.failure else None,
    )
    code = outcome.failure.exit_code if outcome.failure else 0
    return document, code, outcome.summary


def main(argv: list[str] | None = None) -> None:
    """CLI entry point."""
    start = time.perf_counter()
    document, code, summary = run(argv)
    sys.stdout.write(document.model_dump_json(indent=2) + "\n")
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    print(f"{summary} ({elapsed_ms} ms)", file=sys.stderr)
    sys.exit(code)


if __name__ == "__main__":
    main()
