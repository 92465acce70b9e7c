"""Command-line front end: figure sweeps and single-shot computations."""
from __future__ import annotations

import argparse
import logging
import re
import sys
from pathlib import Path
from typing import Callable, Dict, List, Sequence, TextIO

from dotenv import load_dotenv
from pydantic import ValidationError
from smart_workflow import MonitoringClient, TaskContext, TaskError

from ecs.config.settings import AppConfig, load_config, log_config_summary, setup_logging
from ecs.config.sweep import FIGURES, MISSING_RANGE, SweepSpec, load_sweep_spec
from ecs.core.coherent_algebra import Superposition, coefficient_matrix, mode_bases, overlap
from ecs.core.entanglement_measures import (
    negativity,
    pure_concurrence,
    wootters_concurrence,
)
from ecs.core.errors import DomainError, EcsError
from ecs.core.fock_oracle import fock_inner, oracle_negativity
from ecs.core.monogamy import monogamy_pipeline, qutrit_violation_example
from ecs.core.optics_channels import (
    DEFAULT_WEIGHTS,
    ECS_SIZES,
    alpha_for_overlap,
    lossy_channel,
    make_ecs,
    trace_out,
)
from ecs.core.protocol_sim import canonical_recipe, run_recipe_outcome
from ecs.pipeline.tasks.nodes.grid.task import SWEEP_SPEC_RESOURCE
from ecs.pipeline.tasks.pipelines import FigurePipelineTask
from ecs.utils.formatting import format_complex, format_float

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3

COMPUTE_KINDS = ("overlap", "generate", "concurrence", "negativity", "monogamy", "violation")
# validation error types that mean a flag was left out
USAGE_ERROR_TYPES = frozenset({"missing", MISSING_RANGE})

_NEGATIVE_VALUE = re.compile(r"^-\.?\d")

# ---------------------------------------------------------------------------
# flag parsing


def parse_complex(text: str) -> complex:
    """``re`` or ``re,im``."""
    parts = [part.strip() for part in text.split(",")]
    if not 1 <= len(parts) <= 2 or not all(parts):
        raise argparse.ArgumentTypeError(f"複數格式應為 re[,im]：{text!r}")
    try:
        values = [float(part) for part in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"複數格式應為 re[,im]：{text!r}") from exc
    return complex(values[0], values[1] if len(values) == 2 else 0.0)


def parse_complex_list(text: str) -> List[complex]:
    """``;``-separated ``re[,im]`` items, or a plain comma list of reals."""
    if ";" in text:
        return [parse_complex(item) for item in text.split(";") if item.strip()]
    return [complex(value) for value in parse_float_list(text)]


def parse_float_list(text: str) -> List[float]:
    try:
        values = [float(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"數值清單格式錯誤：{text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("數值清單不能為空")
    return values


def attach_negative_values(tokens: Sequence[str]) -> List[str]:
    """Rewrite ``--flag -1,0.5`` as ``--flag=-1,0.5`` so argparse keeps the value."""
    merged: List[str] = []
    for token in tokens:
        previous = merged[-1] if merged else ""
        if _NEGATIVE_VALUE.match(token) and previous.startswith("--") and "=" not in previous:
            merged[-1] = f"{previous}={token}"
        else:
            merged.append(token)
    return merged


class EcsArgumentParser(argparse.ArgumentParser):
    def parse_known_args(self, args=None, namespace=None):  # noqa: ANN001
        tokens = sys.argv[1:] if args is None else list(args)
        return super().parse_known_args(attach_negative_values(tokens), namespace)


def build_parser() -> argparse.ArgumentParser:
    parser = EcsArgumentParser(prog="ecs", description="Entangled coherent state toolkit")
    commands = parser.add_subparsers(dest="command", required=True)

    figure = commands.add_parser("figure", help="reproduce one figure as a CSV/JSON sweep")
    figure.add_argument("--n", dest="figure", type=int, choices=FIGURES, required=True)
    figure.add_argument("--alpha-max", dest="alpha_max", type=float)
    figure.add_argument("--step", type=float)
    figure.add_argument("--p", dest="p_values", type=parse_float_list)
    figure.add_argument("--eta-step", dest="eta_step", type=float)
    figure.add_argument("--eta", dest="eta_values", type=parse_float_list)
    figure.add_argument("--out")
    figure.add_argument("--format", choices=("csv", "json"))
    figure.add_argument("--workers", type=int)
    figure.add_argument("--config", help="YAML/JSON sweep file (預設 SWEEP_CONFIG_PATH)")

    compute = commands.add_parser("compute", help="print one quantity to stdout")
    compute.add_argument("kind", choices=COMPUTE_KINDS)
    compute.add_argument("--a", type=parse_complex)
    compute.add_argument("--b", type=parse_complex)
    compute.add_argument("--alpha", type=parse_complex)
    compute.add_argument("--beta", type=parse_complex)
    compute.add_argument("--eps", type=parse_complex_list)
    compute.add_argument("--eta", type=float)
    compute.add_argument("--p", type=float)
    compute.add_argument("--pprime", type=float)
    compute.add_argument("--ratio", type=parse_complex)
    compute.add_argument("--cutoff", type=int)
    compute.add_argument("--kind", dest="ecs_kind", choices=tuple(ECS_SIZES), default="qubit")
    return parser


# ---------------------------------------------------------------------------
# figure


def build_context(config: AppConfig) -> TaskContext:
    monitor = MonitoringClient(
        config.monitor_endpoint,
        service_name=config.monitor_service_name,
    )
    return TaskContext(logger=LOGGER, config=config, monitor=monitor)


def build_sweep_spec(args: argparse.Namespace, config: AppConfig) -> SweepSpec:
    overrides: Dict[str, object] = {
        "figure": args.figure,
        "alpha_max": args.alpha_max,
        "step": args.step,
        "p_values": args.p_values,
        "eta_step": args.eta_step,
        "eta_values": args.eta_values,
        "out": args.out,
        "format": args.format,
        "workers": args.workers,
    }
    config_path = args.config or config.sweep_config_path
    if config_path:
        return load_sweep_spec(config_path, overrides)
    values = {key: value for key, value in overrides.items() if value is not None}
    values.setdefault("workers", config.workers)
    return SweepSpec.model_validate(values)


def cmd_figure(args: argparse.Namespace, config: AppConfig) -> int:
    spec = build_sweep_spec(args, config)
    context = build_context(config)
    context.set_resource(SWEEP_SPEC_RESOURCE, spec)
    LOGGER.debug("流程：%s", FigurePipelineTask.describe_flow(config, spec))
    FigurePipelineTask(context).execute(context)
    return EXIT_OK


# ---------------------------------------------------------------------------
# compute


def _require(value, flag: str):
    if value is None:
        raise argparse.ArgumentError(None, f"缺少參數 {flag}")
    return value


def _ecs_weights(args: argparse.Namespace) -> List[complex]:
    if args.eps is not None:
        return list(args.eps)
    if args.ecs_kind == "qubit" and args.ratio is not None:
        # generated qubit state carries (-eps0 conj(eps1), 1)
        return [-args.ratio, 1.0]
    return [complex(w) for w in DEFAULT_WEIGHTS[args.ecs_kind]]


def _ecs_state(args: argparse.Namespace) -> Superposition:
    p = _require(args.p, "--p")
    beta = args.beta if args.beta is not None else 0.0
    return make_ecs(args.ecs_kind, alpha_for_overlap(p), beta, _ecs_weights(args))


def _compute_overlap(args: argparse.Namespace) -> List[str]:
    a, b = _require(args.a, "--a"), _require(args.b, "--b")
    values = [format_complex(overlap(a, b))]
    if args.cutoff is not None:
        values.append(format_complex(fock_inner(Superposition.product(a), Superposition.product(b), args.cutoff)))
    return [" ".join(values)]


def _compute_generate(args: argparse.Namespace) -> List[str]:
    eps = _require(args.eps, "--eps")
    alpha = args.alpha if args.alpha is not None else 1.0
    outcome = run_recipe_outcome(canonical_recipe(eps, alpha, final_displacement=args.beta), alpha)
    lines = [
        f"{format_complex(labels[0])} {format_complex(coeff)}"
        for coeff, labels in outcome.state.terms
    ]
    lines.append(f"success_probability {format_float(outcome.success_probability)}")
    return lines


def _compute_concurrence(args: argparse.Namespace) -> List[str]:
    state = _ecs_state(args)
    if args.eta is not None and args.eta < 1.0:
        if args.ecs_kind != "qubit":
            raise DomainError("混態 concurrence 僅支援 qubit ECS，請改用 negativity")
        rho = trace_out(lossy_channel(state, [0, 1], args.eta), [0, 1])
        return [format_float(wootters_concurrence(rho))]
    basis1, basis2 = mode_bases(state)
    return [format_float(pure_concurrence(coefficient_matrix(state, basis1, basis2)))]


def _compute_negativity(args: argparse.Namespace) -> List[str]:
    eta = args.eta if args.eta is not None else 1.0
    noisy = lossy_channel(_ecs_state(args), [0, 1], eta)
    values = [format_float(negativity(trace_out(noisy, [0, 1]), [1]))]
    if args.cutoff is not None:
        values.append(format_float(oracle_negativity(noisy, [0, 1], [1], args.cutoff)))
    return [" ".join(values)]


def _compute_monogamy(args: argparse.Namespace) -> List[str]:
    pprime = _require(args.pprime, "--pprime")
    eta = args.eta if args.eta is not None else 1.0
    report = monogamy_pipeline(pprime, eta)
    return [" ".join(format_float(v) for v in (report.c_ab, report.c_ad, report.c_abd, report.tau))]


def _compute_violation(_args: argparse.Namespace) -> List[str]:
    lhs, rhs = qutrit_violation_example()
    return [f"{format_float(lhs)} {format_float(rhs)}"]


_COMPUTE_HANDLERS: Dict[str, Callable[[argparse.Namespace], List[str]]] = {
    "overlap": _compute_overlap,
    "generate": _compute_generate,
    "concurrence": _compute_concurrence,
    "negativity": _compute_negativity,
    "monogamy": _compute_monogamy,
    "violation": _compute_violation,
}


def cmd_compute(args: argparse.Namespace, stdout: TextIO) -> int:
    for line in _COMPUTE_HANDLERS[args.kind](args):
        stdout.write(line + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry


def _load_env() -> None:
    repo_root = Path(__file__).resolve().parents[2]
    load_dotenv(repo_root.parent / ".env")
    load_dotenv(repo_root / ".env", override=True)


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    _load_env()
    try:
        config = load_config()
    except RuntimeError as exc:
        stderr.write(f"ecs: {exc}\n")
        return EXIT_USAGE
    setup_logging(config.log_level)
    if config.config_summary:
        log_config_summary(config, LOGGER)

    try:
        if args.command == "figure":
            return cmd_figure(args, config)
        return cmd_compute(args, stdout)
    except argparse.ArgumentError as exc:
        stderr.write(f"ecs: {exc}\n")
        return EXIT_USAGE
    except ValidationError as exc:
        errors = exc.errors()
        message = "; ".join(error["msg"] for error in errors)
        if any(error["type"] in USAGE_ERROR_TYPES for error in errors):
            stderr.write(f"ecs: 缺少參數：{message}\n")
            return EXIT_USAGE
        stderr.write(f"ecs: 參數驗證失敗：{message}\n")
    except (EcsError, TaskError, ValueError, FileNotFoundError) as exc:
        stderr.write(f"ecs: {exc}\n")
    return EXIT_DOMAIN


__all__ = [
    "EXIT_DOMAIN",
    "EXIT_OK",
    "EXIT_USAGE",
    "EcsArgumentParser",
    "attach_negative_values",
    "build_parser",
    "build_sweep_spec",
    "cmd_compute",
    "cmd_figure",
    "main",
    "parse_complex",
    "parse_complex_list",
]
