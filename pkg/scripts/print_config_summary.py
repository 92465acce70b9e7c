from __future__ import annotations

import sys
from pathlib import Path

try:
    from dotenv import load_dotenv
except Exception:  # pragma: no cover
    load_dotenv = None


def _setup_paths(repo_root: Path) -> None:
    src_path = repo_root / "src"
    if str(src_path) not in sys.path:
        sys.path.insert(0, str(src_path))


def main(argv: list[str] | None = None) -> int:
    repo_root = Path(__file__).resolve().parents[1]
    _setup_paths(repo_root)

    if load_dotenv is not None:
        load_dotenv(repo_root / ".env")

    from ecs.config.settings import load_config
    from ecs.config.sweep import EmptyGrid, load_sweep_spec
    from ecs.pipeline.tasks.pipelines import FigurePipelineTask

    args = sys.argv[1:] if argv is None else argv
    config = load_config()
    sweep_path = args[0] if args else config.sweep_config_path

    print("Config summary:")
    print(f"- log_level: {config.log_level}")
    print(f"- workers: {config.workers}")
    print(f"- figure_engine: {config.evaluation.engine_class or 'default'}")
    print(f"- output_engine: {config.output.engine_class or 'default'}")
    if not sweep_path:
        print("SWEEP_CONFIG_PATH not set and no sweep file given.")
        return 1

    spec = load_sweep_spec(sweep_path)
    print()
    print(f"Sweep: {sweep_path}")
    print(f"- figure: {spec.figure}")
    print(f"- out: {spec.output_path} ({spec.format})")
    print(f"  flow: {FigurePipelineTask.describe_flow(config, spec)}")
    try:
        print(f"- grid_points: {len(spec.grid())}")
    except EmptyGrid as exc:
        print(f"- grid_points: 0 ({exc})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
