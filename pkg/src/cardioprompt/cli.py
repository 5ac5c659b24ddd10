"""Command-line entry point.

Verbs mirror the pipeline stages: prepare-data, train-models, gen-dk,
run-grid, report. Configuration comes from an optional JSON file plus flag
overrides; every verb defaults to offline-safe behavior, and touching the
real API requires the explicit --live flag. Exit codes: 0 success,
1 validation or configuration error, 2 transport failure, 3 partial run
(resumable from cache).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .data import stats, write_imputed_csv
from .dk import DkVariant, DomainKnowledge
from .errors import CardiopromptError, TransportError, ValidationError
from .experiment import (
    ExperimentConfig,
    ReportTable,
    dk_grid_from_models,
    prepare_data,
    run_ml_baselines,
    run_prompt_grid,
    write_report,
)
from .gateway import JsonlCache, OracleMock, RuleMock
from .models import load_model, save_model
from .schema import DEFAULT_SCHEMA


def _build_config(args: argparse.Namespace) -> ExperimentConfig:
    cfg = ExperimentConfig.from_json(args.config) if args.config else ExperimentConfig()
    overrides = {}
    for key in ("data_path", "seed", "test_fraction", "impute_k", "cache_path", "output_dir"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    if getattr(args, "paper_faithful", False):
        overrides["paper_faithful"] = True
    if getattr(args, "live", False):
        overrides["live"] = True
    if overrides:
        cfg = ExperimentConfig.from_dict({**_config_dict(cfg), **overrides})
    return cfg


def _config_dict(cfg: ExperimentConfig) -> dict:
    return {
        "data_path": cfg.data_path,
        "seed": cfg.seed,
        "test_fraction": cfg.test_fraction,
        "impute_k": cfg.impute_k,
        "weights": {"w_fp": cfg.weights.w_fp, "w_fn": cfg.weights.w_fn},
        "n_ex_grid": list(cfg.n_ex_grid),
        "dk_families": list(cfg.dk_families),
        "search_iters": cfg.search_iters,
        "search_folds": cfg.search_folds,
        "cache_path": cfg.cache_path,
        "output_dir": cfg.output_dir,
        "paper_faithful": cfg.paper_faithful,
        "live": cfg.live,
        "llm": {
            "base_url": cfg.llm.base_url,
            "model_name": cfg.llm.model_name,
            "temperature": cfg.llm.temperature,
            "max_retries": cfg.llm.max_retries,
            "backoff_base": cfg.llm.backoff_base,
            "timeout": cfg.llm.timeout,
            "max_in_flight": cfg.llm.max_in_flight,
        },
    }


def _models_dir(cfg: ExperimentConfig) -> Path:
    return Path(cfg.output_dir) / "models"


def cmd_prepare_data(cfg: ExperimentConfig) -> int:
    prepared = prepare_data(cfg)
    st = stats(prepared.raw)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_imputed_csv(prepared.full, out / "imputed.csv")
    print(f"rows: {st.n_total}")
    print(f"rows with missing cells: {st.n_with_missing}")
    print(f"male fraction: {st.male_fraction:.4f}")
    print(f"train/test: {prepared.train.n_rows}/{prepared.test.n_rows}")
    print(f"imputed data written to {out / 'imputed.csv'}")
    return 0


def cmd_train_models(cfg: ExperimentConfig) -> int:
    prepared = prepare_data(cfg)
    rows, models = run_ml_baselines(cfg, prepared)
    mdir = _models_dir(cfg)
    mdir.mkdir(parents=True, exist_ok=True)
    for family, model in models.items():
        save_model(model, mdir / f"{family}.json")
    table = ReportTable(rows=tuple(rows))
    path = write_report(table, cfg.output_dir, fmt="csv")
    print(f"models saved to {mdir}")
    print(f"classifier table written to {path}")
    return 0


def cmd_gen_dk(cfg: ExperimentConfig) -> int:
    mdir = _models_dir(cfg)
    models = {}
    for family in cfg.dk_families:
        path = mdir / f"{family}.json"
        if not path.exists():
            raise ValidationError(f"missing model artifact {path}; run train-models first")
        models[family] = load_model(path)
    dks = dk_grid_from_models(models, families=cfg.dk_families)
    out = Path(cfg.output_dir) / "dk.json"
    out.write_text(
        json.dumps(
            [{"variant": dk.variant.value, "source": dk.source_name, "text": dk.text} for dk in dks],
            indent=2,
        )
    )
    for i, dk in enumerate(dks):
        print(f"dk{i}: {dk.text if dk.text else 'None'}")
    print(f"domain knowledge written to {out}")
    return 0


def _load_dks(cfg: ExperimentConfig):
    path = Path(cfg.output_dir) / "dk.json"
    if not path.exists():
        raise ValidationError(f"missing {path}; run gen-dk first")
    docs = json.loads(path.read_text())
    out = []
    for doc in docs:
        variant = DkVariant(doc["variant"]) if doc["variant"] != "NO" else DkVariant.NONE
        out.append(DomainKnowledge(variant=variant, source_name=doc["source"], text=doc["text"]))
    return out


def cmd_run_grid(cfg: ExperimentConfig, mock_kind: str, rule_feature: str, rule_threshold: float) -> int:
    prepared = prepare_data(cfg)
    dks = _load_dks(cfg)
    cache = JsonlCache(cfg.cache_path)
    if cfg.live:
        backend = cfg.llm
    elif mock_kind == "oracle":
        backend = OracleMock.for_dataset(prepared.test, DEFAULT_SCHEMA, float_style=cfg.paper_faithful)
    elif mock_kind == "rule":
        backend = RuleMock(rule_feature, rule_threshold)
    else:
        raise ValidationError(f"unknown mock kind {mock_kind!r}")
    rows, unparseable = run_prompt_grid(cfg, prepared, dks, backend=backend, cache=cache if cfg.live else None)
    grid_path = Path(cfg.output_dir) / "grid_rows.json"
    grid_path.parent.mkdir(parents=True, exist_ok=True)
    grid_path.write_text(
        json.dumps(
            [
                {
                    "label": r.label,
                    "dk_type": r.dk_type,
                    "dk_source": r.dk_source,
                    "n_ex": r.n_ex,
                    "metrics": list(r.metrics.as_tuple()),
                }
                for r in rows
            ]
        )
    )
    if unparseable:
        total = sum(unparseable.values())
        print(f"warning: {total} unparseable responses counted as positive ({unparseable})")
    print(f"grid rows written to {grid_path}")
    return 0


def cmd_report(cfg: ExperimentConfig, fmt: str) -> int:
    prepared = prepare_data(cfg)
    rows, models = run_ml_baselines(cfg, prepared)
    dks = dk_grid_from_models(models, families=cfg.dk_families)
    backend = None if not cfg.live else cfg.llm
    cache = JsonlCache(cfg.cache_path) if cfg.live else None
    grid_rows, unparseable = run_prompt_grid(cfg, prepared, dks, backend=backend, cache=cache)
    table = ReportTable(rows=tuple(rows + grid_rows), unparseable=unparseable)
    path = write_report(table, cfg.output_dir, fmt=fmt)
    if unparseable:
        print(f"warning: unparseable responses counted as positive: {unparseable}")
    print(f"report written to {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cardioprompt",
        description="Heart-disease risk classification with tuned classifiers and guided prompts.",
    )
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--data-path", dest="data_path")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--test-fraction", dest="test_fraction", type=float)
    parser.add_argument("--impute-k", dest="impute_k", type=int)
    parser.add_argument("--cache-path", dest="cache_path")
    parser.add_argument("--output-dir", dest="output_dir")
    parser.add_argument("--paper-faithful", dest="paper_faithful", action="store_true")
    parser.add_argument(
        "--live", action="store_true", help="send real API requests (default: offline mocks/cache only)"
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    sub.add_parser("prepare-data", help="load, binarize, impute, split; print dataset stats")
    sub.add_parser("train-models", help="tune and fit the six classifiers; save artifacts")
    sub.add_parser("gen-dk", help="render domain-knowledge texts from saved model rankings")
    grid = sub.add_parser("run-grid", help="run the prompt grid against a mock or the live API")
    grid.add_argument("--mock", choices=("oracle", "rule"), default="oracle")
    grid.add_argument("--rule-feature", default="oldpeak")
    grid.add_argument("--rule-threshold", type=float, default=1.0)
    rep = sub.add_parser("report", help="full pipeline: classifiers plus prompt grid, one table")
    rep.add_argument("--format", choices=("csv", "markdown"), default="csv")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _build_config(args)
        if args.verb == "prepare-data":
            return cmd_prepare_data(cfg)
        if args.verb == "train-models":
            return cmd_train_models(cfg)
        if args.verb == "gen-dk":
            return cmd_gen_dk(cfg)
        if args.verb == "run-grid":
            return cmd_run_grid(cfg, args.mock, args.rule_feature, args.rule_threshold)
        if args.verb == "report":
            return cmd_report(cfg, args.format)
        raise ValidationError(f"unknown verb {args.verb!r}")
    except TransportError as exc:
        print(f"transport failure: {exc}", file=sys.stderr)
        cache_file = Path(cfg.cache_path)
        if cache_file.exists() and cache_file.stat().st_size > 0:
            print("partial results are cached; rerun to resume", file=sys.stderr)
            return 3
        return 2
    except (ValidationError, CardiopromptError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
