"""Command-line front end: evaluate, compare, sweep and report.

Output schema is versioned (``"schema": "seg-eval/1"``); floats are printed
with six significant digits while all internal computation stays at full
double precision. Exit codes: 0 on success, 2 on any input or usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .changepoint import covering, default_margin, f1_margin
from .clustering import ari, nmi, wari, wnmi
from .contingency import contingency_matrix
from .errors import SegEvalError
from .sequences import StateSequence, change_points, parse_label_sequence
from .sms import ErrorType, PenaltyWeights, SmsReport, sms
from .synth import MEASURE_ORDER, CorruptionSpec, make_ground_truth, sweep

__all__ = ["EvalConfig", "evaluate_pair", "main", "SCHEMA"]

SCHEMA = "seg-eval/1"
ENV_CONFIG = "SEG_EVAL_CONFIG"


@dataclass(frozen=True)
class EvalConfig:
    """Measure parameters used by every subcommand."""

    alpha: float = 0.1
    weights: PenaltyWeights = field(default_factory=PenaltyWeights)
    margin: int | str = "auto"
    measures: tuple[str, ...] = MEASURE_ORDER
    fmt: str = "lines"

    def resolve_margin(self, n: int) -> int:
        return default_margin(n) if self.margin == "auto" else int(self.margin)


def _sig6(value):
    """Round floats to 6 significant digits, recursively."""
    if isinstance(value, float):
        return float(f"{value:.6g}")
    if isinstance(value, dict):
        return {k: _sig6(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sig6(v) for v in value]
    return value


def _sms_to_dict(report: SmsReport) -> dict:
    return {
        "score": report.score,
        "n": report.n,
        "total_error_length": report.total_error_length,
        "blocks": [
            {
                "start": b.start,
                "end": b.end,
                "length": b.length,
                "predicted_label": b.predicted_label,
                "atomicity": b.atomicity,
                "type": b.kind.value,
                "distance": b.distance,
                "penalty": b.penalty,
            }
            for b in report.blocks
        ],
        "per_type": {
            t.value: {
                "count": stats.count,
                "length": stats.length,
                "penalty": float(stats.penalty),
            }
            for t, stats in report.per_type.items()
        },
    }


def evaluate_pair(gt: StateSequence, pred: StateSequence, config: EvalConfig) -> dict:
    """All requested measures for one (truth, prediction) pair."""
    out: dict = {"schema": SCHEMA, "n": len(gt)}
    for measure in (m for m in MEASURE_ORDER if m in config.measures):
        if measure == "f1":
            result = f1_margin(
                change_points(gt), change_points(pred), config.resolve_margin(len(gt))
            )
            out["f1"] = {
                "precision": result.precision,
                "recall": result.recall,
                "f1": result.f1,
                "margin": result.margin,
                "matches": [list(m) for m in result.matches],
            }
        elif measure == "covering":
            out["covering"] = covering(gt, pred)
        elif measure == "ari":
            out["ari"] = ari(contingency_matrix(gt, pred)).value
        elif measure == "nmi":
            out["nmi"] = nmi(contingency_matrix(gt, pred)).value
        elif measure == "wari":
            out["wari"] = wari(gt, pred, config.alpha).value
        elif measure == "wnmi":
            out["wnmi"] = wnmi(gt, pred, config.alpha).value
        elif measure == "sms":
            out["sms"] = _sms_to_dict(sms(gt, pred, config.weights))
    return out


# ---------------------------------------------------------------------------
# Configuration plumbing
# ---------------------------------------------------------------------------

def _load_env_config() -> dict:
    path = os.environ.get(ENV_CONFIG)
    if not path:
        return {}
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise SegEvalError(f"{ENV_CONFIG} file must hold a JSON object")
    return data


def _build_config(args: argparse.Namespace) -> EvalConfig:
    """Defaults, overridden by the env config file, overridden by flags."""
    env = _load_env_config()
    base = EvalConfig()

    def pick(flag, env_key, default):
        if flag is not None:
            return flag
        if env_key in env:
            return env[env_key]
        return default

    weights = PenaltyWeights(
        delay=float(pick(args.w_delay, "w_delay", base.weights.delay)),
        transition=float(pick(args.w_transition, "w_transition", base.weights.transition)),
        isolation=float(pick(args.w_isolation, "w_isolation", base.weights.isolation)),
        missing=float(pick(args.w_missing, "w_missing", base.weights.missing)),
    )
    margin = pick(args.margin, "margin", base.margin)
    if margin != "auto":
        margin = int(margin)
    measures = pick(args.measures, "measures", base.measures)
    if isinstance(measures, str):
        measures = tuple(m.strip() for m in measures.split(",") if m.strip())
    unknown = set(measures) - set(MEASURE_ORDER)
    if unknown:
        raise SegEvalError(f"unknown measures: {sorted(unknown)}")
    return EvalConfig(
        alpha=float(pick(args.alpha, "alpha", base.alpha)),
        weights=weights,
        margin=margin,
        measures=tuple(measures),
        fmt=pick(args.format, "format", base.fmt),
    )


def _read_sequence(path: str, fmt: str) -> StateSequence:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise SegEvalError(f"cannot read {path}: {err}") from err
    return parse_label_sequence(text, fmt)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = _build_config(args)
    gt = _read_sequence(args.gt, config.fmt)
    pred = _read_sequence(args.pred, config.fmt)
    if len(gt) != len(pred):
        raise SegEvalError(f"length mismatch: N_gt={len(gt)} N_pred={len(pred)}")
    report = _sig6(evaluate_pair(gt, pred, config))
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


def _scalar(measure: str, report: dict):
    value = report[measure]
    return value["f1"] if measure == "f1" else (value["score"] if measure == "sms" else value)


def _cmd_compare(args: argparse.Namespace) -> int:
    config = _build_config(args)
    gt = _read_sequence(args.gt, config.fmt)
    wanted = [m for m in MEASURE_ORDER if m in config.measures]
    rows = []
    for pred_path in args.preds:
        pred = _read_sequence(pred_path, config.fmt)
        if len(gt) != len(pred):
            raise SegEvalError(
                f"length mismatch: N_gt={len(gt)} N_pred={len(pred)} ({pred_path})"
            )
        report = evaluate_pair(gt, pred, config)
        rows.append([pred_path] + [_sig6(_scalar(m, report)) for m in wanted])
    lines = [",".join(["prediction"] + wanted)]
    lines += [",".join(str(v) for v in row) for row in rows]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    try:
        spec = json.loads(Path(args.spec).read_text(encoding="utf-8"))
    except OSError as err:
        raise SegEvalError(f"cannot read {args.spec}: {err}") from err
    except json.JSONDecodeError as err:
        raise SegEvalError(f"invalid sweep spec {args.spec}: {err}") from err
    try:
        gt = make_ground_truth(spec["segment_lengths"], spec.get("labels"))
        grid = [
            CorruptionSpec(
                kind=ErrorType(entry["kind"]),
                length=int(entry["length"]),
                position=entry.get("position"),
                seed=int(entry.get("seed", 0)),
                fill_label=entry.get("fill_label"),
            )
            for entry in spec["grid"]
        ]
        weights = PenaltyWeights(**spec.get("weights", {}))
        rows = sweep(
            gt,
            axis=spec.get("axis", "length"),
            grid=grid,
            measures=spec.get("measures", ("ari", "wari", "sms")),
            alpha=float(spec.get("alpha", 0.1)),
            weights=weights,
            margin=spec.get("margin", "auto"),
        )
    except (KeyError, TypeError, ValueError) as err:
        raise SegEvalError(f"invalid sweep spec {args.spec}: {err!r}") from err

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "length", "position", "measure", "score"])
    for row in rows:
        writer.writerow(
            [row.kind, row.length, row.position, row.measure, _sig6(row.score)]
        )
    _emit(buf.getvalue(), args.out)
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    per_file = []
    for path in args.reports:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as err:
            raise SegEvalError(f"cannot read {path}: {err}") from err
        except json.JSONDecodeError as err:
            raise SegEvalError(f"invalid report {path}: {err}") from err
        block = data.get("sms", data)
        if not isinstance(block, dict) or "per_type" not in block or "n" not in block:
            raise SegEvalError(f"{path} does not contain an sms report")
        per_file.append(block)

    k = len(per_file)
    aggregate = {}
    for t in ErrorType:
        counts = [b["per_type"][t.value]["count"] for b in per_file]
        lengths = [b["per_type"][t.value]["length"] for b in per_file]
        shares = [b["per_type"][t.value]["penalty"] / b["n"] for b in per_file]
        aggregate[t.value] = {
            "mean_count": sum(counts) / k,
            "mean_length": sum(lengths) / k,
            "mean_penalty_share": sum(shares) / k,
        }
    out = _sig6({"schema": SCHEMA, "reports": k, "per_type": aggregate})
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, default=None, help="boundary weight slope")
    parser.add_argument("--w-delay", type=float, default=None, dest="w_delay")
    parser.add_argument("--w-transition", type=float, default=None, dest="w_transition")
    parser.add_argument("--w-isolation", type=float, default=None, dest="w_isolation")
    parser.add_argument("--w-missing", type=float, default=None, dest="w_missing")
    parser.add_argument("--margin", default=None, help="samples, or 'auto' for 1%% of N")
    parser.add_argument("--measures", default=None, help="comma-separated subset")
    parser.add_argument("--format", default=None, choices=["lines", "comma"])
    parser.add_argument("--out", default=None, help="write output to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seg-eval",
        description="Evaluate time-series segmentations against a ground truth",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("evaluate", help="score one prediction (JSON)")
    p_eval.add_argument("gt")
    p_eval.add_argument("pred")
    _add_config_flags(p_eval)
    p_eval.set_defaults(func=_cmd_evaluate)

    p_cmp = sub.add_parser("compare", help="score several predictions (CSV)")
    p_cmp.add_argument("gt")
    p_cmp.add_argument("preds", nargs="+")
    _add_config_flags(p_cmp)
    p_cmp.set_defaults(func=_cmd_compare)

    p_sweep = sub.add_parser("sweep", help="run a synthetic corruption sweep (CSV)")
    p_sweep.add_argument("spec", help="JSON sweep description")
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_rep = sub.add_parser("report", help="aggregate per-error-type statistics (JSON)")
    p_rep.add_argument("reports", nargs="+")
    p_rep.add_argument("--out", default=None)
    p_rep.set_defaults(func=_cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SegEvalError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
