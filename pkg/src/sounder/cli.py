"""
src.sounder.cli
~~~~~~~~~~~~~~~

Batch command-line front end.

exit code | meaning
----------|-----------------------------------------
0         | success
2         | usage error (bad flags or argument values)
3         | data / format error
4         | numeric / domain error

Failures are reported on stderr as one JSON object
``{"error": ..., "message": ..., "exit_code": ...}``.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, NoReturn, Optional, Sequence

from src.sounder.config.sequence import SequenceSpec
from src.sounder.emulator.channel import FADING_MODES
from src.sounder.errors import SounderError
from src.sounder.estimator.pdp import extract_taps
from src.sounder.io.capture import read_capture, write_capture
from src.sounder.io.tables import read_pdp, write_json, write_model_grid, write_pdp, write_residuals
from src.sounder.metrics.compare import compare
from src.sounder.metrics.dispersion import summarize
from src.sounder.models.registry import describe_models, get_model
from src.sounder.models.segments import eval_alpha
from src.sounder.settings import Settings
from src.sounder.waveform import PRIMITIVE_TAPS
from src.sounder.workflow import (
    emulate_capture,
    estimate_pdp,
    generate_capture,
    run_pipeline,
    sequence_for,
)

logger = logging.getLogger(__name__)

USAGE_EXIT = 2


def _emit_error(name: str, message: str, exit_code: int) -> None:
    payload = {"error": name, "message": message, "exit_code": exit_code}
    print(json.dumps(payload), file=sys.stderr)


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors use the JSON error format."""

    def error(self, message: str) -> NoReturn:
        _emit_error("UsageError", f"{self.prog}: {message}", USAGE_EXIT)
        raise SystemExit(USAGE_EXIT)


# --------------------------------------------------------------------------- #
# Argument types                                                              #
# --------------------------------------------------------------------------- #
def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _int_auto(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc


def _snr(text: str) -> Optional[float]:
    if text.lower() in {"none", "off", "inf", "+inf"}:
        return None
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a number or 'inf', got {text!r}") from exc
    return None if math.isinf(value) and value > 0 else value


def _window_len(window_us: float, sample_rate_hz: float) -> int:
    return int(round(window_us * sample_rate_hz / 1e6))


def _print(payload: Dict[str, Any] | str, as_json: bool) -> None:
    if as_json and not isinstance(payload, str):
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif isinstance(payload, dict):
        print(" ".join(f"{k}={v}" for k, v in payload.items()))
    else:
        print(payload)


# --------------------------------------------------------------------------- #
# Subcommands                                                                 #
# --------------------------------------------------------------------------- #
def cmd_generate(args: argparse.Namespace, settings: Settings) -> int:
    taps = args.taps
    if taps is None:
        if args.m not in PRIMITIVE_TAPS:
            raise ValueError(f"no default feedback taps for order {args.m}; pass --taps")
        taps = list(PRIMITIVE_TAPS[args.m])
    spec = SequenceSpec(
        order=args.m,
        taps=taps,
        seed=args.seed if args.seed is not None else (1 << args.m) - 1,
        pad_len=args.pad,
        chip_rate_hz=args.chip_rate,
    )
    seq, capture = generate_capture(spec, args.reps, center_freq_hz=args.center_freq)
    out = Path(args.output or settings.output_dir / "tx.iq")
    write_capture(capture, out)
    if args.seq_out:
        write_json(spec.to_json(), args.seq_out)
    _print(
        {"output": str(out), "n_samples": capture.n_samples, "length": seq.length, "frame_len": seq.frame_len},
        args.json,
    )
    return 0


def cmd_model_eval(args: argparse.Namespace, settings: Settings) -> int:
    model = get_model(args.model)
    values = [eval_alpha(model, tau) for tau in args.tau]
    if args.json:
        _print({"model": model.name, "tau_us": args.tau, "power_db": values}, True)
    else:
        for value in values:
            print(f"{value:.6f}")
    return 0


def cmd_model_export(args: argparse.Namespace, settings: Settings) -> int:
    model = get_model(args.model)
    out = Path(args.output or settings.output_dir / f"{model.name}.csv")
    write_model_grid(model, args.spacing, out)
    _print({"output": str(out), "model": model.name}, args.json)
    return 0


def cmd_model_list(args: argparse.Namespace, settings: Settings) -> int:
    rows = describe_models()
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        for row in rows:
            print(f"{row['key']:<12} {row['name']:<12} segments={row['segments']} floor={row['floor_db']}")
    return 0


def cmd_emulate(args: argparse.Namespace, settings: Settings) -> int:
    tx = read_capture(args.input)
    rx = emulate_capture(
        tx,
        get_model(args.model),
        spacing_us=args.spacing_us,
        min_db=args.min_db,
        snr_db=args.snr_db,
        fading_mode=args.fading,
        seed=args.seed,
    )
    out = Path(args.output or settings.output_dir / "rx.iq")
    write_capture(rx, out)
    _print({"output": str(out), "n_samples": rx.n_samples, "n_taps": rx.extra["n_taps"]}, args.json)
    return 0


def cmd_estimate(args: argparse.Namespace, settings: Settings) -> int:
    rx = read_capture(args.input)
    spec = SequenceSpec.from_file(args.seq) if args.seq else None
    seq = sequence_for(rx, spec)
    window_len = _window_len(args.window_us, rx.sample_rate_hz)
    pdp = estimate_pdp(rx, seq, window_len, equalize=not args.no_equalize, mode=args.mode)
    out = Path(args.output or settings.output_dir / "pdp.csv")
    write_pdp(pdp, out, {"capture_id": rx.capture_id, "mode": args.mode})
    _print(
        {"output": str(out), "n_averaged": pdp.n_averaged, "noise_floor_db": pdp.noise_floor_db, "offset": pdp.offset},
        args.json,
    )
    return 0


def cmd_metrics(args: argparse.Namespace, settings: Settings) -> int:
    pdp = read_pdp(args.input)
    taps = extract_taps(pdp, args.threshold_db)
    report = summarize(
        taps,
        args.x_db,
        args.gap_us,
        args.rise_db,
        noise_floor_db=pdp.noise_floor_db,
        threshold_db=args.threshold_db,
    )
    print(report.to_table() if args.table and not args.json else report.to_json())
    return 0


def cmd_compare(args: argparse.Namespace, settings: Settings) -> int:
    pdp = read_pdp(args.pdp)
    report = compare(pdp, get_model(args.model), args.threshold_db, args.gap_us, args.rise_db)
    if args.residuals:
        write_residuals(report, args.residuals)
    print(report.to_table() if args.table and not args.json else report.to_json())
    return 0


def cmd_pipeline(args: argparse.Namespace, settings: Settings) -> int:
    out = Path(args.output or settings.output_dir)
    spec = SequenceSpec.from_file(args.seq) if args.seq else SequenceSpec(
        order=settings.order,
        taps=list(settings.feedback_taps),
        seed=settings.seed,
        pad_len=settings.pad_len,
        chip_rate_hz=settings.chip_rate_hz,
    )
    result = run_pipeline(
        args.model,
        out,
        snr_db=args.snr_db,
        seed=args.seed,
        spec=spec,
        repetitions=args.reps,
        min_db=args.min_db,
        fading_mode=args.fading,
        window_len=_window_len(args.window_us, spec.chip_rate_hz),
        threshold_db=args.threshold_db,
        x_db=args.x_db,
        equalize=not args.no_equalize,
    )
    summary = {
        "output": str(out),
        "rmse_db": result.comparison.rmse_db,
        "n_taps": len(result.taps),
        "cluster_count": result.dispersion.cluster_count,
    }
    _print(summary, args.json)
    return 0


# --------------------------------------------------------------------------- #
# Parser                                                                      #
# --------------------------------------------------------------------------- #
def build_parser(settings: Settings | None = None) -> argparse.ArgumentParser:
    s = settings or Settings()
    parser = _Parser(prog="sounder", description="FM-band channel-sounding toolkit")
    parser.add_argument("--log-level", default=s.log_level, help="logging level for stderr")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", parents=[common], help="write a transmit capture")
    p.add_argument("--m", type=int, default=s.order, help="register order")
    p.add_argument("--taps", type=_int_list, default=None, help="feedback taps, e.g. 10,3")
    p.add_argument("--seed", type=_int_auto, default=None, help="register seed (default all ones)")
    p.add_argument("--pad", type=int, default=s.pad_len)
    p.add_argument("--reps", type=int, default=s.repetitions)
    p.add_argument("--chip-rate", type=float, default=s.chip_rate_hz)
    p.add_argument("--center-freq", type=float, default=s.center_freq_hz)
    p.add_argument("--seq-out", default=None, help="also write the sequence spec JSON here")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_generate)

    model = sub.add_parser("model", help="inspect PDP models")
    msub = model.add_subparsers(dest="model_command", required=True, parser_class=_Parser)
    p = msub.add_parser("eval", parents=[common], help="power in dB at given delays")
    p.add_argument("--model", required=True)
    p.add_argument("--tau", type=float, nargs="+", required=True, help="delay(s) in us")
    p.set_defaults(func=cmd_model_eval)
    p = msub.add_parser("export", parents=[common], help="CSV of the model on a grid")
    p.add_argument("--model", required=True)
    p.add_argument("--spacing", type=float, default=0.1, help="grid spacing in us")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_model_export)
    p = msub.add_parser("list", parents=[common], help="registered models")
    p.set_defaults(func=cmd_model_list)

    p = sub.add_parser("emulate", parents=[common], help="pass a capture through a model channel")
    p.add_argument("--model", required=True)
    p.add_argument("--spacing-us", type=float, default=None, help="tap spacing (default: one sample)")
    p.add_argument("--min-db", type=float, default=-40.0)
    p.add_argument("--snr-db", type=_snr, default=30.0, help="SNR in dB or 'inf'")
    p.add_argument("--fading", choices=FADING_MODES, default="static")
    p.add_argument("--seed", type=_int_auto, default=0)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_emulate)

    p = sub.add_parser("estimate", parents=[common], help="estimate a PDP from a capture")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--seq", default=None, help="sequence spec (default: from the capture sidecar)")
    p.add_argument("--window-us", type=float, default=float(s.window_len))
    p.add_argument("--mode", choices=("magnitude", "power"), default="magnitude")
    p.add_argument("--no-equalize", action="store_true", help="skip the sidelobe equalizer")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_estimate)

    def _report_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--threshold-db", type=float, default=s.threshold_db)
        p.add_argument("--gap-us", type=float, default=s.cluster_gap_us)
        p.add_argument("--rise-db", type=float, default=s.cluster_rise_db)
        p.add_argument("--table", action="store_true", help="text table instead of JSON")

    p = sub.add_parser("metrics", parents=[common], help="dispersion report of a PDP CSV")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--x-db", type=float, default=s.x_db)
    _report_flags(p)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("compare", parents=[common], help="compare a PDP CSV with a model")
    p.add_argument("--pdp", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--residuals", default=None, help="write per-delay residuals CSV here")
    _report_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("pipeline", parents=[common], help="generate, emulate, estimate and compare")
    p.add_argument("--model", required=True)
    p.add_argument("--snr-db", type=_snr, default=30.0)
    p.add_argument("--seed", type=_int_auto, default=0)
    p.add_argument("--seq", default=None, help="sequence spec file")
    p.add_argument("--reps", type=int, default=s.repetitions)
    p.add_argument("--min-db", type=float, default=-40.0)
    p.add_argument("--fading", choices=FADING_MODES, default="static")
    p.add_argument("--window-us", type=float, default=float(s.window_len))
    p.add_argument("--threshold-db", type=float, default=s.threshold_db)
    p.add_argument("--x-db", type=float, default=s.x_db)
    p.add_argument("--no-equalize", action="store_true")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    settings = Settings.from_env()
    args = build_parser(settings).parse_args(argv)
    func: Callable[[argparse.Namespace, Settings], int] = args.func
    try:
        logging.basicConfig(
            level=str(args.log_level).upper(),
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
            force=True,
        )
        return func(args, settings)
    except SounderError as exc:
        _emit_error(type(exc).__name__, str(exc), exc.exit_code)
        return exc.exit_code
    except (ValueError, KeyError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        _emit_error(type(exc).__name__, str(message), USAGE_EXIT)
        return USAGE_EXIT
    except OSError as exc:
        _emit_error(type(exc).__name__, str(exc), 3)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
