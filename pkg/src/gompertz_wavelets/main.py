import argparse
import datetime as dt
import sys
from pathlib import Path

import pandas as pd
from pydantic import ValidationError

from gompertz_wavelets import config, pipelines, synthetic_data
from gompertz_wavelets.exceptions import DomainError, IngestError
from gompertz_wavelets.models import (
    AnalysisConfig,
    SeriesFormat,
    SeriesSource,
    SyntheticSpec,
    SyntheticWave,
    WaveShape,
)
from gompertz_wavelets.services import export
from gompertz_wavelets.wavelets import WaveletFamily

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2

EXAMPLES = {"two-wave": synthetic_data.two_wave_example}


def _range(text: str) -> tuple[int, int]:
    try:
        return config.parse_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _wave(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    try:
        x_max, a, b = (float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected X_MAX,A,B, got {text!r}") from exc
    return x_max, a, b


def _add_synthetic_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--wave",
        action="append",
        type=_wave,
        default=[],
        metavar="X_MAX,A,B",
        help="Wave x_max exp(-exp(-(t - b) / a)); repeat for a sum of waves",
    )
    parser.add_argument("--domain", type=_range, default=None, metavar="MIN..MAX")
    parser.add_argument("--shape", choices=[s.value for s in WaveShape], default=WaveShape.GOMPERTZ.value)
    parser.add_argument("--example", choices=sorted(EXAMPLES), default=None, help="Built-in synthetic signal")


def _add_input_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", type=Path, default=None, help="Cumulative series CSV")
    parser.add_argument("--format", choices=[f.value for f in SeriesFormat], default=SeriesFormat.PLAIN.value)
    parser.add_argument("--location", default=None, help="OWID location, e.g. 'Saudi Arabia'")
    parser.add_argument("--from", dest="date_from", type=dt.date.fromisoformat, default=None)
    parser.add_argument("--to", dest="date_to", type=dt.date.fromisoformat, default=None)
    _add_synthetic_arguments(parser)


def _add_analysis_arguments(parser: argparse.ArgumentParser) -> None:
    _add_input_arguments(parser)
    parser.add_argument("--scales", type=_range, default=config.DEFAULT_SCALES, metavar="MIN..MAX")
    parser.add_argument("--log-scales", type=int, default=None, metavar="COUNT")
    parser.add_argument("--shifts", type=_range, default=None, metavar="MIN..MAX")
    parser.add_argument(
        "--smooth",
        type=int,
        default=None,
        help=f"Moving-average window (default {config.DEFAULT_SMOOTH_WINDOW} for files, 1 for synthetic input)",
    )
    parser.add_argument("--out", type=Path, default=Path(config.OUTPUT_DIR))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gompertz-wavelets",
        description="Detect Gompertz-shaped growth waves with a continuous wavelet transform",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    synth = commands.add_parser("synth", help="Write a synthetic cumulative series as CSV")
    _add_synthetic_arguments(synth)
    synth.add_argument("--out", type=Path, required=True, help="CSV file to write")

    analyze = commands.add_parser("analyze", help="Scalogram, peaks and saturation estimates")
    _add_analysis_arguments(analyze)
    analyze.add_argument("--wavelet", choices=[f.value for f in WaveletFamily], default=WaveletFamily.GOMPERTZ.value)
    analyze.add_argument("--order", type=int, default=2)
    analyze.add_argument("--threshold", type=float, default=config.DEFAULT_PEAK_THRESHOLD)
    analyze.add_argument("--min-separation", type=int, default=config.DEFAULT_MIN_SEPARATION)

    compare = commands.add_parser("compare", help="Best Index under the Gompertz and logistic wavelets")
    _add_analysis_arguments(compare)

    verify = commands.add_parser("verify", help="Check closed forms against quadrature")
    verify.add_argument("--max-order", type=int, default=config.VERIFY_MAX_ORDER)
    return parser


def synthetic_spec_from_args(args: argparse.Namespace) -> SyntheticSpec | None:
    if args.example:
        return EXAMPLES[args.example]()
    if not args.wave:
        return None
    if args.domain is None:
        raise DomainError("--wave needs --domain MIN..MAX")
    return SyntheticSpec(
        components=[SyntheticWave(x_max=x, a=a, b=b, shape=args.shape) for x, a, b in args.wave],
        domain=args.domain,
    )


def analysis_config_from_args(args: argparse.Namespace) -> AnalysisConfig:
    synthetic = synthetic_spec_from_args(args)
    source = None
    if args.input is not None:
        date_range = None
        if args.date_from or args.date_to:
            date_range = (args.date_from or dt.date.min, args.date_to or dt.date.max)
        source = SeriesSource(
            path=args.input,
            format=args.format,
            location_filter=args.location,
            date_range=date_range,
        )

    smooth = args.smooth
    if smooth is None:
        smooth = 1 if synthetic is not None else config.DEFAULT_SMOOTH_WINDOW
    scale_min, scale_max = args.scales
    shift_min, shift_max = args.shifts or (None, None)

    return AnalysisConfig(
        source=source,
        synthetic=synthetic,
        wavelet_family=getattr(args, "wavelet", WaveletFamily.GOMPERTZ),
        wavelet_order=getattr(args, "order", 2),
        scale_min=scale_min,
        scale_max=scale_max,
        log_scale_count=args.log_scales,
        shift_min=shift_min,
        shift_max=shift_max,
        smooth_window=smooth,
        peak_threshold=getattr(args, "threshold", config.DEFAULT_PEAK_THRESHOLD),
        min_separation=getattr(args, "min_separation", config.DEFAULT_MIN_SEPARATION),
        output_dir=args.out,
    )


def cmd_synth(args: argparse.Namespace) -> int:
    spec = synthetic_spec_from_args(args)
    if spec is None:
        raise DomainError("synth needs --wave X_MAX,A,B (with --domain) or --example")
    path = pipelines.synthetic_data_generator.synthetic_data_generator_pipeline(spec, args.out)
    print(f"Wrote {spec.domain[1] - spec.domain[0] + 1} samples to {path}")
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = analysis_config_from_args(args)
    outcome = pipelines.wave_analysis.wave_analysis_pipeline(cfg)

    print(f"Series: {outcome.label}  wavelet: {outcome.wavelet}")
    if not outcome.detections:
        print("no waves found")
    else:
        frame = export.detections_frame(outcome.detections)
        print(frame.to_string(index=False, float_format=lambda v: f"{v:,.2f}"))
        for d in outcome.detections:
            print(f"peak (a={d.a:g}, b={d.b:g}, Index={d.index_value:.6g})")
    print(f"Scalogram: {outcome.scalogram_csv}  image: {outcome.scalogram_png}")
    print(f"Detections: {outcome.detections_csv}")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    cfg = analysis_config_from_args(args)
    outcome = pipelines.wave_analysis.wavelet_comparison_pipeline(cfg)
    comparison = outcome.comparison

    frame = export.detections_frame([comparison.gompertz_peak, comparison.logistic_peak])
    frame.insert(0, "wavelet", [comparison.gompertz_peak.wavelet, comparison.logistic_peak.wavelet])
    print(f"Series: {outcome.label}")
    if not comparison.found:
        print("no waves found")
        return EXIT_OK
    print(frame.to_string(index=False, float_format=lambda v: f"{v:,.2f}"))
    print(f"Better fit: {comparison.better_family} (Index ratio gompertz/logistic = {comparison.ratio:.4f})")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    rows = pipelines.verification.verification_pipeline(args.max_order)
    frame = pd.DataFrame([row.model_dump() for row in rows])
    frame["passed"] = frame["passed"].map({True: "PASS", False: "FAIL"})
    print(frame.to_string(index=False, float_format=lambda v: f"{v:.12g}"))

    failed = sum(not row.passed for row in rows)
    print(f"{len(rows) - failed}/{len(rows)} checks passed")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


COMMANDS = {
    "synth": cmd_synth,
    "analyze": cmd_analyze,
    "compare": cmd_compare,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (DomainError, IngestError, ValidationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


def run():
    sys.exit(main())


def run_synth():
    sys.exit(main(["synth", *sys.argv[1:]]))


def run_analyze():
    sys.exit(main(["analyze", *sys.argv[1:]]))


def run_compare():
    sys.exit(main(["compare", *sys.argv[1:]]))


def run_verify():
    sys.exit(main(["verify", *sys.argv[1:]]))


if __name__ == "__main__":
    run()
