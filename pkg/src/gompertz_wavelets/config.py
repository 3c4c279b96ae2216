import os

from dotenv import load_dotenv

load_dotenv()

OUTPUT_DIR = os.getenv("GOMPERTZ_OUTPUT_DIR", "output")

# "MIN..MAX" integer scale grid used when --scales is not given
DEFAULT_SCALES = os.getenv("GOMPERTZ_SCALES", "1..64")
DEFAULT_SMOOTH_WINDOW = int(os.getenv("GOMPERTZ_SMOOTH_WINDOW", "7"))
DEFAULT_PEAK_THRESHOLD = float(os.getenv("GOMPERTZ_PEAK_THRESHOLD", "0.2"))
DEFAULT_MIN_SEPARATION = int(os.getenv("GOMPERTZ_MIN_SEPARATION", "10"))

SCALOGRAM_WORKERS = int(os.getenv("GOMPERTZ_SCALOGRAM_WORKERS", "4"))
MONOTONICITY_TOLERANCE = float(os.getenv("GOMPERTZ_MONOTONICITY_TOLERANCE", "0.0"))
VERIFY_MAX_ORDER = int(os.getenv("GOMPERTZ_VERIFY_MAX_ORDER", "8"))


def parse_range(text: str) -> tuple[int, int]:
    """Parse an inclusive integer range written as ``MIN..MAX``."""
    low, sep, high = text.partition("..")
    if not sep:
        raise ValueError(f"Expected MIN..MAX, got {text!r}")
    return int(low), int(high)


__all__ = [
    "OUTPUT_DIR",
    "DEFAULT_SCALES",
    "DEFAULT_SMOOTH_WINDOW",
    "DEFAULT_PEAK_THRESHOLD",
    "DEFAULT_MIN_SEPARATION",
    "SCALOGRAM_WORKERS",
    "MONOTONICITY_TOLERANCE",
    "VERIFY_MAX_ORDER",
    "parse_range",
]
