"""Global defaults; the ground-set cap can be overridden from the environment."""
import os

DEFAULT_MAX_GROUND_SET = 5000
DEFAULT_TOL = 1e-8
SEPARATION_FACTOR = 1e3
FULL_VERIFY_LIMIT = 500
SNAP_MAX_DENOMINATOR = 10_000


def max_ground_set():
    raw = os.environ.get("SCHEMEKIT_MAX_GROUND_SET")
    if raw is None:
        return DEFAULT_MAX_GROUND_SET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"SCHEMEKIT_MAX_GROUND_SET must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("SCHEMEKIT_MAX_GROUND_SET must be positive")
    return value
