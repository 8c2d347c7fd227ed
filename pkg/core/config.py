"""
core/config.py — Centralized configuration
All shift modules, file formats and the CLI read from this single file.
Environment values (or a local .env) override the defaults below.
"""
import os
from dotenv import load_dotenv

from core.errors import ConfigError

load_dotenv(override=False)


def _env_flag(name: str, default: str = "0") -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


def _env_int(name: str, default: int) -> int:
    """Integer environment value; read at call time, ConfigError when malformed."""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")


# ──────────────────────────────────────────────
# Lattice windows
# ──────────────────────────────────────────────
DEFAULT_WINDOW = (8, 8)          # (N1, N2): k1 < N1, k2 < N2
MIN_WINDOW = (2, 2)              # commutativity needs k + ε1 + ε2

# ──────────────────────────────────────────────
# Numeric Aluthge transforms (mpmath)
# ──────────────────────────────────────────────
PRECISION_ENV_VAR = "SHIFTLAB_PRECISION"
DEFAULT_PRECISION = 256                                         # mantissa bits
MIN_PRECISION = 64
FIXED_POINT_TOLERANCE_BITS = 128                                # relative 2^-128
DEFAULT_ITERATION_STEPS = 5

# ──────────────────────────────────────────────
# Powers W^(m,n)
# ──────────────────────────────────────────────
POWER_CAP_ENV_VAR = "SHIFTLAB_POWER_CAP"
DEFAULT_POWER_EXPONENT_CAP = 8

# ──────────────────────────────────────────────
# Moment matrices
# ──────────────────────────────────────────────
DEFAULT_MOMENT_ORDER = 2         # M(2) is the 6×6 matrix used for flatness
MAX_RECOVERY_RANK = 2

# ──────────────────────────────────────────────
# Diagnostics
# ──────────────────────────────────────────────
DEBUG_VERIFY = _env_flag("SHIFTLAB_DEBUG_VERIFY")
LOG_LEVEL = os.getenv("SHIFTLAB_LOG_LEVEL", "WARNING").upper()

# ──────────────────────────────────────────────
# Storage Paths
# ──────────────────────────────────────────────
REPORTS_DIR = os.getenv("SHIFTLAB_REPORTS_DIR", "data/reports")


def resolve_precision(flag: int = None) -> int:
    """Precision in bits: CLI flag, then SHIFTLAB_PRECISION, then the default."""
    bits = flag if flag is not None else _env_int(PRECISION_ENV_VAR, DEFAULT_PRECISION)
    if bits < MIN_PRECISION:
        raise ConfigError(f"precision must be at least {MIN_PRECISION} bits, got {bits}")
    return bits


def power_exponent_cap() -> int:
    """Largest m or n accepted for W^(m,n): SHIFTLAB_POWER_CAP, then the default."""
    cap = _env_int(POWER_CAP_ENV_VAR, DEFAULT_POWER_EXPONENT_CAP)
    if cap < 1:
        raise ConfigError(f"{POWER_CAP_ENV_VAR} must be at least 1, got {cap}")
    return cap


def debug_verify_enabled() -> bool:
    """Read at call time so tests can toggle SHIFTLAB_DEBUG_VERIFY."""
    return DEBUG_VERIFY or _env_flag("SHIFTLAB_DEBUG_VERIFY")
