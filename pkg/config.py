"""Configuration settings for qva.

Every value can be overridden through the environment, for example:

    export QVA_DEGREE=3
    export QVA_WINDOW="-3,4"
    export QVA_LOG_LEVEL=DEBUG

The defaults are sized for desk-scale runs (a few minutes per g).
"""

import logging
import os

# Verification sizes
DEFAULT_DEGREE = int(os.getenv("QVA_DEGREE", "4"))
DEFAULT_WINDOW = os.getenv("QVA_WINDOW", "-4,5")
DEFAULT_WORD_CAP = int(os.getenv("QVA_WORD_CAP", "2"))
DEFAULT_VERMA_DEGREE = int(os.getenv("QVA_VERMA_DEGREE", "2"))

# Series settings
DEFAULT_TRUNC = int(os.getenv("QVA_TRUNC", "16"))
SERIES_HEADROOM = int(os.getenv("QVA_SERIES_HEADROOM", "4"))

# Randomized sample inputs
DEFAULT_SEED = int(os.getenv("QVA_SEED", "20240917"))

# Logging settings
ENABLE_LOGGING = os.getenv("QVA_ENABLE_LOGGING", "1") not in ("0", "false", "False")
LOG_LEVEL = os.getenv("QVA_LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def parse_window(text: str):
    """'-4,5' -> (-4, 5)."""
    lo, hi = (int(part) for part in text.split(","))
    return lo, hi


def configure_logging(level: str = None) -> None:
    """Apply the logging settings to the root logger."""
    if not ENABLE_LOGGING:
        logging.disable(logging.CRITICAL)
        return
    logging.basicConfig(level=(level or LOG_LEVEL).upper(), format=LOG_FORMAT)


def validate_settings():
    """Validate that the settings are consistent."""
    warnings = []

    if DEFAULT_DEGREE < 0:
        warnings.append(f"⚠️  QVA_DEGREE={DEFAULT_DEGREE} is negative.")

    try:
        lo, hi = parse_window(DEFAULT_WINDOW)
        if lo > hi:
            warnings.append(f"⚠️  QVA_WINDOW={DEFAULT_WINDOW!r} is reversed.")
    except ValueError:
        warnings.append(f"❌ QVA_WINDOW={DEFAULT_WINDOW!r} is not of the form 'A,B'.")

    if DEFAULT_WORD_CAP < 2:
        warnings.append(f"⚠️  QVA_WORD_CAP={DEFAULT_WORD_CAP} is below 2; relation instances need words of length 2.")

    if DEFAULT_TRUNC < DEFAULT_DEGREE + SERIES_HEADROOM:
        warnings.append(
            f"⚠️  QVA_TRUNC={DEFAULT_TRUNC} leaves less than {SERIES_HEADROOM} coefficients of headroom "
            f"over QVA_DEGREE={DEFAULT_DEGREE}."
        )

    for warning in warnings:
        print(warning)

    return len(warnings) == 0
