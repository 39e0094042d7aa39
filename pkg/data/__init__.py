"""Sample inputs package."""

from .sample_functions import (
    ACCEPTANCE_G, SAMPLE_SUPER, SAMPLE_THREE_ROOTS,
    SAMPLE_U2_JSON, EXPECTED_PBW_COUNTS
)

__version__ = "0.1.0"
