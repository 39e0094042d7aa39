"""Exact symbolic engine for the vacuum module of A(h) and graded A~(g)-modules."""

from .ratfunc import RationalFn, canonicalize, factor_h, parse_rational_function
from .vacuum import AhContext, apply_mode, pbw_vectors
from .ding_iohara import AAlphaModule, classify_aalpha, component_table
from .verma import build_verma, verify_graded_relations
from .evaluation import RunConfig, run_suite

__version__ = "0.1.0"
