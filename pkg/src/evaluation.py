"""Verification suites and the run configuration that selects them."""

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

import config
from .ding_iohara import (
    AAlphaModule,
    ComponentTable,
    aalpha_violations,
    classify_aalpha,
    component_table,
)
from .errors import InvalidConfig, RelationInconsistency, UnsupportedG
from .fock import basis_count
from .phi import (
    phi_commutation_check,
    phi_commutativity_check,
    phi_derivation_check,
    phi_preserves_filtration_check,
)
from .ratfunc import CanonicalG, RationalFn, canonicalize, factor_h
from .report import Report
from .serialization import module_to_json, ratfn_to_json, scalar_to_json, series_to_json
from .series import TruncSeries, iota_exp, iota_z0, iota_zinf, series_inv, series_mul
from .vacuum import (
    AhContext,
    required_trunc,
    verify_degeneration,
    verify_derivation,
    verify_generator_products,
    verify_pbw_independence,
    verify_relations,
    verify_vacuum_axioms,
)
from .verma import GradedModule, build_verma, verify_graded_relations

logger = logging.getLogger(__name__)

SUITES = (
    "expand",
    "factor",
    "ah",
    "independence",
    "derivation",
    "phi",
    "vacuum-axioms",
    "generator-products",
    "degeneration",
    "aalpha",
    "verma",
    "atilde",
)

# suites that need g analytic and nonzero at 0
ATILDE_SUITES = ("verma", "atilde")

# d(phi_i v) - phi_i d(v) = (i+1) phi_{i+1} v is checked at least for i = 0..4
PHI_DERIVATION_ORDER = 5


@dataclass
class RunConfig:
    """Everything one verification run depends on."""

    g: RationalFn
    degree_bound: int = config.DEFAULT_DEGREE
    series_trunc: Optional[int] = None
    mode_window: Tuple[int, int] = field(default_factory=lambda: config.parse_window(config.DEFAULT_WINDOW))
    word_cap: int = config.DEFAULT_WORD_CAP
    verma_degree: int = config.DEFAULT_VERMA_DEGREE
    suites: Tuple[str, ...] = ("all",)
    module: Optional[AAlphaModule] = None
    alpha: Optional[Fraction] = None
    seed: int = config.DEFAULT_SEED
    output: Optional[str] = None
    include_timing: bool = False

    @property
    def selected(self) -> Tuple[str, ...]:
        if "all" in self.suites:
            return SUITES
        return tuple(s for s in SUITES if s in self.suites)

    @property
    def runs_everything(self) -> bool:
        return "all" in self.suites

    def validate(self) -> "RunConfig":
        """Raise InvalidConfig on inconsistent settings and size the series truncation."""
        if self.degree_bound < 0:
            raise InvalidConfig(f"degree_bound must be nonnegative, got {self.degree_bound}")
        lo, hi = self.mode_window
        if lo > hi:
            raise InvalidConfig(f"mode window [{lo}, {hi}] is reversed")
        if self.word_cap < 2:
            raise InvalidConfig(f"word_cap must be at least 2, got {self.word_cap}")
        if self.verma_degree < 0:
            raise InvalidConfig(f"verma_degree must be nonnegative, got {self.verma_degree}")
        unknown = [s for s in self.suites if s != "all" and s not in SUITES]
        if unknown:
            raise InvalidConfig(f"unknown suites {unknown}; choose from {', '.join(SUITES)} or all")
        if self.series_trunc is None:
            self.series_trunc = max(config.DEFAULT_TRUNC, required_trunc(self.degree_bound, self.mode_window))
        elif self.series_trunc < self.degree_bound + config.SERIES_HEADROOM:
            raise InvalidConfig(
                f"series_trunc={self.series_trunc} is below degree_bound + {config.SERIES_HEADROOM}"
            )
        if self.alpha is not None and self.alpha == 0:
            raise InvalidConfig("alpha must be nonzero")
        return self

    def to_dict(self) -> Dict:
        data = {
            "g": ratfn_to_json(self.g),
            "degree_bound": self.degree_bound,
            "series_trunc": self.series_trunc,
            "mode_window": list(self.mode_window),
            "word_cap": self.word_cap,
            "verma_degree": self.verma_degree,
            "suites": list(self.selected),
            "seed": self.seed,
        }
        if self.module is not None:
            data["module"] = module_to_json(self.module)
        if self.alpha is not None:
            data["alpha"] = scalar_to_json(self.alpha)
        return data


class SuiteRunner:
    """Lazily built contexts shared by the suites of one run."""

    def __init__(self, cfg: RunConfig, cg: CanonicalG):
        """Initialize the runner; nothing is computed until a suite asks."""
        self.cfg = cfg
        self.cg = cg
        self._ctx: Optional[AhContext] = None
        self._table: Optional[ComponentTable] = None

    @property
    def ctx(self) -> AhContext:
        if self._ctx is None:
            self._ctx = AhContext.build(self.cg, self.cfg.degree_bound, self.cfg.mode_window,
                                        trunc=self.cfg.series_trunc)
        return self._ctx

    @property
    def table(self) -> ComponentTable:
        if self._table is None:
            trunc = 2 * (self.cfg.verma_degree + self.cfg.word_cap) + 4
            self._table = component_table(self.cg, max(trunc, self.cfg.series_trunc))
        return self._table

    @property
    def alpha(self) -> Fraction:
        if self.cfg.alpha is not None:
            return self.cfg.alpha
        return self.table.alpha

    def module(self) -> AAlphaModule:
        """The configured U, or U(2) when alpha = -1, or the trivial module."""
        if self.cfg.module is not None:
            return self.cfg.module
        if self.table.alpha == -1:
            return AAlphaModule.u_lambda(2)
        return AAlphaModule.trivial()


def _combined(name: str, *reports: Report) -> Report:
    out = Report(name)
    for report in reports:
        out.merge(report)
    return out


def expansion_duality(g: RationalFn, trunc: int) -> bool:
    """iota_{z,0} g(z) * iota_{z,0} g(1/z) = 1 below z^trunc."""
    pad = g.num_degree + g.den_degree + 1
    product = series_mul(iota_z0(g, trunc + pad), iota_z0(g.reflected(), trunc + pad))
    return product.trunc >= trunc and product.agrees_with(TruncSeries.one(trunc), trunc)


def expand_suite(runner: SuiteRunner) -> Report:
    g, trunc = runner.cfg.g, runner.cfg.series_trunc
    report = Report("expand", config={"trunc": trunc})
    at_zero, at_inf = iota_z0(g, trunc), iota_zinf(g, trunc)
    report.record("duality", expansion_duality(g, trunc))
    report.summary.update({
        "at_0": series_to_json(at_zero),
        "at_inf": series_to_json(at_inf),
        "at_exp": series_to_json(iota_exp(g, trunc)),
    })
    return report


def factor_suite(runner: SuiteRunner) -> Report:
    cg, trunc = runner.cg, runner.cfg.series_trunc
    report = Report("factor", config={"trunc": trunc})
    fact = factor_h(cg, trunc)
    h, q, eps = fact.h, fact.q, fact.epsilon
    rebuilt = series_mul(q, series_inv(q.reflect())).scale(eps)
    report.record("h=eps*q(x)/q(-x)", rebuilt.agrees_with(h, trunc))
    report.record("h(x)h(-x)=1", series_mul(h, h.reflect()).agrees_with(TruncSeries.one(trunc), trunc))
    report.record("q(0)=1", q.coeff(0) == 1)
    report.record("h(0)=g(1)", h.coeff(0) == cg.reconstruct().evaluate(1))
    report.summary.update({
        "sign": cg.sign,
        "l": cg.l,
        "roots": [scalar_to_json(r) for r in cg.roots],
        "epsilon": eps,
        "h": series_to_json(h),
        "q": series_to_json(q),
    })
    return report


def ah_suite(runner: SuiteRunner) -> Report:
    cfg = runner.cfg
    return verify_relations(runner.ctx, cfg.degree_bound, cfg.mode_window)


def independence_suite(runner: SuiteRunner) -> Report:
    ctx = runner.ctx
    report = verify_pbw_independence(ctx, runner.cfg.degree_bound)
    for d, row in report.summary["ranks"].items():
        expected = basis_count(d, ctx.super)
        row["oracle"] = expected
        report.record("oracle-count", row["count"] == expected, modes=[d], detail=row)
    return report


def derivation_suite(runner: SuiteRunner) -> Report:
    ctx, cfg = runner.ctx, runner.cfg
    return _combined(
        "derivation",
        verify_derivation(ctx, cfg.degree_bound, cfg.mode_window),
        phi_derivation_check(ctx.phi, cfg.degree_bound, order=max(cfg.degree_bound, PHI_DERIVATION_ORDER)),
    )


def phi_suite(runner: SuiteRunner) -> Report:
    phi, bound = runner.ctx.phi, runner.cfg.degree_bound
    return _combined(
        "phi",
        phi_preserves_filtration_check(phi, bound),
        phi_commutation_check(phi, bound),
        phi_commutativity_check(phi, bound),
    )


def vacuum_axioms_suite(runner: SuiteRunner) -> Report:
    cfg = runner.cfg
    return verify_vacuum_axioms(runner.ctx, cfg.degree_bound, cfg.mode_window)


def generator_products_suite(runner: SuiteRunner) -> Report:
    return verify_generator_products(runner.ctx)


def degeneration_suite(runner: SuiteRunner) -> Report:
    """Dressed modes against bar modes for g = 1."""
    cfg = runner.cfg
    trivial = AhContext.build(canonicalize(RationalFn.make([1])), cfg.degree_bound, cfg.mode_window)
    report = verify_degeneration(trivial, cfg.degree_bound, cfg.mode_window)
    report.summary["g"] = "1"
    return report


def aalpha_suite(runner: SuiteRunner) -> Report:
    """Classification of A[alpha]-modules, plus the configured module if any."""
    alpha = runner.alpha
    rng = np.random.default_rng(runner.cfg.seed)
    drawn = int(rng.integers(1, 10)) * (1 if rng.integers(0, 2) else -1)
    report = classify_aalpha(alpha, lambdas=(1, 2, -3, drawn))
    if runner.cfg.module is not None:
        failing = aalpha_violations(runner.cfg.module, alpha)
        report.record("module-relations", not failing, witness=failing or None)
    return report


def _degree_zero_block(module: GradedModule) -> AAlphaModule:
    return AAlphaModule(module.dims[0], module.matrix("E", 0, 0), module.matrix("F", 0, 0),
                        module.matrix("Psi", 0, 0))


def verma_suite(runner: SuiteRunner) -> Report:
    """Truncated M(U) over a word-cap sweep; dimensions never grow with the cap."""
    cfg, table = runner.cfg, runner.table
    u = runner.module()
    report = Report("verma", config={"degree": cfg.verma_degree, "word_caps": list(range(2, cfg.word_cap + 1))})
    sweep: Dict[int, list] = {}
    previous = None
    module = None
    for cap in range(2, cfg.word_cap + 1):
        try:
            module = build_verma(table, u, cfg.verma_degree, cap, check_stability=cap == cfg.word_cap)
        except RelationInconsistency as e:
            report.record_failure("consistency", modes=[cap], witness=e.witness, detail={"degree": e.degree})
            return report
        sweep[cap] = list(module.dims)
        if previous is not None:
            shrinks = all(a <= b for a, b in zip(module.dims, previous))
            report.record("dims-weakly-decrease", shrinks, modes=[cap], detail={"dims": module.dims})
        previous = module.dims
    zero_block = _degree_zero_block(module)
    report.record("degree-zero-aalpha", not aalpha_violations(zero_block, table.alpha),
                  detail={"dim": zero_block.dim})
    report.summary.update({
        "alpha": scalar_to_json(table.alpha),
        "dims": {str(cap): dims for cap, dims in sweep.items()},
        "stabilized": list(module.stabilized),
        "degree0_dim": module.dims[0],
        "u_dim": u.dim,
        "basis_words": module.basis_words,
    })
    return report


def _stable_prefix(module: GradedModule) -> int:
    """Largest cap such that degrees 0..cap have stabilized (-1 if none)."""
    cap = -1
    for flag in module.stabilized:
        if not flag:
            break
        cap += 1
    return cap


def atilde_suite(runner: SuiteRunner) -> Report:
    """Graded A~(g) relations on the stabilized degrees of M(U)."""
    cfg, table = runner.cfg, runner.table
    try:
        module = build_verma(table, runner.module(), cfg.verma_degree, cfg.word_cap)
    except RelationInconsistency as e:
        report = Report("atilde")
        report.record_failure("consistency", witness=e.witness, detail={"degree": e.degree})
        return report
    cap = _stable_prefix(module)
    if cap < 0:
        report = Report("atilde")
        report.record_failure("stabilized-degrees", detail={"stabilized": module.stabilized})
        return report
    report = verify_graded_relations(table, module, cap)
    report.summary.update({"dims": list(module.dims), "checked_degrees": cap})
    return report


SUITE_FUNCS: Dict[str, Callable[[SuiteRunner], Report]] = {
    "expand": expand_suite,
    "factor": factor_suite,
    "ah": ah_suite,
    "independence": independence_suite,
    "derivation": derivation_suite,
    "phi": phi_suite,
    "vacuum-axioms": vacuum_axioms_suite,
    "generator-products": generator_products_suite,
    "degeneration": degeneration_suite,
    "aalpha": aalpha_suite,
    "verma": verma_suite,
    "atilde": atilde_suite,
}


def run_suite(cfg: RunConfig) -> Report:
    """Run the selected suites and fold them into one report.

    SymmetryViolated and IrrationalRoots from canonicalizing g propagate.
    Under ``all`` the A~(g) suites are skipped for g with a zero or pole at
    0; selecting them explicitly raises UnsupportedG instead.
    """
    cfg.validate()
    cg = canonicalize(cfg.g)
    runner = SuiteRunner(cfg, cg)
    total = Report("+".join(cfg.selected), config=cfg.to_dict())
    for name in cfg.selected:
        logger.info("suite %s started", name)
        start = time.perf_counter()
        try:
            sub = SUITE_FUNCS[name](runner)
        except UnsupportedG as e:
            if not cfg.runs_everything or (name != "aalpha" and name not in ATILDE_SUITES):
                raise
            logger.warning("skipping %s: %s", name, e)
            total.summary.setdefault("skipped", {})[name] = str(e)
            continue
        sub.suite = name
        sub.timing["seconds"] = round(time.perf_counter() - start, 3)
        logger.info("suite %s finished: %s (%s failures)", name, sub.status, sub.failures)
        total.merge(sub)
    return total


def negative_controls(plain_g: RationalFn, super_g: RationalFn, degree_bound: int = 2,
                      window: Tuple[int, int] = (-2, 3), lam: int = 2) -> Dict[str, Report]:
    """Deliberately broken inputs; every report here is expected to FAIL.

    - ``h1+1``: the relations checked against h with h_1 raised by one
    - ``koszul-flip``: super realization without odd transposition signs
    - ``perturbed-U``: U(lambda) with one E0 entry changed
    - ``corrupted-matrix``: M(U(lambda)) with one E_0 entry changed in degree 0
    """
    controls: Dict[str, Report] = {}

    ctx = AhContext.build(canonicalize(plain_g), degree_bound, window)
    h = ctx.h
    bumped = TruncSeries.make(0, [h.coeff(k) + (1 if k == 1 else 0) for k in range(h.trunc)], h.trunc)
    controls["h1+1"] = verify_relations(ctx.with_h(bumped), degree_bound, window)

    flipped = AhContext.build(canonicalize(super_g), degree_bound, window, koszul=False)
    controls["koszul-flip"] = verify_relations(flipped, degree_bound, window)

    u = AAlphaModule.u_lambda(lam)
    perturbed = u.with_entry("E", 0, 1, lam + 1)
    report = Report("perturbed-U", config={"lambda": lam})
    failing = aalpha_violations(perturbed, -1)
    report.record("U(lambda)-relations", not failing, witness=failing or None)
    controls["perturbed-U"] = report

    # U(lambda) is an A[-1]-module, so the Verma control runs over g = -1
    table = component_table(canonicalize(RationalFn.make([-1])), 12)
    module = build_verma(table, u, 1, 2, check_stability=False)
    corrupted = module.with_entry("E", 0, 0, 0, 1, module.matrix("E", 0, 0)[0, 1] + 1)
    controls["corrupted-matrix"] = verify_graded_relations(table, corrupted, 1)

    for name, rep in controls.items():
        logger.info("negative control %s: %s", name, rep.status)
    return controls


def summarize(reports: Sequence[Report]):
    """One pandas table for several reports."""

    frames = [r.to_frame() for r in reports]
    if not frames:
        return pd.DataFrame(columns=["suite", "check", "passed", "failed"])
    return pd.concat(frames, ignore_index=True)
