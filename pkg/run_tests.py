"""Run the acceptance suites over the sample inputs."""

import sys
from pathlib import Path

# Add project root to path
project_root = str(Path(__file__).parent)
if project_root not in sys.path:
    sys.path.append(project_root)

from config import configure_logging, validate_settings
from data.sample_functions import (
    ACCEPTANCE_G,
    ALPHA_SAMPLES,
    EXPECTED_PBW_COUNTS,
    SAMPLE_ALPHA_MINUS_ONE,
    SAMPLE_SUPER,
    SAMPLE_THREE_ROOTS,
)
from src.ding_iohara import classify_aalpha
from src.evaluation import RunConfig, negative_controls, run_suite, summarize
from src.ratfunc import parse_rational_function


def _run(label, g, suites, **kwargs):
    cfg = RunConfig(g=parse_rational_function(g), suites=tuple(suites), **kwargs)
    report = run_suite(cfg)
    report.suite = f"{label}: {report.suite}"
    marker = "✅" if report.passed else "❌"
    print(f"{marker} {report.suite} ({report.failures} failures)")
    return report


def main():
    """Main entry point for the acceptance run."""
    print("🚀 Starting qva acceptance run")
    print("=" * 80)

    configure_logging("WARNING")
    validate_settings()

    reports = []
    try:
        print("\n📊 A(h) relations, factorization and expansions...")
        for name, g in list(ACCEPTANCE_G.items()) + [("three_roots", SAMPLE_THREE_ROOTS)]:
            reports.append(_run(name, g, ["expand", "factor", "ah", "generator-products"],
                                degree_bound=4, mode_window=(-4, 5), series_trunc=16))

        print("\n📊 P-B-W independence up to degree 5...")
        for label, g in (("plain", ACCEPTANCE_G["one_root"]), ("super", SAMPLE_SUPER)):
            report = _run(label, g, ["independence"], degree_bound=5, mode_window=(-1, 1))
            ranks = report.summary["independence"]["ranks"]
            counts = [ranks[d]["count"] for d in range(6)]
            ok = counts == EXPECTED_PBW_COUNTS[label][:6]
            print(f"   {'✅' if ok else '❌'} counts {counts}")
            report.record("expected-counts", ok, detail={"counts": counts})
            reports.append(report)

        print("\n📊 Derivation, phi and degeneration...")
        reports.append(_run("one_root", ACCEPTANCE_G["one_root"], ["derivation", "phi", "vacuum-axioms"],
                            degree_bound=3, mode_window=(-3, 4)))
        reports.append(_run("super", SAMPLE_SUPER, ["derivation", "vacuum-axioms", "ah"],
                            degree_bound=3, mode_window=(-3, 4)))
        reports.append(_run("one", "1", ["degeneration"], degree_bound=5, mode_window=(-5, 6)))

        print("\n📊 A[alpha] classification...")
        for alpha in [ALPHA_SAMPLES["u_lambda"], ALPHA_SAMPLES["open"]] + ALPHA_SAMPLES["nilpotent"]:
            report = classify_aalpha(alpha)
            print(f"{'✅' if report.passed else '❌'} alpha={alpha}: {report.summary['classification']}")
            reports.append(report)

        print("\n📊 Truncated M(U(2)) for alpha = -1, word caps 2..4...")
        reports.append(_run("alpha=-1", SAMPLE_ALPHA_MINUS_ONE, ["verma", "atilde"],
                            degree_bound=0, verma_degree=2, word_cap=4))

        print("\n📊 Negative controls (each must FAIL)...")
        controls = negative_controls(parse_rational_function(ACCEPTANCE_G["one_root"]),
                                     parse_rational_function(SAMPLE_SUPER))
        controls_ok = True
        for name, report in controls.items():
            caught = not report.passed
            controls_ok = controls_ok and caught
            print(f"{'✅' if caught else '❌'} {name}: {report.status}")

    except Exception as e:
        print(f"\n❌ Error during the acceptance run: {type(e).__name__}: {e}")
        return 1

    print("\nSummary:")
    print("-" * 40)
    table = summarize(reports)
    print(table.groupby("suite")[["passed", "failed"]].sum().to_string())

    all_passed = all(r.passed for r in reports) and controls_ok
    print("\n✅ All acceptance checks passed" if all_passed else "\n❌ Some acceptance checks failed")
    return 0 if all_passed else 1


if __name__ == "__main__":
    exit(main())
