"""Demo script for qva."""

from config import configure_logging
from data.sample_functions import ACCEPTANCE_G, SAMPLE_SUPER, SAMPLE_U2_JSON
from src.ding_iohara import classify_aalpha, component_table
from src.ratfunc import canonicalize, factor_h, parse_rational_function
from src.serialization import module_from_json
from src.vacuum import AhContext, apply_mode, generator_vectors, verify_pbw_independence
from src.verma import build_verma, verify_graded_relations


def main():
    """Walk through g -> h -> A(h) vacuum module -> A[alpha] -> M(U)."""
    configure_logging("WARNING")

    for name, source in (("one root", ACCEPTANCE_G["one_root"]), ("super", SAMPLE_SUPER)):
        print(f"\n📝 g = {source} ({name})")
        print("=" * 80)

        cg = canonicalize(parse_rational_function(source))
        print(f"canonical form: sign={cg.sign}, l={cg.l}, roots={[str(r) for r in cg.roots]}")
        fact = factor_h(cg, 8)
        print(f"h(x) = {fact.h}")
        print(f"q(x) = {fact.q}")

        ctx = AhContext.build(cg, degree_bound=2, window=(-2, 3))
        gens = generator_vectors(ctx)
        print(f"e_0 f = {apply_mode(ctx, 'e', 0, gens['f'])}")
        print(f"e(-1)e(-1)|0> = {apply_mode(ctx, 'e', -1, gens['e'])}")
        ranks = verify_pbw_independence(ctx, 3).summary["ranks"]
        for d, row in ranks.items():
            print(f"degree {d}: rank {row['rank']} of {row['count']}")

    print("\n📝 A[alpha] classification")
    print("=" * 80)
    for alpha in (-1, 2, 1):
        report = classify_aalpha(alpha)
        print(f"alpha={alpha}: {report.summary['classification']} ({report.status})")

    print("\n📝 Truncated M(U(2)) for g = -1")
    print("=" * 80)
    table = component_table(canonicalize(parse_rational_function(ACCEPTANCE_G["reciprocal_pair"])), 12)
    module = build_verma(table, module_from_json(SAMPLE_U2_JSON), degree_cap=2, word_cap=3)
    print(f"dims: {module.dims}, stabilized: {module.stabilized}")
    print(f"degree 1 basis: {module.basis_words[1]}")
    print(f"graded relations: {verify_graded_relations(table, module).status}")

    print("\n✅ Done")


if __name__ == "__main__":
    main()
