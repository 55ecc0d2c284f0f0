"""Run the satisfiability reduction against brute force over all small formulas."""

import argparse
import time

from ppml import brute_force_ppml_sat, ppml_sat, validate_pp_tree
from ppml.generators import SIG_EPS, formulas_up_to
from ppml.syntax import TOP, Atom, modal_depth, to_text


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--connectives", type=int, default=3)
    ap.add_argument("--max-depth", type=int, default=2)
    ap.add_argument("--show", type=int, default=5, help="print this many sat models")
    args = ap.parse_args()

    # n connectives allow at most n diamonds, hence n + 1 nodes suffice
    max_nodes = args.connectives + 1
    start = time.perf_counter()
    total = sat = disagree = 0
    shown = 0
    for f in formulas_up_to([Atom("p"), Atom("S"), TOP], args.connectives):
        if modal_depth(f) > args.max_depth:
            continue
        total += 1
        res = ppml_sat(f, SIG_EPS)
        oracle = brute_force_ppml_sat(f, SIG_EPS, max_nodes=max_nodes, max_branching=max_nodes)
        disagree += res.verdict != oracle.verdict
        if res.verdict:
            sat += 1
            validate_pp_tree(res.model.underlying)
            if shown < args.show:
                m = res.model.underlying
                print(f"{to_text(f):<28} model: {m.universe_size} nodes, "
                      + ", ".join(f"{n}={sorted(m.relations[n])}" for n in m.signature))
                shown += 1
    print(f"\n{total} formulas, {sat} satisfiable, {disagree} disagreements "
          f"({time.perf_counter() - start:.1f}s)")


if __name__ == "__main__":
    main()
