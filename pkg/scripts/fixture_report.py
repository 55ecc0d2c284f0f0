"""Print the bisimulation facts about the two fixture structures."""

import argparse
import pathlib

from ppml import (build_bisim_span, canonical_code, decide_bisim_game, decide_graded_bisim,
                  is_bounded_morphism, load_structure, unravel)

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", default=str(FIXTURES / "struct_a.json"))
    ap.add_argument("--b", default=str(FIXTURES / "struct_b.json"))
    ap.add_argument("--max-k", type=int, default=5)
    args = ap.parse_args()
    a = load_structure(open(args.a).read())
    b = load_structure(open(args.b).read())

    print(f"{'k':>2}  {'game':>5}  {'graded':>6}  {'|C_k a|':>7}  {'|C_k b|':>7}  codes equal")
    for k in range(args.max_k + 1):
        ua, ub = unravel(a, k), unravel(b, k)
        print(f"{k:>2}  {str(decide_bisim_game(a, b, k)[0]):>5}  "
              f"{str(decide_graded_bisim(a, b, k)):>6}  {len(ua):>7}  {len(ub):>7}  "
              f"{canonical_code(ua.tree) == canonical_code(ub.tree)}")

    span = build_bisim_span(a, b, 2)
    print(f"\nspan at k=2: {span.apex.size} apex nodes, "
          f"legs bounded: {is_bounded_morphism(span.left) and is_bounded_morphism(span.right)}")
    for s, t in span.pairs:
        print("  ", [a.name_of(x) for x in s], "~", [b.name_of(y) for y in t])


if __name__ == "__main__":
    main()
