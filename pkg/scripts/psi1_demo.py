"""Two data trees that DataGL cannot tell apart, separated once a ternary
data comparison ``T(x, y, z) <=> d(x) = d(z)`` is available."""

import itertools

from ppml import decide_bisim_game, eval_ppml
from ppml.core import PointedStructure, Signature
from ppml.syntax import And, Atom, Diamond, Not, to_text
from ppml.translations import REQ

SIG = Signature({"E": 2, REQ: 2, "T": 3})
DGL = Signature({"E": 2, REQ: 2})
EDGES = [(0, 1), (1, 2), (0, 2), (0, 3)]


def data_structure(data, sig=SIG):
    n = len(data)
    rels = {"E": EDGES,
            REQ: [(x, y) for x in range(n) for y in range(n) if data[x] == data[y]]}
    if "T" in sig:
        rels["T"] = [t for t in itertools.product(range(n), repeat=3) if data[t[0]] == data[t[2]]]
    return PointedStructure(sig, n, rels, 0)


def main() -> None:
    data_a, data_b = [0, 1, 2, 0], [0, 1, 0, 1]
    # "T" in formula text means true, so the atom has to be built directly
    eq, t = Atom(REQ), Atom("T")
    psi1 = Diamond(And(Not(eq), Diamond(And(Not(eq), Not(t)))))
    print("edges:", EDGES, " data A:", data_a, " data B:", data_b)
    print("psi1 =", to_text(psi1), "  (T here is the ternary atom)")
    for k in range(4):
        v = decide_bisim_game(data_structure(data_a, DGL), data_structure(data_b, DGL), k)[0]
        print(f"  k={k}: bisimilar over E, R_= : {v}")
    a, b = data_structure(data_a), data_structure(data_b)
    print("psi1 at A:", eval_ppml(a, [0], psi1), " psi1 at B:", eval_ppml(b, [0], psi1))
    print("bisimilar with T, k=2:", decide_bisim_game(a, b, 2)[0])


if __name__ == "__main__":
    main()
