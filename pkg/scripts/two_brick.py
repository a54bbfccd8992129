"""A Garnir belt with more than one brick.

Small shapes in type C_2^(1) have at most one brick per belt, where the
conjectured element is a single term. The shape (7,4) at node (1,4) has
two, and the conjecture predicts 2 psi_{w^{t^A}} m + sigma_1 psi_{w^{t^A}} m.

    python scripts/two_brick.py
"""

import argparse
import json

from klrspecht import combinatorics as cb
from klrspecht import specht as S
from klrspecht import symgroup as sg
from klrspecht.cli import scalar_to_json
from klrspecht.root_data import CartanType


def expansion(mod, g):
    return [{"word": list(sg.canonical_word(mod.basis[i])), "coeff": scalar_to_json(c)} for i, c in sorted(g.vector.items())]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--shape", type=int, nargs="+", default=[7, 4])
    ap.add_argument("--node", type=int, nargs=2, default=[1, 4])
    ap.add_argument("--basis", action="store_true", help="also run the basis check with the conjectured elements")
    args = ap.parse_args()

    ct = CartanType.affine(args.rank)
    lam = cb.Multipartition.of([args.shape])
    node = (*args.node, 1)
    bd = cb.brick_decomposition(ct, (0,), lam, node)
    mod = S.build_permutation_module(ct, (0,), lam)
    conj = S.conjectured_garnir_affine(ct, (0,), lam, node)
    solved = S.garnir_element(ct, (0,), lam, node, "socle")
    print(json.dumps({"bricks": bd.count, "first_row": bd.first_row_count, "second_row": bd.second_row_count,
                      "t_A": str(bd.tableau), "G_A": str(bd.garnir)}))
    print(json.dumps({"conjectured": expansion(mod, conj)}))
    print(json.dumps({"solved": expansion(mod, solved), "solution_dimension": solved.solution_dimension}))
    agree = solved.solution_dimension == 1 and S._same(conj.vector, solved.vector)
    out = {"agree": agree}
    if args.basis:
        out["basis_ok"] = S.verify_basis(ct, (0,), lam, "conjecture").ok
    print(json.dumps(out))
    return 0 if agree else 1


if __name__ == "__main__":
    raise SystemExit(main())
