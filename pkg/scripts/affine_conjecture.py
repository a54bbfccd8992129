"""Compare solved and conjectured Garnir elements in type C_l^(1).

For each one-component shape the socle solve is run at every Garnir node
and matched against the brick formula; the conjectured elements are then
used to build the Specht quotient and the basis check is repeated. A
disagreement is printed as a finding and does not stop the sweep.

    python scripts/affine_conjecture.py --ranks 2 3 --max-n 7
"""

import argparse
import json
import time
from collections import Counter

from klrspecht import combinatorics as cb
from klrspecht import specht as S
from klrspecht.root_data import CartanType


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ranks", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--charge", type=int, default=0)
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()

    start = time.monotonic()
    bricks = Counter()
    findings = []
    total = 0
    for ell in args.ranks:
        ct = CartanType.affine(ell)
        for n in range(1, args.max_n + 1):
            for lam in cb.multipartitions(n, 1):
                rep = S.conjecture_check(ct, (args.charge,), lam)
                total += 1
                for node in rep.nodes:
                    bricks[(ell, node["bricks"])] += 1
                if not rep.ok:
                    findings.append({"rank": ell, "shape": str(lam), "nodes": rep.nodes, "detail": rep.basis_detail})
                print(json.dumps({"rank": ell, "shape": str(lam), "agree": rep.agree, "basis_ok": rep.basis_ok,
                                  "socle_dims": sorted({x["socle_dimension"] for x in rep.nodes})}))
    print(json.dumps({
        "summary": True,
        "cases": total,
        "disagreements": len(findings),
        "garnir_nodes_by_brick_count": {f"l={e},k={k}": c for (e, k), c in sorted(bricks.items())},
        "seconds": round(time.monotonic() - start, 2),
    }))
    for f in findings:
        print(json.dumps({"finding": f}))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
