"""Standard-tableau basis sweep in type C_inf.

Checks spanning, independence and the cyclotomic relation for every shape
in range and compares the quotient character with the tableau generating
function. Prints one JSON line per case and a summary.

    python scripts/basis_sweep.py --max-n 6 --max-n-level2 5
"""

import argparse
import json
import time

from klrspecht import combinatorics as cb
from klrspecht import specht as S
from klrspecht.root_data import CartanType


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--max-n-level2", type=int, default=5)
    ap.add_argument("--quiet", action="store_true", help="print only the summary")
    args = ap.parse_args()

    ct = CartanType.infinite()
    cases = [((k,), lam) for k in (-2, -1, 0, 1, 2) for n in range(args.max_n + 1) for lam in cb.multipartitions(n, 1)]
    cases += [
        (k, lam)
        for k in ((0, 0), (0, 1), (2, -1))
        for n in range(args.max_n_level2 + 1)
        for lam in cb.multipartitions(n, 2)
    ]
    start = time.monotonic()
    failed = 0
    for kappa, lam in cases:
        rep = S.verify_basis(ct, kappa, lam)
        same = S.build_specht(ct, kappa, lam).character == S.tableau_character(ct, kappa, lam)
        ok = rep.ok and same
        failed += not ok
        if not args.quiet or not ok:
            print(json.dumps({"kappa": list(kappa), "shape": str(lam), "dim": rep.graded_dims.at_one(),
                              "ok": ok, "witness": rep.witness}))
    print(json.dumps({"summary": True, "cases": len(cases), "failed": failed,
                      "seconds": round(time.monotonic() - start, 2)}))
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
