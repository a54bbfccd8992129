"""Command line interface. Every command prints JSON lines with sorted keys;
Laurent polynomials appear as lists of [exponent, coefficient] pairs."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import combinatorics as cb
from . import fock
from . import specht
from . import symgroup as sg
from .exact_algebra import LaurentPolynomial
from .root_data import CartanType, RootVector

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SEMANTIC = 0, 1, 2, 3


class SemanticError(ValueError):
    pass


# ---------------------------------------------------------------- serialization


def laurent_to_json(p: LaurentPolynomial) -> list[list[int]]:
    return [[e, c] for e, c in p.terms]


def laurent_from_json(data) -> LaurentPolynomial:
    return LaurentPolynomial((int(e), int(c)) for e, c in data)


def scalar_to_json(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def scalar_from_json(x) -> Fraction:
    return Fraction(x)


def character_records(char: dict) -> list[dict]:
    return [{"residue": list(nu), "coeff": laurent_to_json(p)} for nu, p in sorted(char.items())]


def character_from_records(records) -> dict:
    return {tuple(r["residue"]): laurent_from_json(r["coeff"]) for r in records}


def fock_records(v: fock.FockVector) -> list[dict]:
    return [{"shape": [list(c) for c in lam.components], "coeff": laurent_to_json(c)} for lam, c in v.items()]


def fock_from_records(records) -> fock.FockVector:
    return fock.FockVector([(r["shape"], laurent_from_json(r["coeff"])) for r in records])


def dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def emit(record: dict, out) -> None:
    out.write(dumps(record) + "\n")


# ---------------------------------------------------------------- argument parsing


def parse_int_list(text: str) -> list[int]:
    text = text.strip()
    try:
        data = json.loads(text) if text.startswith("[") else [int(x) for x in text.split(",") if x.strip()]
    except (json.JSONDecodeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from exc
    if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}")
    return data


def parse_shape(text: str) -> cb.Multipartition:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"not a bracketed shape: {text!r}") from exc
    if isinstance(data, list) and all(isinstance(x, int) for x in data):
        data = [data]
    try:
        return cb.Multipartition.of(data)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def parse_node(text: str) -> cb.Node:
    parts = parse_int_list(text)
    if len(parts) == 2:
        parts.append(1)
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("a node is r,c or r,c,t")
    return cb.Node(*parts)


def parse_op_word(text: str) -> list[tuple[str, int]]:
    out = []
    for tok in text.replace(",", " ").split():
        name, rest = tok[0], tok[1:]
        if name not in "efK" or not rest.lstrip("-").isdigit():
            raise argparse.ArgumentTypeError(f"bad operator {tok!r}; use e.g. f2 or e1")
        out.append((name, int(rest)))
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", choices=["inf", "aff"], default="inf")
    common.add_argument("--rank", type=int, help="the rank l of the affine type")
    common.add_argument("--charge", type=parse_int_list, default=[0], help="multicharge, e.g. [0] or 0,1")
    common.add_argument("--cache-dir", help="cache directory (default $SPECHT_CACHE_DIR or ~/.cache/klrspecht)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--jobs", type=int, default=1)

    parser = argparse.ArgumentParser(prog="klrspecht", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("char", parents=[common], help="graded character of a Specht module")
    p.add_argument("--shape", type=parse_shape, required=True)

    p = sub.add_parser("verify", parents=[common], help="standard basis check over all shapes up to a size")
    p.add_argument("--max-n", type=int, required=True)

    p = sub.add_parser("branch", parents=[common], help="restriction to residue i against the branching rule")
    p.add_argument("--shape", type=parse_shape, required=True)
    p.add_argument("--i", type=int, required=True)

    p = sub.add_parser("fock", parents=[common], help="apply a word in e_i, f_i, K_i to a Fock basis vector")
    p.add_argument("--shape", type=parse_shape, required=True)
    p.add_argument("word", type=parse_op_word, help="operators applied right to left, e.g. 'e1 f2'")

    p = sub.add_parser("dimformula", parents=[common], help="sum of K_q(lambda, nu) K_q(lambda, nu')")
    p.add_argument("--nu", type=parse_int_list, required=True)
    p.add_argument("--nu2", type=parse_int_list)

    p = sub.add_parser("garnir", parents=[common], help="expansion of a Garnir element")
    p.add_argument("--shape", type=parse_shape, required=True)
    p.add_argument("--node", type=parse_node, required=True)
    p.add_argument("--method", choices=["formula", "socle", "conjecture"])

    p = sub.add_parser("conjecture", parents=[common], help="compare solved and conjectured affine Garnir elements")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--shape", type=parse_shape)
    g.add_argument("--max-n", type=int)
    return parser


def cartan(args) -> CartanType:
    try:
        return CartanType.parse(args.type, args.rank)
    except ValueError as exc:
        raise SemanticError(str(exc)) from exc


def check_job(ct: CartanType, kappa, lam: cb.Multipartition | None = None) -> None:
    if lam is not None and len(kappa) != lam.level:
        raise SemanticError(f"multicharge has length {len(kappa)} but the shape has level {lam.level}")


# ---------------------------------------------------------------- cache


class Cache:
    """Content-addressed JSON store; safe to delete at any time."""

    def __init__(self, directory: str | None, enabled: bool = True):
        self.enabled = enabled
        if directory is None:
            directory = os.environ.get("SPECHT_CACHE_DIR") or str(Path.home() / ".cache" / "klrspecht")
        self.dir = Path(directory)

    @staticmethod
    def key(*parts) -> str:
        blob = json.dumps([__version__, *parts], sort_keys=True, default=str)
        return hashlib.sha256(blob.encode()).hexdigest()

    def get(self, key: str):
        if not self.enabled:
            return None
        path = self.dir / f"{key}.json"
        try:
            return json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return None

    def put(self, key: str, value) -> None:
        if not self.enabled:
            return
        try:
            self.dir.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.dir, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(json.dumps(value, sort_keys=True))
            os.replace(tmp, self.dir / f"{key}.json")
        except OSError:
            pass


def cached(cache: Cache, parts: tuple, compute):
    key = Cache.key(*parts)
    value = cache.get(key)
    if value is None:
        value = compute()
        cache.put(key, value)
    return value


def _job_parts(ct: CartanType, kappa, lam, command: str) -> tuple:
    return (str(ct), list(kappa), [list(c) for c in lam.components], command)


# ---------------------------------------------------------------- commands


def character_document(ct: CartanType, kappa, lam) -> list[dict]:
    return character_records(specht.build_specht(ct, tuple(kappa), lam).character)


def cmd_char(args, cache: Cache, out) -> int:
    ct = cartan(args)
    check_job(ct, args.charge, args.shape)
    records = cached(cache, _job_parts(ct, args.charge, args.shape, "char"), lambda: character_document(ct, args.charge, args.shape))
    for r in records:
        emit({"command": "char", **r}, out)
    return EXIT_OK


def verify_one(type_name: str, rank, kappa, components) -> dict:
    ct = CartanType.parse(type_name, rank)
    lam = cb.Multipartition.of(components)
    rep = specht.verify_basis(ct, tuple(kappa), lam)
    record = {
        "shape": [list(c) for c in lam.components],
        "kappa": list(kappa),
        "spanning": rep.spanning,
        "independent": rep.independent,
        "cyclotomic": rep.cyclotomic,
        "graded_dims": laurent_to_json(rep.graded_dims),
        "witness": rep.witness,
    }
    ok = rep.ok
    if ct.is_affine and len(kappa) == 1:
        conj = specht.conjecture_check(ct, tuple(kappa), lam)
        record["conjecture"] = {"agree": conj.agree, "basis_ok": conj.basis_ok, "nodes": conj.nodes}
        ok = ok and conj.ok
    record["ok"] = ok
    return record


def cmd_verify(args, cache: Cache, out) -> int:
    ct = cartan(args)
    if args.max_n < 0:
        raise SemanticError("--max-n must be non-negative")
    shapes = [lam for n in range(args.max_n + 1) for lam in cb.multipartitions(n, len(args.charge))]
    todo, results = [], {}
    for lam in shapes:
        key = Cache.key(*_job_parts(ct, args.charge, lam, "verify"))
        hit = cache.get(key)
        if hit is None:
            todo.append((lam, key))
        else:
            results[lam] = hit
    jobs = [(args.type, args.rank, list(args.charge), [list(c) for c in lam.components]) for lam, _ in todo]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            computed = list(pool.map(verify_one, *zip(*jobs)))
    else:
        computed = [verify_one(*job) for job in jobs]
    for (lam, key), rec in zip(todo, computed):
        cache.put(key, rec)
        results[lam] = rec
    failed = 0
    for lam in shapes:
        rec = results[lam]
        failed += not rec["ok"]
        emit({"command": "verify", **rec}, out)
    emit({"command": "verify", "summary": True, "checked": len(shapes), "failed": failed}, out)
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_branch(args, cache: Cache, out) -> int:
    ct = cartan(args)
    check_job(ct, args.charge, args.shape)
    if not ct.is_index(args.i):
        raise SemanticError(f"{args.i} is not an index of {ct}")
    rep = specht.branch_check(ct, tuple(args.charge), args.shape, args.i)
    emit(
        {
            "command": "branch",
            "i": args.i,
            "restricted": character_records(rep.restricted),
            "predicted": character_records(rep.predicted),
            "ok": rep.ok,
        },
        out,
    )
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_fock(args, cache: Cache, out) -> int:
    ct = cartan(args)
    check_job(ct, args.charge, args.shape)
    for _, i in args.word:
        if not ct.is_index(i):
            raise SemanticError(f"{i} is not an index of {ct}")
    v = fock.apply_word(ct, tuple(args.charge), args.word, fock.FockVector.basis(args.shape))
    for r in fock_records(v):
        emit({"command": "fock", **r}, out)
    return EXIT_OK


def cmd_dimformula(args, cache: Cache, out) -> int:
    ct = cartan(args)
    nu2 = args.nu2 if args.nu2 is not None else args.nu
    for word in (args.nu, nu2):
        for i in word:
            if not ct.is_index(i):
                raise SemanticError(f"{i} is not an index of {ct}")
    beta = RootVector.of(list(args.nu))
    if RootVector.of(list(nu2)) != beta:
        raise SemanticError("the two residue words have different content")
    value = fock.dim_formula_rhs(ct, tuple(args.charge), beta, args.nu, nu2)
    emit({"command": "dimformula", "nu": list(args.nu), "nu2": list(nu2), "value": laurent_to_json(value)}, out)
    return EXIT_OK


def garnir_records(element: specht.GarnirElement, module) -> list[dict]:
    out = []
    for idx, c in sorted(element.vector.items()):
        w = module.basis[idx]
        out.append({"perm": list(w), "word": list(sg.canonical_word(w)), "coeff": scalar_to_json(c)})
    return out


def cmd_garnir(args, cache: Cache, out) -> int:
    ct = cartan(args)
    check_job(ct, args.charge, args.shape)
    kappa = tuple(args.charge)
    if not cb.is_garnir_node(args.shape, args.node):
        raise SemanticError(f"{tuple(args.node)} is not a Garnir node of {args.shape}")
    if args.method == "conjecture":
        if not ct.is_affine:
            raise SemanticError("the conjectured Garnir element needs affine type")
        element = specht.conjectured_garnir_affine(ct, kappa, args.shape, args.node)
    else:
        element = specht.garnir_element(ct, kappa, args.shape, args.node, args.method)
    module = specht.build_permutation_module(ct, kappa, args.shape)
    emit(
        {
            "command": "garnir",
            "node": list(args.node),
            "method": element.method,
            "solution_dimension": element.solution_dimension,
            "leading": list(element.leading),
            "terms": garnir_records(element, module),
        },
        out,
    )
    return EXIT_OK if element.solution_dimension == 1 else EXIT_FAIL


def cmd_conjecture(args, cache: Cache, out) -> int:
    ct = cartan(args)
    if not ct.is_affine:
        raise SemanticError("the conjecture concerns affine type")
    if len(args.charge) != 1:
        raise SemanticError("the conjecture is stated for level one")
    shapes = [args.shape] if args.shape is not None else [
        lam for n in range(args.max_n + 1) for lam in cb.multipartitions(n, 1)
    ]
    failed = 0
    for lam in shapes:
        check_job(ct, args.charge, lam)
        rep = specht.conjecture_check(ct, tuple(args.charge), lam)
        failed += not rep.ok
        emit(
            {
                "command": "conjecture",
                "shape": [list(c) for c in lam.components],
                "agree": rep.agree,
                "basis_ok": rep.basis_ok,
                "nodes": rep.nodes,
                "detail": rep.basis_detail,
            },
            out,
        )
    emit({"command": "conjecture", "summary": True, "checked": len(shapes), "failed": failed}, out)
    return EXIT_OK if failed == 0 else EXIT_FAIL


COMMANDS = {
    "char": cmd_char,
    "verify": cmd_verify,
    "branch": cmd_branch,
    "fock": cmd_fock,
    "dimformula": cmd_dimformula,
    "garnir": cmd_garnir,
    "conjecture": cmd_conjecture,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    cache = Cache(args.cache_dir, enabled=not args.no_cache)
    try:
        return COMMANDS[args.command](args, cache, out)
    except (SemanticError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
