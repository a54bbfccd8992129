import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from klrspecht import cli, fock
from klrspecht import specht as S
from klrspecht.exact_algebra import LaurentPolynomial
from klrspecht.root_data import CartanType


def run(argv, tmp_path=None):
    out = io.StringIO()
    if tmp_path is not None and "--no-cache" not in argv:
        argv = argv + ["--cache-dir", str(tmp_path)]
    code = cli.main(argv, out)
    return code, [json.loads(line) for line in out.getvalue().splitlines()], out.getvalue()


def test_char_golden(tmp_path):
    code, recs, _ = run(["char", "--shape", "[[3,1]]", "--charge", "[-1]"], tmp_path)
    assert code == 0
    assert [(r["residue"], r["coeff"]) for r in recs] == [
        ([1, 0, 1, 2], [[0, 1]]),
        ([1, 0, 2, 1], [[1, 1]]),
        ([1, 2, 0, 1], [[1, 1]]),
    ]


def test_fock_golden(tmp_path):
    code, recs, _ = run(["fock", "--shape", "[2,2]", "f2"], tmp_path)
    assert code == 0
    assert recs == [
        {"command": "fock", "shape": [[2, 2, 1]], "coeff": [[-1, 1]]},
        {"command": "fock", "shape": [[3, 2]], "coeff": [[0, 1]]},
    ]


def test_branch_and_dimformula(tmp_path):
    code, recs, _ = run(["branch", "--shape", "[[3,2,1]]", "--i", "2"], tmp_path)
    assert code == 0 and recs[0]["ok"]
    code, recs, _ = run(["dimformula", "--nu", "0,1"], tmp_path)
    assert code == 0
    assert recs[0]["value"] == [[0, 1], [2, 1]]


def test_garnir_command(tmp_path):
    code, recs, _ = run(["garnir", "--shape", "[[3,1]]", "--node", "1,1", "--charge", "-1"], tmp_path)
    assert code == 0
    assert recs[0]["terms"] == [{"perm": [2, 3, 4, 1], "word": [1, 2, 3], "coeff": 1}]
    code, recs, _ = run(["garnir", "--type", "aff", "--rank", "2", "--shape", "[[7,4]]", "--node", "1,4", "--method", "conjecture"], tmp_path)
    assert code == 0
    assert sorted(t["coeff"] for t in recs[0]["terms"]) == [1, 2]


def test_verify_and_conjecture(tmp_path):
    code, recs, _ = run(["verify", "--max-n", "3"], tmp_path)
    assert code == 0
    assert recs[-1] == {"command": "verify", "summary": True, "checked": 7, "failed": 0}
    code, recs, _ = run(["conjecture", "--type", "aff", "--rank", "2", "--max-n", "3"], tmp_path)
    assert code == 0 and recs[-1]["failed"] == 0


def test_cache_does_not_change_output(tmp_path):
    argv = ["verify", "--type", "aff", "--rank", "2", "--max-n", "4"]
    _, _, cold = run(argv, tmp_path)
    assert list(tmp_path.glob("*.json"))
    _, _, warm = run(argv, tmp_path)
    S.clear_caches()
    _, _, bare = run(argv + ["--no-cache"])
    assert cold == warm == bare
    _, _, c1 = run(["char", "--shape", "[[2,2]]"], tmp_path)
    _, _, c2 = run(["char", "--shape", "[[2,2]]"], tmp_path)
    assert c1 == c2


def test_parallel_verify_matches_serial(tmp_path):
    _, _, serial = run(["verify", "--max-n", "4", "--no-cache"])
    _, _, parallel = run(["verify", "--max-n", "4", "--no-cache", "--jobs", "2"])
    assert serial == parallel


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["char"],
        ["char", "--shape", "[[2,1"],
        ["fock", "--shape", "[1]", "g2"],
        ["char", "--shape", "[[1,2]]"],
        ["--no-cache", "char", "--shape", "[1]"],
        ["branch", "--shape", "[1]", "--i", "x"],
    ],
)
def test_usage_errors(argv):
    assert run(argv)[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["char", "--shape", "[[2,1]]", "--charge", "0,1"],
        ["char", "--shape", "[[2,1]]", "--type", "aff"],
        ["char", "--shape", "[[2,1]]", "--type", "aff", "--rank", "1"],
        ["garnir", "--shape", "[[2,2]]", "--node", "2,1"],
        ["garnir", "--shape", "[[2,2]]", "--node", "1,1", "--method", "conjecture"],
        ["dimformula", "--nu", "0,1", "--nu2", "0,0"],
        ["branch", "--shape", "[[2,1]]", "--i", "3", "--type", "aff", "--rank", "2"],
        ["conjecture", "--shape", "[[2,1]]"],
    ],
)
def test_semantic_errors(argv):
    assert run(argv + ["--no-cache"])[0] == 3


def test_failure_exit_code(monkeypatch):
    real = S.branch_check

    def broken(*args):
        rep = real(*args)
        rep.predicted = {(7,): LaurentPolynomial.monomial(5)}
        return rep

    monkeypatch.setattr(S, "branch_check", broken)
    code, recs, _ = run(["branch", "--shape", "[[2,1]]", "--i", "0", "--no-cache"])
    assert code == 1 and not recs[0]["ok"]


@given(st.dictionaries(st.integers(-20, 20), st.integers(-50, 50)))
def test_laurent_round_trip(terms):
    p = LaurentPolynomial(terms)
    assert cli.laurent_from_json(json.loads(json.dumps(cli.laurent_to_json(p)))) == p


@given(st.lists(st.integers(-9, 9), max_size=6))
def test_int_list_parsing(xs):
    assert cli.parse_int_list(json.dumps(xs)) == xs
    assert cli.parse_int_list(",".join(map(str, xs))) == xs


def test_record_round_trips():
    char = S.build_specht(CartanType.infinite(), (0,), [[2, 1]]).character
    assert cli.character_from_records(cli.character_records(char)) == char
    v = fock.apply_f(CartanType.infinite(), (0,), 2, fock.FockVector.basis([[2, 2]]))
    assert cli.fock_from_records(cli.fock_records(v)) == v
    assert cli.parse_op_word("e1 f2,K0") == [("e", 1), ("f", 2), ("K", 0)]
    assert tuple(cli.parse_node("2,1")) == (2, 1, 1)
    assert cli.scalar_to_json(Fraction(3, 2)) == "3/2"


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "klrspecht", "char", "--shape", "[1]", "--cache-dir", str(tmp_path)],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"command": "char", "residue": [0], "coeff": [[0, 1]]}
