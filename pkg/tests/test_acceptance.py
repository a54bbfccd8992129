"""One test per acceptance criterion; each prints a PASS or FAIL line."""

import itertools
import random
import time

import pytest

from klrspecht import combinatorics as cb
from klrspecht import fock as F
from klrspecht import specht as S
from klrspecht import symgroup as sg
from klrspecht.exact_algebra import LaurentPolynomial, quantum_integer
from klrspecht.klr_engine import KLRAlgebra, NormalFormElement
from klrspecht.root_data import CartanType

from relations import sweep

CINF = CartanType.infinite()
q = LaurentPolynomial.monomial(1)
ONE = LaurentPolynomial.constant(1)
ZERO = NormalFormElement({})
START = time.monotonic()


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        assert ok, detail

    return emit


def shapes(max_n, level=1):
    return [lam for n in range(max_n + 1) for lam in cb.multipartitions(n, level)]


def word(text):
    return tuple(int(ch) for ch in text)


# ---------------------------------------------------------------- 1


def golden_failures():
    bad = []

    def check(label, cond):
        if not cond:
            bad.append(label)

    big = cb.Multipartition.of([[4, 3, 1, 1], [], [3, 2, 1]])
    check("residues", cb.residue_diagram(CINF, (2, 0, -1), big) == (
        ((2, 3, 4, 5), (1, 2, 3), (0,), (1,)), (), ((1, 0, 1), (2, 1), (3,))))
    check("content", str(cb.content(CINF, (2, 0, -1), big)) == "2a0 + 5a1 + 3a2 + 3a3 + a4 + a5")

    t = cb.Tableau.of([[[1, 4], [2, 5], [6]], [[3, 7, 10], [8, 9]]])
    check("degree", cb.degree(CINF, (2, -1), t) == 3)

    check("garnir tableau", cb.garnir_tableau(big, (1, 3, 1)).rows == (
        ((1, 2, 6, 7), (3, 4, 5), (8,), (9,)), (), ((10, 11, 12), (13, 14), (15,))))
    fig = cb.Multipartition.of([[1], [10, 9, 6, 2]])
    expected = {
        (1, 1, 2): ((3, 4, 5, 6, 7, 8, 9, 10, 11, 12), (2, 13, 17, 18, 19, 20, 21, 22, 23), (14, 15, 16, 24, 25, 26), (27, 28)),
        (2, 6, 2): ((2, 3, 4, 5, 6, 7, 8, 9, 10, 11), (12, 13, 17, 18, 19, 23, 24, 25, 26), (14, 15, 16, 20, 21, 22), (27, 28)),
        (1, 6, 2): ((2, 3, 4, 5, 6, 16, 17, 18, 19, 20), (7, 8, 12, 13, 14, 15, 21, 22, 23), (9, 10, 11, 24, 25, 26), (27, 28)),
    }
    for b, rows in expected.items():
        check(f"generalized garnir {b}", cb.generalized_garnir(fig, (2, 3, 2), b).rows == (((1,),), rows))

    hook = S.build_specht(CINF, (-1,), [[3, 1]])
    check("hook character", hook.character == {word("1012"): ONE, word("1021"): q, word("1201"): q})
    check("hook garnir", hook.submodule.character(0) == {word("2101"): q * q})

    two = quantum_integer(2)
    ch = lambda lam: S.build_specht(CINF, (0,), lam).character  # noqa: E731
    lam, mu, mu1, mu2 = [[3, 2, 1]], [[2, 2]], [[3, 2]], [[2, 2, 1]]
    check("ch lambda", ch(lam) == {word("012102"): two, word("012120"): two, word("011202"): two * two,
                                   word("011220"): two * two, word("011022"): two * two})
    check("ch mu", ch(mu) == {word("0110"): two})
    check("ch mu1", ch(mu1) == {word("01210"): q, word("01120"): q * two, word("01102"): q * two})
    check("ch mu2", ch(mu2) == {word("01210"): ONE, word("01120"): two, word("01102"): two})
    e2 = S.add_characters((ONE, ch(mu1)), (LaurentPolynomial.monomial(-1), ch(mu2)))
    check("E_2", S.restrict_character(ch(lam), 2) == e2 == {word("01210"): two, word("01120"): two * two, word("01102"): two * two})
    f2 = F.f_character(CINF, (0,), mu, 2, ch)
    check("F_2", f2 == S.add_characters((q, ch(mu1)), (ONE, ch(mu2)))
          == {word("01210"): q * two, word("01120"): q * two * two, word("01102"): q * two * two})
    stats = {b: cb.d_statistics(CINF, (0,), cb.Multipartition.of(lam), b)[1] for b in [(1, 3, 1), (3, 1, 1)]}
    check("d_B", stats == {(1, 3, 1): -1, (3, 1, 1): 0})
    ups = {b: cb.d_statistics(CINF, (0,), cb.Multipartition.of(mu), b)[2] for b in [(1, 3, 1), (3, 1, 1)]}
    check("d^B", ups == {(1, 3, 1): 0, (3, 1, 1): 1})
    check("d_2(mu)", cb.d_i(CINF, (0,), mu, 2) == 2)

    aff = CartanType.affine(2)
    brick_shape = cb.Multipartition.of([[15, 7, 3]])
    bd = cb.brick_decomposition(aff, (0,), brick_shape, (1, 5))
    check("brick count", bd.count == 3)
    check("t^A", bd.tableau.rows == ((
        (1, 2, 3, 4, 6, 7, 8, 9, 10, 11, 12, 13, 18, 19, 20), (5, 14, 15, 16, 17, 21, 22), (23, 24, 25)),))
    w1, w2 = bd.transpositions
    check("G^A = w1 w2 t^A", cb.act(sg.compose(w1, w2), bd.tableau) == bd.garnir)
    check("sigma expansion", S.sigma_expansion(bd.first_row_count, bd.second_row_count) == {(): 3, (2,): 2, (1, 2): 1, (1,): 1})
    return bad


def test_criterion_1_goldens(report):
    bad = golden_failures()
    report(1, not bad, ", ".join(bad))


# ---------------------------------------------------------------- 2


def test_criterion_2_basis_sweep(report):
    cases = [(k, lam) for k in (-2, -1, 0, 1, 2) for lam in shapes(6)]
    cases += [(k, lam) for k in ((0, 0), (0, 1), (2, -1)) for lam in shapes(5, 2)]
    bad = []
    for kappa, lam in cases:
        kappa = kappa if isinstance(kappa, tuple) else (kappa,)
        rep = S.verify_basis(CINF, kappa, lam)
        if not rep.ok:
            bad.append((kappa, str(lam), rep.witness))
    report(2, not bad, f"{len(cases)} cases, {len(bad)} failures {bad[:3]}")


# ---------------------------------------------------------------- 3


def test_criterion_3_branching(report):
    checked, bad = 0, []
    for kappa in range(-2, 3):
        for lam in shapes(6):
            if not lam.size:
                continue
            for i in range(abs(kappa) + lam.size + 2):
                checked += 1
                if not S.branch_check(CINF, (kappa,), lam, i).ok:
                    bad.append((kappa, str(lam), i))
    report(3, not bad, f"{checked} cases, {len(bad)} failures {bad[:3]}")


# ---------------------------------------------------------------- 4


def _epsilon(alg, nu):
    e = alg.idempotent(nu)
    a, b, c = nu
    if (a, b, c) == (1, 0, 1):
        return alg.x(1, nu) + alg.x(3, nu)
    if a == c and abs(a - b) == 1 and b != 0:
        return e
    return ZERO


def _braid_defect_failures():
    alg = KLRAlgebra(CINF)
    P = lambda r, v: alg.multiply_generator(("psi", r), v)  # noqa: E731
    bad = []
    for nu in itertools.product(range(5), repeat=3):
        e = alg.idempotent(nu)
        if P(2, P(1, P(2, e))) - P(1, P(2, P(1, e))) != _epsilon(alg, nu):
            bad.append(("braid", nu))
    return bad


def _far(u, v):
    return abs(u - v) >= 2


def _block_square_failures(samples=6, seed=1):
    alg = KLRAlgebra(CINF)
    rng = random.Random(seed)
    bad = []
    for a in range(1, 5):
        for b in range(1, 5):
            for _ in range(samples):
                tail = (rng.randrange(6),) if rng.random() < 0.5 else ()
                v = tuple(rng.randrange(8) for _ in range(a + 1))
                if all(_far(v[i], v[a]) for i in range(a)):
                    if alg.psi_block([1, 1], [a, 1] + ([1] if tail else []), v + tail) != alg.idempotent(v + tail):
                        bad.append(("(1)", a, v + tail))
                if all(_far(v[0], v[i]) for i in range(1, a + 1)):
                    if alg.psi_block([1, 1], [1, a] + ([1] if tail else []), v + tail) != alg.idempotent(v + tail):
                        bad.append(("(2)", a, v + tail))
                w = tuple(rng.randrange(8) for _ in range(a + b))
                if all(_far(w[i], w[j]) for i in range(a) for j in range(a, a + b)):
                    if alg.psi_block([1, 1], [a, b], w) != alg.idempotent(w):
                        bad.append(("(5)", a, b, w))
            # one hand-made instance per (a, b) so that every case is exercised
            far = tuple(range(0, 2 * a, 2)) + tuple(range(2 * a + 20, 2 * a + 20 + 2 * b, 2))
            if alg.psi_block([1, 1], [a, b], far) != alg.idempotent(far):
                bad.append(("(5)", a, b, far))
            one = (2 * a + 20,) + tuple(range(0, 2 * a, 2))
            if alg.psi_block([1, 1], [1, a], one) != alg.idempotent(one):
                bad.append(("(2)", a, one))
            if alg.psi_block([1, 1], [a, 1], one[1:] + one[:1]) != alg.idempotent(one[1:] + one[:1]):
                bad.append(("(1)", a, one))
    return bad


def _gab_failures():
    alg = KLRAlgebra(CINF)

    def xs(elt, rs):
        out = ZERO
        for r in rs:
            out = out + alg.multiply_generator(("x", r), elt)
        return out

    bad = []
    for i in range(2):
        for a1 in range(1, 4):
            for a3 in range(1, 4):
                nu = tuple(range(i + 1, i + a1 + 1)) + tuple(list(range(i, 0, -1)) + [0] + list(range(1, i + 1))) + tuple(range(i + a3, i, -1))
                a2 = 2 * i + 1
                lhs = alg.psi_block([2, 1, 2], [a1, a2, a3], nu) - alg.psi_block([1, 2, 1], [a1, a2, a3], nu)
                rs = [1, a1 + a3 + 1] if i == 0 else [1, a1 + 1, a1 + a2, a1 + a2 + a3]
                elt = xs(alg.idempotent(nu), rs)
                cur = [1, a1 - 1, a2, a3 - 1, 1]
                factors = []
                for blk in reversed([1, 4, 2, 3, 2]):
                    start = sum(cur[: blk - 1])
                    factors.append(sg.s2(start, cur[blk - 1], cur[blk], len(nu)))
                    cur[blk - 1], cur[blk] = cur[blk], cur[blk - 1]
                for p in factors:
                    for letter in reversed(sg.canonical_word(p)):
                        elt = alg.multiply_generator(("psi", letter), elt)
                if lhs != elt:
                    bad.append(("G^AB", i, a1, a3))
    return bad


def test_criterion_4_engine_relations(report):
    bad = []
    for ct, idx in [(CINF, range(4)), (CartanType.affine(2), range(3)), (CartanType.affine(3), range(4))]:
        for n in range(1, 5):
            bad.extend(sweep(ct, tuple(idx), n, samples=2, seed=n))
    bad.extend(_braid_defect_failures())
    bad.extend(_block_square_failures())
    bad.extend(_gab_failures())
    report(4, not bad, f"{len(bad)} failures {bad[:3]}")


# ---------------------------------------------------------------- 5


def test_criterion_5_fock(report):
    bad = []
    for kappa in [(0,), (1,), (0, 1)]:
        rep = F.commutator_check(CINF, kappa, 5)
        if not rep.ok:
            bad.append(("commutator", kappa, rep.failures[:2]))
    for kappa in [(0,), (-1,), (2,)]:
        for lam in shapes(6):
            if lam.size and F.K_table(CINF, kappa, lam) != S.build_specht(CINF, kappa, lam).character:
                bad.append(("K_q", kappa, str(lam)))
    for kappa in [(0,), (1,), (0, 1)]:
        for n in range(6):
            if not F.dim_formula_consistency(CINF, kappa, n).ok:
                bad.append(("dim formula", kappa, n))
    report(5, not bad, f"{len(bad)} failures {bad[:3]}")


# ---------------------------------------------------------------- 6


def test_criterion_6_affine_conjecture(report):
    rows = []
    for ell in (2, 3):
        ct = CartanType.affine(ell)
        for lam in shapes(6):
            if not lam.size:
                continue
            rep = S.conjecture_check(ct, (0,), lam)
            rows.append((ell, str(lam), rep.agree, rep.basis_ok))
    disagree = [r for r in rows if not (r[2] and r[3])]
    with_status = all(isinstance(r[2], bool) for r in rows)
    detail = f"{len(rows)} cases reported, {len(rows) - len(disagree)} agree"
    if disagree:
        detail += f"; disagreement (a finding) at {disagree[:5]}"
    # completion with a status for every case is what this criterion asks for
    report(6, with_status and len(rows) == 2 * (len(shapes(6)) - 1), detail)


# ---------------------------------------------------------------- 7


def test_criterion_7_wall_time(report):
    # runs last in this file; the other suites are far cheaper than the sweeps above
    elapsed = time.monotonic() - START
    report(7, elapsed < 15 * 60, f"acceptance sweeps took {elapsed:.0f}s")
