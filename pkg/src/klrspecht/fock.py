"""The level-l Fock space F(kappa), the tableau statistics K_q and the
graded dimension formula, with character-level consistency checks."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Mapping, Sequence

from . import combinatorics as cb
from .exact_algebra import LaurentPolynomial, signed_quantum_integer
from .root_data import CartanType, DominantWeight, RootVector

ONE = LaurentPolynomial.constant(1)


class FockVector:
    """Finite linear combination of multipartitions with Laurent coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict[cb.Multipartition, LaurentPolynomial] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        level = None
        for lam, c in items:
            lam = cb.Multipartition.of(lam)
            if level is None:
                level = lam.level
            elif lam.level != level:
                raise ValueError("all multipartitions in a Fock vector must share the level")
            if isinstance(c, int):
                c = LaurentPolynomial.constant(c)
            acc[lam] = acc.get(lam, LaurentPolynomial()) + c
        self._terms = {lam: c for lam, c in sorted(acc.items(), key=lambda kv: _key(kv[0])) if c}

    @classmethod
    def basis(cls, lam) -> FockVector:
        return cls({cb.Multipartition.of(lam): ONE})

    @classmethod
    def vacuum(cls, level: int) -> FockVector:
        return cls.basis(cb.Multipartition(tuple(() for _ in range(level))))

    def items(self):
        return self._terms.items()

    def __getitem__(self, lam) -> LaurentPolynomial:
        return self._terms.get(cb.Multipartition.of(lam), LaurentPolynomial())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, FockVector) and self._terms == other._terms

    def __add__(self, other: FockVector) -> FockVector:
        return FockVector(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> FockVector:
        return FockVector({lam: -c for lam, c in self._terms.items()})

    def __sub__(self, other: FockVector) -> FockVector:
        return self + (-other)

    def scale(self, c: LaurentPolynomial) -> FockVector:
        return FockVector({lam: c * v for lam, v in self._terms.items()})

    def __repr__(self):
        inner = ", ".join(f"({c})*{lam}" for lam, c in self._terms.items())
        return f"FockVector({inner})"


def _key(lam: cb.Multipartition):
    return (lam.size, lam.components)


def apply_f(ct: CartanType, kappa: Sequence[int], i: int, v: FockVector) -> FockVector:
    """f_i adds an addable i-node A with weight q^{-d^A}."""
    ct.check_index(i)
    out = []
    for lam, c in v.items():
        for a in cb.addable_removable(ct, kappa, lam, i)[0]:
            out.append((lam.add(a), c.shift(-cb.d_statistics(ct, kappa, lam, a)[2])))
    return FockVector(out)


def apply_e(ct: CartanType, kappa: Sequence[int], i: int, v: FockVector) -> FockVector:
    """e_i removes a removable i-node A with weight q^{d_A}."""
    ct.check_index(i)
    out = []
    for lam, c in v.items():
        for a in cb.addable_removable(ct, kappa, lam, i)[1]:
            out.append((lam.remove(a), c.shift(cb.d_statistics(ct, kappa, lam, a)[1])))
    return FockVector(out)


def apply_K(ct: CartanType, kappa: Sequence[int], i: int, v: FockVector) -> FockVector:
    """K_i scales lambda by q_i^{d_i(lambda)}, extended linearly."""
    ct.check_index(i)
    di = ct.symmetrizer(i)
    return FockVector([(lam, c.shift(di * cb.d_i(ct, kappa, lam, i))) for lam, c in v.items()])


def apply_word(ct: CartanType, kappa: Sequence[int], word: Sequence[tuple[str, int]], v: FockVector) -> FockVector:
    """Apply operators such as [('f', 2), ('e', 1)], rightmost first."""
    ops = {"f": apply_f, "e": apply_e, "K": apply_K, "k": apply_K}
    for name, i in reversed(list(word)):
        if name not in ops:
            raise ValueError(f"unknown Fock operator {name!r}")
        v = ops[name](ct, kappa, i, v)
    return v


# ---------------------------------------------------------------- K_q and the dimension formula


def K_q(ct: CartanType, kappa: Sequence[int], lam, nu: Sequence[int] | None = None) -> LaurentPolynomial:
    """Sum of q^{deg t} over standard t, restricted to res t = nu when given."""
    lam = cb.Multipartition.of(lam)
    total: dict[int, int] = defaultdict(int)
    target = None if nu is None else tuple(nu)
    for t in cb.enumerate_tableaux(lam, "standard"):
        if target is not None and cb.residue_sequence(ct, kappa, t) != target:
            continue
        total[cb.degree(ct, kappa, t)] += 1
    return LaurentPolynomial(total)


def K_table(ct: CartanType, kappa: Sequence[int], lam) -> dict[tuple, LaurentPolynomial]:
    """All K_q(lambda, nu) at once, keyed by residue word."""
    acc: dict = defaultdict(lambda: defaultdict(int))
    for t in cb.enumerate_tableaux(lam, "standard"):
        acc[cb.residue_sequence(ct, kappa, t)][cb.degree(ct, kappa, t)] += 1
    return {nu: LaurentPolynomial(d) for nu, d in sorted(acc.items())}


def multipartitions_of_content(ct: CartanType, kappa: Sequence[int], beta: RootVector) -> list[cb.Multipartition]:
    return [lam for lam in cb.multipartitions(beta.height, len(kappa)) if cb.content(ct, kappa, lam) == beta]


def dim_formula_rhs(ct: CartanType, kappa: Sequence[int], beta, nu: Sequence[int], nu2: Sequence[int]) -> LaurentPolynomial:
    """Sum over lambda of content beta of K_q(lambda, nu) K_q(lambda, nu')."""
    beta = beta if isinstance(beta, RootVector) else RootVector.of(beta)
    for word in (nu, nu2):
        if RootVector.of(list(word)) != beta:
            raise ValueError(f"residue word {list(word)} does not have content {beta}")
    total = LaurentPolynomial()
    for lam in multipartitions_of_content(ct, kappa, beta):
        table = K_table(ct, kappa, lam)
        a, b = table.get(tuple(nu)), table.get(tuple(nu2))
        if a and b:
            total = total + a * b
    return total


@dataclass
class Report:
    ok: bool
    checked: int
    failures: list = field(default_factory=list)


def dim_formula_consistency(ct: CartanType, kappa: Sequence[int], n: int) -> Report:
    """At q = 1, the dimension formula summed over all pairs (nu, nu') of equal
    content recovers sum over lambda of |Std(lambda)|^2; at level one that is n!."""
    lhs = 0
    by_content: dict = defaultdict(list)
    for lam in cb.multipartitions(n, len(kappa)):
        lhs += K_q(ct, kappa, lam).at_one() ** 2
        by_content[cb.content(ct, kappa, lam)].append(lam)
    rhs = 0
    for lams in by_content.values():
        tables = [K_table(ct, kappa, lam) for lam in lams]
        words = sorted({nu for table in tables for nu in table})
        for nu in words:
            for nu2 in words:
                for table in tables:
                    a, b = table.get(nu), table.get(nu2)
                    if a and b:
                        rhs += (a * b).at_one()
    failures = []
    if lhs != rhs:
        failures.append({"n": n, "lhs": lhs, "rhs": rhs})
    if len(kappa) == 1 and lhs != factorial(n):
        failures.append({"n": n, "sum_of_squares": lhs, "factorial": factorial(n)})
    return Report(not failures, 1, failures)


# ---------------------------------------------------------------- commutators


def relevant_indices(ct: CartanType, kappa: Sequence[int], n_max: int) -> list[int]:
    if ct.is_affine:
        return list(ct.indices())
    bound = max(abs(k) for k in kappa) + n_max + 1
    return list(ct.indices(bound))


def all_multipartitions(n_max: int, level: int) -> list[cb.Multipartition]:
    return [lam for n in range(n_max + 1) for lam in cb.multipartitions(n, level)]


def commutator_check(ct: CartanType, kappa: Sequence[int], n_max: int) -> Report:
    """(e_i f_j - f_j e_i) lambda = delta_ij [d_i(lambda)]_{q_i} lambda on all lambda of size <= n_max."""
    kappa = tuple(kappa)
    idx = relevant_indices(ct, kappa, n_max)
    failures = []
    checked = 0
    for lam in all_multipartitions(n_max, len(kappa)):
        v = FockVector.basis(lam)
        for i in idx:
            for j in idx:
                lhs = apply_e(ct, kappa, i, apply_f(ct, kappa, j, v)) - apply_f(ct, kappa, j, apply_e(ct, kappa, i, v))
                if i == j:
                    rhs = v.scale(signed_quantum_integer(cb.d_i(ct, kappa, lam, i), ct.symmetrizer(i)))
                else:
                    rhs = FockVector()
                checked += 1
                if lhs != rhs:
                    failures.append({"shape": str(lam), "i": i, "j": j})
    return Report(not failures, checked, failures)


# ---------------------------------------------------------------- characters


def _add_char(acc: dict, char: Mapping, coeff: LaurentPolynomial) -> None:
    for nu, poly in char.items():
        acc[nu] = acc.get(nu, LaurentPolynomial()) + coeff * poly


def _clean(acc: Mapping) -> dict:
    return {nu: p for nu, p in sorted(acc.items()) if p}


def f_shift(ct: CartanType, kappa: Sequence[int], lam, b) -> int:
    """Grading shift of Sp^{lam + b} inside F_i Sp^lam."""
    lam = cb.Multipartition.of(lam)
    plain, _, above = cb.d_statistics(ct, kappa, lam, b)
    i = cb.residue_of_node(ct, kappa, b)
    return -above + (plain - 1) * ct.symmetrizer(i)


def f_character(ct: CartanType, kappa: Sequence[int], lam, i: int, char_of) -> dict:
    """Character of F_i Sp^lam as the shifted sum of Specht characters."""
    lam = cb.Multipartition.of(lam)
    acc: dict = {}
    for b in cb.addable_removable(ct, kappa, lam, i)[0]:
        _add_char(acc, char_of(lam.add(b)), LaurentPolynomial.monomial(f_shift(ct, kappa, lam, b)))
    return _clean(acc)


def restrict(char: Mapping, i: int) -> dict:
    acc: dict = {}
    for nu, poly in char.items():
        if nu and nu[-1] == i:
            acc[nu[:-1]] = acc.get(nu[:-1], LaurentPolynomial()) + poly
    return _clean(acc)


def fock_to_character(v: FockVector, char_of) -> dict:
    """The image of a Fock vector in the Grothendieck group, as a character."""
    acc: dict = {}
    for mu, c in v.items():
        _add_char(acc, char_of(mu), c)
    return _clean(acc)


def categorification_check(ct: CartanType, kappa: Sequence[int], n_max: int, char_of=None) -> Report:
    """Character-level checks that lambda -> [Sp^lambda] intertwines the Fock action.

    Characters come from the explicit Specht quotients. For every lambda of
    size < n_max and all i, j:

    * honest restriction of characters realises e_i, so that
      res_i ch(f_j lambda) - ch(f_j e_i lambda) = delta_ij [d_i(lambda)]_{q_i} ch(lambda);
    * the character of F_i Sp^lambda, summed over addable i-nodes with the
      grading shift -d^b + (d_i(lambda) - 1) d_i, is q^{(d_i(lambda) - 1) d_i}
      times the image of f_i lambda.
    """
    from .specht import build_specht

    kappa = tuple(kappa)
    if char_of is None:
        def char_of(mu):
            return build_specht(ct, kappa, mu).character

    idx = relevant_indices(ct, kappa, n_max)
    failures = []
    checked = 0
    for lam in all_multipartitions(n_max - 1, len(kappa)):
        v = FockVector.basis(lam)
        ch = char_of(lam)
        for i in idx:
            for j in idx:
                lhs = dict(restrict(fock_to_character(apply_f(ct, kappa, j, v), char_of), i))
                fe = fock_to_character(apply_f(ct, kappa, j, apply_e(ct, kappa, i, v)), char_of)
                _add_char(lhs, fe, LaurentPolynomial.constant(-1))
                rhs: dict = {}
                if i == j:
                    _add_char(rhs, ch, signed_quantum_integer(cb.d_i(ct, kappa, lam, i), ct.symmetrizer(i)))
                checked += 1
                if _clean(lhs) != _clean(rhs):
                    failures.append({"shape": str(lam), "i": i, "j": j, "check": "commutator"})
            shift = (cb.d_i(ct, kappa, lam, i) - 1) * ct.symmetrizer(i)
            image = fock_to_character(apply_f(ct, kappa, i, v).scale(LaurentPolynomial.monomial(shift)), char_of)
            checked += 1
            if f_character(ct, kappa, lam, i, char_of) != image:
                failures.append({"shape": str(lam), "i": i, "check": "induction"})
    return Report(not failures, checked, failures)


def highest_weight(ct: CartanType, kappa: Sequence[int]) -> DominantWeight:
    return DominantWeight.from_multicharge(ct, kappa)
