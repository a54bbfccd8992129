"""Normal forms in the quiver Hecke algebra R(beta) of type C_inf or C_l^(1).

Every element is written in the basis psi_w x^a e(nu), where psi_w uses the
canonical reduced word of w (:func:`symgroup.canonical_word`) and nu is the
right idempotent. Left multiplication by a generator is computed by
recursion on the length of w:

* ``psi_r psi_w`` with l(s_r w) > l(w): the word (r) + can(w) is reduced and
  is rewritten to can(s_r w) by commutation and braid moves. Each braid move
  contributes the error term of the braid relation.
* ``psi_r psi_w`` with l(s_r w) < l(w): write can(w) as (r) + can(s_r w) plus
  the error of that rewriting, then apply the quadratic relation.
* ``x_r psi_w``: peel off the first letter j of can(w) and use the x/psi
  commutation relations.

Inside the engine an element with a fixed right idempotent nu is a dict
``{(w, a): coeff}``. In truncated mode every term with a nonzero exponent
vector is dropped; this computes in the quotient of R(beta) e(nu) by the
left ideal generated by the x_i e(nu), which is all the module code needs.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import symgroup as sg
from .root_data import CartanType, Kind

sys.setrecursionlimit(max(sys.getrecursionlimit(), 100000))

Poly = dict  # exponent tuple -> integer coefficient


def q_polynomial(ct: CartanType, i: int, j: int) -> dict[tuple[int, int], int]:
    """Q_{i,j}(u, v) as {(deg_u, deg_v): coeff}."""
    ct.check_index(i)
    ct.check_index(j)
    return dict(_q_polynomial(ct, i, j))


@lru_cache(maxsize=None)
def _q_polynomial(ct: CartanType, i: int, j: int) -> tuple[tuple[tuple[int, int], int], ...]:
    if i == j:
        return ()
    if i > j:
        return tuple(((b, a), c) for (a, b), c in _q_polynomial(ct, j, i))
    if j != i + 1:
        return (((0, 0), 1),)
    if i == 0:
        return (((1, 0), 1), ((0, 2), 1))
    if ct.kind is Kind.AFF and j == ct.rank:
        return (((2, 0), 1), ((0, 1), 1))
    return (((1, 0), 1), ((0, 1), 1))


def braid_correction_poly(ct: CartanType, i: int, j: int) -> tuple[tuple[tuple[int, int, int], int], ...]:
    """(Q_ij(u, v) - Q_ij(w, v)) / (u - w) as {(deg_u, deg_v, deg_w): coeff}."""
    return _braid_poly(ct, i, j)


@lru_cache(maxsize=None)
def _braid_poly(ct: CartanType, i: int, j: int):
    acc: dict[tuple[int, int, int], int] = {}
    for (p, qq), c in _q_polynomial(ct, i, j):
        for k in range(p):
            key = (k, qq, p - 1 - k)
            acc[key] = acc.get(key, 0) + c
    return tuple((k, c) for k, c in acc.items() if c)


# ---------------------------------------------------------------- word moves


@lru_cache(maxsize=None)
def _perm_of_word(word: tuple[int, ...], n: int) -> sg.Perm:
    return sg.from_word(word, n)


def _smallest_right_descent(w: sg.Perm) -> int:
    for i in range(1, len(w)):
        if w[i - 1] > w[i]:
            return i
    raise ValueError("identity has no descents")


@lru_cache(maxsize=None)
def _make_end_with(word: tuple[int, ...], i: int) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
    """Rewrite a reduced word with right descent i into one ending in i.

    Returns the new word and the moves, each (kind, position) with kind 0 a
    commutation of letters p, p+1 and kind 1 a braid on letters p, p+1, p+2.
    """
    j = word[-1]
    if j == i:
        return word, ()
    if abs(i - j) >= 2:
        prefix, moves = _make_end_with(word[:-1], i)
        p = len(word) - 2
        return prefix[:-1] + (j, i), moves + ((0, p),)
    prefix, moves1 = _make_end_with(word[:-1], i)
    # prefix ends with i
    inner, moves2 = _make_end_with(prefix[:-1], j)
    # inner ends with j, so the word is inner[:-1] + (j, i, j)
    p = len(word) - 3
    return inner[:-1] + (i, j, i), moves1 + moves2 + ((1, p),)


@lru_cache(maxsize=None)
def canonical_moves(word: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    """Moves turning a reduced word into the canonical word of its permutation."""
    if not word:
        return ()
    n = max(word) + 1
    i = _smallest_right_descent(_perm_of_word(word, n))
    ended, moves = _make_end_with(word, i)
    return moves + canonical_moves(ended[:-1])


def apply_moves(word: tuple[int, ...], moves: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    w = list(word)
    for kind, p in moves:
        if kind == 0:
            assert abs(w[p] - w[p + 1]) >= 2
            w[p], w[p + 1] = w[p + 1], w[p]
        else:
            a, b, c = w[p : p + 3]
            assert a == c and abs(a - b) == 1
            w[p : p + 3] = [b, a, b]
    return tuple(w)


# ---------------------------------------------------------------- the engine


def _add_into(target: dict, source: dict, scale=1) -> None:
    for k, v in source.items():
        nv = target.get(k, 0) + scale * v
        if nv:
            target[k] = nv
        else:
            del target[k]


class KLRAlgebra:
    """Normal-form arithmetic for R(beta) with beta ranging over all weights.

    One instance holds memo tables for every residue word it has seen. With
    ``truncated=True`` all terms with a nonzero x-exponent are discarded.
    """

    def __init__(self, ct: CartanType, truncated: bool = False):
        self.ct = ct
        self.truncated = truncated
        self._lpsi: dict = {}
        self._lx: dict = {}
        self._reduced: dict = {}
        self._form: dict = {}
        self._q: dict = {}

    # -- scalar data

    def form(self, i: int, j: int) -> int:
        key = (i, j)
        val = self._form.get(key)
        if val is None:
            val = self._form[key] = self.ct.bilinear_form(i, j)
        return val

    def _qpoly(self, i: int, j: int):
        key = (i, j)
        val = self._q.get(key)
        if val is None:
            val = self._q[key] = _q_polynomial(self.ct, i, j)
        return val

    # -- elementary pieces, all with right idempotent nu fixed

    def _zero_exps(self, n: int) -> tuple[int, ...]:
        return (0,) * n

    def _monomial_times(self, elt: dict, exps: tuple[int, ...]) -> dict:
        """Multiply each term on the right by x^exps."""
        if not any(exps):
            return elt
        if self.truncated:
            return {}
        out = {}
        for (w, a), c in elt.items():
            out[(w, tuple(x + y for x, y in zip(a, exps)))] = c
        return out

    def left_psi(self, r: int, elt: dict, nu: tuple) -> dict:
        out: dict = {}
        for (w, a), c in elt.items():
            _add_into(out, self._monomial_times(self.lpsi(r, w, nu), a), c)
        return out

    def left_x(self, r: int, elt: dict, nu: tuple) -> dict:
        out: dict = {}
        for (w, a), c in elt.items():
            _add_into(out, self._monomial_times(self.lx(r, w, nu), a), c)
        return out

    def left_poly(self, poly: dict, elt: dict, nu: tuple) -> dict:
        """Multiply on the left by a polynomial {exponent tuple: coeff} in the x's."""
        out: dict = {}
        for exps, c in poly.items():
            cur = elt
            for r, power in enumerate(exps, 1):
                for _ in range(power):
                    cur = self.left_x(r, cur, nu)
                    if not cur:
                        break
                if not cur:
                    break
            if cur:
                _add_into(out, cur, c)
        return out

    def lpsi(self, r: int, w: sg.Perm, nu: tuple) -> dict:
        """Normal form of psi_r psi_w e(nu)."""
        key = (r, w, nu)
        val = self._lpsi.get(key)
        if val is not None:
            return val
        pos_r = w.index(r)
        pos_r1 = w.index(r + 1)
        if pos_r < pos_r1:
            val = self.reduced_nf((r,) + sg.canonical_word(w), nu)
        else:
            w2 = sg.simple_times(r, w)
            mu = sg.act_on_word(w2, nu)
            n = len(w)
            poly = {}
            for (pu, pv), c in self._qpoly(mu[r - 1], mu[r]):
                exps = [0] * n
                exps[r - 1] = pu
                exps[r] = pv
                poly[tuple(exps)] = c
            base = {(w2, self._zero_exps(n)): 1}
            val = self.left_poly(poly, base, nu)
            corr = dict(self.lpsi(r, w2, nu))
            _add_into(corr, {(w, self._zero_exps(n)): 1}, -1)
            if corr:
                _add_into(val, self.left_psi(r, corr, nu), -1)
        self._lpsi[key] = val
        return val

    def lx(self, r: int, w: sg.Perm, nu: tuple) -> dict:
        """Normal form of x_r psi_w e(nu)."""
        key = (r, w, nu)
        val = self._lx.get(key)
        if val is not None:
            return val
        n = len(w)
        if self.truncated and w == tuple(range(1, n + 1)):
            val = {}
        elif w == tuple(range(1, n + 1)):
            exps = [0] * n
            exps[r - 1] = 1
            val = {(w, tuple(exps)): 1}
        else:
            j = sg.canonical_word(w)[0]
            w2 = sg.simple_times(j, w)
            mu = sg.act_on_word(w2, nu)
            s = j + 1 if r == j else j if r == j + 1 else r
            val = self.left_psi(j, self.lx(s, w2, nu), nu)
            if mu[j - 1] == mu[j] and r in (j, j + 1):
                _add_into(val, {(w2, self._zero_exps(n)): 1}, -1 if r == j else 1)
            corr = dict(self.lpsi(j, w2, nu))
            _add_into(corr, {(w, self._zero_exps(n)): 1}, -1)
            if corr:
                _add_into(val, self.left_x(r, corr, nu), -1)
        self._lx[key] = val
        return val

    def reduced_nf(self, word: tuple[int, ...], nu: tuple) -> dict:
        """Normal form of psi_{word} e(nu) for a reduced word."""
        key = (word, nu)
        val = self._reduced.get(key)
        if val is not None:
            return val
        n = len(nu)
        moves = canonical_moves(word)
        perm = _perm_of_word(word, n)
        val = {(perm, self._zero_exps(n)): 1}
        cur = word
        for kind, p in moves:
            if kind == 0:
                cur = cur[:p] + (cur[p + 1], cur[p]) + cur[p + 2 :]
                continue
            a, b, _ = cur[p : p + 3]
            rr = min(a, b)
            sign = 1 if a > b else -1
            prefix, suffix = cur[:p], cur[p + 3 :]
            mu = sg.act_on_word(_perm_of_word(suffix, n), nu)
            if mu[rr - 1] == mu[rr + 1]:
                corr = self._braid_term(rr, mu[rr - 1], mu[rr], prefix, suffix, nu)
                if corr:
                    _add_into(val, corr, sign)
            cur = cur[:p] + (b, a, b) + cur[p + 3 :]
        self._reduced[key] = val
        return val

    def _braid_term(self, r: int, i: int, j: int, prefix, suffix, nu) -> dict:
        n = len(nu)
        poly = {}
        for (pu, pv, pw), c in _braid_poly(self.ct, i, j):
            exps = [0] * n
            exps[r - 1] = pu
            exps[r] = pv
            exps[r + 1] = pw
            poly[tuple(exps)] = c
        if not poly:
            return {}
        elt = self.reduced_nf(suffix, nu) if suffix else {(sg.identity(n), self._zero_exps(n)): 1}
        elt = self.left_poly(poly, elt, nu)
        for letter in reversed(prefix):
            if not elt:
                break
            elt = self.left_psi(letter, elt, nu)
        return elt

    def word_nf(self, word: Sequence[int], nu: tuple) -> dict:
        """Normal form of psi_{i_1} ... psi_{i_k} e(nu) for any word."""
        n = len(nu)
        elt = {(sg.identity(n), self._zero_exps(n)): 1}
        for letter in reversed(tuple(word)):
            elt = self.left_psi(letter, elt, nu)
            if not elt:
                break
        return elt

    # -- public element-level interface

    def idempotent(self, nu: Sequence[int]) -> NormalFormElement:
        nu = self._check_word(nu)
        n = len(nu)
        return NormalFormElement({(sg.identity(n), (0,) * n, nu): 1})

    def x(self, r: int, nu: Sequence[int]) -> NormalFormElement:
        return self.multiply_generator(("x", r), self.idempotent(nu))

    def psi(self, r: int, nu: Sequence[int]) -> NormalFormElement:
        return self.multiply_generator(("psi", r), self.idempotent(nu))

    def basis_element(self, w: Sequence[int], exps: Sequence[int], nu: Sequence[int]) -> NormalFormElement:
        nu = self._check_word(nu)
        w = tuple(w)
        exps = tuple(exps)
        if len(w) != len(nu) or len(exps) != len(nu):
            raise ValueError("size mismatch")
        if self.truncated and any(exps):
            return NormalFormElement({})
        return NormalFormElement({(w, exps, nu): 1})

    def _check_word(self, nu) -> tuple:
        nu = tuple(nu)
        for i in nu:
            self.ct.check_index(i)
        return nu

    def _split(self, elt: NormalFormElement) -> dict:
        by_nu: dict = {}
        for (w, a, nu), c in elt.terms.items():
            by_nu.setdefault(nu, {})[(w, a)] = c
        return by_nu

    @staticmethod
    def _join(parts: dict) -> NormalFormElement:
        out = {}
        for nu, elt in parts.items():
            for (w, a), c in elt.items():
                out[(w, a, nu)] = c
        return NormalFormElement(out)

    def multiply_generator(self, g, elt: NormalFormElement) -> NormalFormElement:
        """g * elt for g one of ('e', nu), ('x', r), ('psi', r)."""
        kind, arg = g
        parts = self._split(elt)
        out = {}
        for nu, sub in parts.items():
            n = len(nu)
            if kind == "e":
                target = tuple(arg)
                res = {(w, a): c for (w, a), c in sub.items() if sg.act_on_word(w, nu) == target}
            elif kind == "x":
                if not 1 <= arg <= n:
                    raise ValueError(f"x_{arg} out of range for n={n}")
                res = self.left_x(arg, sub, nu)
            elif kind == "psi":
                if not 1 <= arg < n:
                    raise ValueError(f"psi_{arg} out of range for n={n}")
                res = self.left_psi(arg, sub, nu)
            else:
                raise ValueError(f"unknown generator {g!r}")
            if res:
                out[nu] = res
        return self._join(out)

    def multiply(self, left: NormalFormElement, right: NormalFormElement) -> NormalFormElement:
        """The product of two normal-form elements."""
        total = NormalFormElement({})
        for (w, a, nu), c in left.terms.items():
            prod = self.multiply_generator(("e", nu), right)
            for r, power in enumerate(a, 1):
                for _ in range(power):
                    prod = self.multiply_generator(("x", r), prod)
            for letter in reversed(sg.canonical_word(w)):
                prod = self.multiply_generator(("psi", letter), prod)
            total = total + prod.scale(c)
        return total

    def term_degree(self, w: sg.Perm, exps: Sequence[int], nu: Sequence[int]) -> int:
        deg = 0
        mu = list(nu)
        for s in reversed(sg.canonical_word(w)):
            deg -= self.form(mu[s - 1], mu[s])
            mu[s - 1], mu[s] = mu[s], mu[s - 1]
        for a, i in zip(exps, nu):
            deg += a * self.form(i, i)
        return deg

    def degree(self, elt: NormalFormElement):
        """The common degree of all terms, None for zero, or the marker 'inhomogeneous'."""
        degs = {self.term_degree(w, a, nu) for (w, a, nu) in elt.terms}
        if not degs:
            return None
        if len(degs) > 1:
            return INHOMOGENEOUS
        return degs.pop()

    def psi_block(self, block_word: Sequence[int], sizes: Sequence[int], nu: Sequence[int]) -> NormalFormElement:
        """Psi_{i_1} ... Psi_{i_p}(a_1, ..., a_t) e(nu).

        Each factor Psi_i(b) is psi of the fully commutative block
        transposition of the current sizes; the rightmost factor acts first.
        """
        nu = self._check_word(nu)
        if sum(sizes) != len(nu):
            raise ValueError("block sizes do not add up to the length of nu")
        t = len(sizes)
        for i in block_word:
            if not 1 <= i < t:
                raise ValueError(f"block index {i} out of range")
        elt = self.idempotent(nu)
        current = list(sizes)
        factors = []
        for i in reversed(tuple(block_word)):
            start = sum(current[: i - 1])
            factors.append(sg.s2(start, current[i - 1], current[i], len(nu)))
            current[i - 1], current[i] = current[i], current[i - 1]
        for perm in factors:
            for letter in reversed(sg.canonical_word(perm)):
                elt = self.multiply_generator(("psi", letter), elt)
        return elt


INHOMOGENEOUS = "inhomogeneous"


class NormalFormElement:
    """Finite linear combination of PBW terms (w, exponents, nu)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = {k: v for k, v in terms.items() if v}

    def __add__(self, other: NormalFormElement) -> NormalFormElement:
        out = dict(self.terms)
        _add_into(out, other.terms)
        return NormalFormElement(out)

    def __sub__(self, other: NormalFormElement) -> NormalFormElement:
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> NormalFormElement:
        return NormalFormElement({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, NormalFormElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (w, a, nu), c in sorted(self.terms.items()):
            word = "".join(f"psi{i}" for i in sg.canonical_word(w))
            mono = "".join(f"x{r}^{e}" if e > 1 else f"x{r}" for r, e in enumerate(a, 1) if e)
            parts.append(f"{c}*{word}{mono}e{nu}")
        return " + ".join(parts)

    def is_integral(self) -> bool:
        return all(isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1) for v in self.terms.values())

    def psi_lengths(self) -> list[int]:
        return [sg.length(w) for (w, _, _) in self.terms]


_ENGINES: dict = {}


def engine(ct: CartanType, truncated: bool = False) -> KLRAlgebra:
    """Shared engine instance per (type, mode)."""
    key = (ct, truncated)
    if key not in _ENGINES:
        _ENGINES[key] = KLRAlgebra(ct, truncated)
    return _ENGINES[key]
