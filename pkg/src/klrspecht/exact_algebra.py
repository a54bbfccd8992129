"""Exact scalars and linear algebra: Laurent polynomials in q and sparse
row reduction over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping


class LaurentPolynomial:
    """Integer Laurent polynomial in q, immutable and hashable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPolynomial:
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c: int) -> LaurentPolynomial:
        return cls({0: c})

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def coeff(self, e: int) -> int:
        return dict(self._terms).get(e, 0)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        return isinstance(other, LaurentPolynomial) and self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def _coerce(self, other) -> LaurentPolynomial:
        if isinstance(other, int):
            return LaurentPolynomial.constant(other)
        if isinstance(other, LaurentPolynomial):
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPolynomial(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial((e, -c) for e, c in self._terms)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = LaurentPolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> LaurentPolynomial:
        """Multiply by q^k."""
        return LaurentPolynomial((e + k, c) for e, c in self._terms)

    def bar(self) -> LaurentPolynomial:
        """Substitute q -> q^{-1}."""
        return LaurentPolynomial((-e, c) for e, c in self._terms)

    def at_one(self) -> int:
        return sum(c for _, c in self._terms)

    def __repr__(self):
        return f"LaurentPolynomial({dict(self._terms)})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in reversed(self._terms):
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


q = LaurentPolynomial.monomial(1)


def quantum_integer(n: int, base: int = 1) -> LaurentPolynomial:
    """Balanced quantum integer [n] in the variable q^base.

    Negative n is allowed only through :func:`signed_quantum_integer`.
    """
    if n < 0:
        raise ValueError("quantum_integer needs n >= 0")
    return LaurentPolynomial({base * (n - 1 - 2 * k): 1 for k in range(n)})


def signed_quantum_integer(n: int, base: int = 1) -> LaurentPolynomial:
    """[n] with [-n] = -[n]."""
    if n >= 0:
        return quantum_integer(n, base)
    return -quantum_integer(-n, base)


# ---------------------------------------------------------------- linear algebra

Vector = dict  # key -> Fraction or int, zero entries never stored


def add_scaled(target: dict, source: Mapping, scale) -> None:
    """target += scale * source, in place, dropping zeros."""
    for k, v in source.items():
        nv = target.get(k, 0) + scale * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


@dataclass
class SparseMatrix:
    nrows: int
    ncols: int
    entries: dict[tuple[int, int], Fraction]

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.nrows and 0 <= c < self.ncols):
                raise IndexError(f"entry {(r, c)} outside a {self.nrows}x{self.ncols} matrix")
            if v:
                clean[(r, c)] = Fraction(v)
        self.entries = clean

    @classmethod
    def from_rows(cls, rows: list[list]) -> SparseMatrix:
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row) if v})

    @classmethod
    def identity(cls, n: int) -> SparseMatrix:
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def row(self, r: int) -> dict[int, Fraction]:
        return {c: v for (rr, c), v in self.entries.items() if rr == r}

    def rows(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> SparseMatrix:
        return SparseMatrix(self.ncols, self.nrows, {(c, r): v for (r, c), v in self.entries.items()})

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.entries == other.entries
        )


def _rref_rows(rows: list[dict[int, Fraction]]) -> tuple[list[dict[int, Fraction]], list[int]]:
    pivots: list[int] = []
    reduced: list[dict[int, Fraction]] = []
    for row in rows:
        v = {c: Fraction(x) for c, x in row.items() if x}
        for p, prow in zip(pivots, reduced):
            if p in v:
                add_scaled(v, prow, -v[p])
        if not v:
            continue
        p = min(v)
        inv = 1 / v[p]
        v = {c: x * inv for c, x in v.items()}
        for other in reduced:
            if p in other:
                add_scaled(other, v, -other[p])
        pivots.append(p)
        reduced.append(v)
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    return [reduced[k] for k in order], [pivots[k] for k in order]


def row_reduce(m: SparseMatrix) -> tuple[SparseMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    rows, pivots = _rref_rows(m.rows())
    entries = {(r, c): v for r, row in enumerate(rows) for c, v in row.items()}
    return SparseMatrix(m.nrows, m.ncols, entries), len(pivots), pivots


def rank(m: SparseMatrix) -> int:
    return row_reduce(m)[1]


@dataclass
class Solution:
    consistent: bool
    particular: list[Fraction] | None
    nullspace: list[list[Fraction]]


def nullspace(m: SparseMatrix) -> list[list[Fraction]]:
    rows, pivots = _rref_rows(m.rows())
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [Fraction(0)] * m.ncols
        vec[f] = Fraction(1)
        for p, row in zip(pivots, rows):
            vec[p] = -row.get(f, Fraction(0))
        basis.append(vec)
    return basis


def solve(m: SparseMatrix, b: list) -> Solution:
    """All solutions of m x = b: a particular one plus the nullspace."""
    if len(b) != m.nrows:
        raise ValueError("right-hand side has the wrong length")
    aug = m.rows()
    for r, x in enumerate(b):
        if x:
            aug[r][m.ncols] = Fraction(x)
    rows, pivots = _rref_rows(aug)
    if m.ncols in pivots:
        return Solution(False, None, nullspace(m))
    part = [Fraction(0)] * m.ncols
    for p, row in zip(pivots, rows):
        part[p] = row.get(m.ncols, Fraction(0))
    return Solution(True, part, nullspace(m))


class EchelonBasis:
    """Incrementally built echelon basis of a subspace of sparse vectors.

    Keys must be mutually comparable; the pivot of each stored row is its
    smallest key and every other key in that row is larger.
    """

    def __init__(self):
        self._rows: dict[Hashable, dict] = {}

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Mapping) -> dict:
        v = {k: Fraction(x) for k, x in v.items() if x}
        rows = self._rows
        while v:
            hit = None
            for k in sorted(v):
                if k in rows:
                    hit = k
                    break
            if hit is None:
                return v
            add_scaled(v, rows[hit], -v[hit])
        return v

    def _reduce_for_insert(self, v: Mapping) -> dict:
        v = {k: Fraction(x) for k, x in v.items() if x}
        rows = self._rows
        while v:
            p = min(v)
            if p not in rows:
                return v
            add_scaled(v, rows[p], -v[p])
        return v

    def insert(self, v: Mapping) -> dict | None:
        """Add v if it is independent; return the stored row or None."""
        v = self._reduce_for_insert(v)
        if not v:
            return None
        p = min(v)
        inv = 1 / v[p]
        v = {k: x * inv for k, x in v.items()}
        self._rows[p] = v
        return v

    def contains(self, v: Mapping) -> bool:
        return not self._reduce_for_insert(v)

    def rows(self) -> list[dict]:
        return list(self._rows.values())

    def pivots(self) -> list:
        return sorted(self._rows)


@dataclass(frozen=True)
class GradedSpace:
    """A basis of labels, each with a degree."""

    labels: tuple[Hashable, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.degrees):
            raise ValueError("labels and degrees differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")

    def __len__(self):
        return len(self.labels)


def graded_dimension(space: GradedSpace) -> LaurentPolynomial:
    return LaurentPolynomial((d, 1) for d in space.degrees)
