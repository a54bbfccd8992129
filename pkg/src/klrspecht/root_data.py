"""Cartan data for the type C families C_inf and C_l^(1).

The index set of C_inf is {0, 1, 2, ...}; it is never materialised, callers
ask for a finite window with :meth:`CartanType.indices`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping


class Kind(enum.Enum):
    INF = "inf"
    AFF = "aff"


@dataclass(frozen=True)
class CartanType:
    kind: Kind
    rank: int | None = None

    def __post_init__(self):
        if self.kind is Kind.AFF:
            if not isinstance(self.rank, int) or self.rank < 2:
                raise ValueError("affine type needs an integer rank >= 2")
        elif self.rank is not None:
            raise ValueError("type C_inf takes no rank")

    @classmethod
    def infinite(cls) -> CartanType:
        return cls(Kind.INF)

    @classmethod
    def affine(cls, ell: int) -> CartanType:
        return cls(Kind.AFF, ell)

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> CartanType:
        if text == "inf":
            return cls.infinite()
        if text == "aff":
            if rank is None:
                raise ValueError("affine type needs a rank")
            return cls.affine(rank)
        raise ValueError(f"unknown Cartan type {text!r}")

    @property
    def is_affine(self) -> bool:
        return self.kind is Kind.AFF

    def __str__(self):
        return "C_inf" if self.kind is Kind.INF else f"C_{self.rank}^(1)"

    def is_index(self, i) -> bool:
        if not isinstance(i, int) or i < 0:
            return False
        return self.kind is Kind.INF or i <= self.rank

    def check_index(self, i) -> None:
        if not self.is_index(i):
            raise ValueError(f"{i!r} is not an index of {self}")

    def indices(self, bound: int | None = None) -> range:
        """Indices of the type; for C_inf only those up to ``bound``."""
        if self.kind is Kind.AFF:
            return range(self.rank + 1)
        if bound is None:
            raise ValueError("C_inf has infinitely many indices; give a bound")
        return range(bound + 1)

    def symmetrizer(self, i: int) -> int:
        self.check_index(i)
        if i == 0:
            return 2
        if self.kind is Kind.AFF and i == self.rank:
            return 2
        return 1

    def cartan_entry(self, i: int, j: int) -> int:
        self.check_index(i)
        self.check_index(j)
        return _cartan_entry(self, i, j)

    def bilinear_form(self, i: int, j: int) -> int:
        return self.symmetrizer(i) * self.cartan_entry(i, j)

    def residue(self, k: int) -> int:
        if self.kind is Kind.INF:
            return abs(k)
        ell = self.rank
        k %= 2 * ell
        return k if k <= ell else 2 * ell - k


@lru_cache(maxsize=None)
def _cartan_entry(ct: CartanType, i: int, j: int) -> int:
    if i == j:
        return 2
    if abs(i - j) != 1:
        return 0
    if (i, j) == (1, 0):
        return -2
    if ct.kind is Kind.AFF and (i, j) == (ct.rank - 1, ct.rank):
        return -2
    return -1


def cartan_entry(ct: CartanType, i: int, j: int) -> int:
    return ct.cartan_entry(i, j)


def bilinear_form(ct: CartanType, i: int, j: int) -> int:
    return ct.bilinear_form(i, j)


def residue_of_integer(ct: CartanType, k: int) -> int:
    return ct.residue(k)


def _sparse(items: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    acc: dict[int, int] = {}
    for i, c in items:
        if not isinstance(i, int) or i < 0:
            raise ValueError(f"bad index {i!r}")
        acc[i] = acc.get(i, 0) + c
    for i, c in acc.items():
        if c < 0:
            raise ValueError(f"negative coefficient {c} at index {i}")
    return tuple(sorted((i, c) for i, c in acc.items() if c))


@dataclass(frozen=True)
class RootVector:
    """An element of the positive root cone, stored as sorted (index, coeff) pairs."""

    coeffs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _sparse(self.coeffs))

    @classmethod
    def of(cls, mapping: Mapping[int, int] | Iterable[int] = ()) -> RootVector:
        """Build from a mapping index -> coefficient, or a word of indices."""
        if isinstance(mapping, Mapping):
            return cls(tuple(mapping.items()))
        return cls(tuple((i, 1) for i in mapping))

    @classmethod
    def simple(cls, i: int) -> RootVector:
        return cls(((i, 1),))

    def __getitem__(self, i: int) -> int:
        return dict(self.coeffs).get(i, 0)

    def __add__(self, other: RootVector) -> RootVector:
        return RootVector(self.coeffs + other.coeffs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    @property
    def height(self) -> int:
        return sum(c for _, c in self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}a{i}" if c != 1 else f"a{i}" for i, c in self.coeffs)


@dataclass(frozen=True)
class DominantWeight:
    multiplicities: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "multiplicities", _sparse(self.multiplicities))

    @classmethod
    def fundamental(cls, i: int) -> DominantWeight:
        return cls(((i, 1),))

    @classmethod
    def from_multicharge(cls, ct: CartanType, kappa: Iterable[int]) -> DominantWeight:
        return cls(tuple((ct.residue(k), 1) for k in kappa))

    def __getitem__(self, i: int) -> int:
        return dict(self.multiplicities).get(i, 0)

    @property
    def level(self) -> int:
        return sum(c for _, c in self.multiplicities)


def weight_pairing(ct: CartanType, i: int, weight: DominantWeight, beta: RootVector) -> int:
    """The pairing of the coroot of i with weight - beta."""
    ct.check_index(i)
    total = weight[i]
    for j, c in beta.coeffs:
        if abs(i - j) <= 1:
            total -= ct.cartan_entry(i, j) * c
    return total
