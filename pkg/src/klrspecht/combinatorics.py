"""Multipartitions, tableaux, residues and Garnir combinatorics.

Nodes are triples ``(r, c, t)``: row, column and component, all 1-based.
A node X lies *below* a node Y when X is in a later component, or in the
same component and a strictly lower row.

``w * t`` for a permutation w replaces every entry k of t by w(k). The
permutation of a tableau t is the unique w with ``w * t^lambda = t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple, Sequence

from . import symgroup as sg
from .root_data import CartanType, RootVector


class Node(NamedTuple):
    r: int
    c: int
    t: int = 1


def _is_partition(parts: Sequence[int]) -> bool:
    return all(isinstance(p, int) and p > 0 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


@dataclass(frozen=True)
class Multipartition:
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        comps = tuple(tuple(c) for c in self.components)
        if not comps:
            raise ValueError("a multipartition needs at least one component")
        for comp in comps:
            if not _is_partition(comp):
                raise ValueError(f"{list(comp)} is not a partition")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, data) -> Multipartition:
        """Accept a Multipartition, a partition, or a list of partitions."""
        if isinstance(data, Multipartition):
            return data
        data = list(data)
        if not data or all(isinstance(x, int) for x in data):
            return cls((tuple(data),))
        return cls(tuple(tuple(c) for c in data))

    @property
    def level(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(sum(c) for c in self.components)

    def row_length(self, r: int, t: int) -> int:
        comp = self.components[t - 1]
        return comp[r - 1] if 1 <= r <= len(comp) else 0

    def __contains__(self, node) -> bool:
        r, c, t = node
        return 1 <= t <= self.level and r >= 1 and 1 <= c <= self.row_length(r, t)

    def nodes(self) -> list[Node]:
        """All nodes in row reading order (component, row, column)."""
        return [
            Node(r, c, t)
            for t, comp in enumerate(self.components, 1)
            for r, length in enumerate(comp, 1)
            for c in range(1, length + 1)
        ]

    def rows(self) -> list[tuple[int, int, int]]:
        """(component, row, length) for every nonempty row, in reading order."""
        return [(t, r, length) for t, comp in enumerate(self.components, 1) for r, length in enumerate(comp, 1)]

    def addable_nodes(self) -> list[Node]:
        out = []
        for t, comp in enumerate(self.components, 1):
            for r in range(1, len(comp) + 2):
                c = self.row_length(r, t) + 1
                if r == 1 or self.row_length(r - 1, t) >= c:
                    out.append(Node(r, c, t))
        return out

    def removable_nodes(self) -> list[Node]:
        out = []
        for t, comp in enumerate(self.components, 1):
            for r, length in enumerate(comp, 1):
                if self.row_length(r + 1, t) < length:
                    out.append(Node(r, length, t))
        return out

    def add(self, node) -> Multipartition:
        r, c, t = node
        if node not in self.addable_nodes():
            raise ValueError(f"{node} is not addable")
        comps = [list(x) for x in self.components]
        if r > len(comps[t - 1]):
            comps[t - 1].append(1)
        else:
            comps[t - 1][r - 1] += 1
        return Multipartition(tuple(tuple(x) for x in comps))

    def remove(self, node) -> Multipartition:
        r, c, t = node
        if node not in self.removable_nodes():
            raise ValueError(f"{node} is not removable")
        comps = [list(x) for x in self.components]
        comps[t - 1][r - 1] -= 1
        if comps[t - 1][r - 1] == 0:
            comps[t - 1].pop()
        return Multipartition(tuple(tuple(x) for x in comps))

    def __str__(self):
        return "(" + ", ".join("(" + ",".join(map(str, c)) + ")" if c else "()" for c in self.components) + ")"


def is_below(x, y) -> bool:
    """Node x lies below node y."""
    return x[2] > y[2] or (x[2] == y[2] and x[0] > y[0])


def partitions(n: int, max_part: int | None = None) -> list[tuple[int, ...]]:
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def multipartitions(n: int, level: int) -> list[Multipartition]:
    def rec(m: int, slots: int):
        if slots == 1:
            for p in partitions(m):
                yield (p,)
            return
        for k in range(m, -1, -1):
            for p in partitions(k):
                for rest in rec(m - k, slots - 1):
                    yield (p,) + rest

    return [Multipartition(c) for c in rec(n, level)]


def _check_level(kappa: Sequence[int], lam_or_level) -> None:
    level = lam_or_level if isinstance(lam_or_level, int) else lam_or_level.level
    if len(kappa) != level:
        raise ValueError(f"multicharge {list(kappa)} has length {len(kappa)} but the level is {level}")


# ---------------------------------------------------------------- residues


def residue_of_node(ct: CartanType, kappa: Sequence[int], node) -> int:
    r, c, t = node
    if not 1 <= t <= len(kappa):
        raise ValueError(f"component {t} exceeds the level {len(kappa)}")
    return ct.residue(kappa[t - 1] + c - r)


def residue_diagram(ct: CartanType, kappa: Sequence[int], lam: Multipartition) -> tuple:
    _check_level(kappa, lam)
    return tuple(
        tuple(tuple(residue_of_node(ct, kappa, (r, c, t)) for c in range(1, length + 1)) for r, length in enumerate(comp, 1))
        for t, comp in enumerate(lam.components, 1)
    )


def content(ct: CartanType, kappa: Sequence[int], lam: Multipartition) -> RootVector:
    _check_level(kappa, lam)
    return RootVector.of([residue_of_node(ct, kappa, node) for node in lam.nodes()])


def addable_removable(ct: CartanType, kappa: Sequence[int], lam: Multipartition, i: int) -> tuple[list[Node], list[Node]]:
    """Addable and removable i-nodes, each listed top to bottom."""
    lam = Multipartition.of(lam)
    _check_level(kappa, lam)
    add = [a for a in lam.addable_nodes() if residue_of_node(ct, kappa, a) == i]
    rem = [a for a in lam.removable_nodes() if residue_of_node(ct, kappa, a) == i]
    return add, rem


def d_statistics(ct: CartanType, kappa: Sequence[int], lam: Multipartition, node) -> tuple[int, int, int]:
    """(d_i(lam), d_A(lam), d^A(lam)) for an addable or removable i-node A.

    The first entry is the plain count of addable minus removable i-nodes;
    the other two carry the symmetrizer d_i.
    """
    node = Node(*node)
    i = residue_of_node(ct, kappa, node)
    add, rem = addable_removable(ct, kappa, lam, i)
    if node not in add and node not in rem:
        raise ValueError(f"{node} is neither addable nor removable for {lam}")
    di = ct.symmetrizer(i)
    below = sum(1 for x in add if x != node and is_below(x, node)) - sum(
        1 for x in rem if x != node and is_below(x, node)
    )
    above = sum(1 for x in add if x != node and is_below(node, x)) - sum(
        1 for x in rem if x != node and is_below(node, x)
    )
    return len(add) - len(rem), di * below, di * above


def d_i(ct: CartanType, kappa: Sequence[int], lam: Multipartition, i: int) -> int:
    add, rem = addable_removable(ct, kappa, lam, i)
    return len(add) - len(rem)


# ---------------------------------------------------------------- tableaux


@dataclass(frozen=True)
class Tableau:
    """A bijection from the nodes of ``shape`` to 1..n, stored row by row."""

    shape: Multipartition
    rows: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(tuple(r) for r in comp) for comp in self.rows)
        object.__setattr__(self, "rows", rows)
        lengths = tuple(tuple(len(r) for r in comp) for comp in rows)
        if lengths != self.shape.components:
            raise ValueError("tableau rows do not match the shape")
        entries = sorted(x for comp in rows for r in comp for x in r)
        if entries != list(range(1, self.shape.size + 1)):
            raise ValueError("tableau entries are not 1..n")

    @classmethod
    def of(cls, rows) -> Tableau:
        """Build from nested rows; a single component may be given bare."""
        rows = list(rows)
        if rows and rows[0] and all(isinstance(x, int) for x in rows[0]):
            rows = [rows]
        comps = tuple(tuple(tuple(r) for r in comp) for comp in rows)
        shape = Multipartition(tuple(tuple(len(r) for r in comp) for comp in comps))
        return cls(shape, comps)

    @property
    def size(self) -> int:
        return self.shape.size

    def __getitem__(self, node) -> int:
        r, c, t = node
        return self.rows[t - 1][r - 1][c - 1]

    def entries_in_reading_order(self) -> tuple[int, ...]:
        return tuple(x for comp in self.rows for r in comp for x in r)

    def node_of(self, k: int) -> Node:
        return self.positions()[k - 1]

    def positions(self) -> tuple[Node, ...]:
        pos: list = [None] * self.size
        for node, x in zip(self.shape.nodes(), self.entries_in_reading_order()):
            pos[x - 1] = node
        return tuple(pos)

    def is_row_strict(self) -> bool:
        return all(all(r[i] < r[i + 1] for i in range(len(r) - 1)) for comp in self.rows for r in comp)

    def is_column_strict(self) -> bool:
        for comp in self.rows:
            for upper, lower in zip(comp, comp[1:]):
                if any(upper[c] > lower[c] for c in range(len(lower))):
                    return False
        return True

    def is_standard(self) -> bool:
        return self.is_row_strict() and self.is_column_strict()

    def restrict(self, m: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """Entries <= m, as rows (the shape may be a multicomposition)."""
        return tuple(tuple(tuple(x for x in r if x <= m) for r in comp) for comp in self.rows)

    def restricted_shape(self, m: int) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sum(1 for x in r if x <= m) for r in comp) for comp in self.rows)

    def __str__(self):
        return " | ".join("/".join(",".join(map(str, r)) for r in comp) or "()" for comp in self.rows)


def initial_tableau(lam) -> Tableau:
    lam = Multipartition.of(lam)
    k = 0
    comps = []
    for comp in lam.components:
        rows = []
        for length in comp:
            rows.append(tuple(range(k + 1, k + length + 1)))
            k += length
        comps.append(tuple(rows))
    return Tableau(lam, tuple(comps))


def act(w: sg.Perm, t: Tableau) -> Tableau:
    """w * t: replace each entry k by w(k)."""
    return Tableau(t.shape, tuple(tuple(tuple(w[x - 1] for x in r) for r in comp) for comp in t.rows))


def permutation_of(t: Tableau) -> sg.Perm:
    """w^t, with w^t * t^lambda = t."""
    return t.entries_in_reading_order()


def tableau_of(lam, w: sg.Perm) -> Tableau:
    return act(w, initial_tableau(lam))


def tableau_length(t: Tableau) -> int:
    return sg.length(permutation_of(t))


def residue_sequence(ct: CartanType, kappa: Sequence[int], t: Tableau) -> tuple[int, ...]:
    _check_level(kappa, t.shape)
    return tuple(residue_of_node(ct, kappa, node) for node in t.positions())


def initial_residues(ct: CartanType, kappa: Sequence[int], lam) -> tuple[int, ...]:
    lam = Multipartition.of(lam)
    _check_level(kappa, lam)
    return tuple(residue_of_node(ct, kappa, node) for node in lam.nodes())


def degree(ct: CartanType, kappa: Sequence[int], t: Tableau) -> int:
    if not t.is_standard():
        raise ValueError("degree is defined for standard tableaux")
    _check_level(kappa, t.shape)
    shape = t.shape
    total = 0
    for m in range(t.size, 0, -1):
        node = t.node_of(m)
        total += d_statistics(ct, kappa, shape, node)[1]
        shape = shape.remove(node)
    return total


def codegree(ct: CartanType, kappa: Sequence[int], t: Tableau) -> int:
    """The same recursion with d^A in place of d_A."""
    if not t.is_standard():
        raise ValueError("codegree is defined for standard tableaux")
    shape = t.shape
    total = 0
    for m in range(t.size, 0, -1):
        node = t.node_of(m)
        total += d_statistics(ct, kappa, shape, node)[2]
        shape = shape.remove(node)
    return total


# ---------------------------------------------------------------- dominance


def dominates(lam, mu) -> bool:
    """lam dominates mu, for multicompositions of equal size and level."""
    lam = lam.components if isinstance(lam, Multipartition) else lam
    mu = mu.components if isinstance(mu, Multipartition) else mu
    if len(lam) != len(mu):
        raise ValueError("level mismatch")
    if sum(map(sum, lam)) != sum(map(sum, mu)):
        raise ValueError("size mismatch")
    before_l = before_m = 0
    for comp_l, comp_m in zip(lam, mu):
        rows = max(len(comp_l), len(comp_m))
        acc_l, acc_m = before_l, before_m
        for j in range(rows):
            acc_l += comp_l[j] if j < len(comp_l) else 0
            acc_m += comp_m[j] if j < len(comp_m) else 0
            if acc_l < acc_m:
                return False
        before_l += sum(comp_l)
        before_m += sum(comp_m)
    return True


def tableau_dominates(t: Tableau, s: Tableau) -> bool:
    if t.shape != s.shape:
        raise ValueError("tableaux of different shapes")
    return all(dominates(t.restricted_shape(m), s.restricted_shape(m)) for m in range(1, t.size + 1))


# ---------------------------------------------------------------- enumeration


@lru_cache(maxsize=None)
def _standard_paths(lam: Multipartition) -> tuple[tuple[Node, ...], ...]:
    if lam.size == 0:
        return ((),)
    out = []
    for node in lam.removable_nodes():
        for path in _standard_paths(lam.remove(node)):
            out.append(path + (node,))
    return tuple(out)


def _from_positions(lam: Multipartition, positions: Sequence) -> Tableau:
    grid = [[[0] * length for length in comp] for comp in lam.components]
    for k, (r, c, t) in enumerate(positions, 1):
        grid[t - 1][r - 1][c - 1] = k
    return Tableau(lam, tuple(tuple(tuple(r) for r in comp) for comp in grid))


def _order_key(t: Tableau):
    return (tableau_length(t), t.entries_in_reading_order())


def enumerate_tableaux(lam, kind: str = "standard") -> list[Tableau]:
    lam = Multipartition.of(lam)
    if kind == "standard":
        out = [_from_positions(lam, path) for path in _standard_paths(lam)]
    elif kind in ("row-strict", "row_strict"):
        out = [tableau_of(lam, w) for w in row_strict_permutations(lam)]
    else:
        raise ValueError(f"unknown tableau kind {kind!r}")
    return sorted(out, key=_order_key)


@lru_cache(maxsize=None)
def row_strict_permutations(lam: Multipartition) -> tuple[sg.Perm, ...]:
    """w^t for all row-strict t, i.e. minimal coset representatives of the row group."""
    lengths = [length for _, _, length in lam.rows()]
    n = lam.size
    out = []

    def rec(remaining: tuple[int, ...], k: int, acc: list):
        if k == len(lengths):
            out.append(tuple(x for row in acc for x in row))
            return
        for chosen in combinations(remaining, lengths[k]):
            rest = tuple(x for x in remaining if x not in chosen)
            rec(rest, k + 1, acc + [chosen])

    rec(tuple(range(1, n + 1)), 0, [])
    return tuple(out)


# ---------------------------------------------------------------- Garnir


def is_garnir_node(lam: Multipartition, node) -> bool:
    r, c, t = node
    return node in lam and (r + 1, c, t) in lam


def garnir_nodes(lam) -> list[Node]:
    lam = Multipartition.of(lam)
    return [node for node in lam.nodes() if is_garnir_node(lam, node)]


def _check_garnir(lam: Multipartition, node) -> Node:
    node = Node(*node)
    if not is_garnir_node(lam, node):
        raise ValueError(f"{tuple(node)} is not a Garnir node of {lam}")
    return node


def garnir_belt(lam, node) -> list[Node]:
    """Belt nodes from bottom left to top right."""
    lam = Multipartition.of(lam)
    r, c, t = _check_garnir(lam, node)
    lower = [Node(r + 1, j, t) for j in range(1, c + 1)]
    upper = [Node(r, j, t) for j in range(c, lam.row_length(r, t) + 1)]
    return lower + upper


def _fill(lam: Multipartition, assignment: dict) -> Tableau:
    base = initial_tableau(lam)
    grid = [[list(r) for r in comp] for comp in base.rows]
    for (r, c, t), x in assignment.items():
        grid[t - 1][r - 1][c - 1] = x
    return Tableau(lam, tuple(tuple(tuple(r) for r in comp) for comp in grid))


def garnir_tableau(lam, node) -> Tableau:
    lam = Multipartition.of(lam)
    belt = garnir_belt(lam, node)
    base = initial_tableau(lam)
    values = sorted(base[x] for x in belt)
    return _fill(lam, dict(zip(belt, values)))


def garnir_offset(lam: Multipartition, node) -> int:
    """Entries of t^lambda before the belt's first row start, plus c - 1."""
    r, c, t = node
    before = sum(sum(comp) for comp in lam.components[: t - 1])
    before += sum(lam.components[t - 1][: r - 1])
    return before + c - 1


def garnir_word(lam, node) -> sg.Perm:
    """w^{G^A} from the block transposition formula."""
    lam = Multipartition.of(lam)
    r, c, t = _check_garnir(lam, node)
    return sg.s2(garnir_offset(lam, node), lam.row_length(r, t) - c + 1, c, lam.size)


def generalized_garnir(lam, a, b) -> Tableau:
    """The join of G^A and G^B in the left order, built case by case."""
    lam = Multipartition.of(lam)
    a = _check_garnir(lam, a)
    b = _check_garnir(lam, b)
    if a == b:
        raise ValueError("the two Garnir nodes must be distinct")
    belt_a, belt_b = set(garnir_belt(lam, a)), set(garnir_belt(lam, b))
    base = initial_tableau(lam)

    if not belt_a & belt_b:
        assign = {}
        for node in (a, b):
            belt = garnir_belt(lam, node)
            assign.update(zip(belt, sorted(base[x] for x in belt)))
        return _fill(lam, assign)

    if a.r == b.r:
        if b.c < a.c:
            a, b = b, a
        r, c, t = a
        c2 = b.c
        part1 = [Node(r + 1, j, t) for j in range(1, c + 1)] + [Node(r, j, t) for j in range(c, c2)]
        part2 = [Node(r + 1, j, t) for j in range(c + 1, c2 + 1)] + [
            Node(r, j, t) for j in range(c2, lam.row_length(r, t) + 1)
        ]
        values = sorted(base[x] for x in part1 + part2)
        return _fill(lam, dict(zip(part1 + part2, values)))

    if b.r == a.r + 1:
        a, b = b, a
    # now a = (r, c, t) and b = (r - 1, c', t) with c' >= c
    r, c, t = a
    c2 = b.c
    rows = {rr: [Node(rr, j, t) for j in range(1, lam.row_length(rr, t) + 1)] for rr in (r - 1, r, r + 1)}
    belt = (
        [Node(r + 1, j, t) for j in range(1, c + 1)]
        + [Node(r, j, t) for j in range(c, c2 + 1)]
        + [Node(r - 1, j, t) for j in range(c2, lam.row_length(r - 1, t) + 1)]
    )
    belt_set = set(belt)
    first_in_belt = {rr: min(x.c for x in belt if x.r == rr) for rr in rows}
    above = [x for rr in (r - 1, r, r + 1) for x in rows[rr] if x not in belt_set and x.c < first_in_belt[rr]]
    below = [x for rr in (r - 1, r, r + 1) for x in rows[rr] if x not in belt_set and x.c > first_in_belt[rr]]
    order = above + belt + below
    values = sorted(base[x] for x in order)
    return _fill(lam, dict(zip(order, values)))


def straighten_witness(t: Tableau) -> tuple[Node, sg.Perm]:
    """A Garnir node A and w with t = w * G^A and l(t) = l(w) + l(G^A)."""
    if not t.is_row_strict():
        raise ValueError("tableau is not row-strict")
    if t.is_standard():
        raise ValueError("tableau is standard")
    lam = t.shape
    for node in garnir_nodes(lam):
        r, c, comp = node
        if t[node] > t[(r + 1, c, comp)]:
            g = permutation_of(garnir_tableau(lam, node))
            w = sg.compose(permutation_of(t), sg.inverse(g))
            if sg.length(permutation_of(t)) != sg.length(w) + sg.length(g):
                raise AssertionError("length additivity failed")
            return node, w
    raise AssertionError("no column descent found")


# ---------------------------------------------------------------- bricks


@dataclass(frozen=True)
class BrickDecomposition:
    node: Node
    bricks: tuple[tuple[Node, ...], ...]
    first_row_count: int
    second_row_count: int
    tableau: Tableau
    garnir: Tableau
    transpositions: tuple[sg.Perm, ...]
    smallest_entry: int | None

    @property
    def count(self) -> int:
        return len(self.bricks)


def brick_transposition(d: int, r: int, ell: int, n: int) -> sg.Perm:
    """prod_{a = d + 2(r-1)ell}^{d + 2r ell - 1} (a, a + 2 ell)."""
    w = list(range(1, n + 1))
    for a in range(d + 2 * (r - 1) * ell, d + 2 * r * ell):
        w[a - 1], w[a + 2 * ell - 1] = w[a + 2 * ell - 1], w[a - 1]
    return tuple(w)


def brick_decomposition(ct: CartanType, kappa: Sequence[int], lam, node) -> BrickDecomposition:
    if not ct.is_affine:
        raise ValueError("bricks only exist in affine type")
    lam = Multipartition.of(lam)
    _check_level(kappa, lam)
    r, c, t = _check_garnir(lam, node)
    ell = ct.rank
    period = 2 * ell
    target = (kappa[t - 1] + c - r) % period

    def row_bricks(row: int, first: int, last: int) -> list[tuple[Node, ...]]:
        out = []
        b = first
        while b + period - 1 <= last:
            if (kappa[t - 1] + b - row) % period == target:
                out.append(tuple(Node(row, j, t) for j in range(b, b + period)))
                b += period
            else:
                b += 1
        return out

    lower = row_bricks(r + 1, 1, c)
    upper = row_bricks(r, c, lam.row_length(r, t))
    bricks = tuple(lower + upper)
    g = garnir_tableau(lam, node)
    n = lam.size
    if not bricks:
        return BrickDecomposition(Node(r, c, t), (), 0, 0, g, g, (), None)
    brick_values = sorted(g[x] for br in bricks for x in br)
    d = brick_values[0]
    assign = {}
    for k, br in enumerate(upper + lower):
        for x, val in zip(br, brick_values[k * period : (k + 1) * period]):
            assign[x] = val
    grid = [[list(row) for row in comp] for comp in g.rows]
    for (rr, cc, tt), val in assign.items():
        grid[tt - 1][rr - 1][cc - 1] = val
    ta = Tableau(lam, tuple(tuple(tuple(row) for row in comp) for comp in grid))
    ws = tuple(brick_transposition(d, k, ell, n) for k in range(1, len(bricks)))
    return BrickDecomposition(Node(r, c, t), bricks, len(upper), len(lower), ta, g, ws, d)


__all__ = [
    "Node",
    "Multipartition",
    "Tableau",
    "BrickDecomposition",
    "partitions",
    "multipartitions",
    "residue_of_node",
    "residue_diagram",
    "content",
    "addable_removable",
    "d_statistics",
    "d_i",
    "degree",
    "codegree",
    "dominates",
    "tableau_dominates",
    "initial_tableau",
    "permutation_of",
    "tableau_of",
    "act",
    "residue_sequence",
    "initial_residues",
    "enumerate_tableaux",
    "row_strict_permutations",
    "garnir_nodes",
    "garnir_belt",
    "garnir_tableau",
    "garnir_word",
    "garnir_offset",
    "generalized_garnir",
    "straighten_witness",
    "brick_decomposition",
    "brick_transposition",
    "is_garnir_node",
]
