"""Permutation modules, Garnir elements and Specht modules as explicit
graded quotients over the rationals.

A segment module is the convolution of one-dimensional modules L(k; l), one
per segment. It is the quotient of R(beta) e(nu) by the left ideal generated
by the x_i e(nu) and by psi_j e(nu) for j, j+1 inside one segment, so its
basis is psi_w m for w a minimal length coset representative of the Young
subgroup of the segments. The permutation module of a multipartition has
one segment per row.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import combinatorics as cb
from . import symgroup as sg
from .exact_algebra import EchelonBasis, LaurentPolynomial, SparseMatrix, add_scaled, nullspace
from .klr_engine import engine
from .root_data import CartanType, DominantWeight

Vector = dict  # basis index -> coefficient


class StraighteningError(RuntimeError):
    pass


class SegmentModule:
    """Convolution of L(k_1; l_1), ..., L(k_s; l_s) with its PBW basis."""

    def __init__(self, ct: CartanType, segments: Sequence[tuple[int, int]]):
        self.ct = ct
        self.segments = tuple((k, l) for k, l in segments if l > 0)
        self.engine = engine(ct, truncated=True)
        word = []
        self.segment_of = []
        for s, (k, l) in enumerate(self.segments):
            word.extend(ct.residue(k + m) for m in range(l))
            self.segment_of.extend([s] * l)
        self.nu = tuple(word)
        self.n = len(word)
        lengths = [l for _, l in self.segments]
        self.basis: list[sg.Perm] = sorted(_coset_reps(lengths), key=lambda w: (sg.length(w), w))
        self.index = {w: i for i, w in enumerate(self.basis)}
        self.weights = [sg.act_on_word(w, self.nu) for w in self.basis]
        self.degrees = [self.engine.term_degree(w, (0,) * self.n, self.nu) for w in self.basis]
        self._eval: dict[sg.Perm, Vector] = {}
        self._busy: set = set()
        self._action: dict = {}

    def __len__(self):
        return len(self.basis)

    def _internal(self, i: int) -> bool:
        return self.segment_of[i - 1] == self.segment_of[i]

    def psi_word_on_generator(self, u: sg.Perm) -> Vector:
        """psi_u m written in the basis."""
        val = self._eval.get(u)
        if val is not None:
            return val
        idx = self.index.get(u)
        if idx is not None:
            val = {idx: 1}
        else:
            descents = sg.right_descents(u)
            if self._internal(descents[0]):
                val = {}
            else:
                if u in self._busy:
                    raise StraighteningError(f"straightening of {u} does not terminate")
                self._busy.add(u)
                j = next(d for d in descents if self._internal(d))
                word = sg.canonical_word(sg.times_simple(u, j)) + (j,)
                nf = self.engine.reduced_nf(word, self.nu)
                val = {}
                for (v, _), c in nf.items():
                    if v == u:
                        if c != 1:
                            raise StraighteningError("unexpected leading coefficient")
                        continue
                    add_scaled(val, self.psi_word_on_generator(v), -c)
                self._busy.discard(u)
        self._eval[u] = val
        return val

    def _from_nf(self, nf: dict) -> Vector:
        out: Vector = {}
        for (v, _), c in nf.items():
            add_scaled(out, self.psi_word_on_generator(v), c)
        return out

    def act_on_basis(self, g: tuple[str, int], idx: int) -> Vector:
        key = (g, idx)
        val = self._action.get(key)
        if val is None:
            kind, r = g
            w = self.basis[idx]
            if kind == "psi":
                val = self._from_nf(self.engine.lpsi(r, w, self.nu))
            elif kind == "x":
                val = self._from_nf(self.engine.lx(r, w, self.nu))
            else:
                raise ValueError(f"unknown generator {g!r}")
            self._action[key] = val
        return val

    def act(self, g, vec: Vector) -> Vector:
        """Apply ('psi', j), ('x', i) or ('e', nu) to a vector."""
        kind, arg = g
        if kind == "e":
            target = tuple(arg)
            return {i: c for i, c in vec.items() if self.weights[i] == target}
        out: Vector = {}
        for i, c in vec.items():
            add_scaled(out, self.act_on_basis(g, i), c)
        return out

    def apply_word(self, word: Sequence[int], vec: Vector) -> Vector:
        """psi_{i_1} ... psi_{i_k} applied to vec (rightmost first)."""
        for letter in reversed(tuple(word)):
            vec = self.act(("psi", letter), vec)
            if not vec:
                break
        return vec

    def generators(self) -> list[tuple[str, int]]:
        return [("psi", j) for j in range(1, self.n)] + [("x", i) for i in range(1, self.n + 1)]

    def block_of(self, vec: Vector) -> tuple[tuple, int]:
        blocks = {(self.weights[i], self.degrees[i]) for i in vec}
        if len(blocks) != 1:
            raise ValueError("vector is not homogeneous")
        return blocks.pop()

    def blocks(self) -> dict[tuple[tuple, int], list[int]]:
        out: dict = defaultdict(list)
        for i in range(len(self.basis)):
            out[(self.weights[i], self.degrees[i])].append(i)
        return dict(out)

    def character(self, shift: int = 0) -> dict[tuple, LaurentPolynomial]:
        acc: dict = defaultdict(dict)
        for i in range(len(self.basis)):
            d = acc[self.weights[i]]
            d[self.degrees[i] + shift] = d.get(self.degrees[i] + shift, 0) + 1
        return {nu: LaurentPolynomial(d) for nu, d in acc.items()}


def _coset_reps(lengths: Sequence[int]) -> list[sg.Perm]:
    n = sum(lengths)
    out = []

    def rec(remaining: tuple[int, ...], k: int, acc: list):
        if k == len(lengths):
            out.append(tuple(acc))
            return
        for chosen in combinations(remaining, lengths[k]):
            rest = tuple(x for x in remaining if x not in chosen)
            rec(rest, k + 1, acc + list(chosen))

    rec(tuple(range(1, n + 1)), 0, [])
    return out


def row_segments(kappa: Sequence[int], lam: cb.Multipartition) -> list[tuple[int, int]]:
    return [(kappa[t - 1] - r + 1, length) for t, r, length in lam.rows()]


class PermutationModule(SegmentModule):
    def __init__(self, ct: CartanType, kappa: Sequence[int], lam):
        lam = cb.Multipartition.of(lam)
        kappa = tuple(kappa)
        cb._check_level(kappa, lam)
        self.kappa = kappa
        self.shape = lam
        super().__init__(ct, row_segments(kappa, lam))

    def tableau_vector(self, t: cb.Tableau) -> Vector:
        return {self.index[cb.permutation_of(t)]: 1}


_MODULE_CACHE: dict = {}


def build_permutation_module(ct: CartanType, kappa: Sequence[int], lam) -> PermutationModule:
    lam = cb.Multipartition.of(lam)
    key = (ct, tuple(kappa), lam)
    mod = _MODULE_CACHE.get(key)
    if mod is None:
        mod = _MODULE_CACHE[key] = PermutationModule(ct, kappa, lam)
    return mod


def clear_caches() -> None:
    _MODULE_CACHE.clear()
    _SPECHT_CACHE.clear()
    _SOCLE_CACHE.clear()


# ---------------------------------------------------------------- Garnir elements


@dataclass
class GarnirElement:
    node: cb.Node
    vector: Vector
    leading: sg.Perm
    method: str
    solution_dimension: int = 1


class SocleSolveError(RuntimeError):
    pass


_SOCLE_CACHE: dict = {}


def socle_vector(ct: CartanType, k: int, a: int, b: int) -> tuple[dict[sg.Perm, Fraction], int]:
    """The embedded copy of L(k-1; a+b+1) inside L(k+a; b) o L(k-1; a+1).

    Solves e(nu)v = v, x_i v = 0 and psi_j v = 0 in the degree of
    psi_{w[b, a+1]}(u x u), and normalises the coefficient of w[b, a+1] to 1.
    Returns the solution as {permutation: coefficient} and the dimension of
    the solution space.
    """
    key = (ct, k, a, b)
    if key in _SOCLE_CACHE:
        return _SOCLE_CACHE[key]
    mod = SegmentModule(ct, [(k + a, b), (k - 1, a + 1)])
    lead = sg.w_ab(b, a + 1)
    lead_idx = mod.index[lead]
    target = (mod.weights[lead_idx], mod.degrees[lead_idx])
    cols = [i for i in range(len(mod)) if (mod.weights[i], mod.degrees[i]) == target]
    col_of = {i: c for c, i in enumerate(cols)}
    rows: dict[tuple, dict[int, int]] = {}
    for g in mod.generators():
        for i in cols:
            for j, c in mod.act_on_basis(g, i).items():
                rows.setdefault((g, j), {})[col_of[i]] = c
    keys = sorted(rows)
    mat = SparseMatrix(len(keys), len(cols), {(r, c): v for r, key_ in enumerate(keys) for c, v in rows[key_].items()})
    null = nullspace(mat)
    dim = len(null)
    if dim == 0:
        raise SocleSolveError(f"no socle vector for k={k}, a={a}, b={b}")
    lead_col = col_of[lead_idx]
    if dim > 1:
        result = ({}, dim)
    else:
        vec = null[0]
        if vec[lead_col] == 0:
            raise SocleSolveError("socle vector has no leading term")
        scale = 1 / vec[lead_col]
        result = ({mod.basis[cols[c]]: v * scale for c, v in enumerate(vec) if v}, dim)
    _SOCLE_CACHE[key] = result
    return result


def garnir_element(ct: CartanType, kappa: Sequence[int], lam, node, method: str | None = None) -> GarnirElement:
    """g_A in the basis of the permutation module.

    ``method`` is 'formula' (the single term psi_{w^{G^A}} m), 'socle' (the
    linear solve) or None, which picks 'formula' in type C_inf and 'socle'
    in affine type.
    """
    lam = cb.Multipartition.of(lam)
    node = cb.Node(*node)
    if not cb.is_garnir_node(lam, node):
        raise ValueError(f"{tuple(node)} is not a Garnir node of {lam}")
    mod = build_permutation_module(ct, kappa, lam)
    lead = cb.garnir_word(lam, node)
    if method is None:
        method = "socle" if ct.is_affine else "formula"
    if method == "formula":
        return GarnirElement(node, {mod.index[lead]: 1}, lead, method)
    if method != "socle":
        raise ValueError(f"unknown method {method!r}")
    r, c, t = node
    k = kappa[t - 1] - r + 1
    a = c - 1
    b = lam.row_length(r, t) - c + 1
    sol, dim = socle_vector(ct, k, a, b)
    if dim != 1:
        return GarnirElement(node, {}, lead, method, dim)
    off = cb.garnir_offset(lam, node)
    vec: Vector = {}
    for w, coeff in sol.items():
        big = sg.shift(w, off, lam.size)
        vec[mod.index[big]] = coeff
    return GarnirElement(node, vec, lead, method, dim)


# ---------------------------------------------------------------- Specht modules


class GarnirSubmodule:
    """Closure of a set of homogeneous vectors under all generators."""

    def __init__(self, module: SegmentModule, generators: Iterable[Vector], order: Sequence[int] | None = None):
        self.module = module
        self.blocks: dict[tuple, EchelonBasis] = {}
        gens = list(generators)
        if order is not None:
            gens = [gens[i] for i in order]
        queue = []
        for v in gens:
            row = self._insert(v)
            if row is not None:
                queue.append(row)
        actions = module.generators()
        while queue:
            v = queue.pop()
            for g in actions:
                image = module.act(g, v)
                if image:
                    row = self._insert(image)
                    if row is not None:
                        queue.append(row)

    def _insert(self, v: Vector) -> Vector | None:
        if not v:
            return None
        key = self.module.block_of(v)
        basis = self.blocks.setdefault(key, EchelonBasis())
        return basis.insert(v)

    def dimension(self, key) -> int:
        basis = self.blocks.get(key)
        return len(basis) if basis else 0

    def contains(self, v: Vector) -> bool:
        if not v:
            return True
        key = self.module.block_of(v)
        basis = self.blocks.get(key)
        return basis is not None and basis.contains(v)

    def total_dimension(self) -> int:
        return sum(len(b) for b in self.blocks.values())

    def character(self, shift: int = 0) -> dict[tuple, LaurentPolynomial]:
        acc: dict = defaultdict(dict)
        for (nu, d), basis in self.blocks.items():
            if len(basis):
                acc[nu][d + shift] = acc[nu].get(d + shift, 0) + len(basis)
        return {nu: LaurentPolynomial(v) for nu, v in acc.items()}


@dataclass
class SpechtModule:
    ct: CartanType
    kappa: tuple[int, ...]
    shape: cb.Multipartition
    module: PermutationModule
    garnir: list[GarnirElement]
    submodule: GarnirSubmodule
    shift: int
    method: str

    def quotient_dimension(self, key) -> int:
        return len(self.module.blocks().get(key, [])) - self.submodule.dimension(key)

    @cached_property
    def character(self) -> dict[tuple, LaurentPolynomial]:
        acc: dict = defaultdict(dict)
        for key, idxs in self.module.blocks().items():
            dim = len(idxs) - self.submodule.dimension(key)
            if dim:
                nu, d = key
                acc[nu][d + self.shift] = acc[nu].get(d + self.shift, 0) + dim
        return {nu: LaurentPolynomial(v) for nu, v in sorted(acc.items())}

    @property
    def dimension(self) -> int:
        return len(self.module) - self.submodule.total_dimension()

    def graded_dimension(self) -> LaurentPolynomial:
        total = LaurentPolynomial()
        for poly in self.character.values():
            total = total + poly
        return total

    def standard_vectors(self) -> list[tuple[cb.Tableau, Vector]]:
        return [(t, self.module.tableau_vector(t)) for t in cb.enumerate_tableaux(self.shape, "standard")]

    def cyclotomic_violations(self) -> list[int]:
        """Basis vectors b with x_1^N b outside the Garnir submodule, N = <h_{nu_1}, Lambda>."""
        weight = DominantWeight.from_multicharge(self.ct, self.kappa)
        bad = []
        if self.module.n == 0:
            return bad
        for i in range(len(self.module)):
            power = weight[self.module.weights[i][0]]
            v = {i: 1}
            for _ in range(power):
                v = self.module.act(("x", 1), v)
                if not v:
                    break
            if not self.submodule.contains(v):
                bad.append(i)
        return bad


_SPECHT_CACHE: dict = {}


def build_specht(ct: CartanType, kappa: Sequence[int], lam, method: str | None = None, order=None) -> SpechtModule:
    lam = cb.Multipartition.of(lam)
    kappa = tuple(kappa)
    cb._check_level(kappa, lam)
    if method is None:
        method = "socle" if ct.is_affine else "formula"
    key = (ct, kappa, lam, method, tuple(order) if order is not None else None)
    sp = _SPECHT_CACHE.get(key)
    if sp is not None:
        return sp
    mod = build_permutation_module(ct, kappa, lam)
    if method == "conjecture":
        elements = [conjectured_garnir_affine(ct, kappa, lam, node) for node in cb.garnir_nodes(lam)]
    else:
        elements = [garnir_element(ct, kappa, lam, node, method) for node in cb.garnir_nodes(lam)]
    for g in elements:
        if g.solution_dimension != 1:
            raise SocleSolveError(f"socle space of dimension {g.solution_dimension} at {tuple(g.node)}")
    sub = GarnirSubmodule(mod, [g.vector for g in elements], order)
    shift = cb.degree(ct, kappa, cb.initial_tableau(lam)) if lam.size else 0
    sp = SpechtModule(ct, kappa, lam, mod, elements, sub, shift, method)
    _SPECHT_CACHE[key] = sp
    return sp


def graded_character(m) -> dict[tuple, LaurentPolynomial]:
    if isinstance(m, SpechtModule):
        return m.character
    return m.character()


def tableau_character(ct: CartanType, kappa: Sequence[int], lam) -> dict[tuple, LaurentPolynomial]:
    """Sum of q^{deg t} (res t) over standard tableaux."""
    acc: dict = defaultdict(dict)
    for t in cb.enumerate_tableaux(lam, "standard"):
        nu = cb.residue_sequence(ct, kappa, t)
        d = cb.degree(ct, kappa, t)
        acc[nu][d] = acc[nu].get(d, 0) + 1
    return {nu: LaurentPolynomial(v) for nu, v in sorted(acc.items())}


@dataclass
class BasisReport:
    shape: cb.Multipartition
    kappa: tuple[int, ...]
    spanning: bool
    independent: bool
    graded_dims: LaurentPolynomial
    cyclotomic: bool
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.spanning and self.independent and self.cyclotomic


def verify_basis(ct: CartanType, kappa: Sequence[int], lam, method: str | None = None) -> BasisReport:
    """Check that the standard vectors give a basis of the Specht quotient, block by block."""
    sp = build_specht(ct, kappa, lam, method)
    mod = sp.module
    by_block: dict = defaultdict(list)
    for t, v in sp.standard_vectors():
        by_block[mod.block_of(v)].append((t, v))
    spanning = independent = True
    witness: dict = {}
    for key, idxs in mod.blocks().items():
        basis = EchelonBasis()
        for row in (sp.submodule.blocks.get(key) or EchelonBasis()).rows():
            basis.insert(row)
        for t, v in by_block.get(key, []):
            if basis.insert(v) is None:
                independent = False
                witness.setdefault("dependent", []).append(str(t))
        if len(basis) != len(idxs):
            spanning = False
            witness.setdefault("not_spanned", []).append([list(key[0]), key[1]])
    bad = sp.cyclotomic_violations()
    if bad:
        witness["cyclotomic"] = bad[:5]
    return BasisReport(sp.shape, sp.kappa, spanning, independent, sp.graded_dimension(), not bad, witness)


# ---------------------------------------------------------------- branching


def restrict_character(char: dict[tuple, LaurentPolynomial], i: int) -> dict[tuple, LaurentPolynomial]:
    """Keep residue words ending in i and drop the last letter."""
    out: dict = {}
    for nu, poly in char.items():
        if nu and nu[-1] == i:
            out[nu[:-1]] = out.get(nu[:-1], LaurentPolynomial()) + poly
    return {k: v for k, v in sorted(out.items()) if v}


def add_characters(*terms: tuple[LaurentPolynomial, dict]) -> dict[tuple, LaurentPolynomial]:
    out: dict = {}
    for coeff, char in terms:
        for nu, poly in char.items():
            out[nu] = out.get(nu, LaurentPolynomial()) + coeff * poly
    return {k: v for k, v in sorted(out.items()) if v}


@dataclass
class BranchReport:
    shape: cb.Multipartition
    i: int
    restricted: dict
    predicted: dict

    @property
    def ok(self) -> bool:
        return self.restricted == self.predicted


def branch_check(ct: CartanType, kappa: Sequence[int], lam, i: int) -> BranchReport:
    lam = cb.Multipartition.of(lam)
    restricted = restrict_character(build_specht(ct, kappa, lam).character, i)
    terms = []
    for b in cb.addable_removable(ct, kappa, lam, i)[1]:
        d_below = cb.d_statistics(ct, kappa, lam, b)[1]
        smaller = lam.remove(b)
        terms.append((LaurentPolynomial.monomial(d_below), build_specht(ct, kappa, smaller).character))
    return BranchReport(lam, i, restricted, add_characters(*terms))


# ---------------------------------------------------------------- the affine conjecture


def sigma_expansion(a: int, b: int) -> dict[tuple[int, ...], int]:
    """Expand the sum of tau_u over coset representatives into sigma words."""
    out: dict = defaultdict(int)
    for u in sg.coset_representatives(a, b):
        word = sg.canonical_word(u)
        for mask in range(1 << len(word)):
            sub = tuple(word[p] for p in range(len(word)) if mask >> p & 1)
            out[sub] += 1
    return dict(out)


def conjectured_garnir_affine(ct: CartanType, kappa: Sequence[int], lam, node) -> GarnirElement:
    """The conjectured g_A: the sum over coset representatives u of tau_u psi_{w^{t^A}} m."""
    if not ct.is_affine:
        raise ValueError("the brick conjecture concerns affine type")
    lam = cb.Multipartition.of(lam)
    node = cb.Node(*node)
    mod = build_permutation_module(ct, kappa, lam)
    bd = cb.brick_decomposition(ct, kappa, lam, node)
    base = {mod.index[cb.permutation_of(bd.tableau)]: 1}
    sign = -1 if ct.rank % 2 else 1
    words = {r: sg.canonical_word(w) for r, w in enumerate(bd.transpositions, 1)}
    total: Vector = {}
    for sub, coeff in sigma_expansion(bd.first_row_count, bd.second_row_count).items():
        v = dict(base)
        for r in reversed(sub):
            v = mod.apply_word(words[r], v)
            v = {i: sign * c for i, c in v.items()}
            if not v:
                break
        add_scaled(total, v, coeff)
    return GarnirElement(node, total, cb.garnir_word(lam, node), "conjecture")


@dataclass
class ConjectureReport:
    shape: cb.Multipartition
    kappa: tuple[int, ...]
    rank: int
    nodes: list[dict]
    basis_ok: bool | None
    basis_detail: dict

    @property
    def agree(self) -> bool:
        return all(x["agree"] for x in self.nodes)

    @property
    def ok(self) -> bool:
        return self.agree and bool(self.basis_ok)


def conjecture_check(ct: CartanType, kappa: Sequence[int], lam) -> ConjectureReport:
    if not ct.is_affine:
        raise ValueError("the brick conjecture concerns affine type")
    lam = cb.Multipartition.of(lam)
    kappa = tuple(kappa)
    rows = []
    for node in cb.garnir_nodes(lam):
        bd = cb.brick_decomposition(ct, kappa, lam, node)
        conj = conjectured_garnir_affine(ct, kappa, lam, node)
        try:
            solved = garnir_element(ct, kappa, lam, node, "socle")
            dim = solved.solution_dimension
            agree = dim == 1 and _same(solved.vector, conj.vector)
        except SocleSolveError:
            dim, agree = 0, False
        rows.append(
            {
                "node": list(node),
                "bricks": bd.count,
                "socle_dimension": dim,
                "agree": agree,
            }
        )
    detail = {}
    try:
        rep = verify_basis(ct, kappa, lam, "conjecture")
        basis_ok = rep.ok
        detail = {"spanning": rep.spanning, "independent": rep.independent, "cyclotomic": rep.cyclotomic}
    except SocleSolveError as exc:
        basis_ok = None
        detail = {"error": str(exc)}
    return ConjectureReport(lam, kappa, ct.rank, rows, basis_ok, detail)


def _same(u: Vector, v: Vector) -> bool:
    return {k: Fraction(x) for k, x in u.items() if x} == {k: Fraction(x) for k, x in v.items() if x}
