"""Group-theoretic and fixed-point analysis of affine torus automorphisms.

Everything is decided exactly.  The one numerical ingredient, the
brute-force torsion oracle, enumerates scaled integer grids with numpy
but never leaves integer arithmetic.

A fixed point of g: z ↦ M·z + t modulo a lattice L is a solution of
(M − I)·x = −t + λ with λ ∈ L.  Solvability is decided by projecting to
the left kernel of (M − I): with N a basis of {x : x·(M − I) = 0}, a
solution exists iff N·t lies in the subgroup of Q^rows(N) generated by
{N·g_i} over the lattice generators g_i.  All data is rational, and the
rational points of the affine solution space are dense in its real
points, so rational solvability and real solvability coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .linalg import Matrix, dot, left_nullspace, subgroup_membership
from .torus import (
    AffineAuto,
    EnlargedLattice,
    TorsionPoint,
    compose,
    inverse,
)

DEFAULT_CLOSURE_CAP = 1024
DEFAULT_ORDER_CAP = 512
DEFAULT_ORACLE_BUDGET = 10_000_000

_CHUNK = 1 << 16
_INT64_SAFE = 1 << 62


class CapExceeded(RuntimeError):
    """A closure or order computation ran past its configured cap."""


class ClosureCapExceeded(CapExceeded):
    pass


class OrderCapExceeded(CapExceeded):
    pass


class OracleBudgetExceeded(RuntimeError):
    """The torsion oracle refused an enumeration larger than its budget."""


@dataclass(frozen=True)
class GroupElement:
    """Closure element: automorphism plus bookkeeping words.

    path is the BFS discovery word as generator indices (left-to-right
    composition order, empty for the identity).  word and label are the
    dihedral normal form (a, b) for r^a s^b and its rendering; they are
    assigned after closure when the group turns out to be dihedral.
    """

    auto: AffineAuto
    path: tuple[int, ...]
    word: tuple[int, int] | None = None
    label: str | None = None


@dataclass(frozen=True)
class ElementReport:
    word: str
    order: int
    is_translation: bool
    has_fixed_point: bool


@dataclass(frozen=True)
class GroupAnalysis:
    """Closure of a generating set together with per-element verdicts."""

    elements: tuple[GroupElement, ...]
    reports: tuple[ElementReport, ...]
    group_size: int
    is_free: bool
    has_no_translations: bool
    dihedral_shape: bool
    rotation_order: int | None
    conjugacy_class_count: int
    symmetry_class_count: int | None


def _as_auto(g: GroupElement | AffineAuto) -> AffineAuto:
    return g.auto if isinstance(g, GroupElement) else g


def order(
    g: GroupElement | AffineAuto,
    lattice: EnlargedLattice | None = None,
    cap: int = DEFAULT_ORDER_CAP,
) -> int:
    """Smallest k ≥ 1 with g^k the identity modulo the lattice."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    auto = _as_auto(g)
    if lattice is not None:
        auto = auto.with_lattice(lattice)
    acc = auto
    k = 1
    while not acc.is_identity:
        k += 1
        if k > cap:
            raise OrderCapExceeded(f"order exceeds cap {cap}")
        acc = compose(acc, auto)
    return k


def is_translation(g: GroupElement | AffineAuto) -> bool:
    """True for a nonidentity element whose linear part is the identity."""
    auto = _as_auto(g)
    return auto.linear.is_identity and not auto.translation.is_zero


def exists_fixed_point(
    g: GroupElement | AffineAuto, lattice: EnlargedLattice | None = None
) -> bool:
    """Exact decision of whether g(z) = z has a solution on the quotient."""
    auto = _as_auto(g)
    if lattice is None:
        lattice = auto.lattice
    m = lattice.m
    c = auto.linear - Matrix.identity(m)
    kernel = left_nullspace(c)
    if not kernel:
        # M - I invertible: (M - I)x = -t always solvable, λ = 0.
        return True
    t = auto.translation.coords
    projected_t = tuple(dot(row, t) for row in kernel)
    projected_gens = [
        tuple(dot(row, gen) for row in kernel)
        for gen in lattice.canonical_basis
    ]
    return subgroup_membership(projected_t, projected_gens)


def closure(
    gens: Sequence[GroupElement | AffineAuto],
    lattice: EnlargedLattice | None = None,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> list[GroupElement]:
    """Breadth-first closure of the generated group, identity included.

    Deterministic: elements appear in BFS discovery order with the given
    generator order, each remembered by its discovery word.  Every
    generator has finite order in a group that closes under the cap, so
    closing under composition alone already yields inverses.
    """
    if not gens:
        raise ValueError("need at least one generator")
    if cap < 1:
        raise ValueError("cap must be at least 1")
    autos = [_as_auto(g) for g in gens]
    if lattice is not None:
        autos = [a.with_lattice(lattice) for a in autos]
    found: dict[AffineAuto, tuple[int, ...]] = {
        AffineAuto.identity(autos[0].lattice): ()
    }
    queue = list(found)
    while queue:
        current = queue.pop(0)
        path = found[current]
        for gi, gen in enumerate(autos):
            nxt = compose(current, gen)
            if nxt not in found:
                if len(found) >= cap:
                    raise ClosureCapExceeded(f"closure exceeds cap {cap}")
                found[nxt] = path + (gi,)
                queue.append(nxt)
    return [GroupElement(auto=a, path=p) for a, p in found.items()]


def conjugacy_classes(
    group: Sequence[GroupElement],
    conjugators: Sequence[GroupElement | AffineAuto] | None = None,
) -> list[list[GroupElement]]:
    """Partition of a closed group into conjugacy classes.

    With `conjugators` given (typically the generating set), classes are
    computed as orbits under conjugation by those elements only; this is
    the full conjugacy partition whenever the conjugators generate the
    group, at a fraction of the compositions.
    """
    autos = [e.auto for e in group]
    by_auto = {a: i for i, a in enumerate(autos)}
    if conjugators is None:
        conj_autos = autos
    else:
        conj_autos = [_as_auto(c) for c in conjugators]
    inverses = [inverse(h) for h in conj_autos]
    assigned = [False] * len(group)
    classes: list[list[GroupElement]] = []
    for start, elem in enumerate(group):
        if assigned[start]:
            continue
        orbit = {start: None}
        frontier = [autos[start]]
        while frontier:
            g = frontier.pop(0)
            for h, h_inv in zip(conj_autos, inverses):
                image = compose(h, compose(g, h_inv))
                idx = by_auto.get(image)
                if idx is None:
                    raise ValueError("group is not closed under conjugation")
                if idx not in orbit:
                    orbit[idx] = None
                    frontier.append(autos[idx])
        members = sorted(orbit)
        for idx in members:
            assigned[idx] = True
        classes.append([group[idx] for idx in members])
    return classes


def _dihedral_label(a: int, b: int) -> str:
    parts = []
    if a == 1:
        parts.append("r")
    elif a:
        parts.append(f"r^{a}")
    if b:
        parts.append("s")
    return " ".join(parts)


def _path_label(path: tuple[int, ...], names: Sequence[str]) -> str:
    parts = []
    for gi in path:
        name = names[gi]
        if parts and parts[-1][0] == name:
            parts[-1] = (name, parts[-1][1] + 1)
        else:
            parts.append((name, 1))
    return " ".join(n if e == 1 else f"{n}^{e}" for n, e in parts)


def _try_dihedral_labels(
    gens: list[AffineAuto], elements: list[GroupElement], order_cap: int
) -> tuple[dict[AffineAuto, tuple[int, int]], int] | None:
    """Normal forms r^a s^b if the closure satisfies the D_k presentation."""
    if len(gens) != 2:
        return None
    size = len(elements)
    if size % 2:
        return None
    k = size // 2
    r, s = gens
    try:
        if order(r, cap=order_cap) != k or order(s, cap=order_cap) != 2:
            return None
        if order(compose(r, s), cap=order_cap) != 2:
            return None
    except OrderCapExceeded:
        return None
    identity = AffineAuto.identity(r.lattice)
    labels: dict[AffineAuto, tuple[int, int]] = {}
    power = identity
    for a in range(k):
        labels[power] = (a, 0)
        labels[compose(power, s)] = (a, 1)
        power = compose(power, r)
    if len(labels) != size:
        return None
    if any(e.auto not in labels for e in elements):
        return None
    return labels, k


def analyze_group(
    gens: Sequence[GroupElement | AffineAuto],
    lattice: EnlargedLattice | None = None,
    closure_cap: int = DEFAULT_CLOSURE_CAP,
    order_cap: int = DEFAULT_ORDER_CAP,
    gen_names: Sequence[str] | None = None,
) -> GroupAnalysis:
    """Close the generators, then report order/translation/fixed-point per element.

    Elements are labeled by dihedral normal form when the closure
    satisfies a D_k presentation on the given two generators, otherwise
    by BFS discovery words; reports are sorted by (rotation exponent,
    reflection bit) respectively by discovery word.
    """
    autos = [_as_auto(g) for g in gens]
    if lattice is not None:
        autos = [a.with_lattice(lattice) for a in autos]
    elements = closure(autos, cap=closure_cap)
    if gen_names is None:
        gen_names = ("r", "s") if len(autos) == 2 else tuple(
            f"g{i + 1}" for i in range(len(autos))
        )

    labeled: list[GroupElement]
    dihedral = _try_dihedral_labels(autos, elements, order_cap)
    if dihedral is not None:
        label_map, rotation_order = dihedral
        labeled = [
            replace(
                e,
                word=label_map[e.auto],
                label=_dihedral_label(*label_map[e.auto]),
            )
            for e in elements
        ]
        labeled.sort(key=lambda e: e.word)
    else:
        rotation_order = None
        labeled = [
            replace(e, label=_path_label(e.path, gen_names)) for e in elements
        ]
        labeled.sort(key=lambda e: (len(e.path), e.path))

    reports = tuple(
        ElementReport(
            word=e.label,
            order=order(e.auto, cap=order_cap),
            is_translation=is_translation(e.auto),
            has_fixed_point=exists_fixed_point(e.auto),
        )
        for e in labeled
    )
    is_free = all(
        rep.has_fixed_point is False
        for e, rep in zip(labeled, reports)
        if not e.auto.is_identity
    )
    has_no_translations = not any(rep.is_translation for rep in reports)

    classes = conjugacy_classes(labeled, conjugators=autos)
    symmetry_class_count = None
    if dihedral is not None:
        reflection_bits = [{e.word[1] for e in cls} for cls in classes]
        # Rotations form a normal subgroup, so no class may mix.
        assert all(bits in ({0}, {1}) for bits in reflection_bits)
        symmetry_class_count = sum(1 for bits in reflection_bits if bits == {1})

    return GroupAnalysis(
        elements=tuple(labeled),
        reports=reports,
        group_size=len(labeled),
        is_free=is_free,
        has_no_translations=has_no_translations,
        dihedral_shape=dihedral is not None,
        rotation_order=rotation_order,
        conjugacy_class_count=len(classes),
        symmetry_class_count=symmetry_class_count,
    )


def _oracle_arrays(auto: AffineAuto, lattice: EnlargedLattice, d: int):
    """Integer-scaled data for the grid enumeration: everything times W.

    W = W0·d where W0 clears every denominator in M − I, t and the
    lattice basis; then W·((M − I)·p + t) is integral on the whole grid
    p ∈ (1/d)Z^m and W·L has the integer basis W·B.
    """
    m = lattice.m
    mi = auto.linear - Matrix.identity(m)
    denoms = [e.denominator for row in mi.rows for e in row]
    denoms += [e.denominator for e in auto.translation.coords]
    denoms += [e.denominator for row in lattice.canonical_basis for e in row]
    w0 = lcm(1, *denoms)
    w = w0 * d
    mi_int = [[int(e * w0) for e in row] for row in mi.rows]
    t_int = [int(e * w) for e in auto.translation.coords]
    basis_int = [[int(e * w) for e in row] for row in lattice.canonical_basis]
    return w, mi_int, t_int, basis_int


def _overflow_bound(m: int, d: int, mi_int, t_int, basis_int) -> int:
    bound = max(
        sum(abs(e) for e in row) * (d - 1) + abs(t)
        for row, t in zip(mi_int, t_int)
    )
    bound = max(bound, max(abs(e) for row in basis_int for e in row) * d)
    for i in range(m):
        q_bound = bound // basis_int[i][i] + 1
        bound += q_bound * max(abs(e) for e in basis_int[i])
    return bound


def _triangular_residues(v: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Reduce rows of v modulo the upper-triangular row basis, in place.

    Afterwards column i of v holds the canonical residue in
    [0, basis[i][i]); a row is a lattice member iff it is now all zero.
    Basis rows are usually scaled standard vectors, so the update only
    touches their nonzero columns.
    """
    m = basis.shape[0]
    for i in range(m):
        pivot = basis[i, i]
        tail = [j for j in range(i + 1, m) if basis[i, j]]
        if not tail:
            v[:, i] %= pivot
            continue
        q = v[:, i] // pivot
        v[:, i] -= q * pivot
        for j in tail:
            v[:, j] -= q * basis[i, j]
    return v


def torsion_fixed_points_bruteforce(
    g: GroupElement | AffineAuto,
    denominator: int,
    lattice: EnlargedLattice | None = None,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> list[TorsionPoint]:
    """All fixed points of g with coordinates in (1/denominator)Z, mod lattice.

    Enumerates the full grid {k/denominator : 0 ≤ k < denominator}^m,
    keeps the points with g(p) = p modulo the lattice, and returns their
    canonical representatives deduplicated and sorted lexicographically.
    Serves as an independent oracle for exists_fixed_point: any fixed
    point of an affine map with finite-order linear part and rational
    translation can be perturbed to a torsion fixed point, so a suitable
    denominator (a multiple of lcm(order, denominators involved)) makes
    the comparison exact.

    Refuses enumerations whose expected distinct-point count
    denominator^m / [L : Z^m] exceeds the budget.
    """
    if denominator < 1:
        raise ValueError("denominator must be positive")
    auto = _as_auto(g)
    if lattice is None:
        lattice = auto.lattice
    else:
        auto = auto.with_lattice(lattice)
    m = lattice.m
    d = denominator
    expected = d**m // lattice.index
    if expected > budget:
        raise OracleBudgetExceeded(
            f"{expected} grid points exceed the oracle budget of {budget}"
        )

    w, mi_int, t_int, basis_int = _oracle_arrays(auto, lattice, d)
    if _overflow_bound(m, d, mi_int, t_int, basis_int) >= _INT64_SAFE:
        raise RuntimeError("oracle scaling exceeds 64-bit integer range")
    mi_t = np.array(mi_int, dtype=np.int64).T
    t_arr = np.array(t_int, dtype=np.int64)
    basis_arr = np.array(basis_int, dtype=np.int64)
    powers = np.array([d ** (m - 1 - j) for j in range(m)], dtype=np.int64)
    grid_scale = w // d

    survivors = []
    total_grid = d**m
    for start in range(0, total_grid, _CHUNK):
        stop = min(start + _CHUNK, total_grid)
        idx = np.arange(start, stop, dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % d
        image = digits @ mi_t + t_arr
        residues = _triangular_residues(image, basis_arr)
        mask = np.all(residues == 0, axis=1)
        if mask.any():
            canonical = _triangular_residues(
                digits[mask] * grid_scale, basis_arr
            )
            survivors.append(canonical)

    if not survivors:
        return []
    unique_rows = np.unique(np.concatenate(survivors), axis=0)
    # Canonical coordinates lie in [0, W·pivot_i) ⊆ [0, W·max_pivot), so a
    # small lookup table covers every value that can appear.
    table = [Fraction(v, w) for v in range(int(unique_rows.max()) + 1)]
    return [
        TorsionPoint(tuple(table[x] for x in row.tolist()))
        for row in unique_rows
    ]
