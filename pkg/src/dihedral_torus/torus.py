"""Exact model of products of elliptic curves and their quotient tori.

Points live in lattice-basis coordinates: complex coordinate i of a
product E_1 × ... × E_c is a value p + q·τ_i with (p, q) rational, and
the formal period τ_i is never evaluated.  A holomorphic automorphism
that permutes (and negates) coordinates and translates by torsion then
realifies to an exact rational matrix plus a rational shift, so every
verification below holds for all choices of the elliptic curves at once.

Coordinate layout: complex coordinate i (0-based) owns the two real
slots 2i, 2i+1, in order (1-part, τ-part).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .linalg import (
    Matrix,
    Rational,
    Vector,
    det,
    hnf,
    inverse as matrix_inverse,
    vector,
)

_F0 = Fraction(0)
_F1 = Fraction(1)
_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class TorusShape:
    """Shape of the ambient product: 2n copies of E and one E′ at the end."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")

    @property
    def complex_dim(self) -> int:
        return 2 * self.n + 1

    @property
    def real_dim(self) -> int:
        return 2 * self.complex_dim

    @property
    def eprime_index(self) -> int:
        """Complex index of the lone E′ factor (always the last one)."""
        return self.complex_dim - 1

    def is_eprime(self, i: int) -> bool:
        return i == self.eprime_index


@dataclass(frozen=True)
class TorsionPoint:
    """Rational point in lattice coordinates, length 2 per complex factor."""

    coords: Vector

    @classmethod
    def of(cls, entries: Iterable[Rational]) -> "TorsionPoint":
        return cls(vector(entries))

    @classmethod
    def zero(cls, m: int) -> "TorsionPoint":
        return cls((_F0,) * m)

    @property
    def is_zero(self) -> bool:
        return all(e == 0 for e in self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __add__(self, other: "TorsionPoint") -> "TorsionPoint":
        return TorsionPoint(tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)))

    def __sub__(self, other: "TorsionPoint") -> "TorsionPoint":
        return TorsionPoint(tuple(a - b for a, b in zip(self.coords, other.coords, strict=True)))

    def __neg__(self) -> "TorsionPoint":
        return TorsionPoint(tuple(-a for a in self.coords))

    def __repr__(self) -> str:
        return "TorsionPoint(" + ", ".join(str(e) for e in self.coords) + ")"


@dataclass(frozen=True)
class EnlargedLattice:
    """Full-rank lattice Z^m + Z·g_1 + ... + Z·g_k inside Q^m.

    canonical_basis holds the unique upper-triangular HNF basis (rows) at
    the common denominator of the extra generators, so structural equality
    of two EnlargedLattice values is equality of the lattices themselves.
    """

    m: int
    extra_generators: tuple[Vector, ...] = field(compare=False)
    canonical_basis: tuple[Vector, ...]
    index: int

    @classmethod
    def from_extra_generators(
        cls, m: int, extras: Sequence[Sequence[Rational]] = ()
    ) -> "EnlargedLattice":
        if m < 1:
            raise ValueError("dimension must be positive")
        extra_vs = tuple(vector(g) for g in extras)
        if any(len(g) != m for g in extra_vs):
            raise ValueError("extra generators must have length m")
        d = lcm(1, *(e.denominator for g in extra_vs for e in g))
        rows = [[int(e * d) for e in g] for g in extra_vs]
        rows.extend([d if i == j else 0 for j in range(m)] for i in range(m))
        dec = hnf(rows)
        assert dec.rank == m  # d·Z^m is among the generators
        basis = tuple(
            tuple(Fraction(e, d) for e in dec.h[i]) for i in range(m)
        )
        diag_prod = 1
        for i in range(m):
            diag_prod *= dec.h[i][i]
        index, rem = divmod(d**m, diag_prod)
        assert rem == 0  # Z^m is a sublattice, so covolumes divide
        return cls(
            m=m, extra_generators=extra_vs, canonical_basis=basis, index=index
        )

    @classmethod
    def standard(cls, m: int) -> "EnlargedLattice":
        return cls.from_extra_generators(m)

    @property
    def generators(self) -> tuple[Vector, ...]:
        """The defining generating set: standard basis plus the extras."""
        std = tuple(
            tuple(_F1 if i == j else _F0 for j in range(self.m))
            for i in range(self.m)
        )
        return std + self.extra_generators

    def reduce(self, p: Sequence[Rational] | TorsionPoint) -> TorsionPoint:
        """Canonical representative of p modulo the lattice.

        Coordinates of the result lie in [0, pivot_i) per canonical basis
        row; reduce is idempotent and reduce(p) - p is a lattice member.
        """
        if isinstance(p, TorsionPoint):
            p = p.coords
        v = list(vector(p))
        if len(v) != self.m:
            raise ValueError("point length does not match lattice dimension")
        for i, row in enumerate(self.canonical_basis):
            q = v[i] // row[i]
            if q:
                for j in range(i, self.m):
                    if row[j]:
                        v[j] -= q * row[j]
        return TorsionPoint(tuple(v))

    def contains(self, p: Sequence[Rational] | TorsionPoint) -> bool:
        return self.reduce(p).is_zero


@dataclass(frozen=True)
class ComplexMonomialMap:
    """Holomorphic affine map z_j ↦ ε_j · z_{σ(j)} + t_j on the product.

    perm[j] is the input coordinate σ(j) read by output j; signs[j] is
    ε_j ∈ {+1, −1}; translation stores t in realified lattice coordinates
    (length 2 · number of complex coordinates).
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]
    translation: TorsionPoint

    def __post_init__(self):
        c = len(self.perm)
        if sorted(self.perm) != list(range(c)):
            raise ValueError("perm must be a permutation of 0..c-1")
        if len(self.signs) != c or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be ±1, one per coordinate")
        if len(self.translation) != 2 * c:
            raise ValueError("translation must have two slots per coordinate")

    @classmethod
    def identity(cls, complex_dim: int) -> "ComplexMonomialMap":
        return cls(
            perm=tuple(range(complex_dim)),
            signs=(1,) * complex_dim,
            translation=TorsionPoint.zero(2 * complex_dim),
        )

    def translation_pair(self, j: int) -> tuple[Fraction, Fraction]:
        return (self.translation[2 * j], self.translation[2 * j + 1])

    def compose(self, other: "ComplexMonomialMap") -> "ComplexMonomialMap":
        """self ∘ other, still in monomial form (other is applied first)."""
        c = len(self.perm)
        if len(other.perm) != c:
            raise ValueError("maps act on different products")
        perm = tuple(other.perm[self.perm[j]] for j in range(c))
        signs = tuple(self.signs[j] * other.signs[self.perm[j]] for j in range(c))
        shift = []
        for j in range(c):
            p, q = other.translation_pair(self.perm[j])
            shift.extend(
                (self.signs[j] * p + self.translation[2 * j],
                 self.signs[j] * q + self.translation[2 * j + 1])
            )
        return ComplexMonomialMap(perm, signs, TorsionPoint.of(shift))

    def power(self, e: int) -> "ComplexMonomialMap":
        if e < 0:
            raise ValueError("negative powers not needed at the monomial level")
        acc = ComplexMonomialMap.identity(len(self.perm))
        for _ in range(e):
            acc = acc.compose(self)
        return acc


class AffineAuto:
    """Realified automorphism z ↦ M·z + t modulo an enlarged lattice.

    The public constructor checks that M is unimodular and maps the
    lattice onto itself; t is stored in canonical reduced form.  Values
    are immutable and hashable, so they double as closure keys.
    """

    __slots__ = ("linear", "translation", "lattice", "_hash")

    def __init__(
        self,
        linear: Matrix,
        translation: Sequence[Rational] | TorsionPoint,
        lattice: EnlargedLattice,
    ):
        m = lattice.m
        if not (linear.is_square and linear.n_rows == m):
            raise ValueError("linear part must be m×m for the lattice's m")
        if abs(det(linear)) != 1:
            raise ValueError("linear part must have determinant ±1")
        for row in lattice.canonical_basis:
            if not lattice.contains(linear.matvec(row)):
                raise ValueError("linear part does not preserve the lattice")
        self.linear = linear
        self.translation = lattice.reduce(translation)
        self.lattice = lattice
        self._hash = None

    @classmethod
    def _make(
        cls, linear: Matrix, reduced: TorsionPoint, lattice: EnlargedLattice
    ) -> "AffineAuto":
        # Internal fast path: caller guarantees the invariants (products and
        # inverses of valid automorphisms stay valid, translations reduced).
        g = object.__new__(cls)
        g.linear = linear
        g.translation = reduced
        g.lattice = lattice
        g._hash = None
        return g

    @classmethod
    def identity(cls, lattice: EnlargedLattice) -> "AffineAuto":
        return cls._make(
            Matrix.identity(lattice.m), TorsionPoint.zero(lattice.m), lattice
        )

    @classmethod
    def translation_by(
        cls, t: Sequence[Rational] | TorsionPoint, lattice: EnlargedLattice
    ) -> "AffineAuto":
        return cls._make(Matrix.identity(lattice.m), lattice.reduce(t), lattice)

    @property
    def is_identity(self) -> bool:
        return self.translation.is_zero and self.linear.is_identity

    def apply(self, p: Sequence[Rational] | TorsionPoint) -> TorsionPoint:
        if isinstance(p, TorsionPoint):
            p = p.coords
        image = self.linear.matvec(p)
        shifted = tuple(a + b for a, b in zip(image, self.translation.coords))
        return self.lattice.reduce(shifted)

    def with_lattice(self, lattice: EnlargedLattice) -> "AffineAuto":
        """The same affine map regarded modulo a different lattice (revalidated)."""
        if lattice == self.lattice:
            return self
        return AffineAuto(self.linear, self.translation.coords, lattice)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AffineAuto)
            and self.linear == other.linear
            and self.translation == other.translation
            and self.lattice == other.lattice
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.linear, self.translation))
        return self._hash

    def __repr__(self) -> str:
        return f"AffineAuto(linear={self.linear!r}, t={self.translation!r})"


def realify(
    cmap: ComplexMonomialMap,
    shape: TorusShape,
    lattice: EnlargedLattice | None = None,
) -> AffineAuto:
    """Expand a monomial map to its 2×2-block matrix on lattice coordinates.

    Output block row j carries ε_j·I₂ at block column σ(j): negating
    p + q·τ negates both lattice coordinates, and coordinates on distinct
    factors never mix.  Rejects maps that send an E coordinate to the E′
    coordinate or back, since those are not holomorphic for generic
    periods.

    When `lattice` is omitted the map is taken modulo Z^m (the ambient
    product itself); pass the quotient's enlarged lattice to realify an
    automorphism of the quotient.
    """
    c = shape.complex_dim
    if len(cmap.perm) != c:
        raise ValueError("map and shape have different numbers of coordinates")
    for j, src in enumerate(cmap.perm):
        if shape.is_eprime(j) != shape.is_eprime(src):
            raise ValueError(
                "permutation mixes E and E′ factors (not holomorphic)"
            )
    m = shape.real_dim
    rows = [[_F0] * m for _ in range(m)]
    for j, (src, eps) in enumerate(zip(cmap.perm, cmap.signs)):
        rows[2 * j][2 * src] = Fraction(eps)
        rows[2 * j + 1][2 * src + 1] = Fraction(eps)
    if lattice is None:
        lattice = EnlargedLattice.standard(m)
    return AffineAuto(Matrix(rows), cmap.translation, lattice)


def compose(g: AffineAuto, h: AffineAuto) -> AffineAuto:
    """g ∘ h (h is applied first), on the automorphisms' shared lattice."""
    if g.lattice != h.lattice:
        raise ValueError("automorphisms live on different lattices")
    linear = g.linear @ h.linear
    moved = g.linear.matvec(h.translation.coords)
    t = tuple(a + b for a, b in zip(moved, g.translation.coords))
    return AffineAuto._make(linear, g.lattice.reduce(t), g.lattice)


def inverse(g: AffineAuto) -> AffineAuto:
    inv = matrix_inverse(g.linear)
    t = tuple(-e for e in inv.matvec(g.translation.coords))
    return AffineAuto._make(inv, g.lattice.reduce(t), g.lattice)


def equal_mod_lattice(g: AffineAuto, h: AffineAuto, lattice: EnlargedLattice) -> bool:
    """True iff the maps agree as automorphisms modulo `lattice`.

    The comparison lattice is explicit so that maps constructed on the
    ambient product can be compared as maps of a further quotient.
    """
    if g.linear != h.linear:
        return False
    diff = tuple(
        a - b for a, b in zip(g.translation.coords, h.translation.coords)
    )
    return lattice.contains(diff)
