"""Finitely generated abelian groups in diagonal presentation.

A group is Z^free_rank x Z/t1 x ... x Z/ts with all torsion orders >= 2.
Elements are coordinate tuples relative to the presentation's generators,
always stored reduced (torsion coordinates in [0, t)).  Everything is an
immutable value object so elements can key sets and dicts.

Homomorphisms between presented groups are integer matrices acting on
coordinate columns; apply_hom reduces in the target and check_hom verifies
well-definedness (each source generator's order must annihilate its image).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .errors import BoundsError, InvariantError, MismatchError

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int
    torsion_orders: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise InvariantError(f"free rank must be >= 0, got {self.free_rank}")
        if any(t < 2 for t in self.torsion_orders):
            raise InvariantError(
                f"torsion orders must be >= 2, got {self.torsion_orders}"
            )

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion_orders)

    @property
    def orders(self) -> tuple[int, ...]:
        """Per-generator orders, 0 meaning infinite."""
        return (0,) * self.free_rank + self.torsion_orders

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def reduce(self, coords: tuple[int, ...]) -> tuple[int, ...]:
        if len(coords) != self.ngens:
            raise MismatchError(
                f"expected {self.ngens} coordinates for {self}, got {coords!r}"
            )
        return tuple(
            c if t == 0 else c % t for c, t in zip(coords, self.orders)
        )

    def element(self, coords: tuple[int, ...]) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    def zero(self) -> "GroupElement":
        return self.element((0,) * self.ngens)

    def elements(self, bound: int | None = None) -> Iterator["GroupElement"]:
        """All elements in lexicographic coordinate order.

        Free coordinates need a box: they range over [-bound, bound] and a
        missing bound raises.  Torsion coordinates always range fully, so for
        finite groups the listing is exhaustive regardless of bound.
        """
        if self.free_rank > 0 and bound is None:
            raise BoundsError(
                "enumerating an infinite group needs a coordinate bound"
            )
        if bound is not None and bound < 0:
            raise BoundsError(f"coordinate bound must be >= 0, got {bound}")
        ranges = [
            range(-bound, bound + 1) if t == 0 else range(t)  # type: ignore[operator]
            for t in self.orders
        ]
        for coords in product(*ranges):
            yield self.element(coords)


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", self.group.reduce(self.coords))

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if other.group != self.group:
            raise MismatchError("cannot add elements of different groups")
        return self.group.element(
            tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __neg__(self) -> "GroupElement":
        return self.group.element(tuple(-a for a in self.coords))

    def __rmul__(self, scalar: int) -> "GroupElement":
        return self.group.element(tuple(scalar * a for a in self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def check_hom(source: AbelianGroup, target: AbelianGroup, matrix: Matrix) -> None:
    """Verify that matrix defines a homomorphism source -> target.

    The matrix has one row per target generator and one column per source
    generator.  For a source generator of finite order t the image column
    scaled by t must reduce to zero in the target.
    """
    if len(matrix) != target.ngens or any(
        len(row) != source.ngens for row in matrix
    ):
        raise MismatchError(
            f"matrix shape {len(matrix)}x... does not map "
            f"{source.ngens} generators to {target.ngens}"
        )
    for j, t in enumerate(source.orders):
        if t == 0:
            continue
        image = target.reduce(tuple(t * matrix[i][j] for i in range(target.ngens)))
        if any(image):
            raise MismatchError(
                f"matrix is not a homomorphism: {t} * (image of generator {j}) "
                f"is {image}, not zero"
            )


def apply_hom(
    target: AbelianGroup, matrix: Matrix, x: GroupElement
) -> GroupElement:
    """Apply a homomorphism matrix (rows indexed by target generators)."""
    if len(matrix) != target.ngens:
        raise MismatchError("matrix row count does not match target group")
    if any(len(row) != len(x.coords) for row in matrix):
        raise MismatchError("matrix column count does not match element")
    return target.element(
        tuple(
            sum(row[j] * x.coords[j] for j in range(len(x.coords)))
            for row in matrix
        )
    )


def identity_matrix(group: AbelianGroup) -> Matrix:
    n = group.ngens
    return tuple(
        tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
    )
