"""Cohomological data of the base manifold, in exact integer form.

A ManifoldModel packages everything the orbit-type machinery needs from a
compact connected oriented manifold of dimension <= 4:

* H^2 and H^4 with integer coefficients as presented abelian groups,
* the cup product pairing H^2 x H^2 -> H^4 as a table over generators,
* for each instantiated modulus g >= 1 the finite group H^1(M, Z_g),
  the integral Bockstein H^1(M, Z_g) -> H^2(M, Z) of the sequence
  0 -> Z -g-> Z -> Z_g -> 0, and for g' | g the coefficient reduction
  H^1(M, Z_g) -> H^1(M, Z_g').

Validation is structural and exact: all maps must be genuine homomorphisms,
reductions must compose functorially, and (g/g') * bockstein_g must agree
with bockstein_g' composed with reduction.  Models are immutable and
hashable, so labels built over them are value objects.

An EvenClass is a unit-normalized even-degree class 1 + a2 + a4 truncated by
a multiplicity k: entries with k == 1 have no degree-4 part.  On a manifold
of dimension <= 4 nothing above degree 4 survives, so (deg2, deg4) is the
whole story.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, lcm
from pathlib import Path
from typing import Iterable, Iterator, Mapping

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib  # type: ignore[no-redef]

from .abgroup import AbelianGroup, GroupElement, Matrix, apply_hom, check_hom, identity_matrix
from .errors import BoundsError, DescriptorError, InvariantError, MismatchError

CupTable = tuple[tuple[tuple[int, ...], ...], ...]

_LENS_NAME = re.compile(r"^LensL\((\d+),(\d+)\)xS1$")


@dataclass(frozen=True)
class ManifoldModel:
    name: str
    dim: int
    h2: AbelianGroup
    h4: AbelianGroup
    cup_table: CupTable
    h1_groups: tuple[tuple[int, AbelianGroup], ...]
    bockstein_maps: tuple[tuple[int, Matrix], ...]
    reduction_maps: tuple[tuple[int, int, Matrix], ...]

    def __post_init__(self) -> None:
        _validate_model(self)

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(g for g, _ in self.h1_groups)

    def h1(self, g: int) -> AbelianGroup:
        for modulus, group in self.h1_groups:
            if modulus == g:
                return group
        raise MismatchError(
            f"modulus {g} is not instantiated for manifold {self.name!r} "
            f"(available: {list(self.moduli)})"
        )

    def bockstein_matrix(self, g: int) -> Matrix:
        for modulus, matrix in self.bockstein_maps:
            if modulus == g:
                return matrix
        raise MismatchError(
            f"no Bockstein stored for modulus {g} on manifold {self.name!r}"
        )

    def reduction_matrix(self, g: int, g_to: int) -> Matrix:
        for a, b, matrix in self.reduction_maps:
            if (a, b) == (g, g_to):
                return matrix
        raise MismatchError(
            f"no reduction map {g} -> {g_to} stored for manifold {self.name!r}"
        )


def _basis(group: AbelianGroup) -> list[GroupElement]:
    return [
        group.element(tuple(1 if i == j else 0 for j in range(group.ngens)))
        for i in range(group.ngens)
    ]


def _validate_model(model: ManifoldModel) -> None:
    if not model.name:
        raise DescriptorError("manifold needs a nonempty name")
    if not 1 <= model.dim <= 4:
        raise DescriptorError(
            f"manifold dimension must lie in 1..4, got {model.dim}"
        )
    n2 = model.h2.ngens
    if len(model.cup_table) != n2 or any(len(row) != n2 for row in model.cup_table):
        raise DescriptorError(
            f"cup table must be {n2}x{n2} for manifold {model.name!r}"
        )
    for i in range(n2):
        for j in range(n2):
            cell = model.cup_table[i][j]
            if model.h4.reduce(cell) != cell:
                raise DescriptorError(
                    f"cup[{i}][{j}] = {cell} is not reduced in H4"
                )
            if cell != model.cup_table[j][i]:
                raise DescriptorError(
                    f"cup table is not symmetric at ({i},{j})"
                )
            for t in (model.h2.orders[i], model.h2.orders[j]):
                if t and any(model.h4.reduce(tuple(t * c for c in cell))):
                    raise DescriptorError(
                        f"cup[{i}][{j}] is not killed by the generator order {t}"
                    )

    moduli = [g for g, _ in model.h1_groups]
    if moduli != sorted(set(moduli)) or any(g < 1 for g in moduli):
        raise DescriptorError(f"moduli must be distinct and >= 1, got {moduli}")
    if 1 not in moduli:
        raise DescriptorError("modulus 1 must always be instantiated")
    for g, group in model.h1_groups:
        if not group.is_finite():
            raise DescriptorError(
                f"H1 with Z_{g} coefficients must be finite, got free rank "
                f"{group.free_rank}"
            )
        if g == 1 and not group.is_trivial():
            raise DescriptorError("H1 with Z_1 coefficients must be trivial")
        if any(g % t for t in group.torsion_orders):
            raise DescriptorError(
                f"H1 mod {g} must be a Z_{g}-module; order {group.torsion_orders} "
                "does not divide the modulus"
            )

    if sorted(g for g, _ in model.bockstein_maps) != moduli:
        raise DescriptorError("need exactly one Bockstein matrix per modulus")
    for g, matrix in model.bockstein_maps:
        check_hom(model.h1(g), model.h2, matrix)

    pairs = [(a, b) for a, b, _ in model.reduction_maps]
    wanted = [(a, b) for a in moduli for b in moduli if a % b == 0]
    if sorted(pairs) != sorted(wanted):
        missing = sorted(set(wanted) - set(pairs))
        extra = sorted(set(pairs) - set(wanted))
        raise DescriptorError(
            f"reduction maps must cover exactly the divisor pairs; "
            f"missing {missing}, unexpected {extra}"
        )
    for a, b, matrix in model.reduction_maps:
        check_hom(model.h1(a), model.h1(b), matrix)

    # Identity, functoriality and Bockstein compatibility, all on generators.
    for g in moduli:
        ident = model.reduction_matrix(g, g)
        for e in _basis(model.h1(g)):
            if apply_hom(model.h1(g), ident, e) != e:
                raise DescriptorError(
                    f"reduction[{g},{g}] is not the identity"
                )
    for a in moduli:
        for b in moduli:
            if a == b or a % b:
                continue
            red_ab = model.reduction_matrix(a, b)
            bock_a = model.bockstein_matrix(a)
            bock_b = model.bockstein_matrix(b)
            scale = a // b
            for j, e in enumerate(_basis(model.h1(a))):
                lhs = scale * apply_hom(model.h2, bock_a, e)
                rhs = apply_hom(
                    model.h2, bock_b, apply_hom(model.h1(b), red_ab, e)
                )
                if lhs != rhs:
                    raise DescriptorError(
                        f"({a}/{b}) * bockstein[{a}] != bockstein[{b}] o "
                        f"reduction[{a},{b}] on generator {j}"
                    )
            for c in moduli:
                if b % c:
                    continue
                red_bc = model.reduction_matrix(b, c)
                red_ac = model.reduction_matrix(a, c)
                for j, e in enumerate(_basis(model.h1(a))):
                    two_step = apply_hom(
                        model.h1(c), red_bc, apply_hom(model.h1(b), red_ab, e)
                    )
                    one_step = apply_hom(model.h1(c), red_ac, e)
                    if two_step != one_step:
                        raise DescriptorError(
                            f"reduction[{b},{c}] o reduction[{a},{b}] != "
                            f"reduction[{a},{c}] on generator {j}"
                        )


def manifold_model(
    name: str,
    dim: int,
    h2: AbelianGroup,
    h4: AbelianGroup,
    cup_table: Iterable[Iterable[Iterable[int]]],
    h1_groups: Mapping[int, AbelianGroup],
    bockstein_maps: Mapping[int, Iterable[Iterable[int]]],
    reduction_maps: Mapping[tuple[int, int], Iterable[Iterable[int]]],
) -> ManifoldModel:
    """Normalize mapping-style inputs into a validated ManifoldModel.

    Conveniences: modulus 1 is added if absent; identity reductions and the
    unique maps into or out of trivial groups may be omitted.
    """
    groups = {int(g): grp for g, grp in h1_groups.items()}
    groups.setdefault(1, AbelianGroup(0, ()))
    moduli = sorted(groups)
    for g in list(bockstein_maps) + [x for pair in reduction_maps for x in pair]:
        if int(g) not in groups:
            raise DescriptorError(
                f"map given for modulus {g} but H1.{g} is not declared"
            )

    cup = tuple(
        tuple(h4.reduce(tuple(int(c) for c in cell)) for cell in row)
        for row in cup_table
    )

    bock = {
        int(g): _shaped(_as_matrix(m), groups[int(g)], h2)
        for g, m in bockstein_maps.items()
    }
    for g, group in groups.items():
        if g not in bock and group.is_trivial():
            bock[g] = tuple(() for _ in range(h2.ngens))

    red = {
        (int(a), int(b)): _shaped(_as_matrix(m), groups[int(a)], groups[int(b)])
        for (a, b), m in reduction_maps.items()
    }
    for a in moduli:
        for b in moduli:
            if a % b or (a, b) in red:
                continue
            if a == b:
                red[(a, b)] = identity_matrix(groups[a])
            elif groups[a].is_trivial() or groups[b].is_trivial():
                red[(a, b)] = tuple(
                    (0,) * groups[a].ngens for _ in range(groups[b].ngens)
                )

    return ManifoldModel(
        name=name,
        dim=dim,
        h2=h2,
        h4=h4,
        cup_table=cup,
        h1_groups=tuple((g, groups[g]) for g in moduli),
        bockstein_maps=tuple((g, bock[g]) for g in sorted(bock)),
        reduction_maps=tuple(
            (a, b, red[(a, b)]) for a, b in sorted(red)
        ),
    )


def _as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(c) for c in row) for row in rows)


def _shaped(matrix: Matrix, source: AbelianGroup, target: AbelianGroup) -> Matrix:
    """Expand a shorthand empty matrix when the hom is forced to be unique."""
    if matrix == () and (source.is_trivial() or target.is_trivial()):
        return tuple((0,) * source.ngens for _ in range(target.ngens))
    return matrix


# ---------------------------------------------------------------------------
# Operations


def cup(model: ManifoldModel, x: GroupElement, y: GroupElement) -> GroupElement:
    """Cup product H^2 x H^2 -> H^4, bilinear over the generator table."""
    if x.group != model.h2 or y.group != model.h2:
        raise MismatchError("cup arguments must lie in the model's H2")
    n4 = model.h4.ngens
    coords = [0] * n4
    for i, xi in enumerate(x.coords):
        if not xi:
            continue
        for j, yj in enumerate(y.coords):
            if not yj:
                continue
            cell = model.cup_table[i][j]
            for t in range(n4):
                coords[t] += xi * yj * cell[t]
    return model.h4.element(tuple(coords))


def bockstein(model: ManifoldModel, g: int, xi: GroupElement) -> GroupElement:
    """Integral Bockstein of xi in H^1(M, Z_g), landing in H^2(M, Z)."""
    if xi.group != model.h1(g):
        raise MismatchError(f"element does not lie in H1 mod {g}")
    return apply_hom(model.h2, model.bockstein_matrix(g), xi)


def reduce_coefficients(
    model: ManifoldModel, g: int, g_to: int, xi: GroupElement
) -> GroupElement:
    """Coefficient reduction H^1(M, Z_g) -> H^1(M, Z_g') for g' | g."""
    if g % g_to:
        raise MismatchError(f"reduction needs {g_to} | {g}")
    if xi.group != model.h1(g):
        raise MismatchError(f"element does not lie in H1 mod {g}")
    return apply_hom(model.h1(g_to), model.reduction_matrix(g, g_to), xi)


def solve_bockstein_lift(
    model: ManifoldModel,
    g_new: int,
    g_old: int,
    xi_old: GroupElement,
    target: GroupElement,
) -> tuple[GroupElement, ...]:
    """All xi in H^1(M, Z_g_new) with reduction xi_old and Bockstein target.

    Exhaustive scan of the finite coefficient group, in coordinate order;
    the result may be empty.  Requires g_old | g_new.
    """
    if g_new % g_old:
        raise MismatchError(f"lift needs {g_old} | {g_new}")
    if xi_old.group != model.h1(g_old):
        raise MismatchError(f"element does not lie in H1 mod {g_old}")
    if target.group != model.h2:
        raise MismatchError("Bockstein target must lie in H2")
    red = model.reduction_matrix(g_new, g_old)
    bock = model.bockstein_matrix(g_new)
    hits = []
    for xi in model.h1(g_new).elements():
        if apply_hom(model.h1(g_old), red, xi) != xi_old:
            continue
        if apply_hom(model.h2, bock, xi) != target:
            continue
        hits.append(xi)
    return tuple(hits)


# ---------------------------------------------------------------------------
# Even-degree classes


@dataclass(frozen=True)
class EvenClass:
    """A class 1 + deg2 + deg4, truncated by the multiplicity k.

    k == 1 forces deg4 == 0; in ambient dimension <= 4 larger k impose no
    further constraint.
    """

    deg2: GroupElement
    deg4: GroupElement
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvariantError(f"truncation multiplicity must be >= 1: {self.k}")
        if self.k == 1 and not self.deg4.is_zero():
            raise InvariantError(
                "a class with multiplicity 1 cannot have a degree-4 part"
            )

    def __str__(self) -> str:
        return format_even_class(self)


def format_even_class(alpha: EvenClass) -> str:
    return "[{}|{}]".format(
        ",".join(str(c) for c in alpha.deg2.coords),
        ",".join(str(c) for c in alpha.deg4.coords),
    )


def unit_class(model: ManifoldModel, k: int) -> EvenClass:
    return EvenClass(model.h2.zero(), model.h4.zero(), k)


def cup_classes(
    model: ManifoldModel, x: EvenClass, y: EvenClass, k_out: int
) -> EvenClass:
    """Product of two unit-normalized even classes, truncated by k_out."""
    deg2 = x.deg2 + y.deg2
    deg4 = x.deg4 + y.deg4 + cup(model, x.deg2, y.deg2)
    if k_out == 1 and not deg4.is_zero():
        raise InvariantError(
            "product has a degree-4 part but the target multiplicity is 1"
        )
    return EvenClass(deg2, deg4, k_out)


def search_truncated(model: ManifoldModel, k: int) -> bool:
    """Whether enumerating classes of multiplicity k needs a coordinate box."""
    return model.h2.free_rank > 0 or (k >= 2 and model.h4.free_rank > 0)


def enumerate_even_classes(
    model: ManifoldModel, k: int, bound: int | None = None
) -> Iterator[EvenClass]:
    """All even classes of multiplicity k, free coordinates boxed by bound.

    Torsion coordinates always range fully; free coordinates range over
    [-bound, bound] and need a bound whenever search_truncated() is true.
    Deterministic lexicographic order, no duplicates.
    """
    if search_truncated(model, k) and bound is None:
        raise BoundsError("free cohomology coordinates need a search bound")
    if k == 1:
        zero4 = model.h4.zero()
        for deg2 in model.h2.elements(bound):
            yield EvenClass(deg2, zero4, k)
        return
    for deg2 in model.h2.elements(bound):
        for deg4 in model.h4.elements(bound):
            yield EvenClass(deg2, deg4, k)


# ---------------------------------------------------------------------------
# Built-in catalog


def builtin_manifold(name: str, moduli: Iterable[int] = (1,)) -> ManifoldModel:
    """Construct a catalog manifold with the given coefficient moduli.

    Known names: "S4", "S2xS2", and "LensL(N,q)xS1" for even N with
    gcd(N, q) = 1.
    """
    mods = sorted(set(int(g) for g in moduli) | {1})
    if any(g < 1 for g in mods):
        raise BoundsError(f"moduli must be >= 1, got {mods}")
    if name == "S4":
        return manifold_model(
            name, 4,
            h2=AbelianGroup(0, ()),
            h4=AbelianGroup(1, ()),
            cup_table=(),
            h1_groups={g: AbelianGroup(0, ()) for g in mods},
            bockstein_maps={},
            reduction_maps={},
        )
    if name == "S2xS2":
        return manifold_model(
            name, 4,
            h2=AbelianGroup(2, ()),
            h4=AbelianGroup(1, ()),
            cup_table=(((0,), (1,)), ((1,), (0,))),
            h1_groups={g: AbelianGroup(0, ()) for g in mods},
            bockstein_maps={},
            reduction_maps={},
        )
    match = _LENS_NAME.match(name)
    if match:
        return _lens_times_circle(name, int(match.group(1)), int(match.group(2)), mods)
    raise DescriptorError(f"unknown built-in manifold {name!r}")


def _lens_generators(big_n: int, g: int) -> list[tuple[str, int]]:
    """Surviving H^1 generators for L(N,q) x S1 with Z_g coefficients.

    The lens factor contributes Z_gcd(N,g) (generator "tL") and the circle
    contributes Z_g (generator "tS"); order-1 factors vanish.
    """
    gens = []
    d = gcd(big_n, g)
    if d >= 2:
        gens.append(("tL", d))
    if g >= 2:
        gens.append(("tS", g))
    return gens


def _lens_times_circle(
    name: str, big_n: int, q: int, mods: list[int]
) -> ManifoldModel:
    if big_n < 2 or big_n % 2:
        raise DescriptorError(
            f"the lens catalog entry needs an even N >= 2, got {big_n}"
        )
    if gcd(big_n, q) != 1:
        raise DescriptorError(
            f"L({big_n},{q}) needs gcd(N, q) = 1, got q = {q}"
        )
    h2 = AbelianGroup(0, (big_n,))
    h4 = AbelianGroup(1, ())
    h1_groups = {
        g: AbelianGroup(0, tuple(order for _, order in _lens_generators(big_n, g)))
        for g in mods
    }

    bock = {}
    for g in mods:
        gens = _lens_generators(big_n, g)
        # One H2 row; tL hits (N/gcd(N,g)) times the lens generator.
        bock[g] = (
            tuple(
                big_n // gcd(big_n, g) if kind == "tL" else 0 for kind, _ in gens
            ),
        )

    red = {}
    for a in mods:
        for b in mods:
            if a % b:
                continue
            rows = []
            for kind_b, _ in _lens_generators(big_n, b):
                row = []
                for kind_a, _ in _lens_generators(big_n, a):
                    if kind_a != kind_b:
                        row.append(0)
                    elif kind_a == "tL":
                        row.append(lcm(big_n, a) // lcm(big_n, b))
                    else:
                        row.append(1)
                rows.append(tuple(row))
            red[(a, b)] = tuple(rows)

    return manifold_model(
        name, 4,
        h2=h2,
        h4=h4,
        cup_table=(((0,),),),
        h1_groups=h1_groups,
        bockstein_maps=bock,
        reduction_maps=red,
    )


# ---------------------------------------------------------------------------
# Descriptor files


def parse_manifold_descriptor(text: str) -> ManifoldModel:
    """Parse a TOML manifold descriptor into a validated model."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise DescriptorError(f"descriptor is not valid TOML: {exc}") from exc
    try:
        name = data["name"]
        dim = data["dim"]
        h2 = _group_from_table(data["H2"])
        h4 = _group_from_table(data["H4"])
    except KeyError as exc:
        raise DescriptorError(f"descriptor is missing required field {exc}") from exc
    if not isinstance(name, str) or not isinstance(dim, int):
        raise DescriptorError("name must be a string and dim an integer")

    cup_table = data.get("cup")
    if cup_table is None:
        cup_table = [[[0] * h4.ngens] * h2.ngens] * h2.ngens

    h1_tables = data.get("H1", {})
    h1_groups = {}
    for key, table in h1_tables.items():
        g = _modulus_key(key)
        if "orders" not in table:
            raise DescriptorError(f"H1.{key} needs an 'orders' list")
        h1_groups[g] = AbelianGroup(0, tuple(int(t) for t in table["orders"]))

    bock = {
        _modulus_key(key): value for key, value in data.get("bockstein", {}).items()
    }
    red = {}
    for key_a, inner in data.get("reduction", {}).items():
        for key_b, value in inner.items():
            red[(_modulus_key(key_a), _modulus_key(key_b))] = value

    try:
        return manifold_model(
            name, dim, h2, h4, cup_table, h1_groups, bock, red
        )
    except (TypeError, ValueError) as exc:
        raise DescriptorError(f"malformed descriptor value: {exc}") from exc


def _modulus_key(key: str) -> int:
    try:
        g = int(key)
    except ValueError as exc:
        raise DescriptorError(f"modulus keys must be integers, got {key!r}") from exc
    if g < 1:
        raise DescriptorError(f"modulus keys must be >= 1, got {g}")
    return g


def _group_from_table(table: Mapping) -> AbelianGroup:
    free = table.get("free_rank", 0)
    torsion = tuple(int(t) for t in table.get("torsion", ()))
    return AbelianGroup(int(free), torsion)


def dump_manifold_descriptor(model: ManifoldModel) -> str:
    """Serialize a model to descriptor text; inverse of the parser."""
    out = []
    out.append(f'name = "{model.name}"')
    out.append(f"dim = {model.dim}")
    if model.h2.ngens:
        rows = ", ".join(
            "[" + ", ".join(str(list(cell)) for cell in row) + "]"
            for row in model.cup_table
        )
        out.append(f"cup = [{rows}]")
    out.append("")
    for label, group in (("H2", model.h2), ("H4", model.h4)):
        out.append(f"[{label}]")
        out.append(f"free_rank = {group.free_rank}")
        out.append(f"torsion = {list(group.torsion_orders)}")
        out.append("")
    for g, group in model.h1_groups:
        out.append(f"[H1.{g}]")
        out.append(f"orders = {list(group.torsion_orders)}")
        out.append("")
    out.append("[bockstein]")
    for g, matrix in model.bockstein_maps:
        out.append(f"{g} = {_matrix_literal(matrix)}")
    out.append("")
    out.append("[reduction]")
    for a, b, matrix in model.reduction_maps:
        out.append(f"{a}.{b} = {_matrix_literal(matrix)}")
    out.append("")
    return "\n".join(out)


def _matrix_literal(matrix: Matrix) -> str:
    return "[" + ", ".join(str(list(row)) for row in matrix) + "]"


def load_manifold(
    source: str | Path, moduli: Iterable[int] | None = None
) -> ManifoldModel:
    """Load a manifold from a descriptor file path or a catalog name.

    An existing file wins over a catalog name; descriptor files fix their
    own moduli, so passing moduli alongside a file is an error.
    """
    path = Path(source)
    if path.is_file():
        if moduli is not None:
            raise DescriptorError(
                "descriptor files carry their own moduli; do not pass any"
            )
        return parse_manifold_descriptor(path.read_text())
    return builtin_manifold(str(source), moduli if moduli is not None else (1,))
