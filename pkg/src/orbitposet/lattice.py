"""The poset of orbit-type strata and its Hasse diagram.

An orbit label is (signature, class tuple, degree-1 class); labels are
identified up to simultaneous permutation of the signature indices and the
class entries, giving orbit classes.  A label L sits below L' exactly when
the coefficient data are compatible (gcd divisibility plus reduction of the
degree-1 classes) and some inclusion matrix pushes the classes of L onto
those of L'.

The cover relations of the poset are realized by four generator moves:

* split: divide one weight m[i0] into two parts, duplicating k and alpha,
* merge: combine two indices of equal weight, adding k and cupping alpha,
* inverse split: the reverse of split; needs equal (k, alpha) at two
  indices and a Bockstein-compatible lift of xi, which may not exist,
* inverse merge: the reverse of merge; needs a cup factorization of one
  class entry, searched over a coordinate box when cohomology is free.

Every witness of level l factors into exactly l level-1 steps
(decompose_inclusion peels one off), so breadth-first search by direct
predecessors from the unique maximal class rebuilds the full Hasse diagram.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from .abgroup import GroupElement
from .charclass import (
    BundleSpec,
    ClassTuple,
    apply_inclusion,
    check_membership,
    solve_labels,
    total_chern,
)
from .cohomology import (
    EvenClass,
    cup,
    cup_classes,
    enumerate_even_classes,
    format_even_class,
    reduce_coefficients,
    search_truncated,
    solve_bockstein_lift,
)
from .errors import BoundsError, InvariantError, MismatchError
from .howe import (
    HoweSignature,
    format_signature,
    signature,
    signature_invariants,
)
from .inclusion import InclusionMatrix, compose, level_profile, solve_inclusion_matrices


@dataclass(frozen=True)
class OrbitLabel:
    bundle: BundleSpec
    sig: HoweSignature
    alpha: ClassTuple
    xi: GroupElement

    def __post_init__(self) -> None:
        if self.alpha.signature != self.sig:
            raise MismatchError("class tuple belongs to a different signature")
        report = check_membership(self.bundle, self.alpha, self.xi)
        if not report.ok:
            raise InvariantError(
                "labelling equations fail: "
                f"bockstein={report.bockstein_eq} "
                f"chern_deg2={report.chern_deg2} chern_deg4={report.chern_deg4}"
            )

    @property
    def g(self) -> int:
        return signature_invariants(self.sig).g

    def __str__(self) -> str:
        return format_label(self)


def format_label(label: OrbitLabel) -> str:
    alphas = ",".join(format_even_class(e) for e in label.alpha.entries)
    xi = ",".join(str(c) for c in label.xi.coords)
    return f"{format_signature(label.sig)} a=({alphas}) xi@{label.g}=[{xi}]"


def label_key(label: OrbitLabel):
    """Total order on labels over a fixed bundle; used for all sorting."""
    return (
        label.sig.r,
        label.sig.k,
        label.sig.m,
        tuple(e.deg2.coords for e in label.alpha.entries),
        tuple(e.deg4.coords for e in label.alpha.entries),
        label.xi.coords,
    )


def canonical_label(label: OrbitLabel) -> OrbitLabel:
    """Sort the index triples (k[i], m[i], alpha[i]) lexicographically."""
    sig, entries = label.sig, label.alpha.entries
    order = sorted(
        range(sig.r),
        key=lambda i: (
            sig.k[i], sig.m[i], entries[i].deg2.coords, entries[i].deg4.coords
        ),
    )
    new_sig = HoweSignature(
        sig.n,
        tuple(sig.k[i] for i in order),
        tuple(sig.m[i] for i in order),
    )
    return OrbitLabel(
        label.bundle,
        new_sig,
        ClassTuple(new_sig, tuple(entries[i] for i in order)),
        label.xi,
    )


@dataclass(frozen=True)
class OrbitClass:
    """A permutation class of labels, stored by canonical representative."""

    label: OrbitLabel

    def __post_init__(self) -> None:
        if canonical_label(self.label) != self.label:
            raise InvariantError(
                "orbit classes hold canonical labels; use orbit_class()"
            )


def orbit_class(label: OrbitLabel) -> OrbitClass:
    return OrbitClass(canonical_label(label))


def equivalent(first: OrbitLabel, second: OrbitLabel) -> bool:
    _same_bundle(first, second)
    return canonical_label(first) == canonical_label(second)


def _same_bundle(first: OrbitLabel, second: OrbitLabel) -> None:
    if first.bundle != second.bundle:
        raise MismatchError("labels belong to different bundles")


@dataclass(frozen=True)
class OrderDecision:
    """Outcome of comparing two labels, with the full witness set."""

    leq: bool
    coefficients_compatible: bool
    witnesses: tuple[InclusionMatrix, ...]
    levels: tuple[int, ...]


def compare(lower: OrbitLabel, upper: OrbitLabel) -> OrderDecision:
    """Decide lower <= upper and return every witnessing inclusion matrix.

    Coefficient compatibility (gcd divisibility and reduction of xi) is
    necessary; given it, the witnesses are the inclusion matrices that push
    the lower classes exactly onto the upper ones.
    """
    _same_bundle(lower, upper)
    model = lower.bundle.manifold
    g, g_up = lower.g, upper.g
    compatible = g % g_up == 0 and (
        reduce_coefficients(model, g, g_up, lower.xi) == upper.xi
    )
    if not compatible:
        return OrderDecision(False, False, (), ())
    witnesses = tuple(
        matrix
        for matrix in solve_inclusion_matrices(lower.sig, upper.sig)
        if apply_inclusion(model, matrix, lower.alpha) == upper.alpha
    )
    levels = tuple(sorted(level_profile(w).level for w in witnesses))
    return OrderDecision(bool(witnesses), True, witnesses, levels)


# ---------------------------------------------------------------------------
# Generator moves


def split(
    label: OrbitLabel, index: int, parts: tuple[int, int]
) -> OrbitLabel:
    """Divide weight m[index] into two positive parts, duplicating k, alpha."""
    sig = label.sig
    if not 0 <= index < sig.r:
        raise BoundsError(f"index {index} out of range")
    if sig.m[index] < 2:
        raise InvariantError("cannot split a weight of 1")
    m1, m2 = parts
    if m1 < 1 or m2 < 1 or m1 + m2 != sig.m[index]:
        raise InvariantError(
            f"parts {parts} must be positive and sum to m[{index}] = {sig.m[index]}"
        )
    k = sig.k[:index] + (sig.k[index], sig.k[index]) + sig.k[index + 1:]
    m = sig.m[:index] + (m1, m2) + sig.m[index + 1:]
    new_sig = HoweSignature(sig.n, k, m)
    entries = (
        label.alpha.entries[:index]
        + (label.alpha.entries[index], label.alpha.entries[index])
        + label.alpha.entries[index + 1:]
    )
    g_new = gcd(*m)
    xi = reduce_coefficients(label.bundle.manifold, label.g, g_new, label.xi)
    return OrbitLabel(label.bundle, new_sig, ClassTuple(new_sig, entries), xi)


def merge(label: OrbitLabel, first: int, second: int) -> OrbitLabel:
    """Combine two indices of equal weight: k adds, alpha cups, xi survives."""
    sig = label.sig
    if not 0 <= first < second < sig.r:
        raise BoundsError(f"need 0 <= first < second < r, got {first}, {second}")
    if sig.m[first] != sig.m[second]:
        raise InvariantError(
            f"merge needs equal weights, got m[{first}] = {sig.m[first]} and "
            f"m[{second}] = {sig.m[second]}"
        )
    k_sum = sig.k[first] + sig.k[second]
    k = _drop(sig.k[:first] + (k_sum,) + sig.k[first + 1:], second)
    m = _drop(sig.m, second)
    new_sig = HoweSignature(sig.n, k, m)
    merged = cup_classes(
        label.bundle.manifold,
        label.alpha.entries[first],
        label.alpha.entries[second],
        k_sum,
    )
    entries = _drop(
        label.alpha.entries[:first] + (merged,) + label.alpha.entries[first + 1:],
        second,
    )
    return OrbitLabel(label.bundle, new_sig, ClassTuple(new_sig, entries), label.xi)


def inverse_split(
    label: OrbitLabel, first: int, second: int
) -> tuple[OrbitLabel, ...]:
    """Undo a split: fuse two indices with equal k and alpha into one weight.

    The degree-1 class must lift along the coefficient reduction while
    matching the Bockstein equation for the fused signature; each admissible
    lift gives one label and there may be none.
    """
    sig = label.sig
    if not 0 <= first < second < sig.r:
        raise BoundsError(f"need 0 <= first < second < r, got {first}, {second}")
    if sig.k[first] != sig.k[second]:
        raise InvariantError("inverse split needs equal multiplicities k")
    if label.alpha.entries[first] != label.alpha.entries[second]:
        raise InvariantError("inverse split needs equal class entries")
    k = _drop(sig.k, second)
    m = _drop(
        sig.m[:first] + (sig.m[first] + sig.m[second],) + sig.m[first + 1:],
        second,
    )
    new_sig = HoweSignature(sig.n, k, m)
    entries = _drop(label.alpha.entries, second)
    model = label.bundle.manifold
    inv = signature_invariants(new_sig)
    target = model.h2.zero()
    for weight, entry in zip(inv.m_reduced, entries):
        target = target + weight * entry.deg2
    lifts = solve_bockstein_lift(model, inv.g, label.g, label.xi, target)
    return tuple(
        OrbitLabel(label.bundle, new_sig, ClassTuple(new_sig, entries), xi)
        for xi in lifts
    )


def inverse_merge(
    label: OrbitLabel,
    index: int,
    k_parts: tuple[int, int],
    bound: int | None = None,
) -> tuple[tuple[OrbitLabel, ...], bool]:
    """Undo a merge: factor alpha[index] as a cup product over two k parts.

    Enumerates all factor pairs whose free coordinates lie in the bound box;
    the weight is duplicated and xi survives unchanged.  Returns the labels
    and whether the search was truncated by the box.
    """
    sig = label.sig
    if not 0 <= index < sig.r:
        raise BoundsError(f"index {index} out of range")
    k1, k2 = k_parts
    if k1 < 1 or k2 < 1 or k1 + k2 != sig.k[index]:
        raise InvariantError(
            f"parts {k_parts} must be positive and sum to k[{index}] = {sig.k[index]}"
        )
    model = label.bundle.manifold
    truncated = search_truncated(model, k1) or search_truncated(model, k2)
    if truncated and bound is None:
        raise BoundsError(
            "this manifold has free cohomology; inverse merge needs a bound"
        )
    target = label.alpha.entries[index]
    k = sig.k[:index] + (k1, k2) + sig.k[index + 1:]
    m = sig.m[:index] + (sig.m[index], sig.m[index]) + sig.m[index + 1:]
    new_sig = HoweSignature(sig.n, k, m)
    out = []
    for factor in enumerate_even_classes(model, k1, bound):
        deg2 = target.deg2 - factor.deg2
        deg4 = target.deg4 - factor.deg4 - cup(model, factor.deg2, deg2)
        if k2 == 1 and not deg4.is_zero():
            continue
        if not (_in_box(deg2, bound) and _in_box(deg4, bound)):
            continue
        other = EvenClass(deg2, deg4, k2)
        entries = (
            label.alpha.entries[:index]
            + (factor, other)
            + label.alpha.entries[index + 1:]
        )
        out.append(
            OrbitLabel(
                label.bundle, new_sig, ClassTuple(new_sig, entries), label.xi
            )
        )
    return tuple(out), truncated


def _drop(seq: tuple, index: int) -> tuple:
    return seq[:index] + seq[index + 1:]


def _in_box(element: GroupElement, bound: int | None) -> bool:
    if bound is None:
        return True
    free = element.coords[: element.group.free_rank]
    return all(abs(c) <= bound for c in free)


# ---------------------------------------------------------------------------
# Cover relations


def direct_successors(label: OrbitLabel) -> tuple[OrbitClass, ...]:
    """Classes covering the class of label: all splits and merges."""
    found = set()
    for index in range(label.sig.r):
        for part in range(1, label.sig.m[index]):
            found.add(
                orbit_class(split(label, index, (part, label.sig.m[index] - part)))
            )
    for first in range(label.sig.r):
        for second in range(first + 1, label.sig.r):
            if label.sig.m[first] == label.sig.m[second]:
                found.add(orbit_class(merge(label, first, second)))
    return tuple(sorted(found, key=lambda c: label_key(c.label)))


def direct_predecessors(
    label: OrbitLabel, bound: int | None = None
) -> tuple[tuple[OrbitClass, ...], bool]:
    """Classes covered by the class of label, and the truncation flag.

    All inverse splits (which can silently produce nothing when the
    degree-1 class does not lift) and all inverse merges over every
    ordered part decomposition; duplicates collapse in canonical form.
    """
    found = set()
    truncated = False
    for first in range(label.sig.r):
        for second in range(first + 1, label.sig.r):
            if label.sig.k[first] != label.sig.k[second]:
                continue
            if label.alpha.entries[first] != label.alpha.entries[second]:
                continue
            for candidate in inverse_split(label, first, second):
                found.add(orbit_class(candidate))
    for index in range(label.sig.r):
        for part in range(1, label.sig.k[index]):
            candidates, flag = inverse_merge(
                label, index, (part, label.sig.k[index] - part), bound
            )
            truncated = truncated or flag
            for candidate in candidates:
                found.add(orbit_class(candidate))
    return tuple(sorted(found, key=lambda c: label_key(c.label))), truncated


def decompose_inclusion(
    lower: OrbitLabel, upper: OrbitLabel, witness: InclusionMatrix
) -> tuple[OrbitLabel, InclusionMatrix, InclusionMatrix]:
    """Peel one level-1 generator step off a witness of positive level.

    Returns (middle, step, rest) with witness == rest o step, step a level-1
    witness from lower to middle, and rest a witness from middle to upper.
    Ties break toward the smallest source index, then the smallest target
    row.  Iterating consumes exactly level(witness) steps.
    """
    _same_bundle(lower, upper)
    if witness.source != lower.sig or witness.target != upper.sig:
        raise MismatchError("witness does not connect these signatures")
    model = lower.bundle.manifold
    if apply_inclusion(model, witness, lower.alpha) != upper.alpha:
        raise MismatchError("matrix does not push the lower classes to the upper")
    profile = level_profile(witness)
    if profile.level == 0:
        raise InvariantError("level-0 witnesses are permutations; nothing to peel")
    entries = witness.entries
    r, rp = lower.sig.r, upper.sig.r

    if any(x > 0 for x in profile.column_excess):
        index = next(
            i for i in range(r) if profile.column_excess[i] > 0
        )
        row = next(ip for ip in range(rp) if entries[ip][index] > 0)
        part = upper.sig.m[row]
        middle = split(lower, index, (lower.sig.m[index] - part, part))
        step = _split_matrix(lower.sig, middle.sig, index)
        rest_cols = []
        for i in range(r):
            col = tuple(entries[ip][i] for ip in range(rp))
            if i == index:
                rest_cols.append(
                    tuple(
                        col[ip] - (1 if ip == row else 0) for ip in range(rp)
                    )
                )
                rest_cols.append(tuple(1 if ip == row else 0 for ip in range(rp)))
            else:
                rest_cols.append(col)
        rest = InclusionMatrix(
            middle.sig, upper.sig, tuple(zip(*rest_cols))
        )
    else:
        row = next(ip for ip in range(rp) if profile.row_excess[ip] > 0)
        hit = [i for i in range(r) if entries[row][i]]
        first, second = hit[0], hit[1]
        middle = merge(lower, first, second)
        step = _merge_matrix(lower.sig, middle.sig, first, second)
        rest = InclusionMatrix(
            middle.sig,
            upper.sig,
            tuple(tuple(_drop(matrix_row, second)) for matrix_row in entries),
        )
    assert level_profile(step).level == 1
    assert compose(rest, step).entries == witness.entries
    assert apply_inclusion(model, step, lower.alpha) == middle.alpha
    assert apply_inclusion(model, rest, middle.alpha) == upper.alpha
    return middle, step, rest


def _split_matrix(
    source: HoweSignature, target: HoweSignature, index: int
) -> InclusionMatrix:
    rows = []
    for t in range(source.r + 1):
        origin = t if t <= index else t - 1
        rows.append(tuple(1 if i == origin else 0 for i in range(source.r)))
    return InclusionMatrix(source, target, tuple(rows))


def _merge_matrix(
    source: HoweSignature, target: HoweSignature, first: int, second: int
) -> InclusionMatrix:
    rows = []
    for t in range(source.r - 1):
        if t == first:
            rows.append(
                tuple(
                    1 if i in (first, second) else 0 for i in range(source.r)
                )
            )
        else:
            origin = t if t < second else t + 1
            rows.append(tuple(1 if i == origin else 0 for i in range(source.r)))
    return InclusionMatrix(source, target, tuple(rows))


# ---------------------------------------------------------------------------
# Hasse diagrams


@dataclass(frozen=True)
class HasseEdge:
    lower: OrbitClass
    upper: OrbitClass
    witnesses: tuple[InclusionMatrix, ...]


@dataclass(frozen=True)
class HassePoset:
    bundle: BundleSpec
    bound: int | None
    truncated: bool
    nodes: tuple[OrbitClass, ...]
    edges: tuple[HasseEdge, ...]
    maximal: OrbitClass


def maximal_label(bundle: BundleSpec) -> OrbitLabel:
    """The unique maximal stratum: one block, classes 1 + c2(P)."""
    sig = signature((bundle.n,), (1,))
    alpha = ClassTuple(sig, (total_chern(bundle),))
    return OrbitLabel(bundle, sig, alpha, bundle.manifold.h1(1).zero())


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def build_hasse(bundle: BundleSpec, bound: int | None = None) -> HassePoset:
    """Reconstruct the full Hasse diagram downward from the maximal class.

    Breadth-first search by direct predecessors; every edge carries the
    complete level-1 witness set between its canonical representatives.
    Requires H^1 data for every divisor of n.
    """
    missing = [
        g for g in _divisors(bundle.n) if g not in bundle.manifold.moduli
    ]
    if missing:
        raise MismatchError(
            f"manifold {bundle.manifold.name!r} lacks moduli {missing} "
            f"needed for SU({bundle.n})"
        )
    top = orbit_class(maximal_label(bundle))
    nodes = {top}
    pairs: set[tuple[OrbitClass, OrbitClass]] = set()
    truncated = False
    frontier = [top]
    while frontier:
        fresh: list[OrbitClass] = []
        for node in frontier:
            below, flag = direct_predecessors(node.label, bound)
            truncated = truncated or flag
            for lower in below:
                if lower not in nodes:
                    nodes.add(lower)
                    fresh.append(lower)
                pairs.add((lower, node))
        frontier = sorted(fresh, key=lambda c: label_key(c.label))
    edges = tuple(
        HasseEdge(lower, upper, compare(lower.label, upper.label).witnesses)
        for lower, upper in sorted(
            pairs, key=lambda p: (label_key(p[0].label), label_key(p[1].label))
        )
    )
    return HassePoset(
        bundle=bundle,
        bound=bound,
        truncated=truncated,
        nodes=tuple(sorted(nodes, key=lambda c: label_key(c.label))),
        edges=edges,
        maximal=top,
    )


# ---------------------------------------------------------------------------
# Poset rendering and structured export


def poset_text(poset: HassePoset) -> str:
    lines = [
        f"SU({poset.bundle.n}) over {poset.bundle.manifold.name}, "
        f"c2=[{','.join(str(c) for c in poset.bundle.c2.coords)}], "
        f"bound={poset.bound}",
        f"truncated: {'yes' if poset.truncated else 'no'}",
        f"classes: {len(poset.nodes)}",
    ]
    index = {node: i for i, node in enumerate(poset.nodes)}
    for i, node in enumerate(poset.nodes):
        marker = " (maximal)" if node == poset.maximal else ""
        lines.append(f"  [{i}] {format_label(node.label)}{marker}")
    lines.append(f"cover relations: {len(poset.edges)}")
    for edge in poset.edges:
        count = len(edge.witnesses)
        noun = "witness" if count == 1 else "witnesses"
        lines.append(
            f"  [{index[edge.lower]}] < [{index[edge.upper]}]  ({count} {noun})"
        )
    return "\n".join(lines)


def poset_dot(poset: HassePoset) -> str:
    index = {node: i for i, node in enumerate(poset.nodes)}
    out = ["digraph hasse {", "  rankdir=BT;", "  node [shape=box];"]
    for i, node in enumerate(poset.nodes):
        out.append(f'  n{i} [label="{format_label(node.label)}"];')
    for edge in poset.edges:
        out.append(f"  n{index[edge.lower]} -> n{index[edge.upper]};")
    out.append("}")
    return "\n".join(out)


def poset_to_json(poset: HassePoset) -> str:
    """Stable structured export; poset_from_json is its inverse."""
    index = {node: i for i, node in enumerate(poset.nodes)}
    nodes = []
    for i, node in enumerate(poset.nodes):
        label = node.label
        nodes.append(
            {
                "id": i,
                "k": list(label.sig.k),
                "m": list(label.sig.m),
                "alpha": [
                    {"deg2": list(e.deg2.coords), "deg4": list(e.deg4.coords)}
                    for e in label.alpha.entries
                ],
                "xi": {"modulus": label.g, "coords": list(label.xi.coords)},
            }
        )
    edges = [
        {
            "lower": index[edge.lower],
            "upper": index[edge.upper],
            "witnesses": [
                [list(row) for row in w.entries] for w in edge.witnesses
            ],
        }
        for edge in poset.edges
    ]
    return json.dumps(
        {
            "format": "orbitposet.hasse/1",
            "n": poset.bundle.n,
            "manifold": poset.bundle.manifold.name,
            "c2": list(poset.bundle.c2.coords),
            "bound": poset.bound,
            "truncated": poset.truncated,
            "maximal": index[poset.maximal],
            "nodes": nodes,
            "edges": edges,
        },
        indent=2,
        sort_keys=True,
    )


def poset_from_json(text: str, bundle: BundleSpec) -> HassePoset:
    """Rebuild a poset over its bundle; labels are revalidated on the way."""
    data = json.loads(text)
    if data.get("format") != "orbitposet.hasse/1":
        raise MismatchError("not an orbitposet hasse export")
    if (
        data["n"] != bundle.n
        or data["manifold"] != bundle.manifold.name
        or tuple(data["c2"]) != bundle.c2.coords
    ):
        raise MismatchError("export belongs to a different bundle")
    model = bundle.manifold
    nodes = []
    for node in data["nodes"]:
        sig = HoweSignature(bundle.n, tuple(node["k"]), tuple(node["m"]))
        entries = tuple(
            EvenClass(
                model.h2.element(tuple(a["deg2"])),
                model.h4.element(tuple(a["deg4"])),
                sig.k[i],
            )
            for i, a in enumerate(node["alpha"])
        )
        xi = model.h1(node["xi"]["modulus"]).element(tuple(node["xi"]["coords"]))
        nodes.append(
            OrbitClass(
                OrbitLabel(bundle, sig, ClassTuple(sig, entries), xi)
            )
        )
    edges = tuple(
        HasseEdge(
            nodes[e["lower"]],
            nodes[e["upper"]],
            tuple(
                InclusionMatrix(
                    nodes[e["lower"]].label.sig,
                    nodes[e["upper"]].label.sig,
                    tuple(tuple(row) for row in w),
                )
                for w in e["witnesses"]
            ),
        )
        for e in data["edges"]
    )
    return HassePoset(
        bundle=bundle,
        bound=data["bound"],
        truncated=data["truncated"],
        nodes=tuple(nodes),
        edges=edges,
        maximal=nodes[data["maximal"]],
    )


__all__ = [
    "OrbitLabel",
    "OrbitClass",
    "OrderDecision",
    "HasseEdge",
    "HassePoset",
    "orbit_class",
    "canonical_label",
    "label_key",
    "format_label",
    "equivalent",
    "compare",
    "split",
    "merge",
    "inverse_split",
    "inverse_merge",
    "direct_successors",
    "direct_predecessors",
    "decompose_inclusion",
    "maximal_label",
    "build_hasse",
    "poset_text",
    "poset_dot",
    "poset_to_json",
    "poset_from_json",
]
