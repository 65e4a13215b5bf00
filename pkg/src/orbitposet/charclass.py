"""Characteristic-class side of orbit types: class tuples and membership.

A candidate orbit label for a signature (k, m) is a tuple of even classes
alpha = (alpha_1, ..., alpha_r), entry i truncated by k[i], together with a
degree-1 class xi with Z_g coefficients, g = gcd(m).  The pair labels an
actual stratum of the bundle P exactly when two integer equations hold:

* the reduced weights m/g push alpha to the Bockstein of xi in degree 2,
* the weights m push alpha to the total Chern class 1 + c2(P).

The degree-2 part of the second equation is implied by the first (the
Bockstein image is g-torsion), which check_membership records as a
consistency bit.

Pushing a tuple through an integer matrix row means multiplying the classes
with the row entries as cup exponents; in ambient dimension <= 4 this is
the closed quadratic formula implemented by push_tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .abgroup import GroupElement
from .cohomology import (
    EvenClass,
    ManifoldModel,
    bockstein,
    cup,
    enumerate_even_classes,
    search_truncated,
)
from .errors import BoundsError, InvariantError, MismatchError
from .howe import HoweSignature, signature_invariants
from .inclusion import InclusionMatrix


@dataclass(frozen=True)
class ClassTuple:
    signature: HoweSignature
    entries: tuple[EvenClass, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.signature.r:
            raise InvariantError(
                f"need {self.signature.r} class entries, got {len(self.entries)}"
            )
        for i, entry in enumerate(self.entries):
            if entry.k != self.signature.k[i]:
                raise InvariantError(
                    f"entry {i} is truncated by {entry.k}, signature says "
                    f"{self.signature.k[i]}"
                )
        groups = {(e.deg2.group, e.deg4.group) for e in self.entries}
        if len(groups) > 1:
            raise MismatchError("class entries live over different groups")


@dataclass(frozen=True)
class BundleSpec:
    """A principal SU(n) bundle datum: base manifold and second Chern class."""

    n: int
    manifold: ManifoldModel
    c2: GroupElement

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvariantError(f"n must be >= 1, got {self.n}")
        if self.c2.group != self.manifold.h4:
            raise MismatchError("c2 must lie in the manifold's H4")


def total_chern(bundle: BundleSpec) -> EvenClass:
    """1 + c2(P) as an even class with the full multiplicity n."""
    return EvenClass(bundle.manifold.h2.zero(), bundle.c2, bundle.n)


def push_tuple(
    model: ManifoldModel,
    rows: tuple[tuple[int, ...], ...],
    entries: tuple[EvenClass, ...],
    out_multiplicities: tuple[int, ...],
) -> tuple[EvenClass, ...]:
    """Push even classes through integer rows as cup exponents.

    Row w sends (alpha_i) to the degree <= 4 part of prod alpha_i^w[i]:

        deg2 = sum w[i] * a2[i]
        deg4 = sum w[i] * a4[i] + sum C(w[i], 2) * a2[i]^2
               + sum_{i<j} w[i] w[j] * a2[i] a2[j]
    """
    out = []
    for w, k_out in zip(rows, out_multiplicities):
        deg2 = model.h2.zero()
        deg4 = model.h4.zero()
        for weight, entry in zip(w, entries):
            if not weight:
                continue
            deg2 = deg2 + weight * entry.deg2
            deg4 = deg4 + weight * entry.deg4
            deg4 = deg4 + (weight * (weight - 1) // 2) * cup(
                model, entry.deg2, entry.deg2
            )
        for i in range(len(entries)):
            if not w[i]:
                continue
            for j in range(i + 1, len(entries)):
                if not w[j]:
                    continue
                deg4 = deg4 + (w[i] * w[j]) * cup(
                    model, entries[i].deg2, entries[j].deg2
                )
        out.append(EvenClass(deg2, deg4, k_out))
    return tuple(out)


def apply_inclusion(
    model: ManifoldModel, matrix: InclusionMatrix, alpha: ClassTuple
) -> ClassTuple:
    """The induced map on class tuples of an inclusion matrix."""
    if alpha.signature != matrix.source:
        raise MismatchError(
            "class tuple signature does not match the matrix source"
        )
    pushed = push_tuple(model, matrix.entries, alpha.entries, matrix.target.k)
    return ClassTuple(matrix.target, pushed)


@dataclass(frozen=True)
class MembershipReport:
    """Per-equation status of a candidate label."""

    bockstein_eq: bool
    chern_deg2: bool
    chern_deg4: bool

    @property
    def consistent(self) -> bool:
        """Degree 2 of the Chern equation must follow from the first equation."""
        return self.chern_deg2 or not self.bockstein_eq

    @property
    def ok(self) -> bool:
        return self.bockstein_eq and self.chern_deg2 and self.chern_deg4


def check_membership(
    bundle: BundleSpec, alpha: ClassTuple, xi: GroupElement
) -> MembershipReport:
    """Evaluate both labelling equations exactly."""
    model = bundle.manifold
    sig = alpha.signature
    if sig.n != bundle.n:
        raise MismatchError(
            f"signature is for SU({sig.n}), bundle is SU({bundle.n})"
        )
    inv = signature_invariants(sig)
    if xi.group != model.h1(inv.g):
        raise MismatchError(
            f"xi must have Z_{inv.g} coefficients for this signature"
        )
    reduced_push = model.h2.zero()
    for weight, entry in zip(inv.m_reduced, alpha.entries):
        reduced_push = reduced_push + weight * entry.deg2
    bockstein_eq = reduced_push == bockstein(model, inv.g, xi)

    chern = push_tuple(model, (sig.m,), alpha.entries, (max(2, bundle.n),))[0]
    return MembershipReport(
        bockstein_eq=bockstein_eq,
        chern_deg2=chern.deg2.is_zero(),
        chern_deg4=chern.deg4 == bundle.c2,
    )


def solve_labels(
    bundle: BundleSpec, sig: HoweSignature, bound: int | None = None
) -> tuple[tuple[tuple[ClassTuple, GroupElement], ...], bool]:
    """All labels of a signature on a bundle, free coordinates boxed.

    Scans the product of per-entry class enumerations against the full
    finite coefficient group and keeps exactly the pairs passing
    check_membership.  Returns (labels, truncated); the flag records that
    free cohomology coordinates were searched only inside [-bound, bound].
    """
    model = bundle.manifold
    inv = signature_invariants(sig)
    coeff_group = model.h1(inv.g)
    truncated = any(search_truncated(model, k) for k in sig.k)
    if truncated and bound is None:
        raise BoundsError(
            "this manifold has free cohomology; labels need a search bound"
        )
    per_entry = [
        tuple(enumerate_even_classes(model, k, bound)) for k in sig.k
    ]
    hits = []
    for combo in product(*per_entry):
        alpha = ClassTuple(sig, combo)
        for xi in coeff_group.elements():
            if check_membership(bundle, alpha, xi).ok:
                hits.append((alpha, xi))
    return tuple(hits), truncated
