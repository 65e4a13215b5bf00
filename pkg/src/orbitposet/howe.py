"""Howe signatures of SU(n) gauge orbit types.

A signature is a pair of positive integer sequences (k, m) of equal length r
with sum(k[i]*m[i]) == n.  The k entries are block multiplicities and the m
entries block sizes of a decomposition of the defining n-dimensional
representation; two signatures describe the same stratum type when one is a
simultaneous permutation of the other.

Conventions used throughout the package:

* sequences are 0-indexed tuples,
* a permutation sigma is the tuple (sigma(0), ..., sigma(r-1)) and acts on a
  sequence x by (sigma . x)[j] = x[sigma[j]],
* the canonical representative of a permutation class sorts the index pairs
  (k[i], m[i]) lexicographically ascending, stable in the original index.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import BoundsError, DescriptorError, InvariantError, MismatchError

# Enumeration is guarded: the number of ordered signatures grows quickly and
# nothing in the package needs more than small n.
MAX_ENUMERATION_N = 16

Permutation = tuple[int, ...]


@dataclass(frozen=True)
class HoweSignature:
    """An ordered signature (k, m) for SU(n)."""

    n: int
    k: tuple[int, ...]
    m: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.k) != len(self.m) or not self.k:
            raise InvariantError(
                "signature needs equally long nonempty k and m, got "
                f"k={self.k!r} m={self.m!r}"
            )
        if any(x < 1 for x in self.k) or any(x < 1 for x in self.m):
            raise InvariantError(f"signature entries must be >= 1: {self}")
        total = sum(ki * mi for ki, mi in zip(self.k, self.m))
        if total != self.n:
            raise InvariantError(
                f"sum(k[i]*m[i]) = {total} does not match n = {self.n}"
            )

    @property
    def r(self) -> int:
        return len(self.k)

    def __str__(self) -> str:
        return format_signature(self)


@dataclass(frozen=True)
class SignatureInvariants:
    """Permutation invariants of a signature: g = gcd(m) and m/g."""

    g: int
    m_reduced: tuple[int, ...]


def signature(k: tuple[int, ...], m: tuple[int, ...]) -> HoweSignature:
    """Build a signature with n computed from the entries."""
    return HoweSignature(sum(ki * mi for ki, mi in zip(k, m)), tuple(k), tuple(m))


def signature_invariants(sig: HoweSignature) -> SignatureInvariants:
    g = gcd(*sig.m)
    return SignatureInvariants(g=g, m_reduced=tuple(mi // g for mi in sig.m))


def permute_signature(sig: HoweSignature, sigma: Permutation) -> HoweSignature:
    """Apply a permutation: entry j of the result is entry sigma[j] of sig."""
    if sorted(sigma) != list(range(sig.r)):
        raise MismatchError(f"not a permutation of 0..{sig.r - 1}: {sigma!r}")
    return HoweSignature(
        sig.n,
        tuple(sig.k[i] for i in sigma),
        tuple(sig.m[i] for i in sigma),
    )


def canonical_form(sig: HoweSignature) -> tuple[HoweSignature, Permutation]:
    """Canonical representative of the permutation class of sig.

    Returns (canon, sigma) with canon == permute_signature(sig, sigma); the
    index pairs (k[i], m[i]) of canon are sorted lexicographically ascending.
    Idempotent: the canonical form of a canonical form is itself with the
    identity permutation.
    """
    sigma = tuple(sorted(range(sig.r), key=lambda i: (sig.k[i], sig.m[i])))
    return permute_signature(sig, sigma), sigma


def enumerate_signatures(
    n: int, up_to_permutation: bool = False
) -> tuple[HoweSignature, ...]:
    """All signatures for SU(n), ordered by (r, k, m).

    With up_to_permutation=True only canonical representatives are returned.
    Guarded to 1 <= n <= MAX_ENUMERATION_N.
    """
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise BoundsError(
            f"signature enumeration supports 1 <= n <= {MAX_ENUMERATION_N}, got {n}"
        )
    found: list[HoweSignature] = []
    ks: list[int] = []
    ms: list[int] = []

    def extend(remaining: int) -> None:
        if remaining == 0 and ks:
            found.append(HoweSignature(n, tuple(ks), tuple(ms)))
            return
        for product in range(1, remaining + 1):
            for k in range(1, product + 1):
                if product % k:
                    continue
                ks.append(k)
                ms.append(product // k)
                extend(remaining - product)
                ks.pop()
                ms.pop()

    extend(n)
    found.sort(key=lambda s: (s.r, s.k, s.m))
    if not up_to_permutation:
        return tuple(found)
    classes: list[HoweSignature] = []
    seen: set[HoweSignature] = set()
    for sig in found:
        canon, _ = canonical_form(sig)
        if canon not in seen:
            seen.add(canon)
            classes.append(canon)
    classes.sort(key=lambda s: (s.r, s.k, s.m))
    return tuple(classes)


def format_signature(sig: HoweSignature) -> str:
    """Render as "(k1,...,kr|m1,...,mr)", the syntax parse_signature accepts."""
    return "({}|{})".format(
        ",".join(str(x) for x in sig.k), ",".join(str(x) for x in sig.m)
    )


def parse_signature(text: str) -> HoweSignature:
    """Parse "(k1,...,kr|m1,...,mr)" into a signature."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise DescriptorError(f"signature must be parenthesized: {text!r}")
    body = body[1:-1]
    if body.count("|") != 1:
        raise DescriptorError(f"signature needs exactly one '|': {text!r}")
    left, right = body.split("|")
    try:
        k = tuple(int(x) for x in left.split(","))
        m = tuple(int(x) for x in right.split(","))
    except ValueError as exc:
        raise DescriptorError(f"signature entries must be integers: {text!r}") from exc
    return signature(k, m)
