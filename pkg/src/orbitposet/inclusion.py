"""Inclusion matrices between Howe signatures and their level grading.

A nonnegative integer matrix D with rows indexed by a target signature
(k', m') and columns by a source signature (k, m) is an inclusion matrix
when D k = k' (columns weighted by k) and m' D = m (rows weighted by m').
These are the Bratteli diagrams of the situation: entry D[i'][i] counts
parallel edges between lower vertex i' and upper vertex i.

The level of D is 2 * sum(D) - (r + r'); column excesses (colsum - 1) and
row excesses (rowsum - 1) are individually nonnegative and the level is
twice either total plus the matching rank difference.  Level 0 matrices are
exactly the permutation matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abgroup import Matrix
from .errors import InvariantError, MismatchError
from .howe import HoweSignature, Permutation, format_signature, permute_signature


@dataclass(frozen=True)
class InclusionMatrix:
    source: HoweSignature
    target: HoweSignature
    entries: Matrix

    def __post_init__(self) -> None:
        r, rp = self.source.r, self.target.r
        if len(self.entries) != rp or any(len(row) != r for row in self.entries):
            raise InvariantError(
                f"entries must form a {rp}x{r} matrix, got {self.entries!r}"
            )
        if any(cell < 0 for row in self.entries for cell in row):
            raise InvariantError("inclusion matrix entries must be >= 0")
        k, m = self.source.k, self.source.m
        kp, mp = self.target.k, self.target.m
        for ip, row in enumerate(self.entries):
            total = sum(cell * k[i] for i, cell in enumerate(row))
            if total != kp[ip]:
                raise InvariantError(
                    f"row {ip}: sum(D[{ip}][i]*k[i]) = {total} != k'[{ip}] = {kp[ip]}"
                )
        for i in range(r):
            total = sum(mp[ip] * self.entries[ip][i] for ip in range(rp))
            if total != m[i]:
                raise InvariantError(
                    f"column {i}: sum(m'[i']*D[i'][{i}]) = {total} != m[{i}] = {m[i]}"
                )


@dataclass(frozen=True)
class LevelProfile:
    level: int
    column_excess: tuple[int, ...]
    row_excess: tuple[int, ...]


def level_profile(matrix: InclusionMatrix) -> LevelProfile:
    entries = matrix.entries
    r, rp = matrix.source.r, matrix.target.r
    cols = tuple(sum(entries[ip][i] for ip in range(rp)) - 1 for i in range(r))
    rows = tuple(sum(entries[ip]) - 1 for ip in range(rp))
    total = sum(sum(row) for row in entries)
    return LevelProfile(2 * total - (r + rp), cols, rows)


def solve_inclusion_matrices(
    source: HoweSignature, target: HoweSignature
) -> tuple[InclusionMatrix, ...]:
    """All inclusion matrices from source to target, sorted row-major.

    Backtracking fill, column by column; each candidate entry is capped by
    what the row equation (through k) and the column equation (through m')
    still allow.  The result is empty when the signatures are incompatible.
    """
    if source.n != target.n:
        raise MismatchError(
            f"signatures live in different groups: n = {source.n} vs {target.n}"
        )
    r, rp = source.r, target.r
    k, m = source.k, source.m
    kp, mp = target.k, target.m
    column: list[int] = []
    columns: list[tuple[int, ...]] = []
    row_left = list(kp)
    found: list[Matrix] = []

    def fill(i: int, ip: int, col_left: int) -> None:
        if ip == rp:
            if col_left:
                return
            columns.append(tuple(column))
            column.clear()
            if i + 1 == r:
                if not any(row_left):
                    found.append(tuple(zip(*columns)))
            else:
                fill(i + 1, 0, m[i + 1])
            column.extend(columns.pop())
            return
        cap = min(row_left[ip] // k[i], col_left // mp[ip])
        for entry in range(cap + 1):
            column.append(entry)
            row_left[ip] -= entry * k[i]
            fill(i, ip + 1, col_left - entry * mp[ip])
            row_left[ip] += entry * k[i]
            column.pop()

    fill(0, 0, m[0])
    found.sort()
    return tuple(
        InclusionMatrix(source, target, entries) for entries in found
    )


def compose(
    outer: InclusionMatrix, inner: InclusionMatrix
) -> InclusionMatrix:
    """Matrix product: inner maps J to J', outer maps J' to J''."""
    if inner.target != outer.source:
        raise MismatchError(
            "composition needs the inner target to match the outer source"
        )
    rows = []
    for row in outer.entries:
        rows.append(
            tuple(
                sum(row[ip] * inner.entries[ip][i] for ip in range(inner.target.r))
                for i in range(inner.source.r)
            )
        )
    return InclusionMatrix(inner.source, outer.target, tuple(rows))


def permutation_matrix(
    source: HoweSignature, sigma: Permutation
) -> InclusionMatrix:
    """The level-0 inclusion matrix from a signature to its permutation."""
    target = permute_signature(source, sigma)
    entries = tuple(
        tuple(1 if sigma[ip] == i else 0 for i in range(source.r))
        for ip in range(target.r)
    )
    return InclusionMatrix(source, target, entries)


def _vertex_labels(
    sig: HoweSignature, labels: tuple[str, ...] | None
) -> tuple[str, ...]:
    if labels is None:
        return tuple(
            f"({sig.k[i]}|{sig.m[i]})" for i in range(sig.r)
        )
    if len(labels) != sig.r:
        raise MismatchError("need one label per vertex")
    return tuple(labels)


def bratteli_text(
    matrix: InclusionMatrix,
    upper_labels: tuple[str, ...] | None = None,
    lower_labels: tuple[str, ...] | None = None,
) -> str:
    """Plain-text Bratteli diagram: vertex rows plus an edge multiplicity list."""
    upper = _vertex_labels(matrix.source, upper_labels)
    lower = _vertex_labels(matrix.target, lower_labels)
    edges = []
    for ip in range(matrix.target.r):
        for i in range(matrix.source.r):
            mult = matrix.entries[ip][i]
            if mult:
                edges.append(f"{ip}'-{i} x{mult}")
    lines = [
        "upper: " + "  ".join(f"{i}:{lab}" for i, lab in enumerate(upper)),
        "edges: " + ("  ".join(edges) if edges else "(none)"),
        "lower: " + "  ".join(f"{ip}:{lab}" for ip, lab in enumerate(lower)),
    ]
    return "\n".join(lines)


def bratteli_dot(
    matrix: InclusionMatrix,
    upper_labels: tuple[str, ...] | None = None,
    lower_labels: tuple[str, ...] | None = None,
) -> str:
    """DOT bipartite multigraph; D[i'][i] parallel edges, sorted by (i', i)."""
    upper = _vertex_labels(matrix.source, upper_labels)
    lower = _vertex_labels(matrix.target, lower_labels)
    out = ["graph bratteli {", "  rankdir=TB;", "  node [shape=box];"]
    for i, lab in enumerate(upper):
        out.append(f'  u{i} [label="{lab}"];')
    for ip, lab in enumerate(lower):
        out.append(f'  l{ip} [label="{lab}"];')
    out.append("  { rank=same; " + " ".join(f"u{i};" for i in range(len(upper))) + " }")
    out.append("  { rank=same; " + " ".join(f"l{i};" for i in range(len(lower))) + " }")
    for ip in range(matrix.target.r):
        for i in range(matrix.source.r):
            for _ in range(matrix.entries[ip][i]):
                out.append(f"  u{i} -- l{ip};")
    out.append("}")
    return "\n".join(out)


def format_inclusion(matrix: InclusionMatrix) -> str:
    """Compact one-line rendering used by reports and the CLI."""
    rows = " ".join(
        "[" + ",".join(str(c) for c in row) + "]" for row in matrix.entries
    )
    return (
        f"{format_signature(matrix.source)} -> "
        f"{format_signature(matrix.target)}  {rows}"
    )
