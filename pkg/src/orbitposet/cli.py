"""Command-line front end.

Subcommands mirror the library layers: howe (signature enumeration),
inclusions (matrix solutions with Bratteli art), compare (order decision
between two labels), labels (all labels of one signature on a bundle),
hasse (full diagram reconstruction), validate-manifold (descriptor check).

All output is byte-deterministic for fixed inputs.  Exit status is 0 on
success, 1 when a domain precondition is violated, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .abgroup import AbelianGroup
from .charclass import BundleSpec, ClassTuple, solve_labels
from .cohomology import EvenClass, ManifoldModel, load_manifold
from .errors import DescriptorError, DomainError
from .howe import (
    HoweSignature,
    enumerate_signatures,
    format_signature,
    parse_signature,
    signature_invariants,
)
from .inclusion import bratteli_dot, bratteli_text, level_profile, solve_inclusion_matrices
from .lattice import (
    OrbitLabel,
    build_hasse,
    compare,
    format_label,
    poset_dot,
    poset_text,
    poset_to_json,
)

FORMATS = ("text", "dot", "structured")


@dataclass(frozen=True)
class CliConfig:
    """Resolved invocation, kept for reporting and sanity checks."""

    subcommand: str
    n: int | None
    manifold_source: str | None
    c2: tuple[int, ...] | None
    bound: int | None
    fmt: str
    output: str | None

    def __post_init__(self) -> None:
        if self.bound is not None and self.bound < 0:
            raise DescriptorError(f"bound must be >= 0, got {self.bound}")
        if self.fmt not in FORMATS:
            raise DescriptorError(f"format must be one of {FORMATS}")


def _config(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        subcommand=args.subcommand,
        n=getattr(args, "n", None),
        manifold_source=getattr(args, "manifold", None),
        c2=getattr(args, "c2", None),
        bound=getattr(args, "bound", None),
        fmt=getattr(args, "format", "text"),
        output=getattr(args, "output", None),
    )


def _coords(text: str) -> tuple[int, ...]:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    return tuple(int(part) for part in body.split(",") if part.strip() != "")


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


def _load_model(source: str, n: int) -> ManifoldModel:
    """Descriptor files carry their own moduli; builtins get the divisors of n."""
    if Path(source).is_file():
        return load_manifold(source)
    return load_manifold(source, moduli=_divisors(n))


def _bundle(args: argparse.Namespace) -> BundleSpec:
    model = _load_model(args.manifold, args.n)
    return BundleSpec(args.n, model, model.h4.element(args.c2))


def _class_tuple(model: ManifoldModel, sig: HoweSignature, text: str) -> ClassTuple:
    parts = [p for p in text.split(";") if p.strip()] if text.strip() else []
    if len(parts) != sig.r:
        raise DescriptorError(
            f"signature has {sig.r} indices but {len(parts)} class entries given"
        )
    entries = []
    for part, k in zip(parts, sig.k):
        body = part.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        if "|" not in body:
            raise DescriptorError(
                f"class entry {part!r} must look like [deg2|deg4]"
            )
        left, right = body.split("|", 1)
        entries.append(
            EvenClass(model.h2.element(_coords(left)), model.h4.element(_coords(right)), k)
        )
    return ClassTuple(sig, tuple(entries))


def _label(bundle: BundleSpec, sig_text: str, alpha_text: str, xi_text: str) -> OrbitLabel:
    sig = parse_signature(sig_text)
    alpha = _class_tuple(bundle.manifold, sig, alpha_text)
    g = signature_invariants(sig).g
    xi = bundle.manifold.h1(g).element(_coords(xi_text))
    return OrbitLabel(bundle, sig, alpha, xi)


def _matrix_text(entries: tuple[tuple[int, ...], ...]) -> str:
    return "[" + ",".join(
        "[" + ",".join(str(c) for c in row) + "]" for row in entries
    ) + "]"


def _group_text(group: AbelianGroup) -> str:
    parts = ["Z"] * group.free_rank + [f"Z{t}" for t in group.torsion_orders]
    return " x ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_howe(args: argparse.Namespace) -> str:
    sigs = enumerate_signatures(args.n, up_to_permutation=args.classes)
    if args.format == "structured":
        payload = {
            "n": args.n,
            "up_to_permutation": args.classes,
            "count": len(sigs),
            "signatures": [{"k": list(s.k), "m": list(s.m)} for s in sigs],
        }
        return json.dumps(payload, indent=2, sort_keys=True)
    return "\n".join(format_signature(s) for s in sigs)


def _cmd_inclusions(args: argparse.Namespace) -> str:
    source = parse_signature(args.source)
    target = parse_signature(args.target)
    matrices = solve_inclusion_matrices(source, target)
    if args.format == "structured":
        payload = {
            "source": {"k": list(source.k), "m": list(source.m)},
            "target": {"k": list(target.k), "m": list(target.m)},
            "count": len(matrices),
            "matrices": [
                {
                    "entries": [list(row) for row in mat.entries],
                    "level": level_profile(mat).level,
                }
                for mat in matrices
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True)
    if args.format == "dot":
        return "\n\n".join(bratteli_dot(mat) for mat in matrices)
    head = (
        f"{format_signature(source)} -> {format_signature(target)}: "
        f"{len(matrices)} matrices"
    )
    blocks = [head]
    for pos, mat in enumerate(matrices):
        level = level_profile(mat).level
        blocks.append(f"matrix {pos + 1}: level {level}, entries {_matrix_text(mat.entries)}")
        blocks.extend("  " + line for line in bratteli_text(mat).splitlines())
    return "\n".join(blocks)


def _cmd_compare(args: argparse.Namespace) -> str:
    bundle = _bundle(args)
    lower = _label(bundle, args.lower, args.lower_alpha, args.lower_xi)
    upper = _label(bundle, args.upper, args.upper_alpha, args.upper_xi)
    decision = compare(lower, upper)
    equivalent = decision.leq and 0 in decision.levels
    if args.format == "structured":
        payload = {
            "lower": format_label(lower),
            "upper": format_label(upper),
            "coefficients_compatible": decision.coefficients_compatible,
            "leq": decision.leq,
            "equivalent": equivalent,
            "levels": list(decision.levels),
            "witnesses": [
                [list(row) for row in w.entries] for w in decision.witnesses
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True)
    lines = [
        f"lower: {format_label(lower)}",
        f"upper: {format_label(upper)}",
        f"coefficients compatible: {'yes' if decision.coefficients_compatible else 'no'}",
        f"lower <= upper: {'yes' if decision.leq else 'no'}",
        f"equivalent: {'yes' if equivalent else 'no'}",
        f"witnesses: {len(decision.witnesses)}",
    ]
    for witness in decision.witnesses:
        level = level_profile(witness).level
        lines.append(f"  level {level}: {_matrix_text(witness.entries)}")
    return "\n".join(lines)


def _cmd_labels(args: argparse.Namespace) -> str:
    bundle = _bundle(args)
    sig = parse_signature(args.j)
    found, truncated = solve_labels(bundle, sig, args.bound)
    labels = [
        OrbitLabel(bundle, sig, alpha, xi) for alpha, xi in found
    ]
    if args.format == "structured":
        payload = {
            "n": args.n,
            "manifold": bundle.manifold.name,
            "c2": list(bundle.c2.coords),
            "signature": {"k": list(sig.k), "m": list(sig.m)},
            "bound": args.bound,
            "truncated": truncated,
            "count": len(labels),
            "labels": [
                {
                    "alpha": [
                        {"deg2": list(e.deg2.coords), "deg4": list(e.deg4.coords)}
                        for e in label.alpha.entries
                    ],
                    "xi": list(label.xi.coords),
                }
                for label in labels
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True)
    lines = [
        f"SU({args.n}) over {bundle.manifold.name}, "
        f"c2=[{','.join(str(c) for c in bundle.c2.coords)}], "
        f"signature {format_signature(sig)}, bound={args.bound}"
    ]
    if truncated:
        lines.append(
            f"warning: free coordinates searched only in [-{args.bound}, {args.bound}]"
        )
    lines.append(f"labels: {len(labels)}")
    lines.extend(f"  {format_label(label)}" for label in labels)
    return "\n".join(lines)


def _cmd_hasse(args: argparse.Namespace) -> str:
    bundle = _bundle(args)
    poset = build_hasse(bundle, args.bound)
    if args.format == "structured":
        return poset_to_json(poset)
    if args.format == "dot":
        return poset_dot(poset)
    return poset_text(poset)


def _cmd_validate_manifold(args: argparse.Namespace) -> str:
    model = load_manifold(args.file)
    lines = [
        f"{model.name}: valid descriptor",
        f"dim: {model.dim}",
        f"H2: {_group_text(model.h2)}",
        f"H4: {_group_text(model.h4)}",
        f"moduli: {', '.join(str(g) for g in model.moduli)}",
    ]
    for g in model.moduli:
        lines.append(f"H1 mod {g}: {_group_text(model.h1(g))}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Parser assembly


def _add_format(parser: argparse.ArgumentParser, choices: tuple[str, ...]) -> None:
    parser.add_argument(
        "--format",
        choices=choices,
        default="text",
        help="output format (default: text)",
    )


def _add_bundle_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=_positive, required=True, help="rank of SU(n)")
    parser.add_argument(
        "--manifold",
        required=True,
        help="builtin name (S4, S2xS2, LensL(N,q)xS1) or descriptor file path",
    )
    parser.add_argument(
        "--c2",
        type=_coords,
        default=(),
        help="second Chern class coordinates in the H4 basis, comma separated",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitposet",
        description="Orbit-type posets of SU(n) gauge theories on 4-manifolds.",
    )
    parser.add_argument(
        "--output", help="write the result to this file instead of stdout"
    )
    commands = parser.add_subparsers(dest="subcommand", required=True)

    howe = commands.add_parser("howe", help="enumerate Howe signatures of SU(n)")
    howe.add_argument("n", type=_positive)
    howe.add_argument(
        "--classes",
        action="store_true",
        help="list permutation classes only (canonical representatives)",
    )
    _add_format(howe, ("text", "structured"))
    howe.set_defaults(run=_cmd_howe)

    inclusions = commands.add_parser(
        "inclusions", help="solve the inclusion matrix equations between two signatures"
    )
    inclusions.add_argument("source", help='lower signature, e.g. "(1,1|2,2)"')
    inclusions.add_argument("target", help='upper signature, e.g. "(2,2|1,1)"')
    _add_format(inclusions, FORMATS)
    inclusions.set_defaults(run=_cmd_inclusions)

    cmp_parser = commands.add_parser(
        "compare", help="decide the order relation between two labels"
    )
    _add_bundle_options(cmp_parser)
    cmp_parser.add_argument("--lower", required=True, help="lower signature")
    cmp_parser.add_argument(
        "--lower-alpha",
        required=True,
        help='class entries "[deg2|deg4];..." matching the lower signature',
    )
    cmp_parser.add_argument(
        "--lower-xi", default="", help="degree-1 coordinates of the lower label"
    )
    cmp_parser.add_argument("--upper", required=True, help="upper signature")
    cmp_parser.add_argument("--upper-alpha", required=True)
    cmp_parser.add_argument("--upper-xi", default="")
    _add_format(cmp_parser, ("text", "structured"))
    cmp_parser.set_defaults(run=_cmd_compare)

    labels = commands.add_parser(
        "labels", help="solve the labelling equations for one signature"
    )
    _add_bundle_options(labels)
    labels.add_argument("--j", required=True, help='signature, e.g. "(1,1|1,1)"')
    labels.add_argument(
        "--bound",
        type=_nonnegative,
        default=None,
        help="box bound for free cohomology coordinates",
    )
    _add_format(labels, ("text", "structured"))
    labels.set_defaults(run=_cmd_labels)

    hasse = commands.add_parser(
        "hasse", help="reconstruct the Hasse diagram downward from the maximal class"
    )
    _add_bundle_options(hasse)
    hasse.add_argument("--bound", type=_nonnegative, default=None)
    _add_format(hasse, FORMATS)
    hasse.set_defaults(run=_cmd_hasse)

    validate = commands.add_parser(
        "validate-manifold", help="parse and validate a manifold descriptor file"
    )
    validate.add_argument("file", help="descriptor path")
    _add_format(validate, ("text",))
    validate.set_defaults(run=_cmd_validate_manifold)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        config = _config(args)
        rendered = args.run(args)
    except (DomainError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if config.output:
        Path(config.output).write_text(rendered + "\n", encoding="utf-8")
    else:
        print(rendered)
    return 0


if __name__ == "__main__":
    sys.exit(main())
