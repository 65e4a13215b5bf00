"""Free cohomology: SU(2) over S2 x S2.

The middle layer solves a quadratic cup equation, so its classes track
the divisors of the Chern number.  The untwisted bundle has infinitely
many solutions and the search box must be declared, and flagged.
"""

from orbitposet import BundleSpec, build_hasse, builtin_manifold, format_label

model = builtin_manifold("S2xS2", (1, 2))

for l in (1, 2, 3, 6):
    bundle = BundleSpec(2, model, model.h4.element((2 * l,)))
    poset = build_hasse(bundle, bound=6)
    middles = [n for n in poset.nodes if n.label.sig.r == 2]
    print(f"c2 = {2 * l} vol: {len(middles)} middle class(es), "
          f"matching the {len(middles)} positive divisor(s) of {l}")
    for node in middles:
        print(f"  {format_label(node.label)}")
print()

odd = build_hasse(BundleSpec(2, model, model.h4.element((3,))), bound=6)
print(f"c2 = 3 vol: {len(odd.nodes)} class; an odd Chern number admits no proper strata")
print()

flat = build_hasse(BundleSpec(2, model, model.h4.zero()), bound=3)
print(f"c2 = 0, bound 3: truncated={flat.truncated}, {len(flat.nodes)} classes in the box")
print("the two axes of middles continue past any bound; only the all-zero one")
print("has a predecessor:")
for edge in flat.edges:
    if edge.lower.label.sig.r == 1 and edge.lower.label.sig.m == (2,):
        print(f"  {format_label(edge.lower.label)}  <  {format_label(edge.upper.label)}")
