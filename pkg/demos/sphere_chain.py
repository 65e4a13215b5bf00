"""The smallest complete classification: SU(2) over the 4-sphere.

With H^2 = 0 every label is pinned by its signature alone, so the poset
is a 3-chain for the trivial bundle and collapses to a point as soon as
the second Chern class twists.
"""

from orbitposet import (
    BundleSpec,
    build_hasse,
    builtin_manifold,
    compare,
    format_label,
    maximal_label,
    poset_text,
)

model = builtin_manifold("S4", (1, 2))
bundle = BundleSpec(2, model, model.h4.zero())

poset = build_hasse(bundle)
print(poset_text(poset))
print()

top = maximal_label(bundle)
bottom = poset.nodes[0].label
decision = compare(bottom, top)
print(f"{format_label(bottom)}  <=  {format_label(top)}: {decision.leq}")
print(f"witness levels {decision.levels}; the level-2 witness skips the middle rung")
for witness in decision.witnesses:
    print(f"  {witness.entries}")
print()

for c2 in (1, -3):
    twisted = build_hasse(BundleSpec(2, model, model.h4.element((c2,))))
    print(f"c2={c2}: {len(twisted.nodes)} class(es); "
          f"only {format_label(twisted.maximal.label)} survives")
