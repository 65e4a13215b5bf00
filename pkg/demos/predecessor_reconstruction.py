"""Local moves around an SU(4) stratum, and peeling a witness apart.

Splits and merges generate the classes directly above a label; their
inverses generate the ones directly below.  Any higher-level witness
factors into exactly its level of such unit steps.
"""

from orbitposet import (
    BundleSpec,
    ClassTuple,
    EvenClass,
    OrbitLabel,
    builtin_manifold,
    compare,
    decompose_inclusion,
    direct_predecessors,
    direct_successors,
    format_label,
    format_signature,
    level_profile,
    maximal_label,
    signature,
)

model = builtin_manifold("S2xS2", (1, 2))
bundle = BundleSpec(4, model, model.h4.element((-4,)))

sig = signature((1, 1), (2, 2))
x = model.h2.element((1, 1))
alpha = ClassTuple(sig, (
    EvenClass(x, model.h4.zero(), 1),
    EvenClass(-x, model.h4.zero(), 1),
))
label = OrbitLabel(bundle, sig, alpha, model.h1(2).zero())
print(f"around {format_label(label)} on a twisted SU(4) bundle:")
print()

ups = direct_successors(label)
print(f"{len(ups)} direct successor class(es), from one merge and two splits:")
for cls in ups:
    print(f"  {format_label(cls.label)}")
print()

downs, truncated = direct_predecessors(label, bound=4)
print(f"{len(downs)} direct predecessor class(es) in the box (truncated={truncated});")
print("unequal classes block inverse splitting and unit multiplicities block")
print("inverse merging, so this stratum is locally minimal")
print()

merged = ups[0].label
downs, truncated = direct_predecessors(merged, bound=4)
print(f"the merged successor {format_label(merged)} does look back down:")
for cls in downs:
    print(f"  {format_label(cls.label)}")
print()

top = maximal_label(bundle)
decision = compare(label, top)
witness = decision.witnesses[0]
print(f"a witness {format_signature(sig)} -> {format_signature(top.sig)} "
      f"of level {level_profile(witness).level} peels into unit steps:")
lower, current = label, witness
while level_profile(current).level > 0:
    lower, step, current = decompose_inclusion(lower, top, current)
    print(f"  step {step.entries} lands on {format_label(lower)}")
print(f"  remainder {current.entries} is a permutation (level 0)")
