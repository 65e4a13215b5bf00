"""Walk the signature layer: enumeration, canonical forms, inclusions.

Signatures (k|m) index the reductive blocks a gauge stabilizer can have;
two signatures are comparable when the integer equations D k = k' and
m = m' D have a nonnegative solution D.
"""

from orbitposet import (
    bratteli_text,
    canonical_form,
    enumerate_signatures,
    format_signature,
    level_profile,
    parse_signature,
    signature_invariants,
    solve_inclusion_matrices,
)

for n in (2, 3, 4):
    sigs = enumerate_signatures(n)
    classes = enumerate_signatures(n, up_to_permutation=True)
    print(f"SU({n}): {len(sigs)} signatures, {len(classes)} permutation classes")
print()

sig = parse_signature("(2,1,1|1,2,2)")
canon, perm = canonical_form(sig)
inv = signature_invariants(sig)
print(f"{format_signature(sig)} canonicalizes to {format_signature(canon)}")
print(f"permutation {perm}, gcd of weights g={inv.g}, reduced weights {inv.m_reduced}")
print()

lower = parse_signature("(1,1|2,2)")
upper = parse_signature("(2,2|1,1)")
print(f"solutions of the inclusion equations {format_signature(lower)} -> {format_signature(upper)}:")
for matrix in solve_inclusion_matrices(lower, upper):
    level = level_profile(matrix).level
    print(f"\nlevel {level}, entries {matrix.entries}")
    print(bratteli_text(matrix))
print()

print("levels count elementary steps; a permutation witness has level 0:")
same = parse_signature("(1,2|2,1)")
for matrix in solve_inclusion_matrices(same, parse_signature("(2,1|1,2)")):
    print(f"entries {matrix.entries} -> level {level_profile(matrix).level}")
