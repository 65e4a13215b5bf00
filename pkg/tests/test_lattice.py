"""Tests for the stratum poset: order decisions, generators, Hasse diagrams.

The reconstruction pass gets the adversarial treatment: breadth-first
search from the maximal class must reproduce the transitive reduction of
the brute-force order relation computed over the full label universe.
"""

import pytest

from orbitposet.charclass import BundleSpec, ClassTuple, solve_labels
from orbitposet.cohomology import EvenClass, builtin_manifold, unit_class
from orbitposet.errors import BoundsError, InvariantError, MismatchError
from orbitposet.howe import enumerate_signatures, signature
from orbitposet.inclusion import InclusionMatrix, level_profile
from orbitposet.lattice import (
    OrbitClass,
    OrbitLabel,
    build_hasse,
    canonical_label,
    compare,
    decompose_inclusion,
    direct_predecessors,
    direct_successors,
    equivalent,
    inverse_merge,
    inverse_split,
    label_key,
    maximal_label,
    merge,
    orbit_class,
    poset_dot,
    poset_from_json,
    poset_text,
    poset_to_json,
    split,
)

S4 = builtin_manifold("S4", (1, 2))
S2XS2 = builtin_manifold("S2xS2", (1, 2))
LENS4 = builtin_manifold("LensL(4,3)xS1", (1, 2, 4))


def unit_label(bundle, k, m):
    """The label with all classes 1 and xi = 0; valid when c2(P) = 0."""
    sig = signature(k, m)
    model = bundle.manifold
    alpha = ClassTuple(sig, tuple(unit_class(model, kk) for kk in k))
    from orbitposet.howe import signature_invariants

    g = signature_invariants(sig).g
    return OrbitLabel(bundle, sig, alpha, model.h1(g).zero())


def brute_force_poset(bundle, bound):
    """Transitive reduction of the compare relation over all labels."""
    universe = set()
    for sig in enumerate_signatures(bundle.n, up_to_permutation=True):
        labels, _ = solve_labels(bundle, sig, bound)
        for alpha, xi in labels:
            universe.add(orbit_class(OrbitLabel(bundle, sig, alpha, xi)))
    nodes = sorted(universe, key=lambda c: label_key(c.label))
    below = {
        (a, b)
        for a in nodes
        for b in nodes
        if a != b and compare(a.label, b.label).leq
    }
    covers = {
        (a, b)
        for (a, b) in below
        if not any((a, c) in below and (c, b) in below for c in nodes)
    }
    return set(nodes), covers


class TestLabels:
    def test_maximal_label(self):
        bundle = BundleSpec(3, S4, S4.h4.element((2,)))
        top = maximal_label(bundle)
        assert top.sig == signature((3,), (1,))
        assert top.alpha.entries[0].deg4 == bundle.c2
        assert top.g == 1

    def test_membership_enforced_on_construction(self):
        bundle = BundleSpec(2, S4, S4.h4.element((1,)))
        sig = signature((1, 1), (1, 1))
        alpha = ClassTuple(sig, (unit_class(S4, 1), unit_class(S4, 1)))
        with pytest.raises(InvariantError):
            OrbitLabel(bundle, sig, alpha, S4.h1(1).zero())

    def test_signature_mismatch_rejected(self):
        bundle = BundleSpec(2, S4, S4.h4.zero())
        alpha = ClassTuple(
            signature((1, 1), (1, 1)), (unit_class(S4, 1), unit_class(S4, 1))
        )
        with pytest.raises(MismatchError):
            OrbitLabel(bundle, signature((2,), (1,)), alpha, S4.h1(1).zero())

    def test_canonical_label_sorts_triples(self):
        bundle = BundleSpec(2, S2XS2, S2XS2.h4.zero())
        x = S2XS2.h2.element((1, 0))
        zero4 = S2XS2.h4.zero()
        sig = signature((1, 1), (1, 1))
        big_first = OrbitLabel(
            bundle,
            sig,
            ClassTuple(sig, (EvenClass(x, zero4, 1), EvenClass(-1 * x, zero4, 1))),
            S2XS2.h1(1).zero(),
        )
        canon = canonical_label(big_first)
        assert canon.alpha.entries[0].deg2.coords == (-1, 0)
        assert equivalent(big_first, canon)
        assert orbit_class(big_first) == orbit_class(canon)

    def test_orbit_class_requires_canonical_representative(self):
        bundle = BundleSpec(2, S2XS2, S2XS2.h4.zero())
        x = S2XS2.h2.element((1, 0))
        zero4 = S2XS2.h4.zero()
        sig = signature((1, 1), (1, 1))
        label = OrbitLabel(
            bundle,
            sig,
            ClassTuple(sig, (EvenClass(x, zero4, 1), EvenClass(-1 * x, zero4, 1))),
            S2XS2.h1(1).zero(),
        )
        with pytest.raises(InvariantError):
            OrbitClass(label)


class TestCompare:
    def chain(self):
        bundle = BundleSpec(2, S4, S4.h4.zero())
        bottom = unit_label(bundle, (1,), (2,))
        middle = unit_label(bundle, (1, 1), (1, 1))
        top = maximal_label(bundle)
        return bottom, middle, top

    def test_s4_chain_decisions(self):
        bottom, middle, top = self.chain()
        low_mid = compare(bottom, middle)
        assert low_mid.leq and low_mid.levels == (1,)
        assert low_mid.witnesses[0].entries == ((1,), (1,))
        mid_top = compare(middle, top)
        assert mid_top.leq and mid_top.levels == (1,)
        low_top = compare(bottom, top)
        assert low_top.leq and low_top.levels == (2,)

    def test_order_is_not_symmetric(self):
        bottom, middle, top = self.chain()
        down = compare(top, bottom)
        assert not down.leq and not down.coefficients_compatible
        assert compare(top, middle).coefficients_compatible
        assert not compare(top, middle).leq

    def test_equivalence_means_level_zero_witness(self):
        bottom, middle, top = self.chain()
        self_cmp = compare(middle, middle)
        assert self_cmp.leq and set(self_cmp.levels) == {0}
        assert len(self_cmp.witnesses) == 2
        assert equivalent(middle, middle)

    def test_compare_rejects_mixed_bundles(self):
        bundle_a = BundleSpec(2, S4, S4.h4.zero())
        bundle_b = BundleSpec(2, S4, S4.h4.element((1,)))
        with pytest.raises(MismatchError):
            compare(unit_label(bundle_a, (1,), (2,)), maximal_label(bundle_b))


class TestGenerators:
    def lens_su4_label(self):
        bundle = BundleSpec(4, LENS4, LENS4.h4.zero())
        sig = signature((1, 1), (2, 2))
        gamma = LENS4.h2.element((1,))
        zero4 = LENS4.h4.zero()
        alpha = ClassTuple(
            sig, (EvenClass(gamma, zero4, 1), EvenClass(gamma, zero4, 1))
        )
        xi = LENS4.h1(2).element((1, 0))
        return OrbitLabel(bundle, sig, alpha, xi)

    def test_split_reduces_coefficients(self):
        bundle = BundleSpec(4, LENS4, LENS4.h4.zero())
        sig = signature((1,), (4,))
        gamma = LENS4.h2.element((1,))
        alpha = ClassTuple(sig, (EvenClass(gamma, LENS4.h4.zero(), 1),))
        label = OrbitLabel(bundle, sig, alpha, LENS4.h1(4).element((1, 0)))
        child = split(label, 0, (2, 2))
        assert child.sig == signature((1, 1), (2, 2))
        assert child.g == 2
        assert child.xi.coords == (1, 0)
        assert child.alpha.entries[0] == child.alpha.entries[1]

    def test_split_guards(self):
        bundle = BundleSpec(2, S4, S4.h4.zero())
        label = unit_label(bundle, (1, 1), (1, 1))
        with pytest.raises(BoundsError):
            split(label, 5, (1, 1))
        with pytest.raises(InvariantError):
            split(label, 0, (1, 0))
        bottom = unit_label(bundle, (1,), (2,))
        with pytest.raises(InvariantError):
            split(bottom, 0, (3, -1))

    def test_merge_requires_equal_weights(self):
        bundle = BundleSpec(3, S4, S4.h4.zero())
        label = unit_label(bundle, (1, 1), (1, 2))
        with pytest.raises(InvariantError):
            merge(label, 0, 1)

    def test_merge_cups_classes(self):
        bundle = BundleSpec(2, S2XS2, S2XS2.h4.element((-4,)))
        x = S2XS2.h2.element((1, 2))
        zero4 = S2XS2.h4.zero()
        sig = signature((1, 1), (1, 1))
        label = OrbitLabel(
            bundle,
            sig,
            ClassTuple(sig, (EvenClass(x, zero4, 1), EvenClass(-1 * x, zero4, 1))),
            S2XS2.h1(1).zero(),
        )
        merged = merge(label, 0, 1)
        assert merged.sig == signature((2,), (1,))
        assert merged.alpha.entries[0].deg2.is_zero()
        assert merged.alpha.entries[0].deg4.coords == (-4,)

    def test_inverse_split_lens_su4_lifts(self):
        label = self.lens_su4_label()
        children = inverse_split(label, 0, 1)
        assert [c.xi.coords for c in children] == [(1, 0), (1, 2)]
        for child in children:
            assert child.sig == signature((1,), (4,))
            assert child.g == 4
            assert compare(child, label).leq

    def test_inverse_split_requires_matching_indices(self):
        bundle = BundleSpec(3, S4, S4.h4.zero())
        label = unit_label(bundle, (1, 2), (1, 1))
        with pytest.raises(InvariantError):
            inverse_split(label, 0, 1)

    def test_inverse_split_obstructed_lift_returns_nothing(self):
        # An artificial base whose mod-2 Bockstein misses half of H^2: the
        # degree-1 class then has no admissible lift for one of the two
        # candidate classes, and inverse_split comes back empty for it.
        from orbitposet.abgroup import AbelianGroup
        from orbitposet.cohomology import manifold_model

        model = manifold_model(
            name="bockstein-gap",
            dim=4,
            h2=AbelianGroup(0, (2, 2)),
            h4=AbelianGroup(0, ()),
            cup_table=(((), ()), ((), ())),
            h1_groups={2: AbelianGroup(0, (2,))},
            bockstein_maps={2: ((1,), (0,))},
            reduction_maps={},
        )
        bundle = BundleSpec(2, model, model.h4.zero())
        sig = signature((1, 1), (1, 1))
        zero4 = model.h4.zero()

        def label(coords):
            entry = EvenClass(model.h2.element(coords), zero4, 1)
            return OrbitLabel(
                bundle, sig, ClassTuple(sig, (entry, entry)), model.h1(1).zero()
            )

        assert inverse_split(label((0, 1)), 0, 1) == ()
        reachable = inverse_split(label((1, 0)), 0, 1)
        assert [c.xi.coords for c in reachable] == [(1,)]

    def test_inverse_merge_factors_top_class(self):
        vol = S2XS2.h4.element((1,))
        bundle = BundleSpec(2, S2XS2, 4 * vol)
        top = maximal_label(bundle)
        children, truncated = inverse_merge(top, 0, (1, 1), bound=3)
        assert truncated
        firsts = sorted(c.alpha.entries[0].deg2.coords for c in children)
        assert firsts == [(-2, 1), (-1, 2), (1, -2), (2, -1)]
        for child in children:
            assert compare(child, top).leq

    def test_inverse_merge_needs_bound_on_free_cohomology(self):
        bundle = BundleSpec(2, S2XS2, S2XS2.h4.zero())
        with pytest.raises(BoundsError):
            inverse_merge(maximal_label(bundle), 0, (1, 1))

    def test_inverse_merge_without_bound_on_torsion_manifold(self):
        bundle = BundleSpec(2, LENS4, LENS4.h4.zero())
        children, truncated = inverse_merge(maximal_label(bundle), 0, (1, 1))
        assert not truncated
        assert len(children) == 4
        assert len({orbit_class(c) for c in children}) == 3

    def test_generator_duality_on_edges(self):
        bundle = BundleSpec(2, LENS4, LENS4.h4.zero())
        poset = build_hasse(bundle)
        for edge in poset.edges:
            succ = direct_successors(edge.lower.label)
            assert edge.upper in succ
            preds, _ = direct_predecessors(edge.upper.label)
            assert edge.lower in preds


class TestNeighbours:
    def su4_middle_label(self, a, b, c2):
        bundle = BundleSpec(4, S2XS2, S2XS2.h4.element((c2,)))
        x = S2XS2.h2.element((a, b))
        zero4 = S2XS2.h4.zero()
        sig = signature((1, 1), (2, 2))
        return OrbitLabel(
            bundle,
            sig,
            ClassTuple(sig, (EvenClass(x, zero4, 1), EvenClass(-1 * x, zero4, 1))),
            S2XS2.h1(2).zero(),
        )

    def test_successor_classes_collapse(self):
        label = self.su4_middle_label(1, 1, -4)
        assert len(direct_successors(label)) == 3
        plain = self.su4_middle_label(0, 0, 0)
        assert len(direct_successors(plain)) == 2

    def test_distinct_classes_have_no_predecessors(self):
        preds, truncated = direct_predecessors(
            self.su4_middle_label(1, 1, -4), bound=2
        )
        assert preds == () and not truncated


class TestDecompose:
    def test_su8_witnesses_peel_to_permutations(self):
        bundle = BundleSpec(8, S4, S4.h4.zero())
        low = unit_label(bundle, (1, 2), (4, 2))
        high = unit_label(bundle, (4, 2), (1, 2))
        decision = compare(low, high)
        assert decision.leq and decision.levels == (4, 6)
        for witness in decision.witnesses:
            steps = 0
            current, rest = low, witness
            while level_profile(rest).level > 0:
                current, step, rest = decompose_inclusion(current, high, rest)
                assert level_profile(step).level == 1
                steps += 1
            assert steps == level_profile(witness).level
            assert equivalent(current, high)

    def test_rejects_level_zero(self):
        bundle = BundleSpec(2, S4, S4.h4.zero())
        label = unit_label(bundle, (1, 1), (1, 1))
        identity = InclusionMatrix(label.sig, label.sig, ((1, 0), (0, 1)))
        with pytest.raises(InvariantError):
            decompose_inclusion(label, label, identity)

    def test_rejects_non_witness(self):
        bundle = BundleSpec(2, S2XS2, S2XS2.h4.zero())
        zero4 = S2XS2.h4.zero()
        sig = signature((1, 1), (1, 1))

        def axis_label(a):
            x = S2XS2.h2.element((a, 0))
            return OrbitLabel(
                bundle,
                sig,
                ClassTuple(sig, (EvenClass(x, zero4, 1), EvenClass(-1 * x, zero4, 1))),
                S2XS2.h1(1).zero(),
            )

        identity = InclusionMatrix(sig, sig, ((1, 0), (0, 1)))
        with pytest.raises(MismatchError):
            decompose_inclusion(axis_label(1), axis_label(2), identity)

    def test_rejects_disconnected_signatures(self):
        bundle = BundleSpec(2, S4, S4.h4.zero())
        bottom = unit_label(bundle, (1,), (2,))
        middle = unit_label(bundle, (1, 1), (1, 1))
        wrong = InclusionMatrix(middle.sig, maximal_label(bundle).sig, ((1, 1),))
        with pytest.raises(MismatchError):
            decompose_inclusion(bottom, middle, wrong)


class TestHasse:
    def test_s4_trivial_bundle_is_a_chain(self):
        bundle = BundleSpec(2, S4, S4.h4.zero())
        poset = build_hasse(bundle)
        assert len(poset.nodes) == 3 and len(poset.edges) == 2
        assert not poset.truncated
        ms = [node.label.sig.m for node in poset.nodes]
        assert sorted(ms) == [(1,), (1, 1), (2,)]
        for edge in poset.edges:
            assert min(level_profile(w).level for w in edge.witnesses) == 1

    def test_s4_nonzero_chern_is_a_point(self):
        bundle = BundleSpec(2, S4, S4.h4.element((1,)))
        poset = build_hasse(bundle)
        assert len(poset.nodes) == 1 and poset.edges == ()
        assert poset.nodes[0] == poset.maximal

    @pytest.mark.parametrize("p,name", [(1, "LensL(2,1)xS1"), (2, "LensL(4,3)xS1"), (3, "LensL(6,5)xS1")])
    def test_lens_su2_layer_structure(self, p, name):
        model = builtin_manifold(name, (1, 2))
        bundle = BundleSpec(2, model, model.h4.zero())
        poset = build_hasse(bundle)
        assert len(poset.nodes) == p + 6
        assert len(poset.edges) == p + 5
        middles = [n for n in poset.nodes if n.label.sig.m == (1, 1)]
        assert sorted(
            n.label.alpha.entries[0].deg2.coords for n in middles
        ) == [(a,) for a in range(p + 1)]
        bottoms = [n for n in poset.nodes if n.label.sig.m == (2,)]
        assert len(bottoms) == 4
        for edge in poset.edges:
            if edge.lower not in bottoms:
                continue
            a2 = edge.lower.label.alpha.entries[0].deg2.coords[0]
            x_l = edge.lower.label.xi.coords[0]
            assert (a2, x_l) in {(0, 0), (p, 1)}
            assert edge.upper.label.alpha.entries[0].deg2.coords == (a2,)

    @pytest.mark.parametrize("l,middle_count", [(1, 1), (2, 2), (3, 2), (6, 4)])
    def test_s2xs2_even_chern_divisor_layers(self, l, middle_count):
        bundle = BundleSpec(2, S2XS2, S2XS2.h4.element((2 * l,)))
        poset = build_hasse(bundle, bound=6)
        assert poset.truncated
        assert len(poset.nodes) == 1 + middle_count
        middles = [n for n in poset.nodes if n != poset.maximal]
        got = sorted(n.label.alpha.entries[1].deg2.coords for n in middles)
        want = sorted(
            (q, -(l // q)) for q in range(1, l + 1) if l % q == 0
        )
        assert got == want
        assert all(n.label.g == 1 for n in middles)

    def test_s2xs2_odd_chern_is_a_point(self):
        bundle = BundleSpec(2, S2XS2, S2XS2.h4.element((3,)))
        poset = build_hasse(bundle, bound=6)
        assert len(poset.nodes) == 1

    def test_s2xs2_zero_chern_axis_layer(self):
        bundle = BundleSpec(2, S2XS2, S2XS2.h4.zero())
        poset = build_hasse(bundle, bound=3)
        assert poset.truncated
        middles = [n for n in poset.nodes if n.label.sig.m == (1, 1)]
        got = sorted(n.label.alpha.entries[1].deg2.coords for n in middles)
        assert got == sorted(
            [(a, 0) for a in range(4)] + [(0, b) for b in range(1, 4)]
        )
        bottoms = [n for n in poset.nodes if n.label.sig.m == (2,)]
        assert len(bottoms) == 1
        attach = [
            e.upper for e in poset.edges if e.lower == bottoms[0]
        ]
        assert len(attach) == 1
        assert all(
            entry.deg2.is_zero() for entry in attach[0].label.alpha.entries
        )

    def test_missing_moduli_reported(self):
        model = builtin_manifold("LensL(4,3)xS1", (1,))
        bundle = BundleSpec(2, model, model.h4.zero())
        with pytest.raises(MismatchError) as err:
            build_hasse(bundle)
        assert "[2]" in str(err.value)


class TestAgainstBruteForce:
    @pytest.mark.parametrize(
        "name,n,moduli",
        [
            ("S4", 2, (1, 2)),
            ("S4", 3, (1, 3)),
            ("LensL(4,3)xS1", 2, (1, 2)),
        ],
    )
    def test_bfs_matches_transitive_reduction(self, name, n, moduli):
        model = builtin_manifold(name, moduli)
        bundle = BundleSpec(n, model, model.h4.zero())
        nodes_bf, covers_bf = brute_force_poset(bundle, bound=2)
        poset = build_hasse(bundle, bound=2)
        assert set(poset.nodes) == nodes_bf
        assert {(e.lower, e.upper) for e in poset.edges} == covers_bf


class TestRendering:
    def test_text_layout(self):
        bundle = BundleSpec(2, S4, S4.h4.zero())
        text = poset_text(build_hasse(bundle))
        assert text == (
            "SU(2) over S4, c2=[0], bound=None\n"
            "truncated: no\n"
            "classes: 3\n"
            "  [0] (1|2) a=([|0]) xi@2=[]\n"
            "  [1] (2|1) a=([|0]) xi@1=[] (maximal)\n"
            "  [2] (1,1|1,1) a=([|0],[|0]) xi@1=[]\n"
            "cover relations: 2\n"
            "  [0] < [2]  (1 witness)\n"
            "  [2] < [1]  (1 witness)"
        )

    def test_dot_output(self):
        bundle = BundleSpec(2, S4, S4.h4.zero())
        dot = poset_dot(build_hasse(bundle))
        lines = dot.splitlines()
        assert lines[0] == "digraph hasse {"
        assert "  rankdir=BT;" in lines
        assert "  n0 -> n2;" in lines
        assert "  n2 -> n1;" in lines
        assert lines[-1] == "}"

    def test_json_round_trip(self):
        model = builtin_manifold("LensL(4,3)xS1", (1, 2))
        bundle = BundleSpec(2, model, model.h4.zero())
        poset = build_hasse(bundle)
        text = poset_to_json(poset)
        assert poset_from_json(text, bundle) == poset

    def test_json_rejects_other_formats(self):
        bundle = BundleSpec(2, S4, S4.h4.zero())
        with pytest.raises(MismatchError):
            poset_from_json('{"format": "something-else"}', bundle)

    def test_json_rejects_wrong_bundle(self):
        bundle = BundleSpec(2, S4, S4.h4.zero())
        text = poset_to_json(build_hasse(bundle))
        other = BundleSpec(2, S4, S4.h4.element((1,)))
        with pytest.raises(MismatchError):
            poset_from_json(text, other)
