"""Tests for network compilation, the symbolic route, mergers and verify."""

import numpy as np
import pytest

from stepregions import (
    CompiledNetwork,
    Layer,
    Selection,
    StepNetwork,
    compile,
    compile_symbolic,
    forward,
    inseparable_pairs,
    label_from_indices,
    label_indices,
    verify,
)
from util import random_network, xor_network


def merger_fixture():
    """Axes planes; hidden nodes compute [bit1] and [bit1 and bit2]."""
    return StepNetwork(2, (
        Layer(np.array([[1.0, 0.0], [0.0, 1.0]]), np.array([0.0, 0.0])),
        Layer(np.array([[1.0, 0.0], [1.0, 1.0]]), np.array([-0.5, -1.5])),
        Layer(np.array([[1.0, 1.0]]), np.array([-0.5])),
    ))


def selections_as_sets(selections):
    return [s.selected for s in selections]


class TestCompile:
    def test_xor_regions_and_selection(self):
        compiled = compile(xor_network())
        assert set(r.label for r in compiled.regions) == {
            0, label_from_indices([1]), label_from_indices([1, 2])
        }
        assert compiled.selections[0].selected == {label_from_indices([1])}
        assert compiled.layer_selections == ()
        assert compiled.height == 1

    def test_xor_against_grid_sampling(self):
        # Oracle: evaluate the network on a dense grid and check that it
        # fires exactly on points whose signature label is selected.
        net = xor_network()
        compiled = compile(net)
        arr = compiled.arrangement
        xs = np.linspace(-3, 3, 121)
        for x in xs:
            for y in xs:
                d = arr.signed_distances(np.array([x, y]))
                if np.min(np.abs(d)) < 1e-9:
                    continue
                mask = 0
                for i in np.nonzero(d > 0)[0]:
                    mask |= 1 << int(i)
                out, _ = forward(net, [x, y])
                assert out[0] == int(mask in compiled.selections[0])

    def test_single_layer_network(self):
        net = StepNetwork(2, (Layer(np.array([[1.0, 0.0]]), np.array([0.0])),))
        compiled = compile(net)
        assert compiled.height == 0
        assert compiled.selections[0].selected == {label_from_indices([1])}
        assert compiled.layer_selections == ()

    def test_unreachable_threshold_selects_everything(self):
        rng = np.random.default_rng(0)
        net = StepNetwork(2, (
            Layer(rng.standard_normal((3, 2)), rng.standard_normal(3)),
            Layer(np.abs(rng.standard_normal((1, 3))), np.array([1e6])),
        ))
        compiled = compile(net)
        assert compiled.selections[0].selected == frozenset(
            r.label for r in compiled.regions
        )

    def test_selections_only_mention_real_regions(self):
        rng = np.random.default_rng(33)
        for _ in range(5):
            net = random_network(rng)
            compiled = compile(net)
            labels = set(compiled.labels)
            for sel in compiled.selections:
                assert sel.selected <= labels
            for layer in compiled.layer_selections:
                for sel in layer:
                    assert sel.selected <= labels
            assert len(compiled.selections) == net.output_dim

    def test_hidden_layer_selections_cover_layers_two_through_h(self):
        compiled = compile(merger_fixture())
        assert len(compiled.layer_selections) == 1
        node_a, node_b = compiled.layer_selections[0]
        assert node_a.selected == {
            label_from_indices([1]), label_from_indices([1, 2])
        }
        assert node_b.selected == {label_from_indices([1, 2])}


class TestCompileSymbolic:
    def test_xor_matches_compile(self):
        net = xor_network()
        compiled = compile(net)
        symbolic = compile_symbolic(net, compiled.regions)
        assert selections_as_sets(symbolic) == selections_as_sets(compiled.selections)

    def test_single_layer_is_first_layer_bits(self):
        net = StepNetwork(2, (Layer(np.array([[1.0, 0.0]]), np.array([0.0])),))
        compiled = compile(net)
        symbolic = compile_symbolic(net, compiled.regions)
        assert symbolic[0].selected == {label_from_indices([1])}

    def test_random_networks_agree(self):
        rng = np.random.default_rng(101)
        for _ in range(10):
            net = random_network(rng, min_layers=3)
            compiled = compile(net)
            symbolic = compile_symbolic(net, compiled.regions)
            assert selections_as_sets(symbolic) == selections_as_sets(
                compiled.selections
            )


class TestInseparablePairs:
    def test_fixture_pair(self):
        pairs = inseparable_pairs(compile(merger_fixture()))
        assert pairs == ((0, label_from_indices([2])),)

    def test_all_distinct_signatures_give_nothing(self):
        net = StepNetwork(2, (
            Layer(np.array([[1.0, 0.0], [0.0, 1.0]]), np.array([0.0, 0.0])),
            Layer(np.array([[1.0, 0.0], [0.0, 1.0]]), np.array([-0.5, -0.5])),
            Layer(np.array([[1.0, 1.0]]), np.array([-0.5])),
        ))
        assert inseparable_pairs(compile(net)) == ()

    def test_constant_penultimate_node_merges_all(self):
        net = StepNetwork(2, (
            Layer(np.array([[1.0, 0.0], [0.0, 1.0]]), np.array([0.0, 0.0])),
            Layer(np.array([[0.0, 0.0]]), np.array([1.0])),
            Layer(np.array([[1.0]]), np.array([-0.5])),
        ))
        pairs = inseparable_pairs(compile(net))
        assert len(pairs) == 6  # all pairs of the 4 quadrants

    def test_height_one_never_merges(self):
        assert inseparable_pairs(compile(xor_network())) == ()

    def test_height_zero_rejected(self):
        net = StepNetwork(2, (Layer(np.array([[1.0, 0.0]]), np.array([0.0])),))
        with pytest.raises(ValueError):
            inseparable_pairs(compile(net))

    def test_reported_pairs_resist_any_final_layer(self):
        rng = np.random.default_rng(55)
        found = 0
        for _ in range(8):
            net = random_network(rng, min_layers=3)
            compiled = compile(net)
            pairs = inseparable_pairs(compiled)
            witness = {r.label: r.witness for r in compiled.regions}
            fan = net.layers[-1].fan_in
            for a, b in pairs:
                found += 1
                for _ in range(20):
                    final = Layer(rng.standard_normal((1, fan)),
                                  rng.standard_normal(1))
                    swapped = StepNetwork(net.input_dim, net.layers[:-1] + (final,))
                    assert (forward(swapped, witness[a])[0]
                            == forward(swapped, witness[b])[0])
        assert found > 0


class TestVerify:
    def test_xor_clean(self):
        net = xor_network()
        report = verify(net, compile(net), samples=100000, margin=1e-6, seed=7)
        assert report.samples == 100000
        assert report.mismatches == ()
        assert report.ok

    def test_single_node_clean(self):
        net = StepNetwork(2, (Layer(np.array([[1.0, 0.0]]), np.array([0.0])),))
        report = verify(net, compile(net), samples=5000, seed=1)
        assert report.ok

    def test_corrupted_selection_is_caught(self):
        net = xor_network()
        compiled = compile(net)
        flipped = set(compiled.selections[0].selected)
        flipped.symmetric_difference_update({label_from_indices([1])})
        corrupted = CompiledNetwork(
            arrangement=compiled.arrangement,
            regions=compiled.regions,
            selections=(Selection(2, frozenset(flipped)),),
            layer_selections=compiled.layer_selections,
            height=compiled.height,
        )
        report = verify(net, corrupted, samples=20000, margin=1e-6, seed=3)
        assert len(report.mismatches) > 0
        assert not report.ok
        bad = report.mismatches[0]
        assert bad.expected != bad.got

    def test_deterministic_given_seed(self):
        net = merger_fixture()
        compiled = compile(net)
        one = verify(net, compiled, samples=5000, seed=42)
        two = verify(net, compiled, samples=5000, seed=42)
        assert one.discarded == two.discarded
        assert one.mismatches == two.mismatches

    def test_margin_discards_near_plane_points(self):
        net = xor_network()
        compiled = compile(net)
        wide = verify(net, compiled, samples=20000, margin=0.5, seed=0)
        assert wide.discarded > 0
        assert wide.ok


class TestMonotoneFinalLayer:
    def test_lowering_the_threshold_grows_the_selection(self):
        # Nonnegative output weights: weight sums are monotone, so easing
        # the firing threshold can only add regions.
        rng = np.random.default_rng(71)
        for _ in range(5):
            first = Layer(rng.standard_normal((4, 2)), rng.standard_normal(4))
            weights = np.abs(rng.standard_normal((1, 4)))
            thresholds = sorted(rng.uniform(0.0, 3.0, size=3), reverse=True)
            previous = None
            for th in thresholds:
                net = StepNetwork(2, (first, Layer(weights, np.array([-th]))))
                sel = compile(net).selections[0].selected
                if previous is not None:
                    assert previous <= sel
                previous = sel
