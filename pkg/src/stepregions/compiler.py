"""Compilation of step networks into explicit region selections.

The first layer of a step network fixes a polarized hyperplane
arrangement; every deeper node is constant on each region, so the whole
network reduces to one selection of region labels per output. Two
independent constructions are provided. ``compile`` evaluates the network
once per region at the region's witness point. ``compile_symbolic`` never
touches coordinates again after region labels exist: it treats every
later node as a weighted union over the previous layer's bits and
propagates per-region bit vectors. The two must agree, and ``verify``
checks the compiled object against the network by random sampling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import (
    DEFAULT_BOX,
    DEFAULT_MARGIN,
    DEFAULT_TOL,
    enumerate_regions,
    label_sort_key,
)
from .network import first_layer_arrangement, forward, forward_batch
from .selection import Selection, WeightedUnion, eval_weighted_union

DEFAULT_SAMPLE_BOX = 10.0


@dataclass(frozen=True, eq=False)
class CompiledNetwork:
    """An arrangement, its regions, and the network's label selections.

    ``selections`` has one entry per output. ``layer_selections`` covers
    the hidden selection layers (layers 2..h), one Selection per node,
    recording where that node outputs 1. ``height`` is the hidden-layer
    count of the source network.
    """

    arrangement: object
    regions: tuple
    selections: tuple
    layer_selections: tuple
    height: int

    @property
    def labels(self):
        return tuple(r.label for r in self.regions)


@dataclass(frozen=True, eq=False)
class Mismatch:
    point: tuple
    expected: tuple
    got: tuple


@dataclass(frozen=True, eq=False)
class VerifyReport:
    """Outcome of sampling-based verification of a compiled network."""

    samples: int
    discarded: int
    mismatches: tuple

    @property
    def ok(self):
        return not self.mismatches


def compile(network, tol=DEFAULT_TOL, box=DEFAULT_BOX, margin=DEFAULT_MARGIN):
    """Compile a step network into its arrangement and selections.

    Enumerates the nonempty regions of the first-layer arrangement, then
    evaluates the network at each region's witness; the network is
    constant on every region, so one witness decides membership of that
    region's label in each output's selection (and in each hidden
    selection-layer node's selection).
    """
    arrangement = first_layer_arrangement(network)
    regions = enumerate_regions(arrangement, tol=tol, box=box, margin=margin)
    k = arrangement.k
    height = network.height

    per_region = []
    for region in regions:
        _, activations = forward(network, region.witness)
        first_bits = 0
        for i, bit in enumerate(activations[0]):
            if bit:
                first_bits |= 1 << i
        if first_bits != region.label:
            raise AssertionError(
                f"witness of region {region.indices} disagrees with the "
                f"first layer; geometry and network are numerically "
                f"inconsistent"
            )
        per_region.append(activations)

    def layer_node_selection(layer_idx, node):
        chosen = frozenset(
            region.label
            for region, acts in zip(regions, per_region)
            if acts[layer_idx][node]
        )
        return Selection(k, chosen)

    selections = tuple(
        layer_node_selection(len(network.layers) - 1, o)
        for o in range(network.output_dim)
    )
    layer_selections = tuple(
        tuple(layer_node_selection(li, node)
              for node in range(network.layers[li].width))
        for li in range(1, height)
    )
    return CompiledNetwork(arrangement, regions, selections, layer_selections, height)


def compile_symbolic(network, regions):
    """Selections derived purely from region labels, no witness evaluation.

    Layer-1 node i contributes bit [i in label] per region; each deeper
    node is the weighted union of its weight row (offset negated, since a
    node fires when w.m + c > 0) applied to the previous layer's bits.
    Returns the final layer's selections, one per output.
    """
    k = network.layers[0].width
    bits = [
        np.array([(region.label >> i) & 1 for i in range(k)], dtype=float)
        for region in regions
    ]
    for layer in network.layers[1:]:
        unions = [
            WeightedUnion(layer.weights[node], -float(layer.offsets[node]))
            for node in range(layer.width)
        ]
        bits = [
            np.array([eval_weighted_union(u, pattern) for u in unions], dtype=float)
            for pattern in bits
        ]
    return tuple(
        Selection(
            k,
            frozenset(
                region.label
                for region, pattern in zip(regions, bits)
                if pattern[o]
            ),
        )
        for o in range(network.layers[-1].width)
    )


def _penultimate_signatures(compiled):
    if compiled.height == 1:
        # The layer feeding the output is the hyperplane layer itself, so a
        # region's signature is its own label.
        k = compiled.arrangement.k
        return {
            label: tuple((label >> i) & 1 for i in range(k))
            for label in compiled.labels
        }
    nodes = compiled.layer_selections[-1]
    return {
        label: tuple(int(label in sel.selected) for sel in nodes)
        for label in compiled.labels
    }


def inseparable_pairs(compiled):
    """Region-label pairs no output layer could ever tell apart.

    Two regions whose bit signatures across the last hidden layer coincide
    receive identical input at the output layer, for any choice of output
    weights. Pairs are unordered, canonically sorted.
    """
    if compiled.height < 1:
        raise ValueError("inseparable pairs need a network of height >= 1")
    signatures = _penultimate_signatures(compiled)
    groups = {}
    for label, sig in signatures.items():
        groups.setdefault(sig, []).append(label)
    pairs = []
    for members in groups.values():
        members.sort(key=label_sort_key)
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                pairs.append((members[i], members[j]))
    pairs.sort(key=lambda p: (label_sort_key(p[0]), label_sort_key(p[1])))
    return tuple(pairs)


def verify(network, compiled, samples=10000, margin=1e-6, seed=0,
           sample_box=DEFAULT_SAMPLE_BOX):
    """Check the compiled selections against the network by sampling.

    Draws uniform points in ``[-sample_box, sample_box]^n``, discards any
    within ``margin`` (Euclidean) of a first-layer hyperplane, and for the
    rest compares the network's output bits with membership of the point's
    region label in each output selection. Mismatches are reported, not
    raised. Fixed seed means a reproducible report.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    arrangement = compiled.arrangement
    n = arrangement.dimension
    k = arrangement.k
    rng = np.random.default_rng(seed)
    points = rng.uniform(-sample_box, sample_box, size=(samples, n))

    dist = arrangement.distance_matrix(points)
    keep = np.all(np.abs(dist) >= margin, axis=1) if k else np.ones(samples, bool)
    kept_points = points[keep]
    discarded = samples - int(kept_points.shape[0])
    if kept_points.shape[0] == 0:
        return VerifyReport(samples, discarded, ())

    weights = (1 << np.arange(k, dtype=np.int64)) if k else np.zeros(0, np.int64)
    labels = (dist[keep] > 0) @ weights if k else np.zeros(kept_points.shape[0], np.int64)

    got_bits = forward_batch(network, kept_points)[-1]
    expected = np.zeros_like(got_bits)
    for o, sel in enumerate(compiled.selections):
        chosen = np.fromiter(sel.selected, dtype=np.int64, count=len(sel.selected))
        expected[:, o] = np.isin(labels, chosen)

    bad = np.nonzero(np.any(expected != got_bits, axis=1))[0]
    mismatches = tuple(
        Mismatch(
            point=tuple(float(v) for v in kept_points[i]),
            expected=tuple(int(v) for v in expected[i]),
            got=tuple(int(v) for v in got_bits[i]),
        )
        for i in bad
    )
    return VerifyReport(samples, discarded, mismatches)
