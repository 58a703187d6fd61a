"""Weighted unions of indexed set families and selections of regions.

A weighted union with weights a_i and offset b is the set where
sum_i a_i * [x in U_i] - b > 0. Every node past the first layer of a step
network computes one. Such a node can always be rewritten as a plain
union of cells of the family {U_i}: normalize the weights to be
nonnegative (flipping each negative-weight set to its complement and
absorbing the weight into the offset), read off the subsets J whose
weight sum exceeds the adjusted offset, then repolarize those subsets
back to the standard indexing. Selections are the resulting label sets.

Labels reuse the bitmask convention of the geometry module: bit i-1 set
means index i is in the subset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import label_sort_key

POWER_SET_LIMIT = 20


@dataclass(frozen=True, eq=False)
class WeightedUnion:
    """Weights a_i over an indexed family plus a scalar offset b."""

    weights: np.ndarray
    offset: float

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a nonempty vector")
        if not (np.all(np.isfinite(w)) and math.isfinite(float(self.offset))):
            raise ValueError("weighted union data must be finite")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def size(self):
        return self.weights.size


@dataclass(frozen=True, eq=False)
class NormalizedWeightedUnion:
    """Sign-normalized form: nonnegative weights, adjusted offset, polarity.

    polarity[i] is '-' exactly where the original weight was negative;
    those indices now refer to the complemented set.
    """

    weights: np.ndarray
    adjusted_offset: float
    polarity: tuple

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if np.any(w < 0):
            raise ValueError("normalized weights must be nonnegative")
        if len(self.polarity) != w.size or any(p not in "+-" for p in self.polarity):
            raise ValueError("polarity must assign '+' or '-' per index")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "adjusted_offset", float(self.adjusted_offset))
        object.__setattr__(self, "polarity", tuple(self.polarity))

    @property
    def size(self):
        return self.weights.size

    @property
    def negative_mask(self):
        mask = 0
        for i, p in enumerate(self.polarity):
            if p == "-":
                mask |= 1 << i
        return mask


@dataclass(frozen=True)
class Selection:
    """A set of region labels over a universe of |I| indices."""

    universe_size: int
    selected: frozenset

    def __post_init__(self):
        k = int(self.universe_size)
        if k < 0:
            raise ValueError("universe size must be nonnegative")
        labels = frozenset(int(j) for j in self.selected)
        full = (1 << k) - 1
        for j in labels:
            if j < 0 or j & ~full:
                raise ValueError(f"label {j:#x} outside universe of size {k}")
        object.__setattr__(self, "universe_size", k)
        object.__setattr__(self, "selected", labels)

    def sorted_labels(self):
        return sorted(self.selected, key=label_sort_key)

    def __contains__(self, label):
        return int(label) in self.selected


def eval_weighted_union(wu, membership):
    """Bit of the weighted union on a membership pattern over the family."""
    m = np.asarray(membership, dtype=float)
    if m.shape != (wu.size,):
        raise ValueError(
            f"membership pattern has length {m.size}, expected {wu.size}"
        )
    return 1 if float(wu.weights @ m) - wu.offset > 0.0 else 0


def normalize(wu):
    """Sign-normalized equivalent of a weighted union.

    Flipping index i (negative weight) replaces a_i * [x in U_i] with
    |a_i| * [x in complement(U_i)] + a_i, so the offset adjusts to
    b - sum of the negative weights. Semantics are preserved: evaluating
    the original on pattern m equals evaluating the normalized form on m
    with the '-' positions flipped.
    """
    negative = wu.weights < 0
    adjusted = wu.offset - float(wu.weights[negative].sum())
    polarity = tuple("-" if neg else "+" for neg in negative)
    return NormalizedWeightedUnion(np.abs(wu.weights), adjusted, polarity)


def sigma(nwu, subset):
    """Sum of normalized weights over a subset (given as a label bitmask)."""
    subset = int(subset)
    if subset < 0 or subset >> nwu.size:
        raise ValueError(f"subset {subset:#x} outside universe of size {nwu.size}")
    total = 0.0
    i = 0
    while subset:
        if subset & 1:
            total += float(nwu.weights[i])
        subset >>= 1
        i += 1
    return total


def repolarize(polarity, label):
    """Flip membership of a label exactly at the '-' indices.

    An involution on subsets: applying it twice gives the label back.
    """
    label = int(label)
    if label < 0:
        raise ValueError("label bitmask must be nonnegative")
    mask = 0
    for i, p in enumerate(polarity):
        if p == "-":
            mask |= 1 << i
        elif p != "+":
            raise ValueError("polarity entries must be '+' or '-'")
    return label ^ mask


def selected_indices(wu):
    """The selection a weighted union carves out of the cells U_J.

    Enumerates the whole power set: normalize, keep the subsets whose
    weight sum strictly exceeds the adjusted offset, then repolarize into
    the standard indexing. A point with standard membership pattern J is
    inside the weighted union exactly when J is in this selection.
    """
    m = wu.size
    if m > POWER_SET_LIMIT:
        raise ValueError(
            f"power-set enumeration capped at {POWER_SET_LIMIT} indices, got {m}"
        )
    nwu = normalize(wu)
    sums = np.zeros(1)
    for w in nwu.weights:
        sums = np.concatenate([sums, sums + w])
    picked = np.nonzero(sums > nwu.adjusted_offset)[0]
    neg = nwu.negative_mask
    return Selection(m, frozenset(int(j) ^ neg for j in picked))


def make_complement():
    """Weighted union computing the complement of a single set."""
    return WeightedUnion(np.array([-1.0]), -0.5)


def make_union(n):
    """Weighted union computing the union of n sets."""
    if n < 1:
        raise ValueError("need at least one set")
    return WeightedUnion(np.ones(n), 0.5)


def make_intersection(n):
    """Weighted union computing the intersection of n sets."""
    if n < 1:
        raise ValueError("need at least one set")
    return WeightedUnion(np.ones(n), n - 0.5)


def _require_same_universe(s, t):
    if s.universe_size != t.universe_size:
        raise ValueError(
            f"selections over different universes "
            f"({s.universe_size} vs {t.universe_size})"
        )


def selection_union(s, t):
    _require_same_universe(s, t)
    return Selection(s.universe_size, s.selected | t.selected)


def selection_intersection(s, t):
    _require_same_universe(s, t)
    return Selection(s.universe_size, s.selected & t.selected)


def selection_complement(s, universe):
    """Complement of a selection within a universe of nontrivial labels."""
    labels = frozenset(int(j) for j in universe)
    if not s.selected <= labels:
        raise ValueError("selection is not contained in the given universe")
    return Selection(s.universe_size, labels - s.selected)
