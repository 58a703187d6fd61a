"""Polarized hyperplane arrangements and their regions.

A hyperplane is a normal vector v plus a scalar offset b; its positive
side is the open half-space {x : v.x + b > 0}. An arrangement is an
ordered list of such hyperplanes in a common ambient dimension, indexed
1..k. Every region (connected component of the complement) is labeled by
the set of indices whose positive side contains it, encoded as a bitmask
with bit i-1 standing for index i. The cap k <= 63 keeps every label in
one machine word.

All geometric predicates run on unit-normalized rows, so tolerances are
Euclidean distances and every operation is invariant under positive
rescaling of any (normal, offset) pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .lp import max_margin_point

DEFAULT_TOL = 1e-9
DEFAULT_MARGIN = 1e-7
DEFAULT_BOX = 1e6
MAX_HYPERPLANES = 63

_MIN_NORMAL = 1e-12

Label = int  # bitmask over 1-based hyperplane indices; bit i-1 <=> i in J


class BoundaryPointError(ValueError):
    """A query point sits within tolerance of a hyperplane."""

    def __init__(self, hyperplane, distance):
        self.hyperplane = hyperplane
        self.distance = distance
        super().__init__(
            f"point lies on hyperplane {hyperplane} "
            f"(|signed distance| = {abs(distance):.3e})"
        )


class DegenerateArrangementError(RuntimeError):
    """No witness of the requested margin exists for a known region."""


def label_from_indices(indices, k=None):
    """Bitmask for a collection of 1-based hyperplane indices."""
    mask = 0
    for i in indices:
        i = int(i)
        if i < 1 or (k is not None and i > k):
            raise ValueError(f"hyperplane index {i} out of range")
        mask |= 1 << (i - 1)
    return mask


def label_indices(label):
    """Sorted tuple of 1-based indices present in a label bitmask."""
    out = []
    i = 1
    mask = label
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def label_text(label):
    if label == 0:
        return "∅"
    return "{" + ",".join(str(i) for i in label_indices(label)) + "}"


def label_sort_key(label):
    """Lexicographic order on the sorted index tuples (empty set first)."""
    return label_indices(label)


@dataclass(frozen=True, eq=False)
class Hyperplane:
    """An affine hyperplane with a chosen positive side {x : v.x + b > 0}."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        v = np.array(self.normal, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("hyperplane normal must be a nonempty vector")
        if not np.all(np.isfinite(v)) or not math.isfinite(float(self.offset)):
            raise ValueError("hyperplane data must be finite")
        norm = float(np.linalg.norm(v))
        if norm <= _MIN_NORMAL:
            raise ValueError("hyperplane normal is numerically zero")
        v.setflags(write=False)
        object.__setattr__(self, "normal", v)
        object.__setattr__(self, "offset", float(self.offset))
        object.__setattr__(self, "_norm", norm)

    @property
    def dimension(self):
        return self.normal.size

    def signed_distance(self, x):
        """Euclidean signed distance of x to the plane (positive side > 0)."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise ValueError(
                f"point has dimension {x.size}, hyperplane has {self.dimension}"
            )
        return (float(self.normal @ x) + self.offset) / self._norm


@dataclass(frozen=True, eq=False)
class Arrangement:
    """An ordered, polarized collection of hyperplanes in R^n."""

    dimension: int
    hyperplanes: tuple

    def __post_init__(self):
        planes = tuple(self.hyperplanes)
        n = int(self.dimension)
        if n < 1:
            raise ValueError("ambient dimension must be positive")
        if len(planes) > MAX_HYPERPLANES:
            raise ValueError(f"at most {MAX_HYPERPLANES} hyperplanes supported")
        for h in planes:
            if not isinstance(h, Hyperplane):
                raise TypeError("hyperplanes must be Hyperplane instances")
            if h.dimension != n:
                raise ValueError(
                    f"hyperplane of dimension {h.dimension} in a "
                    f"{n}-dimensional arrangement"
                )
        object.__setattr__(self, "dimension", n)
        object.__setattr__(self, "hyperplanes", planes)
        if planes:
            v = np.vstack([h.normal for h in planes])
            b = np.array([h.offset for h in planes])
            norms = np.linalg.norm(v, axis=1)
            vu = v / norms[:, None]
            bu = b / norms
        else:
            vu = np.zeros((0, n))
            bu = np.zeros(0)
        vu.setflags(write=False)
        bu.setflags(write=False)
        object.__setattr__(self, "_unit_normals", vu)
        object.__setattr__(self, "_unit_offsets", bu)

    @property
    def k(self):
        return len(self.hyperplanes)

    @property
    def unit_normals(self):
        return self._unit_normals

    @property
    def unit_offsets(self):
        return self._unit_offsets

    def signed_distances(self, x):
        """Vector of Euclidean signed distances of x to every hyperplane."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise ValueError(
                f"point has dimension {x.size}, arrangement has {self.dimension}"
            )
        return self._unit_normals @ x + self._unit_offsets

    def distance_matrix(self, points):
        """Signed distances for a batch of points, shape (m, k)."""
        pts = np.asarray(points, dtype=float)
        return pts @ self._unit_normals.T + self._unit_offsets


@dataclass(frozen=True, eq=False)
class Region:
    """A nonempty region identified by its label and an interior witness."""

    label: Label
    witness: np.ndarray

    def __post_init__(self):
        w = np.array(self.witness, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "witness", w)
        object.__setattr__(self, "label", int(self.label))

    @property
    def indices(self):
        return label_indices(self.label)


@dataclass(frozen=True)
class IntersectionPoset:
    """Subsets of hyperplane indices with nonempty common intersection.

    Elements are label bitmasks ordered by set inclusion; the empty set is
    always present (the empty intersection is all of R^n).
    """

    k: int
    elements: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(int(e) for e in self.elements))
        if 0 not in self.elements:
            raise ValueError("intersection poset must contain the empty set")

    def sorted_elements(self):
        return sorted(self.elements, key=label_sort_key)


def side(h, x, tol=DEFAULT_TOL):
    """Which side of hyperplane h the point x is on: +1, -1 or 0 (boundary)."""
    d = h.signed_distance(x)
    if d > tol:
        return 1
    if d < -tol:
        return -1
    return 0


def region_signature(arrangement, x, tol=DEFAULT_TOL):
    """Label of the region containing x.

    Raises BoundaryPointError (naming the 1-based hyperplane index) if x is
    within tol of any hyperplane, since the signature is undefined there.
    """
    d = arrangement.signed_distances(x)
    near = np.nonzero(np.abs(d) <= tol)[0]
    if near.size:
        i = int(near[0])
        raise BoundaryPointError(i + 1, float(d[i]))
    mask = 0
    for i in np.nonzero(d > 0)[0]:
        mask |= 1 << int(i)
    return mask


def max_region_count(k, n):
    """Largest possible number of regions for k hyperplanes in R^n."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    return sum(math.comb(k, j) for j in range(min(k, n) + 1))


def _signs_from_label(label, count):
    bits = (label >> np.arange(count)) & 1
    return np.where(bits == 1, 1.0, -1.0)


def enumerate_regions(arrangement, tol=DEFAULT_TOL, box=DEFAULT_BOX,
                      margin=DEFAULT_MARGIN):
    """All nonempty regions of the arrangement inside ``[-box, box]^n``.

    Hyperplanes are inserted one at a time. Each tracked region either
    keeps its witness on one side of the new plane (certified directly by
    the witness margin) or is probed on the remaining side with a
    max-margin feasibility program; a side survives when some point clears
    ``margin`` Euclidean distance from every inserted hyperplane. A final
    pass re-centers every witness at the deepest point of its region.

    Regions whose deepest point is shallower than ``margin`` are treated
    as empty. If an already-certified region loses both sides of a new
    hyperplane, the arrangement is numerically degenerate at this margin
    and DegenerateArrangementError is raised.

    The result is sorted by label (lexicographic on index tuples) and the
    whole computation is a pure function of its arguments.
    """
    if box <= 0:
        raise ValueError("box must be positive")
    if margin <= 0:
        raise ValueError("margin must be positive")
    n = arrangement.dimension
    k = arrangement.k
    if k == 0:
        return (Region(0, np.zeros(n)),)

    vu = arrangement.unit_normals
    bu = arrangement.unit_offsets

    cells = [(0, np.zeros(n))]
    for i in range(k):
        rows = vu[: i + 1]
        offs = bu[: i + 1]
        new_cells = []
        for mask, w in cells:
            d = float(vu[i] @ w + bu[i])
            pending = []
            accepted = False
            if d >= margin:
                new_cells.append((mask | (1 << i), w))
                accepted = True
                pending.append(mask)
            elif d <= -margin:
                new_cells.append((mask, w))
                accepted = True
                pending.append(mask | (1 << i))
            else:
                pending.extend((mask | (1 << i), mask))
            for cand in pending:
                m, x = max_margin_point(rows, offs, _signs_from_label(cand, i + 1), box)
                if m >= margin:
                    new_cells.append((cand, x))
                    accepted = True
            if not accepted:
                raise DegenerateArrangementError(
                    f"no witness with margin {margin:g} on either side of "
                    f"hyperplane {i + 1}; arrangement is degenerate at this "
                    f"tolerance"
                )
        cells = new_cells

    regions = []
    for mask, w in cells:
        signs = _signs_from_label(mask, k)
        m, x = max_margin_point(vu, bu, signs, box)
        # Keep whichever witness is actually deeper; the recomputed margin
        # is measured directly against the hyperplanes.
        if m < float(np.min(signs * (vu @ w + bu))):
            x = w
        regions.append(Region(mask, x))
    regions.sort(key=lambda r: label_sort_key(r.label))
    return tuple(regions)


def _affine_residual(vu, bu, subset_indices):
    """Distance-like residual of the system {v_i.x + b_i = 0, i in subset}."""
    v = vu[subset_indices]
    b = bu[subset_indices]
    sol, *_ = np.linalg.lstsq(v, -b, rcond=None)
    return float(np.linalg.norm(v @ sol + b))


def is_general_position(arrangement, tol=DEFAULT_TOL):
    """Whether small perturbations cannot change the region count.

    Checks, with tolerance tol on unit-normalized data, that every subset
    of p <= n hyperplanes meets in an affine subspace of codimension p
    (full-rank normals, consistent system) and that no n+1 hyperplanes
    share a point.
    """
    n = arrangement.dimension
    k = arrangement.k
    vu = arrangement.unit_normals
    bu = arrangement.unit_offsets
    for p in range(2, min(k, n) + 1):
        for subset in combinations(range(k), p):
            sv = np.linalg.svd(vu[list(subset)], compute_uv=False)
            if sv[-1] <= tol:
                return False
            if _affine_residual(vu, bu, list(subset)) >= tol:
                return False
    if k >= n + 1:
        for subset in combinations(range(k), n + 1):
            if _affine_residual(vu, bu, list(subset)) < tol:
                return False
    return True


def intersection_poset(arrangement, tol=DEFAULT_TOL):
    """Poset of index subsets whose hyperplanes have a common point.

    Feasibility of a subset is decided by least squares on the affine
    system (residual below tol). Subset feasibility is downward closed,
    so candidates are grown level by level from feasible sets one smaller.
    """
    k = arrangement.k
    vu = arrangement.unit_normals
    bu = arrangement.unit_offsets
    elements = {0}
    current = [0]
    for size in range(1, k + 1):
        prev = set(current)
        candidates = set()
        for mask in prev:
            for i in range(k):
                bit = 1 << i
                if mask & bit:
                    continue
                cand = mask | bit
                if cand in candidates:
                    continue
                # Every one-smaller subset must already be feasible.
                if all((cand & ~(1 << j)) in prev
                       for j in range(k) if cand & (1 << j)):
                    candidates.add(cand)
        current = []
        for cand in candidates:
            idx = [i for i in range(k) if cand & (1 << i)]
            if size == 1 or _affine_residual(vu, bu, idx) < tol:
                current.append(cand)
        elements.update(current)
        if not current:
            break
    return IntersectionPoset(k, frozenset(elements))


def hasse_edges(poset):
    """Cover pairs (x, y) of the poset: x < y with nothing strictly between.

    Pairs come back as label bitmasks, sorted lexicographically on the
    (x indices, y indices) tuples.
    """
    elements = poset.elements
    edges = []
    for x in elements:
        for y in elements:
            if x == y or (x & y) != x:
                continue
            diff = y & ~x
            strict_between = False
            sub = (diff - 1) & diff
            while sub:
                if (x | sub) in elements:
                    strict_between = True
                    break
                sub = (sub - 1) & diff
            if not strict_between:
                edges.append((x, y))
    edges.sort(key=lambda e: (label_sort_key(e[0]), label_sort_key(e[1])))
    return tuple(edges)
