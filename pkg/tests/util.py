"""Shared fixtures and independent oracles used across the test modules."""

import numpy as np

from stepregions import Arrangement, Hyperplane, Layer, StepNetwork


def xor_network():
    """Two parallel first-layer planes plus a difference node: XOR on bits."""
    return StepNetwork(2, (
        Layer(np.array([[1.0, 1.0], [1.0, 1.0]]), np.array([-0.5, -1.5])),
        Layer(np.array([[1.0, -1.0]]), np.array([-0.5])),
    ))


def axes_arrangement():
    return Arrangement(2, (Hyperplane([1.0, 0.0], 0.0), Hyperplane([0.0, 1.0], 0.0)))


def parallel_lines():
    """Two horizontal lines y = 0 and y = 1, both polarized upward."""
    return Arrangement(2, (Hyperplane([0.0, 1.0], 0.0), Hyperplane([0.0, 1.0], -1.0)))


def random_arrangement(rng, k, n):
    planes = tuple(
        Hyperplane(rng.standard_normal(n), float(rng.standard_normal()))
        for _ in range(k)
    )
    return Arrangement(n, planes)


def random_network(rng, n_choices=(2, 3, 4), k_range=(2, 8), max_layers=4,
                   hidden_max=6, output_max=2, min_layers=2):
    """Gaussian-weight step network within the given size envelope."""
    n = int(rng.choice(n_choices))
    k1 = int(rng.integers(k_range[0], k_range[1] + 1))
    total = int(rng.integers(min_layers, max_layers + 1))
    widths = [k1]
    for _ in range(total - 2):
        widths.append(int(rng.integers(1, hidden_max + 1)))
    widths.append(int(rng.integers(1, output_max + 1)))
    layers = []
    fan = n
    for w in widths:
        layers.append(Layer(rng.standard_normal((w, fan)), rng.standard_normal(w)))
        fan = w
    return StepNetwork(n, tuple(layers))


def grid_labels(arrangement, extent, steps, guard=1e-9):
    """Region labels hit by a dense grid, computed by raw sign arithmetic.

    Independent of the package's region enumeration: signed values come
    straight from the stored normals and offsets, and grid points within
    ``guard`` (after unit normalization) of any hyperplane are dropped.
    """
    axes = [np.linspace(-extent, extent, steps)] * arrangement.dimension
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    v = np.vstack([h.normal for h in arrangement.hyperplanes])
    b = np.array([h.offset for h in arrangement.hyperplanes])
    norms = np.linalg.norm(v, axis=1)
    d = (pts @ v.T + b) / norms
    ok = np.all(np.abs(d) > guard, axis=1)
    bits = d[ok] > 0
    masks = bits @ (1 << np.arange(arrangement.k, dtype=np.int64))
    return set(int(m) for m in masks)


def labels_of(regions):
    return set(r.label for r in regions)
