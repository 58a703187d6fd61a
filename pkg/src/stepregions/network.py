"""Step-activation feed-forward classification networks.

A network is a chain of affine layers under the hard step activation: a
node with weight row w and offset c outputs 1 exactly when w.x + c > 0
(the step of zero is 0, matching the strict inequality that defines each
node's active set). The first layer fixes a polarized hyperplane
arrangement; every later layer only ever sees the resulting bits.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .geometry import Arrangement, Hyperplane

_MIN_ROW_NORM = 1e-12


class NetworkFormatError(ValueError):
    """A network document or its shapes failed validation."""


@dataclass(frozen=True, eq=False)
class Layer:
    """One affine layer: weight matrix (nodes x inputs) and per-node offsets."""

    weights: np.ndarray
    offsets: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        b = np.array(self.offsets, dtype=float)
        if w.ndim != 2 or w.shape[0] == 0 or w.shape[1] == 0:
            raise NetworkFormatError("layer weights must be a nonempty matrix")
        if b.shape != (w.shape[0],):
            raise NetworkFormatError(
                f"layer has {w.shape[0]} weight rows but {b.size} offsets"
            )
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
            raise NetworkFormatError("layer data must be finite")
        w.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "offsets", b)

    @property
    def width(self):
        return self.weights.shape[0]

    @property
    def fan_in(self):
        return self.weights.shape[1]


@dataclass(frozen=True, eq=False)
class StepNetwork:
    """A step-edge network: input dimension plus an ordered layer chain."""

    input_dim: int
    layers: tuple

    def __post_init__(self):
        layers = tuple(self.layers)
        n = int(self.input_dim)
        if n < 1:
            raise NetworkFormatError("input dimension must be positive")
        if not layers:
            raise NetworkFormatError("a network needs at least one layer")
        fan = n
        for idx, layer in enumerate(layers):
            if not isinstance(layer, Layer):
                raise TypeError("layers must be Layer instances")
            if layer.fan_in != fan:
                raise NetworkFormatError(
                    f"layer {idx + 1} expects {layer.fan_in} inputs "
                    f"but receives {fan}"
                )
            fan = layer.width
        object.__setattr__(self, "input_dim", n)
        object.__setattr__(self, "layers", layers)

    @property
    def height(self):
        """Number of hidden layers (total layers minus the output layer)."""
        return len(self.layers) - 1

    @property
    def output_dim(self):
        return self.layers[-1].width


def step(t):
    """Hard step edge: 1 on positive input, 0 otherwise (including at 0)."""
    return 1 if t > 0 else 0


def forward(network, x):
    """Evaluate the network at a point.

    Returns ``(output_bits, activations)`` where ``activations`` holds one
    bit tuple per layer, the last of which is ``output_bits``.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (network.input_dim,):
        raise ValueError(
            f"input has dimension {x.size}, network expects {network.input_dim}"
        )
    if not np.all(np.isfinite(x)):
        raise ValueError("input must be finite")
    activations = []
    current = x
    for layer in network.layers:
        z = layer.weights @ current + layer.offsets
        bits = z > 0.0
        activations.append(tuple(int(v) for v in bits))
        current = bits.astype(float)
    return activations[-1], tuple(activations)


def forward_batch(network, points):
    """Per-layer activation bits for a batch of points (one bool matrix each)."""
    current = np.asarray(points, dtype=float)
    if current.ndim != 2 or current.shape[1] != network.input_dim:
        raise ValueError("points must be a (m, input_dim) array")
    out = []
    for layer in network.layers:
        z = current @ layer.weights.T + layer.offsets
        bits = z > 0.0
        out.append(bits)
        current = bits.astype(float)
    return out


def first_layer_arrangement(network):
    """The polarized arrangement cut out by the first layer.

    Node i becomes hyperplane i with normal = its weight row and offset =
    its offset, so the positive side is exactly where the node outputs 1.
    """
    layer = network.layers[0]
    norms = np.linalg.norm(layer.weights, axis=1)
    for j, nm in enumerate(norms):
        if nm <= _MIN_ROW_NORM:
            raise NetworkFormatError(
                f"first-layer node {j + 1} has a zero weight row and "
                f"defines no hyperplane"
            )
    planes = tuple(
        Hyperplane(layer.weights[j], float(layer.offsets[j]))
        for j in range(layer.width)
    )
    return Arrangement(network.input_dim, planes)


def _reject_constant(token):
    raise NetworkFormatError(f"non-finite number {token!r} is not permitted")


def _as_real(value, what):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise NetworkFormatError(f"{what} must be a number")
    v = float(value)
    if not math.isfinite(v):
        raise NetworkFormatError(f"{what} must be finite")
    return v


def parse_network(document):
    """Parse and validate a network document.

    Schema: ``{"inputs": n, "layers": [{"weights": [[...], ...],
    "offsets": [...]}, ...]}`` where ``weights[j]`` is the incoming weight
    row of node j. Malformed JSON, shape mismatches, an empty layer list,
    non-finite numbers and zero first-layer rows each produce a distinct
    NetworkFormatError diagnostic.
    """
    try:
        obj = json.loads(document, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise NetworkFormatError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise NetworkFormatError("network document must be a JSON object")
    if "inputs" not in obj or "layers" not in obj:
        raise NetworkFormatError('network document needs "inputs" and "layers"')
    inputs = obj["inputs"]
    if isinstance(inputs, bool) or not isinstance(inputs, int) or inputs < 1:
        raise NetworkFormatError('"inputs" must be a positive integer')
    raw_layers = obj["layers"]
    if not isinstance(raw_layers, list) or not raw_layers:
        raise NetworkFormatError('"layers" must be a nonempty list')

    layers = []
    for li, entry in enumerate(raw_layers):
        where = f"layer {li + 1}"
        if not isinstance(entry, dict) or "weights" not in entry or "offsets" not in entry:
            raise NetworkFormatError(f'{where} needs "weights" and "offsets"')
        rows = entry["weights"]
        offs = entry["offsets"]
        if not isinstance(rows, list) or not rows:
            raise NetworkFormatError(f"{where} weights must be a nonempty list of rows")
        width = None
        matrix = []
        for ri, row in enumerate(rows):
            if not isinstance(row, list) or not row:
                raise NetworkFormatError(
                    f"{where} weight row {ri + 1} must be a nonempty list"
                )
            vals = [_as_real(v, f"{where} weight") for v in row]
            if width is None:
                width = len(vals)
            elif len(vals) != width:
                raise NetworkFormatError(f"{where} has ragged weight rows")
            matrix.append(vals)
        if not isinstance(offs, list) or len(offs) != len(matrix):
            raise NetworkFormatError(
                f"{where} needs exactly one offset per weight row"
            )
        offsets = [_as_real(v, f"{where} offset") for v in offs]
        layers.append(Layer(np.array(matrix), np.array(offsets)))

    network = StepNetwork(inputs, tuple(layers))
    first = network.layers[0]
    row_norms = np.linalg.norm(first.weights, axis=1)
    for j, nm in enumerate(row_norms):
        if nm <= _MIN_ROW_NORM:
            raise NetworkFormatError(
                f"first-layer node {j + 1} has a zero weight row"
            )
    return network
