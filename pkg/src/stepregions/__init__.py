"""Exact region semantics of step-activation feed-forward networks.

A step network's first layer cuts the input space into the regions of a
polarized hyperplane arrangement; every deeper layer only combines the
resulting bits, so each output is the indicator of a union of regions.
This package enumerates those regions with certified interior witnesses,
compiles networks into explicit per-output region selections by two
independent routes, and verifies the compilation against the network.
"""

from .compiler import (
    CompiledNetwork,
    Mismatch,
    VerifyReport,
    compile,
    compile_symbolic,
    inseparable_pairs,
    verify,
)
from .geometry import (
    Arrangement,
    BoundaryPointError,
    DegenerateArrangementError,
    Hyperplane,
    IntersectionPoset,
    Region,
    enumerate_regions,
    hasse_edges,
    intersection_poset,
    is_general_position,
    label_from_indices,
    label_indices,
    max_region_count,
    region_signature,
    side,
)
from .network import (
    Layer,
    NetworkFormatError,
    StepNetwork,
    first_layer_arrangement,
    forward,
    parse_network,
    step,
)
from .selection import (
    NormalizedWeightedUnion,
    Selection,
    WeightedUnion,
    eval_weighted_union,
    make_complement,
    make_intersection,
    make_union,
    normalize,
    repolarize,
    selected_indices,
    selection_complement,
    selection_intersection,
    selection_union,
    sigma,
)
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "BoundaryPointError",
    "CompiledNetwork",
    "DegenerateArrangementError",
    "Hyperplane",
    "IntersectionPoset",
    "Layer",
    "Mismatch",
    "NetworkFormatError",
    "NormalizedWeightedUnion",
    "Region",
    "Selection",
    "StepNetwork",
    "VerifyReport",
    "WeightedUnion",
    "compile",
    "compile_symbolic",
    "enumerate_regions",
    "eval_weighted_union",
    "first_layer_arrangement",
    "forward",
    "hasse_edges",
    "inseparable_pairs",
    "intersection_poset",
    "is_general_position",
    "label_from_indices",
    "label_indices",
    "make_complement",
    "make_intersection",
    "make_union",
    "max_region_count",
    "normalize",
    "parse_network",
    "region_signature",
    "render_svg",
    "repolarize",
    "selected_indices",
    "selection_complement",
    "selection_intersection",
    "selection_union",
    "sigma",
    "side",
    "step",
    "verify",
]
