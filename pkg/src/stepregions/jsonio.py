"""Deterministic JSON input/output for the package's document formats.

Output is canonical: object keys sorted, compact separators, floats in
the shortest representation that round-trips, capped at 12 significant
digits so reruns and platforms agree byte for byte. Region labels appear
in documents as sorted lists of 1-based hyperplane indices.
"""

from __future__ import annotations

import json
import math

from .geometry import Arrangement, Hyperplane, label_from_indices, label_indices


class DocumentFormatError(ValueError):
    """An input document failed schema validation."""


def format_float(value):
    """Shortest round-trip decimal form, at most 12 significant digits."""
    v = float(value)
    if not math.isfinite(v):
        raise ValueError("non-finite numbers cannot be serialized")
    r = repr(v)
    mantissa = r.split("e")[0].split("E")[0].lstrip("-").replace(".", "").lstrip("0")
    if len(mantissa) <= 12:
        return r
    return f"{v:.12g}"


def canonical_dumps(obj):
    """Serialize to canonical JSON text (no trailing newline)."""
    parts = []
    _write(obj, parts)
    return "".join(parts)


def _write(obj, parts):
    if obj is None:
        parts.append("null")
    elif isinstance(obj, bool):
        parts.append("true" if obj else "false")
    elif isinstance(obj, int):
        parts.append(repr(obj))
    elif isinstance(obj, float):
        parts.append(format_float(obj))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        parts.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise TypeError("JSON object keys must be strings")
            if i:
                parts.append(",")
            parts.append(json.dumps(key, ensure_ascii=False))
            parts.append(":")
            _write(obj[key], parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, item in enumerate(obj):
            if i:
                parts.append(",")
            _write(item, parts)
        parts.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def label_to_list(label):
    return [int(i) for i in label_indices(label)]


def _reject_constant(token):
    raise DocumentFormatError(f"non-finite number {token!r} is not permitted")


def _as_real(value, what):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentFormatError(f"{what} must be a number")
    v = float(value)
    if not math.isfinite(v):
        raise DocumentFormatError(f"{what} must be finite")
    return v


def parse_arrangement(document):
    """Parse an arrangement document.

    Schema: ``{"dimension": n, "hyperplanes": [{"normal": [...],
    "offset": b}, ...]}``; hyperplane indices 1..k follow list order.
    """
    try:
        obj = json.loads(document, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DocumentFormatError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise DocumentFormatError("arrangement document must be a JSON object")
    if "dimension" not in obj or "hyperplanes" not in obj:
        raise DocumentFormatError(
            'arrangement document needs "dimension" and "hyperplanes"'
        )
    dim = obj["dimension"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise DocumentFormatError('"dimension" must be a positive integer')
    raw = obj["hyperplanes"]
    if not isinstance(raw, list):
        raise DocumentFormatError('"hyperplanes" must be a list')
    planes = []
    for i, entry in enumerate(raw):
        where = f"hyperplane {i + 1}"
        if not isinstance(entry, dict) or "normal" not in entry or "offset" not in entry:
            raise DocumentFormatError(f'{where} needs "normal" and "offset"')
        normal = entry["normal"]
        if not isinstance(normal, list) or len(normal) != dim:
            raise DocumentFormatError(f"{where} normal must be a list of length {dim}")
        vec = [_as_real(v, f"{where} normal entry") for v in normal]
        off = _as_real(entry["offset"], f"{where} offset")
        try:
            planes.append(Hyperplane(vec, off))
        except ValueError as exc:
            raise DocumentFormatError(f"{where}: {exc}") from exc
    try:
        return Arrangement(dim, tuple(planes))
    except ValueError as exc:
        raise DocumentFormatError(str(exc)) from exc


def arrangement_to_obj(arrangement):
    return {
        "dimension": arrangement.dimension,
        "hyperplanes": [
            {"normal": [float(v) for v in h.normal], "offset": float(h.offset)}
            for h in arrangement.hyperplanes
        ],
    }


def region_to_obj(region):
    return {
        "label": label_to_list(region.label),
        "witness": [float(v) for v in region.witness],
    }


def regions_to_obj(regions):
    return {"count": len(regions), "regions": [region_to_obj(r) for r in regions]}


def selection_to_obj(sel):
    return {
        "universe": sel.universe_size,
        "selected": [label_to_list(j) for j in sel.sorted_labels()],
    }


def parse_selection(document):
    """Parse a selection document: ``{"universe": k, "selected": [[...], ...]}``."""
    from .selection import Selection

    try:
        obj = json.loads(document, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DocumentFormatError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict) or "universe" not in obj or "selected" not in obj:
        raise DocumentFormatError('selection document needs "universe" and "selected"')
    k = obj["universe"]
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise DocumentFormatError('"universe" must be a nonnegative integer')
    raw = obj["selected"]
    if not isinstance(raw, list):
        raise DocumentFormatError('"selected" must be a list of index lists')
    labels = set()
    for entry in raw:
        if not isinstance(entry, list):
            raise DocumentFormatError("each selected label must be an index list")
        try:
            labels.add(label_from_indices(entry, k))
        except ValueError as exc:
            raise DocumentFormatError(str(exc)) from exc
    return Selection(k, frozenset(labels))


def poset_to_obj(poset, edges):
    return {
        "elements": [label_to_list(e) for e in poset.sorted_elements()],
        "cover_edges": [
            [label_to_list(x), label_to_list(y)] for x, y in edges
        ],
    }


def compiled_to_obj(compiled):
    return {
        "arrangement": arrangement_to_obj(compiled.arrangement),
        "regions": [region_to_obj(r) for r in compiled.regions],
        "selections": [selection_to_obj(s) for s in compiled.selections],
        "layer_selections": [
            [selection_to_obj(s) for s in layer] for layer in compiled.layer_selections
        ],
    }


def report_to_obj(report):
    return {
        "samples": report.samples,
        "discarded": report.discarded,
        "mismatches": [
            {
                "point": [float(v) for v in m.point],
                "expected": [int(v) for v in m.expected],
                "got": [int(v) for v in m.got],
            }
            for m in report.mismatches
        ],
    }


def pairs_to_obj(pairs):
    return {"pairs": [[label_to_list(x), label_to_list(y)] for x, y in pairs]}
