"""JSON file formats and DOT export.

Rationals are serialized as strings ("7" or "1/3") to avoid any float loss;
table subsets are decimal bitmask strings with bit g = good g. Instance
files carry either an identical model or one model per agent, and may carry
an optional interval list for interval-graph instances.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .core import (
    Additive,
    Allocation,
    ConflictGraph,
    Instance,
    Negated,
    Restriction,
    Sum,
    Table,
    Uniform,
    ValuationModel,
)
from .graph_classes import IntervalSet


class ParseError(ValueError):
    """Input file does not match the expected schema."""


def rational_to_str(value: Fraction) -> str:
    return str(value)


def rational_from_str(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}") from exc


def model_to_json(model: ValuationModel) -> dict:
    if isinstance(model, Additive):
        return {"type": "additive", "values": [rational_to_str(v) for v in model.values]}
    if isinstance(model, Uniform):
        return {"type": "uniform"}
    if isinstance(model, Table):
        entries = [[str(mask), rational_to_str(model.entries[mask])] for mask in sorted(model.entries)]
        return {"type": "table", "entries": entries}
    if isinstance(model, Negated):
        return {"type": "negated", "inner": model_to_json(model.inner)}
    if isinstance(model, Sum) and len(model.parts) == 2:
        base, tail = model.parts
        if isinstance(base, Restriction) and isinstance(tail, Additive):
            return {
                "type": "composite",
                "baseGoods": base.size,
                "base": model_to_json(base.inner),
                "tail": [rational_to_str(v) for v in tail.values],
            }
    raise ValueError(f"model {type(model).__name__} has no file representation")


def model_from_json(data, m: int) -> ValuationModel:
    if not isinstance(data, dict) or "type" not in data:
        raise ParseError("model must be an object with a 'type' field")
    kind = data["type"]
    try:
        if kind == "additive":
            values = [rational_from_str(v) for v in data["values"]]
            if len(values) != m:
                raise ParseError(f"additive model has {len(values)} values, expected {m}")
            return Additive(values)
        if kind == "uniform":
            return Uniform()
        if kind == "table":
            entries = {}
            for mask_text, value_text in data["entries"]:
                mask = int(mask_text)
                if mask in entries:
                    raise ParseError(f"duplicate table entry for mask {mask}")
                entries[mask] = rational_from_str(value_text)
            try:
                return Table(m, entries)
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
        if kind == "negated":
            return Negated(model_from_json(data["inner"], m))
        if kind == "composite":
            base_goods = int(data["baseGoods"])
            base = model_from_json(data["base"], base_goods)
            tail = [rational_from_str(v) for v in data["tail"]]
            if len(tail) != m:
                raise ParseError(f"composite tail has {len(tail)} values, expected {m}")
            return Sum((Restriction(base, base_goods), Additive(tail)))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed {kind} model: {exc}") from exc
    raise ParseError(f"unknown model type {kind!r}")


def instance_to_json(instance: Instance, intervals: Optional[IntervalSet] = None) -> dict:
    if instance.identical:
        valuations = {"identical": model_to_json(instance.identical_model)}
    else:
        valuations = {"perAgent": [model_to_json(v) for v in instance.models]}
    data = {
        "agents": instance.n,
        "goods": instance.m,
        "edges": [list(e) for e in sorted(instance.graph.edges)],
        "mode": instance.mode,
        "valuations": valuations,
    }
    if intervals is not None:
        data["intervals"] = [
            [rational_to_str(l), rational_to_str(r)] for l, r in intervals.intervals
        ]
    return data


def instance_from_json(data) -> Tuple[Instance, Optional[IntervalSet]]:
    if not isinstance(data, dict):
        raise ParseError("instance file must be a JSON object")
    try:
        n = int(data["agents"])
        m = int(data["goods"])
        mode = data.get("mode", "goods")
        graph = ConflictGraph(m, [tuple(e) for e in data.get("edges", [])])
        valuations = data["valuations"]
        if "identical" in valuations:
            models: object = model_from_json(valuations["identical"], m)
        elif "perAgent" in valuations:
            models = [model_from_json(v, m) for v in valuations["perAgent"]]
        else:
            raise ParseError("valuations must contain 'identical' or 'perAgent'")
        instance = Instance(graph, n, models, mode)
        intervals = None
        if "intervals" in data and data["intervals"] is not None:
            raw = [(rational_from_str(l), rational_from_str(r)) for l, r in data["intervals"]]
            if len(raw) != m:
                raise ParseError(f"{len(raw)} intervals for {m} goods")
            intervals = IntervalSet(raw)
        return instance, intervals
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed instance file: {exc}") from exc


def allocation_to_json(allocation: Allocation, certificate: Optional[dict] = None) -> dict:
    data = {"bundles": [sorted(b) for b in allocation.bundles]}
    if certificate is not None:
        data["certificate"] = dict(certificate)
    return data


def allocation_from_json(data) -> Tuple[Allocation, Optional[dict]]:
    if not isinstance(data, dict) or "bundles" not in data:
        raise ParseError("allocation file must be an object with 'bundles'")
    try:
        allocation = Allocation([[int(g) for g in bundle] for bundle in data["bundles"]])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed bundles: {exc}") from exc
    return allocation, data.get("certificate")


def graph_to_json(graph: ConflictGraph) -> dict:
    return {"vertices": graph.m, "edges": [list(e) for e in sorted(graph.edges)]}


def graph_from_json(data) -> ConflictGraph:
    if not isinstance(data, dict):
        raise ParseError("graph file must be a JSON object")
    try:
        return ConflictGraph(int(data["vertices"]), [tuple(e) for e in data.get("edges", [])])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed graph file: {exc}") from exc


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def dump_json(path, data) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(data, handle, indent=2)
        handle.write("\n")


# Bundle colors follow the usual figure convention: agents 1, 2, 3 are red,
# blue, green; unassigned vertices are gray.
_PALETTE = ("red", "blue", "green", "orange", "purple", "cyan", "yellow", "brown", "pink", "olive")


def class_color(index: int, total: int) -> str:
    if index < len(_PALETTE):
        return _PALETTE[index]
    return f"{index / max(total, 1):.3f} 0.600 0.900"


def to_dot(graph: ConflictGraph, classes: Optional[Sequence[Sequence[int]]] = None, name: str = "G") -> str:
    """Graphviz rendering; ``classes`` colors each class's vertices and
    leaves the rest gray."""
    color_of = {}
    if classes is not None:
        for idx, members in enumerate(classes):
            for g in members:
                color_of[g] = class_color(idx, len(classes))
    lines: List[str] = [f"graph {name} {{", "  node [style=filled];"]
    for g in range(graph.m):
        lines.append(f'  {g} [fillcolor="{color_of.get(g, "gray")}"];')
    for u, w in sorted(graph.edges):
        lines.append(f"  {u} -- {w};")
    lines.append("}")
    return "\n".join(lines) + "\n"
