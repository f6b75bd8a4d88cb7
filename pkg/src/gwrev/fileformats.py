"""JSON interchange formats.

All rationals travel as strings ("3/8", "1"); all emitted documents are
canonical: keys sorted, entries in sorted order, reduced fractions, two-space
indent, trailing newline.  Equal objects therefore serialize to byte-identical
files.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Dict, Union

from .checker import CheckReport
from .core import Dist, GWSpec, PAIR, PLAIN, RootMeasure, SpecError, SupportClass
from .norelabel import PlainCheckReport, PlainSpec
from .parametrizer import SupportTemplate, Weights

_FRACTION_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_fraction(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _FRACTION_RE.match(text.strip()):
        raise SpecError(f"not a rational literal: {text!r}")
    return Fraction(text.strip())


def format_fraction(value: Fraction) -> str:
    return str(Fraction(value))


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _dist_to_obj(dist: Dist) -> list:
    return [{"c": list(c), "p": format_fraction(p)} for c, p in sorted(dist.items())]


def _obj_to_dist(entries, n: int) -> Dist:
    if not isinstance(entries, list) or not entries:
        raise SpecError("distribution must be a non-empty list")
    dist: Dist = {}
    for entry in entries:
        c = tuple(int(x) for x in entry["c"])
        if len(c) != n:
            raise SpecError(f"vector {c} has length {len(c)}, expected {n}")
        if c in dist:
            raise SpecError(f"duplicate vector {c} in distribution")
        dist[c] = parse_fraction(entry["p"])
    return dist


# ---------------------------------------------------------------------------
# Specs
# ---------------------------------------------------------------------------

def spec_to_obj(spec: GWSpec) -> dict:
    entries = []
    for key in sorted(spec.offspring):
        dist = _dist_to_obj(spec.offspring[key])
        if spec.mode == PAIR:
            entries.append({"parent": key[0], "child": key[1], "dist": dist})
        else:
            entries.append({"type": key, "dist": dist})
    return {"n": spec.n, "mode": spec.mode, "offspring": entries}


def plain_spec_to_obj(pspec: PlainSpec) -> dict:
    return {
        "n": pspec.n,
        "mode": PLAIN,
        "degree_dist": [
            {
                "type": i,
                "dist": [
                    {"d": d, "p": format_fraction(p)}
                    for d, p in sorted(pspec.degree_dist[i].items())
                ],
            }
            for i in sorted(pspec.degree_dist)
        ],
        "params": [
            [format_fraction(p) for p in pspec.params[i]]
            for i in range(1, pspec.n + 1)
        ],
    }


def obj_to_spec(obj) -> Union[GWSpec, PlainSpec]:
    """Decode a spec document.

    Pair mode and explicit plain mode yield a GWSpec; the direct plain form
    (degree distributions plus a parameter matrix) yields a PlainSpec.
    """
    if not isinstance(obj, dict):
        raise SpecError("spec document must be a JSON object")
    try:
        n = int(obj["n"])
        mode = obj["mode"]
    except KeyError as err:
        raise SpecError(f"spec document lacks key {err}") from None
    if mode not in (PAIR, PLAIN):
        raise SpecError(f"unknown mode {mode!r}")

    if mode == PLAIN and "degree_dist" in obj:
        degree_dist: Dict[int, Dict[int, Fraction]] = {}
        for entry in obj["degree_dist"]:
            i = int(entry["type"])
            degree_dist[i] = {
                int(e["d"]): parse_fraction(e["p"]) for e in entry["dist"]
            }
        params_rows = obj["params"]
        if len(params_rows) != n:
            raise SpecError("params matrix must have n rows")
        params = {
            i + 1: tuple(parse_fraction(p) for p in row)
            for i, row in enumerate(params_rows)
        }
        return PlainSpec(n=n, degree_dist=degree_dist, params=params)

    offspring = {}
    for entry in obj.get("offspring", []):
        if mode == PAIR:
            key = (int(entry["parent"]), int(entry["child"]))
        else:
            key = int(entry["type"])
        if key in offspring:
            raise SpecError(f"duplicate offspring entry for {key}")
        offspring[key] = _obj_to_dist(entry["dist"], n)
    return GWSpec(n=n, mode=mode, offspring=offspring)


# ---------------------------------------------------------------------------
# Measures
# ---------------------------------------------------------------------------

def measure_to_obj(measure: RootMeasure, verified: bool = True) -> dict:
    return {
        "root": [
            {"label": i, "p": format_fraction(measure.root_dist[i])}
            for i in sorted(measure.root_dist)
        ],
        "neighbors": [
            {"label": i, "dist": _dist_to_obj(measure.neighbor_dist[i])}
            for i in sorted(measure.neighbor_dist)
        ],
        "descendants": spec_to_obj(measure.descendants),
        "verified": bool(verified),
    }


def obj_to_measure(obj) -> RootMeasure:
    if not isinstance(obj, dict):
        raise SpecError("measure document must be a JSON object")
    try:
        descendants = obj_to_spec(obj["descendants"])
    except KeyError:
        raise SpecError("measure document lacks descendants") from None
    if isinstance(descendants, PlainSpec):
        raise SpecError("measure descendants must be explicit offspring laws")
    n = descendants.n
    root_dist = {
        int(e["label"]): parse_fraction(e["p"]) for e in obj.get("root", [])
    }
    neighbor_dist = {
        int(e["label"]): _obj_to_dist(e["dist"], n) for e in obj.get("neighbors", [])
    }
    return RootMeasure(
        n=n, root_dist=root_dist, neighbor_dist=neighbor_dist, descendants=descendants
    )


# ---------------------------------------------------------------------------
# Templates and weights
# ---------------------------------------------------------------------------

def template_to_obj(template: SupportTemplate) -> dict:
    return {
        "n": template.n,
        "classes": [
            {"label": cls.label, "c": list(cls.vector)} for cls in template.classes
        ],
    }


def obj_to_template(obj) -> SupportTemplate:
    try:
        n = int(obj["n"])
        classes = tuple(
            SupportClass(int(e["label"]), tuple(int(x) for x in e["c"]))
            for e in obj["classes"]
        )
    except (KeyError, TypeError) as err:
        raise SpecError(f"bad template document: {err}") from None
    return SupportTemplate(n=n, classes=classes)


def weights_to_obj(weights: Weights) -> dict:
    return {
        "weights": [
            {"label": cls.label, "c": list(cls.vector), "p": format_fraction(w)}
            for cls, w in sorted(weights.items())
        ]
    }


def obj_to_weights(obj) -> Weights:
    try:
        return {
            SupportClass(int(e["label"]), tuple(int(x) for x in e["c"])):
                parse_fraction(e["p"])
            for e in obj["weights"]
        }
    except (KeyError, TypeError) as err:
        raise SpecError(f"bad weights document: {err}") from None


# ---------------------------------------------------------------------------
# Check reports
# ---------------------------------------------------------------------------

def _class_obj(cls: SupportClass) -> dict:
    return {"label": cls.label, "c": list(cls.vector)}


def report_to_obj(report: CheckReport) -> dict:
    out = {
        "mode": PAIR,
        "ok": report.ok(),
        "failed": report.failed_names(),
        "labels_realized": report.labels_realized,
        "strongly_connected": report.strongly_connected,
        "condition_i": "pass" if report.condition_i else "fail",
        "condition_ii": (
            "skipped" if report.condition_ii is None
            else "pass" if report.condition_ii else "fail"
        ),
        "connected_support": (
            "skipped" if report.connected_support is None else report.connected_support
        ),
    }
    if report.missing_label is not None:
        out["missing_label"] = report.missing_label
    if report.unreachable_pair is not None:
        out["unreachable_pair"] = [list(k) for k in report.unreachable_pair]
    if report.condition_i_counterexample is not None:
        i, j, k, c = report.condition_i_counterexample
        out["condition_i_counterexample"] = {"i": i, "j": j, "k": k, "c": list(c)}
    if report.violating_cycle is not None:
        out["violating_cycle"] = [_class_obj(cls) for cls in report.violating_cycle]
    return out


def plain_report_to_obj(report: PlainCheckReport) -> dict:
    out = {
        "mode": PLAIN,
        "ok": report.ok(),
        "failed": report.failed_names(),
        "multinomial": "pass" if report.multinomial else report.multinomial_error,
        "cycles": (
            "skipped" if report.cycles is None
            else "pass" if report.cycles else "fail"
        ),
        "connected": "skipped" if report.connected is None else report.connected,
    }
    if report.multinomial_witness is not None:
        out["witness"] = [
            list(x) if isinstance(x, tuple) else x for x in report.multinomial_witness
        ]
    if report.violating_cycle is not None:
        out["violating_cycle"] = list(report.violating_cycle)
    return out


# ---------------------------------------------------------------------------
# Class selectors ("label:(c1,...,cn)") and files
# ---------------------------------------------------------------------------

_SELECTOR_RE = re.compile(r"^(\d+):\((\d+(?:,\d+)*)\)$")


def parse_class_selector(text: str) -> SupportClass:
    m = _SELECTOR_RE.match(text.strip())
    if not m:
        raise SpecError(f"bad class selector {text!r}; expected label:(c1,...,cn)")
    return SupportClass(
        int(m.group(1)), tuple(int(x) for x in m.group(2).split(","))
    )


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


def save_json(path, obj) -> None:
    with open(path, "w") as fh:
        fh.write(canonical_json(obj))


def load_spec(path) -> Union[GWSpec, PlainSpec]:
    return obj_to_spec(load_json(path))


def load_measure(path) -> RootMeasure:
    return obj_to_measure(load_json(path))


def save_measure(path, measure: RootMeasure, verified: bool = True) -> None:
    save_json(path, measure_to_obj(measure, verified=verified))
