"""JSON and TSV forms for sets, families, and verdict reports.

Numbers are emitted as decimal strings so reports survive readers that
truncate large integers; parsing accepts plain numbers as well.
"""

from __future__ import annotations

import json

from .analyzer import HConfig, HReport, HVerdict
from .errors import ParseError
from .families import Family, ProductFamily, build
from .symbolic import (
    ALL,
    Affine,
    Cofinite,
    Congruence,
    Empty,
    Finite,
    HalfTail,
    IntSet,
    Intersection,
    Tail,
    Union,
    Window,
    cofinite,
    congruence,
    finite,
    half_tail,
    normalize,
    tail,
    union,
)


def _num(value) -> int:
    if isinstance(value, bool):
        raise ParseError(f"expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise ParseError(f"not a decimal integer: {value!r}") from None
    raise ParseError(f"expected an integer, got {value!r}")


def _opt_num(value) -> int | None:
    return None if value is None else _num(value)


def _emit(n: int | None):
    return None if n is None else str(n)


# ---------------------------------------------------------------------------
# sets


def set_to_json(s: IntSet) -> dict:
    if isinstance(s, Empty):
        return {"kind": "empty"}
    if isinstance(s, Finite):
        return {"kind": "finite", "elements": [str(e) for e in s.elements]}
    if isinstance(s, Cofinite):
        return {"kind": "cofinite", "excluded": [str(e) for e in s.excluded]}
    if isinstance(s, Congruence):
        return {
            "kind": "congruence",
            "modulus": str(s.modulus),
            "residues": [str(r) for r in s.residues],
        }
    if isinstance(s, Tail):
        return {"kind": "tail", "center": str(s.center), "radius": str(s.radius)}
    if isinstance(s, HalfTail):
        return {"kind": "half-tail", "threshold": str(s.threshold)}
    if isinstance(s, Union):
        return {"kind": "union", "parts": [set_to_json(p) for p in s.parts]}
    if isinstance(s, Intersection):
        return {"kind": "intersection", "parts": [set_to_json(p) for p in s.parts]}
    if isinstance(s, Affine):
        return {
            "kind": "affine",
            "unit": str(s.unit),
            "shift": str(s.shift),
            "inner": set_to_json(s.inner),
        }
    raise ParseError(f"unserializable set node {type(s).__name__}")


def set_from_json(d) -> IntSet:
    if not isinstance(d, dict) or "kind" not in d:
        raise ParseError(f"a set needs a 'kind' tag, got {d!r}")
    kind = d["kind"]
    try:
        if kind == "empty":
            return normalize(Finite(()))
        if kind == "all":
            return ALL
        if kind == "finite":
            return finite(_num(e) for e in d["elements"])
        if kind == "cofinite":
            return cofinite(_num(e) for e in d["excluded"])
        if kind == "congruence":
            return congruence(_num(d["modulus"]), [_num(r) for r in d["residues"]])
        if kind == "tail":
            return tail(_num(d["center"]), _num(d["radius"]))
        if kind == "half-tail":
            return half_tail(_num(d["threshold"]))
        if kind == "union":
            return union(*(set_from_json(p) for p in d["parts"]))
        if kind == "intersection":
            from .symbolic import intersect

            return intersect(*(set_from_json(p) for p in d["parts"]))
        if kind == "affine":
            from .symbolic import affine

            return affine(_num(d["unit"]), _num(d["shift"]), set_from_json(d["inner"]))
    except KeyError as missing:
        raise ParseError(f"set kind {kind!r} is missing field {missing}") from None
    raise ParseError(f"unknown set kind {kind!r}")


# ---------------------------------------------------------------------------
# inline set expressions (CLI)


def parse_set_expr(text: str) -> IntSet:
    """Small textual form: 'all', 'empty', 'nonzero', 'finite:0,1,3',
    'cofinite:5', 'congruence:4:0,1', 'tail:0,5', 'halftail:3';
    '|' joins alternatives into a union."""
    parts = [p.strip() for p in text.split("|")]
    if len(parts) > 1:
        return union(*(parse_set_expr(p) for p in parts))
    expr = parts[0]
    head, _, rest = expr.partition(":")
    head = head.strip().lower()
    try:
        if head == "all":
            return ALL
        if head == "empty":
            return normalize(Finite(()))
        if head == "nonzero":
            return cofinite([0])
        if head == "finite":
            return finite(int(v) for v in rest.split(","))
        if head == "cofinite":
            return cofinite(int(v) for v in rest.split(","))
        if head == "congruence":
            mod, _, res = rest.partition(":")
            return congruence(int(mod), [int(v) for v in res.split(",")])
        if head == "tail":
            c, r = rest.split(",")
            return tail(int(c), int(r))
        if head == "halftail":
            return half_tail(int(rest))
    except (ValueError, TypeError):
        raise ParseError(f"malformed set expression {expr!r}") from None
    raise ParseError(f"unknown set expression {expr!r}")


# ---------------------------------------------------------------------------
# families


def family_to_json(f) -> dict:
    if isinstance(f, ProductFamily):
        return {
            "family": "product",
            "left": family_to_json(f.left),
            "right": family_to_json(f.right),
        }
    out: dict = {"family": f.kind}
    for key, value in f.params().items():
        if isinstance(value, IntSet):
            out[key] = set_to_json(value)
        elif isinstance(value, Family):
            out[key] = family_to_json(value)
        elif isinstance(value, (list, tuple)):
            out[key] = [
                set_to_json(v) if isinstance(v, IntSet) else str(v) for v in value
            ]
        elif isinstance(value, int):
            out[key] = str(value)
        else:
            out[key] = value
    return out


_SET_PARAMS = {"core"}
_FAMILY_PARAMS = {"inner", "left", "right"}
_INT_LIST_PARAMS = {"moduli"}
_SET_LIST_PARAMS = {"sets"}


def family_from_json(d) -> Family | ProductFamily:
    if not isinstance(d, dict) or "family" not in d:
        raise ParseError(f"a family needs a 'family' tag, got {d!r}")
    kind = d["family"]
    if kind == "product":
        return ProductFamily(
            family_from_json(d["left"]), family_from_json(d["right"])
        )
    params = {}
    for key, value in d.items():
        if key == "family":
            continue
        if key in _FAMILY_PARAMS:
            params[key] = family_from_json(value)
        elif key in _SET_LIST_PARAMS:
            params[key] = [set_from_json(v) for v in value]
        elif key in _INT_LIST_PARAMS:
            params[key] = None if value is None else [_num(v) for v in value]
        elif key in _SET_PARAMS:
            if isinstance(value, dict):
                params[key] = set_from_json(value)
            else:
                # chain cores are plain integer lists
                params[key] = [_num(v) for v in value]
        elif value is None:
            params[key] = None
        else:
            params[key] = _num(value)
    return build(kind, params)


# ---------------------------------------------------------------------------
# H reports


def _window_to_json(w: Window) -> dict:
    return {"lo": str(w.lo), "hi": str(w.hi)}


def _window_from_json(d) -> Window:
    return Window(_num(d["lo"]), _num(d["hi"]))


def _point_to_json(v):
    if v is None:
        return None
    if isinstance(v, tuple):
        return [_point_to_json(c) for c in v]
    return str(v)


def _point_from_json(v):
    if v is None:
        return None
    if isinstance(v, list):
        return tuple(_point_from_json(c) for c in v)
    return _num(v)


def report_to_json(report: HReport) -> dict:
    cfg = report.config
    return {
        "kind": report.kind,
        "config": {
            "Q": str(cfg.Q),
            "window": _window_to_json(cfg.window),
            "gen_radius": _emit(cfg.gen_radius),
            "deep_scale": str(cfg.deep_scale),
        },
        "verdicts": [
            {
                "h": str(v.h),
                "status": v.status,
                "witness": _point_to_json(v.witness),
                "evidence": v.evidence,
                "Q": str(v.Q),
                "window": _window_to_json(v.window),
                "sample": _point_to_json(v.sample),
                "intersection_empty": v.intersection_empty,
            }
            for v in report.verdicts
        ],
    }


def report_from_json(d) -> HReport:
    try:
        cfg = HConfig(
            Q=_num(d["config"]["Q"]),
            window=_window_from_json(d["config"]["window"]),
            gen_radius=_opt_num(d["config"].get("gen_radius")),
            deep_scale=_num(d["config"].get("deep_scale", 2)),
        )
        verdicts = tuple(
            HVerdict(
                h=_num(v["h"]),
                status=v["status"],
                witness=_point_from_json(v.get("witness")),
                evidence=v["evidence"],
                Q=_num(v["Q"]),
                window=_window_from_json(v["window"]),
                sample=_point_from_json(v.get("sample")),
                intersection_empty=v.get("intersection_empty"),
            )
            for v in d["verdicts"]
        )
        return HReport(kind=d["kind"], config=cfg, verdicts=verdicts)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed report JSON: {exc}") from None


def _witness_cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, tuple):
        return ",".join(str(c) for c in v)
    return str(v)


TSV_COLUMNS = ("h", "status", "witness", "evidence", "Q", "window")


def report_to_tsv(report: HReport) -> str:
    lines = ["\t".join(TSV_COLUMNS)]
    for v in report.verdicts:
        lines.append(
            "\t".join(
                (
                    str(v.h),
                    v.status,
                    _witness_cell(v.witness),
                    v.evidence,
                    str(v.Q),
                    f"{v.window.lo}:{v.window.hi}",
                )
            )
        )
    return "\n".join(lines) + "\n"


def report_dumps(report: HReport, fmt: str = "tsv") -> str:
    if fmt == "json":
        return json.dumps(report_to_json(report), indent=2) + "\n"
    if fmt == "tsv":
        return report_to_tsv(report)
    raise ParseError(f"unknown format {fmt!r}")
