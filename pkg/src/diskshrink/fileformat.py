"""JSON instance files and verdict documents."""

from __future__ import annotations

import json
import math
from decimal import Decimal, InvalidOperation
from typing import Any

from diskshrink.geometry import Point
from diskshrink.model import Instance, Problem, Solution, Verdict


class InstanceFormatError(ValueError):
    pass


def fmt_real(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite real {x!r}")
    s = f"{x:.17g}"
    if "e" not in s and "." not in s:
        s += ".0"
    return s


def _real(value: Any, where: str) -> float:
    if isinstance(value, bool):
        raise InstanceFormatError(f"{where}: expected a number, got a boolean")
    if isinstance(value, (int, float)):
        out = float(value)
    elif isinstance(value, str):
        try:
            out = float(Decimal(value))
        except InvalidOperation:
            raise InstanceFormatError(f"{where}: {value!r} is not a decimal string") from None
    else:
        raise InstanceFormatError(f"{where}: expected a number, got {type(value).__name__}")
    if not math.isfinite(out):
        raise InstanceFormatError(f"{where}: non-finite value")
    return out


def from_dict(doc: Any) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceFormatError("document: expected a JSON object")
    unknown = set(doc) - {"problem", "alpha", "k", "mu", "points", "meta"}
    if unknown:
        raise InstanceFormatError(f"document: unknown field(s) {sorted(unknown)}")
    for key in ("problem", "alpha", "k", "points"):
        if key not in doc:
            raise InstanceFormatError(f"field '{key}': missing")
    try:
        problem = Problem(doc["problem"])
    except ValueError:
        choices = ", ".join(p.value for p in Problem)
        raise InstanceFormatError(f"field 'problem': {doc['problem']!r} not one of {choices}") from None
    alpha = _real(doc["alpha"], "field 'alpha'")
    k = doc["k"]
    if isinstance(k, bool) or not isinstance(k, int):
        raise InstanceFormatError("field 'k': expected an integer")
    mu = None
    if problem.is_min:
        if "mu" not in doc:
            raise InstanceFormatError(f"field 'mu': required for {problem.value}")
        mu = _real(doc["mu"], "field 'mu'")
    elif "mu" in doc:
        raise InstanceFormatError(f"field 'mu': not allowed for {problem.value}")
    pts = doc["points"]
    if not isinstance(pts, list):
        raise InstanceFormatError("field 'points': expected an array")
    points = []
    for i, pair in enumerate(pts):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InstanceFormatError(f"field 'points[{i}]': expected an [x, y] pair")
        points.append(Point(_real(pair[0], f"field 'points[{i}][0]'"), _real(pair[1], f"field 'points[{i}][1]'")))
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise InstanceFormatError("field 'meta': expected an object")
    try:
        return Instance(tuple(points), problem, alpha, k, mu, meta=meta)
    except ValueError as exc:
        raise InstanceFormatError(f"instance: {exc}") from None


def parse(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(doc)


def serialize(inst: Instance) -> str:
    """Canonical text: sorted keys, one point per line, 17 significant digits."""
    lines = ["{", f'  "alpha": {fmt_real(inst.alpha)},', f'  "k": {int(inst.k)},']
    if inst.meta:
        lines.append(f'  "meta": {json.dumps(dict(inst.meta), sort_keys=True)},')
    if inst.mu is not None:
        lines.append(f'  "mu": {fmt_real(inst.mu)},')
    if inst.points:
        pts = ",\n".join(f"    [{fmt_real(p.x)}, {fmt_real(p.y)}]" for p in inst.points)
        lines.append(f'  "points": [\n{pts}\n  ],')
    else:
        lines.append('  "points": [],')
    lines.append(f'  "problem": "{inst.problem.value}"')
    lines.append("}")
    return "\n".join(lines) + "\n"


def load(path) -> Instance:
    with open(path) as fh:
        return parse(fh.read())


def save(inst: Instance, path) -> None:
    with open(path, "w") as fh:
        fh.write(serialize(inst))


def _jsonable(v):
    if isinstance(v, float):
        return v if math.isfinite(v) else str(v)
    if isinstance(v, (list, tuple, set, frozenset)):
        return [_jsonable(x) for x in (sorted(v) if isinstance(v, (set, frozenset)) else v)]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


def verdict_to_dict(verdict: Verdict, n: int) -> dict:
    doc = {
        "answer": "yes" if verdict.answer else "no",
        "inconclusive": verdict.inconclusive,
        "size": verdict.size,
        "cost": verdict.optimum_cost,
        "stats": _jsonable(dict(verdict.stats)),
    }
    if verdict.witness is not None:
        doc["shrunk"] = sorted(verdict.witness.shrunk)
        doc["radii"] = [verdict.witness.radii[i] for i in range(n)]
    return doc


def verdict_to_text(verdict: Verdict, n: int) -> str:
    doc = verdict_to_dict(verdict, n)
    radii = doc.pop("radii", None)
    text = json.dumps(doc, sort_keys=True, indent=2)
    if radii is None:
        return text + "\n"
    # keep radii at full precision
    body = ", ".join(fmt_real(r) for r in radii)
    return text[:-2] + f',\n  "radii": [{body}]\n}}\n'


def solution_from_dict(doc: dict) -> Solution:
    radii = doc.get("radii")
    if radii is None:
        raise InstanceFormatError("verdict: no witness radii")
    shrunk = doc.get("shrunk")
    rad = {i: _real(r, f"field 'radii[{i}]'") for i, r in enumerate(radii)}
    if shrunk is None:
        return Solution.from_radii(rad)
    return Solution(frozenset(int(i) for i in shrunk), rad)
