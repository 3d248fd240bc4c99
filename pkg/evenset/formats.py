"""Text formats: DIMACS graphs, weight files, fractions and separator dumps.

Files use 1-based vertex ids; everything in memory is 0-based.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Mapping
from fractions import Fraction
from typing import Any

from .errors import InvalidWeights, LoopOrMultiEdge, ParseError
from .models import Branch, ComponentInfo, EvenSetSeparator, Graph, IteratedEvenSet

logger = logging.getLogger(__name__)

#: Problem kinds accepted on the ``p`` line.
PROBLEM_KINDS = ("edge", "col")

#: Largest vertex count a problem line may declare.
MAX_VERTICES = 10_000_000


# ---------------------------------------------------------------------------
# DIMACS
# ---------------------------------------------------------------------------


def _int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line) from None


def parse_dimacs(text: str) -> Graph:
    """Parse the DIMACS edge format into a :class:`Graph` with 0-based ids."""
    n: int | None = None
    declared = 0
    rows: dict[int, set[int]] = {}
    seen_edges = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise ParseError("second problem line", lineno)
            if len(parts) != 4 or parts[1] not in PROBLEM_KINDS:
                raise ParseError("problem line must read 'p edge N M'", lineno)
            n, declared = _int(parts[2], lineno), _int(parts[3], lineno)
            if n < 0 or declared < 0:
                raise ParseError("vertex and edge counts must be nonnegative", lineno)
            if n > MAX_VERTICES:
                raise ParseError(f"problem line declares {n} vertices, more than {MAX_VERTICES}", lineno)
        elif tag == "e":
            if n is None:
                raise ParseError("edge before the problem line", lineno)
            if len(parts) != 3:
                raise ParseError("edge line must read 'e U V'", lineno)
            u, v = _int(parts[1], lineno) - 1, _int(parts[2], lineno) - 1
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge {u + 1}-{v + 1} mentions a vertex outside 1..{n}", lineno)
            if u == v or v in rows.get(u, ()):
                raise LoopOrMultiEdge(u, v, lineno)
            rows.setdefault(u, set()).add(v)
            rows.setdefault(v, set()).add(u)
            seen_edges += 1
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing problem line")
    if seen_edges != declared:
        raise ParseError(f"problem line declares {declared} edges, found {seen_edges}")
    logger.debug("Parsed DIMACS graph: n=%d, m=%d", n, seen_edges)
    return Graph(n, tuple(tuple(sorted(rows.get(v, ()))) for v in range(n)))


def render_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Weights and fractions
# ---------------------------------------------------------------------------


def parse_weights(text: str, n: int) -> list[int]:
    """One nonnegative integer per line; line ``i`` is the weight of vertex ``i``."""
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        token = raw.strip()
        if not token:
            continue
        value = _int(token, lineno)
        if value < 0:
            raise InvalidWeights(f"line {lineno}: weight {value} is negative")
        values.append(value)
    if len(values) != n:
        raise ParseError(f"expected {n} weights, found {len(values)}")
    return values


def parse_fraction(text: str) -> Fraction:
    """Parse ``"num/den"`` (or an integer) exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a fraction: {text!r}") from None


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Separator dumps
# ---------------------------------------------------------------------------


def separator_to_json(sep: EvenSetSeparator) -> dict[str, Any]:
    return {
        "branch": int(sep.branch),
        "k": sep.k,
        "c": format_fraction(sep.c),
        "d": sep.d,
        "center": sep.center,
        "layers": [sorted(layer) for layer in sep.layers],
        "components": [
            {"vertices": sorted(info.vertices), "neighborhood": sorted(info.neighborhood)} for info in sep.components
        ],
        "audits": dict(sep.audits),
    }


def separator_from_json(doc: Mapping[str, Any] | str) -> EvenSetSeparator:
    """Inverse of :func:`separator_to_json`; also accepts the JSON text."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", e.lineno) from None
    if not isinstance(doc, Mapping):
        raise ParseError("separator dump must be a JSON object")
    try:
        layers = tuple(frozenset(int(v) for v in layer) for layer in doc["layers"])
        comps = tuple(
            ComponentInfo(frozenset(int(v) for v in comp["vertices"]), frozenset(int(v) for v in comp["neighborhood"]))
            for comp in doc["components"]
        )
        branch = Branch(int(doc["branch"]))
        c = parse_fraction(str(doc["c"]))
        d = int(doc["d"])
        k = int(doc["k"])
        center = doc.get("center")
        audits = dict(doc.get("audits", {}))
        iterated = IteratedEvenSet(layers)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed separator dump: {e}") from None
    if k != iterated.k:
        raise ParseError(f"dump declares k={k} but lists {iterated.k} layers")
    return EvenSetSeparator(iterated, c, d, branch, comps, audits, None if center is None else int(center))
