"""Bit-exact instance and result serialization.

Instances use a line-oriented text format made for hand-editing and diffs:

    # optional comments and blank lines are skipped
    s t
    alpha_1 ... alpha_s
    beta_1 ... beta_t
    s lines of t weights each

Results are a single JSON object so downstream tooling can consume them.
Weights render with round-trip-exact decimals (integers without a decimal
point), so parse(render(x)) == x holds exactly.
"""

from __future__ import annotations

import json

import numpy as np

from ._version import __version__
from .core import BMatchInstance, BMatching, BMatchingError, InvalidInstance, validate_instance


class ParseError(BMatchingError, ValueError):
    """Malformed instance or result text; carries the offending line."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


def format_weight(w: float) -> str:
    """Shortest decimal that parses back to exactly ``w``."""
    w = float(w)
    if w.is_integer():
        return str(int(w))
    return repr(w)


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def parse_instance(text: str) -> BMatchInstance:
    """Parse the line-oriented instance format; validates before returning."""
    lines = _data_lines(text)
    eof_line = len(text.splitlines()) + 1

    def next_line(what: str) -> tuple[int, str]:
        for lineno, line in lines:
            return lineno, line
        raise ParseError(eof_line, f"missing {what}")

    def ints(lineno: int, line: str, count: int, what: str) -> list[int]:
        toks = line.split()
        if len(toks) != count:
            raise ParseError(lineno, f"expected {count} {what}, got {len(toks)}")
        try:
            return [int(tok) for tok in toks]
        except ValueError as exc:
            raise ParseError(lineno, f"bad integer in {what}: {exc}") from None

    lineno, line = next_line("header line 's t'")
    s, t = ints(lineno, line, 2, "sizes")
    if s < 1 or t < 1:
        raise ParseError(lineno, f"need s,t >= 1, got s={s}, t={t}")
    lineno, line = next_line("left capacities")
    alpha = ints(lineno, line, s, "left capacities")
    lineno, line = next_line("right capacities")
    beta = ints(lineno, line, t, "right capacities")
    rows = []
    for i in range(s):
        lineno, line = next_line(f"weight row {i}")
        toks = line.split()
        if len(toks) != t:
            raise ParseError(lineno, f"expected {t} weights in row {i}, got {len(toks)}")
        try:
            rows.append([float(tok) for tok in toks])
        except ValueError as exc:
            raise ParseError(lineno, f"bad weight in row {i}: {exc}") from None
    for lineno, line in lines:
        raise ParseError(lineno, f"unexpected trailing content: {line!r}")

    inst = BMatchInstance(s=s, t=t, alpha=tuple(alpha), beta=tuple(beta), weights=np.array(rows))
    report = validate_instance(inst)
    if not report.ok:
        raise InvalidInstance(report)
    return inst


def render_instance(inst: BMatchInstance) -> str:
    """Canonical rendering: same value in, same bytes out."""
    lines = [
        f"{inst.s} {inst.t}",
        " ".join(str(a) for a in inst.alpha),
        " ".join(str(b) for b in inst.beta),
    ]
    for i in range(inst.s):
        lines.append(" ".join(format_weight(w) for w in inst.weights[i]))
    return "\n".join(lines) + "\n"


def render_result(bm: BMatching, report=None, solver_version: str = __version__) -> str:
    """One JSON object: weight, edges sorted by (i, j), and solve counters."""
    obj: dict = {
        "weight": bm.total_weight,
        "edges": [[i, j, mult] for i, j, mult in sorted(bm.edges)],
    }
    if report is not None:
        obj["phase1_augmentations"] = report.phase1_augmentations
        obj["phase2_augmentations"] = report.phase2_augmentations
        obj["dual_updates"] = report.dual_updates
    obj["solver_version"] = solver_version
    return json.dumps(obj, separators=(", ", ": ")) + "\n"


def parse_result(text: str) -> BMatching:
    """Invert ``render_result`` back to a BMatching (counters are ignored)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    if not isinstance(obj, dict) or "weight" not in obj or "edges" not in obj:
        raise ParseError(1, "result object needs 'weight' and 'edges' fields")
    try:
        edges = tuple(sorted((int(i), int(j), int(mult)) for i, j, mult in obj["edges"]))
        weight = float(obj["weight"])
    except (TypeError, ValueError) as exc:
        raise ParseError(1, f"malformed result fields: {exc}") from None
    return BMatching(edges=edges, total_weight=weight)
