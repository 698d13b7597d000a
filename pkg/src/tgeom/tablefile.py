"""Line-oriented σ-table files.

Format (UTF-8, one directive per line):

    # comment lines start with '#'; blank lines are ignored
    points: A B C
    tolerance: 1e-9
    sigma: A B 1.0
    sigma: A C 4.0
    sigma: B C 1.0

The points line must come first; the optional tolerance line must
precede every sigma line. A sigma line sets the value of one ordered
pair; for symmetric input a single line per unordered pair suffices and
is mirrored, while asymmetric input simply lists both directions.
Repeating an ordered pair with values that disagree beyond the
tolerance is a parse error, as is any unknown directive.

Parsing is split from validation on purpose: a file whose diagonal is
nonzero or whose values are not finite parses fine (the checker reports
those as violations), but only a clean table builds a space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import TableParseError
from .space import DEFAULT_TOLERANCE, SigmaSpace


@dataclass(frozen=True)
class ParsedTable:
    """Raw content of a table file, before semantic validation."""

    path: str
    labels: tuple[str, ...]
    tolerance: float | None
    matrix: np.ndarray

    @property
    def effective_tolerance(self) -> float:
        return DEFAULT_TOLERANCE if self.tolerance is None else self.tolerance


def parse_table_text(text: str, path: str = "<string>") -> ParsedTable:
    """Parse table-file text, raising TableParseError with the line number."""
    labels: list[str] | None = None
    index: dict[str, int] = {}
    tolerance: float | None = None
    values: dict[tuple[int, int], float] = {}
    saw_sigma = False
    line_no = 0

    def fail(reason: str) -> TableParseError:
        return TableParseError(path, line_no, reason)

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("points:"):
            if labels is not None:
                raise fail("duplicate points: line")
            labels = line[len("points:") :].split()
            if not labels:
                raise fail("points: line names no points")
            for label in labels:
                if label in index:
                    raise fail(f"duplicate point label '{label}'")
                index[label] = len(index)
            continue
        if labels is None:
            raise fail("first directive must be a points: line")
        if line.startswith("tolerance:"):
            if tolerance is not None:
                raise fail("duplicate tolerance: line")
            if saw_sigma:
                raise fail("tolerance: must come before sigma: lines")
            body = line[len("tolerance:") :].strip()
            try:
                tolerance = float(body)
            except ValueError:
                raise fail(f"cannot read tolerance value {body!r}") from None
            if not (math.isfinite(tolerance) and tolerance >= 0.0):
                raise fail("tolerance must be a non-negative finite real")
            continue
        if line.startswith("sigma:"):
            saw_sigma = True
            parts = line[len("sigma:") :].split()
            if len(parts) != 3:
                raise fail("sigma: line needs exactly '<P> <Q> <value>'")
            p, q, raw_value = parts
            if p not in index:
                raise fail(f"sigma: references unknown point '{p}'")
            if q not in index:
                raise fail(f"sigma: references unknown point '{q}'")
            try:
                value = float(raw_value)
            except ValueError:
                raise fail(f"cannot read sigma value {raw_value!r}") from None
            key = (index[p], index[q])
            eps = DEFAULT_TOLERANCE if tolerance is None else tolerance
            if key in values:
                if not (abs(values[key] - value) <= eps):
                    raise fail(
                        f"pair ({p}, {q}) already has value {values[key]!r}, "
                        f"conflicting with {value!r}"
                    )
                continue
            values[key] = value
            continue
        raise fail(f"unknown directive in line {line!r}")

    line_no += 1  # report end-of-file problems just past the last line
    if labels is None:
        raise fail("file contains no points: line")

    n = len(labels)
    matrix = np.zeros((n, n), dtype=float)
    for i in range(n):
        for j in range(i + 1, n):
            forward, backward = values.get((i, j)), values.get((j, i))
            if forward is None and backward is None:
                raise fail(f"no sigma value for pair ({labels[i]}, {labels[j]})")
            matrix[i, j] = backward if forward is None else forward
            matrix[j, i] = forward if backward is None else backward
        if (i, i) in values:
            matrix[i, i] = values[(i, i)]

    return ParsedTable(
        path=path, labels=tuple(labels), tolerance=tolerance, matrix=matrix
    )


def parse_table_file(path: str | Path) -> ParsedTable:
    return parse_table_text(Path(path).read_text(encoding="utf-8"), path=str(path))


def validation_problems(parsed: ParsedTable, tolerance: float | None = None) -> list[str]:
    """Semantic problems of a parsed table: bad diagonal, non-finite values."""
    eps = parsed.effective_tolerance if tolerance is None else tolerance
    problems = []
    m = parsed.matrix
    for i, label in enumerate(parsed.labels):
        if not (abs(m[i, i]) <= eps):
            problems.append(
                f"diagonal value for ({label}, {label}) is {m[i, i]!r}, "
                f"beyond tolerance {eps!r}"
            )
    for i, j in np.argwhere(~np.isfinite(m)):
        problems.append(
            f"value for ({parsed.labels[i]}, {parsed.labels[j]}) is not finite"
        )
    return problems


def space_from_parsed(
    parsed: ParsedTable, tolerance: float | None = None
) -> SigmaSpace:
    eps = parsed.effective_tolerance if tolerance is None else tolerance
    return SigmaSpace(parsed.labels, parsed.matrix, tolerance=eps)


def load_space(path: str | Path, tolerance: float | None = None) -> SigmaSpace:
    """Parse and validate a table file into a space."""
    return space_from_parsed(parse_table_file(path), tolerance=tolerance)


def format_space(space: SigmaSpace) -> str:
    """Canonical text form of a space.

    Values are written in shortest round-trip decimal, so parsing the
    output reproduces every σ value bit for bit. Exactly symmetric
    tables are written once per unordered pair and mirrored on input;
    any asymmetry, even below tolerance, switches to writing all ordered
    pairs so nothing is lost. Diagonal values are written only when they
    are not exactly zero.
    """
    m = space.matrix
    n = len(space)
    lines = [
        "points: " + " ".join(space.points),
        f"tolerance: {space.tolerance!r}",
    ]
    exactly_symmetric = bool((m == m.T).all())
    for i in range(n):
        if m[i, i] != 0.0:
            lines.append(
                f"sigma: {space.points[i]} {space.points[i]} {float(m[i, i])!r}"
            )
        for j in range(i + 1, n) if exactly_symmetric else range(n):
            if j == i:
                continue
            lines.append(
                f"sigma: {space.points[i]} {space.points[j]} {float(m[i, j])!r}"
            )
    return "\n".join(lines) + "\n"


def save_space(space: SigmaSpace, path: str | Path) -> None:
    Path(path).write_text(format_space(space), encoding="utf-8")
