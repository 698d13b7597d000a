"""Finite σ-spaces: a point set Ω plus an evaluable world function.

A world function assigns a real value to every ordered point pair and
vanishes on the diagonal; no other constraint is imposed, so asymmetric
and negative values are legal inputs. A space is either table-backed
(explicit dense matrix) or coordinate-backed (points carry coordinates
and the world function is half the squared Euclidean distance).

Spaces are immutable once constructed and evaluation is a pure read, so
any number of concurrent readers is safe; mutating operations such as
:func:`perturb_table` return new spaces.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateEntry,
    DuplicateLabel,
    EmptySpace,
    MissingEntry,
    NonFiniteValue,
    NonzeroDiagonal,
    UnknownPoint,
)

PointId = str

DEFAULT_TOLERANCE = 1e-9


def _first_duplicate(labels: Sequence[str]) -> str | None:
    seen: set[str] = set()
    for label in labels:
        if label in seen:
            return label
        seen.add(label)
    return None


def euclidean_sigma(x: Sequence[float], y: Sequence[float]) -> float:
    """Half the squared Euclidean distance between two coordinate vectors.

    This scaling is the one under which the four-term scalar product of
    two point pairs reduces to the ordinary dot product of their
    displacement vectors. Exactly symmetric in its arguments for every
    input, since the summands are identical floats either way.
    """
    if len(x) != len(y):
        raise DimensionMismatch(
            f"cannot pair a {len(x)}-dimensional point with a {len(y)}-dimensional one"
        )
    return 0.5 * sum((a - b) ** 2 for a, b in zip(x, y))


class SigmaSpace:
    """Immutable finite σ-space.

    Attributes:
        points: point labels in construction order (the finite Ω).
        tolerance: absolute ε used by every equality comparison on values
            derived from this space.

    Instances are normally built through :func:`build_finite_table`,
    :func:`build_coordinate_space` or :func:`build_grid_space`; direct
    construction takes a ready dense matrix. Validation (zero diagonal,
    finiteness, unique labels) always runs here, so every live space
    satisfies the invariants.
    """

    __slots__ = ("points", "tolerance", "_matrix", "_coords", "_index")

    def __init__(
        self,
        points: Iterable[PointId],
        matrix: np.ndarray | Sequence[Sequence[float]],
        *,
        coords: Mapping[PointId, Sequence[float]] | None = None,
        tolerance: float = DEFAULT_TOLERANCE,
    ):
        labels = tuple(str(p) for p in points)
        if not labels:
            raise EmptySpace("a space needs at least one point")
        dup = _first_duplicate(labels)
        if dup is not None:
            raise DuplicateLabel(f"point label '{dup}' occurs more than once")
        tolerance = float(tolerance)
        if not (tolerance >= 0.0):
            raise ValueError("tolerance must be a non-negative real")

        m = np.array(matrix, dtype=float)
        n = len(labels)
        if m.shape != (n, n):
            raise ValueError(f"expected a {n}x{n} matrix, got shape {m.shape}")
        if not np.isfinite(m).all():
            i, j = np.argwhere(~np.isfinite(m))[0]
            raise NonFiniteValue(
                f"value for pair ({labels[i]}, {labels[j]}) is not a finite real"
            )
        diag = np.abs(np.diagonal(m))
        if (diag > tolerance).any():
            k = int(np.argmax(diag > tolerance))
            raise NonzeroDiagonal(
                f"value for ({labels[k]}, {labels[k]}) is {m[k, k]!r}, "
                f"beyond tolerance {tolerance!r}"
            )
        m.setflags(write=False)

        self.points = labels
        self.tolerance = tolerance
        self._matrix = m
        self._index = {label: i for i, label in enumerate(labels)}
        if coords is None:
            self._coords = None
        else:
            self._coords = {
                str(k): tuple(float(c) for c in v) for k, v in coords.items()
            }

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __repr__(self) -> str:
        return f"SigmaSpace({len(self.points)} points, {self.backing}-backed)"

    @property
    def matrix(self) -> np.ndarray:
        """Dense matrix of world-function values, read-only.

        Row i, column j holds the value for the ordered pair
        (points[i], points[j]). This is the one accessor shared with the
        naive reference implementations.
        """
        return self._matrix

    @property
    def backing(self) -> str:
        return "table" if self._coords is None else "coordinates"

    def index(self, label: PointId) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownPoint(f"unknown point '{label}'") from None

    def sigma(self, p: PointId, q: PointId) -> float:
        """World-function value for the ordered pair (p, q)."""
        return float(self._matrix[self.index(p), self.index(q)])

    def coordinates(self, label: PointId) -> tuple[float, ...] | None:
        """Coordinates of a point, or None for table-backed spaces."""
        self.index(label)
        if self._coords is None:
            return None
        return self._coords[label]


def build_finite_table(
    labels: Iterable[PointId],
    entries: Iterable[tuple[PointId, PointId, float]],
    tolerance: float = DEFAULT_TOLERANCE,
) -> SigmaSpace:
    """Build a table-backed space from explicit per-pair values.

    Every off-diagonal ordered pair must be determined exactly once: an
    entry may be given for just one direction of a pair, in which case
    the value is mirrored to the other direction (asymmetric spaces
    simply list both directions). Diagonal entries are optional and
    default to zero; a supplied diagonal beyond the tolerance is
    rejected. Repeating an ordered pair is an error unless the values
    agree within the tolerance, in which case the first one wins.
    """
    label_list = [str(p) for p in labels]
    dup = _first_duplicate(label_list)
    if dup is not None:
        raise DuplicateLabel(f"point label '{dup}' occurs more than once")
    if not label_list:
        raise EmptySpace("a space needs at least one point")
    idx = {label: i for i, label in enumerate(label_list)}
    n = len(label_list)

    grid: list[list[float | None]] = [[None] * n for _ in range(n)]
    for p, q, value in entries:
        if p not in idx:
            raise UnknownPoint(f"entry references unknown point '{p}'")
        if q not in idx:
            raise UnknownPoint(f"entry references unknown point '{q}'")
        i, j = idx[p], idx[q]
        value = float(value)
        previous = grid[i][j]
        if previous is not None:
            if not (abs(value - previous) <= tolerance):
                raise DuplicateEntry(
                    f"pair ({p}, {q}) given twice with conflicting values "
                    f"{previous!r} and {value!r}"
                )
            continue
        grid[i][j] = value

    for i in range(n):
        for j in range(i + 1, n):
            if grid[i][j] is None and grid[j][i] is None:
                raise MissingEntry(
                    f"no value for pair ({label_list[i]}, {label_list[j]})"
                )
            if grid[i][j] is None:
                grid[i][j] = grid[j][i]
            elif grid[j][i] is None:
                grid[j][i] = grid[i][j]
        if grid[i][i] is None:
            grid[i][i] = 0.0

    return SigmaSpace(label_list, np.array(grid, dtype=float), tolerance=tolerance)


def build_coordinate_space(
    coords: Mapping[PointId, Sequence[float]],
    tolerance: float = DEFAULT_TOLERANCE,
) -> SigmaSpace:
    """Build a coordinate-backed space; σ is half the squared distance."""
    labels = [str(k) for k in coords]
    if not labels:
        raise EmptySpace("a space needs at least one point")
    vectors = [tuple(float(c) for c in coords[k]) for k in coords]
    dim = len(vectors[0])
    if dim < 1:
        raise DimensionMismatch("coordinate vectors must have dimension >= 1")
    for label, vec in zip(labels, vectors):
        if len(vec) != dim:
            raise DimensionMismatch(
                f"point '{label}' has dimension {len(vec)}, expected {dim}"
            )
        if not all(math.isfinite(c) for c in vec):
            raise NonFiniteValue(f"coordinates of point '{label}' are not finite")

    n = len(labels)
    m = np.empty((n, n), dtype=float)
    for i in range(n):
        for j in range(n):
            m[i, j] = euclidean_sigma(vectors[i], vectors[j])
    return SigmaSpace(
        labels, m, coords=dict(zip(labels, vectors)), tolerance=tolerance
    )


@dataclass(frozen=True)
class GridSpec:
    """Integer grid {0..size-1}^dim with an optional set of deleted cells."""

    dim: int
    size: int
    deleted: frozenset[tuple[int, ...]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("grid dimension must be a positive integer")
        if self.size < 1:
            raise ValueError("grid size must be a positive integer")
        cells = frozenset(tuple(int(c) for c in cell) for cell in self.deleted)
        object.__setattr__(self, "deleted", cells)
        for cell in cells:
            if len(cell) != self.dim or not all(0 <= c < self.size for c in cell):
                raise ValueError(
                    f"deleted cell {cell} lies outside the "
                    f"{self.dim}-dimensional grid of size {self.size}"
                )


def grid_label(cell: Sequence[int]) -> str:
    """Canonical label of a grid cell, e.g. (0, 1) -> 'p0_1'."""
    return "p" + "_".join(str(int(c)) for c in cell)


def build_grid_space(spec: GridSpec, tolerance: float = DEFAULT_TOLERANCE) -> SigmaSpace:
    """Coordinate-backed space over an integer grid minus deleted cells.

    Point order is row-major over the grid, so output is deterministic.
    All values are half-integers, hence exactly representable.
    """
    cells = [
        cell
        for cell in itertools.product(range(spec.size), repeat=spec.dim)
        if cell not in spec.deleted
    ]
    if not cells:
        raise EmptySpace("every grid cell was deleted")
    coords = {grid_label(cell): tuple(float(c) for c in cell) for cell in cells}
    return build_coordinate_space(coords, tolerance=tolerance)


def is_symmetric(space: SigmaSpace) -> bool:
    """True when σ(P, Q) and σ(Q, P) agree within tolerance for all pairs."""
    m = space.matrix
    return bool((np.abs(m - m.T) <= space.tolerance).all())


def perturb_table(
    space: SigmaSpace,
    deltas: Iterable[tuple[PointId, PointId, float]],
) -> SigmaSpace:
    """New table-backed space with per-pair offsets added to σ.

    Offsets on the same pair accumulate. The result is re-validated, so
    a perturbation pushing a diagonal value beyond tolerance or producing
    a non-finite value is rejected.
    """
    m = np.array(space.matrix, dtype=float)
    for p, q, delta in deltas:
        i, j = space.index(p), space.index(q)
        m[i, j] = m[i, j] + float(delta)
    return SigmaSpace(space.points, m, tolerance=space.tolerance)


def as_table(space: SigmaSpace) -> SigmaSpace:
    """Table-backed copy of any space (σ values are carried over exactly)."""
    return SigmaSpace(space.points, np.array(space.matrix), tolerance=space.tolerance)
