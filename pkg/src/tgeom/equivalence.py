"""Vector equivalence over a finite σ-space.

Two anchored vectors are equivalent when their scalar products against
every ordered probe pair agree, in both argument slots, within the
space tolerance. The quantifier is materialized as a fingerprint: the
full grid of probe responses. Fingerprint entries are computed with the
same term order as :func:`tgeom.vectors.scalar_product`, so the two
paths agree bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .space import PointId, SigmaSpace
from .vectors import Vector

SIDE_FIRST = "first-slot"
SIDE_SECOND = "second-slot"


def product_grids(space: SigmaSpace, v: Vector) -> tuple[np.ndarray, np.ndarray]:
    """Probe-response grids of one vector.

    Returns two (n, n) arrays indexed [q0, q1]: the first holds the
    scalar products with v in the first argument slot, the second with v
    in the second slot.
    """
    v = Vector(*v)
    m = space.matrix
    i0, i1 = space.index(v.origin), space.index(v.end)
    first = ((m[i0][None, :] + m[i1][:, None]) - m[i0][:, None]) - m[i1][None, :]
    second = ((m[:, i1][:, None] + m[:, i0][None, :]) - m[:, i0][:, None]) - m[
        :, i1
    ][None, :]
    return first, second


@dataclass(frozen=True)
class Fingerprint:
    """Flat probe responses of one vector.

    values lists the first-slot grid row-major, then the second-slot
    grid row-major, for a total length of 2·n². Two vectors are
    equivalent exactly when their fingerprints agree componentwise
    within the space tolerance.
    """

    values: np.ndarray

    def agrees_with(self, other: "Fingerprint", tolerance: float) -> bool:
        return bool((np.abs(self.values - other.values) <= tolerance).all())


def fingerprint(space: SigmaSpace, v: Vector) -> Fingerprint:
    first, second = product_grids(space, v)
    values = np.concatenate([first.ravel(), second.ravel()])
    values.setflags(write=False)
    return Fingerprint(values)


@dataclass(frozen=True)
class Counterexample:
    """First probe at which two vectors disagree."""

    probe_origin: PointId
    probe_end: PointId
    side: str  # SIDE_FIRST or SIDE_SECOND
    lhs: float
    rhs: float


@dataclass(frozen=True)
class EquivalenceWitness:
    equivalent: bool
    counterexample: Counterexample | None = None

    def __bool__(self) -> bool:
        return self.equivalent


def equivalent(space: SigmaSpace, v: Vector, w: Vector) -> EquivalenceWitness:
    """Decide equivalence of two vectors, with a deterministic witness.

    Probes are scanned in point-list order (origin-major); all
    first-slot comparisons run before any second-slot comparison, and
    the first failing probe is returned as the counterexample.
    """
    v, w = Vector(*v), Vector(*w)
    eps = space.tolerance
    n = len(space)
    v_first, v_second = product_grids(space, v)
    w_first, w_second = product_grids(space, w)
    for side, left, right in (
        (SIDE_FIRST, v_first, w_first),
        (SIDE_SECOND, v_second, w_second),
    ):
        mask = np.abs(left - right) > eps
        if mask.any():
            flat = int(np.argmax(mask))  # first True in row-major probe order
            q0, q1 = divmod(flat, n)
            return EquivalenceWitness(
                equivalent=False,
                counterexample=Counterexample(
                    probe_origin=space.points[q0],
                    probe_end=space.points[q1],
                    side=side,
                    lhs=float(left[q0, q1]),
                    rhs=float(right[q0, q1]),
                ),
            )
    return EquivalenceWitness(equivalent=True)


@dataclass(frozen=True)
class ClassPartition:
    """Partition of all n² vectors of a space into equivalence classes.

    method records how the partition was obtained: "fingerprint-buckets"
    when quantized-fingerprint hashing was verified to be consistent, or
    "union-find" when tolerance effects forced an explicit pairwise
    closure. coherent is False when the closure glued together vectors
    that do not all agree pairwise, which can only happen at tolerance
    boundaries where the relation stops being transitive; such spaces
    are reported rather than silently forced into a clean partition.
    """

    classes: tuple[tuple[Vector, ...], ...]
    method: str
    coherent: bool

    def __len__(self) -> int:
        return len(self.classes)

    def class_of(self, v: Vector) -> tuple[Vector, ...]:
        v = Vector(*v)
        for cls in self.classes:
            if v in cls:
                return cls
        raise KeyError(f"vector {v} not in partition")


class _UnionFind:
    """Disjoint sets over range(n), union by rank with path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1


def _fingerprint_matrix(space: SigmaSpace) -> tuple[list[Vector], np.ndarray]:
    """All n² vectors in index order with their stacked fingerprints."""
    n = len(space)
    points = space.points
    vectors = [Vector(points[i], points[j]) for i in range(n) for j in range(n)]
    rows = np.empty((n * n, 2 * n * n), dtype=float)
    for k, vec in enumerate(vectors):
        first, second = product_grids(space, vec)
        rows[k, : n * n] = first.ravel()
        rows[k, n * n :] = second.ravel()
    return vectors, rows


def equivalence_classes(space: SigmaSpace) -> ClassPartition:
    """Partition all vectors of the space into equivalence classes.

    Fast path: fingerprints are quantized to multiples of the tolerance
    and hashed into buckets; every within-bucket pair is then verified,
    and bucket representatives are cross-checked so a boundary split
    cannot slip through. Quantization is only an accelerator: any
    inconsistency falls back to an explicit union-find closure over
    pairwise comparisons. Output order is deterministic: vectors inside
    a class sorted lexicographically, classes sorted by first member.
    """
    eps = space.tolerance
    vectors, rows = _fingerprint_matrix(space)
    count = len(vectors)

    def agree(a: int, b: int) -> bool:
        return bool((np.abs(rows[a] - rows[b]) <= eps).all())

    buckets: dict[tuple, list[int]] = {}
    for k in range(count):
        if eps > 0.0:
            key = tuple(np.rint(rows[k] / eps).tolist())
        else:
            key = tuple(rows[k].tolist())
        buckets.setdefault(key, []).append(k)

    groups = list(buckets.values())
    consistent = all(
        agree(a, b)
        for members in groups
        for i, a in enumerate(members)
        for b in members[i + 1 :]
    )
    if consistent:
        # Representatives of distinct buckets must be inequivalent, else
        # quantization split a class at a boundary.
        reps = [members[0] for members in groups]
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                if agree(reps[i], reps[j]):
                    consistent = False
                    break
            if not consistent:
                break

    if consistent:
        classes = groups
        method = "fingerprint-buckets"
        coherent = True
    else:
        uf = _UnionFind(count)
        for a in range(count):
            for b in range(a + 1, count):
                if agree(a, b):
                    uf.union(a, b)
        by_root: dict[int, list[int]] = {}
        for k in range(count):
            by_root.setdefault(uf.find(k), []).append(k)
        classes = list(by_root.values())
        method = "union-find"
        coherent = all(
            agree(a, b)
            for members in classes
            for i, a in enumerate(members)
            for b in members[i + 1 :]
        )

    sorted_classes = sorted(
        tuple(sorted(vectors[k] for k in members)) for members in classes
    )
    return ClassPartition(
        classes=tuple(sorted_classes), method=method, coherent=coherent
    )
