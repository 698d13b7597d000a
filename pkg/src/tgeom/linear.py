"""Restricted linear operations on anchored vectors.

Negation and chained sums exist in every σ-space; together with the
trivial zero and single-vector cases they form the minimal linear
structure that survives any deformation. A general combination
α·v + β·w exists only when some point pair reproduces the combined
probe responses of v and w, which :func:`solve_combination` decides by
exhaustive search. :func:`survey_linearity` counts, per coefficient
pair, how much of that structure a given space retains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ChainMismatch, NotGuaranteed, SearchLimitExceeded
from .equivalence import _fingerprint_matrix, product_grids
from .space import SigmaSpace
from .vectors import Vector

SEARCH_LIMIT = 40


@dataclass(frozen=True)
class Coefficients:
    """Real coefficient pair (alpha, beta) of a linear combination."""

    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError("coefficients must be finite reals")


class GuaranteedCase(Enum):
    """The combinations that are defined in every space.

    Classification depends only on the coefficients and on endpoint
    coincidences, never on the world function, so it is invariant under
    any deformation of the space.
    """

    ZERO = "zero"
    SINGLE_VECTOR = "single-vector"
    CHAIN_SUM = "chain-sum"
    COMMON_ENDPOINT_DIFFERENCE = "common-endpoint-difference"


def negate(v: Vector) -> Vector:
    """Reversal of a vector; its probe responses are exactly negated."""
    v = Vector(*v)
    return Vector(v.end, v.origin)


def chain_sum(v: Vector, w: Vector) -> Vector:
    """Sum of two chained vectors (end of the first = origin of the second)."""
    v, w = Vector(*v), Vector(*w)
    if v.end != w.origin:
        raise ChainMismatch(
            f"cannot add {v} and {w}: vectors are anchored, so the end of one "
            f"must be the origin of the other"
        )
    return Vector(v.origin, w.end)


def _coefficient_pattern(a: float, b: float) -> GuaranteedCase | None:
    """Case the coefficients alone could support; endpoints decide the rest."""
    if a == 0.0 and b == 0.0:
        return GuaranteedCase.ZERO
    if (a == 0.0 and b in (1.0, -1.0)) or (b == 0.0 and a in (1.0, -1.0)):
        return GuaranteedCase.SINGLE_VECTOR
    if a == b and a in (1.0, -1.0):
        return GuaranteedCase.CHAIN_SUM
    if a == -b and a in (1.0, -1.0):
        return GuaranteedCase.COMMON_ENDPOINT_DIFFERENCE
    return None


def guaranteed_case(
    space: SigmaSpace, c: Coefficients, v: Vector, w: Vector
) -> GuaranteedCase | None:
    """Classify a combination request against the always-defined cases.

    Coefficient matching is exact (bit equality with 0 and ±1): case
    membership is a structural claim, so numeric slack belongs only in
    world-function comparisons. Anything else returns None and is left
    to the exhaustive solver.
    """
    v, w = Vector(*v), Vector(*w)
    for label in (v.origin, v.end, w.origin, w.end):
        space.index(label)
    pattern = _coefficient_pattern(c.alpha, c.beta)
    if pattern in (GuaranteedCase.ZERO, GuaranteedCase.SINGLE_VECTOR):
        return pattern
    if pattern is GuaranteedCase.CHAIN_SUM and (
        v.end == w.origin or w.end == v.origin
    ):
        return pattern
    if pattern is GuaranteedCase.COMMON_ENDPOINT_DIFFERENCE and (
        v.end == w.end or v.origin == w.origin
    ):
        return pattern
    return None


def construct_guaranteed(
    space: SigmaSpace, c: Coefficients, v: Vector, w: Vector
) -> Vector:
    """Representative of a guaranteed combination, built without search.

    When both endpoint coincidences of a case hold simultaneously the
    first one in the documented order wins (end-of-v = origin-of-w for
    chains, end = end for differences).
    """
    v, w = Vector(*v), Vector(*w)
    case = guaranteed_case(space, c, v, w)
    if case is None:
        raise NotGuaranteed(
            f"alpha={c.alpha!r}, beta={c.beta!r} with endpoints {v}, {w} "
            f"matches no always-defined case"
        )
    if case is GuaranteedCase.ZERO:
        return Vector(v.origin, v.origin)
    if case is GuaranteedCase.SINGLE_VECTOR:
        base, sign = (v, c.alpha) if c.beta == 0.0 else (w, c.beta)
        return base if sign == 1.0 else negate(base)
    if case is GuaranteedCase.CHAIN_SUM:
        if v.end == w.origin:
            out = Vector(v.origin, w.end)
        else:
            out = Vector(w.origin, v.end)
        return out if c.alpha == 1.0 else negate(out)
    # Common-endpoint difference: v - w up to overall sign.
    if v.end == w.end:
        out = Vector(v.origin, w.origin)
    else:
        out = Vector(w.end, v.end)
    return out if c.alpha == 1.0 else negate(out)


@dataclass(frozen=True)
class CombinationResult:
    """All solutions of one combination request.

    solutions lists every point pair whose probe responses match
    α·v + β·w in both argument slots within tolerance, sorted
    lexicographically; an empty list means the combination is not
    defined in this space. guaranteed carries the matching
    always-defined case, if any, and method records whether a
    constructive representative existed ("constructed") or the result
    rests on search alone ("searched").
    """

    solutions: tuple[Vector, ...]
    guaranteed: GuaranteedCase | None
    method: str

    @property
    def defined(self) -> bool:
        return bool(self.solutions)


def _check_limit(space: SigmaSpace, limit: int, force: bool) -> None:
    n = len(space)
    if not force and n > limit:
        raise SearchLimitExceeded(
            f"{n} points exceeds the search limit of {limit}; "
            f"pass force=True to run anyway"
        )


def solve_combination(
    space: SigmaSpace,
    c: Coefficients,
    v: Vector,
    w: Vector,
    *,
    limit: int = SEARCH_LIMIT,
    force: bool = False,
) -> CombinationResult:
    """Exhaustively solve α·v + β·w over all candidate point pairs.

    A candidate (S0, S1) is a solution when its probe-response grids
    match α·(grids of v) + β·(grids of w) componentwise within the
    space tolerance, in both argument slots. Candidates are first pruned
    against the probe row anchored at the first point, then survivors
    are verified against the full grids; the pruning row is computed
    with the identical expression, so no true solution can be dropped.
    """
    _check_limit(space, limit, force)
    v, w = Vector(*v), Vector(*w)
    n = len(space)
    m = space.matrix
    eps = space.tolerance
    a, b = c.alpha, c.beta

    v1, v2 = product_grids(space, v)
    w1, w2 = product_grids(space, w)
    target_first = a * v1 + b * w1
    target_second = a * v2 + b * w2

    # Prune on the first-slot responses to probes (points[0], q1):
    # row[s0, s1, q1] = ((m[s0,q1] + m[s1,0]) - m[s0,0]) - m[s1,q1]
    col0 = m[:, 0]
    row = ((m[:, None, :] + col0[None, :, None]) - col0[:, None, None]) - m[None, :, :]
    survivors = np.argwhere(
        (np.abs(row - target_first[0][None, None, :]) <= eps).all(axis=2)
    )

    solutions: list[Vector] = []
    for s0, s1 in survivors:
        candidate = Vector(space.points[int(s0)], space.points[int(s1)])
        c1, c2 = product_grids(space, candidate)
        if (np.abs(c1 - target_first) <= eps).all() and (
            np.abs(c2 - target_second) <= eps
        ).all():
            solutions.append(candidate)
    solutions.sort()

    case = guaranteed_case(space, c, v, w)
    return CombinationResult(
        solutions=tuple(solutions),
        guaranteed=case,
        method="constructed" if case is not None else "searched",
    )


@dataclass(frozen=True)
class SurveyRow:
    alpha: float
    beta: float
    total_pairs: int
    solvable: int
    guaranteed: int
    unsolvable: int


@dataclass(frozen=True)
class SurveyReport:
    """Per-coefficient solvability counts over all ordered vector pairs."""

    rows: tuple[SurveyRow, ...]

    CSV_HEADER = "alpha,beta,total_pairs,solvable,guaranteed,unsolvable"

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for row in self.rows:
            lines.append(
                f"{row.alpha!r},{row.beta!r},{row.total_pairs},"
                f"{row.solvable},{row.guaranteed},{row.unsolvable}"
            )
        return "\n".join(lines) + "\n"


def survey_linearity(
    space: SigmaSpace,
    coeff_list: list[Coefficients],
    *,
    limit: int = SEARCH_LIMIT,
    force: bool = False,
) -> SurveyReport:
    """Count solvable / guaranteed / unsolvable vector pairs per coefficients.

    For every coefficient pair, all n⁴ ordered pairs of vectors (v, w)
    are classified: a pair is solvable when at least one candidate
    solves the combination, and guaranteed when an always-defined case
    applies. Vectors with bitwise-identical fingerprints are collapsed
    before the existence checks, which leaves per-pair semantics intact
    (identical fingerprints give identical targets) while making grid
    surveys cheap.
    """
    _check_limit(space, limit, force)
    n = len(space)
    eps = space.tolerance
    vectors, rows_fp = _fingerprint_matrix(space)
    count = len(vectors)

    groups: dict[bytes, list[int]] = {}
    for k in range(count):
        groups.setdefault(rows_fp[k].tobytes(), []).append(k)
    reps = [(members[0], len(members)) for members in groups.values()]

    # Endpoint index arrays for the coincidence counts: vector k has
    # origin index k // n and end index k % n.
    origins = np.repeat(np.arange(n), n)
    ends = np.tile(np.arange(n), n)

    out: list[SurveyRow] = []
    for c in coeff_list:
        a, b = c.alpha, c.beta
        solvable = 0
        for rep_v, size_v in reps:
            fv = rows_fp[rep_v]
            for rep_w, size_w in reps:
                target = a * fv + b * rows_fp[rep_w]
                exists = bool(
                    (np.abs(rows_fp - target[None, :]) <= eps).all(axis=1).any()
                )
                if exists:
                    solvable += size_v * size_w

        pattern = _coefficient_pattern(a, b)
        if pattern in (GuaranteedCase.ZERO, GuaranteedCase.SINGLE_VECTOR):
            guaranteed = count * count
        elif pattern is GuaranteedCase.CHAIN_SUM:
            chained = (ends[:, None] == origins[None, :]) | (
                origins[:, None] == ends[None, :]
            )
            guaranteed = int(np.count_nonzero(chained))
        elif pattern is GuaranteedCase.COMMON_ENDPOINT_DIFFERENCE:
            shared = (ends[:, None] == ends[None, :]) | (
                origins[:, None] == origins[None, :]
            )
            guaranteed = int(np.count_nonzero(shared))
        else:
            guaranteed = 0

        total = count * count
        out.append(
            SurveyRow(
                alpha=a,
                beta=b,
                total_pairs=total,
                solvable=solvable,
                guaranteed=guaranteed,
                unsolvable=total - solvable,
            )
        )
    return SurveyReport(rows=tuple(out))
