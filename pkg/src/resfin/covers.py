"""Covers of the figure-eight graph and the cycle data they carry.

A transitive rank-2 permutation action is the deck data of a pointed cover
of a wedge of two circles.  The cycles of the first generator are the
circles the cover stacks over the first loop; a power of that loop lifts
closed at a point exactly when the cycle length through the point divides
the exponent.  On top sit the finite experiments: scanning covers for
non-closing lifts, and witnesses for power sets together with the range
of quotient orders that provably kill them.
"""

import math
from dataclasses import dataclass
from itertools import islice

from .errors import InputError, InternalError
from .lcmlib import lcm_witness
from .lowindex import enumerate_normal, enumerate_subgroups
from .permrep import PermQuotient, eval_word, is_transitive
from .words import generator, power


def lcm_upto(n: int) -> int:
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    return math.lcm(*range(1, n + 1))


def chebyshev(n: int) -> tuple[int, float]:
    """lcm(1..n) exactly, and its natural log."""
    value = lcm_upto(n)
    return value, math.log(value)


def pnt_window(max_n: int, *, lo: float = 0.5, hi: float = 1.5) -> dict:
    """log lcm(1..n) / n against [lo, hi] for every n up to max_n.

    `verified_from` is the first threshold from which the ratio stays in
    the window all the way to max_n, or None if even max_n misses it.
    """
    if max_n < 1:
        raise InputError(f"max_n must be positive, got {max_n}")
    rows = []
    acc = 1
    for n in range(1, max_n + 1):
        acc = math.lcm(acc, n)
        log = math.log(acc)
        rows.append(
            {
                "n": n,
                "lcm": acc,
                "log_lcm": log,
                "ratio": log / n,
                "in_window": lo <= log / n <= hi,
            }
        )
    verified_from = None
    for row in reversed(rows):
        if not row["in_window"]:
            break
        verified_from = row["n"]
    return {"lo": lo, "hi": hi, "rows": rows, "verified_from": verified_from}


@dataclass(frozen=True)
class CoverAnalysis:
    """Cycle data of the first loop in one cover."""

    cover: PermQuotient
    cycles: tuple[tuple[int, ...], ...]
    x_cycle_lengths: tuple[int, ...]
    basepoint_cycle_length: int

    def __post_init__(self):
        if sum(self.x_cycle_lengths) != self.cover.degree:
            raise InternalError("cycle lengths must add up to the degree")


def analyze_cover(q: PermQuotient) -> CoverAnalysis:
    """Cycle decomposition of the first generator, longest cycles first."""
    if q.rank != 2:
        raise InputError(f"covers of the figure eight have rank 2, got {q.rank}")
    if not is_transitive(q):
        raise InputError("cover must be connected (transitive action)")
    cycles = tuple(sorted(q.gens[0].cycles(), key=lambda c: (-len(c), c[0])))
    basepoint = next(len(c) for c in cycles if q.basepoint in c)
    return CoverAnalysis(
        cover=q,
        cycles=cycles,
        x_cycle_lengths=tuple(len(c) for c in cycles),
        basepoint_cycle_length=basepoint,
    )


def _cycle_length_through(q: PermQuotient, point: int) -> int:
    x = q.gens[0]
    length = 1
    cur = x.apply(point)
    while cur != point:
        cur = x.apply(cur)
        length += 1
    return length


def lift_closed(q: PermQuotient, point: int, exponent: int) -> bool:
    """Does the lift of the first loop's exponent-th power close at point?

    Closure happens exactly when the cycle length through the point
    divides the exponent, so huge exponents cost one modular reduction
    and never get flattened.
    """
    if q.rank != 2:
        raise InputError(f"covers of the figure eight have rank 2, got {q.rank}")
    if not 1 <= point <= q.degree:
        raise InputError(f"point {point} outside 1..{q.degree}")
    if not isinstance(exponent, int):
        raise InputError(f"exponent must be an integer, got {exponent!r}")
    return exponent % _cycle_length_through(q, point) == 0


def obstruction_scan(m: int, max_degree: int) -> dict:
    """Confirm every non-closing lift of x^lcm(1..m) sits on a long cycle.

    Cycle lengths up to m divide lcm(1..m), so a cycle whose lift fails to
    close must be longer than m; a counterexample is an internal error,
    and the report carries the counts that back the claim.
    """
    if m < 1:
        raise InputError(f"m must be positive, got {m}")
    ell = lcm_upto(m)
    rows = []
    total_points = 0
    total_non_closing = 0
    total_covers = 0
    for degree in range(1, max_degree + 1):
        covers = 0
        non_closing = 0
        for q in enumerate_subgroups(2, degree):
            covers += 1
            for cycle in analyze_cover(q).cycles:
                if ell % len(cycle) == 0:
                    continue
                non_closing += len(cycle)
                if len(cycle) <= m:
                    raise InternalError(
                        f"non-closing lift on a cycle of length {len(cycle)} <= {m}"
                    )
        rows.append(
            {
                "degree": degree,
                "covers": covers,
                "points": degree * covers,
                "non_closing_points": non_closing,
            }
        )
        total_covers += covers
        total_points += degree * covers
        total_non_closing += non_closing
    return {
        "m": m,
        "lcm": ell,
        "max_degree": max_degree,
        "covers": total_covers,
        "points_checked": total_points,
        "non_closing_points": total_non_closing,
        "violations": [],
        "rows": rows,
    }


def theorem4_experiment(n: int, *, order_cap: int = 8) -> list[dict]:
    """Power-set witness rows for each j up to n.

    Row j builds the witness for {x, ..., x^lcm(1..j)} and scans quotient
    orders upward for the first one where it survives.  Any group of order
    at most lcm(1..j) sends x to an element of such an order, killing a
    target and the witness with it, so a survivor below that is an
    internal error.  The row resolves when the witness is known nontrivial
    and the scan certifies divisibility at least lcm(1..j) + 1.
    """
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    if order_cap < 1:
        raise InputError(f"order cap must be positive, got {order_cap}")
    x = generator(2, 1)
    rows = []
    for j in range(1, n + 1):
        ell = lcm_upto(j)
        cert = lcm_witness([power(x, i) for i in range(1, ell + 1)])
        lower = order_cap + 1
        for q in range(2, order_cap + 1):
            survivor = any(
                not eval_word(quot, cert.word).is_identity
                for quot in enumerate_normal(2, q)
            )
            if survivor:
                if q <= ell:
                    raise InternalError(
                        f"quotient of order {q} kept the witness for lcm {ell} alive"
                    )
                lower = q
                break
        rows.append(
            {
                "n": j,
                "lcm": ell,
                "witness_bound": cert.declared_bound,
                "dnormal_lower": lower,
                "resolved": cert.nontrivial_verified and lower >= ell + 1,
            }
        )
    return rows
