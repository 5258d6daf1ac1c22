"""Exhaustive enumeration of finite-index subgroups and normal subgroups.

Subgroups of index d in F_m are enumerated as pointed transitive actions on
d points, normal subgroups of index q as regular actions on q points. The
search fills a partial permutation table slot by slot in a fixed scan order
(point by point, each generator forward then backward), introducing fresh
points only at their first reference. That discipline makes every finished
table its own canonical form, so each subgroup and each kernel is produced
exactly once, with no abstract-group catalog anywhere.

Regular mode adds three sound pruning devices on top:
  - every table entry that joins two known points yields a word fixing the
    basepoint, which in a regular action must act trivially; those words
    are rescanned from every point, contradictions cut the branch, and
    single-gap scans force table entries,
  - generator cycles must share one length dividing the degree,
  - finished tables are still checked with is_regular before emission.
"""

from __future__ import annotations

import functools
from typing import Iterator

from .errors import InputError, InternalError, ResourceError
from .permrep import (
    MAX_ENCODABLE_DEGREE,
    PermQuotient,
    Permutation,
    canonical_key,
    eval_word,
    is_regular,
    is_transitive,
)
from .words import FreeWord, enumerate_ball

DEFAULT_DEGREE_CAP = 16

_CACHE_PLAIN_LIMIT = 6
_CACHE_REGULAR_LIMIT = 12


def _reduce_tuple(raw):
    stack = []
    for letter in raw:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def _search(rank: int, degree: int, regular: bool) -> Iterator[PermQuotient]:
    m = rank
    fwd = [[-1] * degree for _ in range(m)]
    bwd = [[-1] * degree for _ in range(m)]
    state = {"used": 1}
    bfs_word: list[tuple[int, ...]] = [()]
    relators: list[tuple[int, ...]] = []
    relator_set: set[tuple[int, ...]] = set()
    cycle_len = [0] * m
    trail: list[tuple] = []

    def add_edge(a: int, g: int, b: int) -> bool:
        fwd[g][a] = b
        bwd[g][b] = a
        trail.append(("edge", a, g, b))
        if not regular:
            return True
        # a closed generator cycle must have one shared length dividing
        # the degree (cycles of right translation are cosets)
        length = 1
        cur = b
        while cur != a and fwd[g][cur] >= 0:
            cur = fwd[g][cur]
            length += 1
        if cur == a:
            if degree % length != 0:
                return False
            if cycle_len[g] == 0:
                cycle_len[g] = length
                trail.append(("len", g))
            elif cycle_len[g] != length:
                return False
        return True

    def add_relator(a: int, g: int, b: int) -> None:
        inv_b = tuple(-letter for letter in reversed(bfs_word[b]))
        rel = _reduce_tuple(bfs_word[a] + (g + 1,) + inv_b)
        if rel and rel not in relator_set:
            relators.append(rel)
            relator_set.add(rel)
            trail.append(("rel",))

    def deduce(letter: int, src: int, dst: int) -> bool:
        """Force the gap step: letter carries src to dst."""
        if letter > 0:
            a, g, b = src, letter - 1, dst
        else:
            a, g, b = dst, -letter - 1, src
        if fwd[g][a] >= 0 or bwd[g][b] >= 0:
            return False
        if not add_edge(a, g, b):
            return False
        add_relator(a, g, b)
        return True

    def propagate() -> bool:
        changed = True
        while changed:
            changed = False
            i = 0
            while i < len(relators):
                rel = relators[i]
                i += 1
                for start in range(state["used"]):
                    cur = start
                    pos = 0
                    while pos < len(rel):
                        letter = rel[pos]
                        g = abs(letter) - 1
                        nxt = fwd[g][cur] if letter > 0 else bwd[g][cur]
                        if nxt < 0:
                            break
                        cur = nxt
                        pos += 1
                    if pos == len(rel):
                        if cur != start:
                            return False
                        continue
                    # walk backward from the endpoint to bracket the gap
                    end = start
                    j = len(rel) - 1
                    while j > pos:
                        letter = rel[j]
                        g = abs(letter) - 1
                        prv = bwd[g][end] if letter > 0 else fwd[g][end]
                        if prv < 0:
                            break
                        end = prv
                        j -= 1
                    if j > pos:
                        continue  # two gaps, nothing to deduce
                    if not deduce(rel[pos], cur, end):
                        return False
                    changed = True
        return True

    def first_slot():
        used = state["used"]
        for p in range(used):
            for g in range(m):
                if fwd[g][p] < 0:
                    return p, g, True
                if bwd[g][p] < 0:
                    return p, g, False
        return None

    def build() -> PermQuotient:
        gens = tuple(Permutation._from_zero(tuple(row)) for row in fwd)
        q = PermQuotient(gens)
        raw = b"".join(bytes(row) for row in fwd)
        if canonical_key(q) != raw:
            raise InternalError("search produced a non-canonical table")
        if regular:
            if not is_regular(q):
                raise InternalError("relator propagation let an irregular table through")
        elif not is_transitive(q):
            raise InternalError("search produced an intransitive table")
        return q

    def rec() -> Iterator[PermQuotient]:
        slot = first_slot()
        if slot is None:
            if state["used"] == degree:
                yield build()
            return
        p, g, forward = slot
        used = state["used"]
        if forward:
            candidates = [r for r in range(used) if bwd[g][r] < 0]
        else:
            candidates = [r for r in range(used) if fwd[g][r] < 0]
        if used < degree:
            candidates.append(used)
        for r in candidates:
            mark = len(trail)
            if r == used:
                letter = (g + 1) if forward else -(g + 1)
                bfs_word.append(bfs_word[p] + (letter,))
                state["used"] = used + 1
                trail.append(("fresh",))
            a, b = (p, r) if forward else (r, p)
            ok = add_edge(a, g, b)
            if ok and regular:
                if r != used:
                    add_relator(a, g, b)
                ok = propagate()
            if ok:
                yield from rec()
            while len(trail) > mark:
                entry = trail.pop()
                kind = entry[0]
                if kind == "edge":
                    _, ea, eg, eb = entry
                    fwd[eg][ea] = -1
                    bwd[eg][eb] = -1
                elif kind == "len":
                    cycle_len[entry[1]] = 0
                elif kind == "rel":
                    relator_set.discard(relators.pop())
                else:
                    bfs_word.pop()
                    state["used"] -= 1

    return rec()


@functools.lru_cache(maxsize=None)
def _materialized(rank: int, degree: int, regular: bool) -> tuple[PermQuotient, ...]:
    return tuple(_search(rank, degree, regular))


def _checked(rank: int, degree: int, max_degree: int, what: str) -> None:
    if not isinstance(rank, int) or rank < 1:
        raise InputError(f"rank must be a positive integer, got {rank!r}")
    if not isinstance(degree, int) or degree < 1:
        raise InputError(f"{what} must be a positive integer, got {degree!r}")
    if degree > max_degree:
        raise ResourceError(f"{what} {degree} exceeds the declared cap {max_degree}")
    if degree > MAX_ENCODABLE_DEGREE:
        raise ResourceError(f"{what} {degree} beyond encodable {MAX_ENCODABLE_DEGREE}")


def enumerate_subgroups(
    rank: int, index: int, *, max_degree: int = DEFAULT_DEGREE_CAP
) -> Iterator[PermQuotient]:
    """One pointed transitive action per index-`index` subgroup of F_rank.

    Deterministic order; every action is transitive of degree exactly
    `index`. Raise the keyword cap explicitly to go beyond the default.
    """
    _checked(rank, index, max_degree, "index")
    if index <= _CACHE_PLAIN_LIMIT:
        return iter(_materialized(rank, index, False))
    return _search(rank, index, False)


def enumerate_normal(
    rank: int, order: int, *, max_degree: int = DEFAULT_DEGREE_CAP
) -> Iterator[PermQuotient]:
    """One regular action per normal subgroup of F_rank with quotient size
    `order` (equivalently, per kernel of a surjection onto a group of that
    order)."""
    _checked(rank, order, max_degree, "order")
    if order <= _CACHE_REGULAR_LIMIT:
        return iter(_materialized(rank, order, True))
    return _search(rank, order, True)


def subgroup_count(rank: int, index: int, *, max_degree: int = DEFAULT_DEGREE_CAP) -> int:
    return sum(1 for _ in enumerate_subgroups(rank, index, max_degree=max_degree))


def normal_count(rank: int, order: int, *, max_degree: int = DEFAULT_DEGREE_CAP) -> int:
    return sum(1 for _ in enumerate_normal(rank, order, max_degree=max_degree))


def normal_subgroup_growth(
    rank: int, n: int, *, max_degree: int = DEFAULT_DEGREE_CAP
) -> int:
    """Number of normal subgroups of index at most n."""
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    return sum(normal_count(rank, q, max_degree=max_degree) for q in range(1, n + 1))


def word_battery(rank: int, order: int) -> tuple[FreeWord, ...]:
    """All reduced words of length up to 2*ceil(log2(order)) + 2.

    Evaluation patterns on this battery separate distinct kernels at the
    orders used here; the tests cross-check that against canonical keys.
    """
    if order < 1:
        raise InputError(f"order must be positive, got {order}")
    radius = 2 * (order - 1).bit_length() + 2
    return tuple(enumerate_ball(rank, radius))


def kernel_fingerprint(q: PermQuotient, battery: tuple[FreeWord, ...] | None = None) -> bytes:
    """Which battery words the action kills, one byte each."""
    if battery is None:
        battery = word_battery(q.rank, q.degree)
    return bytes(1 if eval_word(q, w).is_identity else 0 for w in battery)
