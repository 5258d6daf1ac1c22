"""Permutation images of free groups.

A PermQuotient is a homomorphism F_m -> Sym(d) given by one permutation per
generator. Points are 1..d in the public interface and the basepoint is
point 1. Permutations act on the right: evaluating a word walks its letters
left to right, so eval(uv) applies u first, then v.

A pointed transitive quotient of degree d encodes an index-d subgroup (the
basepoint stabilizer); a regular one (image order equal to the degree)
encodes a normal subgroup, its kernel.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import InputError
from .words import FreeWord, SLWord, sl_eval

# canonical keys pack one point per byte
MAX_ENCODABLE_DEGREE = 255

DEFAULT_ORDER_CAP = 10_000


class Permutation:
    __slots__ = ("_map",)

    def __init__(self, images: Sequence[int]):
        """images lists the image of each point 1..d, 1-based."""
        d = len(images)
        if d < 1:
            raise InputError("a permutation needs at least one point")
        zero = tuple(p - 1 for p in images)
        if sorted(zero) != list(range(d)):
            raise InputError(f"images {tuple(images)} are not a bijection of 1..{d}")
        object.__setattr__(self, "_map", zero)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def _from_zero(cls, zero: tuple[int, ...]) -> "Permutation":
        p = object.__new__(cls)
        object.__setattr__(p, "_map", zero)
        return p

    @property
    def degree(self) -> int:
        return len(self._map)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(p + 1 for p in self._map)

    def apply(self, point: int) -> int:
        if not 1 <= point <= len(self._map):
            raise InputError(f"point {point} out of range 1..{len(self._map)}")
        return self._map[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        """self then other, matching the left-to-right path convention."""
        if len(self._map) != len(other._map):
            raise InputError("degree mismatch")
        o = other._map
        return Permutation._from_zero(tuple(o[p] for p in self._map))

    def inverse(self) -> "Permutation":
        out = [0] * len(self._map)
        for i, p in enumerate(self._map):
            out[p] = i
        return Permutation._from_zero(tuple(out))

    @property
    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self._map))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles covering every point, fixed points included.

        Each cycle starts at its minimal point; cycles ordered by that point.
        """
        seen = [False] * len(self._map)
        out = []
        for start in range(len(self._map)):
            if seen[start]:
                continue
            cycle = []
            p = start
            while not seen[p]:
                seen[p] = True
                cycle.append(p + 1)
                p = self._map[p]
            out.append(tuple(cycle))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._map == other._map

    def __hash__(self) -> int:
        return hash(self._map)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def identity_perm(degree: int) -> Permutation:
    return Permutation._from_zero(tuple(range(degree)))


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Accepts an image list "2 3 1 5 4" or cycle notation "(1 2 3)(4 5)"."""
    text = text.strip()
    if not text:
        raise InputError("empty permutation text")
    if "(" in text:
        body = text.replace(",", " ")
        cycles = []
        while body:
            body = body.strip()
            if not body.startswith("("):
                raise InputError(f"bad cycle notation {text!r}")
            close = body.index(")")
            inner = body[1:close].split()
            cycles.append([int(tok) for tok in inner])
            body = body[close + 1 :]
        maxpoint = max((p for c in cycles for p in c), default=1)
        d = degree if degree is not None else maxpoint
        if maxpoint > d:
            raise InputError(f"cycle point {maxpoint} beyond degree {d}")
        images = list(range(1, d + 1))
        for cycle in cycles:
            if len(set(cycle)) != len(cycle):
                raise InputError(f"repeated point in cycle {cycle}")
            for i, p in enumerate(cycle):
                images[p - 1] = cycle[(i + 1) % len(cycle)]
        return Permutation(images)
    images = [int(tok) for tok in text.split()]
    if degree is not None and len(images) != degree:
        raise InputError(f"expected degree {degree}, got {len(images)} images")
    return Permutation(images)


def format_permutation(p: Permutation) -> str:
    return " ".join(str(q) for q in p.images)


class PermQuotient:
    """m permutations of common degree; the image of each generator."""

    __slots__ = ("rank", "degree", "gens", "_inverses", "_transitive", "_order")

    def __init__(self, gens: Sequence[Permutation]):
        gens = tuple(gens)
        if not gens:
            raise InputError("need at least one generator image")
        degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise InputError("generator images must share a degree")
        object.__setattr__(self, "rank", len(gens))
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "_inverses", None)
        object.__setattr__(self, "_transitive", None)
        object.__setattr__(self, "_order", None)

    def __setattr__(self, name, value):
        raise AttributeError("PermQuotient is immutable")

    @property
    def basepoint(self) -> int:
        return 1

    def _gen_inverses(self) -> tuple[Permutation, ...]:
        cached = self._inverses
        if cached is None:
            cached = tuple(g.inverse() for g in self.gens)
            object.__setattr__(self, "_inverses", cached)
        return cached

    def __eq__(self, other) -> bool:
        return isinstance(other, PermQuotient) and self.gens == other.gens

    def __hash__(self) -> int:
        return hash(self.gens)

    def __repr__(self) -> str:
        shown = ", ".join(format_permutation(g) for g in self.gens)
        return f"PermQuotient(degree={self.degree}, gens=[{shown}])"


def eval_word(q: PermQuotient, w: FreeWord | SLWord) -> Permutation:
    """Image of a word, flat or straight-line, under the quotient."""
    if w.rank > q.rank:
        raise InputError(f"word rank {w.rank} exceeds quotient rank {q.rank}")
    if isinstance(w, SLWord):
        return sl_eval(
            w,
            gen=lambda i: q.gens[i - 1],
            mul=lambda a, b: a * b,
            inv=lambda a: a.inverse(),
            ident=identity_perm(q.degree),
        )
    inverses = q._gen_inverses()
    state = tuple(range(q.degree))
    for letter in w.letters:
        table = q.gens[letter - 1]._map if letter > 0 else inverses[-letter - 1]._map
        state = tuple(table[p] for p in state)
    return Permutation._from_zero(state)


def orbit(q: PermQuotient, point: int) -> frozenset[int]:
    """The set of points reachable from point under the generators."""
    if not 1 <= point <= q.degree:
        raise InputError(f"point {point} out of range 1..{q.degree}")
    inverses = q._gen_inverses()
    seen = {point - 1}
    frontier = [point - 1]
    while frontier:
        p = frontier.pop()
        for g in q.gens:
            nxt = g._map[p]
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
        for g in inverses:
            nxt = g._map[p]
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(p + 1 for p in seen)


def is_transitive(q: PermQuotient) -> bool:
    cached = q._transitive
    if cached is None:
        cached = len(orbit(q, 1)) == q.degree
        object.__setattr__(q, "_transitive", cached)
    return cached


def image_order(q: PermQuotient, cap: int = DEFAULT_ORDER_CAP) -> int | None:
    """Order of the group the generators span; None once it exceeds cap."""
    if cap < 1:
        raise InputError(f"cap must be positive, got {cap}")
    ident = tuple(range(q.degree))
    seen = {ident}
    frontier = [ident]
    tables = [g._map for g in q.gens]
    while frontier:
        state = frontier.pop()
        for table in tables:
            nxt = tuple(table[p] for p in state)
            if nxt not in seen:
                if len(seen) >= cap:
                    return None
                seen.add(nxt)
                frontier.append(nxt)
    return len(seen)


def is_regular(q: PermQuotient) -> bool:
    """Transitive with image order equal to the degree (trivial stabilizer)."""
    if not is_transitive(q):
        return False
    cached = q._order
    if cached is None:
        cached = image_order(q, cap=q.degree + 1)
        object.__setattr__(q, "_order", cached)
    return cached == q.degree


def canonical_key(q: PermQuotient) -> bytes:
    """Canonical form of a pointed transitive action.

    Relabels points by breadth-first discovery order from the basepoint,
    scanning each point's neighbors as (g1 forward, g1 backward, g2
    forward, ...). Two transitive quotients get equal keys exactly when
    some relabeling fixing the basepoint carries one to the other.
    """
    if q.degree > MAX_ENCODABLE_DEGREE:
        raise InputError(f"degree {q.degree} beyond encodable {MAX_ENCODABLE_DEGREE}")
    if not is_transitive(q):
        raise InputError("canonical_key needs a transitive quotient")
    inverses = q._gen_inverses()
    label = {0: 0}
    order = [0]
    i = 0
    while i < len(order):
        p = order[i]
        i += 1
        for g, ginv in zip(q.gens, inverses):
            for nxt in (g._map[p], ginv._map[p]):
                if nxt not in label:
                    label[nxt] = len(order)
                    order.append(nxt)
    parts = []
    for g in q.gens:
        parts.append(bytes(label[g._map[order[new]]] for new in range(q.degree)))
    return b"".join(parts)


def to_record(q: PermQuotient, *, order_cap: int = DEFAULT_ORDER_CAP) -> dict:
    """JSON-ready description of the quotient."""
    order = image_order(q, cap=order_cap)
    return {
        "degree": q.degree,
        "gens": [list(g.images) for g in q.gens],
        "transitive": is_transitive(q),
        "regular": is_regular(q),
        "order": order,
    }


def from_record(record: dict) -> PermQuotient:
    try:
        gens = [Permutation(images) for images in record["gens"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed quotient record: {exc}") from exc
    q = PermQuotient(gens)
    if q.degree != record.get("degree", q.degree):
        raise InputError("record degree disagrees with its generators")
    return q


def quotients_agree(a: PermQuotient, b: PermQuotient, words: Iterable[FreeWord]) -> bool:
    """Whether two quotients kill exactly the same words from a sample."""
    for w in words:
        if eval_word(a, w).is_identity != eval_word(b, w).is_identity:
            return False
    return True
