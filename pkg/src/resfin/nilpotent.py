"""Unipotent integer matrices and the Heisenberg girth bound.

Sending the two generators to elementary matrices embeds words into the
integer Heisenberg group.  Ball images have small entries (the exact
maximum is found by walking distinct matrices, not words), so reducing
mod a modulus larger than twice that maximum keeps distinct images
distinct.  The finite unipotent group mod M then witnesses a polynomial
upper bound for residual girth on the nilpotent side.
"""

from dataclasses import dataclass

from .errors import InputError, InternalError
from .words import FreeWord

_HEISENBERG_DIM = 3


def _identity_rows(d: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


@dataclass(frozen=True)
class UnipotentMatrix:
    """Upper triangular integer matrix with unit diagonal."""

    entries: tuple

    def __init__(self, entries):
        rows = tuple(tuple(int(v) for v in row) for row in entries)
        d = len(rows)
        if d == 0 or any(len(row) != d for row in rows):
            raise InputError("entries must form a square matrix")
        for i in range(d):
            if rows[i][i] != 1:
                raise InputError(f"diagonal entry at {i} is {rows[i][i]}, not 1")
            for j in range(i):
                if rows[i][j] != 0:
                    raise InputError(f"entry below the diagonal at ({i},{j}) is nonzero")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, d: int = _HEISENBERG_DIM) -> "UnipotentMatrix":
        return cls(_identity_rows(d))

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @property
    def is_identity(self) -> bool:
        return self.entries == _identity_rows(self.dimension)

    def __mul__(self, other: "UnipotentMatrix") -> "UnipotentMatrix":
        d = self.dimension
        if other.dimension != d:
            raise InputError("dimension mismatch")
        a, b = self.entries, other.entries
        return UnipotentMatrix(
            tuple(
                tuple(sum(a[i][k] * b[k][j] for k in range(i, j + 1)) for j in range(d))
                for i in range(d)
            )
        )

    def inverse(self) -> "UnipotentMatrix":
        # (I + N)^-1 = I - N + N^2 - ..., a finite sum since N is nilpotent
        d = self.dimension
        n = tuple(
            tuple(self.entries[i][j] - (1 if i == j else 0) for j in range(d))
            for i in range(d)
        )
        total = [list(row) for row in _identity_rows(d)]
        power = _identity_rows(d)
        sign = 1
        for _ in range(d - 1):
            power = tuple(
                tuple(sum(power[i][k] * n[k][j] for k in range(d)) for j in range(d))
                for i in range(d)
            )
            sign = -sign
            for i in range(d):
                for j in range(d):
                    total[i][j] += sign * power[i][j]
        return UnipotentMatrix(total)

    def max_entry(self) -> int:
        return max(abs(v) for row in self.entries for v in row)

    def reduce_mod(self, m: int) -> "UnipotentMatrix":
        if m < 2:
            raise InputError(f"modulus must be at least 2, got {m}")
        d = self.dimension
        return UnipotentMatrix(
            tuple(
                tuple(
                    1 if i == j else (self.entries[i][j] % m if j > i else 0)
                    for j in range(d)
                )
                for i in range(d)
            )
        )


def _heisenberg_generators() -> tuple:
    x = UnipotentMatrix(((1, 1, 0), (0, 1, 0), (0, 0, 1)))
    y = UnipotentMatrix(((1, 0, 0), (0, 1, 1), (0, 0, 1)))
    return (x, y)


def heisenberg_eval(w: FreeWord, *, modulus: int | None = None) -> UnipotentMatrix:
    """Image of a rank-2 word under x to E12, y to E23.

    With a modulus, every product is reduced as it happens; the result
    equals the integer image reduced at the end.
    """
    if not isinstance(w, FreeWord):
        raise InputError(f"need a FreeWord, got {type(w).__name__}")
    if w.rank != 2:
        raise InputError(f"the Heisenberg embedding takes rank-2 words, got rank {w.rank}")
    x, y = _heisenberg_generators()
    table = {1: x, -1: x.inverse(), 2: y, -2: y.inverse()}
    if modulus is not None:
        table = {k: v.reduce_mod(modulus) for k, v in table.items()}
    out = UnipotentMatrix.identity()
    for letter in w.letters:
        out = out * table[letter]
        if modulus is not None:
            out = out.reduce_mod(modulus)
    return out


def _ball_images(n: int) -> set:
    """Distinct Heisenberg images of the radius-n ball, by matrix BFS."""
    x, y = _heisenberg_generators()
    steps = (x, x.inverse(), y, y.inverse())
    seen = {UnipotentMatrix.identity()}
    frontier = list(seen)
    for _ in range(n):
        nxt = []
        for m in frontier:
            for s in steps:
                img = m * s
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def entry_bound(n: int) -> int:
    """Exact max absolute entry over the radius-n ball image."""
    if n < 0:
        raise InputError(f"radius must be nonnegative, got {n}")
    exact = max(m.max_entry() for m in _ball_images(n))
    analytic = n * (n + 1) // 2 + 1
    if exact > analytic:
        raise InternalError(
            f"ball entry maximum {exact} exceeds the analytic envelope {analytic}"
        )
    return exact


def girth_upper_bound_nilpotent(n: int) -> tuple:
    """(modulus, finite group order, injectivity verdict) at radius n.

    The modulus exceeds twice the exact entry maximum, so distinct integer
    images stay distinct mod M; the check is still run pairwise.  The
    order is the exact count of unipotent matrices over Z/M, M^(d(d-1)/2).
    """
    if n < 1:
        raise InputError(f"radius must be positive, got {n}")
    images = _ball_images(n)
    m = 2 * max(img.max_entry() for img in images) + 1
    reduced = {img.reduce_mod(m) for img in images}
    if len(reduced) != len(images):
        raise InternalError(f"reduction mod {m} collapsed distinct ball images")
    d = _HEISENBERG_DIM
    return (m, m ** (d * (d - 1) // 2), True)
