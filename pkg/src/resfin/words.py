"""Free-group word algebra.

Words in the free group F_m are stored freely reduced, as tuples of signed
generator indices: +i is the i-th generator, -i its inverse. The textual
syntax used by the CLI and the tests writes generators as lowercase letters
and inverses as uppercase, so "abAB" is x y x^-1 y^-1 and "" is the
identity.

Alongside flat words this module provides straight-line words (SLWord): a
DAG of build instructions that can describe words whose flat length is
astronomically large while staying cheap to evaluate in any target group.
Flat forms are only ever materialized under an explicit length cap.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Sequence

from .errors import InputError, InternalError, ResourceError

DEFAULT_FLAT_CAP = 1_000_000

Letters = tuple[int, ...]


def _check_rank(rank: int) -> None:
    if not isinstance(rank, int) or rank < 1:
        raise InputError(f"rank must be a positive integer, got {rank!r}")


def _reduce_letters(rank: int, raw: Iterable[int]) -> Letters:
    stack: list[int] = []
    for letter in raw:
        if not isinstance(letter, int) or letter == 0 or abs(letter) > rank:
            raise InputError(f"letter {letter!r} out of range for rank {rank}")
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


class FreeWord:
    """A freely reduced word in F_rank. Immutable and hashable.

    Operators: u * v multiplies, ~u inverts, u ** k is the k-th power.
    """

    __slots__ = ("rank", "letters")

    def __init__(self, rank: int, letters: Sequence[int]):
        _check_rank(rank)
        letters = tuple(letters)
        for i, letter in enumerate(letters):
            if not isinstance(letter, int) or letter == 0 or abs(letter) > rank:
                raise InputError(f"letter {letter!r} out of range for rank {rank}")
            if i > 0 and letters[i - 1] == -letter:
                raise InputError(
                    "letters are not freely reduced; build words via reduce()"
                )
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("FreeWord is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FreeWord)
            and self.rank == other.rank
            and self.letters == other.letters
        )

    def __hash__(self) -> int:
        return hash((self.rank, self.letters))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return multiply(self, other)

    def __invert__(self) -> "FreeWord":
        return inverse(self)

    def __pow__(self, k: int) -> "FreeWord":
        return power(self, k)

    def __repr__(self) -> str:
        if self.rank <= 26:
            return f"FreeWord({self.rank}, {format_word(self)!r})"
        return f"FreeWord({self.rank}, {self.letters})"

    @property
    def is_identity(self) -> bool:
        return not self.letters


def identity(rank: int) -> FreeWord:
    return FreeWord(rank, ())


def generator(rank: int, i: int) -> FreeWord:
    """The i-th generator (1-based) as a word."""
    if not 1 <= i <= rank:
        raise InputError(f"generator index {i} out of range for rank {rank}")
    return FreeWord(rank, (i,))


def reduce(rank: int, raw: Iterable[int]) -> FreeWord:
    """Freely reduce a raw letter sequence. Idempotent."""
    return FreeWord(rank, _reduce_letters(rank, raw))


def _same_rank(u: FreeWord, v: FreeWord) -> None:
    if u.rank != v.rank:
        raise InputError(f"rank mismatch: {u.rank} vs {v.rank}")


def multiply(u: FreeWord, v: FreeWord) -> FreeWord:
    _same_rank(u, v)
    a, b = list(u.letters), v.letters
    i = 0
    while a and i < len(b) and a[-1] == -b[i]:
        a.pop()
        i += 1
    return FreeWord(u.rank, tuple(a) + b[i:])


def inverse(u: FreeWord) -> FreeWord:
    return FreeWord(u.rank, tuple(-letter for letter in reversed(u.letters)))


def conjugate(u: FreeWord, v: FreeWord) -> FreeWord:
    """v u v^-1."""
    return multiply(multiply(v, u), inverse(v))


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    """[u, v] = u v u^-1 v^-1."""
    return multiply(multiply(u, v), multiply(inverse(u), inverse(v)))


def _cyclic_split(u: FreeWord) -> tuple[Letters, Letters]:
    """Split u = p c p^-1 with c cyclically reduced; returns (p, c)."""
    letters = u.letters
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return letters[:i], letters[i:j]


def power(u: FreeWord, k: int, *, cap: int = DEFAULT_FLAT_CAP) -> FreeWord:
    """u^k, with the result length checked against cap before materializing."""
    if not isinstance(k, int):
        raise InputError(f"exponent must be an integer, got {k!r}")
    if k == 0 or u.is_identity:
        return identity(u.rank)
    base = u if k > 0 else inverse(u)
    prefix, core = _cyclic_split(base)
    # p c p^-1 to the |k| is p c^|k| p^-1 and c^|k| is already reduced.
    projected = 2 * len(prefix) + abs(k) * len(core)
    if projected > cap:
        raise ResourceError(
            f"power of length {projected} exceeds cap {cap}; keep it straight-line"
        )
    body = core * abs(k)
    return FreeWord(u.rank, prefix + body + tuple(-x for x in reversed(prefix)))


def word_length(u: FreeWord) -> int:
    return len(u.letters)


def letter_key(letter: int) -> tuple[int, int]:
    """Sort key realizing the order x < x^-1 < y < y^-1 < ..."""
    return (abs(letter), 0 if letter > 0 else 1)


def word_key(u: FreeWord) -> tuple:
    """Length-then-lexicographic order key; fixes every 'first witness' below."""
    return (len(u.letters), tuple(letter_key(letter) for letter in u.letters))


def word_growth(rank: int, n: int) -> int:
    """Number of reduced words of length <= n: 1 + sum 2m(2m-1)^(k-1)."""
    _check_rank(rank)
    if n < 0:
        raise InputError(f"radius must be nonnegative, got {n}")
    m = rank
    total = 1
    term = 2 * m
    for _ in range(n):
        total += term
        term *= 2 * m - 1
    return total


def _ordered_letters(rank: int) -> list[int]:
    out = []
    for i in range(1, rank + 1):
        out.append(i)
        out.append(-i)
    return out


def enumerate_ball(
    rank: int, n: int, *, prefix: FreeWord | None = None
) -> Iterator[FreeWord]:
    """Yield every reduced word of length <= n once, in (length, lex) order.

    With a prefix, yields only the ball members that start with it (the
    prefix itself included); partitioning by the length-1 prefixes plus the
    identity recovers the whole ball.
    """
    _check_rank(rank)
    if n < 0:
        raise InputError(f"radius must be nonnegative, got {n}")
    if prefix is not None and prefix.rank != rank:
        raise InputError(f"prefix rank {prefix.rank} does not match {rank}")
    alphabet = _ordered_letters(rank)
    start = prefix.letters if prefix is not None else ()

    def exact(length: int) -> Iterator[Letters]:
        word = list(start)

        def go(remaining: int) -> Iterator[Letters]:
            if remaining == 0:
                yield tuple(word)
                return
            for letter in alphabet:
                if word and word[-1] == -letter:
                    continue
                word.append(letter)
                yield from go(remaining - 1)
                word.pop()

        yield from go(length - len(start))

    for length in range(len(start), n + 1):
        for letters in exact(length):
            yield FreeWord(rank, letters)


class Ball:
    """The radius-n ball in F_rank, enumerable in a fixed order.

    size may be huge; iteration is streaming. nontrivial() is the
    identity-free view of the same ball.
    """

    __slots__ = ("rank", "radius")

    def __init__(self, rank: int, radius: int):
        _check_rank(rank)
        if radius < 0:
            raise InputError(f"radius must be nonnegative, got {radius}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "radius", radius)

    def __setattr__(self, name, value):
        raise AttributeError("Ball is immutable")

    @property
    def size(self) -> int:
        return word_growth(self.rank, self.radius)

    def __iter__(self) -> Iterator[FreeWord]:
        return enumerate_ball(self.rank, self.radius)

    def nontrivial(self) -> Iterator[FreeWord]:
        it = iter(self)
        first = next(it, None)
        if first is not None and not first.is_identity:
            yield first
        yield from it

    def __repr__(self) -> str:
        return f"Ball(rank={self.rank}, radius={self.radius})"


def parse_word(text: str, rank: int | None = None) -> FreeWord:
    """Parse "abAB"-style syntax. Lowercase generator, uppercase inverse."""
    letters = []
    for ch in text.strip():
        if "a" <= ch <= "z":
            letters.append(ord(ch) - ord("a") + 1)
        elif "A" <= ch <= "Z":
            letters.append(-(ord(ch) - ord("A") + 1))
        else:
            raise InputError(f"unexpected character {ch!r} in word {text!r}")
    inferred = max((abs(letter) for letter in letters), default=1)
    if rank is None:
        rank = inferred
    elif inferred > rank:
        raise InputError(f"word {text!r} uses generator {inferred} beyond rank {rank}")
    return reduce(rank, letters)


def format_word(u: FreeWord) -> str:
    if u.rank > 26:
        raise InputError("textual syntax covers ranks up to 26")
    out = []
    for letter in u.letters:
        base = ord("a") if letter > 0 else ord("A")
        out.append(chr(base + abs(letter) - 1))
    return "".join(out)


# ---------------------------------------------------------------------------
# Straight-line words


_SL_OPS = {"gen": 1, "inv": 1, "mul": 2, "pow": 2, "conj": 2, "comm": 2}


class SLWord:
    """A word given as a DAG of build instructions.

    Instructions, each referring only to strictly earlier nodes:
      ("gen", i)      the i-th generator
      ("inv", a)      inverse of node a
      ("mul", a, b)   node a times node b
      ("pow", a, e)   node a to the integer e (e may be huge or negative)
      ("conj", a, b)  b-conjugate of a, evaluating to v u v^-1
      ("comm", a, b)  [u, v] = u v u^-1 v^-1
    """

    __slots__ = ("rank", "nodes", "root")

    def __init__(self, rank: int, nodes: Sequence[tuple], root: int):
        _check_rank(rank)
        nodes = tuple(tuple(node) for node in nodes)
        for idx, node in enumerate(nodes):
            if not node or node[0] not in _SL_OPS or len(node) != _SL_OPS[node[0]] + 1:
                raise InputError(f"malformed instruction {node!r} at node {idx}")
            op = node[0]
            if op == "gen":
                if not 1 <= node[1] <= rank:
                    raise InputError(f"generator {node[1]} out of range at node {idx}")
            elif op == "pow":
                if not (isinstance(node[1], int) and 0 <= node[1] < idx):
                    raise InputError(f"bad reference in {node!r} at node {idx}")
                if not isinstance(node[2], int):
                    raise InputError(f"exponent must be an integer at node {idx}")
            else:
                for ref in node[1:]:
                    if not (isinstance(ref, int) and 0 <= ref < idx):
                        raise InputError(f"bad reference in {node!r} at node {idx}")
        if not (nodes and isinstance(root, int) and 0 <= root < len(nodes)):
            raise InputError(f"root {root!r} out of range")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "root", root)

    def __setattr__(self, name, value):
        raise AttributeError("SLWord is immutable")

    def __len__(self) -> int:
        return len(self.nodes)

    def __repr__(self) -> str:
        return f"SLWord(rank={self.rank}, nodes={len(self.nodes)}, root={self.root})"


class SLBuilder:
    """Incremental SLWord constructor with structural sharing."""

    def __init__(self, rank: int):
        _check_rank(rank)
        self.rank = rank
        self._nodes: list[tuple] = []
        self._memo: dict[tuple, int] = {}

    def _emit(self, node: tuple) -> int:
        got = self._memo.get(node)
        if got is not None:
            return got
        self._nodes.append(node)
        idx = len(self._nodes) - 1
        self._memo[node] = idx
        return idx

    def gen(self, i: int) -> int:
        if not 1 <= i <= self.rank:
            raise InputError(f"generator index {i} out of range for rank {self.rank}")
        return self._emit(("gen", i))

    def inv(self, a: int) -> int:
        return self._emit(("inv", a))

    def mul(self, a: int, b: int) -> int:
        return self._emit(("mul", a, b))

    def pow(self, a: int, e: int) -> int:
        return self._emit(("pow", a, e))

    def conj(self, a: int, b: int) -> int:
        return self._emit(("conj", a, b))

    def comm(self, a: int, b: int) -> int:
        return self._emit(("comm", a, b))

    def word(self, u: FreeWord) -> int:
        """Embed a flat word; single-generator powers stay symbolic."""
        if u.rank != self.rank:
            raise InputError(f"rank mismatch: {u.rank} vs {self.rank}")
        if u.is_identity:
            return self.pow(self.gen(1), 0)
        letters = u.letters
        if len(set(letters)) == 1:
            letter = letters[0]
            node = self.gen(abs(letter))
            e = len(letters) if letter > 0 else -len(letters)
            return node if e == 1 else self.pow(node, e)

        def tree(lo: int, hi: int) -> int:
            if hi - lo == 1:
                letter = letters[lo]
                node = self.gen(abs(letter))
                return node if letter > 0 else self.inv(node)
            mid = (lo + hi) // 2
            return self.mul(tree(lo, mid), tree(mid, hi))

        return tree(0, len(letters))

    def build(self, root: int) -> SLWord:
        return SLWord(self.rank, self._nodes, root)


def sl_build(u: FreeWord) -> SLWord:
    builder = SLBuilder(u.rank)
    return builder.build(builder.word(u))


def sl_length_bound(w: SLWord) -> int:
    """Upper bound on the flat reduced length, computed per node."""
    bound = [0] * len(w.nodes)
    for idx, node in enumerate(w.nodes):
        op = node[0]
        if op == "gen":
            bound[idx] = 1
        elif op == "inv":
            bound[idx] = bound[node[1]]
        elif op == "mul":
            bound[idx] = bound[node[1]] + bound[node[2]]
        elif op == "pow":
            bound[idx] = abs(node[2]) * bound[node[1]]
        elif op == "conj":
            bound[idx] = bound[node[1]] + 2 * bound[node[2]]
        else:  # comm
            bound[idx] = 2 * bound[node[1]] + 2 * bound[node[2]]
    return bound[w.root]


def sl_flatten(w: SLWord, cap: int) -> FreeWord | None:
    """Reduced flat form if its length fits cap, else None (overflow).

    Intermediate nodes get a working budget of max(cap, DEFAULT_FLAT_CAP);
    an intermediate larger than that reports overflow even if the root
    would have been short, which no witness built here comes close to.
    """
    if cap < 0:
        raise InputError(f"cap must be nonnegative, got {cap}")
    budget = max(cap, DEFAULT_FLAT_CAP)
    vals: list[FreeWord | None] = [None] * len(w.nodes)

    needed = [False] * len(w.nodes)
    needed[w.root] = True
    for idx in range(len(w.nodes) - 1, -1, -1):
        if not needed[idx]:
            continue
        node = w.nodes[idx]
        if node[0] == "pow":
            needed[node[1]] = True
        elif node[0] != "gen":
            for ref in node[1:]:
                needed[ref] = True

    for idx, node in enumerate(w.nodes):
        if not needed[idx]:
            continue
        op = node[0]
        try:
            if op == "gen":
                val = generator(w.rank, node[1])
            elif op == "inv":
                val = inverse(vals[node[1]])
            elif op == "mul":
                val = multiply(vals[node[1]], vals[node[2]])
            elif op == "pow":
                val = power(vals[node[1]], node[2], cap=budget)
            elif op == "conj":
                val = conjugate(vals[node[1]], vals[node[2]])
            else:
                val = commutator(vals[node[1]], vals[node[2]])
        except ResourceError:
            return None
        if len(val) > budget:
            return None
        vals[idx] = val
    flat = vals[w.root]
    return flat if len(flat) <= cap else None


def sl_eval(
    w: SLWord,
    *,
    gen: Callable[[int], object],
    mul: Callable[[object, object], object],
    inv: Callable[[object], object],
    ident: object,
):
    """Evaluate an SLWord in any group given by gen/mul/inv/identity.

    Powers run in O(log e) multiplications, so exponents like lcm(1..n)
    stay cheap.
    """

    def powered(base, e: int):
        if e < 0:
            base, e = inv(base), -e
        acc = ident
        while e:
            if e & 1:
                acc = mul(acc, base)
            base = mul(base, base)
            e >>= 1
        return acc

    vals = [None] * len(w.nodes)
    for idx, node in enumerate(w.nodes):
        op = node[0]
        if op == "gen":
            vals[idx] = gen(node[1])
        elif op == "inv":
            vals[idx] = inv(vals[node[1]])
        elif op == "mul":
            vals[idx] = mul(vals[node[1]], vals[node[2]])
        elif op == "pow":
            vals[idx] = powered(vals[node[1]], node[2])
        elif op == "conj":
            u, v = vals[node[1]], vals[node[2]]
            vals[idx] = mul(mul(v, u), inv(v))
        else:
            u, v = vals[node[1]], vals[node[2]]
            vals[idx] = mul(mul(u, v), mul(inv(u), inv(v)))
    out = vals[w.root]
    if out is None:  # pragma: no cover
        raise InternalError("evaluation missed the root")
    return out
