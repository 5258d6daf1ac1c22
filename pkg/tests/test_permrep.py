"""Permutation representation tests.

The closure oracle for image_order is itertools-based and independent of
the library's BFS.
"""

import itertools
import random

import pytest

from resfin import InputError, SLBuilder, enumerate_ball, parse_word
from resfin.permrep import (
    PermQuotient,
    Permutation,
    canonical_key,
    eval_word,
    format_permutation,
    from_record,
    identity_perm,
    image_order,
    is_regular,
    is_transitive,
    orbit,
    parse_permutation,
    to_record,
)


def q2(x_images, y_images):
    return PermQuotient([Permutation(x_images), Permutation(y_images)])


def oracle_group_order(perms):
    """Closure under composition, tuples all the way down."""
    base = [tuple(p.images) for p in perms]
    d = len(base[0])
    ident = tuple(range(1, d + 1))
    seen = {ident}
    frontier = [ident]
    while frontier:
        a = frontier.pop()
        for b in base:
            c = tuple(b[a[i] - 1] for i in range(d))
            if c not in seen:
                seen.add(c)
                frontier.append(c)
    return len(seen)


def random_quotient(rng, rank, degree):
    gens = []
    for _ in range(rank):
        images = list(range(1, degree + 1))
        rng.shuffle(images)
        gens.append(Permutation(images))
    return PermQuotient(gens)


def random_word(rng, rank, max_len):
    letters = [s * g for g in range(1, rank + 1) for s in (1, -1)]
    raw = [rng.choice(letters) for _ in range(rng.randrange(max_len + 1))]
    from resfin import reduce

    return reduce(rank, raw)


def test_permutation_basics():
    p = Permutation([2, 3, 1])
    assert p.apply(1) == 2
    assert p.inverse().apply(2) == 1
    assert (p * p.inverse()).is_identity
    assert p.cycles() == [(1, 2, 3)]
    with pytest.raises(InputError):
        Permutation([1, 1, 2])


def test_composition_is_left_to_right():
    # apply (1 2) then (2 3): point 1 goes to 2, then 2 goes to 3
    a = parse_permutation("(1 2)", degree=3)
    b = parse_permutation("(2 3)", degree=3)
    assert (a * b).apply(1) == 3


def test_parse_and_format():
    assert parse_permutation("2 3 1 5 4").images == (2, 3, 1, 5, 4)
    assert parse_permutation("(1 2 3)(4 5)").images == (2, 3, 1, 5, 4)
    assert parse_permutation("(1 2)", degree=4).images == (2, 1, 3, 4)
    assert format_permutation(Permutation([2, 3, 1])) == "2 3 1"
    with pytest.raises(InputError):
        parse_permutation("(1 1)")
    with pytest.raises(InputError):
        parse_permutation("1 2 4")


def test_eval_word_examples():
    q = q2([2, 1], [1, 2])
    assert eval_word(q, parse_word("aa", rank=2)).is_identity

    q = q2([2, 3, 1], [1, 2, 3])
    assert eval_word(q, parse_word("a", rank=2)).apply(1) == 2

    q = q2([2, 3, 1, 5, 4], [1, 2, 4, 3, 5])
    assert not eval_word(q, parse_word("abAB")).is_identity


def test_eval_word_is_homomorphism():
    rng = random.Random(2026)
    for _ in range(10):
        q = random_quotient(rng, 2, rng.randrange(2, 7))
        for _ in range(100):
            u = random_word(rng, 2, 8)
            v = random_word(rng, 2, 8)
            assert eval_word(q, u * v) == eval_word(q, u) * eval_word(q, v)
            assert eval_word(q, ~u) == eval_word(q, u).inverse()


def test_eval_slword_uses_fast_powers():
    b = SLBuilder(2)
    root = b.pow(b.gen(1), 10**18 + 1)
    slw = b.build(root)
    q = q2([2, 3, 4, 5, 1], [1, 2, 3, 4, 5])
    # 10^18 + 1 mod 5 = 1, so the huge power acts like one shift
    assert eval_word(q, slw) == eval_word(q, parse_word("a", rank=2))


def test_orbit():
    q = q2([2, 1, 3], [1, 2, 3])
    assert orbit(q, 1) == {1, 2}
    assert orbit(q, 3) == {3}
    assert not is_transitive(q)
    trivial = q2([1, 2, 3], [1, 2, 3])
    assert orbit(trivial, 1) == {1}
    five = q2([2, 3, 4, 5, 1], [1, 2, 3, 4, 5])
    assert orbit(five, 1) == {1, 2, 3, 4, 5}
    assert is_transitive(five)


def test_image_order():
    assert image_order(q2([2, 1], [1, 2])) == 2
    assert image_order(q2([2, 3, 1], [2, 1, 3])) == 6
    assert image_order(q2([1, 2], [1, 2])) == 1
    assert image_order(q2([2, 3, 1], [2, 1, 3]), cap=5) is None


def test_image_order_matches_oracle():
    rng = random.Random(99)
    for _ in range(40):
        q = random_quotient(rng, 2, rng.randrange(2, 6))
        assert image_order(q, cap=10**4) == oracle_group_order(q.gens)


def test_is_regular():
    assert is_regular(q2([2, 1], [1, 2]))
    assert not is_regular(q2([2, 3, 1], [2, 1, 3]))
    assert is_regular(PermQuotient([Permutation([1]), Permutation([1])]))
    # transitive but with a nontrivial stabilizer
    assert not is_regular(q2([2, 3, 1], [1, 3, 2]))


def test_regular_kernel_is_stabilizer():
    # in a regular action, fixing the basepoint forces the identity
    q = q2([2, 3, 4, 1], [1, 2, 3, 4])
    assert is_regular(q)
    rng = random.Random(5)
    for _ in range(200):
        w = random_word(rng, 2, 10)
        perm = eval_word(q, w)
        assert (perm.apply(1) == 1) == perm.is_identity


def test_canonical_key_relabeling_invariance():
    rng = random.Random(41)
    for _ in range(50):
        d = rng.randrange(2, 8)
        q = random_quotient(rng, 2, d)
        if not is_transitive(q):
            continue
        relabel = [1] + [p + 2 for p in rng.sample(range(d - 1), d - 1)]

        def moved(perm):
            images = [0] * d
            for p in range(1, d + 1):
                images[relabel[p - 1] - 1] = relabel[perm.apply(p) - 1]
            return Permutation(images)

        other = PermQuotient([moved(g) for g in q.gens])
        assert canonical_key(other) == canonical_key(q)


def test_canonical_key_distinguishes():
    a = q2([2, 1], [1, 2])
    b = q2([1, 2], [2, 1])
    assert canonical_key(a) != canonical_key(b)
    assert canonical_key(a) == canonical_key(a)
    with pytest.raises(InputError):
        canonical_key(q2([2, 1, 3], [1, 2, 3]))


def test_stabilizer_index_equals_degree():
    # endpoints of ball words from the basepoint hit every point, and the
    # point count is the coset count of the stabilizer
    q = q2([2, 3, 1, 5, 4], [1, 2, 4, 3, 5])
    assert is_transitive(q)
    endpoints = {eval_word(q, w).apply(1) for w in enumerate_ball(2, 5)}
    assert endpoints == set(range(1, 6))


def test_records_roundtrip():
    q = q2([2, 3, 1], [2, 1, 3])
    rec = to_record(q)
    assert rec == {
        "degree": 3,
        "gens": [[2, 3, 1], [2, 1, 3]],
        "transitive": True,
        "regular": False,
        "order": 6,
    }
    assert from_record(rec) == q
    with pytest.raises(InputError):
        from_record({"gens": "nope"})


def test_identity_perm():
    assert identity_perm(4).is_identity
    assert eval_word(q2([2, 1], [1, 2]), parse_word("", rank=2)) == identity_perm(2)
