"""Checks for the finite-quotient enumerator.

The counting oracles here do not touch the package's own machinery: a raw
sweep over generator images in the symmetric group with its own breadth-first
relabelling dedup, and the standard recursion for the number of finite-index
subgroups of a free group.
"""

import itertools
import math
import random

import pytest

from resfin.errors import InputError, ResourceError
from resfin.lowindex import (
    DEFAULT_DEGREE_CAP,
    enumerate_normal,
    enumerate_subgroups,
    kernel_fingerprint,
    normal_count,
    normal_subgroup_growth,
    subgroup_count,
    word_battery,
)
from resfin.permrep import (
    Permutation,
    PermQuotient,
    canonical_key,
    eval_word,
    image_order,
    is_regular,
    is_transitive,
)
from resfin.words import generator


# --- independent oracles ---------------------------------------------------


def _inv(t):
    out = [0] * len(t)
    for i, v in enumerate(t):
        out[v] = i
    return tuple(out)


def _relabel_from_zero(gens, degree):
    # Breadth-first relabelling from point 0; None when not transitive.
    label = {0: 0}
    order = [0]
    invs = [_inv(g) for g in gens]
    i = 0
    while i < len(order):
        p = order[i]
        i += 1
        for g, gi in zip(gens, invs):
            for q in (g[p], gi[p]):
                if q not in label:
                    label[q] = len(order)
                    order.append(q)
    if len(order) != degree:
        return None
    return tuple(tuple(label[g[order[j]]] for j in range(degree)) for g in gens)


def _closure_size(gens, degree):
    seen = {tuple(range(degree))}
    frontier = list(seen)
    while frontier:
        fresh = []
        for a in frontier:
            for g in gens:
                b = tuple(g[a[i]] for i in range(degree))
                if b not in seen:
                    seen.add(b)
                    fresh.append(b)
        frontier = fresh
    return len(seen)


def _sweep_count(rank, degree, regular):
    perms = list(itertools.permutations(range(degree)))
    keys = set()
    for gens in itertools.product(perms, repeat=rank):
        key = _relabel_from_zero(gens, degree)
        if key is None:
            continue
        if regular and _closure_size(gens, degree) != degree:
            continue
        keys.add(key)
    return len(keys)


def _recursion_counts(rank, upto):
    # N_1 = 1; N_n = n (n!)^(rank-1) - sum_{i<n} ((n-i)!)^(rank-1) N_i.
    counts = [0, 1]
    for n in range(2, upto + 1):
        total = n * math.factorial(n) ** (rank - 1)
        total -= sum(
            math.factorial(n - i) ** (rank - 1) * counts[i] for i in range(1, n)
        )
        counts.append(total)
    return counts[1:]


# --- counts ----------------------------------------------------------------


def test_subgroup_counts_match_raw_sweep():
    for degree in range(1, 5):
        assert subgroup_count(2, degree) == _sweep_count(2, degree, False)


def test_subgroup_counts_match_recursion():
    assert [subgroup_count(2, d) for d in range(1, 7)] == _recursion_counts(2, 6)
    assert _recursion_counts(2, 6) == [1, 3, 13, 71, 461, 3447]


def test_rank_three_subgroup_counts_match_recursion():
    assert [subgroup_count(3, d) for d in (1, 2, 3)] == _recursion_counts(3, 3)


def test_normal_counts_match_raw_sweep():
    for order in range(1, 6):
        assert normal_count(2, order) == _sweep_count(2, order, True)


def test_normal_counts_frozen_midrange():
    # Cross-checked by hand against surjection/automorphism counts per
    # isomorphism type; order 8 splits as 12 cyclic + 3 C4xC2 + 3 dihedral
    # + 1 quaternion.
    assert normal_count(2, 6) == 15
    assert normal_count(2, 7) == 8
    assert normal_count(2, 8) == 19


def test_prime_order_count_law():
    # A surjection onto a group of prime order q lands in Z/q, so the kernels
    # match the q+1 lines of a two-dimensional vector space over F_q.
    for q in (2, 3, 5, 7, 11, 13):
        assert normal_count(2, q, max_degree=13) == q + 1


def test_rank_one_counts_are_all_one():
    for d in range(1, 9):
        assert subgroup_count(1, d) == 1
        assert normal_count(1, d) == 1


def test_growth_accumulates_counts():
    assert normal_subgroup_growth(2, 3) == 8
    assert normal_subgroup_growth(2, 6) == 36
    total = sum(normal_count(2, q) for q in range(1, 9))
    assert normal_subgroup_growth(2, 8) == total
    with pytest.raises(InputError):
        normal_subgroup_growth(2, 0)


# --- shape of the yields ---------------------------------------------------


def test_yields_are_transitive_of_exact_degree():
    for d in range(1, 5):
        for q in enumerate_subgroups(2, d):
            assert q.degree == d
            assert q.rank == 2
            assert is_transitive(q)


def test_normal_yields_are_regular():
    for order in range(1, 7):
        for q in enumerate_normal(2, order):
            assert is_regular(q)
            assert image_order(q) == order


def test_rank_one_yield_is_the_full_cycle():
    (q,) = enumerate_subgroups(1, 5)
    cycles = eval_word(q, generator(1, 1)).cycles()
    assert len(cycles) == 1 and len(cycles[0]) == 5
    assert image_order(q) == 5


def test_enumeration_is_deterministic_and_duplicate_free():
    first = [canonical_key(q) for q in enumerate_subgroups(2, 5)]
    second = [canonical_key(q) for q in enumerate_subgroups(2, 5)]
    assert first == second
    assert len(set(first)) == len(first)
    normals = [canonical_key(q) for q in enumerate_normal(2, 8)]
    assert len(set(normals)) == len(normals)


# --- kernel fingerprints ---------------------------------------------------


def test_fingerprints_separate_kernels():
    for order in range(2, 7):
        battery = word_battery(2, order)
        prints = [kernel_fingerprint(q, battery) for q in enumerate_normal(2, order)]
        assert len(set(prints)) == len(prints)


def test_fingerprint_and_key_ignore_relabelling():
    # A regular action looks the same from every basepoint, so conjugating
    # the generator images by any permutation changes neither the kernel
    # fingerprint nor the canonical key.
    rng = random.Random(7)
    for q in enumerate_normal(2, 6):
        images = list(range(1, q.degree + 1))
        rng.shuffle(images)
        s = Permutation(images)
        relabeled = PermQuotient([s.inverse() * g * s for g in q.gens])
        assert kernel_fingerprint(relabeled) == kernel_fingerprint(q)
        assert canonical_key(relabeled) == canonical_key(q)


def test_word_battery_contents():
    battery = word_battery(2, 6)
    radius = 2 * (6 - 1).bit_length() + 2
    assert all(len(w) <= radius for w in battery)
    assert generator(2, 1) in battery
    assert generator(2, 2) in battery
    assert battery == word_battery(2, 6)


# --- argument checking -----------------------------------------------------


def test_rejects_bad_arguments():
    with pytest.raises(InputError):
        subgroup_count(0, 3)
    with pytest.raises(InputError):
        normal_count(2, 0)
    with pytest.raises(ResourceError):
        enumerate_subgroups(2, DEFAULT_DEGREE_CAP + 1)
    with pytest.raises(ResourceError):
        enumerate_normal(2, 300, max_degree=300)
