"""Constructive common-multiple witnesses in free groups.

Given finitely many nontrivial targets, build one straight-line word lying
in the normal closure of every target, together with a replayable
derivation of each membership.  A quotient that kills any target then
kills the witness, so the witness survives only where every target
survives and its normal divisibility dominates each target's.

Rank one is degenerate (commutators collapse), so there the witness is the
literal power x^lcm of the target exponents.  In higher rank targets are
padded to a power of two and combined pairwise by commutators, conjugating
the right entry just enough to keep the pair from commuting.
"""

import json
import math
from dataclasses import dataclass

from .errors import InputError, InternalError
from .lowindex import enumerate_normal
from .permrep import eval_word
from .words import (
    DEFAULT_FLAT_CAP,
    Ball,
    FreeWord,
    SLBuilder,
    SLWord,
    commutator,
    conjugate,
    format_word,
    generator,
    multiply,
    parse_word,
    power,
    reduce,
    sl_flatten,
    sl_length_bound,
)


@dataclass(frozen=True)
class WitnessCertificate:
    """A straight-line witness plus one membership derivation per target.

    `derivations[i]` replays to a proof that `word` lies in the normal
    closure of `targets[i]`.  `flat` is the reduced form when it fit the
    construction budget, `nontrivial_verified` says the witness is known
    to differ from the identity.
    """

    rank: int
    targets: tuple[FreeWord, ...]
    word: SLWord
    declared_bound: int
    derivations: tuple[tuple[dict, ...], ...]
    flat: FreeWord | None
    nontrivial_verified: bool


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def level_overhead(k: int) -> int:
    """Additive slack of the pairing tree after k levels.

    One level turns bounds b_u, b_v into 2 b_u + 2 (b_v + 2), so the slack
    obeys a_k = 4 a_{k-1} + 4, giving (4^{k+1} - 4) / 3.
    """
    if not isinstance(k, int) or k < 0:
        raise InputError(f"level count must be a nonnegative integer, got {k!r}")
    return (4 ** (k + 1) - 4) // 3


def _check_targets(targets) -> tuple[FreeWord, ...]:
    targets = tuple(targets)
    if not targets:
        raise InputError("need at least one target")
    for t in targets:
        if not isinstance(t, FreeWord):
            raise InputError(f"targets must be FreeWord, got {type(t).__name__}")
        if t.is_identity:
            raise InputError("targets must be nontrivial")
    rank = targets[0].rank
    if any(t.rank != rank for t in targets):
        raise InputError("targets must share one rank")
    return targets


def _ground(node: int) -> dict:
    return {"rule": "ground", "node": node, "premises": []}


def _witness_rank_one(targets: tuple[FreeWord, ...], budget: int) -> WitnessCertificate:
    exponents = [len(t) if t.letters[0] > 0 else -len(t) for t in targets]
    m = math.lcm(*(abs(e) for e in exponents))
    builder = SLBuilder(1)
    base = builder.gen(1)
    target_nodes = [builder.word(t) for t in targets]
    root = builder.pow(base, m) if m != 1 else base
    derivations = []
    for node, e in zip(target_nodes, exponents):
        steps = [_ground(node)]
        if node != root:
            steps.append(
                {"rule": "power", "node": root, "premises": [node], "exponent": m // e}
            )
        derivations.append(tuple(steps))
    flat = power(generator(1, 1), m) if m <= budget else None
    return WitnessCertificate(
        rank=1,
        targets=targets,
        word=builder.build(root),
        declared_bound=m,
        derivations=tuple(derivations),
        flat=flat,
        nontrivial_verified=True,
    )


def _pick_conjugator(u_flat: FreeWord, v_flat: FreeWord) -> FreeWord | None:
    """Identity or a generator g with u and g v g^-1 not commuting."""
    rank = u_flat.rank
    for mu in [None] + [generator(rank, i) for i in range(1, rank + 1)]:
        z = v_flat if mu is None else conjugate(v_flat, mu)
        if multiply(u_flat, z) != multiply(z, u_flat):
            return mu
    raise InternalError(
        "no conjugator among the generators separates "
        f"{format_word(u_flat)} from {format_word(v_flat)}"
    )


def lcm_witness(targets, *, flat_cap: int | None = None) -> WitnessCertificate:
    """Build a witness in the normal closure of every target.

    The reduced form is tracked while it fits the budget; once it does,
    nontriviality is guaranteed because every pairing commutes its two
    entries only after checking they do not commute.
    """
    targets = _check_targets(targets)
    rank = targets[0].rank
    budget = flat_cap if flat_cap is not None else DEFAULT_FLAT_CAP
    if budget < 1:
        raise InputError(f"flat cap must be positive, got {budget}")
    if rank == 1:
        return _witness_rank_one(targets, budget)

    builder = SLBuilder(rank)
    elements = [
        {"node": builder.word(t), "flat": t, "derivs": {i: (_ground(builder.word(t)),)}}
        for i, t in enumerate(targets)
    ]
    while len(elements) & (len(elements) - 1):
        elements.append(elements[0])

    while len(elements) > 1:
        paired = []
        for u, v in zip(elements[::2], elements[1::2]):
            mu = None
            tracked = u["flat"] is not None and v["flat"] is not None
            if tracked:
                mu = _pick_conjugator(u["flat"], v["flat"])
            else:
                mu = generator(rank, 2)
            if mu is None:
                z_node = v["node"]
                conj_step = None
            else:
                z_node = builder.conj(v["node"], builder.gen(mu.letters[0]))
                conj_step = {
                    "rule": "conjugate",
                    "node": z_node,
                    "premises": [v["node"]],
                }
            node = builder.comm(u["node"], z_node)

            flat = None
            if tracked:
                z_flat = v["flat"] if mu is None else conjugate(v["flat"], mu)
                if 2 * (len(u["flat"]) + len(z_flat)) <= budget:
                    flat = commutator(u["flat"], z_flat)
                    if flat.is_identity:
                        raise InternalError("pairing collapsed despite the check")

            derivs = {
                t: steps
                + ({"rule": "commutator_left", "node": node, "premises": [u["node"]]},)
                for t, steps in u["derivs"].items()
            }
            for t, steps in v["derivs"].items():
                if t in derivs:
                    continue
                tail = () if conj_step is None else (conj_step,)
                derivs[t] = (
                    steps
                    + tail
                    + (
                        {
                            "rule": "commutator_right",
                            "node": node,
                            "premises": [z_node],
                        },
                    )
                )
            paired.append({"node": node, "flat": flat, "derivs": derivs})
        elements = paired

    top = elements[0]
    if set(top["derivs"]) != set(range(len(targets))):
        raise InternalError("a target lost its derivation during pairing")
    word = builder.build(top["node"])
    return WitnessCertificate(
        rank=rank,
        targets=targets,
        word=word,
        declared_bound=sl_length_bound(word),
        derivations=tuple(top["derivs"][i] for i in range(len(targets))),
        flat=top["flat"],
        nontrivial_verified=top["flat"] is not None,
    )


def lcm_ball_witness(rank: int, n: int, *, flat_cap: int | None = None) -> WitnessCertificate:
    """Witness for every nontrivial word of length at most n at once."""
    if n < 1:
        raise InputError(f"radius must be positive, got {n}")
    return lcm_witness(Ball(rank, n).nontrivial(), flat_cap=flat_cap)


def _node_flat(w: SLWord, node: int, cap: int) -> FreeWord | None:
    return sl_flatten(SLWord(w.rank, w.nodes[: node + 1], node), cap)


def _replay(cert: WitnessCertificate, index: int, cap: int) -> list[str]:
    w = cert.word
    nodes = w.nodes
    target = cert.targets[index]
    failures = []
    derived: set[int] = set()
    for pos, step in enumerate(cert.derivations[index]):
        where = f"derivation {index} step {pos}"
        rule = step.get("rule")
        node = step.get("node")
        premises = list(step.get("premises", []))
        if not (isinstance(node, int) and 0 <= node < len(nodes)):
            failures.append(f"{where}: node {node!r} out of range")
            break
        shape = nodes[node]
        if any(not (isinstance(p, int) and p in derived) for p in premises):
            failures.append(f"{where}: uses an underived premise")
            break
        if rule == "ground":
            flat = _node_flat(w, node, max(len(target), 1))
            if flat != target:
                failures.append(f"{where}: ground node is not the target")
        elif rule == "inverse":
            if shape[0] != "inv" or premises != [shape[1]]:
                failures.append(f"{where}: node is not the inverse of the premise")
        elif rule == "product":
            if shape[0] != "mul" or premises != [shape[1], shape[2]]:
                failures.append(f"{where}: node is not the product of the premises")
        elif rule == "power":
            e = step.get("exponent")
            ok = (
                shape[0] == "pow"
                and len(premises) == 1
                and isinstance(e, int)
                and _power_step_ok(nodes, node, premises[0], e, w, cap)
            )
            if not ok:
                failures.append(f"{where}: node is not the premise to the exponent")
        elif rule == "conjugate":
            if shape[0] != "conj" or premises != [shape[1]]:
                failures.append(f"{where}: node is not a conjugate of the premise")
        elif rule == "commutator_left":
            if shape[0] != "comm" or premises != [shape[1]]:
                failures.append(f"{where}: node is not a commutator with left premise")
        elif rule == "commutator_right":
            if shape[0] != "comm" or premises != [shape[2]]:
                failures.append(f"{where}: node is not a commutator with right premise")
        else:
            failures.append(f"{where}: unknown rule {rule!r}")
            break
        derived.add(node)
    if not failures and w.root not in derived:
        failures.append(f"derivation {index}: never reaches the witness itself")
    return failures


def _power_step_ok(nodes, node, premise, e, w: SLWord, cap: int) -> bool:
    base, total = nodes[node][1], nodes[node][2]
    # structural case: premise is the same base, or a power of it
    if premise == base and e == total:
        return True
    p = nodes[premise]
    if p[0] == "pow" and p[1] == base and p[2] * e == total:
        return True
    node_flat = _node_flat(w, node, cap)
    premise_flat = _node_flat(w, premise, cap)
    if node_flat is None or premise_flat is None:
        return False
    try:
        return power(premise_flat, e, cap=cap) == node_flat
    except Exception:
        return False


def verify_certificate(cert: WitnessCertificate, *, flat_cap: int | None = None) -> VerifyResult:
    """Replay every derivation and recheck the declared facts."""
    cap = flat_cap if flat_cap is not None else DEFAULT_FLAT_CAP
    failures: list[str] = []
    if sl_length_bound(cert.word) != cert.declared_bound:
        failures.append("declared length bound does not match the straight-line word")
    if len(cert.derivations) != len(cert.targets):
        failures.append("one derivation per target is required")
    else:
        for i in range(len(cert.targets)):
            failures.extend(_replay(cert, i, cap))
    if cert.flat is not None:
        recomputed = sl_flatten(cert.word, max(len(cert.flat), 1))
        if recomputed != cert.flat:
            failures.append("stored reduced form does not match the word")
        elif cert.flat.is_identity:
            failures.append("witness reduces to the identity")
    if cert.nontrivial_verified and cert.flat is None:
        root = cert.word.nodes[cert.word.root]
        structural = (
            root[0] == "pow"
            and root[2] != 0
            and cert.word.nodes[root[1]][0] == "gen"
        )
        if not structural:
            failures.append("nontriviality is claimed without evidence")
    return VerifyResult(ok=not failures, failures=tuple(failures))


def cert_to_json(cert: WitnessCertificate) -> dict:
    return {
        "rank": cert.rank,
        "targets": [format_word(t) for t in cert.targets],
        "nodes": [list(node) for node in cert.word.nodes],
        "root": cert.word.root,
        "declared_bound": cert.declared_bound,
        "derivations": [
            [dict(step) for step in steps] for steps in cert.derivations
        ],
        "flat": None if cert.flat is None else format_word(cert.flat),
        "nontrivial_verified": cert.nontrivial_verified,
    }


def cert_from_json(data) -> WitnessCertificate:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        rank = data["rank"]
        word = SLWord(rank, [tuple(n) for n in data["nodes"]], data["root"])
        targets = tuple(parse_word(t, rank) for t in data["targets"])
        derivations = tuple(
            tuple(dict(step) for step in steps) for steps in data["derivations"]
        )
        flat = None if data["flat"] is None else parse_word(data["flat"], rank)
        return WitnessCertificate(
            rank=rank,
            targets=targets,
            word=word,
            declared_bound=int(data["declared_bound"]),
            derivations=derivations,
            flat=flat,
            nontrivial_verified=bool(data["nontrivial_verified"]),
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed certificate: {exc}") from exc


def power_set_witness(rank: int, n: int, *, scan_cap: int = 8) -> dict:
    """Witness for the target set {x, x^2, ..., x^n} and what it implies.

    In any group of order at most n the image of x has order at most n,
    so one of the targets dies and the witness dies with it: its normal
    divisibility is at least n + 1.  The scan re-checks a prefix of that
    claim against the actual quotient lists.
    """
    if rank < 1 or n < 1:
        raise InputError(f"rank and n must be positive, got {rank}, {n}")
    x = generator(rank, 1)
    cert = lcm_witness([power(x, i) for i in range(1, n + 1)])
    scanned = list(range(2, min(n, scan_cap) + 1))
    for q in scanned:
        for quot in enumerate_normal(rank, q):
            if not eval_word(quot, cert.word).is_identity:
                raise InternalError(
                    f"a quotient of order {q} missed the power-set witness"
                )
    return {
        "rank": rank,
        "n": n,
        "targets": n,
        "witness_nodes": len(cert.word.nodes),
        "declared_bound": cert.declared_bound,
        "normal_divisibility_lower": n + 1,
        "nontrivial_verified": cert.nontrivial_verified,
        "scanned_orders": scanned,
        "scan_all_killed": True,
        "certificate": cert,
    }


def _power_target(t: FreeWord) -> tuple[int, int] | None:
    """(generator index, positive exponent) when t is g^e, else None."""
    if t.is_identity or len(set(t.letters)) != 1:
        return None
    return abs(t.letters[0]), len(t)


def _mod_reduce(letters: tuple[int, ...], gen: int, modulus: int) -> tuple[int, ...]:
    out: list[int] = []
    i = 0
    while i < len(letters):
        l = letters[i]
        if abs(l) != gen:
            out.append(l)
            i += 1
            continue
        j = i
        e = 0
        while j < len(letters) and abs(letters[j]) == gen:
            e += 1 if letters[j] > 0 else -1
            j += 1
        e %= modulus
        if 2 * e > modulus:
            e -= modulus
        out.extend([gen] * e if e >= 0 else [-gen] * (-e))
        i = j
    return tuple(out)


def _in_power_closure(w: FreeWord, gen: int, modulus: int) -> bool:
    """Exact membership in the normal closure of gen^modulus.

    Declaring gen^modulus trivial leaves the free product of Z/modulus
    with the remaining free generators; reduce to its normal form and
    test for emptiness.
    """
    work = w.letters
    while True:
        step = reduce(w.rank, _mod_reduce(work, gen, modulus)).letters
        if step == work:
            return not work
        work = step


def closure_membership(w: FreeWord, target: FreeWord, *, order_cap: int = 6) -> bool | None:
    """Is w in the normal closure of the target?

    Exact when the target is a power of one generator.  Otherwise scan
    small quotients for one killing the target but not w, which refutes
    membership; absent a refutation the answer is None.
    """
    if w.rank != target.rank:
        raise InputError(f"rank mismatch: {w.rank} vs {target.rank}")
    if target.is_identity:
        raise InputError("the normal closure of the identity is trivial")
    if w.is_identity:
        return True
    pt = _power_target(target)
    if pt is not None:
        return _in_power_closure(w, pt[0], pt[1])
    for q in range(2, order_cap + 1):
        for quot in enumerate_normal(w.rank, q):
            if eval_word(quot, target).is_identity and not eval_word(quot, w).is_identity:
                return False
    return None


def exact_lcm_small(targets, *, radius_cap: int = 6) -> FreeWord | None:
    """First word in word order inside every target's normal closure.

    Every target must be a power of a single generator so membership is
    exact; returns None when nothing within the radius qualifies.
    """
    targets = _check_targets(targets)
    pts = []
    for t in targets:
        pt = _power_target(t)
        if pt is None:
            raise InputError(
                f"exact search needs single-generator powers, got {format_word(t)}"
            )
        pts.append(pt)
    rank = targets[0].rank
    for w in Ball(rank, radius_cap).nontrivial():
        if all(_in_power_closure(w, g, m) for g, m in pts):
            return w
    return None
