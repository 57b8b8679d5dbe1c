import itertools
import random

import numpy as np
import pytest

from bmatching import (
    BMatchInstance,
    InfeasibleInstance,
    OracleLimits,
    TooLarge,
    brute_force_assignment,
    brute_force_b_matching,
    generate_instance,
    verify_b_matching,
)


def make(s, t, alpha, beta, W):
    return BMatchInstance(s=s, t=t, alpha=tuple(alpha), beta=tuple(beta), weights=np.array(W, dtype=float))


def raw_enumeration(inst, simple_edges=False):
    """Reference implementation: literal product enumeration over all pairs.

    Only usable on tiny instances; exists to cross-check the faster sweep.
    """
    s, t = inst.s, inst.t
    caps = [
        1 if simple_edges else min(inst.alpha[i], inst.beta[j])
        for i in range(s)
        for j in range(t)
    ]
    best = None
    for vec in itertools.product(*(range(c + 1) for c in caps)):
        left = [sum(vec[i * t + j] for j in range(t)) for i in range(s)]
        right = [sum(vec[i * t + j] for i in range(s)) for j in range(t)]
        if any(not 1 <= left[i] <= inst.alpha[i] for i in range(s)):
            continue
        if any(not 1 <= right[j] <= inst.beta[j] for j in range(t)):
            continue
        weight = sum(
            vec[i * t + j] * float(inst.weights[i, j]) for i in range(s) for j in range(t)
        )
        if best is None or weight > best[0] or (weight == best[0] and vec < best[1]):
            best = (weight, vec)
    return best


def test_oracle_forced_instance():
    weight, bm = brute_force_b_matching(make(1, 2, [2], [1, 1], [[5, 3]]))
    assert weight == 8
    assert bm.edges == ((0, 0, 1), (0, 1, 1))


def test_oracle_uses_multiplicity_two():
    weight, bm = brute_force_b_matching(make(1, 1, [2], [2], [[5]]))
    assert weight == 10
    assert bm.edges == ((0, 0, 2),)


def test_oracle_stress_instance_optimum():
    weight, bm = brute_force_b_matching(make(2, 2, [2, 1], [1, 2], [[6, 1], [2, 5]]))
    assert weight == 12
    assert bm.edges == ((0, 0, 1), (0, 1, 1), (1, 1, 1))


def test_oracle_matches_raw_enumeration():
    rng = random.Random(31)
    for k in range(120):
        s = rng.randint(1, 3)
        t = rng.randint(1, 3)
        inst = generate_instance(s, t, 2, -9, 9, True, seed=2000 + k)
        weight, bm = brute_force_b_matching(inst)
        ref_weight, ref_vec = raw_enumeration(inst)
        assert weight == ref_weight
        got_vec = [0] * (s * t)
        for i, j, mult in bm.edges:
            got_vec[i * t + j] = mult
        assert tuple(got_vec) == ref_vec  # same lexicographic tie-break
        assert verify_b_matching(inst, bm).ok


def test_oracle_simple_edges_matches_raw_enumeration():
    rng = random.Random(32)
    for k in range(40):
        inst = generate_instance(rng.randint(1, 3), rng.randint(1, 3), 3, -9, 9, True, seed=4000 + k)
        ref = raw_enumeration(inst, simple_edges=True)
        if ref is None:
            with pytest.raises(InfeasibleInstance):
                brute_force_b_matching(inst, simple_edges=True)
            continue
        weight, bm = brute_force_b_matching(inst, simple_edges=True)
        assert weight == ref[0]
        assert all(mult == 1 for _, _, mult in bm.edges)


def test_oracle_weight_monotone_in_capacity():
    rng = random.Random(33)
    for k in range(40):
        inst = generate_instance(rng.randint(1, 3), rng.randint(1, 3), 2, -9, 9, True, seed=6000 + k)
        base, _ = brute_force_b_matching(inst)
        i = rng.randrange(inst.s)
        bumped = BMatchInstance(
            s=inst.s,
            t=inst.t,
            alpha=tuple(a + (1 if idx == i else 0) for idx, a in enumerate(inst.alpha)),
            beta=inst.beta,
            weights=inst.weights,
        )
        more, _ = brute_force_b_matching(bumped)
        assert more >= base


def test_oracle_infeasible_instance():
    with pytest.raises(InfeasibleInstance):
        brute_force_b_matching(make(2, 1, [1, 1], [1], [[1], [2]]))


def test_oracle_too_large_guard():
    inst = generate_instance(4, 4, 3, -9, 9, True, seed=0)
    with pytest.raises(TooLarge):
        brute_force_b_matching(inst, OracleLimits(max_states=10))


def test_assignment_brute_force_values():
    assert brute_force_assignment([[5]]) == 5
    assert brute_force_assignment([[3, 1], [2, 4]]) == 7
    assert brute_force_assignment([[1, 0], [0, 1]]) == 2


def test_assignment_brute_force_caps_at_eight():
    with pytest.raises(TooLarge):
        brute_force_assignment(np.zeros((9, 9)))


def test_oracle_equals_assignment_on_caps_one_squares():
    rng = random.Random(34)
    for k in range(40):
        n = rng.randint(1, 4)
        W = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        inst = make(n, n, [1] * n, [1] * n, W)
        weight, _ = brute_force_b_matching(inst)
        assert weight == brute_force_assignment(W)
