"""Independent exhaustive ground truth for small instances.

The b-matching oracle searches the full space of per-pair multiplicity
assignments m[i][j] in [0, min(alpha_i, beta_j)], keeping those whose
degrees land in [1, capacity] on both sides.  The search is organized as an
exact sweep over column-degree profiles so that desk-scale instances finish
fast, but the result is identical to raw enumeration: the maximum-weight
assignment, ties broken by the lexicographically smallest row-major
multiplicity vector.  Nothing here shares code with the solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .core import BMatchInstance, BMatching, BMatchingError


class TooLarge(BMatchingError):
    """The enumeration would exceed the configured state cap."""


class InfeasibleInstance(BMatchingError):
    """No multiplicity assignment satisfies the degree bounds."""


@dataclass(frozen=True)
class OracleLimits:
    """Cap on enumeration state to keep the oracle at desk scale."""

    max_states: int = 10_000_000

    def __post_init__(self) -> None:
        if self.max_states < 1:
            raise ValueError(f"max_states must be >= 1, got {self.max_states}")


def _row_vectors(caps: list[int], row_cap: int, max_states: int) -> list[tuple[int, ...]]:
    """All multiplicity rows with entries <= caps[j] and 1 <= sum <= row_cap,
    in lexicographic order."""
    out: list[tuple[int, ...]] = []
    t = len(caps)

    def rec(j: int, prefix: list[int], total: int) -> None:
        if j == t:
            if total >= 1:
                out.append(tuple(prefix))
                if len(out) > max_states:
                    raise TooLarge(f"row enumeration exceeded max_states={max_states}")
            return
        for v in range(min(caps[j], row_cap - total) + 1):
            prefix.append(v)
            rec(j + 1, prefix, total + v)
            prefix.pop()

    rec(0, [], 0)
    return out


def brute_force_b_matching(
    inst: BMatchInstance,
    limits: OracleLimits | None = None,
    simple_edges: bool = False,
) -> tuple[float, BMatching]:
    """Exact maximum-weight b-matching by exhaustive search.

    ``simple_edges`` restricts multiplicities to 0/1 (a simple-subgraph
    variant kept for comparison experiments); the default multiset
    semantics mirrors what collapsing the expanded graph can produce.
    """
    limits = limits or OracleLimits()
    s, t = inst.s, inst.t
    W = inst.weights
    states = s + 1
    for b in inst.beta:
        states *= b + 1
        if states > limits.max_states:
            raise TooLarge(
                f"profile space exceeds max_states={limits.max_states}; "
                "raise the limit or shrink the instance"
            )

    # best[profile] = (weight, flat multiplicity vector) over rows processed
    # so far; profile is the tuple of column degrees.  Keeping the lex-least
    # vector per (profile, max weight) state is enough to recover the global
    # lex-least optimum, because prefixes reaching the same profile are
    # interchangeable in every completion.
    best: dict[tuple[int, ...], tuple[float, tuple[int, ...]]] = {
        tuple([0] * t): (0.0, ())
    }
    for i in range(s):
        caps = [1 if simple_edges else min(inst.alpha[i], inst.beta[j]) for j in range(t)]
        rows = _row_vectors(caps, inst.alpha[i], limits.max_states)
        nxt: dict[tuple[int, ...], tuple[float, tuple[int, ...]]] = {}
        for profile, (weight, vec) in best.items():
            for row in rows:
                new_profile = tuple(profile[j] + row[j] for j in range(t))
                if any(new_profile[j] > inst.beta[j] for j in range(t)):
                    continue
                new_weight = weight + sum(row[j] * float(W[i, j]) for j in range(t))
                new_vec = vec + row
                cur = nxt.get(new_profile)
                if cur is None or new_weight > cur[0] or (new_weight == cur[0] and new_vec < cur[1]):
                    nxt[new_profile] = (new_weight, new_vec)
            if len(nxt) > limits.max_states:
                raise TooLarge(f"explored states exceeded max_states={limits.max_states}")
        best = nxt
        if not best:
            raise InfeasibleInstance("no assignment satisfies the degree bounds")

    winner: tuple[float, tuple[int, ...]] | None = None
    for profile, (weight, vec) in best.items():
        if min(profile) < 1:
            continue
        if winner is None or weight > winner[0] or (weight == winner[0] and vec < winner[1]):
            winner = (weight, vec)
    if winner is None:
        raise InfeasibleInstance("no assignment satisfies the degree bounds")

    _, vec = winner
    edges = []
    total = 0.0
    for i in range(s):
        for j in range(t):
            mult = vec[i * t + j]
            if mult >= 1:
                edges.append((i, j, mult))
                total += mult * float(W[i, j])
    bm = BMatching(edges=tuple(edges), total_weight=total)
    return total, bm


def brute_force_assignment(W) -> float:
    """Maximum assignment weight over all n! permutations (n <= 8)."""
    W = np.asarray(W, dtype=np.float64)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise ValueError(f"need a square matrix, got shape {W.shape}")
    n = W.shape[0]
    if n > 8:
        raise TooLarge(f"permutation enumeration capped at n=8, got n={n}")
    if n == 0:
        return 0.0
    return max(sum(float(W[i, perm[i]]) for i in range(n)) for perm in permutations(range(n)))
