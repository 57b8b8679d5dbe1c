"""Problem instances, capacity expansion, and b-matching verification.

A b-matching instance is a complete weighted bipartite graph with a
per-vertex capacity on each side; a solution is an edge multiset in which
every vertex has between 1 and capacity-many incident edges (counted with
multiplicity).  The solver works on an expanded graph in which every vertex
is replaced by capacity-many copies sharing its weight row/column, and the
one-to-one matching found there is collapsed back to owner pairs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np


class BMatchingError(Exception):
    """Base class for errors raised by this package."""


class BadRange(BMatchingError, ValueError):
    """Instance generator called with an empty or inverted parameter range."""


class InvalidInstance(BMatchingError, ValueError):
    """An operation requiring a valid instance received a rejected one."""

    def __init__(self, report: "ValidationReport"):
        super().__init__(str(report))
        self.report = report


class InconsistentMatching(BMatchingError):
    """The two partner maps of a matching disagree."""


# Validation codes.
OK = "OK"
NON_POSITIVE_CAPACITY = "NonPositiveCapacity"
SHAPE_MISMATCH = "ShapeMismatch"
NON_FINITE_WEIGHT = "NonFiniteWeight"
INFEASIBLE = "Infeasible"

# Initial matching strategies.
INITIAL_EMPTY = "empty"
INITIAL_GREEDY_EQUALITY = "greedy_equality"


@dataclass(frozen=True, eq=False)
class BMatchInstance:
    """A complete bipartite b-matching problem.

    ``s`` left vertices with capacities ``alpha``, ``t`` right vertices with
    capacities ``beta``, and a dense ``s x t`` matrix of real edge weights.
    Missing edges are not supported; the matrix is always complete.
    Negative weights are allowed (the degree lower bound of 1 can force them
    into a solution).
    """

    s: int
    t: int
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    weights: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(int(b) for b in self.beta))
        w = np.array(self.weights, dtype=np.float64)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BMatchInstance):
            return NotImplemented
        return (
            self.s == other.s
            and self.t == other.t
            and self.alpha == other.alpha
            and self.beta == other.beta
            and self.weights.shape == other.weights.shape
            and np.array_equal(self.weights, other.weights)
        )

    def __repr__(self) -> str:
        return (
            f"BMatchInstance(s={self.s}, t={self.t}, alpha={self.alpha}, "
            f"beta={self.beta}, weights=<{self.weights.shape}>)"
        )


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of ``validate_instance``: OK or the first violated rule."""

    code: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.code == OK

    def __str__(self) -> str:
        return self.code if not self.detail else f"{self.code}: {self.detail}"


def validate_instance(inst: BMatchInstance) -> ValidationReport:
    """Check instance invariants, returning OK or the first violation.

    Feasibility requires s <= sum(beta) and t <= sum(alpha): every left
    vertex needs a partner and the right side can absorb at most sum(beta)
    edge endpoints, and symmetrically.
    """
    if inst.s < 1 or inst.t < 1:
        return ValidationReport(SHAPE_MISMATCH, f"need s,t >= 1, got s={inst.s}, t={inst.t}")
    if len(inst.alpha) != inst.s:
        return ValidationReport(SHAPE_MISMATCH, f"len(alpha)={len(inst.alpha)} != s={inst.s}")
    if len(inst.beta) != inst.t:
        return ValidationReport(SHAPE_MISMATCH, f"len(beta)={len(inst.beta)} != t={inst.t}")
    if inst.weights.shape != (inst.s, inst.t):
        return ValidationReport(
            SHAPE_MISMATCH, f"weights shape {inst.weights.shape} != ({inst.s}, {inst.t})"
        )
    for i, a in enumerate(inst.alpha):
        if a < 1:
            return ValidationReport(NON_POSITIVE_CAPACITY, f"alpha[{i}]={a} < 1")
    for j, b in enumerate(inst.beta):
        if b < 1:
            return ValidationReport(NON_POSITIVE_CAPACITY, f"beta[{j}]={b} < 1")
    if not np.isfinite(inst.weights).all():
        i, j = np.argwhere(~np.isfinite(inst.weights))[0]
        return ValidationReport(NON_FINITE_WEIGHT, f"weights[{i}][{j}] is not finite")
    if inst.s > sum(inst.beta):
        return ValidationReport(
            INFEASIBLE, f"s={inst.s} > sum(beta)={sum(inst.beta)}: right side overflows"
        )
    if inst.t > sum(inst.alpha):
        return ValidationReport(
            INFEASIBLE, f"t={inst.t} > sum(alpha)={sum(inst.alpha)}: left side overflows"
        )
    return ValidationReport(OK)


@dataclass(eq=False)
class ExpandedGraph:
    """The capacity-expanded graph.

    Left vertex i becomes a contiguous block of ``alpha[i]`` copies (the
    original first), right vertex j a block of ``beta[j]`` copies; a copy
    inherits its owner's weight row/column, so ``weight(x, y)`` is just a
    lookup through the owner maps.
    """

    p: int
    q: int
    left_owner: np.ndarray
    right_owner: np.ndarray
    left_groups: tuple[range, ...]
    right_groups: tuple[range, ...]
    weights: np.ndarray  # the original s x t matrix, shared with the instance

    def weight(self, x: int, y: int) -> float:
        return float(self.weights[self.left_owner[x], self.right_owner[y]])

    def left_weights(self, x: int, right_vertices: np.ndarray) -> np.ndarray:
        """Weights from left vertex x to each of ``right_vertices``."""
        return self.weights[self.left_owner[x], self.right_owner[right_vertices]]

    def right_weights(self, y: int, left_vertices: np.ndarray) -> np.ndarray:
        """Weights from right vertex y to each of ``left_vertices``."""
        return self.weights[self.left_owner[left_vertices], self.right_owner[y]]

    def expanded_weights(self) -> np.ndarray:
        """Materialize the full p x q weight matrix (checks and tests only)."""
        return self.weights[np.ix_(self.left_owner, self.right_owner)]


def expand(inst: BMatchInstance) -> ExpandedGraph:
    """Build the expanded graph with p = sum(alpha) and q = sum(beta).

    With all capacities 1 the expansion is the original graph.
    """
    left_groups = []
    left_owner = []
    start = 0
    for i, a in enumerate(inst.alpha):
        left_groups.append(range(start, start + a))
        left_owner.extend([i] * a)
        start += a
    right_groups = []
    right_owner = []
    start = 0
    for j, b in enumerate(inst.beta):
        right_groups.append(range(start, start + b))
        right_owner.extend([j] * b)
        start += b
    return ExpandedGraph(
        p=len(left_owner),
        q=len(right_owner),
        left_owner=np.asarray(left_owner, dtype=np.int64),
        right_owner=np.asarray(right_owner, dtype=np.int64),
        left_groups=tuple(left_groups),
        right_groups=tuple(right_groups),
        weights=inst.weights,
    )


@dataclass(frozen=True)
class BMatching:
    """A collapsed result: owner-pair edges with multiplicities.

    Edges are (left index, right index, multiplicity) with unique (i, j)
    pairs, sorted by (i, j).  A pair can carry multiplicity > 1 when both an
    original and its copy were matched into the same opposite group; that
    multiset reading is kept deliberately rather than dropping duplicates.
    """

    edges: tuple[tuple[int, int, int], ...]
    total_weight: float


def collapse(g: ExpandedGraph, m) -> BMatching:
    """Project a matching on the expanded graph down to owner pairs.

    Each matched expanded edge contributes 1 to the multiplicity of its
    owner pair; the total weight is the exact sum of matched expanded edge
    weights.
    """
    if not m.consistent():
        raise InconsistentMatching("partner maps disagree")
    counts: dict[tuple[int, int], int] = {}
    total = 0.0
    for x in range(g.p):
        y = int(m.partner_left[x])
        if y < 0:
            continue
        pair = (int(g.left_owner[x]), int(g.right_owner[y]))
        counts[pair] = counts.get(pair, 0) + 1
        total += float(g.weights[pair])
    edges = tuple((i, j, mult) for (i, j), mult in sorted(counts.items()))
    return BMatching(edges=edges, total_weight=total)


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of ``verify_b_matching``: pass, or the first violation."""

    ok: bool
    detail: str = ""

    def __str__(self) -> str:
        return "pass" if self.ok else f"fail: {self.detail}"


def verify_b_matching(inst: BMatchInstance, bm: BMatching, eps: float = 1e-9) -> VerifyReport:
    """Check degree bounds, multiplicity bounds, and the stated weight.

    Violations are report content, not exceptions: every b-matching claimed
    by the solver or the oracle is re-checked through this single function.
    """

    def fail(msg: str) -> VerifyReport:
        return VerifyReport(False, msg)

    seen: set[tuple[int, int]] = set()
    left_deg = [0] * inst.s
    right_deg = [0] * inst.t
    total = 0.0
    for i, j, mult in bm.edges:
        if not (0 <= i < inst.s and 0 <= j < inst.t):
            return fail(f"edge ({i},{j}) out of range")
        if (i, j) in seen:
            return fail(f"duplicate edge pair ({i},{j})")
        seen.add((i, j))
        if mult < 1:
            return fail(f"edge ({i},{j}) has multiplicity {mult} < 1")
        cap = min(inst.alpha[i], inst.beta[j])
        if mult > cap:
            return fail(f"edge ({i},{j}) multiplicity {mult} > min(alpha,beta)={cap}")
        left_deg[i] += mult
        right_deg[j] += mult
        total += mult * float(inst.weights[i, j])
    for i in range(inst.s):
        if left_deg[i] < 1:
            return fail(f"left vertex {i} has degree {left_deg[i]} < 1")
        if left_deg[i] > inst.alpha[i]:
            return fail(f"left vertex {i} has degree {left_deg[i]} > alpha[{i}]={inst.alpha[i]}")
    for j in range(inst.t):
        if right_deg[j] < 1:
            return fail(f"right vertex {j} has degree {right_deg[j]} < 1")
        if right_deg[j] > inst.beta[j]:
            return fail(f"right vertex {j} has degree {right_deg[j]} > beta[{j}]={inst.beta[j]}")
    if not math.isclose(total, bm.total_weight, rel_tol=0.0, abs_tol=eps):
        return fail(f"weight mismatch: stated {bm.total_weight} != recomputed {total}")
    return VerifyReport(True)


def generate_instance(
    s: int,
    t: int,
    cap_max: int,
    weight_lo: float,
    weight_hi: float,
    integer_weights: bool = True,
    seed: int = 0,
) -> BMatchInstance:
    """Generate a random feasible instance, deterministic for a fixed seed.

    Capacities are drawn uniformly from [1, cap_max] and then bumped up
    round-robin until the counting feasibility conditions hold.  Weights are
    uniform in [weight_lo, weight_hi], rounded when ``integer_weights``.
    Draw order is fixed (alpha, beta, weights row-major) so results are
    reproducible byte for byte.
    """
    if s < 1 or t < 1:
        raise BadRange(f"need s,t >= 1, got s={s}, t={t}")
    if cap_max < 1:
        raise BadRange(f"need cap_max >= 1, got {cap_max}")
    if weight_lo > weight_hi:
        raise BadRange(f"need weight_lo <= weight_hi, got [{weight_lo}, {weight_hi}]")
    rng = random.Random(seed)
    alpha = [rng.randint(1, cap_max) for _ in range(s)]
    beta = [rng.randint(1, cap_max) for _ in range(t)]
    k = 0
    while sum(beta) < s:  # right side must absorb all left vertices
        beta[k % t] += 1
        k += 1
    k = 0
    while sum(alpha) < t:
        alpha[k % s] += 1
        k += 1
    rows = []
    for _ in range(s):
        row = [rng.uniform(weight_lo, weight_hi) for _ in range(t)]
        if integer_weights:
            row = [float(round(w)) for w in row]
        rows.append(row)
    return BMatchInstance(s=s, t=t, alpha=tuple(alpha), beta=tuple(beta), weights=np.array(rows))


@dataclass(frozen=True)
class SolverConfig:
    """Solver knobs: comparison tolerance and initial matching strategy.

    ``eps`` is an absolute tolerance; with integer weights every label and
    slack stays integer-valued, so the default never misfires.
    """

    eps: float = 1e-9
    initial_matching: str = INITIAL_EMPTY

    def __post_init__(self) -> None:
        if self.eps < 0:
            raise ValueError(f"eps must be >= 0, got {self.eps}")
        if self.initial_matching not in (INITIAL_EMPTY, INITIAL_GREEDY_EQUALITY):
            raise ValueError(f"unknown initial matching strategy {self.initial_matching!r}")
