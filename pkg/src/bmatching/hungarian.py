"""Slack-array Hungarian machinery on the expanded graph.

One augmentation grows an alternating tree from a free root: S holds
root-side tree vertices, T the opposite-side ones, and ``slack[v]`` tracks
min over u in S of l(u)+l(v)-w(u,v) for every frontier vertex v outside T.
A zero slack marks an equality edge leaving the tree; when none exists, a
dual update shifts the labels by the minimum slack, which keeps the
labeling feasible and tightens at least one new edge.  The same code runs
with the root on either side, so the two solve phases share it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import BMatchingError, BMatchInstance, ExpandedGraph, expand

LEFT = "left"
RIGHT = "right"


class ExhaustedFrontier(BMatchingError):
    """A search ran out of frontier vertices (infeasible search; cannot
    happen on validated complete instances)."""


class BrokenTree(BMatchingError):
    """Augmentation predecessor links failed to reach the root."""


@dataclass
class Labeling:
    """Dual values on the expanded vertices.

    Feasible when l(x) + l(y) >= w(x, y) - eps for every pair; matched
    edges must additionally be tight (equality within eps).
    """

    l_left: np.ndarray
    l_right: np.ndarray
    eps: float = 1e-9

    def max_violation(self, g: ExpandedGraph) -> float:
        """Largest w(x,y) - l(x) - l(y) over all pairs; <= eps iff feasible."""
        gaps = g.expanded_weights() - self.l_left[:, None] - self.l_right[None, :]
        return float(gaps.max())

    def feasible(self, g: ExpandedGraph) -> bool:
        return self.max_violation(g) <= self.eps

    def is_tight(self, g: ExpandedGraph, x: int, y: int) -> bool:
        return abs(float(self.l_left[x]) + float(self.l_right[y]) - g.weight(x, y)) <= self.eps


def initial_labeling(g: ExpandedGraph, eps: float = 1e-9) -> Labeling:
    """All-zero right labels, row maxima on the left; always feasible."""
    row_max = g.weights.max(axis=1)
    return Labeling(
        l_left=row_max[g.left_owner].astype(np.float64),
        l_right=np.zeros(g.q, dtype=np.float64),
        eps=eps,
    )


@dataclass
class MatchingState:
    """One-to-one matching on the expanded graph; -1 marks a free vertex."""

    partner_left: np.ndarray
    partner_right: np.ndarray

    @classmethod
    def empty(cls, p: int, q: int) -> "MatchingState":
        return cls(
            partner_left=np.full(p, -1, dtype=np.int64),
            partner_right=np.full(q, -1, dtype=np.int64),
        )

    def size(self) -> int:
        return int((self.partner_left >= 0).sum())

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, int(y)) for x, y in enumerate(self.partner_left) if y >= 0]

    def match(self, x: int, y: int) -> None:
        self.partner_left[x] = y
        self.partner_right[y] = x

    def consistent(self) -> bool:
        for x, y in enumerate(self.partner_left):
            if y >= 0 and self.partner_right[y] != x:
                return False
        for y, x in enumerate(self.partner_right):
            if x >= 0 and self.partner_left[x] != y:
                return False
        return True


@dataclass
class SearchState:
    """State of one augmenting search from a free root vertex.

    ``side`` is where the root lives; the frontier is the opposite-side
    vertex set scanned for slacks.  ``slack_arg`` keeps the S-vertex
    attaining each slack; entries freeze when a vertex enters T, which is
    exactly the predecessor structure augmentation walks back along.
    """

    root: int
    side: str
    frontier: np.ndarray       # opposite-side vertices, ascending
    frontier_pos: np.ndarray   # opposite-side vertex -> frontier position (-1 outside)
    slack: np.ndarray
    slack_arg: np.ndarray
    in_tree: np.ndarray        # frontier positions already in T
    tree_S: list[int] = field(default_factory=list)
    alpha_l: float = 0.0
    dual_updates: int = 0

    @property
    def tree_T(self) -> np.ndarray:
        return self.frontier[self.in_tree]


def make_search_state(g: ExpandedGraph, root: int, side: str, frontier: np.ndarray) -> SearchState:
    opp_size = g.q if side == LEFT else g.p
    frontier = np.sort(np.asarray(frontier, dtype=np.int64))
    pos = np.full(opp_size, -1, dtype=np.int64)
    pos[frontier] = np.arange(len(frontier), dtype=np.int64)
    return SearchState(
        root=root,
        side=side,
        frontier=frontier,
        frontier_pos=pos,
        slack=np.zeros(len(frontier), dtype=np.float64),
        slack_arg=np.full(len(frontier), root, dtype=np.int64),
        in_tree=np.zeros(len(frontier), dtype=bool),
        tree_S=[root],
    )


def _frontier_weights(g: ExpandedGraph, st: SearchState, z: int) -> np.ndarray:
    """Weights from root-side vertex z to every frontier vertex."""
    if st.side == LEFT:
        return g.left_weights(z, st.frontier)
    return g.right_weights(z, st.frontier)


def _root_side_labels(l: Labeling, side: str) -> np.ndarray:
    return l.l_left if side == LEFT else l.l_right


def _opp_side_labels(l: Labeling, side: str) -> np.ndarray:
    return l.l_right if side == LEFT else l.l_left


def init_slack(st: SearchState, l: Labeling, g: ExpandedGraph) -> SearchState:
    """Initialize slacks from the root: slack[v] = l(root)+l(v)-w(root,v)."""
    l_root = float(_root_side_labels(l, st.side)[st.root])
    st.slack[:] = l_root + _opp_side_labels(l, st.side)[st.frontier] - _frontier_weights(g, st, st.root)
    st.slack_arg[:] = st.root
    return st


def compute_alpha(st: SearchState) -> float:
    """Minimum slack over frontier vertices outside T (the dual step size)."""
    active = ~st.in_tree
    if not active.any():
        raise ExhaustedFrontier(f"no frontier vertex left outside T for root {st.root}")
    return float(st.slack[active].min())


def dual_update(l: Labeling, st: SearchState, alpha: float) -> None:
    """Shift labels by alpha: down on S, up on T; maintain slacks.

    Requires no zero slack outside T; afterwards the slack minimum outside
    T hits zero, so at least one new equality edge leaves the tree.
    """
    root_labels = _root_side_labels(l, st.side)
    opp_labels = _opp_side_labels(l, st.side)
    root_labels[np.asarray(st.tree_S, dtype=np.int64)] -= alpha
    opp_labels[st.frontier[st.in_tree]] += alpha
    st.slack[~st.in_tree] -= alpha
    st.alpha_l = alpha
    st.dual_updates += 1


def extend_tree(st: SearchState, u: int, z: int, l: Labeling, g: ExpandedGraph) -> None:
    """Add frontier vertex u to T and its partner z to S, refreshing slacks.

    Every frontier vertex outside T gets the candidate l(z)+l(v)-w(z,v);
    on a strictly smaller candidate both slack and witness move to z, and on
    an exact tie the lower-indexed witness wins.
    """
    st.in_tree[st.frontier_pos[u]] = True
    st.tree_S.append(z)
    cand = float(_root_side_labels(l, st.side)[z]) + _opp_side_labels(l, st.side)[st.frontier] - _frontier_weights(g, st, z)
    active = ~st.in_tree
    better = active & (cand < st.slack)
    tie = active & (cand == st.slack) & (z < st.slack_arg)
    st.slack[better] = cand[better]
    st.slack_arg[better | tie] = z


def augment(m: MatchingState, st: SearchState, end: int) -> None:
    """Flip the matching along the alternating path from ``end`` to the root.

    Walks predecessors through slack_arg and the partner maps; the matching
    grows by exactly one pair and no matched vertex becomes free.
    """
    if st.side == LEFT:
        partner_root, partner_opp = m.partner_left, m.partner_right
    else:
        partner_root, partner_opp = m.partner_right, m.partner_left
    y = end
    for _ in range(2 * len(st.frontier) + 2):
        x = int(st.slack_arg[st.frontier_pos[y]])
        x_prev = int(partner_root[x])
        partner_root[x] = y
        partner_opp[y] = x
        if x == st.root:
            return
        if x_prev < 0:
            raise BrokenTree(f"predecessor {x} is free but is not the root {st.root}")
        y = x_prev
    raise BrokenTree(f"augmenting walk from {end} did not reach root {st.root}")


def run_search(
    g: ExpandedGraph,
    l: Labeling,
    m: MatchingState,
    st: SearchState,
    checker=None,
    on_exhausted=None,
) -> None:
    """Run one augmenting search to completion (the repeat loop).

    Repeatedly selects the lowest-index zero-slack frontier vertex outside
    T; a matched one extends the tree, a free one ends the search with an
    augmentation.  When no zero slack exists a dual update creates one.

    A frontier whose vertices are all matched can be swallowed whole by the
    tree; ``on_exhausted`` may then free a vertex and name the frontier
    vertex the augmentation should complete through, otherwise the search
    fails with ExhaustedFrontier.
    """
    init_slack(st, l, g)
    if checker is not None:
        checker.after_slack_change(g, l, st)
    partner_opp = m.partner_right if st.side == LEFT else m.partner_left
    while True:
        active = ~st.in_tree
        zero = active & (st.slack <= l.eps)
        if not zero.any():
            if not active.any():
                if on_exhausted is None:
                    raise ExhaustedFrontier(
                        f"no frontier vertex left outside T for root {st.root}"
                    )
                end = on_exhausted(st)
                augment(m, st, end)
                return
            alpha = compute_alpha(st)
            dual_update(l, st, alpha)
            if checker is not None:
                checker.after_dual_update(g, l, st)
            zero = (~st.in_tree) & (st.slack <= l.eps)
        u_pos = int(np.flatnonzero(zero)[0])
        u = int(st.frontier[u_pos])
        z = int(partner_opp[u])
        if z < 0:
            augment(m, st, u)
            return
        extend_tree(st, u, z, l, g)
        if checker is not None:
            checker.after_slack_change(g, l, st)


def solve_assignment(W, eps: float = 1e-9) -> tuple[list[tuple[int, int]], float]:
    """Maximum-weight perfect matching of a square matrix (the baseline).

    Runs the search with all capacities 1, so the expanded graph is the
    input itself and every right vertex is frontier.  Returns the matched
    (row, column) pairs and their total weight.
    """
    W = np.asarray(W, dtype=np.float64)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise ValueError(f"need a square matrix, got shape {W.shape}")
    if not np.isfinite(W).all():
        raise ValueError("weights must be finite")
    n = W.shape[0]
    if n == 0:
        return [], 0.0
    inst = BMatchInstance(s=n, t=n, alpha=(1,) * n, beta=(1,) * n, weights=W)
    g = expand(inst)
    l = initial_labeling(g, eps)
    m = MatchingState.empty(g.p, g.q)
    frontier = np.arange(n, dtype=np.int64)
    for root in range(n):
        st = make_search_state(g, root, LEFT, frontier)
        run_search(g, l, m, st)
    pairs = m.pairs()
    weight = float(sum(W[x, y] for x, y in pairs))
    return pairs, weight
