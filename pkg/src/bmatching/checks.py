"""From-scratch invariant recomputation hooks for debugging solves.

Every check rederives its quantity independently of the incremental state
the solver maintains, so a passing run certifies the bookkeeping.  The
checks are quadratic per mutation and meant for desk-scale instances; they
read but never mutate solver state, so enabling them cannot change results.
"""

from __future__ import annotations

import numpy as np

from .core import BMatchInstance, BMatching, BMatchingError, ExpandedGraph, verify_b_matching
from .bmatch import check_observations
from .hungarian import (
    LEFT,
    Labeling,
    MatchingState,
    SearchState,
    _frontier_weights,
    _opp_side_labels,
    _root_side_labels,
)


class InvariantViolation(BMatchingError):
    """An internal solver invariant failed a from-scratch recomputation."""


class InvariantChecker:
    """Hooks called by the search loop when invariant checking is enabled."""

    def __init__(self, inst: BMatchInstance, g: ExpandedGraph):
        self.inst = inst
        self.g = g
        self.prev_matched_left: set[int] = set()
        self.prev_matched_right: set[int] = set()
        self.prev_size = 0
        self.boundaries = 0
        self.dual_updates = 0

    def _recompute_slacks(self, l: Labeling, st: SearchState) -> np.ndarray:
        opp = _opp_side_labels(l, st.side)[st.frontier]
        best = None
        for u in st.tree_S:
            cand = float(_root_side_labels(l, st.side)[u]) + opp - _frontier_weights(self.g, st, u)
            best = cand if best is None else np.minimum(best, cand)
        return best

    def after_slack_change(self, g: ExpandedGraph, l: Labeling, st: SearchState) -> None:
        active = ~st.in_tree
        if not active.any():
            return
        fresh = self._recompute_slacks(l, st)
        if not np.allclose(st.slack[active], fresh[active], rtol=0.0, atol=l.eps):
            worst = float(np.abs(st.slack[active] - fresh[active]).max())
            raise InvariantViolation(f"stored slack deviates from recomputation by {worst}")
        tree = set(st.tree_S)
        for pos in np.flatnonzero(active):
            u = int(st.slack_arg[pos])
            if u not in tree:
                raise InvariantViolation(f"slack_arg {u} is not in the tree")
            v = int(st.frontier[pos])
            got = float(_root_side_labels(l, st.side)[u]) + float(
                _opp_side_labels(l, st.side)[v]
            )
            got -= g.weight(u, v) if st.side == LEFT else g.weight(v, u)
            if abs(got - float(st.slack[pos])) > l.eps:
                raise InvariantViolation(
                    f"slack_arg {u} does not attain slack[{v}]: {got} != {st.slack[pos]}"
                )

    def after_dual_update(self, g: ExpandedGraph, l: Labeling, st: SearchState) -> None:
        self.dual_updates += 1
        violation = l.max_violation(g)
        if violation > l.eps:
            raise InvariantViolation(f"labeling infeasible after dual update: gap {violation}")
        active = ~st.in_tree
        if active.any() and float(st.slack[active].min()) > l.eps:
            raise InvariantViolation("dual update produced no new zero-slack frontier vertex")
        self.after_slack_change(g, l, st)

    def at_boundary(self, g: ExpandedGraph, l: Labeling, m: MatchingState) -> None:
        self.boundaries += 1
        violation = l.max_violation(g)
        if violation > l.eps:
            raise InvariantViolation(f"labeling infeasible at boundary: gap {violation}")
        for x, y in m.pairs():
            if not l.is_tight(g, x, y):
                raise InvariantViolation(f"matched edge ({x},{y}) is not an equality edge")
        obs = check_observations(g, m, l, l.eps)
        if not obs.ok:
            raise InvariantViolation(f"copy-equality observation failed: {obs.detail}")
        # Originals stay matched for good; a capacity release may free a
        # spare copy, so monotonicity is asserted per-original only.
        left_originals = {block[0] for block in g.left_groups}
        right_originals = {block[0] for block in g.right_groups}
        matched_left = {x for x, _ in m.pairs() if x in left_originals}
        matched_right = {y for _, y in m.pairs() if y in right_originals}
        if not (self.prev_matched_left <= matched_left and self.prev_matched_right <= matched_right):
            raise InvariantViolation("a previously matched original became free")
        if m.size() < self.prev_size:
            raise InvariantViolation("the matching shrank between boundaries")
        self.prev_matched_left = matched_left
        self.prev_matched_right = matched_right
        self.prev_size = m.size()

    def at_end(
        self,
        inst: BMatchInstance,
        g: ExpandedGraph,
        l: Labeling,
        m: MatchingState,
        bm: BMatching,
    ) -> None:
        report = verify_b_matching(inst, bm, l.eps)
        if not report.ok:
            raise InvariantViolation(f"final result failed verification: {report.detail}")
        # Theorem-style equality for the final matching: weight equals the
        # label sum over matched pairs (every matched edge is tight).
        label_sum = sum(float(l.l_left[x]) + float(l.l_right[y]) for x, y in m.pairs())
        if abs(label_sum - bm.total_weight) > l.eps * max(1, m.size()):
            raise InvariantViolation(
                f"matched label sum {label_sum} != collapsed weight {bm.total_weight}"
            )
