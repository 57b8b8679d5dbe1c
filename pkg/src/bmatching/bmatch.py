"""Two-phase maximum-weight b-matching solver.

Phase I matches every left original, Phase II every right original, both
with the same search code run on a reduced frontier: all opposite-side
originals, every matched copy, and one representative free copy per group.
Free copies of a group keep equal labels and slacks throughout (they start
equal and label updates only ever touch matched or root vertices), so a
single representative stands in for all of them.  Labels carry over from
Phase I to Phase II; slacks are root-relative and are rebuilt per search.

Plain augmentation alone cannot always finish Phase II: earlier searches
may have parked two partners in one group and exhausted the left side
while another right original is still uncovered.  When a search absorbs
its whole frontier, the solver releases one spare copy from an
over-covered group and completes the augmentation through its freed
partner (see ``_release_spare_capacity``), so every validated instance
yields a valid b-matching.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .core import (
    BMatchInstance,
    BMatching,
    ExpandedGraph,
    INITIAL_GREEDY_EQUALITY,
    InvalidInstance,
    SolverConfig,
    collapse,
    expand,
    validate_instance,
)
from .hungarian import (
    LEFT,
    RIGHT,
    ExhaustedFrontier,
    Labeling,
    MatchingState,
    initial_labeling,
    make_search_state,
    run_search,
)


@dataclass(frozen=True)
class Frontier:
    """The reduced vertex set one search scans for slacks.

    ``originals`` are all opposite-side original vertices (matched or not),
    ``matched_copies`` the matched copy vertices, ``representatives`` the
    lowest-index free copy of each group that still has one.
    """

    originals: tuple[int, ...]
    matched_copies: tuple[int, ...]
    representatives: tuple[int, ...]

    def vertices(self) -> np.ndarray:
        return np.sort(
            np.asarray(
                self.originals + self.matched_copies + self.representatives, dtype=np.int64
            )
        )


def build_frontier(g: ExpandedGraph, m: MatchingState, side: str) -> Frontier:
    """Build the frontier on the side opposite to ``side`` (the root side)."""
    if side == LEFT:
        groups, partner = g.right_groups, m.partner_right
    else:
        groups, partner = g.left_groups, m.partner_left
    originals = []
    matched_copies = []
    representatives = []
    for block in groups:
        originals.append(block[0])
        rep = -1
        for v in block[1:]:
            if partner[v] >= 0:
                matched_copies.append(v)
            elif rep < 0:
                rep = v
        if rep >= 0:
            representatives.append(rep)
    return Frontier(tuple(originals), tuple(matched_copies), tuple(representatives))


@dataclass
class SolveReport:
    """Counters and per-phase wall time for one solve."""

    total_weight: float = 0.0
    phase1_augmentations: int = 0
    phase2_augmentations: int = 0
    dual_updates: int = 0
    capacity_releases: int = 0
    phase1_seconds: float = 0.0
    phase2_seconds: float = 0.0


def _release_spare_capacity(
    g: ExpandedGraph, m: MatchingState, l: Labeling, st
) -> int:
    """Free one spare copy so a blocked search can complete; returns its mate.

    A search exhausts its frontier only when every vertex on the root's own
    side is matched, which can strand a root even on feasible instances:
    earlier augmentations may have parked two or more partners in one group
    while another group went empty.  At that point the matching has at
    least one root-side group holding two or more matched vertices, so
    unmatching one spare copy (lowest-index copy of the lowest-index such
    group) keeps that group covered and lets the augmentation finish
    through the copy's freed partner, which the tree has already absorbed.
    The released group's free copies then get their labels equalized upward
    so free copies stay interchangeable; raising labels of free vertices
    cannot break feasibility or matched-edge tightness.
    """
    if st.side == LEFT:
        groups, partner_own, partner_opp = g.left_groups, m.partner_left, m.partner_right
        labels = l.l_left
    else:
        groups, partner_own, partner_opp = g.right_groups, m.partner_right, m.partner_left
        labels = l.l_right
    for block in groups:
        matched = sum(1 for v in block if partner_own[v] >= 0)
        if matched < 2:
            continue
        victim = next(v for v in block[1:] if partner_own[v] >= 0)
        mate = int(partner_own[victim])
        partner_own[victim] = -1
        partner_opp[mate] = -1
        free_copies = [v for v in block[1:] if partner_own[v] < 0]
        labels[free_copies] = max(float(labels[v]) for v in free_copies)
        return mate
    raise ExhaustedFrontier(
        f"search from root {st.root} cannot complete: no spare capacity to release"
    )


def modified_hungarian(
    g: ExpandedGraph,
    targets,
    m: MatchingState,
    l: Labeling,
    cfg: SolverConfig | None = None,
    side: str = LEFT,
    checker=None,
) -> tuple[int, int, int]:
    """Match every target original in place.

    ``targets`` are root-side original vertex indices.  The frontier is
    rebuilt before each root search because the previous augmentation may
    have consumed a representative.  Already-matched targets cost nothing.
    Returns (augmentations, dual updates, capacity releases).
    """
    partner_root = m.partner_left if side == LEFT else m.partner_right
    targets = sorted(int(v) for v in targets)
    augmentations = 0
    dual_updates = 0
    releases = 0

    def rescue(st) -> int:
        nonlocal releases
        releases += 1
        return _release_spare_capacity(g, m, l, st)

    while True:
        root = next((v for v in targets if partner_root[v] < 0), None)
        if root is None:
            return augmentations, dual_updates, releases
        frontier = build_frontier(g, m, side)
        st = make_search_state(g, root, side, frontier.vertices())
        run_search(g, l, m, st, checker=checker, on_exhausted=rescue)
        augmentations += 1
        dual_updates += st.dual_updates
        if checker is not None:
            checker.at_boundary(g, l, m)


def _greedy_equality_init(
    g: ExpandedGraph, m: MatchingState, l: Labeling, checker=None
) -> int:
    """Optional accelerator: match left originals along initial equality edges.

    Scans left originals in order and matches each to the lowest-index free
    zero-slack frontier vertex, when one exists.  Every edge taken is tight,
    so the solve invariants are unchanged.
    """
    matched = 0
    for block in g.left_groups:
        x = block[0]
        if m.partner_left[x] >= 0:
            continue
        frontier = build_frontier(g, m, LEFT).vertices()
        free = frontier[m.partner_right[frontier] < 0]
        if len(free) == 0:
            continue
        slack = float(l.l_left[x]) + l.l_right[free] - g.left_weights(x, free)
        hits = np.flatnonzero(slack <= l.eps)
        if len(hits) == 0:
            continue
        m.match(x, int(free[hits[0]]))
        matched += 1
        if checker is not None:
            checker.at_boundary(g, l, m)
    return matched


def solve_b_matching(
    inst: BMatchInstance,
    cfg: SolverConfig | None = None,
    check_invariants: bool = False,
) -> tuple[BMatching, SolveReport]:
    """Expand, run both phases, and collapse back to owner pairs.

    Phase I matches the left originals, Phase II the remaining free right
    originals, reusing Phase I's labels.  The collapsed result satisfies
    both capacity bounds by construction (each group has capacity-many
    vertices, each matched at most once).

    Note: the underlying method augments only until both original sides are
    covered and never matches spare copies, so instances with profitable
    unused capacity can end below the exhaustive optimum; the compare
    harness exists to measure exactly that.
    """
    report = validate_instance(inst)
    if not report.ok:
        raise InvalidInstance(report)
    cfg = cfg or SolverConfig()
    g = expand(inst)
    l = initial_labeling(g, cfg.eps)
    m = MatchingState.empty(g.p, g.q)
    checker = None
    if check_invariants:
        from .checks import InvariantChecker

        checker = InvariantChecker(inst, g)

    out = SolveReport()
    t0 = time.perf_counter()
    if cfg.initial_matching == INITIAL_GREEDY_EQUALITY:
        out.phase1_augmentations += _greedy_equality_init(g, m, l, checker=checker)
    left_targets = [block[0] for block in g.left_groups]
    aug, duals, releases = modified_hungarian(g, left_targets, m, l, cfg, side=LEFT, checker=checker)
    out.phase1_augmentations += aug
    out.dual_updates += duals
    out.capacity_releases += releases
    out.phase1_seconds = time.perf_counter() - t0

    t1 = time.perf_counter()
    right_targets = [block[0] for block in g.right_groups]
    aug, duals, releases = modified_hungarian(g, right_targets, m, l, cfg, side=RIGHT, checker=checker)
    out.phase2_augmentations = aug
    out.dual_updates += duals
    out.capacity_releases += releases
    out.phase2_seconds = time.perf_counter() - t1

    bm = collapse(g, m)
    out.total_weight = bm.total_weight
    if checker is not None:
        checker.at_end(inst, g, l, m, bm)
    return bm, out


@dataclass(frozen=True)
class ObservationReport:
    """Outcome of the copy-equality checks (report content, not a fault)."""

    ok: bool
    detail: str = ""

    def __str__(self) -> str:
        return "pass" if self.ok else f"fail: {self.detail}"


def check_observations(
    g: ExpandedGraph, m: MatchingState, l: Labeling, eps: float = 1e-9
) -> ObservationReport:
    """Check that free copies within each group share labels and root-slacks.

    Labels of a group's free copies must be pairwise equal; so must the
    slack any prospective root sees toward them, which is recomputed here
    from scratch for every original root candidate on the other side.
    """

    def check_side(groups, partner, labels, other_labels, other_groups, weight_of) -> str | None:
        for gi, block in enumerate(groups):
            free = [v for v in block[1:] if partner[v] < 0]
            if len(free) < 2:
                continue
            vals = [float(labels[v]) for v in free]
            if max(vals) - min(vals) > eps:
                return f"free copies of group {gi} have unequal labels {vals}"
            for other_block in other_groups:
                r = other_block[0]
                slacks = [float(other_labels[r]) + float(labels[v]) - weight_of(r, v) for v in free]
                if max(slacks) - min(slacks) > eps:
                    return f"free copies of group {gi} have unequal slacks from root {r}: {slacks}"
        return None

    fail = check_side(
        g.right_groups, m.partner_right, l.l_right, l.l_left, g.left_groups,
        lambda r, v: g.weight(r, v),
    )
    if fail is None:
        fail = check_side(
            g.left_groups, m.partner_left, l.l_left, l.l_right, g.right_groups,
            lambda r, v: g.weight(v, r),
        )
    return ObservationReport(True) if fail is None else ObservationReport(False, fail)
