"""Exact planners for small instances.

``plan_optimal`` finds the cheapest plan among those using the fewest
pick-n-swap operations, for any buffer count; with travel and operation
costs both positive this is the planner of record for small instances.

``plan_optimal_unrestricted`` searches a wider space where objects may
also be parked at arbitrary unresolved cells and operations need not be
swap-minimal, trading operations against travel under arbitrary cost
weights.  It exists to sanity-check the swap-minimal planners and is
only practical for a handful of cells.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from heapq import heappop, heappush

from .errors import PlanningTimeout, SizeLimitExceeded
from .lattice import EMPTY, Arrangement, Lattice, nontrivial_cycles
from .plan import CostParams, PickNSwap, Plan, bookend
from .search import SearchLimits, assign_buffers, min_swap_astar


@dataclass(frozen=True)
class OracleLimits:
    size_cap: int = 12
    k_cap: int = 6
    timeout_s: float = 600.0
    unrestricted_m_cap: int = 8
    unrestricted_k_cap: int = 2


def plan_optimal(
    start: Arrangement, k: int = 1, limits: OracleLimits = OracleLimits()
) -> Plan:
    """Cheapest-travel plan among the swap-minimal plans, k buffers."""
    if k > limits.k_cap:
        raise SizeLimitExceeded(f"k={k} exceeds the oracle cap of {limits.k_cap}")
    cycles = nontrivial_cycles(start)
    actions = min_swap_astar(
        start.lattice,
        cycles,
        k,
        SearchLimits(size_cap=limits.size_cap, timeout_s=limits.timeout_s),
    )
    be = bookend(start.lattice)
    return Plan(
        (be, *actions, be),
        buffer_of=(None, *assign_buffers(actions, k), None),
    )


def enumerate_actions(
    contents: tuple[int, ...],
    held: tuple[int, ...],
    pos: int,
    cells: tuple[int, ...],
    k: int,
    lattice: Lattice,
    range_prune: bool = False,
) -> list[PickNSwap]:
    """Every useful pick-n-swap available in the given hand/cell state.

    The space is pruned by two optimality-preserving rules: cells
    already showing their goal object are never touched, and when the
    hand holds a cell's goal object any action there deposits it.  With
    ``range_prune`` (1D rows only) actions are further restricted to
    the interval between the nearest held-object goals on either side
    of the robot, a heuristic reduction for samplers.
    """
    lo, hi = 1, lattice.m
    if range_prune and lattice.ndim == 1 and held:
        left = [g for g in held if g <= pos]
        right = [g for g in held if g >= pos]
        if left:
            lo = max(left)
        if right:
            hi = min(right)
    room = len(held) < k
    out: list[PickNSwap] = []
    for i, cell in enumerate(cells):
        if not lo <= cell <= hi:
            continue
        resident = contents[i]
        if resident == cell:
            continue
        if cell in held:
            # The goal object is in hand; the only sensible act here
            # deposits it, picking up the resident if there is one.
            if resident != EMPTY:
                out.append(PickNSwap(cell, cell, resident))
            else:
                out.append(PickNSwap(cell, cell, EMPTY))
            continue
        if resident != EMPTY:
            if room:
                out.append(PickNSwap(cell, EMPTY, resident))
            for h in held:
                out.append(PickNSwap(cell, h, resident))
        else:
            for h in held:
                out.append(PickNSwap(cell, h, EMPTY))
    return out


def apply_action(
    contents: tuple[int, ...],
    held: tuple[int, ...],
    action: PickNSwap,
    index: dict[int, int],
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    i = index[action.cell]
    nc = list(contents)
    nh = list(held)
    if action.pick != EMPTY:
        nc[i] = EMPTY
        nh.append(action.pick)
    if action.deposit != EMPTY:
        nc[i] = action.deposit
        nh.remove(action.deposit)
    nh.sort()
    return tuple(nc), tuple(nh)


def plan_optimal_unrestricted(
    start: Arrangement,
    k: int = 1,
    params: CostParams = CostParams(),
    limits: OracleLimits = OracleLimits(),
) -> Plan:
    """A* over the unrestricted action space, minimizing total cost.

    Exponential in every direction; capped to tiny instances.
    """
    lattice = start.lattice
    if lattice.m > limits.unrestricted_m_cap:
        raise SizeLimitExceeded(
            f"m={lattice.m} exceeds the unrestricted-search cap of {limits.unrestricted_m_cap}"
        )
    if k > limits.unrestricted_k_cap:
        raise SizeLimitExceeded(
            f"k={k} exceeds the unrestricted-search cap of {limits.unrestricted_k_cap}"
        )
    cells = tuple(range(1, lattice.m + 1))
    index = {cell: i for i, cell in enumerate(cells)}
    goal = cells
    dist = lattice.distance
    rest = lattice.rest

    def heuristic(pos: int, contents: tuple[int, ...]) -> float:
        far = dist(pos, rest)
        unresolved = 0
        for i, cell in enumerate(cells):
            if contents[i] != cell:
                unresolved += 1
                cand = dist(pos, cell) + dist(cell, rest)
                if cand > far:
                    far = cand
        return params.c_p * unresolved + params.c_t * far

    start_state = (rest, (), start.placement)
    best_g = {start_state: 0.0}
    parent: dict[tuple, tuple] = {}
    frontier: list = []
    heappush(frontier, (heuristic(rest, start.placement), 0, start_state))
    counter = 0
    deadline = time.monotonic() + limits.timeout_s
    popped = 0

    while frontier:
        f, _, state = heappop(frontier)
        pos, held, contents = state
        g = best_g[state]
        if f > g + heuristic(pos, contents) + 1e-9:
            continue
        if contents == goal and not held:
            actions = []
            s = state
            while s in parent:
                s, a = parent[s]
                actions.append(a)
            actions.reverse()
            be = bookend(lattice)
            return Plan(
                (be, *actions, be),
                buffer_of=(None, *assign_buffers(actions, k), None),
            )
        popped += 1
        if popped % 2048 == 0 and time.monotonic() > deadline:
            raise PlanningTimeout(f"search gave up after {limits.timeout_s:.0f}s")
        for action in enumerate_actions(contents, held, pos, cells, k, lattice):
            nc, nh = apply_action(contents, held, action, index)
            nxt = (action.cell, nh, nc)
            ng = g + params.c_p + params.c_t * dist(pos, action.cell)
            old = best_g.get(nxt)
            if old is not None and old <= ng + 1e-12:
                continue
            best_g[nxt] = ng
            parent[nxt] = (state, action)
            counter += 1
            heappush(frontier, (ng + heuristic(action.cell, nc), counter, nxt))
    raise RuntimeError("unrestricted search exhausted without a goal; this is a bug")
