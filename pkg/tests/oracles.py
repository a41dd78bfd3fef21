"""Brute-force reference implementations used to check the planners.

Everything here trades speed for obviousness: plain breadth-first or
exhaustive enumeration over tiny instances, written independently of
the package's search code so agreement is meaningful.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from typing import Iterable, Sequence

from latticeswap.lattice import EMPTY, Arrangement, Lattice
from latticeswap.plan import PickNSwap


def brute_min_operations(start: Arrangement, k: int = 1) -> int:
    """Fewest pick-n-swap operations to sort, by BFS over raw states.

    The state ignores robot position (operation count does not depend
    on travel) and tracks cell contents plus the multiset in hand.
    """
    lattice = start.lattice
    m = lattice.m
    goal = tuple(range(1, m + 1))
    init = (tuple(start.placement), ())
    if init[0] == goal:
        return 0
    seen = {init}
    frontier = deque([(init, 0)])
    while frontier:
        (contents, held), depth = frontier.popleft()
        for cell in range(1, m + 1):
            occupant = contents[cell - 1]
            options = []
            if occupant != EMPTY and len(held) < k:
                options.append((EMPTY, occupant))
            for obj in set(held):
                if occupant != EMPTY:
                    options.append((obj, occupant))
                else:
                    options.append((obj, EMPTY))
            for deposit, pick in options:
                row = list(contents)
                row[cell - 1] = deposit
                hand = list(held)
                if deposit != EMPTY:
                    hand.remove(deposit)
                if pick != EMPTY:
                    hand.append(pick)
                state = (tuple(row), tuple(sorted(hand)))
                if state in seen:
                    continue
                if state[0] == goal and not state[1]:
                    return depth + 1
                seen.add(state)
                frontier.append((state, depth + 1))
    raise AssertionError("unsolvable state reached")


def brute_min_travel(start: Arrangement, k: int = 1, op_cap: int | None = None) -> float:
    """Cheapest travel among operation-minimal plans, by depth-bounded
    Dijkstra over (position, contents, hand) with travel as cost."""
    import heapq

    lattice = start.lattice
    m = lattice.m
    goal = tuple(range(1, m + 1))
    ops = op_cap if op_cap is not None else brute_min_operations(start, k)
    init = (lattice.rest, tuple(start.placement), ())
    if init[1] == goal:
        return 0.0
    best: dict[tuple, float] = {(init, 0): 0.0}
    heap = [(0.0, 0, init, 0)]
    tick = 0
    answer = math.inf
    while heap:
        travel, _, state, depth = heapq.heappop(heap)
        if travel > best.get((state, depth), math.inf):
            continue
        if travel >= answer:
            continue
        pos, contents, held = state
        if depth == ops:
            continue
        for cell in range(1, m + 1):
            occupant = contents[cell - 1]
            options = []
            if occupant != EMPTY and len(held) < k:
                options.append((EMPTY, occupant))
            for obj in set(held):
                options.append((obj, occupant))
            for deposit, pick in options:
                row = list(contents)
                row[cell - 1] = deposit
                hand = list(held)
                if deposit != EMPTY:
                    hand.remove(deposit)
                if pick != EMPTY:
                    hand.append(pick)
                nxt = (cell, tuple(row), tuple(sorted(hand)))
                cost = travel + lattice.distance(pos, cell)
                if nxt[1] == goal and not nxt[2]:
                    answer = min(answer, cost + lattice.distance(cell, lattice.rest))
                    continue
                key = (nxt, depth + 1)
                if cost < best.get(key, math.inf):
                    best[key] = cost
                    tick += 1
                    heapq.heappush(heap, (cost, tick, nxt, depth + 1))
    return answer


def exhaustive_interleave_travel(
    sequences: Sequence[Sequence[PickNSwap]], lattice: Lattice
) -> float:
    """Minimum tour length over every interleaving of the sequences."""
    active = [list(s) for s in sequences if s]
    if not active:
        return 0.0
    counts = [len(s) for s in active]
    slots = []
    for i, n in enumerate(counts):
        slots.extend([i] * n)
    best = math.inf
    for order in set(itertools.permutations(slots)):
        pos = lattice.rest
        cursor = [0] * len(active)
        travel = 0.0
        for i in order:
            cell = active[i][cursor[i]].cell
            cursor[i] += 1
            travel += lattice.distance(pos, cell)
            pos = cell
        travel += lattice.distance(pos, lattice.rest)
        best = min(best, travel)
    return best


def exhaustive_best_min_load(loads: Sequence[int], k: int) -> int:
    """Best achievable minimum bin load over all k-way partitions."""
    n = len(loads)
    best = -1
    for labels in itertools.product(range(k), repeat=n):
        bins = [0] * k
        for i, b in enumerate(labels):
            bins[b] += loads[i]
        best = max(best, min(bins))
    return best


def permutation_cycle_sizes(placement: Sequence[int]) -> list[int]:
    """Cycle sizes of a permutation given as a placement row, written
    with direct index chasing rather than the package's decomposition."""
    m = len(placement)
    seen = [False] * m
    sizes = []
    for s in range(m):
        if seen[s]:
            continue
        size = 0
        i = s
        while not seen[i]:
            seen[i] = True
            size += 1
            i = placement[i] - 1
        sizes.append(size)
    return sizes


def largest_cycle_fraction_exact(m: int) -> float:
    """E[largest cycle / m] over all permutations of m objects."""
    total = 0.0
    count = 0
    for perm in itertools.permutations(range(1, m + 1)):
        sizes = permutation_cycle_sizes(perm)
        total += max(sizes) / m
        count += 1
    return total / count
