"""Walk through the two small instances used throughout the tests.

Shows how the planners differ on the same boards: following each cycle
from the rest cell, switching between cycles mid-route, and the
two-buffer pipeline.
"""

from latticeswap.lattice import Arrangement, decompose_cycles
from latticeswap.multi_buffer import plan_multi_buffer_dp
from latticeswap.oracle import plan_optimal
from latticeswap.plan import CostParams, evaluate_cost
from latticeswap.single_buffer import (
    plan_cycle_following,
    plan_cycle_switching,
    plan_single_buffer_exact,
)


def show(label, plan, arr):
    report = evaluate_cost(plan, arr.lattice, CostParams())
    steps = " ".join(
        f"({a.cell},{a.deposit or 'e'},{a.pick or 'e'})" for a in plan.actions
    )
    print(f"  {label:<18} swaps {report.swaps:>2}  travel {report.travel:>5.1f}   {steps}")


def walkthrough(placement, k):
    arr = Arrangement.from_sequence(placement)
    cycles = [c.objects for c in decompose_cycles(arr) if c.size > 1]
    print(f"placement {placement}, non-trivial cycles {cycles}")
    show("cycle following", plan_cycle_following(arr), arr)
    show("cycle switching", plan_cycle_switching(arr), arr)
    show("one buffer exact", plan_single_buffer_exact(arr), arr)
    show(f"pipeline k={k}", plan_multi_buffer_dp(arr, k), arr)
    show(f"oracle k={k}", plan_optimal(arr, k), arr)
    print()


if __name__ == "__main__":
    walkthrough([4, 2, 5, 1, 3], k=2)
    walkthrough([2, 3, 1, 5, 7, 8, 4, 6], k=2)
