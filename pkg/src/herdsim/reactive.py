"""Baseline reactive controller with behaviour/steering cadence modulation."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .behaviors import (BehaviourDecision, Kind, TacticPair, collect_point,
                        drive_point, f_n, select_behavior, DegenerateGeometryError)
from .params import ModelConstants
from .world import WorldState, flock_com


@dataclass(frozen=True)
class ControllerState:
    tp: TacticPair
    sigma_c2: int = 1  # behaviour re-selection period, steps
    sigma_c3: int = 1  # steering-point re-computation period, steps
    last_decision: BehaviourDecision | None = None
    last_select_t: int = 0
    last_point_t: int = 0

    def __post_init__(self):
        if self.sigma_c2 < 1 or self.sigma_c3 < 1:
            raise ValueError("cadence periods must be >= 1")


def _recompute_point(world: WorldState, decision: BehaviourDecision,
                     constants: ModelConstants) -> BehaviourDecision:
    """Fresh steering point for the held behaviour kind."""
    com = flock_com(world)
    n = world.n_sheep
    if decision.kind is Kind.DRIVE:
        point = drive_point(com, world.goal, f_n(constants.r_pi_pi, n, 1.0))
        return BehaviourDecision(Kind.DRIVE, point)
    try:
        point = collect_point(world.sheep_pos[decision.focal_agent], com,
                              constants.r_pi_pi)
        return BehaviourDecision(Kind.COLLECT, point, decision.focal_agent)
    except DegenerateGeometryError:
        point = drive_point(com, world.goal, f_n(constants.r_pi_pi, n, 1.0))
        return BehaviourDecision(Kind.DRIVE, point)


def reactive_policy(world: WorldState, state: ControllerState,
                    constants: ModelConstants,
                    quantile_drive: bool = False):
    """One controller tick: re-select, re-aim, or hold, per the cadences.

    Returns (decision, new state). With sigma_c2 = sigma_c3 = 1 this is the
    classic reactive agent re-deciding every step.
    """
    t = world.t
    if state.last_decision is None or t - state.last_select_t >= state.sigma_c2:
        decision = select_behavior(world, state.tp, constants, quantile_drive)
        return decision, replace(state, last_decision=decision,
                                 last_select_t=t, last_point_t=t)
    if t - state.last_point_t >= state.sigma_c3:
        decision = _recompute_point(world, state.last_decision, constants)
        return decision, replace(state, last_decision=decision, last_point_t=t)
    return state.last_decision, state
