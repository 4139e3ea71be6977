"""Agent type weights, swarm scenario mixes, and simulation configuration."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

AGENT_TYPE_IDS = ("A1", "A2", "A3", "A4", "A5", "A6", "A7")
SCENARIO_IDS = ("S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8", "S9", "S10", "S11")

HETEROGENEOUS_SCENARIOS = ("S1", "S2", "S3", "S4")
HOMOGENEOUS_SCENARIOS = ("S5", "S6", "S7", "S8", "S9", "S10", "S11")


@dataclass(frozen=True)
class AgentTypeParams:
    """Behavioural weights of one sheep type.

    w_lcm: attraction to the local centre of mass.
    w_rep: sheep-sheep repulsion.
    w_shep: repulsion from the shepherd.
    speed_ratio: sheep step length relative to the base step length.
    """

    id: str
    w_lcm: float
    w_rep: float
    w_shep: float
    speed_ratio: float

    def __post_init__(self):
        if not (self.w_lcm > 0 and self.w_rep > 0 and self.w_shep > 0):
            raise ValueError(f"weights must be positive: {self}")
        if not 0 < self.speed_ratio <= 1:
            raise ValueError(f"speed_ratio must be in (0, 1]: {self}")


AGENT_TYPES: dict[str, AgentTypeParams] = {
    "A1": AgentTypeParams("A1", 0.50, 2.00, 0.50, 1.00),
    "A2": AgentTypeParams("A2", 1.50, 2.00, 0.50, 0.50),
    "A3": AgentTypeParams("A3", 0.50, 3.00, 1.00, 0.67),
    "A4": AgentTypeParams("A4", 0.50, 2.00, 1.90, 0.67),
    "A5": AgentTypeParams("A5", 1.05, 3.00, 1.00, 0.67),
    "A6": AgentTypeParams("A6", 1.05, 1.50, 1.00, 0.50),
    "A7": AgentTypeParams("A7", 1.05, 2.00, 1.00, 0.67),
}

# Proportion of each agent type per scenario; rows sum to 1.
SCENARIOS: dict[str, dict[str, float]] = {
    "S1": {"A1": 0.20, "A7": 0.80},
    "S2": {"A2": 0.20, "A3": 0.20, "A6": 0.20, "A7": 0.40},
    "S3": {"A4": 0.80, "A7": 0.20},
    "S4": {"A1": 0.20, "A5": 0.20, "A7": 0.60},
    "S5": {"A7": 1.00},
    "S6": {"A1": 1.00},
    "S7": {"A2": 1.00},
    "S8": {"A3": 1.00},
    "S9": {"A4": 1.00},
    "S10": {"A5": 1.00},
    "S11": {"A6": 1.00},
}

# Homogeneous scenario holding each pure agent type, used for calibration runs.
TYPE_TO_SCENARIO = {
    "A1": "S6", "A2": "S7", "A3": "S8", "A4": "S9",
    "A5": "S10", "A6": "S11", "A7": "S5",
}


@dataclass(frozen=True)
class ModelConstants:
    """Physical constants of the simulation, overridable per experiment."""

    r_pi_pi: float = 2.0
    r_shep_detect: float = 65.0
    sheep_step_len: float = 1.0
    shepherd_step_len: float = 1.5
    inertia: float = 0.5
    noise_ang: float = 0.3
    graze_prob: float = 0.05
    stall_dist: float = 6.0  # 3 * r_pi_pi

    def __post_init__(self):
        positive = ("r_pi_pi", "r_shep_detect", "sheep_step_len",
                    "shepherd_step_len", "inertia", "noise_ang", "stall_dist")
        for name in positive:
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if not 0 <= self.graze_prob <= 1:
            raise ValueError("graze_prob must lie in [0, 1]")


@dataclass(frozen=True)
class SimConfig:
    n_sheep: int = 20
    scenario: str = "S5"
    seed: int = 0
    t_max: int = 5149
    constants: ModelConstants = field(default_factory=ModelConstants)
    paddock_side: float = 150.0
    goal: tuple[float, float] = (7.5, 7.5)
    goal_radius: float = 15.0
    # Sheep spawn uniformly in [xmin, xmax] x [ymin, ymax].
    init_region: tuple[float, float, float, float] = (75.0, 150.0, 75.0, 150.0)
    shepherd_init: tuple[float, float] = (112.5, 7.5)

    def __post_init__(self):
        if self.n_sheep <= 0:
            raise ValueError("n_sheep must be positive")
        if self.t_max <= 0:
            raise ValueError("t_max must be positive")
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}")

    def with_(self, **kw) -> "SimConfig":
        return replace(self, **kw)


def scenario_counts(scenario: str, n_sheep: int) -> dict[str, int]:
    """Integer type counts for a scenario: floor each share, give the residue
    to the largest-proportion type."""
    props = SCENARIOS[scenario]
    counts = {t: int(np.floor(p * n_sheep)) for t, p in props.items()}
    residue = n_sheep - sum(counts.values())
    if residue < 0:
        raise ValueError(f"cannot allocate {n_sheep} sheep for {scenario}")
    majority = max(props, key=lambda t: (props[t], t))
    counts[majority] += residue
    assert sum(counts.values()) == n_sheep
    return counts


def scenario_row(scenario: str) -> np.ndarray:
    """Type-proportion vector (length 7, ordered A1..A7) for one scenario."""
    props = SCENARIOS[scenario]
    return np.array([props.get(t, 0.0) for t in AGENT_TYPE_IDS])


def scenario_matrix() -> np.ndarray:
    """All 11 scenario rows stacked, ordered S1..S11."""
    return np.stack([scenario_row(s) for s in SCENARIO_IDS])
