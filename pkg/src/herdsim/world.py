"""World state and deterministic stepping of sheep and shepherd."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import AGENT_TYPES, AGENT_TYPE_IDS, ModelConstants, SimConfig, scenario_counts

_EPS = 1e-12


def unit(v: np.ndarray) -> np.ndarray:
    """Normalise a vector; the zero vector is returned unchanged."""
    n = np.linalg.norm(v)
    if n < _EPS:
        return np.zeros_like(v)
    return v / n


@dataclass
class WorldState:
    """Positions of N sheep and one shepherd, plus everything needed to step.

    Arrays are owned by this instance; `step` returns a fresh WorldState and
    leaves its input untouched (including the generator state).
    """

    t: int
    sheep_pos: np.ndarray       # (N, 2)
    sheep_heading: np.ndarray   # (N, 2), unit or zero rows
    sheep_type: np.ndarray      # (N,) indices into AGENT_TYPE_IDS
    shepherd_pos: np.ndarray    # (2,)
    shepherd_heading: np.ndarray
    goal: np.ndarray            # (2,)
    goal_radius: float
    paddock_side: float
    t_max: int
    rng_state: dict             # PCG64 bit-generator state

    @property
    def n_sheep(self) -> int:
        return self.sheep_pos.shape[0]

    def type_params(self, i: int):
        return AGENT_TYPES[AGENT_TYPE_IDS[self.sheep_type[i]]]

    def rng(self) -> np.random.Generator:
        gen = np.random.Generator(np.random.PCG64())
        gen.bit_generator.state = self.rng_state
        return gen

    def speed_ratios(self) -> np.ndarray:
        ratios = np.array([AGENT_TYPES[t].speed_ratio for t in AGENT_TYPE_IDS])
        return ratios[self.sheep_type]


def spawn_scenario(config: SimConfig) -> WorldState:
    """Build the initial world for a scenario, bit-deterministic in the seed.

    Sheep are laid out in type order A1..A7 with counts from the scenario
    proportions; positions are drawn uniformly from the init region.
    """
    counts = scenario_counts(config.scenario, config.n_sheep)
    types = []
    for idx, tid in enumerate(AGENT_TYPE_IDS):
        types.extend([idx] * counts.get(tid, 0))
    sheep_type = np.array(types, dtype=np.int64)
    if sheep_type.shape[0] != config.n_sheep:
        raise ValueError("scenario rounding failed to produce n_sheep agents")

    rng = np.random.Generator(np.random.PCG64(config.seed))
    xmin, xmax, ymin, ymax = config.init_region
    xy = rng.random((config.n_sheep, 2))
    pos = np.column_stack([xmin + xy[:, 0] * (xmax - xmin),
                           ymin + xy[:, 1] * (ymax - ymin)])
    return WorldState(
        t=0,
        sheep_pos=pos,
        sheep_heading=np.zeros((config.n_sheep, 2)),
        sheep_type=sheep_type,
        shepherd_pos=np.array(config.shepherd_init, dtype=float),
        shepherd_heading=np.zeros(2),
        goal=np.array(config.goal, dtype=float),
        goal_radius=config.goal_radius,
        paddock_side=config.paddock_side,
        t_max=config.t_max,
        rng_state=rng.bit_generator.state,
    )


def local_centre_of_mass(world: WorldState, subset) -> np.ndarray:
    idx = np.asarray(list(subset), dtype=np.int64)
    if idx.size == 0:
        raise ValueError("subset must be non-empty")
    return world.sheep_pos[idx].mean(axis=0)


def flock_com(world: WorldState) -> np.ndarray:
    return world.sheep_pos.mean(axis=0)


def is_mission_complete(world: WorldState) -> bool:
    return float(np.linalg.norm(flock_com(world) - world.goal)) <= world.goal_radius


def sheep_step(world: WorldState, constants: ModelConstants,
               rng: np.random.Generator | None = None):
    """New sheep positions and headings after one step.

    Sheep outside the shepherd's detection radius graze (random walk with
    probability graze_prob); sheep in range follow the weighted force rule.
    Returns (positions, headings). The per-step random draws are consumed in a
    fixed order so trajectories are reproducible regardless of branch outcomes.
    """
    if rng is None:
        rng = world.rng()
    n = world.n_sheep
    pos = world.sheep_pos
    c = constants

    graze_u = rng.random(n)
    graze_theta = rng.random(n) * 2.0 * np.pi
    noise_theta = rng.random(n) * 2.0 * np.pi

    delta = pos[:, None, :] - pos[None, :, :]          # delta[i, j] = pos_i - pos_j
    dist = np.linalg.norm(delta, axis=2)
    np.fill_diagonal(dist, np.inf)

    to_shep = pos - world.shepherd_pos[None, :]
    shep_dist = np.linalg.norm(to_shep, axis=1)
    in_range = shep_dist <= c.r_shep_detect

    ratios = world.speed_ratios()
    step_len = c.sheep_step_len * ratios

    new_pos = pos.copy()
    new_head = world.sheep_heading.copy()

    # Attraction target: centre of mass of other sheep within detection radius.
    neigh = dist <= c.r_shep_detect
    neigh_count = neigh.sum(axis=1)
    # Repulsion: sum of unit vectors away from sheep closer than r_pi_pi.
    close = dist <= c.r_pi_pi
    with np.errstate(invalid="ignore", divide="ignore"):
        unit_delta = delta / dist[:, :, None]
    unit_delta = np.nan_to_num(unit_delta)
    rep_vec = (unit_delta * close[:, :, None]).sum(axis=1)

    weights = np.array([[AGENT_TYPES[t].w_lcm, AGENT_TYPES[t].w_rep, AGENT_TYPES[t].w_shep]
                        for t in AGENT_TYPE_IDS])[world.sheep_type]

    for i in np.nonzero(~in_range)[0]:
        if graze_u[i] < c.graze_prob:
            d = np.array([np.cos(graze_theta[i]), np.sin(graze_theta[i])])
            new_pos[i] = pos[i] + step_len[i] * d
            new_head[i] = d

    for i in np.nonzero(in_range)[0]:
        force = c.inertia * world.sheep_heading[i]
        if neigh_count[i] > 0:
            lcm = pos[neigh[i]].mean(axis=0)
            force = force + weights[i, 0] * unit(lcm - pos[i])
        force = force + weights[i, 1] * rep_vec[i]
        force = force + weights[i, 2] * unit(to_shep[i])
        if c.noise_ang > 0:
            force = force + c.noise_ang * np.array(
                [np.cos(noise_theta[i]), np.sin(noise_theta[i])])
        heading = unit(force)
        if np.any(heading != 0):
            new_pos[i] = pos[i] + step_len[i] * heading
            new_head[i] = heading

    np.clip(new_pos, 0.0, world.paddock_side, out=new_pos)
    return new_pos, new_head


def shepherd_step(world: WorldState, steering_point: np.ndarray,
                  constants: ModelConstants,
                  sheep_pos: np.ndarray | None = None):
    """New shepherd position: stalls near sheep, otherwise walks to the target.

    `sheep_pos` selects which sheep layout the stall check uses (defaults to
    the current one).
    """
    if not np.all(np.isfinite(steering_point)):
        raise ValueError("steering point must be finite")
    ref = world.sheep_pos if sheep_pos is None else sheep_pos
    min_dist = float(np.min(np.linalg.norm(ref - world.shepherd_pos[None, :], axis=1)))
    if min_dist < constants.stall_dist:
        return world.shepherd_pos.copy(), world.shepherd_heading.copy()
    offset = np.asarray(steering_point, dtype=float) - world.shepherd_pos
    gap = np.linalg.norm(offset)
    if gap <= _EPS:
        return world.shepherd_pos.copy(), world.shepherd_heading.copy()
    direction = offset / gap
    move = min(constants.shepherd_step_len, gap)
    new_pos = np.clip(world.shepherd_pos + move * direction, 0.0, world.paddock_side)
    return new_pos, direction


def step(world: WorldState, steering_point: np.ndarray,
         constants: ModelConstants) -> WorldState:
    """Advance the world one tick: sheep move, then the shepherd."""
    if world.t >= world.t_max:
        raise ValueError("cannot step past t_max")
    rng = world.rng()
    new_sheep, new_head = sheep_step(world, constants, rng)
    new_shep, new_shep_head = shepherd_step(world, steering_point, constants)
    return WorldState(
        t=world.t + 1,
        sheep_pos=new_sheep,
        sheep_heading=new_head,
        sheep_type=world.sheep_type,
        shepherd_pos=new_shep,
        shepherd_heading=new_shep_head,
        goal=world.goal,
        goal_radius=world.goal_radius,
        paddock_side=world.paddock_side,
        t_max=world.t_max,
        rng_state=rng.bit_generator.state,
    )
