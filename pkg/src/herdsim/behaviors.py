"""Drive/collect behaviour variants, the switching rule, and the tactic pairs."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .params import ModelConstants
from .world import WorldState, flock_com, unit


class DegenerateGeometryError(ValueError):
    """Raised when a steering point is undefined (coincident reference points)."""


class Kind(enum.Enum):
    DRIVE = "drive"
    COLLECT = "collect"


DRIVE_LABELS = ("D1N", "D25", "D50", "D75", "D100")
COLLECT_LABELS = ("C2D", "C2H", "F2D", "F2G", "F2H")

_DRIVE_FRACTIONS = {"D25": 0.25, "D50": 0.50, "D75": 0.75, "D100": 1.00}


@dataclass(frozen=True)
class DriveVariant:
    label: str

    def l_frac(self, n: int) -> float:
        if self.label == "D1N":
            return 1.0 / n
        return _DRIVE_FRACTIONS[self.label]


@dataclass(frozen=True)
class CollectVariant:
    label: str


@dataclass(frozen=True)
class TacticPair:
    id: int
    drive: DriveVariant
    collect: CollectVariant

    @property
    def name(self) -> str:
        return f"TP{self.id}"


# Row order follows the published pairing of the 25 combinations; TP5 is the
# classic single-behaviour agent (D100, F2H).
_CATALOG_ROWS = [
    (1, "D100", "C2D"), (2, "D100", "C2H"), (3, "D100", "F2D"),
    (4, "D100", "F2G"), (5, "D100", "F2H"),
    (6, "D50", "C2D"), (7, "D50", "C2H"), (8, "D50", "F2D"),
    (9, "D50", "F2G"), (10, "D50", "F2H"),
    (11, "D1N", "C2D"), (12, "D1N", "C2H"), (13, "D1N", "F2D"),
    (14, "D1N", "F2G"), (15, "D1N", "F2H"),
    (16, "D25", "C2D"), (17, "D25", "C2H"), (18, "D25", "F2D"),
    (19, "D25", "F2G"), (20, "D25", "F2H"),
    (21, "D75", "C2D"), (22, "D75", "C2H"), (23, "D75", "F2D"),
    (24, "D75", "F2G"), (25, "D75", "F2H"),
]


def tactic_pair_catalog() -> list[TacticPair]:
    return [TacticPair(i, DriveVariant(d), CollectVariant(c))
            for i, d, c in _CATALOG_ROWS]


_CATALOG = {tp.id: tp for tp in tactic_pair_catalog()}


def tactic_pair(tp_id: int) -> TacticPair:
    return _CATALOG[tp_id]


@dataclass(frozen=True)
class BehaviourDecision:
    kind: Kind
    steering_point: np.ndarray
    focal_agent: int | None = None

    def __post_init__(self):
        if self.kind is Kind.COLLECT and self.focal_agent is None:
            raise ValueError("collect decisions must carry a focal agent")


def f_n(r_pi_pi: float, n: int, l_frac: float) -> float:
    """Cohesion radius r * (l_frac * n)^(2/3)."""
    if r_pi_pi <= 0 or n < 1 or not 0 < l_frac <= 1:
        raise ValueError("f_n arguments out of range")
    return r_pi_pi * (l_frac * n) ** (2.0 / 3.0)


def drive_point(lcm: np.ndarray, goal: np.ndarray, f: float) -> np.ndarray:
    """Point behind the flock, f units beyond the centre of mass away from goal."""
    offset = np.asarray(lcm, dtype=float) - np.asarray(goal, dtype=float)
    norm = np.linalg.norm(offset)
    if norm == 0:
        raise DegenerateGeometryError("flock centre coincides with the goal")
    return lcm + f * offset / norm


def collect_point(target: np.ndarray, lcm: np.ndarray, r_pi_pi: float) -> np.ndarray:
    """Point just beyond the focal sheep, opposite the flock centre."""
    offset = np.asarray(target, dtype=float) - np.asarray(lcm, dtype=float)
    norm = np.linalg.norm(offset)
    if norm == 0:
        raise DegenerateGeometryError("focal sheep coincides with the flock centre")
    return target + r_pi_pi * offset / norm


def select_focal(world: WorldState, variant: CollectVariant) -> int:
    """Index of the sheep the collect behaviour targets; ties break low."""
    pos = world.sheep_pos
    com = flock_com(world)
    label = variant.label
    if label in ("C2D", "F2D"):
        d = np.linalg.norm(pos - world.shepherd_pos[None, :], axis=1)
        return int(np.argmin(d) if label == "C2D" else np.argmax(d))
    if label == "C2H":
        return int(np.argmin(np.linalg.norm(pos - com[None, :], axis=1)))
    if label == "F2H":
        return int(np.argmax(np.linalg.norm(pos - com[None, :], axis=1)))
    if label == "F2G":
        return int(np.argmax(np.linalg.norm(pos - world.goal[None, :], axis=1)))
    raise ValueError(f"unknown collect variant {label!r}")


def select_behavior(world: WorldState, tp: TacticPair, constants: ModelConstants,
                    quantile_drive: bool = False) -> BehaviourDecision:
    """Drive when the flock is grouped tightly enough for the TP's threshold,
    otherwise collect the focal sheep of the TP's collect variant.

    The default reads the threshold literally: drive iff every sheep is within
    f(l_frac * N) of the centre of mass. `quantile_drive` switches to the prose
    reading: drive iff the nearest l_frac-fraction of sheep is within f(N).
    """
    n = world.n_sheep
    com = flock_com(world)
    dists = np.linalg.norm(world.sheep_pos - com[None, :], axis=1)
    l_frac = tp.drive.l_frac(n)
    if quantile_drive:
        k = max(1, int(np.ceil(l_frac * n)))
        bound = f_n(constants.r_pi_pi, n, 1.0)
        grouped = bool(np.sort(dists)[k - 1] <= bound)
    else:
        grouped = bool(np.all(dists <= f_n(constants.r_pi_pi, n, l_frac)))

    if not grouped:
        focal = select_focal(world, tp.collect)
        try:
            point = collect_point(world.sheep_pos[focal], com, constants.r_pi_pi)
            return BehaviourDecision(Kind.COLLECT, point, focal)
        except DegenerateGeometryError:
            pass  # focal at the centre of mass: drive instead

    point = drive_point(com, world.goal, f_n(constants.r_pi_pi, n, 1.0))
    return BehaviourDecision(Kind.DRIVE, point)
