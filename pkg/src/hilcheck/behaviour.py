"""Driver behaviour: fatigue, reaction time, hazard perception.

Fatigue is an ordered three-level scale fed by two severity signals (time
behind the wheel and terrain difficulty) combined through a configurable
two-argument integrator.  Reaction time scales a per-interaction-mode base
latency by a fatigue factor.  Hazard perception degrades linearly with
fatigue on a small bounded health-point scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum


class FatigueLevel(IntEnum):
    """Ordered driver fatigue scale; higher is worse."""

    Normal = 0
    Tired = 1
    Exhausted = 2


class InputMode(Enum):
    """How the driver interacts with the vehicle controls."""

    GamePad = "GamePad"
    Speech = "Speech"
    MultiModal = "MultiModal"


class IntegratorOp(Enum):
    """Two-argument combiners for merging severity signals."""

    Max = "Max"
    Min = "Min"
    Sum = "Sum"
    RoundedMean = "RoundedMean"


@dataclass(frozen=True)
class ReactionProfile:
    """Base latencies per interaction mode and multipliers per fatigue level.

    fast < okay < slow keeps the mode ordering meaningful; the fatigue
    factors must not decrease as fatigue worsens.
    """

    fast: int = 1
    okay: int = 2
    slow: int = 3
    n_factor: int = 1
    t_factor: int = 2
    e_factor: int = 3

    def __post_init__(self) -> None:
        if not (0 < self.fast < self.okay < self.slow):
            raise ValueError("base latencies must satisfy 0 < fast < okay < slow")
        if not (1 <= self.n_factor <= self.t_factor <= self.e_factor):
            raise ValueError("fatigue factors must be >= 1 and non-decreasing")


_MODE_BASE = {
    InputMode.GamePad: "okay",
    InputMode.Speech: "slow",
    InputMode.MultiModal: "fast",
}

_FATIGUE_FACTOR = {
    FatigueLevel.Normal: "n_factor",
    FatigueLevel.Tired: "t_factor",
    FatigueLevel.Exhausted: "e_factor",
}


def set_reaction_time(mode: InputMode, fatigue: FatigueLevel,
                      profile: ReactionProfile = ReactionProfile()) -> int:
    """Reaction latency in iterations: mode base times fatigue multiplier.

    Multi-modal interaction is the fastest base, speech the slowest.  The
    result is monotone in fatigue for a fixed mode and respects the mode
    ordering for a fixed fatigue level.
    """
    base = getattr(profile, _MODE_BASE[mode])
    factor = getattr(profile, _FATIGUE_FACTOR[fatigue])
    return base * factor


def time_severity(time_driven: int, tired_after: int = 4,
                  exhausted_after: int = 8) -> int:
    """Severity 0/1/2 of accumulated driving time against two thresholds."""
    if time_driven < 0:
        raise ValueError("time driven must be non-negative")
    if not 0 < tired_after < exhausted_after:
        raise ValueError("thresholds must satisfy 0 < tired_after < exhausted_after")
    if time_driven >= exhausted_after:
        return 2
    if time_driven >= tired_after:
        return 1
    return 0


def integrate(op: IntegratorOp, a: int, b: int, hi: int = 2) -> int:
    """Combine two severity values into one, clamped to [0, hi].

    Max and Min never leave the input range so need no clamping; Sum can
    overshoot and is clamped; RoundedMean rounds halves up so a mixed pair
    leans toward the worse signal.
    """
    if a < 0 or b < 0:
        raise ValueError("severity values must be non-negative")
    if op is IntegratorOp.Max:
        result = max(a, b)
    elif op is IntegratorOp.Min:
        result = min(a, b)
    elif op is IntegratorOp.Sum:
        result = a + b
    elif op is IntegratorOp.RoundedMean:
        result = (a + b + 1) // 2
    else:
        raise ValueError(f"unknown integrator {op!r}")
    return min(hi, result)


def set_driver_fatigue(time_driven: int, terrain_severity: int,
                       op: IntegratorOp = IntegratorOp.Max,
                       tired_after: int = 4,
                       exhausted_after: int = 8) -> FatigueLevel:
    """Fatigue from driving time and terrain, merged by the chosen integrator."""
    level = integrate(op, time_severity(time_driven, tired_after, exhausted_after),
                      terrain_severity)
    return FatigueLevel(level)


def hp_function(raw: int, max_hp: int = 5) -> int:
    """Clamp a raw health-point value into [0, max_hp]."""
    if max_hp < 1:
        raise ValueError("max_hp must be positive")
    return min(max_hp, max(0, raw))


def perception_from_fatigue(fatigue: FatigueLevel, max_hp: int = 5) -> int:
    """Hazard-perception points remaining at a fatigue level.

    Each fatigue step costs two points off the ceiling: 5 / 3 / 1 on the
    default scale.  Never negative.
    """
    return hp_function(max_hp - 2 * int(fatigue), max_hp)
