"""Adaptive cruise control: discrete bang-bang gap regulation.

The controller compares a preset separation against the currently measured
gap to the lead vehicle and issues one of three commands.  Speed moves by at
most one unit per iteration; the gap then evolves by the speed difference to
the lead vehicle.  All quantities are small non-negative integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .behaviour import FatigueLevel, ReactionProfile, set_reaction_time


class AccCommand(Enum):
    Accelerate = "Accelerate"
    Maintain = "Maintain"
    Decelerate = "Decelerate"


class ControlMode(Enum):
    Manual = "Manual"
    Engaged = "Engaged"


@dataclass(frozen=True)
class VehicleState:
    speed: int
    gap_to_lead: int
    acc_status: ControlMode
    desired_separation: int
    safe_stopping_distance: int

    def __post_init__(self) -> None:
        if self.speed < 0:
            raise ValueError("speed must be non-negative")
        if self.gap_to_lead < 0:
            raise ValueError("gap must be non-negative")
        if self.desired_separation < 0:
            raise ValueError("desired separation must be non-negative")
        if self.safe_stopping_distance < 0:
            raise ValueError("safe stopping distance must be non-negative")


def acc_decide(preset: int, current_gap: int) -> AccCommand:
    """Pick the command that drives the gap toward the preset.

    A gap below the preset means the car is too close: slow down so the lead
    pulls away.  A gap above it means speed up to close in.  Exactly one of
    the three commands applies to any (preset, gap) pair.
    """
    if current_gap == preset:
        return AccCommand.Maintain
    if current_gap < preset:
        return AccCommand.Decelerate
    return AccCommand.Accelerate


def apply_command(vehicle: VehicleState, command: AccCommand,
                  lead_speed: int, max_speed: int = 10) -> VehicleState:
    """One kinematic step: adjust speed by one unit, then move both cars.

    Speed saturates at 0 and at max_speed.  The gap changes by how much
    farther the lead travelled than we did; it cannot go below zero (contact
    or sensor floor).
    """
    if lead_speed < 0:
        raise ValueError("lead speed must be non-negative")
    delta = {AccCommand.Accelerate: 1,
             AccCommand.Maintain: 0,
             AccCommand.Decelerate: -1}[command]
    new_speed = min(max_speed, max(0, vehicle.speed + delta))
    new_gap = max(0, vehicle.gap_to_lead + lead_speed - new_speed)
    return VehicleState(speed=new_speed,
                        gap_to_lead=new_gap,
                        acc_status=vehicle.acc_status,
                        desired_separation=vehicle.desired_separation,
                        safe_stopping_distance=vehicle.safe_stopping_distance)


def adaptive_separation(fatigue: FatigueLevel, base: int = 4) -> int:
    """Minimum separation the vehicle must keep, widened as the driver tires.

    A tired driver gets roughly three quarters of a base more, an exhausted
    one half a base more on top of the already-widened margin, all rounded
    up so the distance never shrinks for a worse driver.  base=4 gives the
    ladder 4 / 5 / 6.
    """
    if base < 1:
        raise ValueError("base separation must be positive")
    extra = {
        FatigueLevel.Normal: 0,
        FatigueLevel.Tired: (base + 3) // 4,
        FatigueLevel.Exhausted: (base + 1) // 2,
    }[fatigue]
    return base + extra


def compute_safe_stopping(speed: int, reaction_time: int) -> int:
    """Distance covered before the driver's reaction completes.

    Discrete analogue of reaction-distance: current speed times the reaction
    delay in iterations.  Braking distance proper is absorbed into the
    separation preset, so this term isolates the human part.
    """
    if speed < 0:
        raise ValueError("speed must be non-negative")
    if reaction_time < 0:
        raise ValueError("reaction time must be non-negative")
    return speed * reaction_time


def stopping_distance_for(speed: int, mode, fatigue: FatigueLevel,
                          profile: ReactionProfile = ReactionProfile()) -> int:
    """Convenience composition: reaction time from the interaction mode and
    fatigue, then the stopping distance at the given speed."""
    return compute_safe_stopping(speed, set_reaction_time(mode, fatigue, profile))
