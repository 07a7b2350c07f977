#!/usr/bin/env python3
"""Sweep the driver's initial fatigue level and report which levels break
the separation property.

The probe fixture pins everything else: cruise control engaged, speech-only
interaction, fatigue held at its initial level for the whole run.  Probing
then answers "from which starting condition is the configured headway
insufficient?" without touching the model's update functions.

Usage: python3 scripts/probe_fatigue.py [--bound N]
"""

import argparse

from hilcheck.behaviour import FatigueLevel
from hilcheck.engine import (ChoiceEntry, Group, VerdictKind, log_resolver,
                             probe_variable, probed_model, resolve_initial,
                             step)
from hilcheck.scenarios import build_model, reaction_probe


def pinned_outcome(swept, level: FatigueLevel, bound: int):
    """Run one fatigue level to the bound; any unscripted draw is a bug."""
    resolver = log_resolver([ChoiceEntry(0, "probe:fatigue", level)])
    state, _ = resolve_initial(swept, resolver)
    for _ in range(bound):
        result = step(swept, state, log_resolver([]))
        state = result.state
        if result.violated:
            return result.violated[0], state
    return "safe", state


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=100)
    args = parser.parse_args()

    config = reaction_probe()
    model = build_model(config)
    verdict = probe_variable(model, (Group.BEH_STATE, "fatigue"), args.bound)

    print(f"fixture: {config.name}  bound: {args.bound}")
    print(f"sweep verdict: {verdict}  paths: {verdict.paths_explored}")
    if verdict.kind is not VerdictKind.Unsafe:
        print("no initial fatigue level violates the properties")
        return 0

    broken = [e.value for e in verdict.choice_log
              if e.point_id == "probe:fatigue"]
    print(f"first breaking level: {broken[0].name}")
    print(f"violated: {verdict.failed_assertion} at iteration "
          f"{verdict.trace[-1].iteration}")

    swept = probed_model(model, (Group.BEH_STATE, "fatigue"))
    print()
    print("level      outcome               gap  stopping-distance")
    for level in FatigueLevel:
        outcome, final = pinned_outcome(swept, level, args.bound)
        gap = final.value(Group.SYS_STATE, "gap")
        stopping = (final.value(Group.SYS_STATE, "speed")
                    * final.value(Group.BEH_STATE, "reaction_time"))
        print(f"{level.name:<9}  {outcome:<20}  {gap:>3}  {stopping:>17}")
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
