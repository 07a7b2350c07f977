"""Bounded exhaustive checking of a human-in-the-loop control loop.

The `engine` module is the generic checker: three communicating models,
nine variable groups per iteration, exhaustive exploration of declared
choice points, counterexample traces with replay.  The `acc`, `behaviour`
and `environment` modules are the cruise-control case study's components,
and `scenarios` wires them into runnable configurations.
"""

from .acc import (AccCommand, ControlMode, VehicleState, acc_decide,
                  adaptive_separation, apply_command, compute_safe_stopping)
from .behaviour import (FatigueLevel, InputMode, IntegratorOp, ReactionProfile,
                        hp_function, integrate, perception_from_fatigue,
                        set_driver_fatigue, set_reaction_time, time_severity)
from .engine import (Assertion, BoolDomain, ChoiceEntry, ChoicePoint, Group,
                     IntDomain, Model, ModelError, ModelState, StepResult,
                     SymbolicDomain, UpdateFunctions, Var, VarId, Verdict,
                     VerdictKind, explore, first_value_resolver, log_resolver,
                     probe_variable, probed_model, register_model,
                     replay_counterexample, resolve_initial, step)
from .environment import (Hazard, Route, RoutePoint, RouteSpec, Terrain,
                          advance_route, gen_hazard, point_difficulty)
from .scenarios import (DEFAULT_ROUTE, SCENARIOS, ScenarioConfig,
                        ScenarioParams, build_model, is_okay, reaction_probe,
                        scenario_ideal, scenario_lowered_speed,
                        scenario_manual_override)
from .trace_io import TraceFile, export_trace, format_trace, read_trace

__version__ = "0.1.0"
