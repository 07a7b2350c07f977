"""Bounded exhaustive checking of a three-model discrete control loop.

The engine runs a closed loop of three communicating models (environment,
system, behaviour).  Every iteration recomputes nine variable groups in a
fixed order:

    1. inputs:   env_input, sys_input, beh_input
    2. outputs:  env_output, sys_output, beh_output
    3. states:   env_state,  sys_state,  beh_state
    4. safety assertions on the resulting valuation

Each group is produced by one update function with a fixed read-set:

    env_input  <- sys_output, env_state
    sys_input  <- beh_output, env_output, sys_state
    beh_input  <- beh_state,  env_output, sys_output
    env_output <- env_input', env_state      (primed: this iteration's value)
    sys_output <- sys_input', sys_state
    beh_output <- beh_input', beh_state
    env_state  <- env_input', env_state
    sys_state  <- sys_input', sys_state
    beh_state  <- beh_input', beh_state

Unprimed operands are the previous iteration's values.  The read-sets are
enforced structurally: an update function only ever receives views of the
groups it is allowed to read.  Environment and behaviour functions may draw
values from declared choice points; the three system functions must be
deterministic and are never handed a drawing context.

`explore` enumerates every resolution of every choice point up to a bound,
depth first in declared domain order, and reports the first violating path
as a replayable counterexample.  All data is immutable, so paths are
re-executed from the initial state rather than snapshotted; this keeps the
search trivially correct at the cost of redundant recomputation, which is
acceptable at the scale this engine targets.

The module holds no global mutable state; concurrent use of separate models
is safe, single-threaded use is assumed per model.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Iterable, Mapping, Sequence, Union

Value = Union[int, bool, str, Enum]

DEFAULT_PATH_CEILING = 10**8


class ModelError(Exception):
    """Raised for structural model problems: bad registration, out-of-domain
    values, read-set or determinism violations, resource exhaustion."""


class Group(Enum):
    """The nine variable groups of the control loop."""

    ENV_INPUT = "env_in"
    ENV_OUTPUT = "env_out"
    ENV_STATE = "env_state"
    SYS_INPUT = "sys_in"
    SYS_OUTPUT = "sys_out"
    SYS_STATE = "sys_state"
    BEH_INPUT = "beh_in"
    BEH_OUTPUT = "beh_out"
    BEH_STATE = "beh_state"


SYSTEM_GROUPS = frozenset({Group.SYS_INPUT, Group.SYS_OUTPUT, Group.SYS_STATE})


@dataclass(frozen=True)
class VarId:
    name: str
    group: Group

    def __str__(self) -> str:
        return f"{self.group.value}.{self.name}"


@dataclass(frozen=True)
class IntDomain:
    """Bounded integer domain, inclusive on both ends."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ModelError(f"empty integer domain [{self.lo}, {self.hi}]")

    def contains(self, v: Value) -> bool:
        return isinstance(v, int) and not isinstance(v, bool) and self.lo <= v <= self.hi

    def values(self) -> tuple[Value, ...]:
        return tuple(range(self.lo, self.hi + 1))


@dataclass(frozen=True)
class BoolDomain:
    def contains(self, v: Value) -> bool:
        return isinstance(v, bool)

    def values(self) -> tuple[Value, ...]:
        return (False, True)


@dataclass(frozen=True)
class SymbolicDomain:
    """Finite enumeration of labels.  Members may be strings or Enum members;
    they only compare meaningfully within the same enumeration."""

    members: tuple[Value, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ModelError("symbolic domain must not be empty")
        if len(set(self.members)) != len(self.members):
            raise ModelError("symbolic domain has duplicate members")

    def contains(self, v: Value) -> bool:
        return v in self.members

    def values(self) -> tuple[Value, ...]:
        return self.members


Domain = Union[IntDomain, BoolDomain, SymbolicDomain]


@dataclass(frozen=True)
class Var:
    name: str
    group: Group
    domain: Domain

    def __post_init__(self) -> None:
        if not self.name.isidentifier():
            raise ModelError(f"variable name {self.name!r} must be an identifier")

    @property
    def var_id(self) -> VarId:
        return VarId(self.name, self.group)


@dataclass(frozen=True)
class ChoicePoint:
    """A named non-deterministic draw site.

    `domain` is the ordered list of candidate values; exploration branches in
    exactly this order.  `site` is the group whose update function performs
    the draw, or None for draws resolved once before the first iteration
    (initialisation choices, including probes).
    """

    point_id: str
    domain: tuple[Value, ...]
    site: Group | None = None

    def __post_init__(self) -> None:
        if not self.domain:
            raise ModelError(f"choice point '{self.point_id}' has an empty domain")
        if len(set(self.domain)) != len(self.domain):
            raise ModelError(f"choice point '{self.point_id}' has duplicate values")
        if self.site in SYSTEM_GROUPS:
            raise ModelError("system update must be deterministic: "
                             f"choice point '{self.point_id}' sited at {self.site.value}")


@dataclass(frozen=True)
class ChoiceEntry:
    """One resolved draw: which point, during which iteration, which value.
    Initialisation draws use iteration 0."""

    iteration: int
    point_id: str
    value: Value


ChoiceLog = tuple[ChoiceEntry, ...]


@dataclass(frozen=True)
class Assertion:
    """A pure safety predicate over a full valuation; False means violated."""

    assert_id: str
    predicate: Callable[["ModelState"], bool]


@dataclass(frozen=True)
class ModelState:
    """A complete valuation of every declared variable at one iteration."""

    valuation: dict[VarId, Value]
    iteration: int

    def value(self, group: Group, name: str) -> Value:
        try:
            return self.valuation[VarId(name, group)]
        except KeyError:
            raise ModelError(f"unknown variable {group.value}.{name}") from None


Trace = tuple[ModelState, ...]


class GroupView:
    """Read-only view of one group's variables, by attribute or item access.

    Update functions receive only the views their read-set allows, which is
    how read-set violations are made structurally impossible.
    """

    __slots__ = ("_group", "_values")

    def __init__(self, group: Group, values: dict[str, Value]):
        self._group = group
        self._values = values

    @property
    def group(self) -> Group:
        return self._group

    def __getattr__(self, name: str):
        if name.startswith("_"):
            raise AttributeError(name)
        try:
            return self._values[name]
        except KeyError:
            raise ModelError(
                f"no variable '{name}' in group {self._group.value}") from None

    def __getitem__(self, name: str) -> Value:
        try:
            return self._values[name]
        except KeyError:
            raise ModelError(
                f"no variable '{name}' in group {self._group.value}") from None

    def as_dict(self) -> dict[str, Value]:
        return dict(self._values)


@dataclass(frozen=True)
class UpdateFunctions:
    """The nine update functions, keyed by the group they produce.

    Input and output/state functions for the environment and behaviour models
    receive a trailing StepContext and may draw choices through it.  The three
    system functions receive no context and therefore cannot draw.

    Each function returns a mapping from variable name to new value for its
    target group.  Variables omitted from the mapping keep their previous
    value (carry-over).
    """

    env_input: Callable   # (sys_output, env_state, ctx) -> mapping
    sys_input: Callable   # (beh_output, env_output, sys_state) -> mapping
    beh_input: Callable   # (beh_state, env_output, sys_output, ctx) -> mapping
    env_output: Callable  # (env_input', env_state, ctx) -> mapping
    sys_output: Callable  # (sys_input', sys_state) -> mapping
    beh_output: Callable  # (beh_input', beh_state, ctx) -> mapping
    env_state: Callable   # (env_input', env_state, ctx) -> mapping
    sys_state: Callable   # (sys_input', sys_state) -> mapping
    beh_state: Callable   # (beh_input', beh_state, ctx) -> mapping


@dataclass(frozen=True)
class _Slot:
    target: Group
    fn_name: str
    reads: tuple[tuple[Group, bool], ...]  # (group, primed)
    may_draw: bool


_INPUT_PHASE = (
    _Slot(Group.ENV_INPUT, "env_input",
          ((Group.SYS_OUTPUT, False), (Group.ENV_STATE, False)), True),
    _Slot(Group.SYS_INPUT, "sys_input",
          ((Group.BEH_OUTPUT, False), (Group.ENV_OUTPUT, False), (Group.SYS_STATE, False)), False),
    _Slot(Group.BEH_INPUT, "beh_input",
          ((Group.BEH_STATE, False), (Group.ENV_OUTPUT, False), (Group.SYS_OUTPUT, False)), True),
)

_OUTPUT_PHASE = {
    Group.ENV_OUTPUT: _Slot(Group.ENV_OUTPUT, "env_output",
                            ((Group.ENV_INPUT, True), (Group.ENV_STATE, False)), True),
    Group.SYS_OUTPUT: _Slot(Group.SYS_OUTPUT, "sys_output",
                            ((Group.SYS_INPUT, True), (Group.SYS_STATE, False)), False),
    Group.BEH_OUTPUT: _Slot(Group.BEH_OUTPUT, "beh_output",
                            ((Group.BEH_INPUT, True), (Group.BEH_STATE, False)), True),
}

_STATE_PHASE = (
    _Slot(Group.ENV_STATE, "env_state",
          ((Group.ENV_INPUT, True), (Group.ENV_STATE, False)), True),
    _Slot(Group.SYS_STATE, "sys_state",
          ((Group.SYS_INPUT, True), (Group.SYS_STATE, False)), False),
    _Slot(Group.BEH_STATE, "beh_state",
          ((Group.BEH_INPUT, True), (Group.BEH_STATE, False)), True),
)

DEFAULT_OUTPUT_ORDER = (Group.ENV_OUTPUT, Group.SYS_OUTPUT, Group.BEH_OUTPUT)


Resolver = Callable[[ChoicePoint, int], Value]


def first_value_resolver(cp: ChoicePoint, iteration: int) -> Value:
    """Resolver that always picks the first value of a choice domain."""
    return cp.domain[0]


def log_resolver(log: Iterable[ChoiceEntry]) -> Resolver:
    """Resolver that replays a recorded choice log, strictly in order."""
    queue = list(log)

    def resolve(cp: ChoicePoint, iteration: int) -> Value:
        if not queue:
            raise ModelError(f"replay log exhausted at '{cp.point_id}' "
                             f"(iteration {iteration})")
        entry = queue.pop(0)
        if entry.point_id != cp.point_id or entry.iteration != iteration:
            raise ModelError(
                f"replay mismatch: log has ({entry.iteration}, {entry.point_id}), "
                f"run drew ({iteration}, {cp.point_id})")
        return entry.value

    return resolve


class StepContext:
    """Drawing context handed to environment and behaviour update functions."""

    def __init__(self, model: "Model", iteration: int, resolver: Resolver,
                 site: Group, entries: list[ChoiceEntry]):
        self._model = model
        self._iteration = iteration
        self._resolver = resolver
        self._site = site
        self._entries = entries

    def choose(self, point_id: str) -> Value:
        cp = self._model.choices.get(point_id)
        if cp is None:
            raise ModelError(f"unknown choice point '{point_id}'")
        if cp.site is None:
            raise ModelError(
                f"choice point '{point_id}' is an initialisation choice and "
                "cannot be drawn during a step")
        if cp.site != self._site:
            raise ModelError(
                f"choice point '{point_id}' is declared for "
                f"{cp.site.value} but was drawn while computing {self._site.value}")
        value = self._resolver(cp, self._iteration)
        if value not in cp.domain:
            raise ModelError(
                f"resolver produced {value!r}, outside the domain of '{point_id}'")
        self._entries.append(ChoiceEntry(self._iteration, point_id, value))
        return value


@dataclass(frozen=True)
class Model:
    """A registered model: immutable, validated, ready to step or explore."""

    name: str
    variables: tuple[Var, ...]
    updates: UpdateFunctions
    choices: dict[str, ChoicePoint]
    assertions: tuple[Assertion, ...]
    init: dict[VarId, Value]
    init_choices: tuple[tuple[VarId, ChoicePoint], ...]

    def var(self, group: Group, name: str) -> Var:
        for v in self.variables:
            if v.group is group and v.name == name:
                return v
        raise ModelError(f"unknown variable {group.value}.{name}")

    def group_vars(self, group: Group) -> tuple[Var, ...]:
        return tuple(v for v in self.variables if v.group is group)


@dataclass(frozen=True)
class StepResult:
    state: ModelState
    drawn: ChoiceLog
    violated: tuple[str, ...]


class VerdictKind(Enum):
    Safe = "Safe"
    Unsafe = "Unsafe"
    ModelError = "ModelError"


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exploration.

    Safe(bound): every path ran to the bound without violating an assertion.
    Unsafe: carries the first violating path found in declared-order DFS as
    a trace plus the choice log that reproduces it, and the id of the first
    assertion (in declared order) violated at the final snapshot.
    ModelError: a structural problem or resource ceiling was hit.

    For Safe verdicts, trace and choice_log describe the first explored path
    so that a representative run can still be exported.
    """

    kind: VerdictKind
    bound: int
    paths_explored: int = 0
    trace: Trace | None = None
    choice_log: ChoiceLog | None = None
    failed_assertion: str | None = None
    message: str | None = None

    @property
    def is_safe(self) -> bool:
        return self.kind is VerdictKind.Safe

    @property
    def is_unsafe(self) -> bool:
        return self.kind is VerdictKind.Unsafe

    def __str__(self) -> str:
        if self.kind is VerdictKind.Safe:
            return f"Safe({self.bound})"
        if self.kind is VerdictKind.Unsafe:
            return f"Unsafe({self.failed_assertion})"
        return f"ModelError({self.message})"


def _normalize_key(key, variables: Sequence[Var]) -> VarId:
    if isinstance(key, VarId):
        return key
    if isinstance(key, tuple) and len(key) == 2 and isinstance(key[0], Group):
        return VarId(key[1], key[0])
    raise ModelError(f"cannot interpret {key!r} as a variable id")


def register_model(variables: Sequence[Var],
                   updates: UpdateFunctions,
                   choices: Sequence[ChoicePoint] = (),
                   assertions: Sequence[Assertion] = (),
                   init: Mapping | None = None,
                   init_choices: Sequence[tuple] = (),
                   name: str = "model") -> Model:
    """Validate and freeze a model definition.

    Checks: at least one variable; names unique within each group; choice
    point ids unique and never sited at a system group; initial values cover
    every variable and lie inside its domain; initialisation choices target
    declared variables with values inside the variable's domain.  Finally a
    single trial step is executed (first domain value at every draw) so that
    wiring mistakes surface at registration rather than mid-exploration.
    Assertion violations during the trial step are ignored.
    """
    vars_t = tuple(variables)
    if not vars_t:
        raise ModelError("a model needs at least one variable")
    seen: set[VarId] = set()
    for v in vars_t:
        if v.var_id in seen:
            raise ModelError(f"duplicate variable {v.var_id}")
        seen.add(v.var_id)

    choice_map: dict[str, ChoicePoint] = {}
    for cp in choices:
        if cp.point_id in choice_map:
            raise ModelError(f"duplicate choice point '{cp.point_id}'")
        choice_map[cp.point_id] = cp

    assert_t = tuple(assertions)
    ids = [a.assert_id for a in assert_t]
    if len(set(ids)) != len(ids):
        raise ModelError("duplicate assertion id")

    if init is None:
        init = {}
    init_map: dict[VarId, Value] = {}
    for key, value in init.items():
        init_map[_normalize_key(key, vars_t)] = value
    by_id = {v.var_id: v for v in vars_t}
    for vid, value in init_map.items():
        if vid not in by_id:
            raise ModelError(f"initial value given for unknown variable {vid}")
        if not by_id[vid].domain.contains(value):
            raise ModelError(f"initial value {value!r} outside the domain of {vid}")
    missing = [str(vid) for vid in by_id if vid not in init_map]
    if missing:
        raise ModelError("no initial value for: " + ", ".join(sorted(missing)))

    init_ch: list[tuple[VarId, ChoicePoint]] = []
    for key, cp in init_choices:
        vid = _normalize_key(key, vars_t)
        if vid not in by_id:
            raise ModelError(f"initialisation choice targets unknown variable {vid}")
        if cp.site is not None:
            raise ModelError(
                f"initialisation choice '{cp.point_id}' must use site None")
        if cp.point_id in choice_map:
            raise ModelError(f"duplicate choice point '{cp.point_id}'")
        for value in cp.domain:
            if not by_id[vid].domain.contains(value):
                raise ModelError(
                    f"initialisation choice '{cp.point_id}' offers {value!r}, "
                    f"outside the domain of {vid}")
        choice_map[cp.point_id] = cp
        init_ch.append((vid, cp))

    model = Model(name=name, variables=vars_t, updates=updates,
                  choices=choice_map, assertions=assert_t,
                  init=init_map, init_choices=tuple(init_ch))

    # trial step: surfaces read/update wiring errors now
    trial, _ = resolve_initial(model, first_value_resolver)
    step(model, trial, first_value_resolver)
    return model


def resolve_initial(model: Model,
                    resolver: Resolver = first_value_resolver
                    ) -> tuple[ModelState, ChoiceLog]:
    """Build the iteration-0 state, resolving initialisation choices in
    declared order through the resolver."""
    valuation = dict(model.init)
    entries: list[ChoiceEntry] = []
    for vid, cp in model.init_choices:
        value = resolver(cp, 0)
        if value not in cp.domain:
            raise ModelError(
                f"resolver produced {value!r}, outside the domain of '{cp.point_id}'")
        valuation[vid] = value
        entries.append(ChoiceEntry(0, cp.point_id, value))
    return ModelState(valuation, 0), tuple(entries)


def _group_values(model: Model, valuation: Mapping[VarId, Value],
                  group: Group) -> dict[str, Value]:
    return {v.name: valuation[v.var_id] for v in model.variables if v.group is group}


def _eval_assertions(model: Model, state: ModelState) -> tuple[str, ...]:
    violated = []
    for a in model.assertions:
        try:
            ok = bool(a.predicate(state))
        except ModelError:
            raise
        except Exception as exc:
            raise ModelError(
                f"assertion '{a.assert_id}' raised {exc!r} at iteration "
                f"{state.iteration}") from exc
        if not ok:
            violated.append(a.assert_id)
    return tuple(violated)


def step(model: Model, state: ModelState, resolver: Resolver,
         *, _output_order: tuple[Group, ...] = DEFAULT_OUTPUT_ORDER) -> StepResult:
    """Advance the loop by one iteration.

    Pure: given the same state and resolver decisions the result is
    identical.  The resolver supplies one domain value per choice point draw.
    Returns the new state, the draws made, and the ids of every assertion
    violated by the new state (declared order).

    `_output_order` exists for the self-test that output-phase functions
    commute; it must be a permutation of the three output groups.
    """
    new_groups: dict[Group, dict[str, Value]] = {}
    entries: list[ChoiceEntry] = []
    iteration = state.iteration + 1

    def view(group: Group, primed: bool) -> GroupView:
        if primed:
            return GroupView(group, new_groups[group])
        return GroupView(group, _group_values(model, state.valuation, group))

    if sorted(g.value for g in _output_order) != sorted(g.value for g in _OUTPUT_PHASE):
        raise ModelError("output order must be a permutation of the output groups")

    slots = list(_INPUT_PHASE) + [_OUTPUT_PHASE[g] for g in _output_order] + list(_STATE_PHASE)
    for slot in slots:
        fn = getattr(model.updates, slot.fn_name)
        args = [view(g, primed) for g, primed in slot.reads]
        try:
            if slot.may_draw:
                ctx = StepContext(model, iteration, resolver, slot.target, entries)
                returned = fn(*args, ctx)
            else:
                returned = fn(*args)
        except ModelError:
            raise
        except Exception as exc:
            raise ModelError(f"update for {slot.target.value} raised {exc!r} "
                             f"at iteration {iteration}") from exc
        if returned is None:
            raise ModelError(f"update for {slot.target.value} returned None "
                             "(return a mapping, possibly empty)")
        merged = _group_values(model, state.valuation, slot.target)
        group_names = set(merged)
        for var_name, value in returned.items():
            if var_name not in group_names:
                raise ModelError(
                    f"update for {slot.target.value} assigned unknown "
                    f"variable '{var_name}'")
            var = model.var(slot.target, var_name)
            if not var.domain.contains(value):
                raise ModelError(
                    f"update produced {value!r} for {var.var_id}, outside its "
                    f"domain, at iteration {iteration}")
            merged[var_name] = value
        new_groups[slot.target] = merged

    valuation: dict[VarId, Value] = {}
    for group, values in new_groups.items():
        for var_name, value in values.items():
            valuation[VarId(var_name, group)] = value
    new_state = ModelState(valuation, iteration)
    violated = _eval_assertions(model, new_state)
    return StepResult(new_state, tuple(entries), violated)


class _ScriptResolver:
    """Resolver that replays a prefix of branch indices and extends it with
    first-value decisions, recording every decision's domain size."""

    def __init__(self, prefix: Sequence[int]):
        self.indices: list[int] = list(prefix)
        self.sizes: list[int] = []
        self._pos = 0

    def __call__(self, cp: ChoicePoint, iteration: int) -> Value:
        if self._pos == len(self.indices):
            self.indices.append(0)
        idx = self.indices[self._pos]
        if idx >= len(cp.domain):
            raise ModelError(
                f"internal search error: index {idx} for '{cp.point_id}'")
        self.sizes.append(len(cp.domain))
        self._pos += 1
        return cp.domain[idx]


@dataclass(frozen=True)
class _PathOutcome:
    indices: tuple[int, ...]
    sizes: tuple[int, ...]
    trace: Trace
    log: ChoiceLog
    violated: tuple[str, ...]


def _run_path(model: Model, bound: int, prefix: Sequence[int]) -> _PathOutcome:
    resolver = _ScriptResolver(prefix)
    state, entries = resolve_initial(model, resolver)
    snapshots = [state]
    log = list(entries)
    violated = _eval_assertions(model, state)
    while not violated and state.iteration < bound:
        result = step(model, state, resolver)
        state = result.state
        snapshots.append(state)
        log.extend(result.drawn)
        violated = result.violated
    return _PathOutcome(tuple(resolver.indices), tuple(resolver.sizes),
                        tuple(snapshots), tuple(log), violated)


def explore(model: Model, bound: int,
            *, path_ceiling: int = DEFAULT_PATH_CEILING) -> Verdict:
    """Exhaustively explore every choice resolution up to `bound` iterations.

    Traversal is depth-first in declared domain order, so the counterexample
    returned for an unsafe model is the lexicographically first violating
    path under the declared ordering.  A path ends at the first iteration
    whose assertions fail, or at the bound.  Structural errors and a path
    count beyond `path_ceiling` yield a ModelError verdict.

    Monotone in the bound: a model unsafe at bound b stays unsafe at every
    larger bound, since the violating path still exists there.  The reported
    witness may differ, because a deeper tree can reach a violation under a
    lexicographically earlier prefix.
    """
    if bound < 1:
        raise ModelError(f"bound must be at least 1, got {bound}")
    if path_ceiling < 1:
        raise ModelError("path ceiling must be at least 1")

    first_path: tuple[Trace, ChoiceLog] | None = None
    prefix: list[int] = []
    paths = 0
    while True:
        if paths >= path_ceiling:
            return Verdict(VerdictKind.ModelError, bound, paths_explored=paths,
                           message="choice explosion: path ceiling "
                                   f"{path_ceiling} exceeded")
        try:
            outcome = _run_path(model, bound, prefix)
        except ModelError as exc:
            return Verdict(VerdictKind.ModelError, bound, paths_explored=paths + 1,
                           message=str(exc))
        paths += 1
        if outcome.violated:
            return Verdict(VerdictKind.Unsafe, bound, paths_explored=paths,
                           trace=outcome.trace, choice_log=outcome.log,
                           failed_assertion=outcome.violated[0])
        if first_path is None:
            first_path = (outcome.trace, outcome.log)

        # advance the deepest decision that still has untried values
        i = len(outcome.indices) - 1
        while i >= 0 and outcome.indices[i] + 1 >= outcome.sizes[i]:
            i -= 1
        if i < 0:
            return Verdict(VerdictKind.Safe, bound, paths_explored=paths,
                           trace=first_path[0], choice_log=first_path[1])
        prefix = list(outcome.indices[:i]) + [outcome.indices[i] + 1]


def probed_model(model: Model, var) -> Model:
    """Return a copy of the model with one variable's initialisation promoted
    to a choice over its full domain.

    Accepts a VarId, a (Group, name) pair, or a bare name when unambiguous.
    The probe draw appears in choice logs at iteration 0 under the id
    ``probe:<name>``.  The original model is not modified.  Counterexamples
    found on the probed model replay against the probed model, not the
    original, since only the former declares the probe choice point.
    """
    if isinstance(var, str):
        matches = [v for v in model.variables if v.name == var]
        if not matches:
            raise ModelError(f"unknown variable '{var}'")
        if len(matches) > 1:
            groups = ", ".join(v.group.value for v in matches)
            raise ModelError(f"variable name '{var}' is ambiguous ({groups})")
        target = matches[0]
    else:
        vid = _normalize_key(var, model.variables)
        target = model.var(vid.group, vid.name)

    cp = ChoicePoint(f"probe:{target.name}", target.domain.values(), site=None)
    return replace(model,
                   init_choices=((target.var_id, cp),) + model.init_choices,
                   choices={**model.choices, cp.point_id: cp})


def probe_variable(model: Model, var, bound: int,
                   *, path_ceiling: int = DEFAULT_PATH_CEILING) -> Verdict:
    """Explore with one variable's initialisation swept over its full domain.

    Shorthand for ``explore(probed_model(model, var), bound)``; an unsafe
    verdict's log reports which initial value broke the property.
    """
    return explore(probed_model(model, var), bound, path_ceiling=path_ceiling)


def replay_counterexample(model: Model, verdict: Verdict) -> Trace:
    """Re-execute an Unsafe verdict's choice log through `step` and check that
    it reproduces the trace exactly, including the final violation.

    Returns the replayed trace; raises ModelError on any mismatch.  This is
    the closure guarantee for counterexamples: trace plus log suffice to
    reproduce the violation with no exploration machinery involved.
    """
    if verdict.kind is not VerdictKind.Unsafe:
        raise ModelError("only Unsafe verdicts carry a counterexample")
    if not verdict.trace or verdict.choice_log is None:
        raise ModelError("verdict has no trace to replay")

    init_entries = [e for e in verdict.choice_log if e.iteration == 0]
    resolver = log_resolver(init_entries)
    state, _ = resolve_initial(model, resolver)
    if state != verdict.trace[0]:
        raise ModelError("replay mismatch at the initial state")

    later = [e for e in verdict.choice_log if e.iteration > 0]
    resolver = log_resolver(later)
    replayed = [state]
    violated: tuple[str, ...] = _eval_assertions(model, state)
    for expected in verdict.trace[1:]:
        result = step(model, state, resolver)
        state = result.state
        if state != expected:
            raise ModelError(f"replay mismatch at iteration {state.iteration}")
        replayed.append(state)
        violated = result.violated
    if verdict.failed_assertion not in violated:
        raise ModelError(
            f"replay did not reproduce the violation of "
            f"'{verdict.failed_assertion}'")
    return tuple(replayed)
