"""Engine unit tests: registration checks, step semantics, exploration."""

import pytest

from hilcheck.engine import (Assertion, BoolDomain, ChoiceEntry, ChoicePoint,
                             Group, IntDomain, ModelError, SymbolicDomain,
                             UpdateFunctions, Var, VarId, VerdictKind, explore,
                             first_value_resolver, log_resolver, probe_variable,
                             register_model, replay_counterexample,
                             resolve_initial, step)


def _noop(*views_and_ctx):
    return {}


def _updates(**overrides) -> UpdateFunctions:
    fields = dict(env_input=_noop, sys_input=_noop, beh_input=_noop,
                  env_output=_noop, sys_output=_noop, beh_output=_noop,
                  env_state=_noop, sys_state=_noop, beh_state=_noop)
    fields.update(overrides)
    return UpdateFunctions(**fields)


def _counter_model(**kwargs):
    """One env-state counter incremented each iteration."""
    def env_state(ei, e, ctx):
        return {"n": e.n + 1}

    defaults = dict(
        variables=[Var("n", Group.ENV_STATE, IntDomain(0, 100))],
        updates=_updates(env_state=env_state),
        init={(Group.ENV_STATE, "n"): 0},
    )
    defaults.update(kwargs)
    return register_model(**defaults)


# --- registration validation ---------------------------------------------

def test_register_rejects_empty_variable_list():
    with pytest.raises(ModelError, match="at least one variable"):
        register_model(variables=[], updates=_updates(), init={})


def test_register_rejects_duplicate_variable():
    v = Var("x", Group.ENV_STATE, IntDomain(0, 1))
    with pytest.raises(ModelError, match="duplicate variable"):
        register_model(variables=[v, v], updates=_updates(),
                       init={(Group.ENV_STATE, "x"): 0})


def test_same_name_in_different_groups_is_fine():
    model = register_model(
        variables=[Var("x", Group.ENV_STATE, IntDomain(0, 1)),
                   Var("x", Group.BEH_STATE, IntDomain(0, 1))],
        updates=_updates(),
        init={(Group.ENV_STATE, "x"): 0, (Group.BEH_STATE, "x"): 1})
    state, _ = resolve_initial(model)
    assert state.value(Group.ENV_STATE, "x") == 0
    assert state.value(Group.BEH_STATE, "x") == 1


def test_variable_names_must_be_identifiers():
    with pytest.raises(ModelError, match="identifier"):
        Var("not a name", Group.ENV_STATE, IntDomain(0, 1))


def test_register_requires_full_initialisation():
    with pytest.raises(ModelError, match="no initial value for"):
        register_model(
            variables=[Var("x", Group.ENV_STATE, IntDomain(0, 1)),
                       Var("y", Group.ENV_STATE, IntDomain(0, 1))],
            updates=_updates(), init={(Group.ENV_STATE, "x"): 0})


def test_register_rejects_out_of_domain_init():
    with pytest.raises(ModelError, match="outside the domain"):
        _counter_model(init={(Group.ENV_STATE, "n"): 999})


def test_register_rejects_bool_for_int_domain():
    # bool is not an acceptable stand-in for an integer value
    with pytest.raises(ModelError, match="outside the domain"):
        _counter_model(init={(Group.ENV_STATE, "n"): True})


def test_register_rejects_init_for_unknown_variable():
    with pytest.raises(ModelError, match="unknown variable"):
        _counter_model(init={(Group.ENV_STATE, "n"): 0,
                             (Group.ENV_STATE, "ghost"): 0})


def test_choice_point_rejects_system_site():
    with pytest.raises(ModelError, match="deterministic"):
        ChoicePoint("bad", (0, 1), site=Group.SYS_OUTPUT)


def test_choice_point_rejects_empty_and_duplicate_domains():
    with pytest.raises(ModelError, match="empty domain"):
        ChoicePoint("p", ())
    with pytest.raises(ModelError, match="duplicate"):
        ChoicePoint("p", (1, 1))


def test_register_rejects_duplicate_choice_ids():
    cp = ChoicePoint("p", (0, 1), site=Group.ENV_INPUT)
    with pytest.raises(ModelError, match="duplicate choice point"):
        _counter_model(choices=[cp, cp])


def test_register_rejects_duplicate_assertion_ids():
    a = Assertion("a", lambda s: True)
    with pytest.raises(ModelError, match="duplicate assertion"):
        _counter_model(assertions=[a, a])


def test_init_choice_must_fit_variable_domain():
    cp = ChoicePoint("pick", (0, 999), site=None)
    with pytest.raises(ModelError, match="outside the domain"):
        _counter_model(init_choices=[((Group.ENV_STATE, "n"), cp)])


def test_init_choice_must_use_site_none():
    cp = ChoicePoint("pick", (0, 1), site=Group.ENV_INPUT)
    with pytest.raises(ModelError, match="site None"):
        _counter_model(init_choices=[((Group.ENV_STATE, "n"), cp)])


def test_register_dry_run_catches_broken_updates():
    def bad(ei, e, ctx):
        return {"nope": 1}
    with pytest.raises(ModelError, match="unknown"):
        _counter_model(updates=_updates(env_state=bad))


def test_register_dry_run_wraps_raising_update():
    def bad(ei, e, ctx):
        raise KeyError("oops")
    with pytest.raises(ModelError, match="raised"):
        _counter_model(updates=_updates(env_state=bad))


def test_assertion_exception_becomes_model_error():
    # a predicate broken on every state is caught by the registration dry run
    with pytest.raises(ModelError, match="broken"):
        _counter_model(assertions=[Assertion("broken", lambda s: 1 // 0 == 0)])

    # one that only breaks on later states surfaces when stepping there
    fragile = Assertion(
        "fragile", lambda s: 1 // (2 - s.value(Group.ENV_STATE, "n")) >= 0)
    model = _counter_model(assertions=[fragile])
    state, _ = resolve_initial(model)
    state = step(model, state, first_value_resolver).state
    with pytest.raises(ModelError, match="fragile"):
        step(model, state, first_value_resolver)   # n becomes 2


# --- step semantics -------------------------------------------------------

def test_slot_execution_order():
    order = []

    def spy(name):
        def fn(*args):
            order.append(name)
            return {}
        return fn

    updates = UpdateFunctions(
        env_input=spy("env_in"), sys_input=spy("sys_in"),
        beh_input=spy("beh_in"), env_output=spy("env_out"),
        sys_output=spy("sys_out"), beh_output=spy("beh_out"),
        env_state=spy("env_state"), sys_state=spy("sys_state"),
        beh_state=spy("beh_state"))
    model = register_model(
        variables=[Var("x", Group.ENV_STATE, IntDomain(0, 1))],
        updates=updates, init={(Group.ENV_STATE, "x"): 0})
    order.clear()
    state, _ = resolve_initial(model)
    step(model, state, first_value_resolver)
    assert order == ["env_in", "sys_in", "beh_in",
                     "env_out", "sys_out", "beh_out",
                     "env_state", "sys_state", "beh_state"]


def test_inputs_see_previous_iteration_outputs_see_current_inputs():
    """env_input reads the OLD sys_output; env_output reads the NEW env_input."""
    seen = {}

    def env_input(sys_out, env_state, ctx):
        seen["sys_out_at_input"] = sys_out.y
        return {"x": (env_state.cnt + 1) % 10}

    def env_output(env_in, env_state, ctx):
        seen["env_in_at_output"] = env_in.x
        return {}

    def env_state_fn(env_in, env_state, ctx):
        return {"cnt": (env_state.cnt + 1) % 10}

    def sys_output(sys_in, sys_state):
        return {"y": (sys_state.s + 5) % 10}

    def sys_state(sys_in, sys_state_view):
        return {"s": (sys_state_view.s + 1) % 10}

    model = register_model(
        variables=[Var("x", Group.ENV_INPUT, IntDomain(0, 9)),
                   Var("cnt", Group.ENV_STATE, IntDomain(0, 9)),
                   Var("y", Group.SYS_OUTPUT, IntDomain(0, 9)),
                   Var("s", Group.SYS_STATE, IntDomain(0, 9)),
                   Var("z", Group.ENV_OUTPUT, IntDomain(0, 9))],
        updates=_updates(env_input=env_input, env_output=env_output,
                         env_state=env_state_fn, sys_output=sys_output,
                         sys_state=sys_state),
        init={(Group.ENV_INPUT, "x"): 3, (Group.ENV_STATE, "cnt"): 3,
              (Group.SYS_OUTPUT, "y"): 7, (Group.SYS_STATE, "s"): 0,
              (Group.ENV_OUTPUT, "z"): 0})
    state, _ = resolve_initial(model)
    result = step(model, state, first_value_resolver)
    assert seen["sys_out_at_input"] == 7      # previous iteration's value
    assert seen["env_in_at_output"] == 4      # this iteration's fresh value
    assert result.state.value(Group.SYS_OUTPUT, "y") == 5  # from OLD s=0
    assert result.state.value(Group.SYS_STATE, "s") == 1

    result2 = step(model, result.state, first_value_resolver)
    assert seen["sys_out_at_input"] == 5
    assert result2.state.value(Group.SYS_OUTPUT, "y") == 6  # from s=1


def test_group_views_expose_group_and_reject_unknown_names():
    def env_state(ei, e, ctx):
        assert e.group is Group.ENV_STATE
        assert e["x"] == e.x
        with pytest.raises(ModelError, match="no variable 'ghost'"):
            e.ghost
        return {}

    model = register_model(
        variables=[Var("x", Group.ENV_STATE, IntDomain(0, 1))],
        updates=_updates(env_state=env_state),
        init={(Group.ENV_STATE, "x"): 0})
    state, _ = resolve_initial(model)
    step(model, state, first_value_resolver)


def test_omitted_variables_carry_over():
    def env_state(ei, e, ctx):
        return {"a": e.a + 1}

    model = register_model(
        variables=[Var("a", Group.ENV_STATE, IntDomain(0, 9)),
                   Var("b", Group.ENV_STATE, IntDomain(0, 9))],
        updates=_updates(env_state=env_state),
        init={(Group.ENV_STATE, "a"): 0, (Group.ENV_STATE, "b"): 4})
    state, _ = resolve_initial(model)
    result = step(model, state, first_value_resolver)
    assert result.state.value(Group.ENV_STATE, "a") == 1
    assert result.state.value(Group.ENV_STATE, "b") == 4


def test_none_return_is_a_model_error():
    def bad(ei, e, ctx):
        return None

    with pytest.raises(ModelError, match="returned None"):
        _counter_model(updates=_updates(env_state=bad))


def test_out_of_domain_update_is_a_model_error():
    def env_state(ei, e, ctx):
        return {"n": e.n + 1}

    model = register_model(
        variables=[Var("n", Group.ENV_STATE, IntDomain(0, 1))],
        updates=_updates(env_state=env_state),
        init={(Group.ENV_STATE, "n"): 0})
    state, _ = resolve_initial(model)
    result = step(model, state, first_value_resolver)
    with pytest.raises(ModelError, match="outside its"):
        step(model, result.state, first_value_resolver)


def test_iteration_counter_advances():
    model = _counter_model()
    state, _ = resolve_initial(model)
    assert state.iteration == 0
    for expected in (1, 2, 3):
        state = step(model, state, first_value_resolver).state
        assert state.iteration == expected
        assert state.value(Group.ENV_STATE, "n") == expected


def test_step_is_pure():
    model = _counter_model()
    state, _ = resolve_initial(model)
    first = step(model, state, first_value_resolver)
    second = step(model, state, first_value_resolver)
    assert first.state == second.state
    assert state.value(Group.ENV_STATE, "n") == 0  # untouched


# --- choice mechanics -----------------------------------------------------

def test_choose_validates_site_and_id():
    cp = ChoicePoint("envpick", (0, 1), site=Group.ENV_INPUT)

    def beh_output(bi, b, ctx):
        ctx.choose("envpick")   # declared for env_input, drawn from beh_output
        return {}

    with pytest.raises(ModelError, match="declared for"):
        _counter_model(updates=_updates(beh_output=beh_output), choices=[cp])

    def env_input(so, e, ctx):
        ctx.choose("nosuch")
        return {}

    with pytest.raises(ModelError, match="unknown choice point"):
        _counter_model(updates=_updates(env_input=env_input))


def test_init_choice_cannot_be_drawn_mid_step():
    cp = ChoicePoint("seed", (0, 1), site=None)

    def env_input(so, e, ctx):
        ctx.choose("seed")
        return {}

    with pytest.raises(ModelError, match="initialisation choice"):
        register_model(
            variables=[Var("x", Group.ENV_STATE, IntDomain(0, 1))],
            updates=_updates(env_input=env_input),
            init={(Group.ENV_STATE, "x"): 0},
            init_choices=[((Group.ENV_STATE, "x"), cp)])


def test_resolver_value_must_be_in_domain():
    cp = ChoicePoint("p", (0, 1), site=Group.ENV_INPUT)

    def env_input(so, e, ctx):
        return {"v": ctx.choose("p")}

    model = register_model(
        variables=[Var("v", Group.ENV_INPUT, IntDomain(0, 5))],
        updates=_updates(env_input=env_input), choices=[cp],
        init={(Group.ENV_INPUT, "v"): 0})
    state, _ = resolve_initial(model)
    with pytest.raises(ModelError, match="outside the domain"):
        step(model, state, lambda cp, it: 42)


def test_init_choices_resolve_in_declared_order_at_iteration_zero():
    cps = [((Group.ENV_STATE, "x"), ChoicePoint("first", (5, 6), site=None)),
           ((Group.ENV_STATE, "y"), ChoicePoint("second", (7,), site=None))]
    model = register_model(
        variables=[Var("x", Group.ENV_STATE, IntDomain(0, 9)),
                   Var("y", Group.ENV_STATE, IntDomain(0, 9))],
        updates=_updates(), init={(Group.ENV_STATE, "x"): 0,
                                  (Group.ENV_STATE, "y"): 0},
        init_choices=cps)
    state, log = resolve_initial(model)
    assert log == (ChoiceEntry(0, "first", 5), ChoiceEntry(0, "second", 7))
    assert state.value(Group.ENV_STATE, "x") == 5
    assert state.value(Group.ENV_STATE, "y") == 7


def test_log_resolver_replays_and_rejects_mismatches():
    cp = ChoicePoint("p", (0, 1, 2), site=Group.ENV_INPUT)

    def env_input(so, e, ctx):
        return {"v": ctx.choose("p")}

    model = register_model(
        variables=[Var("v", Group.ENV_INPUT, IntDomain(0, 5))],
        updates=_updates(env_input=env_input), choices=[cp],
        init={(Group.ENV_INPUT, "v"): 0})
    state, _ = resolve_initial(model)
    good = log_resolver([ChoiceEntry(1, "p", 2)])
    assert step(model, state, good).state.value(Group.ENV_INPUT, "v") == 2

    stale = log_resolver([ChoiceEntry(9, "p", 2)])
    with pytest.raises(ModelError, match="replay mismatch"):
        step(model, state, stale)
    empty = log_resolver([])
    with pytest.raises(ModelError, match="exhausted"):
        step(model, state, empty)
