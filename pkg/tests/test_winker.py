from itertools import product

import numpy as np
import pytest

from invquandle import winker
from invquandle.families import FamilyParams, reduced_presentation, wirtinger_presentation
from invquandle.model import Relation, Word, apply_word
from invquandle.parser import parse_pd, parse_presentation
from invquandle.winker import (
    BudgetExceeded,
    EnumerationBudget,
    EnumerationState,
    Finite,
    enumerate_quandle,
    secondary_of,
)

from conftest import TREFOIL_PD, enum

A, B, C = 0, 1, 2


def w(text):
    return Word("abc".index(ch) for ch in text)


def test_secondary_of_r1():
    assert secondary_of(Relation(C, w("ab"), C)).word == w("bacabc")


def test_secondary_of_trivial_loop():
    assert secondary_of(Relation(A, Word(), A)).word == ()


def test_secondary_of_r3_small_case():
    sec = secondary_of(Relation(A, w("acac"), B))
    assert sec.word == w("cacacacb")


def test_secondary_of_r3_holds_pointwise(family_table):
    t = family_table(1, 1, 2)
    rel = reduced_presentation(FamilyParams(1, 1, 2)).relations[2]
    assert rel == Relation(A, w("acac"), B)
    for y in range(t.size):
        assert apply_word(t, y, w("cacacacb")) == y


def test_budget_validation():
    with pytest.raises(ValueError):
        EnumerationBudget(0, 10)
    with pytest.raises(ValueError):
        EnumerationBudget(10, 0)


# -- tracing and collapsing ------------------------------------------------------

def live_rows_consistent(state):
    for v in range(len(state.action)):
        if state.find(v) != v:
            continue
        for g, u in enumerate(state.action[v]):
            if u >= 0 and (state.find(u) != u or state.action[u][g] != v):
                return False
    return True


def test_loop_relation_adds_nothing():
    state = EnumerationState(3)
    for j in range(3):
        state.trace(j, (j,), j)
        state.collapse()
    assert state.created == 3 and state.merges == 0


def test_trace_r1_from_start_state():
    state = EnumerationState(3)
    state.trace(C, w("ab"), C)
    state.collapse()
    assert state.created == 4
    ca = state.action[C][A]
    assert ca == 3 and state.action[ca][B] == C
    assert state.reps[3] == (C, (A,))


def test_trace_is_idempotent():
    state = EnumerationState(3)
    state.trace(A, w("cacb"), B)
    state.collapse()
    before = (state.created, state.merges, [row[:] for row in state.action])
    state.trace(A, w("cacb"), B)
    state.collapse()
    assert (state.created, state.merges, state.action) == before


def test_merge_self_is_noop():
    state = EnumerationState(2)
    state.merge(1, 1)
    state.collapse()
    assert state.merges == 0 and state.live == 2


def test_collapse_propagates_through_shared_labels():
    state = EnumerationState(2)
    u = state._define(A, B)  # a^b
    v = state._define(B, A)  # b^a
    u2 = state._define(u, A)  # a^(ba)
    assert state.action[v][A] == B
    state.merge(u, v)
    state.collapse()
    # u and v both had a-edges, to u2 and to b, so those merge as well
    assert state.find(u2) == state.find(B)
    assert state.find(u) == state.find(v) == min(u, v)
    assert live_rows_consistent(state)


def trivial_models(n_gens, rels, size):
    """All involutory quandle structures on range(size) with seeds satisfying rels."""
    tables = []
    for flat in product(range(size), repeat=size * size):
        t = np.array(flat).reshape(size, size)
        idx = np.arange(size)
        if (t[idx, idx] != idx).any() or (t[t, idx[None, :]] != idx[:, None]).any():
            continue
        ok = all(
            t[t[x, y], z] == t[t[x, z], t[y, z]]
            for x in range(size) for y in range(size) for z in range(size)
        )
        if ok:
            tables.append(t)
    models = []
    for t in tables:
        for seeds in product(range(size), repeat=n_gens):
            if all(_eval(t, seeds, r) for r in rels):
                models.append((t, seeds))
    return models


def _eval(t, seeds, r):
    x = seeds[r.lhs]
    for g in r.word:
        x = t[x, seeds[g]]
    return x == seeds[r.rhs]


def test_two_generator_trivial_quandle():
    p = parse_presentation("gens: a b; rels: a^b = a; b^a = b;")
    t = enum(p)
    assert t.size == 2
    # a model with a != b exists, so the presented quandle has at least 2 elements
    models = trivial_models(2, p.relations, 2)
    assert any(seeds[0] != seeds[1] for _, seeds in models)


# -- full enumeration --------------------------------------------------------------

def test_single_generator():
    result = enumerate_quandle(parse_presentation("gens: a; rels: ;"))
    assert isinstance(result, Finite) and result.table.size == 1


def test_trefoil_from_pd():
    t = enum(wirtinger_presentation(parse_pd(TREFOIL_PD)))
    assert t.size == 3


def test_reduced_l335_has_130_elements(family_table):
    assert family_table(3, 3, 5).size == 130


def test_free_quandle_exceeds_budget():
    p = parse_presentation("gens: a b; rels: ;")
    reached = []
    for cap in (10, 20, 40, 80):
        result = enumerate_quandle(p, EnumerationBudget(max_elements=cap))
        assert isinstance(result, BudgetExceeded)
        reached.append(result.elements_reached)
    assert reached == sorted(reached) and reached[-1] > reached[0]


def test_step_budget():
    p = reduced_presentation(FamilyParams(3, 3, 5))
    result = enumerate_quandle(p, EnumerationBudget(max_steps=100))
    assert isinstance(result, BudgetExceeded) and result.steps_used > 100


@pytest.mark.parametrize("params", [(1, 1, 2), (2, 1, 3), (3, 3, 5), (-2, 3, 7), (0, 1, 3)])
def test_relations_hold_after_enumeration(params, family_table):
    p = reduced_presentation(FamilyParams(*params))
    t = family_table(*params)
    t.check_invariants()
    for r in p.relations:
        assert apply_word(t, t.seeds[r.lhs], r.word) == t.seeds[r.rhs]
        sec = secondary_of(r).word
        for y in range(t.size):
            assert apply_word(t, y, sec) == y


def test_involutions_hold_after_every_collapse(monkeypatch):
    original = EnumerationState.collapse
    checked = []

    def checking_collapse(self):
        original(self)
        assert live_rows_consistent(self)
        checked.append(1)

    monkeypatch.setattr(EnumerationState, "collapse", checking_collapse)
    enum(reduced_presentation(FamilyParams(2, 1, 3)))
    assert checked


def test_deterministic():
    p = reduced_presentation(FamilyParams(2, 3, 7))
    s, t = enum(p), enum(p)
    assert np.array_equal(s.action, t.action)
    assert s.reps == t.reps and s.seeds == t.seeds


def test_budget_monotonicity():
    p = reduced_presentation(FamilyParams(2, 1, 3))
    full = enum(p)
    cap = full.size
    while not isinstance(enumerate_quandle(p, EnumerationBudget(max_elements=cap)), Finite):
        cap += 1
    for bigger in (cap, cap + 7, 10 * cap):
        t = enumerate_quandle(p, EnumerationBudget(max_elements=bigger)).table
        assert np.array_equal(t.action, full.action) and t.reps == full.reps


def test_merged_generators_share_a_seed():
    t = enum(parse_presentation("gens: a b c; rels: a = b; c^a = c;"))
    assert t.seeds[0] == t.seeds[1]
    # c^a = c makes the two involutions commute: elements a, c and a^c
    assert t.size == 3


def test_default_budget_constants():
    assert winker.DEFAULT_MAX_ELEMENTS == 10_000
    assert winker.DEFAULT_MAX_STEPS == 10_000_000


def test_budget_below_generator_count():
    result = enumerate_quandle(parse_presentation("gens: a b c; rels: ;"), EnumerationBudget(2))
    assert isinstance(result, BudgetExceeded) and result.elements_reached == 2
