from itertools import permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from invquandle.families import FamilyParams, reduced_presentation
from invquandle.model import (
    CayleyTable,
    QuandleOpTable,
    Word,
    apply_word,
    check_axioms,
    full_op_table,
    normalize_word,
    quandle_op,
)
from invquandle.parser import parse_presentation

from conftest import HOPF_PD, enum

words = st.lists(st.integers(0, 3), max_size=30)

A, B, C = 0, 1, 2


def dihedral(n):
    return np.array([[(2 * j - i) % n for j in range(n)] for i in range(n)])


def test_normalize_examples():
    assert normalize_word([A, B, B, A]) == ()
    assert normalize_word([A, B, A, B]) == (A, B, A, B)
    assert normalize_word([A, C, C, A, B]) == (B,)


@given(words)
def test_normalize_idempotent_and_shrinking(w):
    n = normalize_word(w)
    assert normalize_word(n) == n
    assert len(n) <= len(w)
    assert all(x != y for x, y in zip(n, n[1:]))


@given(words)
def test_word_times_reverse_is_empty(w):
    assert Word(w) + Word(w).reversed() == ()
    assert Word(w).reversed() == Word(reversed(Word(w)))


def test_word_powers():
    ba = Word((B, A))
    assert ba ** 2 == (B, A, B, A)
    assert ba ** -1 == (A, B)
    assert ba ** 0 == ()


def test_apply_word_basics(trefoil):
    for v in range(trefoil.size):
        assert apply_word(trefoil, v, ()) == v
        for g in range(3):
            assert apply_word(trefoil, v, (g, g)) == v
    with pytest.raises(IndexError):
        apply_word(trefoil, trefoil.size, ())
    with pytest.raises(IndexError):
        apply_word(trefoil, 0, (7,))


def test_trefoil_relations_close(trefoil):
    p = parse_presentation("gens: x y z; rels: x = y^z; y = z^x; z = x^y;")
    assert trefoil.size == 3
    for r in p.relations:
        assert apply_word(trefoil, trefoil.seeds[r.lhs], r.word) == trefoil.seeds[r.rhs]


def test_trefoil_is_dihedral(trefoil):
    table = full_op_table(trefoil).table
    target = dihedral(3)
    found = [
        perm for perm in permutations(range(3))
        if all(perm[table[x, y]] == target[perm[x], perm[y]] for x in range(3) for y in range(3))
    ]
    assert found
    # relabel by the first isomorphism: 0 |> 1 = 2 in the dihedral labels
    inv = {perm: i for i, perm in enumerate(found[0])}
    assert inv[2] == table[inv[0], inv[1]]


def test_quandle_op_axioms_pointwise(trefoil):
    for x in range(3):
        assert quandle_op(trefoil, x, x) == x
        for y in range(3):
            assert quandle_op(trefoil, quandle_op(trefoil, x, y), y) == x


def test_quandle_op_matches_action_at_seeds(family_table):
    t = family_table(2, 1, 3)
    for x in range(t.size):
        for j, s in enumerate(t.seeds):
            assert quandle_op(t, x, s) == t.action[x, j]


def test_full_op_table_matches_quandle_op(family_table):
    t = family_table(1, 1, 2)
    table = full_op_table(t).table
    for x in range(t.size):
        for y in range(t.size):
            assert table[x, y] == quandle_op(t, x, y)


def test_full_op_table_small_cases():
    one = enum(parse_presentation("gens: a; rels: ;"))
    assert full_op_table(one).table.tolist() == [[0]]
    from invquandle.families import wirtinger_presentation
    from invquandle.parser import parse_pd

    hopf = enum(wirtinger_presentation(parse_pd(HOPF_PD)))
    table = full_op_table(hopf).table
    assert table.tolist() == [[0, 0], [1, 1]]


def test_check_axioms_dihedral():
    rep = check_axioms(QuandleOpTable(dihedral(3)))
    assert rep.passed and [c.name for c in rep.checks] == ["A1", "A2", "A3"]


def test_check_axioms_reports_a2_witness():
    table = dihedral(3)
    table[0][1] = 1  # 0 |> 1 should be 2
    rep = check_axioms(QuandleOpTable(table))
    a2 = {c.name: c for c in rep.checks}["A2"]
    assert not a2.passed
    assert a2.witness == (0, 1)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_check_axioms_a3_failure(n):
    # swap two entries of one column
    table = dihedral(n)
    table[1][2], table[0][2] = table[0][2], table[1][2]
    rep = check_axioms(QuandleOpTable(table))
    assert not rep.passed


def test_table_invariants(family_table):
    t = family_table(3, 3, 5)
    t.check_invariants()
    idx = np.arange(t.size)
    for j in range(3):
        col = t.action[:, j]
        assert (col[col] == idx).all()
        assert col[t.seeds[j]] == t.seeds[j]


def test_enumerated_tables_satisfy_axioms(family_table):
    for params in [(1, 1, 2), (2, 1, 3), (0, 1, 2), (-1, 2, 3)]:
        assert check_axioms(full_op_table(family_table(*params))).passed


def test_invalid_table_detected():
    t = CayleyTable(("a",), np.array([[1], [1]]), (0,), [])
    with pytest.raises(AssertionError):
        t.check_invariants()


def test_reduced_presentation_has_three_generators():
    p = reduced_presentation(FamilyParams(3, 3, 5))
    assert p.generators == ("a", "b", "c") and len(p.relations) == 3
