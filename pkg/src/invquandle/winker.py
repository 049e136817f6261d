"""Winker-style enumeration of finitely presented involutory quandles.

The Cayley graph is grown by tracing relations (primary relations once, at
their seeds; secondary relations at every vertex) and collapsing coincident
edges with a union-find. Edges are stored as one involution per generator,
so ``y^(g g) = y`` holds by construction.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .model import CayleyTable, Presentation, Relation, SecondaryRelation, Word

log = logging.getLogger(__name__)

DEFAULT_MAX_ELEMENTS = 10_000
DEFAULT_MAX_STEPS = 10_000_000


@dataclass(frozen=True)
class EnumerationBudget:
    max_elements: int = DEFAULT_MAX_ELEMENTS
    max_steps: int = DEFAULT_MAX_STEPS

    def __post_init__(self) -> None:
        if self.max_elements < 1 or self.max_steps < 1:
            raise ValueError("budget limits must be positive")


@dataclass
class Finite:
    table: CayleyTable


@dataclass
class BudgetExceeded:
    elements_reached: int
    steps_used: int


EnumerationResult = Union[Finite, BudgetExceeded]


class _OutOfBudget(Exception):
    pass


def secondary_of(r: Relation) -> SecondaryRelation:
    """``g_j^w = g_k`` gives ``y^(reverse(w) g_j w g_k) = y`` for all ``y``."""
    w = tuple(r.word)
    return SecondaryRelation(Word(w[::-1] + (r.lhs,) + w + (r.rhs,)))


class EnumerationState:
    """Partial Cayley graph under construction.

    Vertices are never deleted; merged vertices point to their survivor
    through ``parent`` and keep an empty row once their edges have moved.
    """

    def __init__(self, num_generators: int, budget: EnumerationBudget | None = None) -> None:
        self.g = num_generators
        self.budget = budget or EnumerationBudget()
        self.action: list[list[int]] = []
        self.parent: list[int] = []
        self.reps: list[tuple[int, tuple[int, ...]]] = []
        self.live = 0
        self.steps = 0
        self.created = 0
        self.merges = 0
        self._pending: deque[int] = deque()
        for j in range(num_generators):
            v = self._new_vertex(j, ())
            self.action[v][j] = v  # loop at the generator: x |> x = x

    # -- bookkeeping ---------------------------------------------------------

    def _new_vertex(self, base: int, word: tuple[int, ...]) -> int:
        if self.live >= self.budget.max_elements:
            raise _OutOfBudget
        v = len(self.action)
        self.action.append([-1] * self.g)
        self.parent.append(v)
        self.reps.append((base, word))
        self.live += 1
        self.created += 1
        return v

    def _tick(self, n: int = 1) -> None:
        self.steps += n
        if self.steps > self.budget.max_steps:
            raise _OutOfBudget

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def _define(self, v: int, g: int) -> int:
        base, word = self.reps[v]
        if word and word[-1] == g:
            new_word = word[:-1]
        else:
            new_word = word + (g,)
        u = self._new_vertex(base, new_word)
        self.action[v][g] = u
        self.action[u][g] = v
        return u

    def _join(self, u: int, g: int, v: int) -> None:
        """Require the edge ``u --g-- v``."""
        au, av = self.action[u][g], self.action[v][g]
        if au < 0 and av < 0:
            self.action[u][g] = v
            self.action[v][g] = u
        elif au >= 0:
            self.merge(au, v)
        else:
            self.merge(av, u)

    # -- tracing and collapsing ----------------------------------------------

    def trace(self, start: int, word: Sequence[int], end: int) -> None:
        """Make ``start^word == end`` hold, creating vertices where the path is missing."""
        action = self.action
        n = len(word)
        f = self.find(start)
        i = 0
        while i < n:
            nxt = action[f][word[i]]
            if nxt < 0:
                break
            f = self.find(nxt)
            i += 1
        b = self.find(end)
        j = n - 1
        while j >= i:
            nxt = action[b][word[j]]
            if nxt < 0:
                break
            b = self.find(nxt)
            j -= 1
        self._tick(n + 1)
        if j < i:
            if f != b:
                self.merge(f, b)
            return
        while i < j:
            f = self._define(f, word[i])
            i += 1
        self._join(f, word[j], b)

    def merge(self, u: int, v: int) -> None:
        u, v = self.find(u), self.find(v)
        if u == v:
            return
        keep, dead = (u, v) if u < v else (v, u)
        self.parent[dead] = keep
        self.live -= 1
        self.merges += 1
        self._pending.append(dead)

    def collapse(self) -> None:
        """Move the edges of merged vertices onto survivors until quiescent."""
        action = self.action
        while self._pending:
            dead = self._pending.popleft()
            row = action[dead]
            for g in range(self.g):
                x = row[g]
                if x < 0:
                    continue
                row[g] = -1
                if x != dead and action[x][g] == dead:
                    action[x][g] = -1
                self._tick()
                self._join(self.find(dead), g, self.find(x))

    def is_closed(self, v: int) -> bool:
        return all(x >= 0 for x in self.action[v])

    def fill(self, v: int) -> None:
        """Give ``v`` an edge for every generator (the ``y^(g g) = y`` relations)."""
        for g in range(self.g):
            if self.action[v][g] < 0:
                self._define(v, g)

    # -- output ----------------------------------------------------------------

    def to_table(self, generators: tuple[str, ...]) -> CayleyTable:
        survivors = [v for v in range(len(self.action)) if self.parent[v] == v]
        index = {v: i for i, v in enumerate(survivors)}
        action = np.empty((len(survivors), self.g), dtype=np.int64)
        for i, v in enumerate(survivors):
            action[i] = [index[self.find(x)] for x in self.action[v]]
        seeds = tuple(index[self.find(j)] for j in range(self.g))
        reps = [(self.reps[v][0], Word(self.reps[v][1])) for v in survivors]
        return CayleyTable(tuple(generators), action, seeds, reps)


def _sweep(state: EnumerationState, secondaries: list[tuple[int, ...]]) -> bool:
    """One pass over all vertices; returns True if anything changed."""
    before = (state.created, state.merges)
    v = 0
    while v < len(state.action):
        if state.find(v) == v:
            state.fill(v)
            for word in secondaries:
                if state.find(v) != v:
                    break
                state.trace(v, word, v)
                state.collapse()
        v += 1
    return (state.created, state.merges) != before


def enumerate_quandle(p: Presentation, budget: EnumerationBudget | None = None) -> EnumerationResult:
    """Enumerate the involutory quandle presented by ``p``.

    Primary relations are traced in order at their seeds, collapsing after
    each. Then vertices are swept in index order, giving each its missing
    edges and tracing every secondary relation there, until a full pass
    neither creates nor merges anything.
    """
    budget = budget or EnumerationBudget()
    if p.num_generators > budget.max_elements:
        return BudgetExceeded(budget.max_elements, 0)
    state = EnumerationState(p.num_generators, budget)
    secondaries = []
    for r in p.relations:
        w = tuple(secondary_of(r).word)
        if w and w not in secondaries:
            secondaries.append(w)
    try:
        for r in p.relations:
            state.trace(r.lhs, r.word, r.rhs)
            state.collapse()
        passes = 0
        while _sweep(state, secondaries):
            passes += 1
        log.debug("closed after %d extra passes: %d elements, %d created, %d steps",
                  passes, state.live, state.created, state.steps)
    except _OutOfBudget:
        return BudgetExceeded(state.live, state.steps)
    return Finite(state.to_table(p.generators))
