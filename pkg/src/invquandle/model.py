"""Words, relations, presentations and enumerated quandle tables.

Everything here lives in the involutory setting: every generator acts as an
involution, so a word never needs inverse letters and the inverse of a word
is its reversal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


def normalize_word(letters: Iterable[int]) -> tuple[int, ...]:
    """Cancel adjacent equal letters until none remain."""
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


class Word(tuple):
    """A normalized word of generator indices, acting on the right.

    Construction cancels adjacent duplicates, so ``Word((0, 1, 1, 0)) == ()``.
    Concatenation with ``+`` and integer powers stay normalized; a negative
    power is the positive power of the reversal.
    """

    __slots__ = ()

    def __new__(cls, letters: Iterable[int] = ()) -> "Word":
        return super().__new__(cls, normalize_word(letters))

    def __add__(self, other: Iterable[int]) -> "Word":  # type: ignore[override]
        return Word(tuple.__add__(self, tuple(other)))

    def __radd__(self, other: Iterable[int]) -> "Word":
        return Word(tuple(other) + tuple(self))

    def __pow__(self, m: int) -> "Word":
        base = self if m >= 0 else self.reversed()
        return Word(tuple(base) * abs(m))

    def __mul__(self, m: int) -> "Word":  # type: ignore[override]
        return self ** m

    def reversed(self) -> "Word":
        return Word(self[::-1])

    def __repr__(self) -> str:
        return f"Word({tuple(self)!r})"


def element_action(base: int, word: Sequence[int]) -> Word:
    """Word by which the element ``base^word`` acts: reverse(word) base word."""
    w = tuple(word)
    return Word(w[::-1] + (base,) + w)


@dataclass(frozen=True)
class Relation:
    """``g[lhs] ^ word = g[rhs]``, with ``word`` normalized."""

    lhs: int
    word: Word
    rhs: int

    def __post_init__(self) -> None:
        if not isinstance(self.word, Word):
            object.__setattr__(self, "word", Word(self.word))


@dataclass(frozen=True)
class SecondaryRelation:
    """Asserts ``y ^ word = y`` for every element ``y``."""

    word: Word

    def __post_init__(self) -> None:
        if not isinstance(self.word, Word):
            object.__setattr__(self, "word", Word(self.word))


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[Relation, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))
        if not self.generators:
            raise ValueError("presentation needs at least one generator")
        if len(set(self.generators)) != len(self.generators):
            raise ValueError(f"duplicate generator names in {self.generators}")
        g = len(self.generators)
        for r in self.relations:
            for x in (r.lhs, r.rhs, *r.word):
                if not 0 <= x < g:
                    raise ValueError(f"relation {r} uses undeclared generator {x}")

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        return self.generators.index(name)


@dataclass
class CayleyTable:
    """An enumerated involutory quandle.

    ``action[v, j]`` is ``v ^ g_j``; ``seeds[j]`` is the element of generator
    ``j``; ``reps[v] = (base, word)`` with ``v == seeds[base] ^ word``.
    """

    generators: tuple[str, ...]
    action: np.ndarray
    seeds: tuple[int, ...]
    reps: list[tuple[int, Word]] = field(default_factory=list)

    @property
    def size(self) -> int:
        return int(self.action.shape[0])

    @property
    def num_generators(self) -> int:
        return int(self.action.shape[1])

    def check_invariants(self) -> None:
        """Raise AssertionError if the table is not a valid involutory Cayley graph."""
        n, g = self.action.shape
        idx = np.arange(n)
        assert g == len(self.generators) == len(self.seeds)
        assert ((self.action >= 0) & (self.action < n)).all(), "undefined or out-of-range edge"
        for j in range(g):
            col = self.action[:, j]
            assert (col[col] == idx).all(), f"generator {j} does not act as an involution"
            assert col[self.seeds[j]] == self.seeds[j], f"missing loop at seed {j}"
        for v, (base, word) in enumerate(self.reps):
            assert apply_word(self, self.seeds[base], word) == v, f"bad rep for {v}"


@dataclass
class QuandleOpTable:
    """Full operation table, ``table[x, y] = x |> y``."""

    table: np.ndarray

    @property
    def size(self) -> int:
        return int(self.table.shape[0])


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: tuple | None = None
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: tuple | None = None, detail: str = "") -> None:
        self.checks.append(CheckResult(name, passed, witness, detail))

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def __len__(self) -> int:
        return len(self.checks)


def _check_element(t: CayleyTable, v: int) -> None:
    if not 0 <= v < t.size:
        raise IndexError(f"element {v} out of range for table of size {t.size}")


def apply_word(t: CayleyTable, v: int, word: Iterable[int]) -> int:
    _check_element(t, v)
    action = t.action
    g = t.num_generators
    for x in word:
        if not 0 <= x < g:
            raise IndexError(f"generator {x} out of range ({g} generators)")
        v = int(action[v, x])
    return v


def quandle_op(t: CayleyTable, x: int, y: int) -> int:
    """``x |> y``: with ``y = b^v`` this is ``x^(reverse(v) b v)``."""
    _check_element(t, x)
    _check_element(t, y)
    base, word = t.reps[y]
    return apply_word(t, x, element_action(base, word))


def right_multiplications(t: CayleyTable) -> np.ndarray:
    """Column ``y`` holds the permutation ``x -> x |> y``.

    Built by breadth-first propagation from the seeds, using
    ``x |> (y^g) = ((x^g) |> y)^g``.
    """
    n = t.size
    cols = np.full((n, n), -1, dtype=np.int64)
    done = np.zeros(n, dtype=bool)
    queue = []
    for j, s in enumerate(t.seeds):
        if not done[s]:
            cols[:, s] = t.action[:, j]
            done[s] = True
            queue.append(s)
    head = 0
    while head < len(queue):
        y = queue[head]
        head += 1
        for g in range(t.num_generators):
            u = int(t.action[y, g])
            if not done[u]:
                act = t.action[:, g]
                cols[:, u] = act[cols[act, y]]
                done[u] = True
                queue.append(u)
    if not done.all():
        raise ValueError("table is not generated by its seeds")
    return cols


def full_op_table(t: CayleyTable) -> QuandleOpTable:
    return QuandleOpTable(right_multiplications(t))


def check_axioms(q: QuandleOpTable) -> VerificationReport:
    """Exhaustive A1, involutory A2 and A3 check, reporting the first failure."""
    table = np.asarray(q.table)
    n = table.shape[0]
    idx = np.arange(n)
    report = VerificationReport()

    bad = np.nonzero(table[idx, idx] != idx)[0]
    report.add("A1", bad.size == 0, (int(bad[0]),) if bad.size else None, "x |> x = x")

    bad = np.argwhere(table[table, idx[None, :]] != idx[:, None])
    report.add(
        "A2", bad.size == 0, tuple(int(v) for v in bad[0]) if bad.size else None,
        "(x |> y) |> y = x",
    )

    witness = None
    for x in range(n):
        row = table[x]
        lhs = table[row]
        rhs = table[row[None, :], table]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            witness = (x, int(bad[0][0]), int(bad[0][1]))
            break
    report.add("A3", witness is None, witness, "(x |> y) |> z = (x |> z) |> (y |> z)")
    return report
