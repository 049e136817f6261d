"""Presentations and relation suites for two-bridge links with an axis.

``L(k, p/q) u C`` is the two-bridge link with ``k`` half-twists followed by a
``p/q`` tangle, together with an unknotted axis ``C``. Its involutory quandle
is generated by three arcs ``a, b, c``. Relations are written in the usual
exponent notation and run through the parser, so the text below reads like
the formulas it encodes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import gcd
from typing import Union

from .model import Presentation, Relation, SecondaryRelation
from .parser import PdCode, parse_expression, parse_identity, parse_relation, word_of

GENS = ("a", "b", "c")


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyParams:
    k: int
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ParameterError(f"q must be at least 2, got {self.q}")
        if not 0 < self.p < self.q:
            raise ParameterError(f"p must satisfy 0 < p < q, got p={self.p}, q={self.q}")
        if gcd(self.p, self.q) != 1:
            raise ParameterError(f"gcd(p, q) must be 1, got gcd({self.p}, {self.q})")

    @property
    def d(self) -> int:
        """``kq - p``; never zero for normalized parameters."""
        return self.k * self.q - self.p

    @property
    def t(self) -> int:
        # k/2 for even k, (k-1)/2 for odd k
        return self.k // 2

    def __str__(self) -> str:
        return f"L({self.k},{self.p}/{self.q})uC"


def normalize_params(k: int, p: int, q: int) -> FamilyParams:
    """Flype ``p`` into ``(0, q)``; each shift of ``p`` by ``q`` shifts ``k`` by one."""
    if q < 2:
        raise ParameterError(f"q must be at least 2, got {q}")
    p2 = p % q
    if p2 == 0:
        raise ParameterError("p is divisible by q: the tangle is trivial (p = 0 case)")
    if gcd(p2, q) != 1:
        raise ParameterError(f"gcd(p, q) = {gcd(p2, q)}: the tangle has extra components")
    fp = FamilyParams(k + (p - p2) // q, p2, q)
    if fp.k == 0:
        warnings.warn(f"{fp}: k = 0 after normalization", stacklevel=2)
    return fp


def mirror_params(fp: FamilyParams) -> FamilyParams:
    """Parameters of the mirror image: ``(1 - k, q - p, q)``."""
    return FamilyParams(1 - fp.k, fp.q - fp.p, fp.q)


# -- the p/q tangle ----------------------------------------------------------

# Arcs a strand of the tangle passes beneath, or starts/ends on.
A, B, BOTTOM, TOP = "A", "B", "BOTTOM", "TOP"


@dataclass(frozen=True)
class Strand:
    start: str
    under: tuple[str, ...]
    end: str


@dataclass(frozen=True)
class TangleWalk:
    """The two strands through the ``p/q`` tangle.

    ``first`` starts on arc ``a`` and ``second`` on ``b`` (or on the bottom
    arc when ``q`` is even). Each strand alternates between passing under
    ``a`` and under the bottom or top arc; factors are grouped, which is
    harmless because ``bottom a`` and ``top a`` commute in exponents.
    """

    p: int
    q: int
    first: Strand
    second: Strand

    def counts(self) -> dict[str, int]:
        out = {A: 0, BOTTOM: 0, TOP: 0}
        for s in (self.first, self.second):
            for x in s.under:
                out[x] += 1
        return out


def tangle_grid_walk(p: int, q: int) -> TangleWalk:
    """Under-crossing sequences of both strands through the ``p/q`` tangle.

    Over both strands there are ``q - 1`` passes under ``a``, ``p`` under the
    bottom arc and ``q - 1 - p`` under the top arc.
    """
    if not 0 < p < q or gcd(p, q) != 1:
        raise ParameterError(f"need 0 < p < q with gcd 1, got {p}/{q}")

    def pairs(x: str, m: int, a_first: bool = False) -> tuple[str, ...]:
        return ((A, x) if a_first else (x, A)) * m

    if q % 2 == 1 and p % 2 == 1:
        first = Strand(A, pairs(BOTTOM, (p - 1) // 2) + pairs(TOP, (q - p) // 2), BOTTOM)
        second = Strand(B, pairs(BOTTOM, (p + 1) // 2) + pairs(TOP, (q - p - 2) // 2), TOP)
    elif q % 2 == 1:
        first = Strand(A, pairs(BOTTOM, p // 2) + pairs(TOP, (q - p - 1) // 2), TOP)
        second = Strand(B, pairs(BOTTOM, p // 2) + pairs(TOP, (q - p - 1) // 2), BOTTOM)
    else:
        m1, m2 = (p - 1) // 2, (q - p - 1) // 2
        first = Strand(A, pairs(BOTTOM, m1) + pairs(TOP, m2) + (BOTTOM,), B)
        second = Strand(
            BOTTOM, pairs(BOTTOM, m1, a_first=True) + pairs(TOP, m2, a_first=True) + (A,), TOP
        )
    return TangleWalk(p, q, first, second)


# -- presentations -------------------------------------------------------------

def _pow(word: str, m: int) -> str:
    return f"({word})^{m}" if m >= 0 else f"({word})^({m})"


def _rel(text: str) -> Relation:
    return parse_relation(text, GENS)


def _ident(text: str) -> SecondaryRelation:
    return parse_identity(text, GENS)


def twist_labels(fp: FamilyParams) -> tuple[str, str]:
    """Element text for ``X = (ba)^t c`` and ``Y = (ba)^(t+1) c``."""
    return f"{_pow('b a', fp.t)} c", f"{_pow('b a', fp.t + 1)} c"


def arc_labels(fp: FamilyParams) -> dict[str, str]:
    """Element text of the arcs bordering the tangle.

    For odd ``k`` the bottom arc is ``a^X`` and the top ``b^Y``; for even
    ``k`` they are ``b^X`` and ``a^X``.
    """
    x, y = twist_labels(fp)
    if fp.k % 2:
        bottom, top = f"a^({x})", f"b^({y})"
    else:
        bottom, top = f"b^({x})", f"a^({x})"
    return {A: "a", B: "b", BOTTOM: bottom, TOP: top}


def strand_relation(strand: Strand, labels: dict[str, str]) -> str:
    start = labels[strand.start]
    if len(start) > 1:
        start = f"({start})"
    exponent = " ".join(f"({labels[x]})" for x in strand.under)
    lhs = f"{start}^({exponent})" if exponent else start
    return f"{lhs} = {labels[strand.end]}"


def raw_relation_texts(fp: FamilyParams) -> list[str]:
    walk = tangle_grid_walk(fp.p, fp.q)
    labels = arc_labels(fp)
    return [
        "c^(a b) = c",
        strand_relation(walk.first, labels),
        strand_relation(walk.second, labels),
    ]


def raw_presentation(fp: FamilyParams) -> Presentation:
    """R1 plus the two tangle relations, before eliminating ``X`` and ``Y``."""
    return Presentation(GENS, tuple(_rel(t) for t in raw_relation_texts(fp)))


def reduced_relation_texts(fp: FamilyParams) -> list[str]:
    q, d = fp.q, fp.d
    if d % 2:
        m = (d - 1) // 2
        return [
            "c^(a b) = c",
            f"a^({_pow('c a', q)}) = b^({_pow('a b', m)})",
            f"a^({_pow('a c', q)}) = b^({_pow('a b', m)})",
        ]
    m = d // 2
    return [
        "c^(a b) = c",
        f"a^({_pow('c a', q)}) = a^({_pow('b a', m)})",
        f"b^({_pow('b c', q)}) = b^({_pow('a b', m)})",
    ]


def reduced_presentation(fp: FamilyParams) -> Presentation:
    """Three-relation presentation depending only on the parity of ``kq - p``."""
    return Presentation(GENS, tuple(_rel(t) for t in reduced_relation_texts(fp)))


# -- expected invariants -----------------------------------------------------------

def expected_cardinality(fp: FamilyParams) -> int:
    return 2 * fp.q * (abs(fp.d) + 1)


def expected_components(fp: FamilyParams) -> list[int]:
    """Component orders as tabulated by ``q`` parity, sorted ascending."""
    q, d = fp.q, abs(fp.d)
    if q % 2:
        return sorted([2 * q * d, 2 * q])
    return sorted([q * d, q * d, 2 * q])


def components_by_d_parity(fp: FamilyParams) -> list[int]:
    """Component orders split by the parity of ``kq - p`` (two components when odd)."""
    q, d = fp.q, abs(fp.d)
    if d % 2:
        return sorted([2 * q * d, 2 * q])
    return sorted([q * d, q * d, 2 * q])


# -- relation suites -----------------------------------------------------------

SuiteItem = Union[Relation, SecondaryRelation]


def r1_identities() -> list[tuple[str, SecondaryRelation]]:
    """Consequences of ``c^a = c^b`` that hold at every element."""
    out = [
        ("r1.1", _ident("a c a = b c b")),
        ("r1.2a", _ident("c a b = a b c")),
        ("r1.2b", _ident("c b a = b a c")),
    ]
    for w in ("c a", "a c", "c b", "b c"):
        tag = w.replace(" ", "")
        out.append((f"r1.3[{tag}]ab", _ident(f"{w} a b = b a {w}")))
        out.append((f"r1.3[{tag}]ba", _ident(f"{w} b a = a b {w}")))
        out.append((f"r1.4[{tag}]ab", _ident(f"{w} {w} a b = a b {w} {w}")))
        out.append((f"r1.4[{tag}]ba", _ident(f"{w} {w} b a = b a {w} {w}")))
    return out


def bYaX_identities(fp: FamilyParams) -> list[tuple[str, SecondaryRelation]]:
    x, y = twist_labels(fp)
    ax, bx, by = f"(a^({x}))", f"(b^({x}))", f"(b^({y}))"
    return [
        ("bYaX.Y", _ident(f"{by} a {ax} = {ax} a {by}")),
        ("bYaX.X", _ident(f"{bx} a {ax} = {ax} a {bx}")),
    ]


def secondary_identities(fp: FamilyParams) -> list[tuple[str, SecondaryRelation]]:
    """The secondary relations of R1-R3 in the closed forms worked out by hand."""
    q, d = fp.q, fp.d
    out: list[tuple[str, SecondaryRelation]] = [
        ("SR1", SecondaryRelation(word_of(parse_expression("b a c a b c", GENS)))),
    ]
    if d % 2:
        out += [
            ("SR2", _ident(f"{_pow('a c', 2 * q)} = {_pow('b a', d)}")),
            ("SR3", _ident(f"{_pow('c a', 2 * q)} = {_pow('b a', d)}")),
        ]
    else:
        out += [
            ("SR2", _ident(f"{_pow('a c', 2 * q)} = {_pow('a b', d)}")),
            ("SR3", _ident(f"{_pow('c b', 2 * q)} = {_pow('b a', d)}")),
        ]
    return out


def lemma_relation_suite(fp: FamilyParams) -> list[tuple[str, SuiteItem]]:
    """Named relations that must hold in the quandle of ``fp``.

    Plain relations are checked at the generators; identities at every element.
    """
    q, d = fp.q, fp.d
    n = abs(d)
    suite: list[tuple[str, SuiteItem]] = [
        ("R4", _rel(f"c^({_pow('a c', 2 * q)}) = c")),
        ("R5", _rel(f"a^({_pow('c a', 2 * q)}) = a")),
        ("R6", _rel(f"b^({_pow('c b', 2 * q)}) = b")),
    ]
    if d % 2:
        suite.append(("R7", _rel(f"a^({_pow('b a', (d - 1) // 2)}) = b^({_pow('b c', q)})")))
        for i in range(q + 1):
            for j in range((n - 1) // 2 + 1):
                ca, ba, ab = _pow("c a", i), _pow("b a", j), _pow("a b", j)
                suite.append((f"alpha[{i},{j}]", _rel(f"a^({ca} {ba} c) = a^({ca} c {ba})")))
                suite.append((
                    f"beta[{i},{j}]",
                    _rel(f"a^({ca} {ab} a b c) = a^({_pow('c a', i + 1)} {ba} b)"),
                ))
    else:
        suite.append(("R7", _rel(f"a^({_pow('b a', d // 2)}) = a^({_pow('a c', q)})")))
        suite.append(("R8", _rel(f"b^({_pow('a b', d // 2)}) = b^({_pow('b c', q)})")))
        for i in range(q + 1):
            for j in range(n // 2 + 1):
                ca, cb = _pow("c a", i), _pow("c b", i)
                ba, ab = _pow("b a", j), _pow("a b", j)
                suite += [
                    (f"alpha[{i},{j},a]", _rel(f"a^({ca} {ba} c) = a^({ca} c {ba})")),
                    (f"alpha[{i},{j},b]", _rel(f"b^({cb} {ab} c) = b^({cb} c {ab})")),
                    (f"beta[{i},{j},a]",
                     _rel(f"a^({ca} {ab} a b c) = a^({_pow('c a', i + 1)} {ba} b)")),
                    (f"beta[{i},{j},b]",
                     _rel(f"b^({cb} {ba} b a c) = b^({_pow('c b', i + 1)} {ab} a)")),
                ]
    for i in range(2 * q):
        suite.append((f"gamma[{i}]", _rel(f"c^({_pow('a c', i)} a) = c^({_pow('a c', i)} b)")))
    suite += r1_identities()
    suite += bYaX_identities(fp)
    suite += secondary_identities(fp)
    return suite


# -- PD codes ----------------------------------------------------------------------

def wirtinger_presentation(pd: PdCode) -> Presentation:
    """One generator per arc, one relation ``x_i = x_k ^ x_j`` per crossing.

    PD labels are edges; the two over-edges ``j`` and ``l`` of a crossing
    belong to the same arc, so edges are first grouped into arcs. An empty
    code is the unknot.
    """
    labels = pd.labels
    if not labels:
        return Presentation(("x1",), ())
    parent = {x: x for x in labels}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, j, _, l in pd.crossings:
        rj, rl = find(j), find(l)
        if rj != rl:
            parent[max(rj, rl)] = min(rj, rl)
    roots = sorted({find(x) for x in labels})
    index = {r: n for n, r in enumerate(roots)}
    names = tuple(f"x{r}" for r in roots)
    rels = []
    for i, j, k, _ in pd.crossings:
        # x_k ^ x_j = x_i
        rels.append(Relation(index[find(k)], (index[find(j)],), index[find(i)]))
    return Presentation(names, tuple(rels))
