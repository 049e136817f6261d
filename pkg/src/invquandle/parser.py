"""Text syntax for presentations and PD codes.

Presentation files look like::

    gens: a b c;
    rels:
      c^(a b) = c;
      a^((c a)^5) = b^((a b)^2);

Juxtaposition inside an exponent is word concatenation, ``^`` binds tighter
and is right associative (``a^b^c`` is ``a |> (b |> c)``), and a
parenthesized group may carry an integer power, negative powers meaning
the reversed word. ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .model import Presentation, Relation, SecondaryRelation, Word, element_action


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0) -> None:
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


# -- expression tree ---------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    gen: int


@dataclass(frozen=True)
class Exp:
    base: "Node"
    exponent: "Node"


@dataclass(frozen=True)
class Concat:
    items: tuple["Node", ...]


@dataclass(frozen=True)
class Power:
    node: "Node"
    count: int


Node = Union[Leaf, Exp, Concat, Power]


def word_of(node: Node) -> Word:
    """The word by which an exponent expression acts.

    Concatenation and powers build words; an ``x^y`` sub-expression is an
    element and acts through ``reverse(w) g w``.
    """
    if isinstance(node, Leaf):
        return Word((node.gen,))
    if isinstance(node, Concat):
        out: tuple[int, ...] = ()
        for item in node.items:
            out += word_of(item)
        return Word(out)
    if isinstance(node, Power):
        return word_of(node.node) ** node.count
    if isinstance(node, Exp):
        return element_action(*flatten(node))
    raise TypeError(f"not an expression node: {node!r}")


def flatten(node: Node) -> tuple[int, Word]:
    """Rewrite an element expression as ``(base, word)``."""
    if isinstance(node, Leaf):
        return node.gen, Word()
    if isinstance(node, Exp):
        base, word = flatten(node.base)
        return base, word + word_of(node.exponent)
    if isinstance(node, Concat):
        if not node.items:
            raise ValueError("empty expression")
        base, word = flatten(node.items[0])
        for item in node.items[1:]:
            word = word + word_of(item)
        return base, word
    if isinstance(node, Power):
        if node.count == 1:
            return flatten(node.node)
        raise ValueError("an integer power is a word, not an element")
    raise TypeError(f"not an expression node: {node!r}")


def flatten_equation(lhs: Node, rhs: Node) -> Relation:
    """``b1^w1 = b2^w2`` becomes ``b1^(w1 reverse(w2)) = b2``."""
    b1, w1 = flatten(lhs)
    b2, w2 = flatten(rhs)
    return Relation(b1, w1 + w2.reversed(), b2)


# -- tokenizer ---------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>\#[^\n]*)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<int>-?[0-9]+)|(?P<sym>[()^=;:,])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str, generators: tuple[str, ...] | None = None) -> None:
        self.toks = _tokenize(text)
        self.i = 0
        self.gens: dict[str, int] = {}
        if generators is not None:
            self.gens = {name: i for i, name in enumerate(generators)}

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.tok
        if tok.text != text or tok.kind == "eof":
            shown = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {shown!r}")
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind == "sym" and self.tok.text == text

    def parse_file(self) -> Presentation:
        kw = self.tok
        if kw.kind != "name" or kw.text != "gens":
            raise self.error("expected 'gens:'")
        self.i += 1
        self.expect(":")
        names = []
        while self.tok.kind == "name" and self.tok.text != "rels":
            names.append(self.tok)
            self.i += 1
        if not names:
            raise self.error("empty generator list")
        self.expect(";")
        for tok in names:
            if tok.text in self.gens:
                raise self.error(f"generator {tok.text!r} declared twice", tok)
            self.gens[tok.text] = len(self.gens)
        kw = self.tok
        if kw.kind != "name" or kw.text != "rels":
            raise self.error("expected 'rels:'")
        self.i += 1
        self.expect(":")
        rels = []
        while self.tok.kind != "eof":
            if self.at(";"):  # empty statement
                self.i += 1
                continue
            rels.append(self.parse_equation())
            self.expect(";")
        return Presentation(tuple(t.text for t in names), tuple(rels))

    def parse_equation(self) -> Relation:
        lhs = self.parse_expr()
        self.expect("=")
        rhs = self.parse_expr()
        return flatten_equation(lhs, rhs)

    def parse_expr(self) -> Node:
        items: list[Node] = []
        while self.tok.kind == "name" or self.at("("):
            items.extend(self.parse_term())
        if not items:
            shown = self.tok.text or "end of input"
            raise self.error(f"expected an expression, found {shown!r}")
        return items[0] if len(items) == 1 else Concat(tuple(items))

    def parse_term(self) -> list[Node]:
        # a name token may expand to several letters (see _leaves)
        nodes = self.parse_powered()
        if self.at("^"):
            self.i += 1
            if self._power_follows():
                raise self.error("integer powers apply only to parenthesized groups")
            exponent = self.parse_term()
            exp_node = exponent[0] if len(exponent) == 1 else Concat(tuple(exponent))
            nodes[-1] = Exp(nodes[-1], exp_node)
        return nodes

    def parse_powered(self) -> list[Node]:
        if self.at("("):
            self.expect("(")
            node = self.parse_expr()
            self.expect(")")
            while self.at("^") and self._power_follows(offset=1):
                self.i += 1
                node = Power(node, self.parse_int())
            return [node]
        if self.tok.kind != "name":
            shown = self.tok.text or "end of input"
            raise self.error(f"expected a generator or '(', found {shown!r}")
        return self._leaves(self.tok)

    def _power_follows(self, offset: int = 0) -> bool:
        t = self.toks[self.i + offset]
        if t.kind == "int":
            return True
        nxt = self.toks[self.i + offset + 1]
        after = self.toks[self.i + offset + 2]
        return t.text == "(" and nxt.kind == "int" and after.text == ")"

    def parse_int(self) -> int:
        if self.at("("):
            self.i += 1
            value = int(self.tok.text)
            self.i += 1
            self.expect(")")
            return value
        value = int(self.tok.text)
        self.i += 1
        return value

    def _leaves(self, tok: _Tok) -> list[Node]:
        self.i += 1
        if tok.text in self.gens:
            return [Leaf(self.gens[tok.text])]
        # "ab" is accepted for "a b" when every character is a declared generator
        if all(ch in self.gens for ch in tok.text):
            return [Leaf(self.gens[ch]) for ch in tok.text]
        raise self.error(f"undeclared generator {tok.text!r}", tok)


def parse_presentation(text: str) -> Presentation:
    return _Parser(text).parse_file()


def parse_expression(text: str, generators: tuple[str, ...]) -> Node:
    p = _Parser(text, generators)
    node = p.parse_expr()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return node


def parse_relation(text: str, generators: tuple[str, ...]) -> Relation:
    """Parse a single ``lhs = rhs`` equation against known generator names."""
    p = _Parser(text, generators)
    rel = p.parse_equation()
    if p.at(";"):
        p.i += 1
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return rel


def parse_identity(text: str, generators: tuple[str, ...]) -> SecondaryRelation:
    """Parse ``u = v`` meaning ``z^u = z^v`` for every element ``z``."""
    p = _Parser(text, generators)
    lhs = p.parse_expr()
    p.expect("=")
    rhs = p.parse_expr()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return SecondaryRelation(word_of(lhs) + word_of(rhs).reversed())


# -- serialization -----------------------------------------------------------

def format_word(word, generators: tuple[str, ...], sep: str = " ") -> str:
    return sep.join(generators[x] for x in word)


def compact_word(word, generators: tuple[str, ...]) -> str:
    """Word as text for exports: letters run together, '.'-separated if any name is longer."""
    sep = "" if all(len(g) == 1 for g in generators) else "."
    return sep.join(generators[x] for x in word)


def format_relation(rel: Relation, generators: tuple[str, ...]) -> str:
    lhs = generators[rel.lhs]
    if rel.word:
        lhs += f"^({format_word(rel.word, generators)})"
    return f"{lhs} = {generators[rel.rhs]}"


def serialize_presentation(p: Presentation) -> str:
    lines = [f"gens: {' '.join(p.generators)};", "rels:"]
    lines += [f"  {format_relation(r, p.generators)};" for r in p.relations]
    return "\n".join(lines) + "\n"


# -- PD codes ----------------------------------------------------------------

@dataclass(frozen=True)
class PdCode:
    crossings: tuple[tuple[int, int, int, int], ...]

    @property
    def labels(self) -> list[int]:
        return sorted({x for c in self.crossings for x in c})


_CROSSING = re.compile(r"X\s*[\[(]\s*([^\])]*)[\])]")


def parse_pd(text: str) -> PdCode:
    """Parse ``X(i,j,k,l),X(...)`` (brackets also accepted); every label must occur twice."""
    body = text.strip()
    if body.startswith("PD"):
        body = body[2:].strip()
        if body[:1] in "[(" and body[-1:] in "])":
            body = body[1:-1]
    crossings = []
    pos = 0
    for m in _CROSSING.finditer(body):
        gap = body[pos:m.start()].strip().strip(",").strip()
        if gap:
            raise ParseError(f"unexpected text {gap!r} in PD code")
        parts = [s.strip() for s in m.group(1).split(",")]
        if len(parts) != 4 or not all(re.fullmatch(r"\d+", s) for s in parts):
            raise ParseError(f"malformed crossing {m.group()!r}: need four positive integers")
        vals = tuple(int(s) for s in parts)
        if min(vals) < 1:
            raise ParseError(f"malformed crossing {m.group()!r}: labels must be positive")
        crossings.append(vals)
        pos = m.end()
    tail = body[pos:].strip().strip(",").strip()
    if tail:
        raise ParseError(f"unexpected text {tail!r} in PD code")
    counts: dict[int, int] = {}
    for c in crossings:
        for x in c:
            counts[x] = counts.get(x, 0) + 1
    bad = sorted(x for x, n in counts.items() if n != 2)
    if bad:
        raise ParseError(f"arc labels {bad} do not appear exactly twice")
    return PdCode(tuple(crossings))
