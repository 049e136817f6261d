"""JSON and Graphviz DOT renderings of Cayley tables."""

from __future__ import annotations

import json

import numpy as np

from .analysis import components
from .model import CayleyTable, Word
from .parser import compact_word

_COLORS = ("red", "blue", "darkgreen", "orange", "purple", "brown", "cyan4", "magenta")


def rep_label(t: CayleyTable, v: int) -> str:
    base, word = t.reps[v]
    name = t.generators[base]
    return f"{name}^{compact_word(word, t.generators)}" if word else name


def table_to_dict(t: CayleyTable) -> dict:
    return {
        "generators": list(t.generators),
        "size": t.size,
        "action": [[int(x) for x in row] for row in t.action],
        "reps": [
            {"base": t.generators[b], "word": compact_word(w, t.generators)} for b, w in t.reps
        ],
        "components": components(t).members(),
        "seeds": [int(s) for s in t.seeds],
    }


def table_to_json(t: CayleyTable) -> str:
    return json.dumps(table_to_dict(t), indent=1) + "\n"


def _split_word(text: str, generators: list[str]) -> Word:
    if not text:
        return Word()
    index = {g: i for i, g in enumerate(generators)}
    parts = text.split(".") if "." in text or any(len(g) > 1 for g in generators) else list(text)
    return Word(index[x] for x in parts)


def table_from_dict(data: dict) -> CayleyTable:
    gens = list(data["generators"])
    action = np.asarray(data["action"], dtype=np.int64).reshape(-1, len(gens))
    reps = [(gens.index(r["base"]), _split_word(r["word"], gens)) for r in data["reps"]]
    if "seeds" in data:
        seeds = tuple(int(s) for s in data["seeds"])
    else:
        seeds = tuple(next(v for v, (b, w) in enumerate(reps) if b == j and not w)
                      for j in range(len(gens)))
    return CayleyTable(tuple(gens), action, seeds, reps)


def table_to_dot(t: CayleyTable, name: str = "Q") -> str:
    seeds = set(t.seeds)
    lines = [f"graph {name} {{", "  node [shape=circle, fontsize=9];"]
    for v in range(t.size):
        attrs = f'label="{rep_label(t, v)}"'
        if v in seeds:
            attrs += ", width=0.6, penwidth=2.5, style=bold"
        else:
            attrs += ", width=0.25"
        lines.append(f"  {v} [{attrs}];")
    for g, gname in enumerate(t.generators):
        color = _COLORS[g % len(_COLORS)]
        for v in range(t.size):
            u = int(t.action[v, g])
            if v <= u:
                lines.append(f'  {v} -- {u} [label="{gname}", color={color}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
