"""Components, relation checks and isomorphism search on enumerated quandles."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from .model import (
    CayleyTable,
    Relation,
    SecondaryRelation,
    VerificationReport,
    apply_word,
    right_multiplications,
)


@dataclass
class ComponentReport:
    count: int
    sizes: list[int]
    membership: list[int]

    def members(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for v, c in enumerate(self.membership):
            out[c].append(v)
        return out


def components(t: CayleyTable) -> ComponentReport:
    """Orbits under the generator actions, numbered by smallest element.

    ``sizes`` is sorted ascending, so it can be compared as a multiset.
    """
    n = t.size
    membership = [-1] * n
    counts: list[int] = []
    for s in range(n):
        if membership[s] >= 0:
            continue
        cid = len(counts)
        membership[s] = cid
        stack = [s]
        size = 0
        while stack:
            v = stack.pop()
            size += 1
            for u in t.action[v]:
                u = int(u)
                if membership[u] < 0:
                    membership[u] = cid
                    stack.append(u)
        counts.append(size)
    return ComponentReport(len(counts), sorted(counts), membership)


def verify_relations(
    t: CayleyTable, suite: Iterable[Union[Relation, SecondaryRelation, tuple]]
) -> VerificationReport:
    """Check relations at their seeds and identities at every element.

    Suite items may be bare relations or ``(name, relation)`` pairs.
    """
    report = VerificationReport()
    idx = np.arange(t.size)
    for n, item in enumerate(suite):
        name, rel = item if isinstance(item, tuple) else (f"#{n}", item)
        if isinstance(rel, Relation):
            got = apply_word(t, t.seeds[rel.lhs], rel.word)
            ok = got == t.seeds[rel.rhs]
            report.add(name, ok, None if ok else (t.seeds[rel.lhs], got, t.seeds[rel.rhs]))
        else:
            img = idx
            for x in rel.word:
                img = t.action[img, x]
            bad = np.nonzero(img != idx)[0]
            report.add(name, bad.size == 0, None if bad.size == 0 else (int(bad[0]), int(img[bad[0]])))
    return report


@dataclass
class Isomorphic:
    generator_images: tuple[int, ...]
    full_map: list[int]


@dataclass
class NotIsomorphic:
    reason: str


IsoResult = Union[Isomorphic, NotIsomorphic]


def fixed_point_counts(t: CayleyTable) -> list[int]:
    """Per generator, how many elements it fixes."""
    idx = np.arange(t.size)
    return [int((t.action[:, j] == idx).sum()) for j in range(t.num_generators)]


def _signatures(cols: np.ndarray, comp: ComponentReport) -> list[tuple[int, int]]:
    """Per element ``y``: (size of its component, number of fixed points of ``x -> x |> y``)."""
    n = cols.shape[0]
    sizes = Counter(comp.membership)
    fixed = (cols == np.arange(n)[:, None]).sum(axis=0)
    return [(sizes[comp.membership[y]], int(fixed[y])) for y in range(n)]


def _extend(s: CayleyTable, t_cols: np.ndarray, images: tuple[int, ...]) -> list[int] | None:
    """The unique map sending seeds to ``images`` and intertwining the actions, if any."""
    n = s.size
    phi = [-1] * n
    used = [False] * n
    perms = [t_cols[:, y] for y in images]
    queue = []
    for j, y in enumerate(images):
        v = s.seeds[j]
        if phi[v] < 0:
            if used[y]:
                return None
            phi[v] = y
            used[y] = True
            queue.append(v)
        elif phi[v] != y:
            return None
    action = s.action
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        pv = phi[v]
        row = action[v]
        for g, perm in enumerate(perms):
            u = int(row[g])
            target = int(perm[pv])
            if phi[u] < 0:
                if used[target]:
                    return None
                phi[u] = target
                used[target] = True
                queue.append(u)
            elif phi[u] != target:
                return None
    if len(queue) != n:
        return None
    return phi


def is_isomorphic(s: CayleyTable, t: CayleyTable) -> IsoResult:
    """Search for a quandle isomorphism from ``s`` onto ``t``.

    A map is fixed by where the generators of ``s`` go. Inner automorphisms
    of ``t`` act transitively on each of its components, so the image of the
    first generator may be fixed to one representative per admissible
    component; the other images range over all elements of ``t`` whose
    component size and fixed-point count match. Candidates are tried in
    lexicographic order and the first hit is returned.
    """
    if s.size != t.size:
        return NotIsomorphic(f"sizes differ: {s.size} vs {t.size}")
    cs, ct = components(s), components(t)
    if cs.sizes != ct.sizes:
        return NotIsomorphic(f"component sizes differ: {cs.sizes} vs {ct.sizes}")
    s_cols = right_multiplications(s)
    t_cols = right_multiplications(t)
    s_sig = _signatures(s_cols, cs)
    t_sig = _signatures(t_cols, ct)
    if sorted(s_sig) != sorted(t_sig):
        return NotIsomorphic("fixed-point profiles differ")

    by_sig: dict[tuple[int, int], list[int]] = {}
    for y, sig in enumerate(t_sig):
        by_sig.setdefault(sig, []).append(y)
    candidates = [by_sig.get(s_sig[v], []) for v in s.seeds]
    # one representative per component for the first generator
    firsts = []
    seen_comp = set()
    for y in candidates[0]:
        c = ct.membership[y]
        if c not in seen_comp:
            seen_comp.add(c)
            firsts.append(y)
    candidates[0] = firsts

    def search(prefix: tuple[int, ...]) -> list[int] | None:
        j = len(prefix)
        if j == len(candidates):
            return _extend(s, t_cols, prefix)
        for y in candidates[j]:
            # generators that coincide in s must coincide in t
            if any(s.seeds[i] == s.seeds[j] and prefix[i] != y for i in range(j)):
                continue
            if any(s.seeds[i] != s.seeds[j] and prefix[i] == y for i in range(j)):
                continue
            found = search(prefix + (y,))
            if found is not None:
                return found
        return None

    phi = search(())
    if phi is None:
        return NotIsomorphic("no generator assignment extends to an isomorphism")
    images = tuple(phi[v] for v in s.seeds)
    # phi intertwines each generator action, hence every right multiplication
    phi_arr = np.asarray(phi)
    if not (t_cols[phi_arr[:, None], phi_arr[None, :]] == phi_arr[s_cols]).all():
        raise AssertionError("extension is not a quandle homomorphism")
    return Isomorphic(images, phi)


@dataclass
class StructureSummary:
    size: int
    component_sizes: list[int]
    fixed_points: list[int]
    seed_components: list[int] = field(default_factory=list)


def structure_summary(t: CayleyTable) -> StructureSummary:
    comp = components(t)
    return StructureSummary(
        size=t.size,
        component_sizes=comp.sizes,
        fixed_points=fixed_point_counts(t),
        seed_components=[comp.membership[s] for s in t.seeds],
    )
