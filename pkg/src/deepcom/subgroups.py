"""Subgroups up to conjugacy by closure-based lattice enumeration.

Subgroups are bitmasks over the element indices.  Every non-cyclic subgroup K
is <H, c> for a maximal subgroup H of K and some c outside H, so extending one
representative per conjugacy class by single elements reaches every class.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded
from .group import Group

SUBGROUP_CAP = 64


@dataclass(frozen=True)
class SubgroupClass:
    representative: tuple[int, ...]
    class_size: int
    is_abelian: bool
    is_cyclic: bool

    @property
    def order(self) -> int:
        return len(self.representative)


@dataclass(frozen=True)
class SubgroupClassReport:
    classes: tuple[SubgroupClass, ...]

    @property
    def representatives(self) -> list[tuple[int, ...]]:
        return [c.representative for c in self.classes]

    def noncyclic_abelian(self) -> list[SubgroupClass]:
        return [c for c in self.classes if c.is_abelian and not c.is_cyclic]

    def total_subgroups(self) -> int:
        return sum(c.class_size for c in self.classes)


def _elements(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _closure(rows: list[list[int]], start: list[int], gens: list[int]) -> int:
    seen = set(start)
    frontier = list(start)
    for g in frontier:
        row = rows[g]
        for s in gens:
            h = row[s]
            if h not in seen:
                seen.add(h)
                frontier.append(h)
    mask = 0
    for x in seen:
        mask |= 1 << x
    return mask


def subgroups_up_to_conjugacy(G: Group, cap: int = SUBGROUP_CAP) -> SubgroupClassReport:
    if G.order > cap:
        raise CapExceeded(f"subgroup enumeration limited to order {cap}")
    rows = G.rows
    conj = G.conjugation.tolist()
    orders = G.element_orders

    def canonical(mask: int) -> tuple[int, int]:
        elems = _elements(mask)
        images = set()
        for perm in conj:
            m = 0
            for x in elems:
                m |= 1 << perm[x]
            images.add(m)
        return min(images), len(images)

    found: dict[int, int] = {}  # canonical mask -> class size
    queue: list[tuple[int, list[int]]] = []  # a member of each class, with generators
    for z in range(G.order):
        mask = _closure(rows, [0], [z])
        key, size = canonical(mask)
        if key not in found:
            found[key] = size
            queue.append((mask, [z] if z else []))
    for mask, gens in queue:
        elems = _elements(mask)
        for c in range(G.order):
            if mask >> c & 1:
                continue
            bigger = _closure(rows, elems, gens + [c])
            key, size = canonical(bigger)
            if key not in found:
                found[key] = size
                queue.append((bigger, gens + [c]))

    comm = G.commute_matrix
    classes = []
    for key in sorted(found, key=lambda m: (bin(m).count("1"), m)):
        elems = _elements(key)
        idx = np.array(elems)
        classes.append(SubgroupClass(
            representative=tuple(elems),
            class_size=found[key],
            is_abelian=bool(comm[np.ix_(idx, idx)].all()),
            is_cyclic=bool((orders[idx] == len(elems)).any()),
        ))
    return SubgroupClassReport(tuple(classes))
