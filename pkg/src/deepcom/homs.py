"""Automorphisms and isomorphisms by backtracking over images of generators."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator

from .errors import CapExceeded
from .group import Group, center, conjugacy_classes, small_generating_set

AUTOMORPHISM_CAP = 64


def _extend(G: Group, H: Group, gens: list[int], images: list[int]) -> dict[int, int] | None:
    """Extend gens -> images along the Cayley graph of <gens>; None if inconsistent or not injective."""
    g_rows, h_rows = G.rows, H.rows
    phi = {0: 0}
    used = {0}
    frontier = [0]
    for g in frontier:
        hg = phi[g]
        for s, t in zip(gens, images):
            x, y = g_rows[g][s], h_rows[hg][t]
            if x in phi:
                if phi[x] != y:
                    return None
            else:
                if y in used:
                    return None
                phi[x] = y
                used.add(y)
                frontier.append(x)
    return phi


def _fingerprint(G: Group) -> tuple:
    orders = Counter(G.element_orders.tolist())
    classes = Counter(len(c) for c in conjugacy_classes(G))
    return G.order, sorted(orders.items()), len(center(G)), sorted(classes.items())


def iter_isomorphisms(G: Group, H: Group) -> Iterator[tuple[int, ...]]:
    """All isomorphisms G -> H as image tuples, in a fixed search order."""
    if G.order != H.order:
        return
    gens = small_generating_set(G)
    if not gens:
        yield (0,)
        return
    g_orders, h_orders = G.element_orders, H.element_orders
    candidates = [[y for y in range(H.order) if h_orders[y] == g_orders[s]] for s in gens]
    images: list[int] = []

    def search(depth: int):
        if depth == len(gens):
            phi = _extend(G, H, gens, images)
            if phi is not None and len(phi) == G.order:
                yield tuple(phi[x] for x in range(G.order))
            return
        for y in candidates[depth]:
            images.append(y)
            partial = _extend(G, H, gens[:depth + 1], images)
            if partial is not None:
                yield from search(depth + 1)
            images.pop()

    yield from search(0)


def automorphisms(G: Group, cap: int = AUTOMORPHISM_CAP) -> list[tuple[int, ...]]:
    """Every automorphism of G as a permutation tuple of element indices."""
    if G.order > cap:
        raise CapExceeded(f"automorphism search limited to order {cap}")
    return list(iter_isomorphisms(G, G))


def is_isomorphic(G: Group, H: Group, cap: int = AUTOMORPHISM_CAP) -> tuple[int, ...] | None:
    """An explicit isomorphism G -> H, or None."""
    if G.order != H.order:
        return None
    if G.order > cap:
        raise CapExceeded(f"isomorphism search limited to order {cap}")
    if _fingerprint(G) != _fingerprint(H):
        return None
    return next(iter_isomorphisms(G, H), None)
