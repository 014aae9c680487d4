"""Finite groups given by Cayley tables, and their basic structure.

Elements are the integers ``0..n-1`` with the identity at index 0.  Subsets of
elements (centre, derived subgroup, subgroups) are returned as sorted tuples.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Iterable, Sequence
from functools import cached_property
from math import gcd
from pathlib import Path

import numpy as np

from .abelian import AbelianInvariants, factorize
from .errors import CapExceeded, FileError, NotAGroup

ASSOCIATIVITY_CAP = 512


class Group:
    """An immutable finite group on the elements ``0..n-1``.

    Construct through :func:`group_from_table` (validating) or the family
    constructors; the initializer itself trusts its input.
    """

    def __init__(self, table, names: Sequence[str], name: str = "G"):
        table = np.ascontiguousarray(table, dtype=np.int64)
        table.setflags(write=False)
        self.table = table
        self.names = tuple(names)
        self.name = name
        inverse = np.argmin(table, axis=1)  # the column holding the identity
        inverse.setflags(write=False)
        self.inverse = inverse

    @property
    def order(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<Group {self.name} of order {self.order}>"

    @cached_property
    def _key(self) -> bytes:
        h = hashlib.sha256(self.table.tobytes())
        h.update("\0".join(self.names).encode())
        return h.digest()

    def __hash__(self) -> int:
        return hash(self._key)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Group):
            return NotImplemented
        return self._key == other._key

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def commutator(self, x: int, y: int) -> int:
        """``[x, y] = x^-1 y^-1 x y``."""
        t = self.table
        return int(t[t[self.inverse[x], self.inverse[y]], t[x, y]])

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not an element of {self.name}") from None

    @cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested Python lists, for tight pure-Python loops."""
        return self.table.tolist()

    @cached_property
    def commute_matrix(self) -> np.ndarray:
        m = self.table == self.table.T
        m.setflags(write=False)
        return m

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        power = np.arange(n)
        col = np.arange(n)
        for e in range(1, n + 1):
            hit = (power == 0) & (orders == 0)
            orders[hit] = e
            if orders.all():
                break
            power = self.table[power, col]
        orders.setflags(write=False)
        return orders

    def is_abelian(self) -> bool:
        return bool(self.commute_matrix.all())

    @cached_property
    def conjugation(self) -> np.ndarray:
        """``conjugation[g, x] = g^-1 x g``."""
        t = self.table
        left = t[self.inverse]  # left[g, x] = g^-1 x
        out = t[left, np.arange(self.order)[:, None]]
        out.setflags(write=False)
        return out


def _check_table(table: np.ndarray) -> None:
    n = table.shape[0]
    if table.shape != (n, n):
        raise NotAGroup("table is not square")
    if n == 0:
        raise NotAGroup("a group has at least one element")
    if table.min() < 0 or table.max() >= n:
        raise NotAGroup("table entry out of range")
    expect = np.arange(n)
    if not (np.sort(table, axis=1) == expect).all():
        raise NotAGroup("some row is not a permutation of the elements")
    if not (np.sort(table, axis=0) == expect[:, None]).all():
        raise NotAGroup("some column is not a permutation of the elements")


def _find_identity(table: np.ndarray) -> int:
    n = table.shape[0]
    idx = np.arange(n)
    for e in range(n):
        if (table[e] == idx).all() and (table[:, e] == idx).all():
            return e
    raise NotAGroup("no identity element")


def _check_associative(table: np.ndarray) -> None:
    n = table.shape[0]
    for i in range(n):
        lhs = table[table[i]]  # (i*j)*k over j, k
        rhs = table[i][table]  # i*(j*k)
        if not np.array_equal(lhs, rhs):
            j, k = np.argwhere(lhs != rhs)[0]
            raise NotAGroup(f"associativity fails for the triple ({i}, {j}, {k})")


def group_from_table(order: int, names: Sequence[str] | None, table, *,
                     name: str = "G", trusted: bool = False) -> Group:
    """Validate a Cayley table and wrap it as a :class:`Group`.

    If the identity sits at some index other than 0 it is moved to the front,
    other elements keeping their relative order.  Associativity is checked
    exhaustively up to ``ASSOCIATIVITY_CAP`` elements; larger tables are refused
    unless ``trusted`` is set.
    """
    if order < 1:
        raise NotAGroup("order must be positive")
    if names is None:
        names = [str(i) for i in range(order)]
    names = [str(s) for s in names]
    if len(names) != order:
        raise NotAGroup(f"expected {order} names, got {len(names)}")
    if len(set(names)) != order:
        raise NotAGroup("element names are not distinct")
    try:
        table = np.array(table, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise NotAGroup(f"malformed table: {exc}") from None
    if table.shape != (order, order):
        raise NotAGroup(f"table shape {table.shape} does not match order {order}")
    _check_table(table)
    e = _find_identity(table)
    if e != 0:
        perm = np.array([e] + [i for i in range(order) if i != e])
        relabel = np.empty(order, dtype=np.int64)
        relabel[perm] = np.arange(order)
        table = relabel[table[np.ix_(perm, perm)]]
        names = [names[i] for i in perm]
    if order > ASSOCIATIVITY_CAP and not trusted:
        raise CapExceeded(f"associativity check refused for order {order} > {ASSOCIATIVITY_CAP}")
    if order <= ASSOCIATIVITY_CAP:
        _check_associative(table)
    return Group(table, names, name)


def load_table_file(path) -> Group:
    """Load a Cayley-table JSON file ``{"name", "order", "elements", "table"}``."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise FileError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise FileError(f"{path} is not valid JSON: {exc}") from None
    try:
        order = int(data["order"])
        elements = data["elements"]
        table = data["table"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FileError(f"{path} lacks a required field: {exc}") from None
    return group_from_table(order, elements, table, name=data.get("name", path.stem))


def table_file_dict(G: Group) -> dict:
    return {"name": G.name, "order": G.order, "elements": list(G.names),
            "table": G.table.tolist()}


# ---------------------------------------------------------------------------
# structure


def center(G: Group) -> tuple[int, ...]:
    return tuple(int(i) for i in np.flatnonzero(G.commute_matrix.all(axis=1)))


def element_order(G: Group, x: int) -> int:
    if not 0 <= x < G.order:
        raise IndexError(f"element {x} out of range")
    return int(G.element_orders[x])


def subgroup_generated(G: Group, S: Iterable[int]) -> tuple[int, ...]:
    """The smallest subgroup containing ``S`` (closure under right multiplication)."""
    gens = []
    for s in S:
        s = int(s)
        if not 0 <= s < G.order:
            raise IndexError(f"element {s} out of range")
        if s != 0:
            gens.append(s)
    rows = G.rows
    seen = {0}
    frontier = [0]
    for g in frontier:
        row = rows[g]
        for s in gens:
            h = row[s]
            if h not in seen:
                seen.add(h)
                frontier.append(h)
    return tuple(sorted(seen))


def derived_subgroup(G: Group) -> tuple[int, ...]:
    t, inv = G.table, G.inverse
    comms = t[t[inv[:, None], inv[None, :]], t]
    return subgroup_generated(G, np.unique(comms))


def conjugacy_classes(G: Group) -> list[tuple[int, ...]]:
    """Conjugacy classes, each sorted, listed by smallest element."""
    conj = G.conjugation
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for x in range(G.order):
        if seen[x]:
            continue
        cls = np.unique(conj[:, x])
        seen[cls] = True
        classes.append(tuple(int(c) for c in cls))
    return classes


def is_normal(G: Group, N: Iterable[int]) -> bool:
    N = np.array(sorted(set(N)))
    mask = np.zeros(G.order, dtype=bool)
    mask[N] = True
    return bool(mask[G.conjugation[:, N]].all())


def quotient_group(G: Group, N: Iterable[int], name: str | None = None) -> tuple[Group, np.ndarray]:
    """``G/N`` for a normal subgroup ``N``, with the coset map ``G -> G/N``.

    Cosets are numbered by their smallest element, so the trivial coset is 0,
    and each coset is named after that smallest element.
    """
    N = sorted(set(int(x) for x in N))
    if 0 not in N or not is_normal(G, N):
        raise ValueError("quotient requires a normal subgroup")
    t = G.table
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    Narr = np.array(N)
    for g in range(G.order):
        if coset_of[g] < 0:
            coset_of[t[g, Narr]] = len(reps)
            reps.append(g)
    reps = np.array(reps)
    qtable = coset_of[t[np.ix_(reps, reps)]]
    qnames = [G.names[r] for r in reps]
    Q = Group(qtable, qnames, name or f"{G.name}/N")
    return Q, coset_of


def abelian_invariants(G: Group) -> AbelianInvariants:
    """Invariant factors of an abelian group, read off from element-order counts.

    For each prime p the number of cyclic p-factors of order at least p^i is
    log_p |Omega_i| - log_p |Omega_{i-1}|, with Omega_i the elements killed by p^i.
    """
    if not G.is_abelian():
        raise ValueError(f"{G.name} is not abelian")
    orders = G.element_orders
    powers = []
    for p, a in factorize(G.order).items():
        omega = [1]
        for i in range(1, a + 1):
            omega.append(int(np.count_nonzero((p ** i) % orders == 0)))
        at_least = []
        for i in range(1, a + 1):
            ratio = omega[i] // omega[i - 1]
            at_least.append(round(np.log(ratio) / np.log(p)) if ratio > 1 else 0)
        at_least.append(0)
        for i in range(1, a + 1):
            powers += [p ** i] * (at_least[i - 1] - at_least[i])
    return AbelianInvariants.from_prime_powers(powers)


def abelianization(G: Group) -> AbelianInvariants:
    Q, _ = quotient_group(G, derived_subgroup(G))
    return abelian_invariants(Q)


def small_generating_set(G: Group) -> list[int]:
    """A greedy generating set, preferring elements of large order."""
    orders = G.element_orders
    candidates = sorted(range(1, G.order), key=lambda x: (-int(orders[x]), x))
    gens: list[int] = []
    current = {0}
    for x in candidates:
        if len(current) == G.order:
            break
        if x not in current:
            gens.append(x)
            current = set(subgroup_generated(G, gens))
    return gens


def has_elementary_pair(G: Group, p: int) -> bool:
    """Whether ``G`` contains a subgroup isomorphic to C_p x C_p."""
    orders = G.element_orders
    elems = np.flatnonzero(orders == p)
    comm = G.commute_matrix
    for i, x in enumerate(elems):
        cyc = set(subgroup_generated(G, [int(x)]))
        for y in elems[i + 1:]:
            if comm[x, y] and int(y) not in cyc:
                return True
    return False


def exponent(G: Group) -> int:
    e = 1
    for o in set(G.element_orders.tolist()):
        e = e * o // gcd(e, o)
    return e
