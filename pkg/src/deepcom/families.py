"""Built-in group families, direct products and shipped table fixtures."""

from __future__ import annotations

import hashlib
from importlib import resources
from itertools import permutations
from math import factorial, prod

import numpy as np

from .errors import BadParameter, CapExceeded
from .group import Group, group_from_table, load_table_file

REALIZE_CAP = 10000

FAMILY_KINDS = ("C", "D", "Q", "SD", "S", "A")
FIXTURES = ("sg64_182",)

# sha256 of the sg64_182 table bytes (int64, C order); guards the shipped fixture
SG64_182_SHA256 = "0fbcc2cd43c5f2b8ecc1fbd67ec9da863ee09ae722f1964e88367984f89bbcd9"


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def check_family_parameter(kind: str, n: int) -> None:
    """Raise BadParameter unless ``n`` is allowed for the family ``kind``."""
    if kind == "C":
        ok, rule = n >= 1, "cyclic order must be at least 1"
    elif kind == "D":
        ok, rule = n >= 4 and n % 2 == 0, "dihedral order must be even and at least 4"
    elif kind == "Q":
        ok, rule = n >= 8 and _is_power_of_two(n), "generalized quaternion order must be 2^m >= 8"
    elif kind == "SD":
        ok, rule = n >= 16 and _is_power_of_two(n), "semidihedral order must be 2^m >= 16"
    elif kind in ("S", "A"):
        ok, rule = n >= 1, "permutation degree must be at least 1"
    else:
        raise BadParameter(f"unknown family {kind!r}")
    if not ok:
        raise BadParameter(f"{kind}{n}: {rule}")


def family_order(kind: str, n: int) -> int:
    check_family_parameter(kind, n)
    if kind == "S":
        return factorial(n)
    if kind == "A":
        return max(1, factorial(n) // 2)
    return n


def cyclic(n: int) -> Group:
    check_family_parameter("C", n)
    i = np.arange(n)
    names = ["1", "a"] + [f"a^{j}" for j in range(2, n)]
    return Group((i[:, None] + i[None, :]) % n, names[:n], f"C{n}")


def _metacyclic(m: int, twist: int, square: int, letters: tuple[str, str], name: str) -> Group:
    """Group of order 2m on words b^e a^i with a^m = 1, a^i b = b a^(i*twist), b^2 = a^square."""
    names = []
    a, b = letters
    for e in (0, 1):
        for i in range(m):
            word = (b if e else "") + ("" if i == 0 else a if i == 1 else f"{a}^{i}")
            names.append(word or "1")
    e = np.repeat([0, 1], m)
    i = np.tile(np.arange(m), 2)
    e1, e2 = e[:, None], e[None, :]
    i1, i2 = i[:, None], i[None, :]
    twisted = np.where(e2 == 1, i1 * twist, i1)
    exp = twisted + i2 + np.where((e1 == 1) & (e2 == 1), square, 0)
    e3 = (e1 + e2) % 2
    table = e3 * m + exp % m
    return Group(table, names, name)


def dihedral(n: int) -> Group:
    """Dihedral group of order n, elements r^i and s r^i."""
    check_family_parameter("D", n)
    return _metacyclic(n // 2, -1, 0, ("r", "s"), f"D{n}")


def quaternion(n: int) -> Group:
    """Generalized quaternion group of order n = 2^m, elements a^i and b a^i."""
    check_family_parameter("Q", n)
    m = n // 2
    return _metacyclic(m, -1, m // 2, ("a", "b"), f"Q{n}")


def semidihedral(n: int) -> Group:
    check_family_parameter("SD", n)
    m = n // 2
    return _metacyclic(m, m // 2 - 1, 0, ("a", "b"), f"SD{n}")


def _cycle_name(perm: tuple[int, ...]) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        parts.append("(" + ",".join(str(c + 1) for c in cyc) + ")")
    return "".join(parts) or "()"


def _permutation_group(perms: np.ndarray, name: str) -> Group:
    """Group table of a list of permutations (rows, lexicographically sorted).

    The product xy applies x first, then y.
    """
    N, d = perms.shape
    weights = d ** np.arange(d - 1, -1, -1, dtype=np.int64)
    codes = perms @ weights
    order = np.argsort(codes)
    perms, codes = perms[order], codes[order]
    table = np.empty((N, N), dtype=np.int64)
    for x in range(N):
        composed = perms[:, perms[x]]  # i -> y(x(i)) for every y
        table[x] = np.searchsorted(codes, composed @ weights)
    names = [_cycle_name(tuple(p)) for p in perms.tolist()]
    return Group(table, names, name)


def _parity(p: tuple[int, ...]) -> int:
    inv = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            inv += p[i] > p[j]
    return inv % 2


def symmetric(n: int, cap: int = REALIZE_CAP) -> Group:
    check_family_parameter("S", n)
    if factorial(n) > cap:
        raise CapExceeded(f"S{n} has order {factorial(n)} > cap {cap}")
    perms = np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)
    return _permutation_group(perms, f"S{n}")


def alternating(n: int, cap: int = REALIZE_CAP) -> Group:
    check_family_parameter("A", n)
    if family_order("A", n) > cap:
        raise CapExceeded(f"A{n} has order {family_order('A', n)} > cap {cap}")
    perms = [p for p in permutations(range(n)) if _parity(p) == 0]
    perms = np.array(perms, dtype=np.int64).reshape(-1, n)
    return _permutation_group(perms, f"A{n}")


def load_fixture(name: str) -> Group:
    if name not in FIXTURES:
        raise BadParameter(f"unknown fixture {name!r}")
    ref = resources.files("deepcom") / "data" / f"{name}.json"
    with resources.as_file(ref) as path:
        G = load_table_file(path)
    digest = hashlib.sha256(G.table.tobytes()).hexdigest()
    if name == "sg64_182" and (G.order != 64 or digest != SG64_182_SHA256):
        raise BadParameter("the shipped sg64_182 fixture does not match its recorded checksum")
    return G


def make_family(kind: str, parameter: int | None = None, *, cap: int = REALIZE_CAP) -> Group:
    """Build a named group: ``("D", 8)`` is the dihedral group of order 8, etc."""
    if kind in FIXTURES:
        return load_fixture(kind)
    if parameter is None:
        raise BadParameter(f"family {kind!r} needs a parameter")
    n = int(parameter)
    check_family_parameter(kind, n)
    if family_order(kind, n) > cap:
        raise CapExceeded(f"{kind}{n} has order {family_order(kind, n)} > cap {cap}")
    if kind == "C":
        return cyclic(n)
    if kind == "D":
        return dihedral(n)
    if kind == "Q":
        return quaternion(n)
    if kind == "SD":
        return semidihedral(n)
    if kind == "S":
        return symmetric(n, cap)
    return alternating(n, cap)


def direct_product(*groups: Group, cap: int = REALIZE_CAP, name: str | None = None) -> Group:
    """Componentwise product; elements are ordered lexicographically by component."""
    if not groups:
        raise BadParameter("direct product of no groups")
    total = prod(g.order for g in groups)
    if total > cap:
        raise CapExceeded(f"direct product has order {total} > cap {cap}")
    table = groups[0].table
    labels = [(nm,) for nm in groups[0].names]
    for H in groups[1:]:
        m = H.order
        table = (table[:, None, :, None] * m + H.table[None, :, None, :]).reshape(
            table.shape[0] * m, table.shape[0] * m)
        labels = [lab + (nm,) for lab in labels for nm in H.names]
    if len(groups) == 1:
        names = [lab[0] for lab in labels]
    else:
        names = ["(" + ",".join(lab) + ")" for lab in labels]
    return Group(table, names, name or "x".join(g.name for g in groups))


__all__ = [
    "REALIZE_CAP", "FAMILY_KINDS", "FIXTURES", "make_family", "direct_product",
    "cyclic", "dihedral", "quaternion", "semidihedral", "symmetric", "alternating",
    "check_family_parameter", "family_order", "load_fixture", "group_from_table",
]
