"""Normalized 2-cocycles with coefficients in Z/p^k, and what they detect.

A normalized cochain is an ``n x n`` array ``f`` with ``f[0, :] = f[:, 0] = 0``.
Its flat coordinates are the pairs (x, y) of non-identity elements in row-major
order, so cocycle modules can be put in canonical Howell form.

Solving for Z^2 directly has (n-1)^2 unknowns and (n-1)^3 constraints.  The
default solver instead uses the fact that a cocycle is determined by its
values ``f(x, s)`` on a generating set S: along a spanning tree of the Cayley
graph, ``f(x, y s) = f(x, y) + f(xy, s) - f(y, s)``.  The cocycle identity then
only needs to be imposed on triples ``(x, y, s)`` with ``s`` in S.  The result is
mapped back to full coordinates and checked against every triple.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .abelian import AbelianInvariants, factorize
from .errors import CapExceeded, InternalVerificationFailure, NotCommuting
from .graphs import SimpleGraph
from .group import Group, small_generating_set
from .modular import howell_form, kernel, module_order_exponent, subquotient_exponents

COHOMOLOGY_CAP = 64
DIRECT_CAP = 16


@dataclass(frozen=True, eq=False)
class Cochain2:
    group: Group
    p: int
    k: int
    values: np.ndarray

    @property
    def modulus(self) -> int:
        return self.p ** self.k

    def __call__(self, x: int, y: int) -> int:
        return int(self.values[x, y]) % self.modulus


@dataclass(frozen=True, eq=False)
class CocycleBasis:
    """Generators of Z^2(G, Z/p^k) together with coboundary and carry generators.

    ``z2`` is the canonical Howell form of the cocycle module, reshaped to full
    ``(r, n, n)`` cochains.  ``homs`` holds the characters whose carries are in
    ``carries``; their entries are the integer lifts in ``[0, p^k)``.
    """

    group: Group
    p: int
    k: int
    z2: np.ndarray
    b2: np.ndarray
    homs: np.ndarray
    carries: np.ndarray

    @property
    def modulus(self) -> int:
        return self.p ** self.k

    def cochain(self, values) -> Cochain2:
        return Cochain2(self.group, self.p, self.k, np.asarray(values) % self.modulus)

    @property
    def z2_cochains(self) -> list[Cochain2]:
        return [self.cochain(f) for f in self.z2]

    def module_size(self) -> int:
        return self.p ** module_order_exponent(flatten(self.z2), self.p, self.k)


def flatten(cochains: np.ndarray) -> np.ndarray:
    """(r, n, n) cochains -> (r, (n-1)^2) coordinate rows."""
    cochains = np.asarray(cochains)
    r, n = cochains.shape[0], cochains.shape[-1]
    return cochains[:, 1:, 1:].reshape(r, (n - 1) ** 2)


def unflatten(rows: np.ndarray, n: int) -> np.ndarray:
    rows = np.asarray(rows).reshape(-1, (n - 1) ** 2)
    out = np.zeros((len(rows), n, n), dtype=np.int64)
    out[:, 1:, 1:] = rows.reshape(-1, n - 1, n - 1)
    return out


def cocycle_defects(G: Group, f: np.ndarray, q: int) -> int:
    """Number of triples (x, y, z) where ``f(x,y) + f(xy,z) - f(y,z) - f(x,yz)`` is nonzero mod q."""
    t = G.table
    lhs = f[:, :, None] + f[t][:, :, :]  # f(x,y) + f(xy, z)
    rhs = f[None, :, :] + f[np.arange(G.order)[:, None, None], t[None, :, :]]  # f(y,z) + f(x, yz)
    return int(np.count_nonzero((lhs - rhs) % q))


def _verify_cocycles(G: Group, cochains: np.ndarray, q: int, what: str) -> None:
    for f in cochains:
        if f[0].any() or f[:, 0].any():
            raise InternalVerificationFailure(f"{what}: generator is not normalized")
        bad = cocycle_defects(G, f, q)
        if bad:
            raise InternalVerificationFailure(f"{what}: generator violates {bad} cocycle constraints")


def _spanning_tree(G: Group, gens: list[int]) -> list[tuple[int, int, int]]:
    """BFS tree of the right Cayley graph: (w, parent y, generator index i) with w = y * gens[i]."""
    rows = G.rows
    seen = {0}
    order = [0]
    tree = []
    for y in order:
        for i, s in enumerate(gens):
            w = rows[y][s]
            if w not in seen:
                seen.add(w)
                order.append(w)
                tree.append((w, y, i))
    return tree


def _parametrization(G: Group, gens: list[int], q: int) -> np.ndarray:
    """F with ``f = F @ theta`` for theta = (f(x, s_i)) over x != 1, flattened as (x-1)*|S| + i."""
    n, s = G.order, len(gens)
    N = (n - 1) * s
    F = np.zeros((n, n, N), dtype=np.int64)
    t = G.table
    xs = np.arange(n)
    for w, y, i in _spanning_tree(G, gens):
        col = F[:, y, :].copy()
        xy = t[:, y]
        hit = xy != 0
        col[xs[hit], (xy[hit] - 1) * s + i] += 1
        if y:
            col[:, (y - 1) * s + i] -= 1
        F[:, w, :] = col % q
    return F


def _tree_constraints(G: Group, gens: list[int], F: np.ndarray, q: int) -> np.ndarray:
    n, s = G.order, len(gens)
    N = F.shape[2]
    t = G.table
    X, Y = np.meshgrid(np.arange(1, n), np.arange(1, n), indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    blocks = []
    for i, g in enumerate(gens):
        rows = F[X, Y] - F[X, t[Y, g]]
        xy = t[X, Y]
        hit = np.flatnonzero(xy != 0)
        rows[hit, (xy[hit] - 1) * s + i] += 1
        rows[np.arange(len(Y)), (Y - 1) * s + i] -= 1
        blocks.append(rows % q)
    A = np.vstack(blocks) if blocks else np.zeros((0, N), dtype=np.int64)
    return A[A.any(axis=1)]


def _symmetry_constraints(G: Group, F: np.ndarray, q: int) -> np.ndarray:
    """Rows forcing f(x,y) = f(y,x) on commuting pairs of non-identity elements."""
    X, Y = np.nonzero(np.triu(G.commute_matrix, 1))
    keep = X > 0
    rows = (F[X[keep], Y[keep]] - F[Y[keep], X[keep]]) % q
    return rows[rows.any(axis=1)]


def _solve_reduced(G: Group, p: int, k: int, symmetric: bool) -> np.ndarray:
    q = p ** k
    n = G.order
    gens = small_generating_set(G)
    F = _parametrization(G, gens, q)
    A = _tree_constraints(G, gens, F, q)
    if symmetric:
        A = np.vstack([A, _symmetry_constraints(G, F, q)])
    N = F.shape[2]
    theta = kernel(A, p, k, N)
    full = np.einsum("xyn,rn->rxy", F, theta) % q
    return howell_form(flatten(full), p, k, (n - 1) ** 2)


def _solve_direct(G: Group, p: int, k: int, symmetric: bool) -> np.ndarray:
    """One 4-term constraint per triple of non-identity elements, in (n-1)^2 unknowns."""
    q = p ** k
    n = G.order
    m = n - 1
    t = G.table
    idx = lambda a, b: (a - 1) * m + (b - 1)
    rows = []
    for x in range(1, n):
        for y in range(1, n):
            for z in range(1, n):
                row = np.zeros(m * m, dtype=np.int64)
                row[idx(x, y)] += 1
                if t[x, y]:
                    row[idx(t[x, y], z)] += 1
                row[idx(y, z)] -= 1
                if t[y, z]:
                    row[idx(x, t[y, z])] -= 1
                rows.append(row % q)
    if symmetric:
        for x in range(1, n):
            for y in range(x + 1, n):
                if G.commute_matrix[x, y]:
                    row = np.zeros(m * m, dtype=np.int64)
                    row[idx(x, y)] += 1
                    row[idx(y, x)] -= 1
                    rows.append(row % q)
    A = np.array(rows).reshape(-1, m * m)
    return kernel(A, p, k, m * m)


def hom_generators(G: Group, p: int, k: int) -> np.ndarray:
    """Generators of Hom(G, Z/p^k) as value rows ``chi[0..n-1]`` in ``[0, p^k)``."""
    q = p ** k
    n = G.order
    gens = small_generating_set(G)
    t = G.table
    rows = []
    for x in range(1, n):
        for s in gens:
            row = np.zeros(n, dtype=np.int64)
            row[x] += 1
            row[s] += 1
            row[t[x, s]] -= 1
            rows.append(row[1:] % q)
    K = kernel(np.array(rows).reshape(-1, n - 1), p, k, n - 1)
    out = np.zeros((len(K), n), dtype=np.int64)
    out[:, 1:] = K
    for chi in out:
        if ((chi[:, None] + chi[None, :] - chi[t]) % q).any():
            raise InternalVerificationFailure("character generator is not a homomorphism")
    return out


def coboundary_generators(G: Group, q: int) -> np.ndarray:
    """delta(e_u)(x, y) = [x=u] + [y=u] - [xy=u] for every non-identity u."""
    n = G.order
    u = np.arange(1, n)[:, None, None]
    x = np.arange(n)[None, :, None]
    y = np.arange(n)[None, None, :]
    out = (x == u).astype(np.int64) + (y == u) - (G.table[None] == u)
    return out % q


def carry_generators(G: Group, homs: np.ndarray, q: int) -> np.ndarray:
    """(chi(x) + chi(y) - chi(xy)) / q for each character, with lifts in [0, q)."""
    t = G.table
    out = [(chi[:, None] + chi[None, :] - chi[t]) // q for chi in homs]
    return np.array(out, dtype=np.int64).reshape(-1, G.order, G.order)


def _check_cap(G: Group, cap: int) -> None:
    if G.order > cap:
        raise CapExceeded(f"cohomology limited to order {cap}; {G.name} has order {G.order}")


def prime_powers(G: Group) -> list[tuple[int, int]]:
    """(p, k) for each prime power p^k exactly dividing |G|."""
    return sorted(factorize(G.order).items())


@lru_cache(maxsize=64)
def _cocycle_module(G: Group, p: int, k: int, symmetric: bool, method: str) -> np.ndarray:
    n = G.order
    if n == 1:
        return np.zeros((0, 0), dtype=np.int64)
    if method == "direct":
        if n > DIRECT_CAP:
            raise CapExceeded(f"direct solver limited to order {DIRECT_CAP}")
        H = _solve_direct(G, p, k, symmetric)
    else:
        H = _solve_reduced(G, p, k, symmetric)
    full = unflatten(H, n)
    _verify_cocycles(G, full, p ** k, "Z2" if not symmetric else "symmetric Z2")
    if symmetric:
        D = (full - full.transpose(0, 2, 1)) % p ** k
        if (D[:, G.commute_matrix] != 0).any():
            raise InternalVerificationFailure("symmetric cocycle has nonzero pairing")
    return H


def cocycle_basis(G: Group, p: int, k: int | None = None, *, method: str = "reduced",
                  cap: int = COHOMOLOGY_CAP) -> CocycleBasis:
    """Solve for Z^2(G, Z/p^k); ``k`` defaults to the multiplicity of p in |G|.

    ``method`` is ``"reduced"`` (generator recursion, any order within the cap)
    or ``"direct"`` (all (n-1)^2 unknowns; small groups only).  Both return the
    same canonical generators.
    """
    _check_cap(G, cap)
    if k is None:
        k = factorize(G.order).get(p, 0)
    n = G.order
    if n == 1:
        empty = np.zeros((0, 1, 1), dtype=np.int64)
        return CocycleBasis(G, p, k, empty, empty, np.zeros((0, 1), np.int64), empty)
    if k < 1:
        raise ValueError(f"need k >= 1 (p={p} does not divide |G|={G.order})")
    q = p ** k
    z2 = unflatten(_cocycle_module(G, p, k, False, method), n)
    b2 = coboundary_generators(G, q)
    homs = hom_generators(G, p, k)
    carries = carry_generators(G, homs, q)
    _verify_cocycles(G, b2, q, "B2")
    _verify_cocycles(G, carries, q, "carry")
    return CocycleBasis(G, p, k, z2, b2, homs, carries)


def pairing_value(f: Cochain2, x: int, y: int) -> int:
    """f(x, y) - f(y, x) mod p^k for a commuting pair: whether their lifts commute."""
    G = f.group
    if not G.commute_matrix[x, y]:
        raise NotCommuting(f"{G.names[x]} and {G.names[y]} do not commute")
    return (int(f.values[x, y]) - int(f.values[y, x])) % f.modulus


@dataclass(frozen=True)
class PrimeDetail:
    p: int
    k: int
    z2_generators: int
    schur_exponents: tuple[int, ...]
    bogomolov_exponents: tuple[int, ...]


@dataclass(frozen=True)
class MultiplierReport:
    schur: AbelianInvariants
    bogomolov: AbelianInvariants
    m0_order: int
    per_prime: tuple[PrimeDetail, ...] = ()

    def to_dict(self) -> dict:
        return {
            "schur": self.schur.to_list(),
            "bogomolov": self.bogomolov.to_list(),
            "m0_order": self.m0_order,
            "per_prime": [
                {"p": d.p, "k": d.k, "z2_generators": d.z2_generators,
                 "schur": [d.p ** e for e in d.schur_exponents],
                 "bogomolov": [d.p ** e for e in d.bogomolov_exponents]}
                for d in self.per_prime
            ],
        }


@lru_cache(maxsize=64)
def _prime_detail(G: Group, p: int, k: int) -> PrimeDetail:
    basis = cocycle_basis(G, p, k, cap=max(COHOMOLOGY_CAP, G.order))
    relations = np.vstack([flatten(basis.b2), flatten(basis.carries)])
    schur = subquotient_exponents(flatten(basis.z2), relations, p, k)
    sym = _cocycle_module(G, p, k, True, "reduced")
    bog = subquotient_exponents(sym, relations, p, k)
    return PrimeDetail(p, k, len(basis.z2), tuple(schur), tuple(bog))


def schur_multiplier(G: Group, cap: int = COHOMOLOGY_CAP) -> AbelianInvariants:
    """M(G) as Z^2 / (B^2 + carries), one prime at a time."""
    _check_cap(G, cap)
    powers = [d.p ** e for p, k in prime_powers(G) for d in [_prime_detail(G, p, k)]
              for e in d.schur_exponents]
    return AbelianInvariants.from_prime_powers(powers)


def bogomolov_multiplier(G: Group, cap: int = COHOMOLOGY_CAP) -> MultiplierReport:
    """B0(G) from the cocycles whose pairing vanishes on every commuting pair."""
    _check_cap(G, cap)
    details = tuple(_prime_detail(G, p, k) for p, k in prime_powers(G))
    schur = AbelianInvariants.from_prime_powers(
        [d.p ** e for d in details for e in d.schur_exponents])
    bog = AbelianInvariants.from_prime_powers(
        [d.p ** e for d in details for e in d.bogomolov_exponents])
    if schur.order % bog.order:
        raise InternalVerificationFailure(f"|B0| = {bog.order} does not divide |M| = {schur.order}")
    return MultiplierReport(schur, bog, schur.order // bog.order, details)


def noncommuting_lift_mask(G: Group, cap: int = COHOMOLOGY_CAP) -> np.ndarray:
    """Boolean matrix: commuting pairs whose lifts fail to commute in some extension."""
    _check_cap(G, cap)
    bad = np.zeros((G.order, G.order), dtype=bool)
    for p, k in prime_powers(G):
        basis = cocycle_basis(G, p, k, cap=cap)
        for f in basis.z2:
            bad |= (f - f.T) % basis.modulus != 0
    return bad & G.commute_matrix


def deep_commuting_graph(G: Group, cap: int = COHOMOLOGY_CAP) -> SimpleGraph:
    """Commuting pairs whose pairing vanishes for every cocycle generator of every p^k || |G|."""
    adj = G.commute_matrix & ~noncommuting_lift_mask(G, cap)
    return SimpleGraph.from_matrix(adj, G.names, "dcom", G.name)


def basis_to_json(basis: CocycleBasis) -> str:
    """Stable debug dump: generators as sparse {"(i,j)": value} maps."""
    gens = []
    for f in basis.z2:
        nz = np.argwhere(f % basis.modulus)
        gens.append({f"({i},{j})": int(f[i, j]) for i, j in nz.tolist()})
    doc = {"group": basis.group.name, "p": basis.p, "k": basis.k,
           "generator_count": len(gens), "generators": gens}
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"
