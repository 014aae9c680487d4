"""Explicit central extensions and the brute-force deep-commuting oracle.

An extension is stored concretely: the total group H, the base group G, the
projection as an index array H -> G, and the kernel as a sorted tuple.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import product
from pathlib import Path

import numpy as np

from .cohomology import Cochain2, cocycle_basis, cocycle_defects, flatten, prime_powers
from .errors import (BadExtension, BaseMismatch, CapExceeded, FileError, NotACocycle,
                     NotAGroup)
from .graphs import SimpleGraph, relative_commuting_graph
from .group import (ASSOCIATIVITY_CAP, Group, center, conjugacy_classes, derived_subgroup,
                    group_from_table, load_table_file, quotient_group)
from .homs import _extend, _fingerprint, iter_isomorphisms
from .modular import pivot_data

EXTENSION_CAP = 1024
ORACLE_CAP = 12
ISOCLINISM_CAP = 64
ORACLE_SEED = 20240607


@dataclass(frozen=True, eq=False)
class CentralExtension:
    total: Group
    base: Group
    projection: np.ndarray
    kernel: tuple[int, ...]
    provenance: tuple | None = None  # (p, k, cocycle values) when built from a cocycle

    def section(self) -> np.ndarray:
        """The smallest preimage of each base element."""
        lift = np.full(self.base.order, -1, dtype=np.int64)
        for h in range(self.total.order - 1, -1, -1):
            lift[self.projection[h]] = h
        return lift


def validate_extension(ext: CentralExtension) -> None:
    H, G, pi = ext.total, ext.base, np.asarray(ext.projection)
    if pi.shape != (H.order,) or pi.min() < 0 or pi.max() >= G.order:
        raise BadExtension("projection has the wrong shape or range")
    if len(np.unique(pi)) != G.order:
        raise BadExtension("projection is not surjective")
    if not np.array_equal(pi[H.table], G.table[pi[:, None], pi[None, :]]):
        raise BadExtension("projection is not a homomorphism")
    if tuple(int(h) for h in np.flatnonzero(pi == 0)) != tuple(ext.kernel):
        raise BadExtension("kernel is not the preimage of the identity")
    if not set(ext.kernel) <= set(center(H)):
        raise BadExtension("kernel is not central")


def _extension_table(G: Group, f: np.ndarray, q: int) -> np.ndarray:
    """(g, a)(h, b) = (gh, a + b + f(g, h)) with (g, a) stored at g*q + a."""
    n = G.order
    a = np.arange(q)
    gh = G.table[:, None, :, None]
    s = (a[None, :, None, None] + a[None, None, None, :] + f[:, None, :, None]) % q
    return (gh * q + s).reshape(n * q, n * q)


def extension_from_cocycle(G: Group, f, modulus: int | None = None, *,
                           cap: int = EXTENSION_CAP) -> CentralExtension:
    """The central extension of G by Z/q defined by the normalized cocycle ``f``."""
    if isinstance(f, Cochain2):
        values, q, prov = f.values, f.modulus, (f.p, f.k)
    else:
        if modulus is None:
            raise ValueError("a raw cocycle array needs its modulus")
        values, q, prov = np.asarray(f), modulus, (modulus, 1)
    values = np.asarray(values, dtype=np.int64) % q
    order = G.order * q
    if order > cap:
        raise CapExceeded(f"extension of order {order} exceeds cap {cap}")
    if values[0].any() or values[:, 0].any():
        raise NotACocycle("cocycle is not normalized")
    table = _extension_table(G, values, q)
    names = [f"({g},{a})" for g in G.names for a in range(q)]
    label = f"{G.name}.{q}"
    if order <= ASSOCIATIVITY_CAP:
        try:
            H = group_from_table(order, names, table, name=label)
        except NotAGroup as exc:
            raise NotACocycle(f"extension table is not a group: {exc}") from None
    else:
        if cocycle_defects(G, values, q):
            raise NotACocycle("cocycle identity fails")
        H = Group(table, names, label)
    ext = CentralExtension(H, G, np.arange(order) // q, tuple(range(q)),
                           provenance=prov + (values,))
    validate_extension(ext)
    return ext


def central_quotient_extension(H: Group, Z=None) -> CentralExtension:
    """H as an extension of H/Z; ``Z`` defaults to the centre of H."""
    Z = center(H) if Z is None else tuple(sorted(Z))
    Q, coset_of = quotient_group(H, Z, name=f"{H.name}/Z")
    ext = CentralExtension(H, Q, coset_of, tuple(sorted(Z)))
    validate_extension(ext)
    return ext


def quotient_extension(ext: CentralExtension, Z1) -> CentralExtension:
    """Pass from H to H/Z1 for a subgroup Z1 of the kernel; still an extension of the base."""
    Z1 = tuple(sorted(set(int(z) for z in Z1)))
    if not set(Z1) <= set(ext.kernel):
        raise BadExtension("Z1 must lie in the kernel")
    Hq, coset_of = quotient_group(ext.total, Z1, name=f"{ext.total.name}/Z1")
    pi = np.zeros(Hq.order, dtype=np.int64)
    pi[coset_of] = ext.projection
    kernel = tuple(sorted(set(int(coset_of[z]) for z in ext.kernel)))
    out = CentralExtension(Hq, ext.base, pi, kernel)
    validate_extension(out)
    return out


def is_stem(ext: CentralExtension) -> bool:
    return set(ext.kernel) <= set(center(ext.total)) & set(derived_subgroup(ext.total))


def is_cp(ext: CentralExtension) -> bool:
    """Commutation preserving: commuting images always have commuting preimages."""
    H, G, pi = ext.total, ext.base, np.asarray(ext.projection)
    images_commute = G.commute_matrix[pi[:, None], pi[None, :]]
    return bool(H.commute_matrix[images_commute].all())


def commuting_probability(G: Group) -> Fraction:
    return Fraction(len(conjugacy_classes(G)), G.order)


def commuting_pair_density(G: Group) -> Fraction:
    """Ordered pairs (x, y), loops included, with xy = yx, over |G|^2."""
    return Fraction(int(G.commute_matrix.sum()), G.order ** 2)


def pullback_extension(ext1: CentralExtension, ext2: CentralExtension, *,
                       cap: int = EXTENSION_CAP) -> CentralExtension:
    """K = {(h1, h2) : pi1(h1) = pi2(h2)}, projecting to the common base."""
    if ext1.base != ext2.base:
        raise BaseMismatch("extensions have different base groups")
    pi1, pi2 = np.asarray(ext1.projection), np.asarray(ext2.projection)
    pairs = [(a, b) for a in range(ext1.total.order) for b in range(ext2.total.order)
             if pi1[a] == pi2[b]]
    if len(pairs) > cap:
        raise CapExceeded(f"pullback of order {len(pairs)} exceeds cap {cap}")
    index = {pr: i for i, pr in enumerate(pairs)}
    A = np.array([a for a, _ in pairs])
    B = np.array([b for _, b in pairs])
    t1, t2 = ext1.total.table, ext2.total.table
    prod_a = t1[A[:, None], A[None, :]]
    prod_b = t2[B[:, None], B[None, :]]
    lookup = np.full((ext1.total.order, ext2.total.order), -1, dtype=np.int64)
    lookup[A, B] = np.arange(len(pairs))
    table = lookup[prod_a, prod_b]
    names = [f"({ext1.total.names[a]};{ext2.total.names[b]})" for a, b in pairs]
    K = Group(table, names, f"K({ext1.total.name},{ext2.total.name})")
    k1, k2 = set(ext1.kernel), set(ext2.kernel)
    kernel = tuple(sorted(index[(a, b)] for a, b in pairs if a in k1 and b in k2))
    ext = CentralExtension(K, ext1.base, pi1[A], kernel)
    validate_extension(ext)
    return ext


# ---------------------------------------------------------------------------
# isoclinism


@dataclass(frozen=True)
class Isoclinism:
    """phi on central quotients (as coset index images) and psi on derived subgroups."""

    phi: tuple[int, ...]
    psi: dict
    coset_maps: tuple[np.ndarray, np.ndarray]
    coset_reps: tuple[np.ndarray, np.ndarray]


def _central_data(H: Group):
    Q, coset_of = quotient_group(H, center(H), name=f"{H.name}/Z")
    reps = np.zeros(Q.order, dtype=np.int64)
    for h in range(H.order - 1, -1, -1):
        reps[coset_of[h]] = h
    return Q, coset_of, reps


def isoclinic(H1: Group, H2: Group, cap: int = ISOCLINISM_CAP) -> Isoclinism | None:
    """Search isomorphisms phi of central quotients; psi is forced on commutators."""
    Q1, c1, r1 = _central_data(H1)
    Q2, c2, r2 = _central_data(H2)
    D1, D2 = derived_subgroup(H1), derived_subgroup(H2)
    if max(Q1.order, Q2.order, len(D1), len(D2)) > cap:
        raise CapExceeded(f"isoclinism search limited to quotients and derived groups of order {cap}")
    if Q1.order != Q2.order or len(D1) != len(D2):
        return None
    if _fingerprint(Q1) != _fingerprint(Q2):
        return None
    if sorted(H1.element_orders[list(D1)].tolist()) != sorted(H2.element_orders[list(D2)].tolist()):
        return None
    m = Q1.order
    comm1 = np.array([[H1.commutator(int(r1[u]), int(r1[v])) for v in range(m)] for u in range(m)])
    comm2 = np.array([[H2.commutator(int(r2[u]), int(r2[v])) for v in range(m)] for u in range(m)])
    for phi in iter_isomorphisms(Q1, Q2):
        phi_arr = np.array(phi)
        target = comm2[phi_arr[:, None], phi_arr[None, :]]
        psi: dict[int, int] = {}
        consistent = True
        for a, b in zip(comm1.ravel().tolist(), target.ravel().tolist()):
            if psi.setdefault(a, b) != b:
                consistent = False
                break
        if not consistent:
            continue
        gens = sorted(psi)
        full = _extend(H1, H2, gens, [psi[g] for g in gens])
        if full is None or len(full) != len(D1) or set(full.values()) != set(D2):
            continue
        return Isoclinism(tuple(phi), dict(sorted(full.items())), (c1, c2), (r1, r2))
    return None


def verify_isoclinism(H1: Group, H2: Group, iso: Isoclinism) -> bool:
    """Check psi([x, y]) = [x', y'] for all x, y, with x', y' any lifts of phi(xZ), phi(yZ)."""
    c1, _ = iso.coset_maps
    _, r2 = iso.coset_reps
    phi = np.array(iso.phi)
    for x in range(H1.order):
        for y in range(H1.order):
            lhs = iso.psi.get(H1.commutator(x, y))
            rhs = H2.commutator(int(r2[phi[c1[x]]]), int(r2[phi[c1[y]]]))
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# oracle


def _module_coefficient_ranges(z2: np.ndarray, p: int, k: int) -> list[int]:
    _, vals = pivot_data(flatten(z2), p, k)
    return [p ** (k - int(v)) for v in vals]


def _lift_commutation(G: Group, fs: np.ndarray, q: int) -> np.ndarray:
    """For a batch of cocycles, whether (x,0)(y,0) = (y,0)(x,0) in each extension."""
    prods = G.table[None] * q + fs % q  # (x,0)(y,0) = (xy, f(x,y))
    return prods == prods.transpose(0, 2, 1)


def dcom_oracle(G: Group, budget: int = 64, *, seed: int = ORACLE_SEED,
                exhaustive_limit: int = 2 ** 20, cap: int = ORACLE_CAP) -> SimpleGraph:
    """Intersect relative commuting graphs over explicitly built central extensions.

    For each p^k || |G|: one extension per cocycle generator and per sampled
    module element (validated groups), plus every element of the cocycle
    module when it has at most ``exhaustive_limit`` elements.
    """
    if G.order > cap:
        raise CapExceeded(f"oracle limited to order {cap}")
    adj = G.commute_matrix.copy()
    rng = np.random.default_rng(seed)
    for p, k in prime_powers(G):
        basis = cocycle_basis(G, p, k)
        q = basis.modulus
        samples = list(basis.z2)
        if len(basis.z2):
            coeffs = rng.integers(0, q, size=(budget, len(basis.z2)))
            samples += list(np.einsum("sr,rxy->sxy", coeffs, basis.z2) % q)
        for f in samples:
            ext = extension_from_cocycle(G, basis.cochain(f), cap=max(EXTENSION_CAP, G.order * q))
            adj &= relative_commuting_graph(ext).to_matrix() | np.eye(G.order, dtype=bool)
        ranges = _module_coefficient_ranges(basis.z2, p, k)
        size = int(np.prod(ranges, dtype=object)) if ranges else 1
        if ranges and size <= exhaustive_limit:
            combos = np.array(list(product(*[range(r) for r in ranges])), dtype=np.int64)
            for start in range(0, len(combos), 4096):
                fs = np.einsum("sr,rxy->sxy", combos[start:start + 4096], basis.z2) % q
                adj &= _lift_commutation(G, fs, q).all(axis=0)
    return SimpleGraph.from_matrix(adj, G.names, "dcom", G.name)


# ---------------------------------------------------------------------------
# fixture files


def load_extension_file(path) -> CentralExtension:
    """Load ``{"total": <table file>, "base": <table file>, "projection": [...]}``."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
        total = load_table_file(path.parent / data["total"])
        base = load_table_file(path.parent / data["base"])
        pi = np.array(data["projection"], dtype=np.int64)
    except OSError as exc:
        raise FileError(f"cannot read {path}: {exc}") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise FileError(f"{path} is not an extension file: {exc}") from None
    kernel = tuple(int(h) for h in np.flatnonzero(pi == 0))
    ext = CentralExtension(total, base, pi, kernel)
    validate_extension(ext)
    return ext


BUILTIN_EXTENSIONS = ("d8_over_v4", "q8_over_v4", "d16_over_d8")


def builtin_extension(name: str) -> CentralExtension:
    """One of the shipped stem extensions, e.g. ``"d8_over_v4"``."""
    if name not in BUILTIN_EXTENSIONS:
        raise FileError(f"unknown built-in extension {name!r}")
    ref = resources.files("deepcom") / "data" / f"{name}.json"
    with resources.as_file(ref) as path:
        return load_extension_file(path)
