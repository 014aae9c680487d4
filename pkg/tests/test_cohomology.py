from __future__ import annotations

import itertools
import json
from math import gcd

import numpy as np
import pytest

from deepcom.abelian import AbelianInvariants
from deepcom.cohomology import (Cochain2, basis_to_json, bogomolov_multiplier, cocycle_basis,
                                cocycle_defects, deep_commuting_graph, flatten, pairing_value,
                                prime_powers, schur_multiplier)
from deepcom.errors import CapExceeded, NotCommuting
from deepcom.families import alternating, cyclic, make_family
from deepcom.graphs import commuting_graph, enhanced_power_graph, graph_equal, star_graph
from deepcom.modular import coordinates, howell_form
from deepcom.speclang import realize

from conftest import abelian_coordinates, exterior_square_order, exterior_square_pairs

# Schur multipliers from the literature (Kunneth formula for direct products,
# M(D_2m) = C2 for m even, M(Q_2^n) = M(SD) = 1, M(A4) = M(S4) = M(A5) = C2,
# M of an abelian group is its exterior square)
KNOWN_SCHUR = {
    "C1": [], "C2": [], "C3": [], "C4": [], "C5": [], "C6": [], "C7": [], "C8": [], "C9": [],
    "C10": [], "C11": [], "C12": [], "V4": [2], "S3": [], "D8": [2], "Q8": [], "C2xC4": [2],
    "C2xC2xC2": [2, 2, 2], "C3xC3": [3], "A4": [2], "D10": [], "D12": [2], "C2xC6": [2],
    "S4": [2], "D16": [2], "Q16": [], "SD16": [], "C4xC4": [4], "C2xC8": [2],
    "C2xC2xC4": [2, 2, 2], "D8xC2": [2, 2, 2], "Q8xC2": [2, 2], "C3xS3": [], "A4xC2": [2],
    "D24": [2], "C2xC2xC2xC2": [2] * 6, "D8xC3": [2], "Q8xC3": [], "C3xC3xC3": [3, 3, 3],
}


def all_normalized_cochains(n, q):
    m = (n - 1) ** 2
    vals = np.array(list(itertools.product(range(q), repeat=m)), dtype=np.int64)
    out = np.zeros((len(vals), n, n), dtype=np.int64)
    out[:, 1:, 1:] = vals.reshape(-1, n - 1, n - 1)
    return out


def brute_cocycles(G, q):
    fs = all_normalized_cochains(G.order, q)
    t = G.table
    n = G.order
    x = np.arange(n)
    lhs = fs[:, :, :, None] + fs[:, t][:, :, :, :]           # f(x,y) + f(xy,z)
    rhs = fs[:, None, :, :] + fs[:, x[:, None, None], t[None, :, :]]  # f(y,z) + f(x,yz)
    ok = ((lhs - rhs) % q == 0).reshape(len(fs), -1).all(axis=1)
    return fs[ok]


def module_span(gens, q):
    gens = [g % q for g in gens]
    vecs = {g.tobytes(): g for g in [np.zeros_like(gens[0])]} if gens else {}
    for g in gens:
        new = {}
        for v in vecs.values():
            for c in range(q):
                w = (v + c * g) % q
                new[w.tobytes()] = w
        vecs = new
    return vecs


# -- the worked examples -----------------------------------------------------

def test_c2_example():
    C2 = cyclic(2)
    b = cocycle_basis(C2, 2, 1)
    assert b.module_size() == 2
    assert flatten(b.z2).tolist() == [[1]]
    assert not flatten(b.b2).any()
    assert flatten(b.carries).tolist() == [[1]]


def test_trivial_group_basis():
    b = cocycle_basis(cyclic(1), 2)
    assert len(b.z2) == 0 and b.module_size() == 1


@pytest.mark.parametrize("spec,q", [("C2", 2), ("C3", 3), ("C4", 4), ("V4", 2), ("V4", 4),
                                    ("C2", 4), ("C3", 9)])
def test_cocycle_module_matches_enumeration(spec, q):
    G = realize(spec)
    p = min(d for d in (2, 3) if q % d == 0)
    k = round(np.log(q) / np.log(p))
    b = cocycle_basis(G, p, k)
    Z = brute_cocycles(G, q)
    assert b.module_size() == len(Z)
    spanned = module_span(list(b.z2), q)
    assert set(spanned) == {f.tobytes() for f in Z}


def test_v4_module_sizes():
    # |Z2| = 2^3 * |Hom(M, Z/2)| = 16, |B2| = 2^3 / |Hom(V4, Z/2)| = 2,
    # |B2 + carries| = |B2| * |Ext(V4, Z/2)| = 8, leaving a quotient of order 2
    V4 = realize("V4")
    b = cocycle_basis(V4, 2, 1)
    Z = module_span(list(b.z2), 2)
    B = module_span(list(b.b2), 2)
    BC = module_span(list(b.b2) + list(b.carries), 2)
    assert (len(Z), len(B), len(BC)) == (16, 2, 8)
    assert len(Z) // len(BC) == 2 == schur_multiplier(V4).order


# -- solver properties -------------------------------------------------------

@pytest.mark.parametrize("spec", ["C2", "C4", "V4", "S3", "C6", "D8", "Q8", "C2xC4",
                                  "C3xC3", "A4", "D12", "C2xC2xC2", "Q16", "SD16", "D16"])
def test_reduced_and_direct_solvers_agree(spec):
    G = realize(spec)
    for p, k in prime_powers(G):
        a = cocycle_basis(G, p, k, method="reduced")
        d = cocycle_basis(G, p, k, method="direct")
        assert np.array_equal(a.z2, d.z2)


@pytest.mark.parametrize("spec", list(KNOWN_SCHUR))
def test_cocycle_count_universal_coefficients(spec):
    """|Z2(G, Z/q)| = q^(n-1) * prod gcd(d, q) over the invariant factors d of M(G)."""
    G = realize(spec)
    for p, k in prime_powers(G):
        q = p ** k
        b = cocycle_basis(G, p, k)
        expected = q ** (G.order - 1)
        for d in KNOWN_SCHUR[spec]:
            expected *= gcd(d, q)
        assert b.module_size() == expected


@pytest.mark.parametrize("spec", ["V4", "S3", "D8", "Q8", "C2xC4", "A4", "C3xC3", "S4"])
def test_generators_are_cocycles_and_relations_lie_in_module(spec):
    G = realize(spec)
    for p, k in prime_powers(G):
        b = cocycle_basis(G, p, k)
        q = b.modulus
        for f in list(b.z2) + list(b.b2) + list(b.carries):
            assert cocycle_defects(G, f, q) == 0
        H = howell_form(flatten(b.z2), p, k)
        coordinates(H, flatten(b.b2), p, k)
        coordinates(H, flatten(b.carries), p, k)
        comm = G.commute_matrix
        for f in list(b.b2) + list(b.carries):
            assert not ((f - f.T) % q)[comm].any()


def test_pairing_properties():
    G = realize("C2xC4")
    b = cocycle_basis(G, 2, 3)
    f, g = b.z2_cochains[:2]
    h = b.cochain(3 * f.values + 5 * g.values)
    comm = np.argwhere(G.commute_matrix)
    for x, y in comm.tolist():
        assert pairing_value(f, x, y) == (-pairing_value(f, y, x)) % 8
        assert pairing_value(h, x, y) == (3 * pairing_value(f, x, y) + 5 * pairing_value(g, x, y)) % 8
    assert all(pairing_value(f, x, x) == 0 for x in range(G.order))
    D8 = make_family("D", 8)
    cf = Cochain2(D8, 2, 3, np.zeros((8, 8), np.int64))
    with pytest.raises(NotCommuting):
        pairing_value(cf, D8.index("r"), D8.index("s"))


def test_some_v4_class_pairs_nontrivially():
    V4 = realize("V4")
    b = cocycle_basis(V4, 2, 2)
    values = {pairing_value(f, 1, 2) for f in b.z2_cochains}
    assert values - {0}


# -- multipliers --------------------------------------------------------------

@pytest.mark.parametrize("spec", list(KNOWN_SCHUR))
def test_schur_multiplier_known_values(spec):
    assert schur_multiplier(realize(spec)).to_list() == KNOWN_SCHUR[spec]


@pytest.mark.parametrize("spec", list(KNOWN_SCHUR))
def test_bogomolov_trivial_below_64(spec):
    rep = bogomolov_multiplier(realize(spec))
    assert rep.bogomolov.is_trivial()
    assert rep.m0_order * rep.bogomolov.order == rep.schur.order


def test_a5_multipliers():
    rep = bogomolov_multiplier(alternating(5))
    assert rep.schur == AbelianInvariants((2,)) and rep.bogomolov.is_trivial()


def test_sg64_182_multipliers():
    rep = bogomolov_multiplier(make_family("sg64_182"))
    assert rep.schur == AbelianInvariants((2,)) == rep.bogomolov
    assert rep.m0_order == 1


def test_cap():
    with pytest.raises(CapExceeded):
        schur_multiplier(cyclic(65))
    with pytest.raises(CapExceeded):
        deep_commuting_graph(cyclic(65))
    assert schur_multiplier(cyclic(65), cap=65).is_trivial()


# -- deep commuting graph -----------------------------------------------------

ABELIAN = {"C2xC2": (2, 2), "C2xC4": (2, 4), "C3xC3": (3, 3), "C2xC2xC2": (2, 2, 2),
           "C2xC6": (2, 6), "C4xC4": (4, 4), "C2xC8": (2, 8), "C2xC2xC4": (2, 2, 4),
           "C3xC6": (3, 6), "C2xC4xC4": (2, 4, 4), "C6": (6,), "C3xC3xC3": (3, 3, 3)}


@pytest.mark.parametrize("spec", list(ABELIAN))
def test_abelian_dcom_is_exterior_square_kernel(spec):
    factors = ABELIAN[spec]
    G = realize(spec)
    assert abelian_coordinates(factors)[1] == (0,) * (len(factors) - 1) + (1,)
    assert deep_commuting_graph(G).edge_set() == exterior_square_pairs(factors)
    assert schur_multiplier(G).order == exterior_square_order(factors)


def test_dcom_examples():
    V4 = realize("V4")
    assert graph_equal(deep_commuting_graph(V4), star_graph(4))
    E = realize("C3xC3")
    d = deep_commuting_graph(E)
    assert d.degree(0) == 8
    rest = sorted(tuple(sorted(d.neighbors(x))) for x in range(1, 9))
    # every nonidentity element has the identity and its inverse as neighbours
    assert all(len(r) == 2 and r[0] == 0 for r in rest)
    assert d.edge_count() == 12
    G = realize("C2xC4")
    d = deep_commuting_graph(G)
    a, b2, b = G.index("(a,1)"), G.index("(1,a^2)"), G.index("(1,a)")
    assert d.has_edge(a, b2) and not d.has_edge(a, b)
    assert enhanced_power_graph(G).edge_count() < d.edge_count() < commuting_graph(G).edge_count()
    D8 = make_family("D", 8)
    assert graph_equal(deep_commuting_graph(D8), enhanced_power_graph(D8))
    assert not graph_equal(deep_commuting_graph(D8), commuting_graph(D8))


def test_basis_json_dump():
    b = cocycle_basis(cyclic(2), 2, 1)
    doc = json.loads(basis_to_json(b))
    assert doc == {"group": "C2", "p": 2, "k": 1, "generator_count": 1,
                   "generators": [{"(1,1)": 1}]}
    assert basis_to_json(b) == basis_to_json(cocycle_basis(cyclic(2), 2, 1))
