"""Place a group in the hierarchy EPow <= DCom <= Com and cross-check the theorems."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .abelian import AbelianInvariants, factorize
from .cohomology import COHOMOLOGY_CAP, bogomolov_multiplier, deep_commuting_graph
from .errors import TheoremViolation
from .graphs import commuting_graph, enhanced_power_graph, graph_equal, is_spanning_subgraph
from .group import Group, has_elementary_pair
from .subgroups import SUBGROUP_CAP, subgroups_up_to_conjugacy

LABELS = {
    (True, True): "EPow = DCom = Com",
    (True, False): "EPow = DCom ⊊ Com",
    (False, True): "EPow ⊊ DCom = Com",
    (False, False): "EPow ⊊ DCom ⊊ Com",
}


@dataclass(frozen=True)
class ClassificationReport:
    group_name: str
    order: int
    epow_edges: int
    dcom_edges: int
    com_edges: int
    epow_eq_dcom: bool
    dcom_eq_com: bool
    schur: AbelianInvariants
    bogomolov: AbelianInvariants
    elementary_primes: tuple[int, ...]
    checks: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return LABELS[self.epow_eq_dcom, self.dcom_eq_com]


def abelian_lift_subgroups(G: Group, dcom_matrix: np.ndarray, cap: int = SUBGROUP_CAP):
    """Subgroup class representatives all of whose pairs are DCom-adjacent (abelian preimage)."""
    out = []
    for cls in subgroups_up_to_conjugacy(G, cap).classes:
        idx = np.array(cls.representative)
        block = dcom_matrix[np.ix_(idx, idx)] | np.eye(len(idx), dtype=bool)
        if block.all():
            out.append(cls)
    return out


def classify(G: Group, cap: int = COHOMOLOGY_CAP, subgroup_cap: int = SUBGROUP_CAP) -> ClassificationReport:
    """Compute the three graphs and both multipliers, then run every cross-check.

    Any failed check raises TheoremViolation.  The subgroup criterion is
    skipped (and recorded as such) above ``subgroup_cap``.
    """
    epow = enhanced_power_graph(G)
    dcom = deep_commuting_graph(G, cap)
    com = commuting_graph(G)
    mult = bogomolov_multiplier(G, cap)
    epow_eq_dcom = graph_equal(epow, dcom)
    dcom_eq_com = graph_equal(dcom, com)
    primes = tuple(p for p in factorize(G.order) if has_elementary_pair(G, p))
    checks: dict[str, str] = {}

    def check(name: str, ok: bool, message: str) -> None:
        if not ok:
            raise TheoremViolation(f"{G.name}: {message}")
        checks[name] = "ok"

    check("inclusion_chain",
          is_spanning_subgraph(epow, dcom) and is_spanning_subgraph(dcom, com),
          "E(EPow) <= E(DCom) <= E(Com) fails")
    check("bogomolov_criterion", dcom_eq_com == (mult.schur == mult.bogomolov),
          f"DCom = Com is {dcom_eq_com} but M = {mult.schur}, B0 = {mult.bogomolov}")
    if mult.schur.is_trivial():
        check("trivial_multiplier", dcom_eq_com, "M(G) trivial but DCom != Com")
    if G.order <= subgroup_cap:
        lifted = abelian_lift_subgroups(G, dcom.to_matrix(), subgroup_cap)
        criterion = all(c.is_cyclic for c in lifted)
        check("abelian_lift_criterion", criterion == epow_eq_dcom,
              f"abelian-lift criterion gives {criterion}, graphs give EPow = DCom {epow_eq_dcom}")
    else:
        checks["abelian_lift_criterion"] = "skipped"
    check("elementary_abelian_criterion", graph_equal(epow, com) == (not primes),
          f"EPow = Com is {graph_equal(epow, com)} with C_p x C_p for p in {primes}")
    forced = [p for p in primes if mult.schur.order % p]
    if forced:
        check("coprime_multiplier_remark", not epow_eq_dcom,
              f"C_p x C_p with p = {forced[0]} not dividing |M| but EPow = DCom")
    else:
        checks["coprime_multiplier_remark"] = "not applicable"

    return ClassificationReport(
        group_name=G.name, order=G.order,
        epow_edges=epow.edge_count(), dcom_edges=dcom.edge_count(), com_edges=com.edge_count(),
        epow_eq_dcom=epow_eq_dcom, dcom_eq_com=dcom_eq_com,
        schur=mult.schur, bogomolov=mult.bogomolov,
        elementary_primes=primes, checks=checks,
    )
