"""Commuting, enhanced power and deep commuting graphs of small finite groups."""

from __future__ import annotations

from .abelian import AbelianInvariants
from .classify import ClassificationReport, classify
from .cohomology import (CocycleBasis, MultiplierReport, bogomolov_multiplier, cocycle_basis,
                         deep_commuting_graph, pairing_value, schur_multiplier)
from .errors import (BadExtension, BadParameter, BaseMismatch, CapExceeded, DeepComError,
                     FileError, InternalVerificationFailure, NotACocycle, NotAGroup,
                     NotCommuting, ParseError, TheoremViolation)
from .extensions import (CentralExtension, central_quotient_extension, commuting_probability,
                         dcom_oracle, extension_from_cocycle, is_cp, is_stem, isoclinic,
                         pullback_extension)
from .families import direct_product, make_family
from .graphs import (SimpleGraph, commuting_graph, emit, enhanced_power_graph, graph_equal,
                     graph_isomorphic, induced_subgraph, is_spanning_subgraph,
                     relative_commuting_graph)
from .group import Group, group_from_table
from .homs import automorphisms, is_isomorphic
from .speclang import parse_spec, realize
from .subgroups import subgroups_up_to_conjugacy

__version__ = "0.1.0"
