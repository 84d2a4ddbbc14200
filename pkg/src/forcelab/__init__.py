"""Exact zero forcing, propagation time and throttling under color change rules."""

from .graph import (Graph, canonical_form, census, complete_graph, contains_induced,
                    cycle_graph, enumerate_graphs, find_induced, parse_graph6, path_graph,
                    to_graph6, to_mask)
from .rules import HOP, SKEW, Z, ZPLUS, Rule, RuleState, bootstrap, k_forcing, parse_rule, valid_forces
from .propagation import (INF, ForceSchedule, chains, closure, min_propagation_time,
                          propagation_time, replay, uniformly_fastest)
from .throttling import (ThrottlingCertificate, forcing_number, pt_at_size, size_at_pt,
                         throttle_product, throttle_weighted)
from .forbidden import (ForbiddenFamily, enumerate_product_family, enumerate_weighted_family,
                        make_standard_witness, minimalize, savings, verify_characterization)
from .axioms import AxiomReport, check_well_behaved, falsify_axiom

__version__ = "0.1.0"
