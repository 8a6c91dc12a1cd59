"""Exact flow polynomials of multigraphs.

Modular and integral flow polynomials, their duals, totally cyclic
orientations and Eulerian equivalence classes, with independent methods
cross-checked against each other.
"""

from .errors import (DomainError, FlowPolyError, InvariantViolation, Limits,
                     ResourceLimitError, get_limits, limits, set_limits)
from .polyalg import BiPoly, Poly, lagrange_interpolate, reciprocity_transform
from .multigraph import (GraphFormatError, MultiGraph, bridges, components, contract,
                         cycle_rank, cyclic_part, delete, induced, is_bridgeless,
                         load_graph, maximal_spanning_forest, parse_graph)
from .orientation import (Orientation, OrientationClass, apply_P, apply_Q, coupling,
                          count_totally_cyclic, enumerate_orientations, eulerian_class,
                          eulerian_classes, eulerian_equivalent, find_directed_cut,
                          induced_orientation, is_totally_cyclic, totally_cyclic_orientations)
from .flowspace import (FlowVector, LiftResult, count_integer_flows_closed,
                        count_integer_flows_open, count_modular_flows,
                        count_nowhere_zero_integer, enumerate_modular_flows,
                        enumerate_nowhere_zero_integer, is_flow, lift_modular_flow,
                        zero_one_flows)
from .counting import (MethodReport, bs1_check, dual_polys, flat_poset,
                       integral_flow_poly, local_flow_polys,
                       modular_dual_flow_poly_from_reciprocity, modular_flow_poly,
                       s_n_closed_form, tutte, tutte_specializations)
from .verify import VerificationReport, verify
from .kernels import DEFAULT as BACKEND

__version__ = "0.1.0"
