"""Exact decision procedures for nowhere-zero 3-flows, Z3-connectivity,
3-flow-criticality, and the partition-potential density machinery, with the
constructions used to certify the bounds tight."""

from .constructions import (
    FamilyPlan,
    TwoSumSpec,
    assemble_density_family,
    k3plus,
    plan_density_family,
    two_sum,
    wheel,
)
from .criticality import (
    CriticalityCertificate,
    ReductionTrace,
    StructureReport,
    check_deletion_flow,
    is_3_flow_critical,
    is_z3_reduced,
    verify_structure,
    z3_reduce,
    z3_reduce_all_orders,
)
from .density import (
    DensityReport,
    DichotomyReport,
    ForestDecomposition,
    RhoResult,
    TreePacking,
    check_potential_dichotomy,
    decompose_into_forests,
    density_report,
    rho_min,
    rho_of_partition,
    spanning_tree_packing,
)
from .errors import BoundViolation, CapExceeded, GraphFormatError
from .flows import (
    Orientation,
    brute_force_beta,
    has_mod3_orientation,
    is_z3_connected,
    special_bipartite_orientation,
    find_beta_orientation,
)
from .io import parse_graph, parse_graph6, serialize_edge_list, serialize_graph, serialize_graph6
from .multigraph import (
    Edge,
    MultiGraph,
    are_isomorphic,
    bridges,
    canonical_form,
    edge_connectivity,
    edge_orbits,
    essential_edge_connectivity,
    is_connected,
)
from .plots import density_figure
from .scan import ScanRecord, scan_lines

__all__ = [
    "BoundViolation",
    "CapExceeded",
    "CriticalityCertificate",
    "DensityReport",
    "DichotomyReport",
    "Edge",
    "FamilyPlan",
    "ForestDecomposition",
    "GraphFormatError",
    "MultiGraph",
    "Orientation",
    "ReductionTrace",
    "RhoResult",
    "ScanRecord",
    "StructureReport",
    "TreePacking",
    "TwoSumSpec",
    "are_isomorphic",
    "assemble_density_family",
    "bridges",
    "brute_force_beta",
    "canonical_form",
    "check_deletion_flow",
    "check_potential_dichotomy",
    "decompose_into_forests",
    "density_figure",
    "density_report",
    "edge_connectivity",
    "edge_orbits",
    "essential_edge_connectivity",
    "find_beta_orientation",
    "has_mod3_orientation",
    "is_3_flow_critical",
    "is_connected",
    "is_z3_connected",
    "is_z3_reduced",
    "k3plus",
    "parse_graph",
    "parse_graph6",
    "plan_density_family",
    "rho_min",
    "rho_of_partition",
    "scan_lines",
    "serialize_edge_list",
    "serialize_graph",
    "serialize_graph6",
    "spanning_tree_packing",
    "special_bipartite_orientation",
    "two_sum",
    "verify_structure",
    "wheel",
    "z3_reduce",
    "z3_reduce_all_orders",
]
