"""pqstab: tuple-partition refinement and symmetry certificates for graphs.

The package walks ordered k-tuples of distinct vertices, refines partitions
of them by a project/assemble round trip until a fixpoint, certifies the
symmetry properties of the result, and cross-checks against an exact
automorphism-group oracle.  A small exact-arithmetic tensor layer and a
sparse rational linear-system builder sit on top for the strongly-regular
graph probes.
"""

__version__ = "0.1.0"

from .certify import (
    SymmetryReport,
    certify,
    check_mp_symmetry,
    check_p_symmetry,
    check_pq_stable,
    check_s_symmetry,
)
from .graphs import (
    Graph,
    from_spec,
    parse_dimacs,
    parse_graph6,
    parse_json,
    write_graph6,
)
from .kernel import BACKEND, backends, group_rows, relabel_first_occurrence
from .linsys import PairSumSystem, build_pair_sum_system, nullspace_basis, sparse_rank
from .ops import (
    MODES,
    MultiProjection,
    assemble,
    drop_projections,
    full_closure,
    is_l_full,
    multiproject,
    project_partition,
)
from .oracle import (
    AutGroup,
    assembly_stays_automorphic,
    automorphisms,
    graph_automorphisms,
    is_automorphic,
    is_k_closed,
    orbit_partition,
    vertex_orbits,
    vertex_transitive,
)
from .probe import DEFAULT_ORACLE_LIMIT, probe_to_json, run_probe
from .stabilize import (
    StabilizationTrace,
    compare_graphs,
    initial_partition,
    pq_stabilize,
    regularize,
    stabilize_graph,
)
from .tensor import (
    ColorTensor,
    IntersectionResult,
    LinearForm,
    PolynomialTransform,
    SrgResult,
    check_class_function,
    intersection_numbers,
    level_equivalent,
    linear_assemble,
    product_assemble,
    projective_convolution,
    srg_parameters,
    vandermonde_transform,
)
from .tuples import (
    MAX_ARITY,
    KPartition,
    UnionFind,
    enumerate_tuples,
    falling,
    join,
    meet,
    partition_from_labels,
    refines,
    tuple_rank,
    tuple_table,
)

__all__ = [
    "__version__",
    # graphs
    "Graph", "from_spec", "parse_graph6", "write_graph6", "parse_dimacs",
    "parse_json",
    # tuple spaces and partitions
    "MAX_ARITY", "falling", "tuple_table", "enumerate_tuples", "tuple_rank",
    "KPartition", "partition_from_labels", "refines", "meet", "join",
    "UnionFind",
    # operators
    "MODES", "project_partition", "assemble", "drop_projections",
    "multiproject", "MultiProjection", "full_closure", "is_l_full",
    # certificates
    "certify", "SymmetryReport", "check_s_symmetry", "check_p_symmetry",
    "check_mp_symmetry", "check_pq_stable",
    # stabilization
    "pq_stabilize", "stabilize_graph", "initial_partition", "regularize",
    "compare_graphs", "StabilizationTrace",
    # oracle
    "AutGroup", "automorphisms", "graph_automorphisms", "orbit_partition",
    "is_automorphic", "assembly_stays_automorphic", "is_k_closed",
    "vertex_orbits", "vertex_transitive",
    # tensors
    "ColorTensor", "LinearForm", "PolynomialTransform", "vandermonde_transform",
    "level_equivalent", "product_assemble", "linear_assemble",
    "projective_convolution", "check_class_function", "intersection_numbers",
    "IntersectionResult", "srg_parameters", "SrgResult",
    # linear systems
    "PairSumSystem", "build_pair_sum_system", "sparse_rank", "nullspace_basis",
    # probe
    "run_probe", "probe_to_json", "DEFAULT_ORACLE_LIMIT",
    # kernels
    "group_rows", "relabel_first_occurrence", "BACKEND", "backends",
]
