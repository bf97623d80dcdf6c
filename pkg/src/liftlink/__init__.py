"""liftlink: a certified workbench for edge-disjoint structure in multigraphs.

Finite side: stable-edge-id multigraphs, connectivity oracles, splitting-off
(lifting) machinery, weak-linkage solving, and arc-connected orientations.
Infinite side: lazily presented periodic graphs, truncations, witnessed ray
systems, linking fans, and the pipelines that transport finite solutions to
infinite hosts.  Every positive answer ships with an independently checkable
certificate; depth-bounded negatives are reported as such, never as proofs.
"""

from ._flow import backend_name
from .errors import (
    BoundaryNotFinite,
    ConsistencyError,
    DepthExhausted,
    DisconnectedContractionSet,
    DisconnectedGraph,
    LiftlinkError,
    NonIntersectingSets,
    NotEulerian,
    NotIncident,
    OddK,
    PreconditionViolated,
    ResourceBudgetExceeded,
    SameEdge,
    SameVertex,
    Stuck,
    UnknownVertex,
)
from .multigraph import (
    BlockCutTree,
    ContractionMap,
    MultiGraph,
    VertexCut,
    block_cut_tree,
    bridges,
    cut_identity_sides,
    euler_tour,
)
from .flows import (
    is_k_edge_connected,
    is_sk_edge_connected,
    local_edge_connectivity,
    min_cut_side,
    edge_disjoint_paths,
)

__version__ = "0.1.0"
