"""Swap-count bounds for mapping circuits onto constrained devices."""

from .assignment import (
    Assignment,
    AssignmentResult,
    GedResult,
    SubgraphClass,
    assign_qubits,
    enumerate_connected_subgraph_classes,
    graph_edit_distance,
    max_swap_bound,
    most_connected_subgraph,
    vf2_embed,
)
from .channels import (
    BirkhoffDecomposition,
    apply_transposition,
    birkhoff_decompose,
    erase_edge,
    max_weight_term,
)
from .circuits import (
    Circuit,
    DeviceSpec,
    InteractionGraph,
    interaction_graph,
    parse_circuit_json,
    parse_circuit_qasm_subset,
    parse_device,
    serialize_circuit,
    serialize_device,
)
from .errors import (
    DecompositionError,
    NumericalError,
    ParseError,
    SizeGuardError,
    SwapBoundError,
    SweepError,
    UnsupportedError,
    ValidationError,
)
from .graphs import Graph, canonical_form, graph_diameter, induced_subgraph
from .oracle import brute_force_min_swaps, brute_force_over_assignments
from .spectral import (
    DensityMatrix,
    entropy_curve,
    fidelity,
    gibbs_state,
    graph_gibbs,
    laplacian,
    qjsd,
    qjsd_via_qre,
    quantum_relative_entropy,
    von_neumann_entropy,
)
from .uncomplexity import (
    AlgoTrace,
    BoundReport,
    SweepResult,
    aligned_qjsd,
    beta_sweep,
    compute_bound,
    remove_trivial_edges,
    standard_beta_grid,
    swap_uncomplexity,
)

__version__ = "0.1.0"
