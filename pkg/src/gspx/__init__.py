"""Graph and graphon signal processing: Fourier transforms on graphs and
their graphon limits, W-random sampling, homomorphism densities and cut norms."""

__version__ = "0.1.0"

from .graph import Graph, GraphSignal, RatingTable, new_graph, pearson_similarity_graph, permute, shift_operator
from .graphon import (
    AnalyticKernel,
    AnalyticSignal,
    StepGraphon,
    StepSignal,
    discretize,
    discretize_signal,
    induce_graphon,
    induce_signal,
    step_graphon_from_matrix,
)
from .homomorphism import (
    Motif,
    check_norm_sandwich,
    cut_norm_step,
    cycle_density_graph,
    cycle_density_graphon,
    hom_count,
    hom_density_graph,
    hom_density_graphon_mc,
    homomorphism_convergence_trace,
    l2_operator_norm,
)
from .sampling import rng_stream, sample_graphon_signal, sample_w_random_graph
from .spectral import (
    FourierCoefficients,
    SignedSpectrum,
    bandlimit,
    eigendecompose_symmetric,
    gft,
    graph_spectrum,
    graphon_shift,
    igft,
    is_bandlimited,
    is_non_derogatory,
    iwft,
    signed_index,
    spectral_projection_distance,
    step_spectrum,
    wft_numeric,
    wft_step,
)
