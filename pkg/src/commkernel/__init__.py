"""Exact kernels of generalized-commutator operators on matrix rings."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("commkernel")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from .kernels import BACKEND
from .scalars import PrimeField, Rational
from .poly import MultilinearPoly
from .linalg import ExactMatrix, det, nullity, rank, rank_poly_matrix
from .commutator import al_check, conjecture_experiment, operator_matrix, standard_polynomial
from .graphs import LabeledDigraph, enumerate_signed, has_eulerian_path, signed_sum, with_extra_edge
from .specialization import block_Lj_direct, block_Lj_via_operator, exponents
from .ordering import (graph_cmp, ic_matrix, ic_via_maximal, maximal_graph, max_t, n_matrix,
                       structure_report)

__all__ = [
    "BACKEND", "PrimeField", "Rational", "MultilinearPoly", "ExactMatrix", "det", "nullity",
    "rank", "rank_poly_matrix", "al_check", "conjecture_experiment", "operator_matrix",
    "standard_polynomial", "LabeledDigraph", "enumerate_signed", "has_eulerian_path",
    "signed_sum", "with_extra_edge", "block_Lj_direct", "block_Lj_via_operator", "exponents",
    "graph_cmp", "ic_matrix", "ic_via_maximal", "maximal_graph", "max_t", "n_matrix",
    "structure_report",
]
