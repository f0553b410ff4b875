"""Heat kernels on weighted graphs, anchored Gaussian bounds and anti-trees."""

from .graph import WeightedGraph, laplacian_apply, weighted_degree, read_graph, parse_graph, format_graph
from .metric import VertexMetric, path_degree_metric, combinatorial_metric, ball, verify_intrinsic, jump_size
from .antitree import power_sphere_function, build_antitree, reduce, dimension
from .heat import assemble_dirichlet, decompose, HeatKernel, heat_kernel, exhaustion_converge, lambda_bottom
from .bounds import zeta, sigma, BoundParams, anchored_bound, antitree_bound_intrinsic
from .config import ExperimentConfig, load_config
from .suites import SUITES, run_suite

__version__ = "0.1.0"
