"""Log-determinant estimates for sparse SPD matrices.

A monotone sequence of estimates ``D^1 >= D^2 >= ...`` comes from sparse
approximate inverse factors supported on the patterns of ``A, A^2, ...``;
a path-graph Laplacian spline extrapolates the sequence.
"""

from .errors import *  # noqa: F401,F403
from .estimator import EstimateSeries, estimate_series, row_contributions, saturation_power
from .factor import bottom_right_pivot, cholesky
from .generators import GridSpec, grid_laplacian, random_dd_spd
from .matrix import (
    DenseSubmatrix,
    PatternRow,
    SparseSpdMatrix,
    expand_row,
    extract_submatrix,
    from_dense,
    from_triplets,
    lower_restrict,
    pattern_density,
    row_pattern,
)
from .mmio import read_matrix_market, write_matrix_market
from .oracle import exact_logdet, hadamard_fischer_check, principal_minor_logdet
from .spline import SplineSeries, build_path_laplacian, extrapolate, extrapolation_point, spline_series

__version__ = "0.1.0"
