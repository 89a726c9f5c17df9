"""Exact construction and certification of extreme rays of the cone dual
to sums of squares of ternary forms."""
from .apolarity import Functional, functional_from_points, hankel, hilbert_function, point_evaluation
from .cayley_bacharach import PointConfig, gamma_split, grid, is_exceptional, perturbed_grid, unique_relation
from .extremal import (
    ExtremeRayCertificate,
    build_max_rank,
    certify,
    construct_max_rank,
    d5_catalog,
)
from .polyring import Poly, ProjPoint
from .qlinalg import QMatrix, psd_certify, rank, rref

__version__ = "0.1.0"
