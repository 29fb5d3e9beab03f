"""Domination and k-tuple total domination on latin square graphs."""

from .bounds import BoundsReport, Structure, bounds_for, consistency_check, gamma_bounds, ktds_bounds
from .constructions import (
    cyclic_domination_construction,
    general_domination_construction,
    ktds_construction,
    qstep_1tds_construction,
)
from .errors import *  # noqa: F401,F403
from .graph import LatinSquareGraph, VertexSet, build, vertex_map_under_isotopy
from .kernel import BACKEND
from .latin import (
    CellTriple,
    Isotopy,
    LatinSquare,
    apply_isotopy,
    cyclic,
    find_intercalate,
    from_grid,
    q_step,
    random_isotopy_square,
)
from .solver import (
    DOMINATING,
    DominationCertificate,
    DominationMode,
    brute_force_oracle,
    greedy_upper,
    ktuple,
    solve_exact,
    verify,
)

__version__ = "0.1.0"
