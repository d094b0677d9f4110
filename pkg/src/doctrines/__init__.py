"""Finite doctrines workbench: indexed posets, interior operators, adjunctions,
comonads, and fixed-point temporal semantics, all machine-checked at desk scale."""

__version__ = "0.1.0"

from .adjunction import (  # noqa: F401
    DoctrineAdjunction,
    am_modality,
    base_change_adjunction,
    check_adjunction,
    factorize,
    factorize2_report,
    triviality_checks,
    vertical_adjunction,
    vertical_modality,
)
from .comonad import (  # noqa: F401
    DoctrineComonad,
    check_comonad,
    cm_modality,
    cmd_of_adjunction,
    em_adjunction,
    em_doctrine,
    ma,
    mc,
)
from .doctrine import Doctrine, OneArrow, TwoArrow, check_doctrine, check_one_arrow  # noqa: F401
from .fincat import FinCategory, Functor, NatTransformation, check_category  # noqa: F401
from .interior import InteriorOp, check_interior, stable_elements, stable_subdoctrine  # noqa: F401
from .order import FinLattice, FinPoset, MonotoneMap, check_monotone, check_poset, gfp, powerset_lattice  # noqa: F401
from .temporal import FCoalgebra, ag_oracle, eg_oracle, g_oracle, gfp_modality, temporal_doctrine  # noqa: F401
