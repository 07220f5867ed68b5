"""Finite twisted groupoids, inverse semigroups and their L^p operator algebras.

Everything is finite and discrete, so each object is a table and each
identity can be checked exactly over the rationals (or numerically, with a
stated tolerance, when p-norms force floats).
"""

from .exactnum import INF, QComplex, WeightedSpace, opnorm, opnorm_bracket, opnorm_exact
from .semilattice import FiniteSemilattice, validate_semilattice
from .invsemi import ISemigroup, exel_semigroup, group_by_name, validate_inverse_semigroup
from .groupoid import (FiniteGroupoid, deaconu_renault, group_groupoid, pair_groupoid,
                       transformation_groupoid, validate_groupoid)
from .galg import AlgElement, Cocycle, convolve, involute, norm_dstar, norm_I, norm_projective, norm_rstar
from .twist import extract_twisted_action, rebuild_and_compare, validate_twisted_action
from .reps import disintegrate, integrate, regular_representation
from .partact import PartialAction, partial_action_groupoid
from .graphalg import Graph, LPAElement, lpa_normalize, spatial_q_family

__version__ = "0.1.0"
