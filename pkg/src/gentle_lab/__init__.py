"""Computations with gentle algebras given as bound quivers."""
__version__ = "0.1.0"

from .quiver_core import BoundQuiver, parse_bound_quiver, serialize_bound_quiver, validate_gentle
from .strings_bands import StringWord, BandWord, parse_string, parse_band
from .homodim import proj_dim_string, inj_dim_string, global_dimension, finitistic_dimension
from .cma_recollement import build_cma
from .classify import is_quasi_tilted, check_quasi_tilted_criterion, kg_dimension
