"""Zariski-like topologies on designated point sets of finite lattices."""

from .checks import CheckResult, check_ids, run_all, run_check
from .errors import (
    CapacityExceeded,
    LatspecError,
    MemberOutOfRange,
    MissingBounds,
    NotAGroup,
    NotALattice,
    NotAPoset,
    SchemaError,
    UnknownCheck,
    UnknownElement,
    UnknownSelector,
)
from .lattice import Lattice, classify_elements, dualize, validate_lattice
from .modules import FiniteModule, ideal_lattice, spec, submodule_lattice
from .spectrum import SpectrumContext, is_X_top, radical, variety
from .topology import FiniteTopology, classical_zariski, finer_patch, generate_from_subbase

__version__ = "0.1.0"

__all__ = [
    "CapacityExceeded", "CheckResult", "FiniteModule", "FiniteTopology", "Lattice", "LatspecError",
    "MemberOutOfRange", "MissingBounds", "NotAGroup", "NotALattice", "NotAPoset", "SchemaError",
    "SpectrumContext", "UnknownCheck", "UnknownElement", "UnknownSelector", "check_ids",
    "classical_zariski", "classify_elements", "dualize", "finer_patch", "generate_from_subbase",
    "ideal_lattice", "is_X_top", "radical", "run_all", "run_check", "spec", "submodule_lattice",
    "validate_lattice", "variety",
]
