"""Stuttering multipartitions: residue-vector blocks, shift orbits and the
constructions that find a block member of minimal orbit."""

from .errors import StutterError
from .multipartitions import LevelConfig, Multipartition, alpha_kappa
from .partitions import Partition
from .stuttering import find_minimal_orbit, find_power_stable, find_stuttering

__version__ = "0.1.0"

__all__ = [
    "LevelConfig",
    "Multipartition",
    "Partition",
    "StutterError",
    "alpha_kappa",
    "find_minimal_orbit",
    "find_power_stable",
    "find_stuttering",
]
