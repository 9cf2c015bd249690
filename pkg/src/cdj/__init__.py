"""Group-algebra decomposition of Jacobians of curves with a group action."""
from .kernels import BACKEND
from .perm import Permutation
from .permgrp import PermGroup, build_group

__version__ = "0.1.0"

__all__ = ["BACKEND", "Permutation", "PermGroup", "build_group", "__version__"]
