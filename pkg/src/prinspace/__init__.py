"""Exact computations on the principal subspaces of the level-1 A1(1) modules.

The package realizes W(Lambda_0) and W(Lambda_1) inside the lattice Fock
space, computes their bigraded dimensions by exact row reduction and checks
them against the Rogers-Ramanujan sum and product sides.
"""

__version__ = "0.1.0"

from prinspace.series import Bidegree, BivariateSeries

__all__ = ["Bidegree", "BivariateSeries", "__version__"]
