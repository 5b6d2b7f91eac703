"""Connected families of cubes crossing a grid, for colorings, lattice labelings
and level sets of Lipschitz maps.

This package provides the solvers exhibiting such families, an explicit clustered
coloring of integer lattices they rely on, and independent verifiers for every
witness they produce.
"""

from .continuous import approximate_level_crossing as approximate_level_crossing
from .discrete import solve as solve
from .grid import CellLabeling as CellLabeling
from .grid import GridShape as GridShape
from .steinhaus import find_crossing as find_crossing
