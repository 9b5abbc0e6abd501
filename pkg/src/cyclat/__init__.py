"""cyclat: exact-arithmetic toolkit for cyclic and well-rounded lattices.

Library layout:

- ``scalars``     exact rationals and real quadratic surds
- ``linalg``      exact matrices, integer HNF / Smith forms
- ``lattice``     lattices, duals, minima, roundness and stability flags
- ``planar``      rank-2 canonicalization through circulant approximation
- ``heights``     Weil heights, bounded-height enumeration, counting bounds
- ``cyclic``      circulants, ideals of Z[x]/(x^n-1), generator search, census
- ``roots``       the A/D/E root lattices and their cyclic classification
- ``numberfield`` trace-form lattices of quadratic and cyclotomic fields
- ``cli``         deterministic CSV/JSON batch interface (``cyclat`` command)

All values are immutable and all operations pure; floating point only ever
supplies search bounds or rigorous interval endpoints, never answers.
"""

from .lattice import Lattice
from .linalg import Matrix
from .scalars import Scalar

__all__ = ["Lattice", "Matrix", "Scalar"]

__version__ = "0.1.0"
