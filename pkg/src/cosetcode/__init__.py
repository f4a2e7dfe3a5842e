"""Storage codes on coset graphs of binary linear codes.

Builds the recursive parity-check families, their Cayley (coset) graphs over
F_2^r, computes GF(2) ranks of the (augmented) adjacency matrices with a
bit-packed elimination engine, and verifies rank, rate, triangle-freeness
and guessing-game behaviour at desk scale.

Submodules
----------
bitlin      word-packed GF(2) vectors/matrices: rank, kernel, products
permring    the commutative ring of XOR-translation permutation sums
codefam     parity-check matrix family generators
cosetgraph  Cayley graphs, adjacency sums, prefix block decomposition
tensorrank  exact structured ranks for the recursive families
storage     storage-code reports, repair and guessing-game checks
cli         command-line front end (``cosetcode`` entry point)
"""

from ._kernels import BACKEND as kernel_backend
from .bitlin import BitMatrix, BitVector, CapacityError, DimensionError
from .codefam import FamilySpec, GeneratorSet
from .cosetgraph import CosetGraph, build_graph
from .permring import GroupElement, PermSum
from .storage import StorageReport, storage_report, theorem_sweep

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVector",
    "CapacityError",
    "CosetGraph",
    "DimensionError",
    "FamilySpec",
    "GeneratorSet",
    "GroupElement",
    "PermSum",
    "StorageReport",
    "build_graph",
    "kernel_backend",
    "storage_report",
    "theorem_sweep",
    "__version__",
]
