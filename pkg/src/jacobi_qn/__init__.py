"""Exact verification of Jacobi algebroids, Jacobi quasi-Nijenhuis structures and Courant-Jacobi doubles."""

__version__ = "0.1.0"

from .symalg import EndoTensor, KVector, PolyFn  # noqa: E402
from .algebroid import JacobiAlgebroid, LieAlgebroid  # noqa: E402

__all__ = ["__version__", "PolyFn", "KVector", "EndoTensor", "LieAlgebroid", "JacobiAlgebroid"]
