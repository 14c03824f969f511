"""Matrix dilogarithms of decorated ideal tetrahedra and their state sums."""
from .scalars import DomainError, RootContext, LogPoint
from .tetra import DecoratedTetra
from .triangulation import DecoratedTriangulation, Triangulation
from .statesum import quantum_invariant, complex_volume

__all__ = ["DomainError", "RootContext", "LogPoint", "DecoratedTetra", "DecoratedTriangulation",
           "Triangulation", "quantum_invariant", "complex_volume"]
__version__ = "0.1.0"
