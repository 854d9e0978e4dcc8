"""Forward-mode automatic differentiation."""

from .jet import Jet, chain, concatenate, matmul, matvec, stack, value

__all__ = ["Jet", "chain", "concatenate", "matmul", "matvec", "stack", "value"]
