"""Floating-point transport and monodromy."""

from .kernels import BACKEND
from .monodromy import MonodromyRep, local_monodromy, monodromy_rep, transport, verify_trivial

__all__ = ["BACKEND", "MonodromyRep", "local_monodromy", "monodromy_rep", "transport", "verify_trivial"]
