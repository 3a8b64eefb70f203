"""Causal contextual bandits with adaptive context."""

from ccbandit._ccbandit import *  # noqa: F401,F403
from ccbandit._ccbandit import Error, CausalInstance

__all__ = [name for name in dir() if not name.startswith("_")]
