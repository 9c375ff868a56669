"""Python bindings for the S-tree detector and MHI biclique solver."""

from ._core import (
    Error,
    brute_force_mhi,
    detect,
    evaluate,
    forest,
    inject,
    solve_mhibp,
)

__all__ = [
    "Error",
    "brute_force_mhi",
    "detect",
    "evaluate",
    "forest",
    "inject",
    "solve_mhibp",
]
