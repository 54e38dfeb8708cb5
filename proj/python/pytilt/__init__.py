"""Boundary recovery for limited-angle tomography."""

from ._tilt import (
    cw_distance,
    fixture_names,
    mask,
    phantom,
    project,
    reconstruct,
    tilt,
)

__all__ = ["cw_distance", "fixture_names", "mask", "phantom", "project", "reconstruct", "tilt"]
