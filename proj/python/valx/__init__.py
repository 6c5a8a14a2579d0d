"""Valuations on K(x) given by pairs of definition (a, gamma)."""

from ._valx import ValxError, Workspace, ostrowski_defect, run

__all__ = ["ValxError", "Workspace", "ostrowski_defect", "run"]
