"""Exception and warning types shared across the package."""

from __future__ import annotations


class ThetaDeformError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(ThetaDeformError):
    """Weights or matrices of incompatible dimension were combined."""


class InvariantViolation(ThetaDeformError):
    """A value does not satisfy a structural invariant (e.g. antisymmetry)."""


class ContextError(ThetaDeformError):
    """Elements or generators from different algebra contexts were mixed."""


class BoundError(ThetaDeformError):
    """A degree bound is smaller than the degree of the element it must cover."""


class UnsupportedDegree(ThetaDeformError):
    """The restricted Haar state was asked about a word outside its domain."""


class ParseError(ThetaDeformError):
    """Malformed textual or JSON input."""


class NoNontrivialDeformation(UserWarning):
    """Emitted when a deformation is requested for a group of rank one."""
