"""Exception types shared across the package."""


class ExstructaError(Exception):
    """Base class for all package errors."""


class KupischViolation(ExstructaError, ValueError):
    """Projective-length list fails the admissibility condition."""


class WindingUnsupported(ExstructaError, ValueError):
    """Cyclic algebra with a projective longer than the cycle."""


class ProjectiveHasNoTau(ExstructaError, ValueError):
    """Translate requested for a projective indecomposable."""


class NotAnExtension(ExstructaError, ValueError):
    """The (sub, quot) pair carries no nonsplit extension."""


class TooManyStructures(ExstructaError, ValueError):
    """Structure lattice exceeds the enumeration cap."""


class DimensionBound(ExstructaError, ValueError):
    """Object too large for an exhaustive finite-field computation."""


class NotMonic(ExstructaError, ValueError):
    """Morphism expected to be injective is not."""


class DecompositionFailed(ExstructaError, RuntimeError):
    """Direct-sum decomposition of a representation could not be produced."""


class UnrecognizedModule(ExstructaError, RuntimeError):
    """Module does not match any catalogued indecomposable combination."""


class ExtNotMultiplicityFree(ExstructaError, ValueError):
    """A fixture has a first extension space of dimension two or more."""


class CapExceeded(ExstructaError, RuntimeError):
    """Enumeration cap hit; partial results only."""


class NotJordanHolder(ExstructaError, ValueError):
    """Length requested where composition series disagree."""

    def __init__(self, msg, min_length=None, max_length=None):
        super().__init__(msg)
        self.min_length = min_length
        self.max_length = max_length
