"""Exception types shared across the package."""


class LatticeError(Exception):
    """Base class for all latforms errors."""


class UsageError(LatticeError):
    """An operation was called with inconsistent or ill-typed arguments."""


class InvalidCellError(LatticeError):
    """Unit-cell parameters do not define a positive-definite Gram matrix."""


class DegenerateBasisError(LatticeError):
    """Basis vectors are linearly dependent (zero signed volume)."""


class NonOrthogonalError(LatticeError):
    """A map expected to be orthogonal fails Q^T Q = I to tolerance."""


class ReductionPreconditionError(LatticeError):
    """The selected pair has a non-negative conorm; no reduction applies."""


class ReductionCapError(LatticeError):
    """Reduction failed to reach an obtuse superbase within the step cap."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class InvalidVoformError(LatticeError):
    """Seven values violate the vonorm linear relation."""


class NotObtuseError(LatticeError):
    """A conorm is negative beyond tolerance; reduce the superbase first."""


class NonRealizableFormError(LatticeError):
    """Root-form values admit no superbase (an angle constraint fails)."""


class DegenerateFormError(LatticeError):
    """Root-form values imply a zero-length vector or a flat superbase."""


class RecordError(LatticeError):
    """Malformed or inconsistent input record; message carries id or line."""
