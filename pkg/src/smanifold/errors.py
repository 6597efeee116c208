class SManifoldError(Exception):
    """Base class for errors raised by this package."""


class NotIsolated(SManifoldError):
    """The base point is not isolated in the common fixed-point set."""


class NotAbelian(SManifoldError):
    """An operation that needs an abelian symmetry group got a non-abelian one."""


class NotInvariant(SManifoldError):
    """A component is not preserved by the symmetric transformations."""


class InvalidGroup(SManifoldError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAnAutomorphism(SManifoldError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class IllDefined(SManifoldError):
    """A coset-space operation depends on the choice of representative."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ZeroPoint(SManifoldError):
    """The Cartan point is zero, so its adjoint orbit is a single point."""
