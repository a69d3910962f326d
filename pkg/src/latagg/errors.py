"""Exception hierarchy.

Three families map onto the CLI exit codes: bad input (2), a configured size
bound was exceeded (3), and internal consistency failures (4).
"""


class LatticeError(Exception):
    """Base class for every error raised by this package."""


class InputError(LatticeError):
    """The caller supplied something malformed or out of domain."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownElement(InputError):
    pass


class CycleError(InputError):
    pass


class NotALattice(InputError):
    pass


class NotBounded(InputError):
    pass


class RedundantCover(InputError):
    pass


class NotComparable(InputError):
    pass


class DegenerateLattice(InputError):
    """Raised for the one-element lattice where 0 and 1 coincide."""


class ArityMismatch(InputError):
    pass


class NotJoinIrreducible(InputError):
    pass


class MissingWitness(InputError):
    pass


class NotSmallest(InputError):
    pass


class NotAggregation(InputError):
    """A function table is not monotone or violates the boundary conditions."""


class NotATolerance(InputError):
    pass


class UnknownBuiltin(InputError):
    pass


class BadParam(InputError):
    pass


class BoundExceeded(LatticeError):
    pass


class ArityBoundExceeded(BoundExceeded):
    pass


class InternalInconsistency(LatticeError):
    """Two routes that must agree by a theorem disagreed: always a bug."""


class ImplicationViolation(InternalInconsistency):
    pass
