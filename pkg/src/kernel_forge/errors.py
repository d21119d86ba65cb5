"""Exception types shared across kernel-forge.

Two rough categories, which the CLI maps to exit codes: input problems
(bad domains, duplicate points, misaligned sets, broken chains) exit 2,
numerical failures (failed pivots, singular Grams) exit 1.
"""


class KernelForgeError(Exception):
    """Base class for every error raised by this package."""


class DomainMismatchError(KernelForgeError, ValueError):
    """Point's domain tag is incompatible with the kernel family."""


class OutOfDomainError(KernelForgeError, ValueError):
    """Point violates a family's domain constraint (e.g. |z| >= 1)."""


class DuplicatePointError(KernelForgeError, ValueError):
    """Sample set contains a repeated point."""


class NotIncreasingError(KernelForgeError, ValueError):
    """Input points were required to be strictly increasing but are not."""


class CellMisalignmentError(KernelForgeError, ValueError):
    """Set or function does not align with the measure's partition cells."""


class ChainError(KernelForgeError, ValueError):
    """Sample chain violates nesting or value-consistency requirements."""


class NotPositiveDefiniteError(KernelForgeError, ArithmeticError):
    """A Cholesky pivot fell below tolerance (matrix not positive definite)."""


class SingularMatrixError(KernelForgeError, ArithmeticError):
    """Gram matrix is numerically singular; inverse-based operation aborted."""
