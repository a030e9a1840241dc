"""Exception hierarchy shared by all hyperc modules.

The CLI maps these onto its stable exit codes (see hyperc.cli), so new
exception types should subclass one of the families below rather than
raising bare ValueError/RuntimeError.
"""


class HypercError(Exception):
    """Base class for all hyperc errors."""


class InputDomainError(HypercError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SingularityError(InputDomainError):
    """Evaluation requested exactly at a pole or removable singularity."""


class BracketError(HypercError, RuntimeError):
    """A root/bracket search failed; carries a diagnostic sweep dump."""

    def __init__(self, message, sweep=None):
        super().__init__(message)
        self.sweep = sweep  # list of (abscissa, value) probes, for post-mortem


class SolverError(HypercError, RuntimeError):
    """A solve did not reach the requested tolerance."""


class VerificationError(HypercError):
    """An oracle/consistency check failed; message lists the violated clause."""


class CapacityError(HypercError):
    """An exact computation exceeded the configured degree/size budget."""


class DivisibilityError(HypercError, ArithmeticError):
    """Exact polynomial division was requested but the remainder is nonzero."""


class CertificationError(HypercError):
    """Algebraic certification failed (bound violated or degenerate elimination)."""


class SingularLimitWarning(UserWarning):
    """A closed form was evaluated at a 0/0 parameter; the limit value is returned."""
