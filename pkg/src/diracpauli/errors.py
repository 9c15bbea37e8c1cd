"""Exception types shared across the package."""


class DiracPauliError(Exception):
    """Base class for all package-specific errors."""


class DomainError(DiracPauliError, ValueError):
    """Argument outside an operation's mathematical domain."""


class NoSquareCompletionError(DiracPauliError):
    """No real constant turns the root argument into a perfect square."""


class NoAdmissibleBranchError(DiracPauliError):
    """Neither sign of the root polynomial gives a decreasing tau."""


class AmbiguousBranchError(DiracPauliError):
    """Both root signs give a decreasing tau; the caller must choose.

    Carries the two admissible reductions in ``reductions``.
    """

    def __init__(self, message, reductions=()):
        super().__init__(message)
        self.reductions = tuple(reductions)


class UnsupportedFamilyError(DiracPauliError):
    """Operation is only implemented for the sigma(r) = r family."""


class ComplexExponentError(DiracPauliError):
    """1 + c3sq <= 0, so the angular exponent L would be complex.

    ``one_plus_c3sq`` holds the offending value.
    """

    def __init__(self, message, one_plus_c3sq):
        super().__init__(message)
        self.one_plus_c3sq = one_plus_c3sq


class NonNormalizableError(DiracPauliError):
    """Decay rate c2 <= 0: the radial profile is not square integrable."""


class BracketError(DiracPauliError):
    """Energy bracket does not straddle a sign change of the shot solution."""


class WrongStateError(DiracPauliError):
    """Shooting converged on a state with the wrong node count."""
