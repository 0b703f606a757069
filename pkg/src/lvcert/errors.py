"""Structured errors raised by the pipeline stages.

Each stage failure maps to one of these; the search driver converts them
into rejection reasons instead of aborting a batch.
"""


class LvcertError(Exception):
    """Base class for all structured pipeline errors."""


class IdenticallyZero(LvcertError):
    """Resultant vanished identically: inputs share a nontrivial factor."""


class ZeroDenominator(LvcertError):
    pass


class SingularFace(LvcertError):
    """A 2x2 face subsystem has zero determinant."""


class NotCompetitive(LvcertError):
    """Some interaction entry is >= 0 at the evaluation point."""


class DegenerateSign(LvcertError):
    """An algebraic invariant is exactly zero; classification aborted."""


class IncompleteInvariants(LvcertError):
    """Zero or undetermined signs present; no class can be certified."""


class NotLinearInMu(LvcertError):
    pass


class ZeroCoefficient(LvcertError):
    pass


class NotBlockDiagonal(LvcertError):
    """Supplied transform does not block-diagonalize the matrix."""


class DegenerateSpectrum(LvcertError):
    """Kernel dimensions do not match the Hopf eigenstructure."""


class SingularHomological(LvcertError):
    """A center-manifold degree solve is singular."""


class PreconditionViolated(LvcertError):
    """Linear part fails the center conditions."""


class SingularSolve(LvcertError):
    """An odd-degree Lyapunov solve was singular (internal error)."""


class RealSpectrum(LvcertError):
    """No complex eigenvalue pair; the LV0 surrogate is undefined."""


class BudgetExhausted(LvcertError):
    """A bounded search ran out of refinement/shrink steps."""


class PositiveDimensional(LvcertError):
    """The bivariate system has a common factor even after splitting."""


class UncertifiableBox(LvcertError):
    """Refinement budget exhausted before certification."""


class SignUndetermined(LvcertError):
    """A sign polynomial may vanish on every achievable refinement."""


class ParseError(LvcertError):
    pass


class VerificationFailed(LvcertError):
    """A certificate claim failed independent re-verification."""


class StepFailure(LvcertError):
    """Integrator step size underflow."""


class PositivityLoss(LvcertError):
    """A trajectory coordinate crossed zero beyond tolerance."""
