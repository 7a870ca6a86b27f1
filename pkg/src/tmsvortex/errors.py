class CutoffError(ValueError):
    """Fock truncation too small for the requested tolerance."""


class ConvergenceError(RuntimeError):
    """A numerical stage (series, quadrature, grid refinement) did not converge.

    ``stage`` names the failing step so the CLI can report it.
    """

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage
