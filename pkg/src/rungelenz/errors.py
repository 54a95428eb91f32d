"""Exception types raised across the package."""


class InvalidLabels(ValueError):
    """Quantum numbers outside their allowed range."""


class IncompatibleRadicands(ArithmeticError):
    """Attempt to add two nonzero surds with different radicands."""


class NonPositiveRate(ValueError):
    pass


class NormalizationError(ArithmeticError):
    """A generated state failed its exact norm check."""


class GroundAngular(ValueError):
    """Lowering requested on an l = 0 state."""


class MixedAngular(ValueError):
    """Overlap requested between states of different l."""


class NegativeRadius(ValueError):
    pass


class OutOfDomain(ValueError):
    """Arguments outside the validity box of the Coulomb series."""


class NoConvergence(ArithmeticError):
    pass


class StepTooLarge(ValueError):
    pass


class NonPositiveWavenumber(ValueError):
    pass
