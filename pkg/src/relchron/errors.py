"""Exception types shared across the package."""


class RelchronError(Exception):
    """Base class for all package-specific errors."""


class NotHermitian(RelchronError):
    """Input matrix deviates from Hermiticity beyond tolerance."""


class NoConvergence(RelchronError):
    """Iterative eigensolver hit its sweep cap before converging."""


class KernelLeak(RelchronError):
    """Resolvent input has a non-negligible component in the excluded eigenspace."""


class VanishingOverlap(RelchronError):
    """Clock-state overlap too small to condition on (N below floor)."""


class DegenerateLevel(RelchronError):
    """Selected level is (nearly) degenerate; the non-degenerate path does not apply."""


class DegeneracyNotLifted(RelchronError):
    """First-order corrections do not split the degenerate subspace."""


class ConfigInvalid(RelchronError):
    """Scenario or run configuration violates its invariants."""


class GridMismatch(RelchronError):
    """Time grids of the compared/consumed objects do not agree."""


class VanishingAmplitude(RelchronError):
    """A clock coefficient required by a closed-form expression is zero."""
