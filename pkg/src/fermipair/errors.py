"""Exception types shared across the package."""


class FermipairError(Exception):
    """Base class for all package-specific errors."""


class OutOfBandError(FermipairError, ValueError):
    """Raised when a spectral parameter z lies inside the closed band.

    Every resolvent-type integral in this package is defined only for z
    strictly outside [E_min(K), E_max(K)].
    """


class DegenerateBandError(FermipairError, ValueError):
    """Raised when the band collapses to a point.

    At total quasimomentum K = (pi, pi) both half-angle cosines vanish and
    the free dispersion is identically 4, so there is no band interior to
    separate discrete eigenvalues from.
    """


class NonFiniteIntegrandError(FermipairError, ArithmeticError):
    """Raised when quadrature samples contain NaN or infinity.

    This typically signals a singular integrand, i.e. an energy parameter
    inside the band.
    """
