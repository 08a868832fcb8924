"""Exception types raised by jcm_entropy."""


class JCMError(ValueError):
    """Base class for all errors raised by this package."""


class NotHermitian(JCMError):
    pass


class DimensionMismatch(JCMError):
    pass


class NotDensity(JCMError):
    pass


class BadDistribution(JCMError):
    """Atom populations are negative or do not sum to one."""


class DegenerateSpectrum(JCMError):
    """The Schatten decomposition is not unique (equal eigenvalues)."""


class LengthMismatch(JCMError):
    pass


class CutoffTooSmall(JCMError):
    """Fock truncation discards more probability than ``tail_epsilon``."""


class NotCoherentField(JCMError):
    pass
