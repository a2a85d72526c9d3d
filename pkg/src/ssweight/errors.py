"""Exception hierarchy shared across the package.

Everything user-facing derives from ``SsweightError`` so the CLI can map any
expected failure to exit code 2 (usage / bad input) while genuine check
failures travel as data (``CheckResult``), never as exceptions.
"""


class SsweightError(Exception):
    """Base class for all expected errors raised by this package."""


class NotWellDefined(SsweightError):
    """A map does not descend to the requested quotient spaces."""


class NotSymmetric(SsweightError):
    """Signature requested for a non-symmetric matrix."""


class MissingRestriction(SsweightError):
    """A needed codimension-one restriction matrix is absent."""


class NotCycleGenerated(SsweightError):
    """Operation requires every stratum to be generated by algebraic cycles."""


class DifferentialNotSquareZero(SsweightError):
    """d1 composed with itself is nonzero; sign convention or input bug."""


class SlopesUnavailable(SsweightError):
    """Frobenius slopes are only defined for cycle-generated inputs."""


class NonIntegralSlopes(SsweightError):
    """Ordinarity requires integral slopes in every weight step."""


class InducedPairingIllDefined(SsweightError):
    """im(d) does not pair to zero with ker(d); adjointness broken upstream."""


class InvalidParameters(SsweightError):
    """Scenario parameters outside their documented range."""


class SchemaError(SsweightError):
    """Input JSON does not match the documented schema."""
