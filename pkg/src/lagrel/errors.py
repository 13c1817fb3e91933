"""Exception hierarchy shared by all lagrel modules."""


class LagrelError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(LagrelError, ZeroDivisionError):
    pass


class BackendMismatch(LagrelError):
    """An exact decision procedure was invoked on a non-exact backend."""


class DimensionMismatch(LagrelError):
    pass


class NotSymmetric(LagrelError):
    pass


class NotOnCircle(LagrelError):
    pass


class EmptyRelation(LagrelError):
    pass


class NotAState(LagrelError):
    pass


class NotLagrangian(LagrelError):
    pass


class UnknownKind(LagrelError):
    pass


class InternalDisagreement(LagrelError):
    """Two independent decision procedures returned different verdicts."""


class NotQuasiReal(LagrelError):
    pass


class NotAQuantumCovariance(LagrelError):
    pass


class NotSymplectic(LagrelError):
    pass


class NotPositive(LagrelError):
    pass


class NotPositiveDefinite(LagrelError):
    pass


class IllFormedDiagram(LagrelError):
    pass


class SideConditionViolated(LagrelError):
    pass


class NotInFragment(LagrelError):
    pass


class UnknownGenerator(LagrelError):
    pass


class NegativeEpsilon(LagrelError):
    pass


class ZeroSqueeze(LagrelError):
    pass
