class TorusPmraError(Exception):
    pass


class ValidationError(TorusPmraError):
    """The caller supplied input outside an operation's domain."""


class InvalidMatrix(ValidationError):
    pass


class SingularMatrix(ValidationError):
    pass


class NotExpanding(ValidationError):
    pass


class NotUnimodular(ValidationError):
    pass


class NonIntegerConjugate(ValidationError):
    pass


class NotCoprime(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class UnsupportedTwistPattern(ValidationError):
    pass


class UnsupportedDilation(ValidationError):
    pass


class InvalidModuleDescriptor(ValidationError):
    pass


class QuasiPeriodMismatch(ValidationError):
    pass


class DepthZero(ValidationError):
    pass


class NotOrthonormal(ValidationError):
    pass


class InvalidGrid(ValidationError):
    pass


class ConfigurationError(ValidationError):
    pass


class LevelOverflow(ValidationError):
    pass


class NonSummableDecay(TorusPmraError):
    pass


class ExactArithmeticOverflow(TorusPmraError):
    pass


class SerializationError(TorusPmraError):
    pass
