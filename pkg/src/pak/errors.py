"""Exception hierarchy shared by every pak module."""


class PakError(Exception):
    pass


class PrecisionExhausted(PakError):
    """Not enough tracked digits to finish the requested computation."""


class ZeroArgument(PakError):
    pass


class FieldMismatch(PakError):
    pass


class ReduciblePolynomial(PakError):
    pass


class UnsupportedExtension(PakError):
    """Irreducible input whose field is not reachable as a pure step; build it as a tower."""


class NoSplitting(PakError):
    pass


class WindowUnderflow(PakError):
    """A Laurent window became too short for the requested operation."""


class LogTermPresent(PakError):
    pass


class BadSubstitution(PakError):
    pass


class SplittingFieldTooLarge(PakError):
    pass


class NotThirdKindFamily(PakError):
    pass


class OverlappingSupport(PakError):
    pass


class MissingTableEntry(PakError):
    pass


class DegreeMismatch(PakError):
    pass


class OracleFailure(PakError):
    pass


class UnknownPlace(PakError):
    pass


class MissingOracle(PakError):
    pass


class MissingIngredient(PakError):
    pass


class NonMonogenic(PakError):
    pass


class NonSupported(PakError):
    """Requested number-field configuration is outside the declared scope."""
