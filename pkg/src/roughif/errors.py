class RoughIFError(ValueError):
    """Base class for every error this package raises on bad input."""


class ValidationError(RoughIFError):
    pass


class MissingElement(ValidationError):
    pass


class UniverseMismatch(RoughIFError):
    pass


class CutParamsOutOfJ(ValidationError):
    pass


class KindMismatch(ValidationError):
    pass


class UnknownSet(ValidationError):
    pass


class UnknownAttribute(ValidationError):
    pass


class DuplicateObjectId(ValidationError):
    pass


class UnknownProperty(RoughIFError):
    pass


class SpaceTooLarge(RoughIFError):
    pass
