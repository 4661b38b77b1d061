"""Exception hierarchy shared by every ribetor module."""


class RibetorError(Exception):
    """Base class for all library errors."""


class NotPrime(RibetorError, ValueError):
    pass


class DegreeZero(RibetorError, ValueError):
    pass


class FieldTooLarge(RibetorError, ValueError):
    pass


class CtxMismatch(RibetorError, TypeError):
    pass


class DivisionByZero(RibetorError, ZeroDivisionError):
    pass


class ZeroElement(RibetorError, ValueError):
    pass


class TooLarge(RibetorError, ValueError):
    pass


class NotFound(RibetorError, LookupError):
    pass


class BadCharacteristic(RibetorError, ValueError):
    pass


class CurveMismatch(RibetorError, ValueError):
    pass


class NotOnCurve(RibetorError, ValueError):
    pass


class IncompatibleGenerator(RibetorError, ValueError):
    pass


class UnsupportedShape(RibetorError, ValueError):
    pass


class OnLine(RibetorError, ArithmeticError):
    """The evaluation point lies in the support of the line's divisor."""


class MillerDegenerate(RibetorError, ArithmeticError):
    """An intermediate Miller line vanished at the evaluation point."""


class SupportHit(RibetorError, ArithmeticError):
    """A reduction step collided with a marked evaluation point."""


class ExhaustedRetries(RibetorError, RuntimeError):
    pass


class BadOrbit(RibetorError, ValueError):
    """The torsion point lies in one of the excluded kernels."""


class HypothesisViolated(RibetorError, ValueError):
    def __init__(self, condition, detail=""):
        self.condition = condition
        msg = f"hypothesis violated: {condition}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NotTorsion(RibetorError, ValueError):
    pass


class NotAMorphism(RibetorError, ValueError):
    pass


class SingularAutomorphy(RibetorError, ArithmeticError):
    pass


class ConfigError(RibetorError, ValueError):
    pass
