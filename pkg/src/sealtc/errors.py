"""Exception hierarchy shared by every calculus in the package."""


class SealError(Exception):
    """Base class for everything raised on purpose by this package."""


# configuration and syntax

class ConfigError(SealError, ValueError):
    pass


class PosetSyntaxError(ConfigError):
    pass


class DuplicateLabel(ConfigError):
    pass


class UnknownLabelInEdge(ConfigError):
    pass


class CycleAmongDistinctLabels(ConfigError):
    pass


class UnknownLabel(ConfigError):
    pass


class ParseError(SealError, ValueError):
    pass


# typing

class TypeCheckError(SealError):
    pass


class UnboundVariable(TypeCheckError):
    pass


class TypeMismatch(TypeCheckError):
    pass


class UnauthorizedUnseal(TypeCheckError):
    pass


class NotAFunction(TypeCheckError):
    pass


class NotAPair(TypeCheckError):
    pass


class NotASum(TypeCheckError):
    pass


class NotASeal(TypeCheckError):
    pass


class NotAMonad(TypeCheckError):
    pass


class ForeignConstruct(TypeCheckError):
    """A constructor that belongs to a different calculus."""


class BindNotPermitted(TypeCheckError):
    pass


class NotProtected(TypeCheckError):
    pass


class IllTyped(TypeCheckError):
    """A precondition of an operation required a well-typed input."""


# evaluation and translation

class FuelExhausted(SealError):
    pass


class NoEligibleKey(SealError):
    pass


class NoApplicableRule(SealError):
    pass


class SubformulaViolation(SealError):
    pass


class InternalSubformulaFailure(SealError):
    pass


class InvalidDerivation(SealError):
    pass


class OpenTerm(SealError):
    pass


class UnsupportedContext(SealError):
    pass
