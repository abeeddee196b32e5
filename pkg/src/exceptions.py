from src.conf import messages

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_INVALID = 3


class ObliqueKitError(Exception):
    """
    Base error of the package. Like an HTTP error it carries a ``detail`` string
    and the process exit code the command line reports for it.
    """
    exit_code = EXIT_INVALID
    default_detail = "Invalid input"

    def __init__(self, detail: str | None = None):
        self.detail = detail or self.default_detail
        super().__init__(self.detail)


class ParseError(ObliqueKitError):
    exit_code = EXIT_PARSE
    default_detail = messages.PARSE_ERROR


class InvalidInput(ObliqueKitError):
    pass


class NotPSD(InvalidInput):
    default_detail = messages.NOT_PSD


class NotIdempotent(InvalidInput):
    default_detail = messages.NOT_IDEMPOTENT


class NotComplementary(InvalidInput):
    default_detail = messages.NOT_COMPLEMENTARY


class Trivial(InvalidInput):
    default_detail = messages.TRIVIAL_PAIR


class NonIdentityH(InvalidInput):
    default_detail = messages.NON_IDENTITY_H


class DegenerateSubspace(InvalidInput):
    default_detail = messages.DEGENERATE_SUBSPACE


class SingularGram(InvalidInput):
    default_detail = messages.SINGULAR_GRAM


class SelfLoop(InvalidInput):
    default_detail = messages.SELF_LOOP


class Disconnected(InvalidInput):
    default_detail = messages.DISCONNECTED


class TooLargeForOracle(InvalidInput):
    default_detail = messages.TOO_LARGE_FOR_ORACLE


class WrongTopology(InvalidInput):
    default_detail = messages.WRONG_TOPOLOGY


class ShortCircuit(InvalidInput):
    default_detail = messages.SHORT_CIRCUIT


class InconsistentDrive(InvalidInput):
    default_detail = messages.INCONSISTENT_DRIVE


class AlgebraViolation(InvalidInput):
    default_detail = messages.ALGEBRA_VIOLATION

    def __init__(self, detail: str | None = None, residual: float = float("nan")):
        self.residual = residual
        super().__init__(detail)
