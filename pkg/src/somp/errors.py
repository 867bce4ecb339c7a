"""Exception hierarchy. The CLI reports ``type(err).__name__`` on stderr."""


class SompError(Exception):
    """Base class for all domain errors."""


class InvalidUniverse(SompError):
    pass


class LengthMismatch(SompError):
    pass


class DuplicateEvent(SompError):
    pass


class InvalidSomp(SompError):
    def __init__(self, report):
        self.report = report
        shown = ", ".join(str(v) for v in report.violations[:5])
        more = len(report.violations) - 5
        if more > 0:
            shown += f", ... ({more} more)"
        super().__init__(shown)


class CapExceeded(SompError):
    pass


class InvalidBigsets(SompError):
    pass


class InvalidPartition(SompError):
    pass


class PointOutOfRange(SompError):
    pass


class LimitExceeded(SompError):
    pass


class NotAState(SompError):
    pass


class NotDeltaClosed(SompError):
    pass


class NotSeparating(SompError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"no state separates pair {witness}")


class NotAMorphism(SompError):
    pass


class NoIsomorphism(SompError):
    pass


class BudgetExceeded(SompError):
    pass


class HashMismatch(SompError):
    pass


class FormatError(SompError):
    pass
