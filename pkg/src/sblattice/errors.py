"""Exception hierarchy shared by every module in the package."""


class SBLatticeError(Exception):
    pass


class InvalidInput(SBLatticeError, ValueError):
    """Malformed or out-of-contract input (CLI exit status 3)."""


class CycleDetected(InvalidInput):
    pass


class RedundantCover(InvalidInput):
    def __init__(self, cover, message=None):
        self.cover = cover
        super().__init__(message or f"cover {cover} is implied by a longer path")


class IdOutOfRange(InvalidInput):
    pass


class NotComparable(InvalidInput):
    pass


class NotUnique(SBLatticeError):
    """A pair has no unique join or meet (the poset is not a lattice there)."""

    def __init__(self, a, b, mode: str):
        self.a, self.b, self.mode = a, b, mode
        super().__init__(f"{mode} of {a} and {b} is not unique")


class ParamTooLarge(InvalidInput):
    pass


class UnsupportedType(InvalidInput):
    pass


class NotVerified(SBLatticeError):
    """Classification requested on a labeling that is not a certified SB-labeling."""


class BudgetExceeded(SBLatticeError):
    """An enumeration ran past its configured cap (CLI exit status 2).

    ``partial`` holds how much was produced before giving up.
    """

    def __init__(self, message: str, partial: int = 0):
        self.partial = partial
        super().__init__(f"{message} (partial count {partial})")


class IntervalTooLarge(BudgetExceeded):
    pass


class FaceBudgetExceeded(BudgetExceeded):
    pass


class AtomCountExceeded(BudgetExceeded):
    pass


class IdealCountExceeded(BudgetExceeded):
    pass
