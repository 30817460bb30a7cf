"""Exception hierarchy shared by every module."""


class CGSError(Exception):
    """Base class for all errors raised by cgsieve."""


class InputError(CGSError):
    pass


class NotMonic(InputError):
    pass


class Reducible(InputError):
    pass


class DegreeTooSmall(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


class ZeroElement(InputError):
    pass


class BoundTooSmall(InputError):
    pass


class UnsupportedPrime(CGSError):
    """Valuation requested at a prime where Z[theta] is not certified maximal."""


class RankDeficient(CGSError):
    def __init__(self, missing_columns, rank=None, ncols=None):
        self.missing_columns = list(missing_columns)
        self.rank = rank
        self.ncols = ncols
        super().__init__(
            f"relation matrix rank {rank} < {ncols}; "
            f"columns never hit: {self.missing_columns}"
        )


class NoSolution(CGSError):
    pass


class DomainError(InputError):
    pass


class WrongRegime(InputError):
    pass


class HintViolatesClassD(InputError):
    pass


class ScheduleInfeasible(CGSError):
    def __init__(self, achieved, target):
        self.achieved = achieved
        self.target = target
        super().__init__(f"e*s_l = {achieved:.6g} exceeds c_b = {target:.6g}")


class ReductionFailed(CGSError):
    pass


class ZeroIdeal(InputError):
    pass


class BudgetExhausted(CGSError):
    pass


class SieveBudgetExhausted(BudgetExhausted):
    pass


class DescentBudgetExhausted(BudgetExhausted):
    pass


class NotPrincipalInLattice(CGSError):
    pass


class HashMismatch(InputError):
    pass


class OracleDomain(InputError):
    pass
