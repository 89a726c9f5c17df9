"""Exception types raised by the library."""


class HankelRaysError(Exception):
    """Base class for every error raised by hankelrays."""


class NotSymmetric(HankelRaysError):
    pass


class ZeroFunctional(HankelRaysError):
    pass


class DegreeOutOfRange(HankelRaysError):
    pass


class NoRelation(HankelRaysError):
    """The point evaluations are linearly independent in the requested degree."""


class RelationNotUnique(HankelRaysError):
    """The point evaluations satisfy more than one independent relation."""

    def __init__(self, message, dimension):
        super().__init__(message)
        self.dimension = dimension


class CoefficientZero(HankelRaysError):
    pass


class SearchExhausted(HankelRaysError):
    pass


class KernelMismatch(HankelRaysError):
    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


class RankOutOfRange(HankelRaysError):
    pass
