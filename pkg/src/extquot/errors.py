"""Exception hierarchy for extquot."""


class ExtQuotError(Exception):
    """Base class for every error raised by this package."""


class NonUnimodular(ExtQuotError):
    pass


class ClosureExceedsBound(ExtQuotError):
    """Group closure did not terminate within the element bound."""


class NotAMember(ExtQuotError):
    pass


class RankMismatch(ExtQuotError):
    pass


class NotFixed(ExtQuotError):
    """A point was expected to be fixed by a group element but is not."""


class GridNotStable(ExtQuotError):
    """Some matrix entry lies outside {-1, 0, 1}."""


class NotOnComponent(ExtQuotError):
    pass


class ZeroParameter(ExtQuotError):
    pass


class SizeMismatch(ExtQuotError):
    pass
