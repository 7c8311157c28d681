"""Shared guard-rail exceptions."""


class OracleBoundExceeded(ValueError):
    """A brute-force oracle was asked to run beyond its configured bound."""


class BudgetExceeded(ValueError):
    """The naive tuple counter was asked for more work than its budget."""


class DegenerateJet(ValueError):
    """A closed form that assumes a smooth point got a zero-gradient jet."""


class EmptyCurve(ValueError):
    """An operation that needs at least one curve point got an empty curve."""


class EmptyHistogram(ValueError):
    """A histogram with no mass cannot be compared to a distribution."""


class RangeTooLarge(ValueError):
    """A scatter scan range beyond the output-size guard."""
