"""Exception types shared across the solvers."""


class WiretapError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInstance(WiretapError, ValueError):
    """A channel, budget or QoS value violates its invariants."""


class QosInfeasible(WiretapError):
    """User 2's SINR target cannot be met even with user 1 silent."""


class InfeasibleP1(WiretapError):
    """The SIC floor on P1 exceeds every admissible cap."""


class EmptyInterval(WiretapError, ValueError):
    pass


class DenominatorNonPositive(WiretapError, ValueError):
    pass


class ZeroGainG22(WiretapError, ValueError):
    pass


class ParseError(WiretapError, ValueError):
    """Malformed scenario or campaign file."""
