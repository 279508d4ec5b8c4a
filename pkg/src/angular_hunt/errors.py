"""Exception types raised across the package."""


class InvalidGeometry(ValueError):
    """Non-finite or out-of-range coordinates, or a degenerate shape."""


class AmbiguousAtVertex(ValueError):
    """Angle membership queried at the hint vertex itself."""


class MoveAfterFound(RuntimeError):
    pass


class OracleDishonest(RuntimeError):
    """A hint was returned that does not contain the treasure."""


class BudgetExceeded(RuntimeError):
    pass


class StartOutsideRectangle(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


class NoBasicTransform(RuntimeError):
    pass


class CaseDispatchGap(RuntimeError):
    """No second-hint case matched in the critical branch of a reduction."""


class GuardExceeded(ValueError):
    pass


class NoFeasibleIndex(RuntimeError):
    pass


class TileBudgetExceeded(RuntimeError):
    pass


class LevelOverflow(ValueError):
    pass


class PaintGap(RuntimeError):
    """A hint at a tile center allowed no tile of the current level to be painted."""
