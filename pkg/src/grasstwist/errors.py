"""Exception types shared across grasstwist."""


class GrasstwistError(Exception):
    """Base class for all library errors."""


class InvalidIndex(GrasstwistError, ValueError):
    """A Pluecker index repeats an entry or falls outside [n]."""


class ArityMismatch(GrasstwistError, ValueError):
    """Wrong number of indices / vectors / columns for the operation."""


class NotAMonomial(GrasstwistError, ValueError):
    """Division of a Laurent expression by something that is not a +-1 monomial."""


class PoleAtPoint(GrasstwistError, ZeroDivisionError):
    """A Laurent expression has a negative power of an indeterminate that vanishes."""


class UnboundSymbol(GrasstwistError, KeyError):
    """An indeterminate has no value in the supplied evaluation."""


class NotReduced(GrasstwistError, ValueError):
    """Face labels of a plabic graph collide or have unequal sizes."""


class IllegalMove(GrasstwistError, ValueError):
    """A square move was requested at a face where it is not allowed."""


class InvalidGraph(GrasstwistError, ValueError):
    """A plabic graph (or graph file) violates a structural invariant."""


class FrozenVertex(GrasstwistError, ValueError):
    """Mutation was requested at a frozen quiver vertex."""


class DegeneratePoint(GrasstwistError, ZeroDivisionError):
    """An exchange relation divided by zero at the evaluation point."""


class Budget(GrasstwistError, RuntimeError):
    """A search exceeded its configured guard."""


class SizeGuard(GrasstwistError, ValueError):
    """An exhaustive search was requested on an instance that is too large."""


class InvalidTableau(GrasstwistError, ValueError):
    """A tableau is not standard or has the wrong shape."""


class IncompatibleBoundary(GrasstwistError, ValueError):
    """Boundary data of a web does not match a Pluecker triple."""
