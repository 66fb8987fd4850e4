"""Exception hierarchy shared by all adjq modules."""


class AdjqError(Exception):
    """Base class for every error raised by this package."""


class InputError(AdjqError):
    """Malformed file, unparsable scalar, or otherwise invalid input data."""


class FieldMismatch(AdjqError):
    """Operands live over different ground fields."""


class ShapeError(AdjqError):
    """Matrix or ambient dimensions are incompatible."""


class NotContained(AdjqError):
    """A subspace required to contain another does not."""


class NotPointed(AdjqError):
    """The coradical does not split into one-dimensional simple pieces."""


class NotGroupLike(AdjqError):
    """A vector expected to be group-like is not one."""


class BaseMismatch(AdjqError):
    """Comodules over different base coalgebras were combined."""


class NotCosemisimple(AdjqError):
    """A coalgebra required to be cosemisimple is not."""


class NotVanishingOnCoradical(AdjqError):
    """A bicomodule map required to kill the coradical does not."""


class TruncationTooSmall(AdjqError):
    """The requested truncation degree does not capture the whole object."""


class SplittingObstruction(AdjqError):
    """A splitting guaranteed by theory could not be constructed (bug or bad input)."""


class NotCongruentToIdentity(AdjqError):
    """invert-mod-congruence was called on a map not congruent to the identity."""


class NotInjective(AdjqError):
    """A map required to be injective has a nonzero kernel."""


class NotAdmissible(AdjqError):
    """The image of the map does not contain degree <= 1 of the path coalgebra."""


class RadicalUndecided(AdjqError):
    """No sound method applied; the Jacobson radical was left undecided."""


class DecompositionUndecided(AdjqError):
    """Eigenvalue search exceeded its exact-arithmetic budget; no verdict."""


class NotHomogeneous(AdjqError):
    """The ideal is not a sum of its graded components."""


class NotRelationIdeal(AdjqError):
    """The ideal is not contained in the square of the radical."""


class NormalizationRequired(AdjqError):
    """Presentations disagree on their degree-zero parts."""


class NoLift(AdjqError):
    """A linear lifting problem guaranteed solvable by theory has no solution."""
