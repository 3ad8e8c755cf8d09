"""Exception hierarchy shared by all modules."""


class PadicRigError(Exception):
    """Base class for every error raised by this package."""


# -- p-adic scalars and cyclotomic extensions ------------------------------

class PrecisionExhausted(PadicRigError):
    """A value is zero at working precision but an exact answer was demanded."""


class NotAUnit(PadicRigError):
    """Teichmuller lift requested for a non-unit."""


class NotOneUnit(PadicRigError):
    """p-adic logarithm requested outside the one-units."""


class LevelDecrease(PadicRigError):
    """Attempted embedding of a cyclotomic level into a strictly lower one."""


class NotIntegral(PadicRigError):
    """A Z_p-integral value was required but the input has a pole at p."""


# -- power series ------------------------------------------------------------

class ZeroSeries(PadicRigError):
    """The series is indistinguishable from zero at working precision."""


class TruncationTooShort(PadicRigError):
    """No unit coefficient is visible within the stored truncation."""


class NotInMaximalIdeal(PadicRigError):
    """Evaluation point does not have positive valuation."""


# -- Newton polygons ---------------------------------------------------------

class NotMonic(PadicRigError):
    """Newton polygon construction requires a unit leading coefficient."""


# -- exact cyclotomic arithmetic ----------------------------------------------

class DomainError(PadicRigError):
    """Argument outside the documented domain of the operation."""


class NotFound(PadicRigError):
    """Bounded search completed without finding a representation."""


class LevelError(PadicRigError):
    """Quotient level is not strictly below the input level."""


# -- rigidity / recovery -------------------------------------------------------

class NotMonomial(PadicRigError):
    """A sample value is not a root of unity times a power of its zeta."""


class InconsistentSamples(PadicRigError):
    """Per-sample exponents fail to cohere across one level."""


class NotDivisible(PadicRigError):
    """A character sum is not exactly divisible by the level size."""


class SupportTooLarge(PadicRigError):
    """More nonzero Fourier residues than the declared term bound."""


class LevelMismatch(PadicRigError):
    """Supports of consecutive levels fail to refine compatibly."""


class DegenerateInput(PadicRigError):
    """Zero coefficients or colliding exponents in a Vandermonde selection."""


class SingularSystem(PadicRigError):
    """Internal error: a certified-nonsingular system came out singular."""


# -- modular forms --------------------------------------------------------------

class ClassNumberNotOne(PadicRigError):
    """Theta construction is implemented for class-number-one fields only."""


class IllDefinedCharacter(PadicRigError):
    """Finite part fails the unit-compatibility needed to descend to ideals."""


class InertPrime(PadicRigError):
    """The prime is inert in the CM field."""


class RamifiedPrime(PadicRigError):
    """The prime ramifies in the CM field or divides the conductor data."""


class NoUnitRoot(PadicRigError):
    """Both roots of the Hecke polynomial at p have positive valuation."""


class ZeroUpEigenvalue(PadicRigError):
    """a_p = 0 is outside the slope bound's hypothesis."""


class NonCyclotomicCoefficients(PadicRigError):
    """A coefficient falls outside the supported cyclotomic/quadratic fields."""


class NotAFullOrbit(PadicRigError):
    """Input pairs are not stable under the Galois group fixing the character field."""


class Inconclusive(PadicRigError):
    """An interval comparison straddles the bound even at raised precision."""


class UnsupportedPlace(PadicRigError):
    """The requested p-adic embedding needs an extension outside the cyclotomic tower."""
