"""Exception types shared across the library."""


class CarlitzEulerError(Exception):
    """Base class for all library errors."""


class DivisionByNonunit(CarlitzEulerError):
    """Division was requested by an element that is not invertible."""


class PrecisionExhausted(CarlitzEulerError):
    """A value is indistinguishable from zero at the working precision,
    or a result would have no determined coefficient."""


class NotInSubring(CarlitzEulerError):
    """An element expected to descend to a subring failed to do so."""


class NormNotOne(CarlitzEulerError):
    """A cyclic-norm precondition (norm equal to 1) failed."""


class ResolventExhausted(CarlitzEulerError):
    """The randomized resolvent retry budget was exhausted."""


class NotNormCoherent(CarlitzEulerError):
    """A unit sequence failed the norm-coherence invariant."""


class CertificationFailed(CarlitzEulerError):
    """Independent solver routes disagreed, or iterates failed to stabilize."""


class PreconditionFailed(CarlitzEulerError):
    """An operation-specific precondition was violated."""


class NotCoprime(CarlitzEulerError):
    """A residue was required to be coprime to the modulus."""


class ZeroSection(CarlitzEulerError):
    """The zero residue class was passed where a nonzero one is required."""


class NotInvertibleOrder(CarlitzEulerError):
    """The group order is not invertible in the coefficient ring."""


class NotSplit(CarlitzEulerError):
    """A prime required to split completely does not."""


class NotSurjective(CarlitzEulerError):
    """A homomorphism required to be surjective is not."""


class DuplicatePrime(CarlitzEulerError):
    """The same prime occurs twice in a configuration."""


class InvarianceFailed(CarlitzEulerError):
    """A Galois-invariance certificate failed."""


class DescentFailed(CarlitzEulerError):
    """Descent of a class to the base field failed."""


class WNotInjective(CarlitzEulerError):
    """A witness class lands in local M-th powers; the prime must be skipped."""


class RamifiedUnsupported(CarlitzEulerError):
    """No local model is available at this ramified prime."""


class DegreeCapExceeded(CarlitzEulerError):
    """The ambient field degree exceeds the configured cap."""


class VerificationFailed(CarlitzEulerError):
    """An internal re-derivation check failed (indicates an arithmetic bug)."""


class ConfigError(CarlitzEulerError):
    """Invalid CLI or suite configuration."""
