"""Exception hierarchy shared by every bohrlab module."""


class BohrLabError(Exception):
    """Base class for all bohrlab errors."""


class ParameterDomainError(BohrLabError, ValueError):
    """A parameter (K, alpha, mu, N, a0, lambda, r) lies outside its domain."""


class ArgumentError(BohrLabError, ValueError):
    """A structurally invalid argument (bad truncation order, mismatched series)."""


class CatalogError(BohrLabError, KeyError):
    """Unknown theorem or closed-form identifier."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class DegenerateInputError(BohrLabError, ValueError):
    """The zero polynomial was passed where a nonzero one is required."""


class EndpointError(BohrLabError, ValueError):
    """An interval endpoint is still a root after the perturbation retry."""


class UniquenessError(BohrLabError, ValueError):
    """The Sturm count on the isolating interval is not exactly one."""


class BracketingError(BohrLabError, ValueError):
    """Bisection endpoints do not have opposite signs."""


class SubordinationError(BohrLabError, ValueError):
    """Composition requested with an inner series whose constant term is nonzero."""


class CatalogInconsistencyError(BohrLabError):
    """A theorem's defining equation does not behave as the catalog claims.

    Raised, never patched: a root count different from one, or a root that
    falls outside the stated containment interval.
    """


class NotAvailableError(BohrLabError):
    """No witness or functional is catalogued for the requested theorem."""


class UsageError(BohrLabError, ValueError):
    """Pair hypotheses do not match the theorem being checked."""


class SamplerError(BohrLabError, RuntimeError):
    """A sampled pair failed one of its admissibility invariants."""


class ProbeRangeError(BohrLabError, ValueError):
    """A sharpness probe would evaluate outside the convergence guard."""
