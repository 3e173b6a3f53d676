"""Certified Bohr-type radii for harmonic and quasiconformal mappings.

Radii are roots of explicit equations, isolated with Sturm sequences over the
rationals or by monotone bisection; inequalities are checked on extremal
witnesses and on randomly sampled admissible pairs.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BohrLabError,
    CatalogError,
    CatalogInconsistencyError,
    NotAvailableError,
    ParameterDomainError,
    UsageError,
)
from .functionals import (  # noqa: E402
    FunctionalValue,
    HarmonicPair,
    Verdict,
    area_term,
    check_inequality,
    majorant_sum,
    refined_sum,
    rogosinski_sum,
)
from .polyroots import CertifiedRoot, RationalPolynomial, isolate_root, sturm_count  # noqa: E402
from .radii import RadiusProblem, Theorem, cross_check_T32, make_problem, solve_radius  # noqa: E402
from .series import TruncatedSeries, concave_coefficients  # noqa: E402
from .witnesses import WitnessSpec, build_witness, falsify, sample_admissible, sharpness_probe  # noqa: E402

__all__ = [
    "BohrLabError",
    "CatalogError",
    "CatalogInconsistencyError",
    "CertifiedRoot",
    "FunctionalValue",
    "HarmonicPair",
    "NotAvailableError",
    "ParameterDomainError",
    "RadiusProblem",
    "RationalPolynomial",
    "Theorem",
    "TruncatedSeries",
    "UsageError",
    "Verdict",
    "WitnessSpec",
    "area_term",
    "build_witness",
    "check_inequality",
    "concave_coefficients",
    "cross_check_T32",
    "falsify",
    "isolate_root",
    "majorant_sum",
    "make_problem",
    "refined_sum",
    "rogosinski_sum",
    "sample_admissible",
    "sharpness_probe",
    "solve_radius",
    "sturm_count",
]
