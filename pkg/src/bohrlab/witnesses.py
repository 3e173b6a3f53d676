"""Extremal witness pairs, sharpness probes and randomized admissible samples.

Witnesses are the explicit pairs on which the sharp radii are attained.
Sampled pairs are ``h = phi o omega`` with ``omega = z * B1`` and dilatation
``omega_d = k * B2`` for random finite Blaschke products ``B1, B2``; ``phi``
is the class extremal (``1/(1-z)``, Koebe, ``f_alpha``).  Every sample is
validated against the coefficient lemmas before it is returned.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import NotAvailableError, ParameterDomainError, ProbeRangeError, SamplerError
from .functionals import HarmonicPair, Verdict, evaluate_inequality, required_target
from .radii import QuasiconformalParam, RadiusProblem, Theorem, make_problem, solve_radius
from .series import (
    Envelope,
    TruncatedSeries,
    compose_coeffs,
    concave_coefficients,
    concave_extremal,
    geometric,
    koebe,
)

CONVERGENCE_GUARD = 0.99
WITNESS_R_MAX = 0.98
SAMPLE_R_MAX = 0.5

# -- extremal witnesses ---------------------------------------------------------


@dataclass(frozen=True)
class WitnessSpec:
    theorem: Theorem
    K: float = 1.0
    alpha: Optional[float] = None
    phase: complex = 1.0 + 0.0j
    lam: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "theorem", Theorem.parse(self.theorem))
        if abs(abs(self.phase) - 1.0) > 1e-15:
            raise ParameterDomainError(f"phase must be unimodular, |phase|={abs(self.phase)!r}")
        QuasiconformalParam(self.K)


# theorem -> (pattern, default lambda); lambda None means 1/(2 alpha)
_WITNESSES = {
    Theorem.T31: ("half_plane", 1.0),
    Theorem.ThmF: ("half_plane", 1.0),
    Theorem.ThmD: ("shifted_geometric", 0.5),
    Theorem.T42: ("shifted_geometric", 0.5),
    Theorem.T43: ("geometric", 0.5),
    Theorem.ThmC: ("koebe", 0.25),
    Theorem.T41: ("koebe", 0.25),
    Theorem.T41R: ("koebe", 0.25),
    Theorem.T44: ("koebe", 0.25),
    Theorem.T32: ("koebe", 1.0),
    Theorem.ThmG: ("koebe", 1.0),
    Theorem.ThmH: ("f_alpha", None),
    Theorem.T51: ("f_alpha", None),
    Theorem.T52: ("f_alpha", None),
    Theorem.ThmI: ("f_alpha", None),
}


def build_witness(spec: WitnessSpec, M: int = 400, r_max: float = WITNESS_R_MAX) -> HarmonicPair:
    """Coefficient-explicit extremal pair with ``b_n = k * phase * a_n``.

    Patterns (``lam`` is the distance parameter):
    ``half_plane``: ``lam (1+z)/(1-z)``, ``a_n = 2 lam``;
    ``shifted_geometric``: ``1/(1-z)``, ``a_n = 1``, ``|phi(0)| = 1``;
    ``geometric``: ``z/(1-z)``; ``koebe``: ``4 lam z/(1-z)^2``;
    ``f_alpha``: ``h = f_alpha``, ``lam = 1/(2 alpha)``.
    """
    if spec.theorem not in _WITNESSES:
        raise NotAvailableError(f"no extremal witness catalogued for {spec.theorem.value}")
    if M < 1:
        raise ParameterDomainError(f"M must be >= 1, got {M}")
    pattern, lam = _WITNESSES[spec.theorem]
    k = QuasiconformalParam(spec.K).k
    alpha = None
    target = "univalent"
    if pattern == "f_alpha":
        alpha = 1.0 if spec.alpha is None else float(spec.alpha)
        a = concave_extremal(alpha, M, r_max)
        lam, phi0, target = 1.0 / (2.0 * alpha), 0.0, "concave"
    else:
        lam = lam if spec.lam is None else float(spec.lam)
        if pattern == "half_plane":
            a, phi0, target = geometric(M, r_max, scale=2 * lam, constant=lam), lam, "convex"
        elif pattern == "shifted_geometric":
            a, phi0, target = geometric(M, r_max), 1.0, "convex"
        elif pattern == "geometric":
            a, phi0, target = geometric(M, r_max, constant=0.0), 0.0, "convex"
        else:
            a, phi0 = koebe(M, r_max, scale=4 * lam), 0.0
    bc = k * spec.phase * np.asarray(a.coeffs, dtype=complex)
    bc[0] = 0.0
    if spec.phase == 1.0:
        bc = bc.real
    env = a.envelope
    b = TruncatedSeries(bc, r_max=r_max, envelope=Envelope(k * env.scale, env.power))
    return HarmonicPair(a, b, k_bound=k, lam=lam, phi0_abs=phi0, target=target, alpha=alpha)


# -- sharpness probes -----------------------------------------------------------


@dataclass(frozen=True)
class ProbeReport:
    theorem: str
    params: dict
    r0: float
    delta: float
    r_below: float
    r_above: float
    verdict_below: str
    verdict_above: str
    value_below: float
    value_above: float
    bound: float
    sharp: bool
    transition: Optional[bool]

    @property
    def ok(self) -> bool:
        if self.sharp:
            return bool(self.transition)
        return self.verdict_below == Verdict.HOLDS.value

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def sharpness_probe(
    theorem,
    K: float = 1.0,
    alpha: Optional[float] = None,
    mu: Optional[float] = None,
    delta: float = 1e-3,
    M: int = 400,
    N: Optional[int] = None,
    phase: complex = 1.0 + 0.0j,
    tol: float = 1e-12,
) -> ProbeReport:
    """Evaluate the witness functional at ``r0 (1 -/+ delta)``.

    For theorems marked sharp the probe expects ``holds`` below and ``fails``
    above; other theorems get a one-sided report (``transition`` is None).
    """
    if not 0.0 < delta < 0.1:
        raise ParameterDomainError(f"delta must lie in (0, 0.1), got {delta}")
    problem = make_problem(theorem, K=K, alpha=alpha, mu=mu, N=N)
    spec = WitnessSpec(problem.theorem, K=problem.K, alpha=problem.alpha, phase=phase)
    r0 = solve_radius(problem, tol=tol).estimate
    lo, hi = r0 * (1.0 - delta), r0 * (1.0 + delta)
    if hi >= CONVERGENCE_GUARD:
        raise ProbeRangeError(f"r0(1+delta)={hi} exceeds the convergence guard {CONVERGENCE_GUARD}")
    pair = build_witness(spec, M)
    below = evaluate_inequality(problem, pair, lo)
    above = evaluate_inequality(problem, pair, hi)
    transition = None
    if problem.sharp:
        transition = below.verdict is Verdict.HOLDS and above.verdict is Verdict.FAILS
    return ProbeReport(
        theorem=problem.theorem.value,
        params=problem.params(),
        r0=r0,
        delta=delta,
        r_below=lo,
        r_above=hi,
        verdict_below=below.verdict.value,
        verdict_above=above.verdict.value,
        value_below=below.functional.value,
        value_above=above.functional.value,
        bound=below.bound,
        sharp=problem.sharp,
        transition=transition,
    )


# -- admissible samples ---------------------------------------------------------


@dataclass(frozen=True)
class SampleSpec:
    """Recipe for one random admissible pair.

    ``class_tag`` is ``convex``, ``univalent`` or ``concave`` (then ``alpha``
    is required).  ``blaschke_degrees`` are the degrees of ``B1`` and ``B2``.
    Explicit ``omega`` / ``omega_d`` coefficient lists override the random
    draws (used for deterministic examples).
    """

    class_tag: str
    K: float = 1.0
    alpha: Optional[float] = None
    schwarz_seed: Optional[int | np.random.SeedSequence] = None
    dilatation_seed: Optional[int | np.random.SeedSequence] = None
    blaschke_degrees: tuple = (1, 1)
    zero_radius: float = 0.9
    omega: Optional[Sequence[complex]] = None
    omega_d: Optional[Sequence[complex]] = None

    def __post_init__(self):
        if self.class_tag not in ("convex", "univalent", "concave"):
            raise ParameterDomainError(f"unknown class tag {self.class_tag!r}")
        if self.class_tag == "concave" and self.alpha is None:
            raise ParameterDomainError("concave class requires alpha")
        if any(int(d) != d or d < 0 for d in self.blaschke_degrees) or len(self.blaschke_degrees) != 2:
            raise ParameterDomainError("blaschke_degrees must be two integers >= 0")
        if not 0.0 <= self.zero_radius < 1.0:
            raise ParameterDomainError("zero_radius must lie in [0, 1)")
        QuasiconformalParam(self.K)


def blaschke_coeffs(zeros: Sequence[complex], rotation: complex, L: int) -> np.ndarray:
    """Taylor coefficients ``c_0..c_L`` of ``rotation * prod (z - a)/(1 - conj(a) z)``."""
    out = np.zeros(L + 1, dtype=complex)
    out[0] = rotation
    n = np.arange(1, L + 1)
    for a in zeros:
        f = np.empty(L + 1, dtype=complex)
        f[0] = -a
        f[1:] = np.conj(a) ** (n - 1) * (1.0 - abs(a) ** 2)
        out = np.convolve(out, f)[: L + 1]
    return out


def _random_blaschke(rng: np.random.Generator, degree: int, radius: float, L: int) -> np.ndarray:
    rho = radius * np.sqrt(rng.random(degree))
    theta = 2 * math.pi * rng.random(degree)
    zeros = rho * np.exp(1j * theta)
    rotation = np.exp(2j * math.pi * rng.random())
    return blaschke_coeffs(zeros, rotation, L)


def _boundary_sup(c: np.ndarray, points: int = 2048) -> float:
    """Max modulus of the polynomial ``c`` on ``points`` equispaced boundary nodes."""
    m = max(points, c.size)
    vals = np.fft.ifft(np.concatenate((c, np.zeros(m - c.size))).astype(complex)) * m
    return float(np.max(np.abs(vals)))


def _class_extremal(tag: str, alpha: Optional[float], M: int):
    """(coefficients of phi, lam, |phi(0)|, envelope scale/power for a and for b/k)."""
    if tag == "convex":
        c = np.ones(M + 1)
        return c, 0.5, 1.0, Envelope(1.0, 0), Envelope(1.0, 1)
    if tag == "univalent":
        return np.arange(M + 1, dtype=float), 0.25, 0.0, Envelope(1.0, 1), Envelope(1.0, 2)
    A = concave_coefficients(alpha, M).values
    c = np.concatenate(([0.0], A))
    return c, 1.0 / (2.0 * alpha), 0.0, Envelope(1.0, 1), Envelope(1.0, 2)


_LEMMA_RADII = (0.1, 0.25, 1.0 / 3.0)
_AREA_RADII = (0.1, 0.25, 0.3)
_SLACK = 1e-12


def _fail(msg: str):
    raise SamplerError(f"sampled pair violates {msg}")


def sample_admissible(spec: SampleSpec, M: int = 200, r_max: float = SAMPLE_R_MAX) -> HarmonicPair:
    """Draw, build and validate one admissible harmonic pair of order ``M``."""
    if M < 16:
        raise ParameterDomainError(f"M must be >= 16, got {M}")
    k = QuasiconformalParam(spec.K).k
    L = 2 * M + 64
    d1, d2 = (int(d) for d in spec.blaschke_degrees)

    if spec.omega is not None:
        omega_full = np.zeros(L + 1, dtype=complex)
        given = np.asarray(spec.omega, dtype=complex)[: L + 1]
        omega_full[: given.size] = given
    else:
        rng = np.random.default_rng(spec.schwarz_seed)
        omega_full = np.concatenate(([0.0], _random_blaschke(rng, d1, spec.zero_radius, L - 1)))
    if spec.omega_d is not None:
        wd_full = np.zeros(L + 1, dtype=complex)
        given = np.asarray(spec.omega_d, dtype=complex)[: L + 1]
        wd_full[: given.size] = given
    else:
        rng = np.random.default_rng(spec.dilatation_seed)
        wd_full = k * _random_blaschke(rng, d2, spec.zero_radius, L)

    omega, wd = omega_full[: M + 1], wd_full[: M + 1]
    # Schwarz-function and dilatation bounds on the boundary, allowing for the
    # coefficients dropped by the truncation at M.
    if omega[0] != 0:
        _fail("omega(0) = 0")
    eta = float(np.sum(np.abs(omega_full[M + 1:])))
    if _boundary_sup(omega) > 1.0 + eta + 1e-9:
        _fail("sup |omega| <= 1 on the boundary")
    eta_d = float(np.sum(np.abs(wd_full[M + 1:])))
    if _boundary_sup(wd) > k + eta_d + 1e-9:
        _fail(f"sup |omega_d| <= k={k} on the boundary")

    phi, lam, phi0, env_a, env_b = _class_extremal(spec.class_tag, spec.alpha, M)
    a = compose_coeffs(phi.astype(complex), omega, M)
    # g' = omega_d h'  =>  n b_n = sum_j omega_d[j] (n-j) a_{n-j}
    hp = np.arange(1, M + 1) * a[1:]
    conv = np.convolve(wd, hp)[:M]
    b = np.zeros(M + 1, dtype=complex)
    b[1:] = conv / np.arange(1, M + 1)

    a_series = TruncatedSeries(a, r_max=r_max, envelope=env_a)
    b_series = TruncatedSeries(b, r_max=r_max, envelope=Envelope(k * env_b.scale, env_b.power))
    pair = HarmonicPair(
        a_series, b_series, k_bound=k, lam=lam, phi0_abs=phi0, target=spec.class_tag, alpha=spec.alpha
    )
    validate_sample(pair, phi)
    return pair


def validate_sample(pair: HarmonicPair, phi: np.ndarray) -> None:
    """Coefficient-lemma checks; every inequality compares a truncated side with
    the other side's truncation plus its rigorous tail."""
    a, b, k = pair.a, pair.b, pair.k_bound
    M = a.truncation_order
    n = np.arange(M + 1)
    absa = a.abs_coeffs
    # coefficient bounds of the subordinate function
    if pair.target == "convex":
        cap = np.full(M + 1, 2 * pair.lam)
    else:
        cap = np.abs(phi[: M + 1])
    if np.any(absa[1:] > cap[1:] * (1 + _SLACK) + _SLACK):
        _fail(f"|a_n| <= coefficient bound of the {pair.target} extremal")
    for r in _AREA_RADII:
        lhs = float(np.sum(n * b.abs_coeffs**2 * r ** (2 * n)))
        rhs = float(np.sum(n * absa**2 * r ** (2 * n))) + a.tail(r, weight=1) ** 2
        if lhs > k**2 * rhs * (1 + _SLACK) + _SLACK * 1e-6:
            _fail(f"the area inequality sum n|b_n|^2 r^2n <= k^2 sum n|a_n|^2 r^2n at r={r}")
    for r in _LEMMA_RADII:
        lhs = b.majorant(r, 1)
        rhs = a.majorant(r, 1) + a.tail(r)
        if lhs > k * rhs * (1 + _SLACK) + _SLACK * 1e-6:
            _fail(f"sum |b_n| r^n <= k sum |a_n| r^n at r={r}")
        phi_abs = np.abs(phi[: M + 1]) * r**n
        phi_tail = pair.a.tail(r)  # same envelope as the extremal's coefficients
        for N in (1, 2, 3):
            if a.majorant(r, N) > float(np.sum(phi_abs[N:])) * (1 + _SLACK) + phi_tail + _SLACK * 1e-6:
                _fail(f"the subordination majorant bound from n={N} at r={r}")


# -- falsification campaigns ----------------------------------------------------

CLASS_FOR_TARGET = {"convex": "convex", "univalent": "univalent", "concave": "concave"}


@dataclass(frozen=True)
class TrialResult:
    trial: int
    degrees: tuple
    verdict: str
    value: float
    tail_error: float
    bound: float


@dataclass
class CampaignReport:
    theorem: str
    params: dict
    trials: int
    seed: int
    M: int
    r_fraction: float
    r0: float
    r: float
    results: list = field(default_factory=list)

    @property
    def counts(self) -> dict:
        c = {v.value: 0 for v in Verdict}
        for t in self.results:
            c[t.verdict] += 1
        return c

    @property
    def findings(self) -> list:
        return [t for t in self.results if t.verdict == Verdict.FAILS.value]

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": self.params,
            "trials": self.trials,
            "seed": self.seed,
            "M": self.M,
            "r_fraction": self.r_fraction,
            "r0": self.r0,
            "r": self.r,
            "counts": self.counts,
            "results": [
                {**asdict(t), "degrees": list(t.degrees)} for t in self.results
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theorem", "K", "alpha", "mu", "N", "trials", "seed", "M", "r", "holds", "fails", "inconclusive"])
        p, c = self.params, self.counts
        w.writerow(
            [self.theorem, _g(p.get("K", 1.0)), _g(p.get("alpha")), _g(p.get("mu")), p.get("N", ""),
             self.trials, self.seed, self.M, _g(self.r), c["holds"], c["fails"], c["inconclusive"]]
        )
        return buf.getvalue()


def _g(x) -> str:
    return "" if x is None else format(float(x), ".15g")


def _trial_spec(problem: RadiusProblem, seq: np.random.SeedSequence) -> SampleSpec:
    s_seq, d_seq, deg_seq = seq.spawn(3)
    d1, d2 = (int(d) for d in np.random.default_rng(deg_seq).integers(0, 4, size=2))
    tag = required_target(problem.theorem)
    return SampleSpec(
        class_tag=tag,
        K=problem.K,
        alpha=problem.alpha if tag == "concave" else None,
        schwarz_seed=s_seq,
        dilatation_seed=d_seq,
        blaschke_degrees=(d1, d2),
    )


def _run_trials(problem: RadiusProblem, seqs: list, start: int, M: int, r: float) -> list:
    out = []
    for i, seq in enumerate(seqs, start=start):
        spec = _trial_spec(problem, seq)
        pair = sample_admissible(spec, M)
        chk = evaluate_inequality(problem, pair, r)
        out.append(
            TrialResult(i, spec.blaschke_degrees, chk.verdict.value, chk.functional.value,
                        chk.functional.tail_error, chk.bound)
        )
    return out


def falsify(
    theorem,
    trials: int = 1000,
    r_fraction: float = 0.99,
    seed: int = 42,
    K: float = 1.0,
    alpha: Optional[float] = None,
    mu: Optional[float] = None,
    N: Optional[int] = None,
    M: int = 200,
    jobs: int = 1,
    tol: float = 1e-12,
) -> CampaignReport:
    """Check the theorem's inequality on ``trials`` sampled pairs at ``r_fraction * r0``.

    Trial ``i`` draws from the ``i``-th child of ``SeedSequence(seed)``, so the
    report is identical for any ``jobs``.
    """
    if not 0.0 < r_fraction < 1.0:
        raise ParameterDomainError(f"r_fraction must lie in (0, 1), got {r_fraction}")
    if trials < 1:
        raise ParameterDomainError(f"trials must be >= 1, got {trials}")
    problem = make_problem(theorem, K=K, alpha=alpha, mu=mu, N=N)
    required_target(problem.theorem)
    r0 = solve_radius(problem, tol=tol).estimate
    r = r_fraction * r0
    seqs = np.random.SeedSequence(seed).spawn(trials)
    report = CampaignReport(problem.theorem.value, problem.params(), trials, seed, M, r_fraction, r0, r)
    if jobs <= 1:
        report.results = _run_trials(problem, seqs, 0, M, r)
        return report
    chunk = math.ceil(trials / jobs)
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        futures = [
            ex.submit(_run_trials, problem, seqs[s : s + chunk], s, M, r) for s in range(0, trials, chunk)
        ]
        for f in futures:
            report.results.extend(f.result())
    return report


def phase_sweep(theorem, count: int = 8, **probe_kwargs) -> list:
    """Sharpness probes with ``phase = exp(2 pi i j / count)``, ``j = 0..count-1``.

    The functionals depend on ``|b_n|`` only, so every phase is expected to
    give the same verdicts; the sweep records this rather than assuming it.
    """
    if count < 1:
        raise ParameterDomainError(f"phase count must be >= 1, got {count}")
    out = []
    for j in range(count):
        t = 2 * math.pi * j / count
        phase = complex(math.cos(t), math.sin(t))
        phase /= abs(phase)
        out.append(sharpness_probe(theorem, phase=phase, **probe_kwargs))
    return out
