"""Independent residual checks for generators, flows, and regime maps.

Oracles here are built from two primitives only, the raw exponential
series and repeated matrix or matrix-vector multiplication, never from
the closed-form exponential or the flow evaluator they validate.

``series_exp`` sums the series on an exactly halved argument and squares
back up.  The raw 40-term sum is a valid oracle only while its truncation
tail is negligible (eigenvalue magnitude below roughly 8); large-branch
generators carry eigenvalues past 7*pi where the raw sum misses the true
exponential by orders of magnitude and double precision could not carry
the cancellation anyway.  Halving is exact in binary floating point and
squaring is plain multiplication, so independence from the closed form
is preserved at every scale.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace

from .algebra import Mat2C, max_diff, taylor_exp
from .classifier import CaseTag, classify
from .errors import UnknownIntegrator
from .flow import continuous_state, sample_times, state_deviation, PhaseState
from .integrators import TransitionMatrix, custom, make, vp
from .shadow import (
    CaseIIParams,
    Generator,
    ShadowHamiltonian,
    generators_for,
    hamiltonian_from_generator,
)

DEFAULT_SEED = 1729
EXP_TOL = 1e-9
TRACE_TOL = 1e-10
COINCIDENCE_TOL = 1e-8
CONSERVATION_TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool

    @classmethod
    def of(cls, name: str, residual: float, tolerance: float) -> "CheckResult":
        return cls(name, residual, tolerance, residual <= tolerance)


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "residual": c.residual,
                 "tolerance": c.tolerance, "passed": c.passed}
                for c in self.checks
            ],
        }


def report_table(reports: list[VerificationReport]) -> str:
    """Plain-text residual table, one row per check."""
    rows = [f"{'subject':<42} {'check':<30} {'residual':>12} {'tol':>9} ok"]
    for rep in reports:
        for c in rep.checks:
            rows.append(
                f"{rep.subject:<42} {c.name:<30} {c.residual:>12.3e} "
                f"{c.tolerance:>9.0e} {'PASS' if c.passed else 'FAIL'}"
            )
    return "\n".join(rows)


def series_exp(z: Mat2C, terms: int = 40) -> Mat2C:
    """Exponential through the raw series on an exactly halved argument.

    Halve z (exact scaling by powers of two) until its entries are at
    most 1/2, sum the series, then square back; the truncation tail of
    the halved sum is below 1e-60.
    """
    halvings = 0
    w = z
    while w.max_abs() > 0.5 and halvings < 64:
        w = w.scaled(0.5)
        halvings += 1
    result = taylor_exp(w, terms)
    for _ in range(halvings):
        result = result @ result
    return result


def _orbit_oracle(r: TransitionMatrix, q0: float, p0: float, steps: int) -> list[PhaseState]:
    """Repeated matrix-vector multiplication, independent of the flow code."""
    q, p = q0, p0
    states = [PhaseState(complex(q), complex(p), 0.0)]
    for n in range(1, steps + 1):
        q, p = r.apply(q, p)
        states.append(PhaseState(complex(q), complex(p), n * r.tau))
    return states


def check_exponential(g: Generator, r: TransitionMatrix) -> VerificationReport:
    """exp(Z) = R through the series oracle, plus tracelessness."""
    residual = max_diff(series_exp(g.matrix), r.as_mat2c())
    return VerificationReport(
        f"{r.label} tau={r.tau:g} m={g.branch}",
        (
            CheckResult.of("exp(Z)=R (series oracle)", residual, EXP_TOL),
            CheckResult.of("traceless Z", abs(g.matrix.trace()), TRACE_TOL),
        ),
    )


def check_coincidence(g: Generator, r: TransitionMatrix, trials: int = 20,
                      seed: int = DEFAULT_SEED) -> VerificationReport:
    """Continuous flow against the discrete orbit at t = 0, tau, ..., 20*tau."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(trials):
        q0 = rng.uniform(-2.0, 2.0)
        p0 = rng.uniform(-2.0, 2.0)
        discrete = _orbit_oracle(r, q0, p0, 20)
        for ref in discrete:
            got = continuous_state(g, q0, p0, ref.t)
            worst = max(worst, state_deviation(got, ref))
    return VerificationReport(
        f"{r.label} tau={r.tau:g} m={g.branch}",
        (CheckResult.of("discrete/continuous coincidence", worst, COINCIDENCE_TOL),),
    )


def _drift(h: ShadowHamiltonian, g: Generator, q0: float, p0: float) -> float:
    """Relative drift of H over [0, 10*tau].

    The denominator switches from |H(0)| to the magnitude sum of the
    three quadratic terms once the latter dominates, so that diverging
    orbits are held to the precision their scale admits.
    """
    h0 = h.evaluate(q0, p0)
    worst = 0.0
    for t in sample_times(10.0 * g.tau, g.tau / 20.0):
        s = continuous_state(g, q0, p0, t)
        drift = abs(h.evaluate(s.q, s.p) - h0)
        if drift == 0.0:
            continue
        term_scale = (abs(h.c_pp * s.p * s.p) + abs(h.c_qq * s.q * s.q)
                      + abs(h.c_pq * s.p * s.q))
        worst = max(worst, drift / max(abs(h0), 2.2e-6 * term_scale, 1e-300))
    return worst


def check_conservation(h: ShadowHamiltonian, g: Generator, trials: int = 5,
                       seed: int = DEFAULT_SEED) -> VerificationReport:
    """H is constant along its own flow."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(trials):
        q0 = rng.uniform(-2.0, 2.0)
        p0 = rng.uniform(-2.0, 2.0)
        worst = max(worst, _drift(h, g, q0, p0))
    return VerificationReport(
        f"flow<{h.case}> tau={h.tau:g} m={h.branch}",
        (CheckResult.of("H conserved along flow", worst, CONSERVATION_TOL),),
    )


def locate_vp_critical_tau(lo: float = 2.0, hi: float = 3.0) -> float:
    """Bisect trace(vp(tau)) = -2 on (lo, hi)."""
    flo = vp(lo).trace() + 2.0
    fhi = vp(hi).trace() + 2.0
    if flo * fhi > 0:
        raise ValueError(f"trace + 2 does not change sign on ({lo}, {hi})")
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if mid in (lo, hi):
            break
        fmid = vp(mid).trace() + 2.0
        if flo * fmid <= 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return (lo + hi) / 2.0


def _expected_euler_like(tau: float) -> CaseTag:
    if abs(tau - 2.0) <= 1e-9:
        return CaseTag.IIIB
    return CaseTag.IA if tau < 2.0 else CaseTag.IC


def _expected_double_euler(tau: float) -> CaseTag:
    if abs(tau - 2.0 * math.sqrt(2.0)) <= 1e-9:
        return CaseTag.II_MINUS
    if abs(tau - 4.0) <= 1e-9:
        return CaseTag.IIIA
    return CaseTag.IB if tau > 4.0 else CaseTag.IA


EXPECTED_REGIMES = {
    "euler": _expected_euler_like,
    "velocity-verlet": _expected_euler_like,
    "position-verlet": _expected_euler_like,
    "double-euler": _expected_double_euler,
}


def check_regime_map(integrator: str, tau_grid: list[float]) -> VerificationReport:
    """Classification over a grid against the known regime map.

    For "vp" no closed regime map is asserted; instead the critical
    increment is located by bisection and must classify as iii-b, the
    failure a composite of two distinct steps can still exhibit.
    """
    if integrator == "vp":
        critical = locate_vp_critical_tau()
        tag, _ = classify(vp(critical))
        return VerificationReport(
            "vp regime",
            (
                CheckResult.of(f"critical tau={critical:.12g} trace=-2",
                               abs(vp(critical).trace() + 2.0), 1e-9),
                CheckResult.of("critical tau classifies iii-b",
                               0.0 if tag is CaseTag.IIIB else 1.0, 0.0),
            ),
        )
    try:
        expected = EXPECTED_REGIMES[integrator]
    except KeyError:
        known = ", ".join(sorted(EXPECTED_REGIMES) + ["vp"])
        raise UnknownIntegrator(f"{integrator!r}; known: {known}") from None
    checks = []
    for tau in tau_grid:
        tag, _ = classify(make(integrator, tau))
        want = expected(tau)
        checks.append(CheckResult.of(f"tau={tau:g} -> {want}",
                                     0.0 if tag is want else 1.0, 0.0))
    return VerificationReport(f"{integrator} regime", tuple(checks))


def _perturbed(g: Generator, eps: float) -> Generator:
    if eps == 0.0:
        return g
    z = g.matrix
    return replace(g, matrix=Mat2C(z.e11 + eps, z.e12, z.e21, z.e22))


def full_suite(seed: int = DEFAULT_SEED, trials: int = 20,
               perturb: float = 0.0) -> list[VerificationReport]:
    """Every check across the built-in integrators.

    ``perturb`` shifts each generator diagonal by the given amount before
    checking; a nonzero value is a negative control that must fail.
    """
    reports: list[VerificationReport] = []

    reports.append(check_regime_map("euler", [0.5, 1.0, 1.9, 2.0, 2.1, 3.0, 5.0]))
    reports.append(check_regime_map("velocity-verlet", [1.0, 2.0, 3.0]))
    reports.append(check_regime_map("position-verlet", [1.0, 2.0, 3.0]))
    reports.append(check_regime_map(
        "double-euler", [1.0, 2.0 * math.sqrt(2.0), 3.5, 4.0, 4.5, 5.0]))
    reports.append(check_regime_map("vp", []))

    branch_cases = [
        ("euler", 0.66), ("euler", 1.0), ("euler", 3.0),
        ("velocity-verlet", 1.5), ("position-verlet", 1.0),
        ("double-euler", 2.0), ("double-euler", 4.8),
    ]
    for name, tau in branch_cases:
        r = make(name, tau)
        family = generators_for(r, range(-2, 3))
        for g in family.generators:
            g = _perturbed(g, perturb)
            reports.append(check_exponential(g, r))
            reports.append(check_coincidence(g, r, trials, seed))

    unique = make("double-euler", 4.0)
    for g in generators_for(unique, [0]).generators:
        g = _perturbed(g, perturb)
        reports.append(check_exponential(g, unique))
        reports.append(check_coincidence(g, unique, trials, seed))

    for sign, preset in ((1.0, CaseIIParams.default()), (-1.0, CaseIIParams.real_rotation())):
        scalar = custom(sign, 0.0, 0.0, sign, 1.0, label=f"{sign:+g}*identity")
        family = generators_for(scalar, range(-1, 2), preset)
        for g in family.generators:
            g = _perturbed(g, perturb)
            reports.append(check_exponential(g, scalar))
            reports.append(check_coincidence(g, scalar, trials, seed))

    conservation_cases = [("euler", 0.66, -1), ("euler", 0.66, 1), ("euler", 3.0, 0),
                          ("velocity-verlet", 1.5, 0), ("double-euler", 4.0, 0)]
    for name, tau, m in conservation_cases:
        r = make(name, tau)
        g = generators_for(r, [m]).generators[0]
        if perturb == 0.0:
            h = hamiltonian_from_generator(g)
        else:
            # a shifted diagonal breaks tracelessness, so bypass the guard
            # and read the coefficients of the corrupted matrix directly
            g = _perturbed(g, perturb)
            z = g.matrix
            h = ShadowHamiltonian(z.e12 / (2 * g.tau), -z.e21 / (2 * g.tau),
                                  z.e11 / g.tau, g.tau, g.branch, g.case, False)
        reports.append(check_conservation(h, g, max(1, trials // 4), seed))

    return reports
