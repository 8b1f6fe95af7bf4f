"""Discrete orbits, interpolating continuous flows, and trajectory output.

The continuous state is exp((t/tau) Z) applied to the initial phase
vector, evaluated through the closed-form matrix exponential at every
sample; no ODE stepping is involved, so samples carry no accumulated
integration error.  At t = n*tau the continuous state coincides with the
n-th discrete state for every branch.

Deviations between states are reported relative to max(1, |reference|):
bounded orbits are then compared absolutely, while diverging orbits
(real eigenvalue pairs, tau > 2) are compared to the precision double
arithmetic can represent at their scale.

CSV schema (one row per sample, %.17g formatting):

    t,q_re,q_im,p_re,p_im,H_re,H_im
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from pathlib import Path

from .algebra import closed_exp, re_im
from .classifier import CaseTag
from .errors import NotApplicable
from .integrators import TransitionMatrix
from .shadow import Generator, ShadowHamiltonian, euler_rate

CSV_HEADER = "t,q_re,q_im,p_re,p_im,H_re,H_im"


@dataclass(frozen=True)
class PhaseState:
    q: complex
    p: complex
    t: float

    def distance(self, other: "PhaseState") -> float:
        return math.hypot(abs(self.q - other.q), abs(self.p - other.p))


@dataclass(frozen=True)
class TrajectorySource:
    label: str
    tau: float
    case: CaseTag | None = None
    branch: int | None = None


@dataclass(frozen=True)
class Trajectory:
    states: tuple[PhaseState, ...]
    source: TrajectorySource

    def __post_init__(self):
        times = [s.t for s in self.states]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("sample times must be strictly increasing")


def state_deviation(a: PhaseState, b: PhaseState) -> float:
    """Distance between states relative to max(1, |b|)."""
    scale = max(1.0, math.hypot(abs(b.q), abs(b.p)))
    return a.distance(b) / scale


def discrete_orbit(r: TransitionMatrix, q0: float, p0: float, n: int) -> Trajectory:
    """States at t = 0, tau, ..., n*tau under repeated application of r."""
    if n < 0:
        raise ValueError("n must be >= 0")
    q, p = float(q0), float(p0)
    states = [PhaseState(complex(q), complex(p), 0.0)]
    for k in range(1, n + 1):
        q, p = r.apply(q, p)
        states.append(PhaseState(complex(q), complex(p), k * r.tau))
    return Trajectory(tuple(states), TrajectorySource(r.label, r.tau))


def continuous_state(g: Generator, q0: complex, p0: complex, t: float) -> PhaseState:
    """State of the branch flow at time t: exp((t/tau) Z) (q0, p0)."""
    propagator = closed_exp(g.matrix.scaled(t / g.tau))
    q, p = propagator.apply(q0, p0)
    return PhaseState(q, p, t)


def euler_closed_form(tau: float, branch: int, q0: float, p0: float, t: float) -> PhaseState:
    """Closed-form branch flow of the explicit Euler map.

    With s = rate * t / tau,

        q(t) = (2 p0 - tau q0) sin(s)/sqrt(4 - tau**2) + q0 cos(s)
        p(t) = (tau p0 - 2 q0) sin(s)/sqrt(4 - tau**2) + p0 cos(s)

    for 0 < tau < 2, and the same shape with sinh, cosh and
    sqrt(tau**2 - 4) for tau > 2, where s is then complex.
    """
    rate = euler_rate(tau, branch)
    s = rate * t / tau
    if tau < 2.0:
        root = math.sqrt((2.0 - tau) * (2.0 + tau))
        osc, base = cmath.sin(s), cmath.cos(s)
    else:
        root = math.sqrt((tau - 2.0) * (tau + 2.0))
        osc, base = cmath.sinh(s), cmath.cosh(s)
    q = (2.0 * p0 - tau * q0) * osc / root + q0 * base
    p = (tau * p0 - 2.0 * q0) * osc / root + p0 * base
    return PhaseState(q, p, t)


def sample_times(t_end: float, dt: float) -> list[float]:
    """0, dt, 2*dt, ... with the final sample exactly at t_end."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    if t_end < 0:
        raise ValueError("t_end must be >= 0")
    n_full = max(0, math.ceil(t_end / dt - 1e-9))
    return [k * dt for k in range(n_full)] + [t_end]


def sample_trajectory(g: Generator, q0: complex, p0: complex,
                      t_end: float, dt: float) -> Trajectory:
    """Dense samples of the branch flow on [0, t_end]."""
    states = tuple(continuous_state(g, q0, p0, t) for t in sample_times(t_end, dt))
    source = TrajectorySource(f"flow<{g.case}>", g.tau, g.case, g.branch)
    return Trajectory(states, source)


def rotation_sense(h: ShadowHamiltonian) -> str:
    """Turning sense of the bounded orbit at (q, p) = (1, 0).

    The momentum derivative there is -2*c_qq; a negative value turns the
    phase point clockwise.  Defined only for the bounded real case.
    """
    if h.case is not CaseTag.IA:
        raise NotApplicable(f"rotation sense undefined for case {h.case}")
    pdot = -2.0 * h.c_qq.real
    return "clockwise" if pdot < 0 else "counter-clockwise"


def measure_period(g: Generator, q0: float, p0: float, dt: float) -> float:
    """First return time to the initial state, located without assuming it.

    Marches the flow at step dt until the distance to the start has risen
    above half the initial radius and come back below it, then refines
    the local minimum of the squared distance by ternary search.  The
    orbit must be bounded (case i-a) and the start nonzero.
    """
    if g.case is not CaseTag.IA:
        raise NotApplicable("period is defined for bounded orbits only")
    radius = math.hypot(q0, p0)
    if radius == 0.0:
        raise NotApplicable("the origin is a fixed point")
    start = PhaseState(complex(q0), complex(p0), 0.0)

    def dist(t: float) -> float:
        return continuous_state(g, q0, p0, t).distance(start)

    armed = False
    previous = 0.0
    k = 0
    limit = int(math.ceil(40.0 * (2.0 * math.pi + g.tau) / dt))
    while k < limit:
        k += 1
        d = dist(k * dt)
        if not armed:
            armed = d > 0.5 * radius
        elif d < 0.45 * radius and d > previous:
            break
        previous = d
    else:
        raise NotApplicable("no return detected; decrease dt or check the orbit")

    lo, hi = (k - 2) * dt, k * dt
    for _ in range(200):
        third = (hi - lo) / 3.0
        if third < 1e-14:
            break
        if dist(lo + third) < dist(hi - third):
            hi = hi - third
        else:
            lo = lo + third
    return (lo + hi) / 2.0


def _energy(state: PhaseState, h: ShadowHamiltonian | None) -> complex:
    if h is None:
        return (state.q * state.q + state.p * state.p) / 2.0
    return h.evaluate(state.q, state.p)


def write_trajectory_csv(path: str | Path, trajectory: Trajectory,
                         hamiltonian: ShadowHamiltonian | None = None) -> None:
    """Emit the CSV schema; without a Hamiltonian the H column reports the
    unperturbed oscillator energy (q**2 + p**2)/2."""
    lines = [CSV_HEADER]
    for s in trajectory.states:
        energy = _energy(s, hamiltonian)
        values = (s.t, s.q.real, s.q.imag, s.p.real, s.p.imag, energy.real, energy.imag)
        lines.append(",".join(format(v, ".17g") for v in values))
    Path(path).write_text("\n".join(lines) + "\n")


def trajectory_to_json(trajectory: Trajectory,
                       hamiltonian: ShadowHamiltonian | None = None) -> dict:
    """JSON mirror of the CSV schema with the source descriptor embedded."""
    source: dict = {
        "label": trajectory.source.label,
        "tau": trajectory.source.tau,
        "case": trajectory.source.case.value if trajectory.source.case else None,
        "m": trajectory.source.branch,
    }
    if hamiltonian is not None:
        source["hamiltonian"] = hamiltonian.to_json_dict()
    states = []
    for s in trajectory.states:
        energy = _energy(s, hamiltonian)
        states.append({"t": s.t, "q": re_im(s.q), "p": re_im(s.p), "H": re_im(energy)})
    return {"source": source, "states": states}
