"""Parameter sweeps and classification of entanglement time patterns.

A trajectory's pattern is summarized by the sign history of the Simon
function: where it starts, how often it crosses zero, and where it ends up
asymptotically.  Crossing instants are refined by bisection on the exact
flow, so event times do not depend on the sampling grid.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .core import CovarianceMatrix, EnvironmentSpec, Matrix, thermal_environment
from .dynamics import evolve, steady_covariance
from .entanglement import asymptotic_simon, log_negativity, simon_function

#: Bisection window below which a crossing instant is considered resolved.
EVENT_TIME_TOL = 1e-8

#: Crossings closer than this are treated as one grazing contact and merged.
EVENT_MERGE_TOL = 1e-6

LABELS = (
    "remains_separable",
    "remains_entangled",
    "generation_persistent",
    "generation_transient",
    "sudden_death",
    "collapse_revival",
)


@dataclass(frozen=True)
class PhaseClassification:
    """Label of an entanglement trajectory plus the refined crossing instants.

    The label is a pure function of the initial sign class of the Simon
    function, the number of sign changes, and the asymptotic sign:

    - no crossings: ``remains_separable`` / ``remains_entangled``
    - separable start: 1 crossing -> ``generation_persistent``,
      2 crossings -> ``generation_transient``, more -> ``collapse_revival``
    - entangled start: 1 crossing -> ``sudden_death``,
      more -> ``collapse_revival``

    Signs are -1/0/+1; the S = 0 boundary counts as separable.
    """

    label: str
    event_times: tuple[float, ...]
    s_initial_sign: int
    s_infinity_sign: int


def _sign(value: float) -> int:
    return (value > 0) - (value < 0)


def _refine_crossing(
    initial: CovarianceMatrix,
    env: EnvironmentSpec,
    fixed: CovarianceMatrix,
    t_lo: float,
    t_hi: float,
    lo_entangled: bool,
) -> float:
    """Bisect on the sign class of S over [t_lo, t_hi] down to EVENT_TIME_TOL."""
    while t_hi - t_lo > EVENT_TIME_TOL:
        mid = 0.5 * (t_lo + t_hi)
        mid_entangled = simon_function(evolve(initial, env, mid, steady=fixed)) < 0.0
        if mid_entangled == lo_entangled:
            t_lo = mid
        else:
            t_hi = mid
    return 0.5 * (t_lo + t_hi)


def _merge_events(
    events: list[tuple[float, bool, bool]],
) -> list[tuple[float, bool, bool]]:
    """Collapse crossings closer than EVENT_MERGE_TOL.

    A cluster whose net sign class does not change (a grazing contact) is
    dropped entirely; otherwise it is replaced by a single event at its
    midpoint.
    """
    merged: list[tuple[float, bool, bool]] = []
    i = 0
    while i < len(events):
        j = i
        while j + 1 < len(events) and events[j + 1][0] - events[j][0] < EVENT_MERGE_TOL:
            j += 1
        before = events[i][1]
        after = events[j][2]
        if before != after:
            merged.append((0.5 * (events[i][0] + events[j][0]), before, after))
        i = j + 1
    return merged


def _label_for(start_entangled: bool, n_events: int) -> str:
    if n_events == 0:
        return "remains_entangled" if start_entangled else "remains_separable"
    if not start_entangled:
        if n_events == 1:
            return "generation_persistent"
        if n_events == 2:
            return "generation_transient"
        return "collapse_revival"
    return "sudden_death" if n_events == 1 else "collapse_revival"


def classify_phase(
    initial: CovarianceMatrix,
    env: EnvironmentSpec,
    t_max: float,
    n_t: int,
) -> PhaseClassification:
    """Classify the entanglement time pattern of one trajectory.

    S(t) is sampled on ``n_t`` uniform instants over [0, t_max]; every sign
    change between consecutive samples is refined by bisection on the exact
    flow, and the asymptotic sign comes from the closed-form steady state.
    For a reliable asymptotic sign the horizon should cover several
    dissipation times (t_max >= 5/lam) with n_t >= 100; shorter grids are
    accepted with a warning.
    """
    if not t_max > 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    if n_t < 2:
        raise ValueError(f"n_t must be at least 2, got {n_t}")
    if t_max * env.lam < 5.0 or n_t < 100:
        warnings.warn(
            "classification grid is below the recommended resolution "
            f"(t_max >= {5.0 / env.lam:.3g} and n_t >= 100); the result may "
            "miss crossings",
            stacklevel=2,
        )
    fixed = steady_covariance(env)
    times = np.linspace(0.0, t_max, n_t)
    s_values = np.array(
        [simon_function(evolve(initial, env, float(t), steady=fixed)) for t in times]
    )
    classes = s_values < 0.0

    raw_events: list[tuple[float, bool, bool]] = []
    for k in np.nonzero(classes[:-1] != classes[1:])[0]:
        refined = _refine_crossing(
            initial, env, fixed, float(times[k]), float(times[k + 1]), bool(classes[k])
        )
        raw_events.append((refined, bool(classes[k]), bool(classes[k + 1])))
    events = _merge_events(raw_events)

    try:
        s_infinity = asymptotic_simon(env)
    except ValueError:
        s_infinity = simon_function(fixed)
    if bool(classes[-1]) != (s_infinity < 0.0):
        warnings.warn(
            "final sampled Simon sign disagrees with the asymptotic sign; "
            "the sampling horizon is probably too short",
            stacklevel=2,
        )
    return PhaseClassification(
        label=_label_for(bool(classes[0]), len(events)),
        event_times=tuple(event[0] for event in events),
        s_initial_sign=_sign(float(s_values[0])),
        s_infinity_sign=_sign(s_infinity),
    )


@dataclass(frozen=True)
class SweepSpec:
    """Grid specification for a (time, thermal parameter) surface.

    The environment's thermal parameter is overridden at each grid column, so
    ``env_base`` must be thermal; its dissipation and cross-diffusion
    coefficients are reused as-is.  The time grid has ``n_t`` samples
    including t = 0; the thermal grid has ``n_c`` columns.
    """

    env_base: EnvironmentSpec
    initial: CovarianceMatrix
    t_max: float = 50.0
    n_t: int = 500
    c_min: float = 1.0
    c_max: float = 1.5
    n_c: int = 20

    def __post_init__(self) -> None:
        if not self.env_base.is_thermal():
            raise ValueError("sweeps override thermal_c and need a thermal env_base")
        if not self.t_max > 0:
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        if self.n_t < 2:
            raise ValueError(f"n_t must be at least 2, got {self.n_t}")
        if self.n_c < 1:
            raise ValueError(f"n_c must be at least 1, got {self.n_c}")
        if self.c_min < 1.0:
            raise ValueError(f"c_min must be >= 1, got {self.c_min}")
        if self.c_max < self.c_min:
            raise ValueError("c_max must be >= c_min")

    def times(self) -> Matrix:
        return np.linspace(0.0, self.t_max, self.n_t)

    def thermal_cs(self) -> Matrix:
        if self.n_c == 1:
            return np.array([self.c_min])
        return np.linspace(self.c_min, self.c_max, self.n_c)

    def environment_at(self, thermal_c: float) -> EnvironmentSpec:
        base = self.env_base
        return thermal_environment(
            base.lam, thermal_c, base.d_xy, base.d_xpy, base.m, base.omega
        )


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Simon and logarithmic-negativity surfaces over a (t, c) grid.

    ``log_neg`` holds NaN where the degree is undefined; the ``defined`` mask
    carries that information explicitly so undefined points are propagated,
    never dropped.
    """

    spec: SweepSpec
    times: Matrix
    thermal_cs: Matrix
    simon: Matrix
    log_neg: Matrix
    defined: np.ndarray
    classifications: tuple[PhaseClassification, ...]

    def rows(self) -> Iterator[tuple[float, float, float, float | None, bool]]:
        """(t, c, S, L-or-None, defined) rows in deterministic t-major order."""
        for i, t in enumerate(self.times):
            for j, c in enumerate(self.thermal_cs):
                is_defined = bool(self.defined[i, j])
                yield (
                    float(t),
                    float(c),
                    float(self.simon[i, j]),
                    float(self.log_neg[i, j]) if is_defined else None,
                    is_defined,
                )


def sweep(spec: SweepSpec) -> SweepResult:
    """Fill the (t, c) grid with S and L and classify each thermal column."""
    times = spec.times()
    cs = spec.thermal_cs()
    simon = np.empty((spec.n_t, spec.n_c))
    log_neg = np.full((spec.n_t, spec.n_c), np.nan)
    defined = np.zeros((spec.n_t, spec.n_c), dtype=bool)
    classifications = []
    for j, c in enumerate(cs):
        env_c = spec.environment_at(float(c))
        fixed = steady_covariance(env_c)
        for i, t in enumerate(times):
            state = evolve(spec.initial, env_c, float(t), steady=fixed)
            simon[i, j] = simon_function(state)
            degree = log_negativity(state)
            if degree is not None:
                log_neg[i, j] = degree
                defined[i, j] = True
        classifications.append(classify_phase(spec.initial, env_c, spec.t_max, spec.n_t))
    return SweepResult(
        spec=spec,
        times=times,
        thermal_cs=cs,
        simon=simon,
        log_neg=log_neg,
        defined=defined,
        classifications=tuple(classifications),
    )


@dataclass(frozen=True, eq=False)
class PhaseDiagram:
    """Entangled-at-infinity map over a (d_xpy, thermal_c) grid, d_xy = 0.

    Cells violating the diffusion constraint (lam/2) thermal_c >= d_xpy are
    marked unphysical and excluded from the entangled set.  ``c_thresholds``
    holds the analytic boundary 1 + 2 d_xpy / sqrt(lam^2 + omega^2) per row.
    """

    d_xpy_values: Matrix
    thermal_cs: Matrix
    entangled: np.ndarray
    unphysical: np.ndarray
    c_thresholds: Matrix

    def status(self, i: int, j: int) -> str:
        if self.unphysical[i, j]:
            return "unphysical"
        return "entangled" if self.entangled[i, j] else "separable"


def asymptotic_phase_diagram(
    lam: float,
    omega: float,
    d_xpy_grid: Sequence[float],
    c_grid: Sequence[float],
    m: float = 1.0,
) -> PhaseDiagram:
    """Mark each (d_xpy, thermal_c) cell entangled iff the asymptote has S < 0."""
    d_values = np.asarray(d_xpy_grid, dtype=float)
    cs = np.asarray(c_grid, dtype=float)
    entangled = np.zeros((len(d_values), len(cs)), dtype=bool)
    unphysical = np.zeros_like(entangled)
    for i, d_xpy in enumerate(d_values):
        for j, c in enumerate(cs):
            if 0.5 * lam * c < d_xpy:
                unphysical[i, j] = True
                continue
            env = thermal_environment(lam, float(c), 0.0, float(d_xpy), m, omega)
            entangled[i, j] = asymptotic_simon(env) < 0.0
    thresholds = 1.0 + 2.0 * np.abs(d_values) / np.hypot(lam, omega)
    return PhaseDiagram(
        d_xpy_values=d_values,
        thermal_cs=cs,
        entangled=entangled,
        unphysical=unphysical,
        c_thresholds=thresholds,
    )
