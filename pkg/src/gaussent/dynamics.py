"""Exact covariance propagation and the Lyapunov steady state.

The drift matrix has the known closed-form exponential
exp(Y t) = e^{-lam t} * diag(R(t), R(t)) with
R(t) = [[cos(omega t), sin(omega t)/(m omega)], [-m omega sin(omega t), cos(omega t)]],
so trajectories are sampled without any ODE integration: every instant is
computed directly from t = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    CovarianceMatrix,
    EnvironmentSpec,
    Matrix,
    diffusion_matrix,
    drift_matrix,
)


def propagator(env: EnvironmentSpec, t: float) -> Matrix:
    """Closed-form exp(Y t); identity at t = 0, determinant e^{-4 lam t}."""
    if t < 0:
        raise ValueError(f"propagation time must be nonnegative, got {t}")
    mw = env.m * env.omega
    decay = math.exp(-env.lam * t)
    cos = math.cos(env.omega * t)
    sin = math.sin(env.omega * t)
    block = decay * np.array([[cos, sin / mw], [-mw * sin, cos]])
    out = np.zeros((4, 4))
    out[:2, :2] = block
    out[2:, 2:] = block
    return out


def steady_covariance(env: EnvironmentSpec) -> CovarianceMatrix:
    """Solve Y s + s Y^T = -2 D for the asymptotic covariance matrix.

    The equation is vectorized into a 16x16 linear system and solved with a
    dense LU factorization; the residual is checked against
    1e-12 * (1 + max|D|) and a failure raises ``numpy.linalg.LinAlgError``.
    """
    y = drift_matrix(env)
    d = diffusion_matrix(env)
    eye = np.eye(4)
    coeff = np.kron(eye, y) + np.kron(y, eye)
    vec = np.linalg.solve(coeff, (-2.0 * d).reshape(-1, order="F"))
    sigma = vec.reshape((4, 4), order="F")
    sigma = 0.5 * (sigma + sigma.T)
    residual = float(np.max(np.abs(y @ sigma + sigma @ y.T + 2.0 * d)))
    bound = 1e-12 * (1.0 + float(np.max(np.abs(d))))
    if residual > bound:
        raise np.linalg.LinAlgError(
            f"Lyapunov solve residual {residual:.3e} exceeds {bound:.3e}"
        )
    return CovarianceMatrix(sigma)


def closed_form_steady(env: EnvironmentSpec) -> CovarianceMatrix:
    """Asymptotic covariance of a thermal environment from its closed form.

    The unimodal blocks are diag(thermal_c/(2 m omega), thermal_c m omega / 2)
    and the cross block follows from the diffusion cross coefficients.  This
    duplicates :func:`steady_covariance` on purpose: the numeric solver stays
    authoritative for general coefficients and this route is the cross-check.
    """
    if not env.is_thermal():
        raise ValueError("closed-form steady state requires a thermal environment")
    mw = env.m * env.omega
    den = env.lam**2 + env.omega**2
    a = np.diag([0.5 * env.thermal_c / mw, 0.5 * env.thermal_c * mw])
    c_xy = env.d_xy / env.lam + env.d_xpy / (env.m * den)
    c_xpy = env.lam * env.d_xpy / den
    c_pxpy = mw * mw * env.d_xy / env.lam - env.m * env.omega**2 * env.d_xpy / den
    c = np.array([[c_xy, c_xpy], [c_xpy, c_pxpy]])
    return CovarianceMatrix.from_blocks(a, c)


def evolve(
    initial: CovarianceMatrix,
    env: EnvironmentSpec,
    t: float,
    *,
    steady: CovarianceMatrix | None = None,
) -> CovarianceMatrix:
    """Propagate ``initial`` for time ``t``: M(t) (s0 - s_inf) M(t)^T + s_inf.

    ``t = 0`` returns ``initial`` unchanged.  ``steady`` may carry a
    precomputed steady-state covariance to avoid repeated Lyapunov solves in
    sweep loops.  The result is re-symmetrized via (s + s^T)/2.
    """
    if t < 0:
        raise ValueError(f"propagation time must be nonnegative, got {t}")
    if t == 0:
        return initial
    fixed = steady.entries if steady is not None else steady_covariance(env).entries
    m = propagator(env, t)
    out = m @ (initial.entries - fixed) @ m.T + fixed
    return CovarianceMatrix(0.5 * (out + out.T))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Uniformly sampled covariance trajectory starting at t = 0."""

    times: Matrix
    states: tuple[CovarianceMatrix, ...]
    env: EnvironmentSpec
    initial: CovarianceMatrix

    def __post_init__(self) -> None:
        if len(self.times) != len(self.states):
            raise ValueError("times and states must have equal length")
        if len(self.times) < 2:
            raise ValueError("a trajectory needs at least two samples")
        if self.times[0] != 0.0:
            raise ValueError("trajectories start at t = 0")
        if not np.all(np.diff(self.times) > 0):
            raise ValueError("sample times must be strictly increasing")
        if not np.array_equal(self.states[0].entries, self.initial.entries):
            raise ValueError("first sample must equal the initial state exactly")

    def __len__(self) -> int:
        return len(self.times)


def sample_trajectory(
    initial: CovarianceMatrix,
    env: EnvironmentSpec,
    t_max: float,
    n_steps: int,
) -> Trajectory:
    """Sample the exact flow on a uniform grid of n_steps + 1 instants.

    Every sample is computed in closed form from t = 0, so no step-to-step
    integration error accumulates.
    """
    if not t_max > 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    if n_steps < 2:
        raise ValueError(f"n_steps must be at least 2, got {n_steps}")
    times = np.linspace(0.0, t_max, n_steps + 1)
    fixed = steady_covariance(env)
    states = tuple(evolve(initial, env, float(t), steady=fixed) for t in times)
    return Trajectory(times=times, states=states, env=env, initial=initial)


def ode_residual(trajectory: Trajectory) -> float:
    """Max norm of d(sigma)/dt - (Y sigma + sigma Y^T + 2 D) on interior samples.

    The derivative is a centered finite difference, so for the exact flow the
    residual is O(dt^2); halving the grid spacing should divide it by about 4.
    """
    if len(trajectory) < 3:
        raise ValueError("residual check needs at least three samples")
    y = drift_matrix(trajectory.env)
    d = diffusion_matrix(trajectory.env)
    times = trajectory.times
    mats = np.stack([state.entries for state in trajectory.states])
    span = (times[2:] - times[:-2])[:, None, None]
    lhs = (mats[2:] - mats[:-2]) / span
    inner = mats[1:-1]
    rhs = np.matmul(y, inner) + np.matmul(inner, y.T) + 2.0 * d
    return float(np.max(np.abs(lhs - rhs)))
