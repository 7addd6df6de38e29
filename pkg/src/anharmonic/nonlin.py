"""Perturbative corrections around a trial state.

Given a nodeless trial state Psi_0 with analytic logarithmic derivative
y = -(ln Psi_0)', the exact potential for which Psi_0 would be the ground
state differs from the physical one by a perturbation V_1; iterating the
Riccati equation in powers of that mismatch yields corrections y_n to the
logarithmic derivative and E_n to the energy:

    (mu y_n)' = mu (E_n - Q_n),  mu = r^(D-1) Psi_0^2,
    Q_1 = V_1,  Q_n = -sum_{k=1}^{n-1} y_k y_{n-k},

with E_n = integral(mu Q_n)/integral(mu) forced by normalizability
(mu y_n -> 0 at infinity).  The second correction obeys
E_2 = -<y_1^2> <= 0, so |E_2| doubles as a quality measure of the trial
state, and the partial sums E_0^(n) = E_0 + E_1 + ... + E_n converge onto
the exact level when the trial state is locally accurate.

The split of E_var into E_0 + E_1 is a bookkeeping convention; only the
sum is observable.  Here V_1 is taken with zero Psi_0^2-weighted mean, so
E_1 vanishes up to grid error and E_0 = E_var - E_1 exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from .approximant import TrialWavefunction
from .core import PotentialSpec
from .errors import AccuracyError
from .lmm import MeshResult
from .quadopt import QuadratureConfig, variational_energy

__all__ = [
    "CorrectionSet",
    "perturbation_potential",
    "correction_y",
    "corrected_energy",
    "deviation_profile",
    "dominant_window",
]


@dataclass(frozen=True)
class CorrectionSet:
    """Correction ladder around one trial state.

    ``E_n[k]`` holds E_{k+1}; ``y_n[k]`` the grid samples of y_{k+1};
    ``E0`` is the reference energy (E_var - E_1).  ``partial_sums()``
    returns [E_0^(1), E_0^(2), ...].
    """

    E0: float
    E_n: tuple[float, ...]
    y_n: tuple[np.ndarray, ...]
    grid: np.ndarray

    def partial_sums(self) -> tuple[float, ...]:
        out = []
        total = self.E0
        for e in self.E_n:
            total += e
            out.append(total)
        return tuple(out)

    @property
    def E_var(self) -> float:
        return self.E0 + self.E_n[0]


def _local_energy(psi: TrialWavefunction, spec: PotentialSpec, r: np.ndarray) -> np.ndarray:
    """(h Psi)/Psi: the trial state's local energy at each radius.

    With y = -(ln Psi)' (the ell-term included), Psi''/Psi = y^2 - y', so

        W(r) = V + ell(ell+D-2)/r^2 + y' - y^2 + (D-1) y / r ;

    for an exact eigenstate W is the constant eigenvalue.  y' comes from a
    complex step, exact to machine precision for these analytic phases.
    """
    D = psi.state.D
    cent = psi.state.centrifugal
    y = psi.y(r)
    h = 1e-20
    yp = np.imag(psi.y(r + 1j * h)) / h
    W = spec(r) + yp - y * y + (D - 1) * y / r
    if cent:
        W = W + cent / (r * r)
    return W


def perturbation_potential(
    psi: TrialWavefunction,
    spec: PotentialSpec,
    E_ref: float | None = None,
    config: QuadratureConfig | None = None,
):
    """The mismatch V_1(r) = W(r) - E_var between trial and true problem.

    Returns a vectorized evaluator.  The constant split is fixed by
    subtracting the variational energy, which makes the Psi_0^2-weighted
    mean of V_1 vanish identically (the Rayleigh quotient *is* that mean).
    Only nodeless states are admitted: the integrating-factor recursion
    divides by mu.
    """
    if psi.node_count() > 0:
        raise ValueError("perturbation theory around a noded trial state is unsupported")
    if E_ref is None:
        E_ref = variational_energy(psi, spec, config).E_var

    def v1(r):
        return _local_energy(psi, spec, np.asarray(r, dtype=float)) - E_ref

    return v1


def _hybrid_grid(psi: TrialWavefunction, n_points: int = 2400) -> np.ndarray:
    """Geometric-then-linear radial grid covering the support of mu.

    mu spans hundreds of orders of magnitude; the grid is extended until
    log mu drops ~700 below its peak (the binary64 underflow horizon),
    with a geometric patch resolving the origin.
    """
    D = psi.state.D
    scan = np.geomspace(1e-4, 400.0, 2000)
    with np.errstate(divide="ignore", invalid="ignore"):
        logmu = (D - 1) * np.log(scan) + 2.0 * psi.log_abs_psi(scan)
    logmu = np.where(np.isfinite(logmu), logmu, -np.inf)
    peak = float(np.max(logmu))
    alive = np.nonzero(logmu > peak - 700.0)[0]
    r_max = scan[min(alive[-1] + 1, len(scan) - 1)]
    n_geo = n_points // 6
    geo = np.geomspace(1e-8, 0.1, n_geo, endpoint=False)
    lin = np.linspace(0.1, r_max, n_points - n_geo)
    return np.concatenate([geo, lin])


def correction_y(
    n: int,
    mu: np.ndarray,
    grid: np.ndarray,
    v1: np.ndarray,
    previous_y: list[np.ndarray],
):
    """One rung of the ladder: (y_n on the grid, E_n).

    ``previous_y`` holds y_1 ... y_{n-1}; ``mu`` may be rescaled by any
    constant (only ratios enter).  The cumulative integral starts at the
    origin, where mu y_n vanishes for nodeless ground states.
    """
    if n < 1:
        raise ValueError("correction order must be >= 1")
    if len(previous_y) != n - 1:
        raise ValueError(f"order {n} needs y_1..y_{n-1}")
    if n == 1:
        Q = v1
    else:
        Q = np.zeros_like(grid)
        for k in range(1, n):
            Q = Q - previous_y[k - 1] * previous_y[n - k - 1]
    norm = trapezoid(mu, grid)
    E_n = trapezoid(mu * Q, grid) / norm
    muy = cumulative_trapezoid(mu * (E_n - Q), grid, initial=0.0)
    # normalizability: mu y_n must return to zero at the far grid end
    if abs(muy[-1]) > 1e-12 * np.max(np.abs(muy)):
        raise AccuracyError(
            f"mu*y_{n} does not vanish at the grid end (tail {muy[-1]:.2e})"
        )
    # Once mu drops below ~1e-14 of its peak, mu*y_n sinks under the
    # rounding noise of the cumulative integral and the quotient is
    # meaningless; clamp it to zero there.
    floor = 1e-14 * np.max(mu)
    with np.errstate(divide="ignore", invalid="ignore"):
        y_n = np.where(mu > floor, muy / np.where(mu > floor, mu, 1.0), 0.0)
    return y_n, E_n


def corrected_energy(
    psi: TrialWavefunction,
    spec: PotentialSpec,
    n_max: int = 2,
    config: QuadratureConfig | None = None,
) -> CorrectionSet:
    """Correction ladder E_1 ... E_{n_max} around the trial state.

    E_0^(1) = E0 + E_1 reproduces the variational energy to grid accuracy
    (exactly, by the bookkeeping convention E0 = E_var - E_1); E_0^(2)
    appends the always-nonpositive second correction, and so on.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if psi.node_count() > 0:
        raise ValueError("corrections for noded states are unsupported")

    E_var = variational_energy(psi, spec, config).E_var
    grid = _hybrid_grid(psi)
    D = psi.state.D

    logmu = (D - 1) * np.log(grid) + 2.0 * psi.log_abs_psi(grid)
    mu = np.exp(logmu - np.max(logmu))
    v1 = _local_energy(psi, spec, grid) - E_var

    ys: list[np.ndarray] = []
    Es: list[float] = []
    for n in range(1, n_max + 1):
        y_n, E_n = correction_y(n, mu, grid, v1, ys)
        ys.append(y_n)
        Es.append(E_n)

    return CorrectionSet(E0=E_var - Es[0], E_n=tuple(Es), y_n=tuple(ys), grid=grid)


def dominant_window(psi: TrialWavefunction, mass: float = 0.999) -> float:
    """Radius enclosing the given radial probability mass of the trial state.

    Pointwise statements about the trial function (boundedness of |y_1|,
    local deviation from the exact eigenfunction) are meaningful in the
    region that feeds the variational integrals; beyond it the density has
    decayed by many orders of magnitude and the correction series is
    dominated by the growth of the residual tail.
    """
    grid = _hybrid_grid(psi)
    D = psi.state.D
    logmu = (D - 1) * np.log(grid) + 2.0 * psi.log_abs_psi(grid)
    mu = np.exp(logmu - np.max(logmu))
    cum = cumulative_trapezoid(mu, grid, initial=0.0)
    cum /= cum[-1]
    return float(grid[int(np.searchsorted(cum, mass))])


def deviation_profile(
    psi: TrialWavefunction,
    reference: MeshResult,
    n_samples: int = 400,
):
    """Pointwise relative deviation of the trial state from a mesh solution.

    Samples |(c Psi_ref - Psi_t)/Psi_t| over the domain carrying 99.9% of
    the radial probability mass -- the region where the variational
    integrals draw their dominant contribution; far outside it both the
    pointwise ratio and the mesh tail lose meaning as the functions
    underflow.  The window is also clamped to the mesh support [r_1, r_N]:
    below the first mesh node the cardinal interpolation extrapolates and
    its own error (~1e-4 relative near the origin in high dimension) would
    masquerade as trial-function deviation.  The single scale c minimizes
    the r^(D-1)-weighted L2 difference.  Returns (r, deviation).
    """
    state = psi.state
    if reference.state.D != state.D or reference.state.ell != state.ell:
        raise ValueError("reference solves a different channel")
    j = state.n_r
    if j >= reference.coefficients.shape[1]:
        raise ValueError("reference does not contain the requested level")

    D = state.D
    grid = _hybrid_grid(psi)
    r_hi = dominant_window(psi)
    r_lo = max(grid[0], reference.mesh_r[0])
    r = np.linspace(r_lo, min(r_hi, reference.mesh_r[-1]), n_samples)

    psi_t = psi.psi(r)
    psi_ref = reference.interpolate(j, r)
    w = r ** (D - 1)
    c = float(np.sum(w * psi_ref * psi_t) / np.sum(w * psi_ref * psi_ref))
    dev = np.abs((c * psi_ref - psi_t) / psi_t)
    return r, dev
