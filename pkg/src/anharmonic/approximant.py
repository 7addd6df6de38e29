"""Compact trial eigenfunctions built from the resummed phase expansion.

The trial phase for each two-term oscillator family is a rational-over-
square-root core plus logarithmic terms that mirror the structure of the
first two phase generating functions:

    quartic: Phi_t = (a0 + a2 r^2 + a4 g^2 r^4)/S
               + (1/4) ln T + (D/2) ln(1 + S),      T = 1 + b4 g^2 r^2
    sextic:  Phi_t = (a0 + a2 r^2 + a4 g^2 r^4 + a6 g^4 r^6)/S
               + (1/(4 g^2)) ln(c2 g^2 r^2 + S)
               + (1/4) ln T + (D/4) ln(1 + S),      T = 1 + b4 g^2 r^2 + b6 g^4 r^4
    cubic:   Phi_1 = (a0 + a1 g r + a2 r^2 + a3 g r^3)/S
               + (1/4) ln T + D ln(1 + S),          T = 1 + b3 g r

with S = sqrt(T).  Asymptotic constraints tie the denominator coefficients
to the leading numerator ones so that every growing term of the exact
large-distance expansion of the phase is reproduced; what remains free is
a handful of smooth, slowly varying variational parameters.  A full trial
state multiplies exp(-Phi_t) by r^ell and a nodal polynomial P(r^2)
parameterized directly by its positive roots, so node reality is built in.

Evaluators accept numpy arrays and complex scalars alike (the latter is
what makes complex-step differentiation of y0 possible downstream).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .core import Family, StateLabel

__all__ = [
    "TrialParameters",
    "TrialWavefunction",
    "apply_constraints",
    "build_phase",
    "trial_wavefunction",
    "Phase",
]

_FREE_PARAMS = {
    Family.QUARTIC: ("a0", "a4"),
    Family.SEXTIC: ("a0", "a2", "a4", "a6", "c2"),
    Family.CUBIC_CONSTRAINED: ("a3",),
}


@dataclass(frozen=True)
class TrialParameters:
    """Phase coefficients of a trial state; unused fields stay at 0."""

    a0: float = 0.0
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0
    a4: float = 0.0
    a6: float = 0.0
    b3: float = 0.0
    b4: float = 0.0
    b6: float = 0.0
    c2: float = 0.0
    poly_roots: tuple[float, ...] = ()

    def __post_init__(self):
        roots = tuple(float(x) for x in self.poly_roots)
        if any(x <= 0 for x in roots):
            raise ValueError("nodal polynomial roots must be positive")
        if len(set(roots)) != len(roots):
            raise ValueError("nodal polynomial roots must be distinct")
        object.__setattr__(self, "poly_roots", roots)

    def with_roots(self, roots) -> "TrialParameters":
        return replace(self, poly_roots=tuple(roots))

    def free_values(self, family: Family) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in _FREE_PARAMS[family])

    def to_json(self) -> str:
        d = {k: getattr(self, k) for k in (
            "a0", "a1", "a2", "a3", "a4", "a6", "b3", "b4", "b6", "c2")}
        d["poly_roots"] = list(self.poly_roots)
        return json.dumps(d, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "TrialParameters":
        d = json.loads(text)
        d["poly_roots"] = tuple(d.get("poly_roots", ()))
        return cls(**d)


def free_parameter_names(family: Family) -> tuple[str, ...]:
    """Names of the variational degrees of freedom for a family."""
    try:
        return _FREE_PARAMS[family]
    except KeyError:
        raise ValueError(f"no trial family for {family}") from None


def _sextic_log_guard(b4: float, b6: float, c2: float) -> None:
    """Require c2 x + sqrt(1 + b4 x + b6 x^2) > 0 for all x >= 0.

    The argument of the sextic logarithm must stay positive or the phase
    (and hence the trial state) is undefined at finite radius.  The slope
    at infinity is c2 + sqrt(b6); for negative c2 the minimum is scanned
    explicitly since the square root can dip before its asymptote.
    """
    if c2 >= 0.0:
        return
    if c2 + math.sqrt(b6) <= 0.0:
        raise ValueError("sextic log coefficient too negative: c2 <= -sqrt(b6)")
    x = np.geomspace(1e-8, 1e8, 400)
    vals = c2 * x + np.sqrt(1.0 + b4 * x + b6 * x * x)
    if np.min(vals) <= 0.0:
        raise ValueError("sextic log argument crosses zero at finite radius")


def apply_constraints(family: Family, free: dict, D: int, g: float) -> TrialParameters:
    """Fill the dependent coefficients from the family's free ones.

    The constraints pin the large-distance behaviour of the trial phase to
    the exact asymptotic expansion: the anchor coefficient (a4, a6 or a3)
    fixes the denominator, and the subleading relations remove or fix the
    lower growing terms.  The cubic family additionally fixes a0 so that
    the phase derivative vanishes at the origin.
    """
    free = dict(free)
    unknown = set(free) - set(_FREE_PARAMS[family])
    if unknown:
        raise ValueError(f"not free parameters of {family.value}: {sorted(unknown)}")
    if family is Family.QUARTIC:
        a4 = free.get("a4", 0.0)
        if a4 <= 0:
            raise ValueError("quartic anchor a4 must be positive")
        return TrialParameters(
            a0=free.get("a0", 0.0),
            a2=(1.0 + 27.0 * a4 * a4) / (18.0 * a4),
            a4=a4,
            b4=9.0 * a4 * a4,
            poly_roots=tuple(free.get("poly_roots", ())),
        )
    if family is Family.SEXTIC:
        a6 = free.get("a6", 0.0)
        if a6 <= 0:
            raise ValueError("sextic anchor a6 must be positive")
        a4 = free.get("a4", 0.0)
        b6 = 16.0 * a6 * a6
        b4 = 32.0 * a6 * a4
        c2 = free.get("c2", 1.0)
        _sextic_log_guard(b4, b6, c2)
        return TrialParameters(
            a0=free.get("a0", 0.0),
            a2=free.get("a2", 0.0),
            a4=a4,
            a6=a6,
            b4=b4,
            b6=b6,
            c2=c2,
            poly_roots=tuple(free.get("poly_roots", ())),
        )
    if family is Family.CUBIC_CONSTRAINED:
        a3 = free.get("a3", 0.0)
        if a3 <= 0:
            raise ValueError("cubic anchor a3 must be positive")
        b3 = 6.25 * a3 * a3
        a2 = (125.0 * a3 * a3 + 12.0) / (150.0 * a3)
        a1 = -(9375.0 * a3 ** 4 - 1000.0 * a3 * a3 + 48.0) / (15000.0 * a3 ** 3 * g * g)
        a0 = 2.0 * a1 / b3 + 0.5 * (D + 1)
        return TrialParameters(
            a0=a0, a1=a1, a2=a2, a3=a3, b3=b3,
            poly_roots=tuple(free.get("poly_roots", ())),
        )
    raise ValueError(f"no constrained trial family for {family}")


@dataclass(frozen=True)
class Phase:
    """Trial phase Phi_t with its analytic derivative y0 = Phi_t'."""

    family: Family
    params: TrialParameters
    D: int
    g: float
    phi: Callable = field(repr=False, default=None)
    y0: Callable = field(repr=False, default=None)


def build_phase(family: Family, params: TrialParameters, D: int, g: float) -> Phase:
    """Closed-form evaluators for the trial phase and its derivative.

    The derivative is hand-differentiated rather than numeric: it enters
    the perturbative machinery as the zeroth-order logarithmic derivative
    y0, where finite-difference noise would contaminate the corrections.
    """
    if g <= 0:
        raise ValueError("coupling must be positive")
    p = params
    g2 = g * g

    if family is Family.QUARTIC:
        def phi(r):
            x = g2 * r * r
            T = 1.0 + p.b4 * x
            S = np.sqrt(T)
            N = p.a0 + p.a2 * r * r + p.a4 * g2 * r ** 4
            return N / S + 0.25 * np.log(T) + 0.5 * D * np.log(1.0 + S)

        def y0(r):
            x = g2 * r * r
            T = 1.0 + p.b4 * x
            S = np.sqrt(T)
            N = p.a0 + p.a2 * r * r + p.a4 * g2 * r ** 4
            dN = 2.0 * p.a2 * r + 4.0 * p.a4 * g2 * r ** 3
            dT = 2.0 * p.b4 * g2 * r
            dS = dT / (2.0 * S)
            return dN / S - N * dS / T + 0.25 * dT / T + 0.5 * D * dS / (1.0 + S)

    elif family is Family.SEXTIC:
        g4 = g2 * g2

        def phi(r):
            r2 = r * r
            T = 1.0 + p.b4 * g2 * r2 + p.b6 * g4 * r2 * r2
            S = np.sqrt(T)
            N = p.a0 + p.a2 * r2 + p.a4 * g2 * r2 * r2 + p.a6 * g4 * r2 ** 3
            return (
                N / S
                + np.log(p.c2 * g2 * r2 + S) / (4.0 * g2)
                + 0.25 * np.log(T)
                + 0.25 * D * np.log(1.0 + S)
            )

        def y0(r):
            r2 = r * r
            T = 1.0 + p.b4 * g2 * r2 + p.b6 * g4 * r2 * r2
            S = np.sqrt(T)
            N = p.a0 + p.a2 * r2 + p.a4 * g2 * r2 * r2 + p.a6 * g4 * r2 ** 3
            dN = 2.0 * p.a2 * r + 4.0 * p.a4 * g2 * r ** 3 + 6.0 * p.a6 * g4 * r ** 5
            dT = 2.0 * p.b4 * g2 * r + 4.0 * p.b6 * g4 * r ** 3
            dS = dT / (2.0 * S)
            return (
                dN / S
                - N * dS / T
                + (2.0 * p.c2 * g2 * r + dS) / (4.0 * g2 * (p.c2 * g2 * r2 + S))
                + 0.25 * dT / T
                + 0.25 * D * dS / (1.0 + S)
            )

    elif family is Family.CUBIC_CONSTRAINED:
        def phi(r):
            T = 1.0 + p.b3 * g * r
            S = np.sqrt(T)
            N = p.a0 + p.a1 * g * r + p.a2 * r * r + p.a3 * g * r ** 3
            return N / S + 0.25 * np.log(T) + D * np.log(1.0 + S)

        def y0(r):
            T = 1.0 + p.b3 * g * r
            S = np.sqrt(T)
            N = p.a0 + p.a1 * g * r + p.a2 * r * r + p.a3 * g * r ** 3
            dN = p.a1 * g + 2.0 * p.a2 * r + 3.0 * p.a3 * g * r * r
            dT = p.b3 * g
            dS = dT / (2.0 * S)
            return dN / S - N * dS / T + 0.25 * dT / T + D * dS / (1.0 + S)

    else:
        raise ValueError(f"no trial phase for {family}")

    return Phase(family=family, params=params, D=D, g=g, phi=phi, y0=y0)


@dataclass(frozen=True)
class TrialWavefunction:
    """Trial state Psi = r^ell P(r^2) exp(-Phi_t) with analytic y."""

    state: StateLabel
    family: Family
    params: TrialParameters
    g: float
    phase: Phase = field(repr=False, default=None)

    def nodal_poly(self, r):
        out = 1.0
        for rho in self.params.poly_roots:
            out = out * (1.0 - r * r / rho)
        return out

    def psi(self, r):
        ell = self.state.ell
        pref = r ** ell if ell else 1.0
        return pref * self.nodal_poly(r) * np.exp(-self.phase.phi(r))

    def log_abs_psi(self, r):
        """ln |Psi|, safe deep in the exponential tail."""
        ell = self.state.ell
        val = -self.phase.phi(r)
        if ell:
            val = val + ell * np.log(r)
        poly = self.nodal_poly(r)
        return val + np.log(np.abs(poly))

    def y(self, r):
        """Logarithmic derivative -(ln Psi)' = Phi' - ell/r - P'/P."""
        out = self.phase.y0(r)
        if self.state.ell:
            out = out - self.state.ell / r
        for rho in self.params.poly_roots:
            out = out + (2.0 * r / rho) / (1.0 - r * r / rho)
        return out

    def node_count(self) -> int:
        return len(self.params.poly_roots)

    def nodes(self) -> tuple[float, ...]:
        return tuple(math.sqrt(rho) for rho in sorted(self.params.poly_roots))


def trial_wavefunction(
    state: StateLabel, family: Family, params: TrialParameters, g: float
) -> TrialWavefunction:
    """Assemble the full trial state for (n_r, ell)."""
    if len(params.poly_roots) != state.n_r:
        raise ValueError(
            f"state has n_r={state.n_r} but {len(params.poly_roots)} roots supplied"
        )
    phase = build_phase(family, params, state.D, g)
    return TrialWavefunction(state=state, family=family, params=params, g=g, phase=phase)
