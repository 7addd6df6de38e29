"""Domain types and unit conventions for radial anharmonic oscillators.

The potentials handled by this package are two-term radial potentials

    V(r) = r^2 + g^(m-2) r^m         (m = 3 cubic, 4 quartic, 6 sextic)

in D spatial dimensions, plus the pure anharmonic potentials
V(w) = w^m + lhat^p w^2 that arise in the strong-coupling regime.

Working units everywhere are hbar = 1, M = 1/2, in which the quantum
coordinate v coincides with r, the effective coupling lambda coincides
with g and the reduced energy coincides with E.  General (hbar, M) frames
are supported through :class:`CouplingFrame`, which only performs unit
conversions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction


class Family(enum.Enum):
    """Potential family: anharmonic power m and coupling convention."""

    QUARTIC = "quartic"
    SEXTIC = "sextic"
    CUBIC_CONSTRAINED = "cubic"
    GENERAL_TWO_TERM = "general"
    PURE_ANHARMONIC = "pure"

    @property
    def m(self) -> int:
        """Anharmonic power for the fixed-m families."""
        if self is Family.QUARTIC:
            return 4
        if self is Family.SEXTIC:
            return 6
        if self is Family.CUBIC_CONSTRAINED:
            return 3
        raise ValueError(f"{self} has a per-instance power m")


@dataclass(frozen=True)
class CouplingFrame:
    """Unit frame (hbar, M, g) with derived effective coupling.

    lambda_eff = (hbar^2 / 2M)^(1/4) g and the energy scale is
    hbar / sqrt(2M); in working units both reduce to g and 1.
    """

    hbar: float
    mass: float
    g: float
    lambda_eff: float = field(init=False)
    energy_scale: float = field(init=False)

    def __post_init__(self):
        for name in ("hbar", "mass"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0):
                raise ValueError(f"{name} must be finite and positive, got {val!r}")
        if not (math.isfinite(self.g) and self.g >= 0):
            raise ValueError(f"g must be finite and nonnegative, got {self.g!r}")
        object.__setattr__(
            self, "lambda_eff", (self.hbar**2 / (2.0 * self.mass)) ** 0.25 * self.g
        )
        object.__setattr__(
            self, "energy_scale", self.hbar / math.sqrt(2.0 * self.mass)
        )

    # coordinate conversions: v is the quantum coordinate, u the classical one
    def r_to_v(self, r: float) -> float:
        return (2.0 * self.mass / self.hbar**2) ** 0.25 * r

    def v_to_r(self, v: float) -> float:
        return (self.hbar**2 / (2.0 * self.mass)) ** 0.25 * v

    def r_to_u(self, r: float) -> float:
        return self.g * r

    def u_to_r(self, u: float) -> float:
        if self.g == 0:
            raise ValueError("u -> r conversion undefined at g = 0")
        return u / self.g

    def v_to_u(self, v: float) -> float:
        return self.lambda_eff * v

    def u_to_v(self, u: float) -> float:
        if self.lambda_eff == 0:
            raise ValueError("u -> v conversion undefined at lambda = 0")
        return u / self.lambda_eff


def make_frame(hbar: float, mass: float, g: float) -> CouplingFrame:
    """Build a coupling frame; working units are make_frame(1, 0.5, g)."""
    return CouplingFrame(hbar=hbar, mass=mass, g=g)


@dataclass(frozen=True)
class PotentialSpec:
    """A concrete radial potential.

    Two-term families evaluate to r^2 + g^(m-2) r^m.  The pure anharmonic
    family evaluates to r^m + lambda_hat^p r^2 with p = 2 for m = 4 and
    p = 1 for m = 6 (the strong-coupling reference problems).
    """

    family: Family
    g: float = 1.0
    m: int | None = None          # only for GENERAL_TWO_TERM / PURE_ANHARMONIC
    lambda_hat: float = 0.0       # only for PURE_ANHARMONIC

    def __post_init__(self):
        if not (math.isfinite(self.g) and self.g >= 0):
            raise ValueError(f"g must be finite and nonnegative, got {self.g!r}")
        if self.family in (Family.GENERAL_TWO_TERM, Family.PURE_ANHARMONIC):
            if self.m is None or self.m <= 2:
                raise ValueError("general/pure families need integer m > 2")
        else:
            object.__setattr__(self, "m", self.family.m)

    @property
    def power(self) -> int:
        return self.m

    @property
    def anharmonic_coupling(self) -> float:
        """Coefficient of r^m: g^(m-2) for two-term families, 1 for pure."""
        if self.family is Family.PURE_ANHARMONIC:
            return 1.0
        return self.g ** (self.m - 2)

    def __call__(self, r):
        return potential_eval(self, r)


def potential_eval(spec: PotentialSpec, r):
    """Evaluate V(r) for r >= 0 (scalar or numpy array)."""
    import numpy as np

    rr = np.asarray(r, dtype=float)
    if np.any(rr < 0):
        raise ValueError("potential is defined for r >= 0")
    r2 = rr * rr
    if spec.family is Family.PURE_ANHARMONIC:
        p = 2 if spec.m == 4 else 1
        out = rr**spec.m + spec.lambda_hat**p * r2
    else:
        out = r2 + spec.anharmonic_coupling * rr**spec.m
    if np.isscalar(r) or np.ndim(r) == 0:
        return float(out)
    return out


class ParityDomain(enum.Enum):
    """Domain convention at D = 1: half line (even states only) or whole line."""

    HALF_LINE = "half"
    WHOLE_LINE = "whole"


@dataclass(frozen=True)
class StateLabel:
    """State (n_r, ell) in D dimensions; at D = 1, ell is the parity p."""

    D: int
    n_r: int = 0
    ell: int = 0
    parity_domain: ParityDomain = ParityDomain.WHOLE_LINE

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("dimension D must be a positive integer")
        if self.n_r < 0 or self.ell < 0:
            raise ValueError("quantum numbers must be nonnegative")
        if self.D == 1:
            if self.ell not in (0, 1):
                raise ValueError("at D = 1 the second label is a parity in {0, 1}")
            if self.parity_domain is ParityDomain.HALF_LINE and self.ell != 0:
                raise ValueError("half-line D = 1 problems only admit parity 0")

    @property
    def centrifugal(self) -> float:
        """Coefficient ell(ell + D - 2) of the 1/r^2 term."""
        return float(self.ell * (self.ell + self.D - 2))

    @property
    def effective_dimension(self) -> int:
        """D + 2 ell: the (0, ell) state maps onto a higher-D s-wave state."""
        return self.D + 2 * self.ell


def effective_1d_reduction(state: StateLabel) -> tuple[float, float]:
    """Centrifugal coefficient and L_eff of the reduced half-line equation.

    With Psi = r^(-(D-1)/2) u the radial equation becomes a 1D problem with
    potential term L_eff(L_eff + 1)/r^2 where L_eff = ell + (D - 3)/2.
    """
    cent = state.centrifugal
    l_eff = state.ell + (state.D - 3) / 2.0
    return cent, l_eff


def exact_lambda_power(family: Family) -> int:
    """Order step of the nonzero weak-coupling corrections (lambda^step)."""
    if family is Family.QUARTIC:
        return 2
    if family is Family.SEXTIC:
        return 4
    raise ValueError("weak-coupling perturbation ladder defined for quartic/sextic")


def as_fraction(x) -> Fraction:
    """Coerce ints / strings like '3/4' / Fractions to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")
