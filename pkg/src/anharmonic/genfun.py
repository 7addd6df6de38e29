"""Closed-form generating functions of the semiclassical phase expansion.

For the quartic and sextic oscillators the logarithmic derivative of the
ground state, written in the classical coordinate u = g r, expands in even
powers of the effective coupling,

    Z(u) = Z_0(u) + lambda^2 Z_2(u) + lambda^4 Z_4(u) + ... ,

and integrating term by term gives the phase expansion

    Phi(r) = G_0(r) + g^2 G_2(r) + g^4 G_4(r) + g^6 G_6(r) + ...

The first two members of each ladder are elementary (square roots and
logarithms); G_4 and G_6 are rational in the variable w = sqrt(1 + g^2 r^2)
(quartic) or w = sqrt(1 + g^4 r^4) (sextic) and are transcribed here in
that form.  Every Z_{2k} and G_{2k} is a polynomial in the dimension D of
degree k, and its Taylor coefficients in u reproduce, order by order, the
coefficients of the weak-coupling polynomials computed in ptweak -- this
duality is the main correctness guard on the transcriptions.

Working units hbar = 1, M = 1/2 throughout, so the quantum and classical
radial coordinates coincide up to the coupling: u = g r, and
d G_{2k} / dr = Z_{2k}(g r) / g.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from .core import Family
from .errors import AccuracyError
from .ptweak import PolyD

__all__ = [
    "eval_Z",
    "eval_G",
    "series_coefficients",
    "asymptotic_tail",
    "general_g0_g2",
    "AccuracyError",
]


def _check_family(family: Family) -> None:
    if family not in (Family.QUARTIC, Family.SEXTIC):
        raise ValueError("generating functions implemented for quartic/sextic")


def eval_Z(family: Family, k: int, u: float, D: int) -> float:
    """Generating function Z_k of the logarithmic derivative.

    For the quartic family the argument is the *squared* classical
    coordinate (the even symmetry has been divided out), so k = 0 returns
    sqrt(1 + u).  For the sextic family the argument is the plain classical
    coordinate and k = 0 returns u sqrt(1 + u^4).  The k = 2 member has a
    removable singularity at u = 0 which is evaluated by its limit; the
    form used below, with 1 + x - sqrt(1+x) rewritten as
    sqrt(1+x) x / (1 + sqrt(1+x)), is exact and cancellation-free.
    """
    _check_family(family)
    if u < 0:
        raise ValueError("u must be nonnegative")
    if k not in (0, 2):
        raise ValueError("closed forms available for k in {0, 2}")
    if family is Family.QUARTIC:
        w = math.sqrt(1.0 + u)
        if k == 0:
            return w
        return (1.0 + D * w / (1.0 + w)) / (2.0 * (1.0 + u))
    x = u ** 4
    w = math.sqrt(1.0 + x)
    if k == 0:
        return u * w
    return u ** 3 * (2.0 + D * w / (1.0 + w)) / (2.0 * (1.0 + x))


def _quartic_G(k: int, r: float, D: int, g: float) -> float:
    w = math.sqrt(1.0 + g * g * r * r)
    if k == 0:
        return w ** 3 / (3.0 * g * g)
    if k == 2:
        return (0.25 * math.log1p(g * g * r * r) + 0.5 * D * math.log1p(w)) / (g * g)
    if k == 4:
        return (
            5.0 / (24.0 * w ** 3)
            + D * (1.0 + w + w * w) / (4.0 * (w + 1.0) * w * w)
            + D * D / (8.0 * w)
        ) / (g * g)
    # k == 6
    return (
        -5.0 / (16.0 * w ** 6)
        - D
        * (15.0 + 30.0 * w + 20.0 * w ** 2 + 16.0 * w ** 3 + 20.0 * w ** 4 + 30.0 * w ** 5 + 15.0 * w ** 6)
        / (48.0 * (w + 1.0) ** 2 * w ** 5)
        - D * D
        * (4.0 + 8.0 * w + 8.0 * w ** 2 + 12.0 * w ** 3 + 18.0 * w ** 4 + 9.0 * w ** 5)
        / (32.0 * (w + 1.0) ** 2 * w ** 4)
        - D ** 3 * (1.0 + 3.0 * w * w) / (48.0 * w ** 3)
    ) / (g * g)


def _sextic_G(k: int, r: float, D: int, g: float) -> float:
    x = (g * r) ** 2
    w = math.sqrt(1.0 + x * x)
    if k == 0:
        # First term r^2 w / 4: fixed so that dG_0/dr = sqrt(r^2 + g^4 r^6),
        # matching Z_0(gr)/g; the source expression carries a spurious 1/g^2.
        return 0.25 * r * r * w + 0.25 * math.log(x + w) / (g * g)
    if k == 2:
        return (0.25 * math.log1p(x * x) + 0.25 * D * math.log1p(w)) / (g * g)
    if k == 4:
        # The 1/g^2 here (and in k = 6) restores the u = g r scaling of the
        # ladder; without it the small-coupling Taylor coefficients disagree
        # with the exact weak-coupling polynomials by one power of g^2.
        return (
            r
            * r
            / (4.0 * g * g * w)
            * (
                (5.0 + w * w) / (3.0 * w * w)
                + D * (1.0 + w + w * w) / (w * (w + 1.0))
                + 0.25 * D * D
            )
        )
    # k == 6
    return (
        (5.0 - 3.0 * w * w) / w ** 6
        + D
        * (15.0 + 15.0 * w - 4.0 * w ** 2 + 2.0 * w ** 3 + 6.0 * w ** 4 + 6.0 * w ** 5)
        / (6.0 * (w + 1.0) * w ** 5)
        + D * D
        * (2.0 + 2.0 * w + w ** 2 + 3.0 * w ** 3 + 3.0 * w ** 4)
        / (4.0 * (w + 1.0) * w ** 4)
        + D ** 3 * (1.0 + 3.0 * w * w) / (24.0 * w ** 3)
    ) / (4.0 * g ** 4)


def eval_G(family: Family, k: int, r: float, D: int, g: float) -> float:
    """Phase generating function G_k(r; D, g), k in {0, 2, 4, 6}.

    The g^{2k} prefactors of the phase expansion are *not* included; the
    caller assembles Phi = sum_k g^{2k} G_{2k}.  Integration constants
    follow the closed forms as written, so only differences and
    derivatives of phases should be compared across conventions.
    """
    _check_family(family)
    if r < 0:
        raise ValueError("r must be nonnegative")
    if g <= 0:
        raise ValueError("g must be positive")
    if k not in (0, 2, 4, 6):
        raise ValueError("k must be one of 0, 2, 4, 6")
    if family is Family.QUARTIC:
        return _quartic_G(k, r, D, g)
    return _sextic_G(k, r, D, g)


def _sqrt_series(n_terms: int) -> list[Fraction]:
    """Taylor coefficients of sqrt(1+x) up to x^(n_terms-1), exact."""
    out = [Fraction(1)]
    for n in range(1, n_terms):
        # binomial(1/2, n) via the downward recurrence
        out.append(out[-1] * Fraction(3 - 2 * n, 2 * n))
    return out


def series_coefficients(family: Family, k: int, n_terms: int) -> list[PolyD]:
    """Exact Taylor coefficients c^(step*n)_k of the closed-form Z_k.

    Returns the first n_terms nonzero ladder entries, each a polynomial in
    D: for k = 0 they are the binomial coefficients of sqrt(1+x) (constant
    in D), for k = 2 linear polynomials in D.  The entry at ladder index n
    equals the coefficient of the appropriate power of r in the n-th
    weak-coupling correction of the logarithmic derivative, which is how
    these tables are cross-checked against ptweak.
    """
    _check_family(family)
    if k not in (0, 2):
        raise ValueError("series available for k in {0, 2}")
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    if k == 0:
        return [PolyD.const(c) for c in _sqrt_series(n_terms)]
    # k == 2: [c x + D(1 + x - sqrt(1+x))] / (2 (1+x)) expanded in x, with
    # c = 1 (quartic, x = squared variable) or c = 2 (sextic, x = u^4);
    # ladder starts at n = 1.
    b = _sqrt_series(n_terms + 1)
    lead = 1 if family is Family.QUARTIC else 2
    # numerator coefficients: [x^1] = lead + D/2, [x^j >= 2] = -D b_j
    m = [PolyD()] + [PolyD([Fraction(lead), Fraction(1, 2)])] + [
        PolyD.monomial(1) * (-b[j]) for j in range(2, n_terms + 1)
    ]
    out = []
    for n in range(1, n_terms + 1):
        acc = PolyD()
        for j in range(1, n + 1):
            sign = 1 if (n - j) % 2 == 0 else -1
            acc = acc + m[j] * sign
        out.append(acc * Fraction(1, 2))
    return out


def asymptotic_tail(
    family: Family, D: int, eps: float, lam: float, order: int = 4
) -> list[tuple[int, float]]:
    """Large-distance expansion of the logarithmic derivative y(v).

    Returns (power of v, coefficient) pairs in descending power.  The
    leading terms are energy- and dimension-independent; the first
    energy-dependent coefficient sits at v^-2 (quartic) or v^-3 (sextic).
    """
    _check_family(family)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if family is Family.QUARTIC:
        terms = [
            (2, lam),
            (0, 1.0 / (2.0 * lam)),
            (-1, (D + 1) / 2.0),
            (-2, -(4.0 * lam * lam * eps + 1.0) / (8.0 * lam ** 3)),
        ]
    else:
        terms = [
            (3, lam * lam),
            (-1, ((D + 2) * lam * lam + 1.0) / (2.0 * lam * lam)),
            (-3, -eps / (2.0 * lam * lam)),
        ]
    return terms[:order]


def general_g0_g2(m: int, D: int, g: float, r: float) -> tuple[float, float]:
    """First two phase generating functions for V = r^2 + g^(m-2) r^m.

    G0 uses the hypergeometric closed form

        G0 = (2/(m+2)) r^2 [ sqrt(1+x) + ((m-2)/4) 2F1(1/2, 2/(m-2);
                                                        m/(m-2); -x) ] ,

    with x = (g r)^(m-2); its integration constant differs from the
    family-specific forms (G0(0) = 0 here, versus 1/(3 g^2) for the
    quartic ladder).  G2 is logarithmic,

        g^2 G2 = (1/4) ln(1+x) + (D/(m-2)) ln(1 + sqrt(1+x)) ,

    where the dimension term carries 1/(m-2): that exponent is forced by
    the order-lambda^2 term of the governing equation and reproduces the
    quartic (D/2) and sextic (D/4) closed forms exactly.
    """
    if m <= 2:
        raise ValueError("m must exceed 2")
    if r < 0 or g <= 0:
        raise ValueError("require r >= 0 and g > 0")
    x = (g * r) ** (m - 2)
    try:
        h = mpmath.hyp2f1(
            mpmath.mpf(1) / 2,
            mpmath.mpf(2) / (m - 2),
            mpmath.mpf(m) / (m - 2),
            -mpmath.mpf(repr(x)),
        )
        h = float(h)
    except (mpmath.libmp.NoConvergence, ValueError) as exc:
        raise AccuracyError(f"hypergeometric evaluation failed at x={x}: {exc}") from exc
    if not math.isfinite(h):
        raise AccuracyError(f"hypergeometric evaluation non-finite at x={x}")
    w = math.sqrt(1.0 + x)
    g0 = 2.0 / (m + 2) * r * r * (w + 0.25 * (m - 2) * h)
    g2 = (0.25 * math.log1p(x) + D / (m - 2) * math.log1p(w)) / (g * g)
    return g0, g2
