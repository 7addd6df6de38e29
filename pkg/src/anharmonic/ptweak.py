"""Exact rational perturbation theory in the weak-coupling regime.

Solves the reduced Riccati equation for the logarithmic derivative of the
ground state order by order in the effective coupling.  Writing the full
logarithmic derivative as Y(v) = v * Yt(s) with s = v^2, the equation is

    2 s Yt'(s) - Yt(s) (s Yt(s) - D) = eps - s - c s^q ,

with q = 2 (quartic, corrections at lambda^(2n)) or q = 3 (sextic,
corrections at lambda^(4n)).  Each correction Yt_n is a polynomial in s of
degree n (quartic) or 2n (sextic) whose coefficients are polynomials in the
dimension D with rational coefficients; the energy correction at the same
order is D times the constant term.  All arithmetic is exact (Fraction);
no floating point enters the recursion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .core import Family
from .errors import ResourceLimitError

__all__ = [
    "PolyD",
    "PTSeries",
    "ResourceLimitError",
    "rb_pt_corrections",
    "factorization_check",
    "evaluate_pt_partial_sum",
]

_ZERO = Fraction(0)


class PolyD:
    """Polynomial in the dimension D with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "PolyD":
        return cls([Fraction(c)])

    @classmethod
    def monomial(cls, power: int, c=1) -> "PolyD":
        return cls([_ZERO] * power + [Fraction(c)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PolyD.const(other)
        return isinstance(other, PolyD) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "PolyD":
        if isinstance(other, (int, Fraction)):
            other = PolyD.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyD(
            [
                (self.coeffs[i] if i < len(self.coeffs) else _ZERO)
                + (other.coeffs[i] if i < len(other.coeffs) else _ZERO)
                for i in range(n)
            ]
        )

    def __neg__(self) -> "PolyD":
        return PolyD([-c for c in self.coeffs])

    def __sub__(self, other) -> "PolyD":
        return self + (-other if isinstance(other, PolyD) else PolyD.const(-Fraction(other)))

    def __mul__(self, other) -> "PolyD":
        if isinstance(other, (int, Fraction)):
            return PolyD([c * Fraction(other) for c in self.coeffs])
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1) if self.coeffs and other.coeffs else []
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyD(out)

    __rmul__ = __mul__

    def shift_mul_D(self) -> "PolyD":
        """Multiply by D."""
        if self.is_zero():
            return self
        return PolyD((_ZERO,) + self.coeffs)

    def divmod(self, other: "PolyD") -> tuple["PolyD", "PolyD"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [_ZERO] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.coeffs
        while len(rem) >= len(d) and rem:
            k = len(rem) - len(d)
            q = rem[-1] / d[-1]
            quot[k] = q
            for i, c in enumerate(d):
                rem[k + i] -= q * c
            while rem and rem[-1] == 0:
                rem.pop()
        return PolyD(quot), PolyD(rem)

    def div_exact(self, other: "PolyD") -> "PolyD":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"non-exact polynomial division, remainder {r}")
        return q

    def __call__(self, D):
        out = Fraction(0) if isinstance(D, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            out = out * D + (c if isinstance(D, (int, Fraction)) else float(c))
        return out

    def max_bits(self) -> int:
        return max(
            (max(c.numerator.bit_length(), c.denominator.bit_length()) for c in self.coeffs),
            default=0,
        )

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for p, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if p == 0:
                parts.append(str(c))
            elif p == 1:
                parts.append(f"{c}*D" if c != 1 else "D")
            else:
                parts.append(f"{c}*D^{p}" if c != 1 else f"D^{p}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    def factored_str(self) -> str:
        """Render with the D, D+2, D+4 factors pulled out when exact."""
        rest = self
        factors = []
        for root, label in ((0, "D"), (-2, "(D+2)"), (-4, "(D+4)")):
            if rest.is_zero() or rest.degree < 1:
                break
            if rest(Fraction(root)) == 0:
                rest = rest.div_exact(PolyD([-root, 1]))
                factors.append(label)
        if not factors:
            return str(self)
        return "*".join(factors) + f" * ({rest})"


@dataclass(frozen=True)
class PTSeries:
    """Weak-coupling corrections for one family, exact in D.

    eps[n] is the correction multiplying lambda^(step*n) (eps[0] = D) and
    ytilde[n] is the matching polynomial correction to the reduced
    logarithmic derivative, stored lowest power of s = v^2 first.
    """

    family: Family
    order: int
    eps: tuple[PolyD, ...]
    ytilde: tuple[tuple[PolyD, ...], ...]

    @property
    def lambda_step(self) -> int:
        return 2 if self.family is Family.QUARTIC else 4

    def eps_order_label(self, n: int) -> int:
        """Power of lambda carried by eps[n]."""
        return self.lambda_step * n

    def y_coefficient(self, n: int, k: int) -> PolyD:
        """Coefficient c^(step*n)_{2k}: the v^(2(deg)-2k+1) coefficient of Y_n.

        Follows the indexing in which k = n (quartic) or k = 2n (sextic)
        labels the constant term of the reduced polynomial, equal to eps/D.
        """
        poly = self.ytilde[n]
        deg = len(poly) - 1
        if not 0 <= k <= deg:
            raise IndexError("coefficient index out of range")
        return poly[deg - k]

    def to_json(self) -> str:
        def poly(p: PolyD):
            return [f"{c.numerator}/{c.denominator}" for c in p.coeffs]

        return json.dumps(
            {
                "family": self.family.value,
                "order": self.order,
                "lambda_step": self.lambda_step,
                "eps": [poly(e) for e in self.eps],
                "ytilde": [[poly(c) for c in y] for y in self.ytilde],
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "PTSeries":
        data = json.loads(text)

        def poly(cs):
            return PolyD([Fraction(c) for c in cs])

        return cls(
            family=Family(data["family"]),
            order=data["order"],
            eps=tuple(poly(e) for e in data["eps"]),
            ytilde=tuple(tuple(poly(c) for c in y) for y in data["ytilde"]),
        )


def _poly_s_mul(a: list[PolyD], b: list[PolyD]) -> list[PolyD]:
    """Product of polynomials in s with PolyD coefficients."""
    out = [PolyD() for _ in range(len(a) + len(b) - 1)]
    for i, pa in enumerate(a):
        if pa.is_zero():
            continue
        for j, pb in enumerate(b):
            out[i + j] = out[i + j] + pa * pb
    return out


def rb_pt_corrections(family: Family, n_orders: int, *, max_bits: int = 200_000) -> PTSeries:
    """First n_orders nonzero weak-coupling corrections beyond eps_0 = D.

    The recursion is back-substitution from the top degree down: at each
    order the coefficient of s^j fixes the coefficient of s^(j-1), and the
    constant term fixes the energy correction via eps_n = D * c_0.
    """
    if n_orders < 1:
        raise ValueError("need at least one correction order")
    if family not in (Family.QUARTIC, Family.SEXTIC):
        raise ValueError("weak-coupling ladder implemented for quartic/sextic")

    q = 2 if family is Family.QUARTIC else 3          # forcing power of s
    deg_step = 1 if family is Family.QUARTIC else 2   # degree of Yt_n is deg_step*n

    eps: list[PolyD] = [PolyD.monomial(1)]            # eps_0 = D
    ys: list[list[PolyD]] = [[PolyD.const(1)]]        # Yt_0 = 1

    for n in range(1, n_orders + 1):
        deg = deg_step * n
        # cross term Q(s) = sum_{k=1}^{n-1} Yt_k Yt_{n-k}, degree deg
        cross = [PolyD() for _ in range(deg + 1)]
        for k in range(1, n):
            prod = _poly_s_mul(ys[k], ys[n - k])
            for j, p in enumerate(prod):
                cross[j] = cross[j] + p
        # back substitution: coefficient of s^j reads
        #   (2j + D) c_j - 2 c_{j-1} - Q_{j-1} = -[n == 1][j == q]
        c = [PolyD() for _ in range(deg + 1)]
        upper = PolyD()  # c_{deg+1} = 0
        for j in range(deg + 1, 0, -1):
            rhs = (PolyD.const(2 * j) + PolyD.monomial(1)) * upper - cross[j - 1]
            if n == 1 and j == q:
                rhs = rhs + PolyD.const(1)
            c[j - 1] = rhs * Fraction(1, 2)
            upper = c[j - 1]
        eps_n = c[0].shift_mul_D()
        if eps_n.max_bits() > max_bits:
            raise ResourceLimitError(
                f"rational magnitudes exceed {max_bits} bits at order {n}"
            )
        eps.append(eps_n)
        ys.append(c)

    return PTSeries(
        family=family,
        order=n_orders,
        eps=tuple(eps),
        ytilde=tuple(tuple(y) for y in ys),
    )


def factorization_check(series: PTSeries) -> list[PolyD]:
    """Divide each correction by its guaranteed D(D+2)(...) factor.

    Returns the quotient polynomials R_n; raises if any division leaves a
    remainder, which would signal a recursion bug.
    """
    base = PolyD.monomial(1) * PolyD([2, 1])  # D (D+2)
    if series.family is Family.SEXTIC:
        base = base * PolyD([4, 1])           # * (D+4)
    out = []
    for n in range(1, series.order + 1):
        try:
            out.append(series.eps[n].div_exact(base))
        except ArithmeticError as exc:
            raise ArithmeticError(
                f"factorization failure at order {n}: {exc}"
            ) from exc
    return out


def evaluate_pt_partial_sum(
    series: PTSeries, D: int, lam: float, n_terms: int
) -> float:
    """Truncated weak-coupling energy: sum of the first n_terms corrections.

    n_terms counts the terms of the nonzero ladder including eps_0, so
    n_terms = 1 is the harmonic value D.  Coefficients are evaluated
    exactly at integer D before the floating summation.
    """
    if n_terms < 1 or n_terms > series.order + 1:
        raise ValueError("n_terms out of range for this series")
    total = 0.0
    for n in range(n_terms):
        coeff = series.eps[n](Fraction(D))
        total += float(coeff) * lam ** series.eps_order_label(n)
    return total
