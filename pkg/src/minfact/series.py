"""Truncated formal power series in t with Poly3 coefficients.

All arithmetic is exact.  The truncation order N is explicit: a series
carries coefficients c_0..c_N and never reports anything beyond c_N.
Multiplication of two series truncates to the smaller order.

The tree function T(t) = sum_{n>=1} n^{n-1} t^n / n! and the related family
exp_rw_series (coefficients r(n+r)^{n-1}/n!) are built here; the n = 0
coefficient of the latter is defined to be 1 by rewriting the cancelling
pair r * r^{-1} symbolically, never by forming a negative power.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from minfact.errors import ValidationError
from minfact.polynomials import Poly3


class SeriesT:
    """Truncated power series sum_{n=0}^{N} c_n t^n with c_n in Q[x, y, z]."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: list[Poly3]):
        if not coeffs:
            raise ValidationError("a series needs at least the t^0 coefficient")
        self._coeffs = list(coeffs)

    @classmethod
    def zero(cls, order: int) -> "SeriesT":
        return cls([Poly3.zero() for _ in range(order + 1)])

    @classmethod
    def constant(cls, value: Poly3 | int | Fraction, order: int) -> "SeriesT":
        poly = value if isinstance(value, Poly3) else Poly3.const(value)
        coeffs = [Poly3.zero() for _ in range(order + 1)]
        coeffs[0] = poly
        return cls(coeffs)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    def coefficient(self, n: int) -> Poly3:
        if n < 0 or n > self.order:
            raise ValidationError(f"coefficient index {n} outside order {self.order}")
        return self._coeffs[n]

    def coefficients(self) -> list[Poly3]:
        return list(self._coeffs)

    def truncate(self, order: int) -> "SeriesT":
        if order > self.order:
            raise ValidationError("cannot extend a truncated series")
        return SeriesT(self._coeffs[: order + 1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SeriesT):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __add__(self, other: "SeriesT") -> "SeriesT":
        n = min(self.order, other.order)
        return SeriesT([self._coeffs[i] + other._coeffs[i] for i in range(n + 1)])

    def __sub__(self, other: "SeriesT") -> "SeriesT":
        n = min(self.order, other.order)
        return SeriesT([self._coeffs[i] - other._coeffs[i] for i in range(n + 1)])

    def __neg__(self) -> "SeriesT":
        return SeriesT([-c for c in self._coeffs])

    def __mul__(self, other: "SeriesT") -> "SeriesT":
        n = min(self.order, other.order)
        out = [Poly3.zero() for _ in range(n + 1)]
        for i, ci in enumerate(self._coeffs[: n + 1]):
            if ci.is_zero():
                continue
            for j in range(n + 1 - i):
                cj = other._coeffs[j]
                if not cj.is_zero():
                    out[i + j] = out[i + j] + ci * cj
        return SeriesT(out)

    def scale(self, factor: Poly3 | int | Fraction) -> "SeriesT":
        poly = factor if isinstance(factor, Poly3) else Poly3.const(factor)
        return SeriesT([c * poly for c in self._coeffs])

    def mul_exp_t(self, sign: int = 1) -> "SeriesT":
        """Multiply by exp(sign * t) = sum (sign)^m t^m / m!."""
        if sign not in (1, -1):
            raise ValidationError("sign must be +1 or -1")
        n = self.order
        out = [Poly3.zero() for _ in range(n + 1)]
        for m in range(n + 1):
            factor = Fraction(sign**m, factorial(m))
            for i in range(n + 1 - m):
                ci = self._coeffs[i]
                if not ci.is_zero():
                    out[i + m] = out[i + m] + ci.scale(factor)
        return SeriesT(out)

    def __pow__(self, exponent: int) -> "SeriesT":
        if exponent < 0:
            raise ValidationError("negative series power")
        result = SeriesT.constant(1, self.order)
        for _ in range(exponent):
            result = result * self
        return result

    def __repr__(self) -> str:
        inner = " + ".join(f"({c}) t^{n}" for n, c in enumerate(self._coeffs))
        return f"SeriesT[{inner}]"


def exp_t_series(order: int, sign: int = 1) -> SeriesT:
    """exp(sign * t) truncated at the given order."""
    if sign not in (1, -1):
        raise ValidationError("sign must be +1 or -1")
    return SeriesT(
        [Poly3.const(Fraction(sign**m, factorial(m))) for m in range(order + 1)]
    )


def tree_fn_series(order: int) -> SeriesT:
    """The tree function T(t): coefficient of t^n is n^(n-1)/n!, n >= 1."""
    if order < 1:
        raise ValidationError("order must be >= 1")
    coeffs = [Poly3.zero()]
    for n in range(1, order + 1):
        coeffs.append(Poly3.const(Fraction(n ** (n - 1), factorial(n))))
    return SeriesT(coeffs)


def exp_rw_series(r: Poly3, order: int) -> SeriesT:
    """Series with t^n coefficient r(n+r)^(n-1)/n! and t^0 coefficient 1.

    For r = 0 this degenerates to the constant series 1, the consistent
    limit of the coefficient formula.
    """
    if order < 0:
        raise ValidationError("order must be >= 0")
    coeffs = [Poly3.one()]
    if r.is_zero():
        coeffs.extend(Poly3.zero() for _ in range(order))
        return SeriesT(coeffs)
    for n in range(1, order + 1):
        # n >= 1 keeps the exponent n-1 nonnegative; the n = 0 convention
        # (r * r^{-1} -> 1) is already baked into coeffs[0].
        poly = r * (r + n) ** (n - 1)
        coeffs.append(poly.scale(Fraction(1, factorial(n))))
    return SeriesT(coeffs)


def exp_series(s: SeriesT) -> SeriesT:
    """exp of a series with zero constant term, via sum s^k / k!."""
    if not s.coefficient(0).is_zero():
        raise ValidationError("exp_series requires a zero constant term")
    order = s.order
    result = SeriesT.constant(1, order)
    power = SeriesT.constant(1, order)
    for k in range(1, order + 1):
        power = power * s
        result = result + power.scale(Fraction(1, factorial(k)))
    return result
