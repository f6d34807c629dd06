"""Sparse trivariate polynomials in x, y, z over exact rationals.

A polynomial is a map from exponent triples (i, j, k) to ``Fraction``
coefficients; zero coefficients are never stored, so equality of the
underlying dicts is polynomial equality.  Terms iterate in graded
lexicographic order (total degree first, then (i, j, k) lexicographically),
which makes the text serialization canonical and diffs of failed identity
checks reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from minfact.errors import ParseError, ValidationError

Exponent = tuple[int, int, int]

_VAR_INDEX = {"x": 0, "y": 1, "z": 2}
_VAR_NAMES = ("x", "y", "z")


def _as_fraction(value: int | Fraction) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class Poly3:
    """Immutable sparse polynomial in Q[x, y, z]."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, int | Fraction] | None = None):
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                q = _as_fraction(coeff)
                if q:
                    i, j, k = exp
                    if i < 0 or j < 0 or k < 0:
                        raise ValidationError(f"negative exponent in {exp}")
                    clean[(i, j, k)] = q
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly3":
        return cls()

    @classmethod
    def one(cls) -> "Poly3":
        return cls({(0, 0, 0): Fraction(1)})

    @classmethod
    def const(cls, value: int | Fraction) -> "Poly3":
        return cls({(0, 0, 0): _as_fraction(value)})

    @classmethod
    def var(cls, name: str) -> "Poly3":
        if name not in _VAR_INDEX:
            raise ValidationError(f"unknown variable {name!r}")
        exp = [0, 0, 0]
        exp[_VAR_INDEX[name]] = 1
        return cls({tuple(exp): Fraction(1)})

    # -- basic protocol ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly3):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly3.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        """Terms in graded-lex order."""
        for exp in sorted(self._terms, key=lambda e: (sum(e), e)):
            yield exp, self._terms[exp]

    def coefficient(self, i: int, j: int = 0, k: int = 0) -> Fraction:
        return self._terms.get((i, j, k), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly3 | int | Fraction") -> "Poly3":
        if isinstance(other, (int, Fraction)):
            other = Poly3.const(other)
        acc = dict(self._terms)
        for exp, coeff in other._terms.items():
            s = acc.get(exp, Fraction(0)) + coeff
            if s:
                acc[exp] = s
            else:
                acc.pop(exp, None)
        out = Poly3.__new__(Poly3)
        out._terms = acc
        return out

    __radd__ = __add__

    def __neg__(self) -> "Poly3":
        out = Poly3.__new__(Poly3)
        out._terms = {exp: -c for exp, c in self._terms.items()}
        return out

    def __sub__(self, other: "Poly3 | int | Fraction") -> "Poly3":
        if isinstance(other, (int, Fraction)):
            other = Poly3.const(other)
        return self + (-other)

    def __rsub__(self, other: int | Fraction) -> "Poly3":
        return Poly3.const(other) - self

    def __mul__(self, other: "Poly3 | int | Fraction") -> "Poly3":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        acc: dict[Exponent, Fraction] = {}
        for (i1, j1, k1), c1 in self._terms.items():
            for (i2, j2, k2), c2 in other._terms.items():
                exp = (i1 + i2, j1 + j2, k1 + k2)
                s = acc.get(exp, Fraction(0)) + c1 * c2
                if s:
                    acc[exp] = s
                else:
                    acc.pop(exp, None)
        out = Poly3.__new__(Poly3)
        out._terms = acc
        return out

    __rmul__ = __mul__

    def scale(self, factor: int | Fraction) -> "Poly3":
        q = _as_fraction(factor)
        out = Poly3.__new__(Poly3)
        out._terms = {exp: c * q for exp, c in self._terms.items()} if q else {}
        return out

    def __pow__(self, exponent: int) -> "Poly3":
        if exponent < 0:
            raise ValidationError("negative polynomial power")
        result = Poly3.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- structural operations ---------------------------------------------

    def substitute(self, **values: int | Fraction) -> "Poly3":
        """Substitute constants for any subset of x, y, z."""
        for name in values:
            if name not in _VAR_INDEX:
                raise ValidationError(f"unknown variable {name!r}")
        acc: dict[Exponent, Fraction] = {}
        for exp, coeff in self._terms.items():
            new_exp = list(exp)
            c = coeff
            for name, value in values.items():
                idx = _VAR_INDEX[name]
                c *= _as_fraction(value) ** exp[idx]
                new_exp[idx] = 0
            key = tuple(new_exp)
            s = acc.get(key, Fraction(0)) + c
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
        out = Poly3.__new__(Poly3)
        out._terms = acc
        return out

    def derivative(self, name: str) -> "Poly3":
        """Formal derivative in one variable."""
        if name not in _VAR_INDEX:
            raise ValidationError(f"unknown variable {name!r}")
        idx = _VAR_INDEX[name]
        acc: dict[Exponent, Fraction] = {}
        for exp, coeff in self._terms.items():
            e = exp[idx]
            if e:
                new_exp = list(exp)
                new_exp[idx] = e - 1
                acc[tuple(new_exp)] = coeff * e
        out = Poly3.__new__(Poly3)
        out._terms = acc
        return out

    def swap(self, a: str, b: str) -> "Poly3":
        """Exchange two variables (used for symmetry checks)."""
        ia, ib = _VAR_INDEX[a], _VAR_INDEX[b]
        acc: dict[Exponent, Fraction] = {}
        for exp, coeff in self._terms.items():
            new_exp = list(exp)
            new_exp[ia], new_exp[ib] = new_exp[ib], new_exp[ia]
            acc[tuple(new_exp)] = coeff
        out = Poly3.__new__(Poly3)
        out._terms = acc
        return out

    def evaluate(self, x: int | Fraction, y: int | Fraction, z: int | Fraction) -> Fraction:
        qx, qy, qz = _as_fraction(x), _as_fraction(y), _as_fraction(z)
        total = Fraction(0)
        for (i, j, k), coeff in self._terms.items():
            total += coeff * qx**i * qy**j * qz**k
        return total

    # -- serialization -------------------------------------------------------

    def to_lines(self) -> list[str]:
        """Canonical line format: ``num/den x^i y^j z^k`` in graded-lex order."""
        lines = []
        for (i, j, k), coeff in self.items():
            lines.append(f"{coeff.numerator}/{coeff.denominator} x^{i} y^{j} z^{k}")
        return lines

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "Poly3":
        terms: dict[Exponent, Fraction] = {}
        for raw in lines:
            line = raw.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ParseError(f"bad polynomial line: {line!r}")
            try:
                num, den = line.split()[0].split("/")
                coeff = Fraction(int(num), int(den))
                exps = []
                for part, name in zip(parts[1:], _VAR_NAMES):
                    head, _, e = part.partition("^")
                    if head != name:
                        raise ParseError(f"bad monomial {part!r} in {line!r}")
                    exps.append(int(e))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad polynomial line: {line!r}") from exc
            terms[(exps[0], exps[1], exps[2])] = coeff
        return cls(terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (i, j, k), coeff in self.items():
            mono = "".join(
                f"{name}^{e}" if e > 1 else name
                for name, e in zip(_VAR_NAMES, (i, j, k))
                if e
            )
            if not mono:
                pieces.append(str(coeff))
            elif coeff == 1:
                pieces.append(mono)
            elif coeff == -1:
                pieces.append(f"-{mono}")
            else:
                pieces.append(f"{coeff}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly3({self})"


X = Poly3.var("x")
Y = Poly3.var("y")
Z = Poly3.var("z")
ONE = Poly3.one()
