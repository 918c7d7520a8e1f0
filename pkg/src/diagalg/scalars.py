"""
Exact scalars: arbitrary-precision rationals and polynomials in the loop
parameter d.

Every coefficient in this package is a ``fractions.Fraction`` (kept reduced
with a positive denominator by the stdlib), and every scalar that can pick up
loop factors is a :class:`DeltaPoly`, a polynomial in d with rational
coefficients. Nothing here ever goes through floats.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction

Coeffable = Union["DeltaPoly", Fraction, int]

_TERM_RE = re.compile(
    r"""^(?P<coeff>[+-]?\d+(?:/\d+)?)?        # optional rational coefficient
         (?P<star>\*)?                        # optional '*'
         (?P<var>d(?:\^(?P<exp>\d+))?)?$      # optional d or d^k
    """,
    re.VERBOSE,
)


class DeltaPoly:
    """A polynomial in d with Fraction coefficients, kept zero-pruned."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        cleaned: dict[int, Fraction] = {}
        for deg, c in items:
            if deg < 0:
                raise ValueError(f"negative degree {deg}")
            c = Fraction(c)
            if c:
                cleaned[deg] = cleaned.get(deg, Fraction(0)) + c
                if not cleaned[deg]:
                    del cleaned[deg]
        self._coeffs = cleaned

    @classmethod
    def zero(cls) -> DeltaPoly:
        return cls()

    @classmethod
    def one(cls) -> DeltaPoly:
        return cls({0: Fraction(1)})

    @classmethod
    def constant(cls, value: Fraction | int) -> DeltaPoly:
        return cls({0: Fraction(value)})

    @classmethod
    def delta(cls, exponent: int = 1, coeff: Fraction | int = 1) -> DeltaPoly:
        """The monomial coeff * d^exponent."""
        return cls({exponent: Fraction(coeff)})

    def coefficient(self, degree: int) -> Fraction:
        return self._coeffs.get(degree, Fraction(0))

    def items(self):
        return self._coeffs.items()

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return max(self._coeffs) if self._coeffs else -1

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_one(self) -> bool:
        return self._coeffs == {0: Fraction(1)}

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, DeltaPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == DeltaPoly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: Coeffable) -> DeltaPoly:
        other = _as_poly(other)
        coeffs = dict(self._coeffs)
        for deg, c in other._coeffs.items():
            coeffs[deg] = coeffs.get(deg, Fraction(0)) + c
        return DeltaPoly(coeffs)

    __radd__ = __add__

    def __neg__(self) -> DeltaPoly:
        return DeltaPoly({deg: -c for deg, c in self._coeffs.items()})

    def __sub__(self, other: Coeffable) -> DeltaPoly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: Coeffable) -> DeltaPoly:
        return _as_poly(other) - self

    def __mul__(self, other: Coeffable) -> DeltaPoly:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return DeltaPoly({deg: a * c for deg, a in self._coeffs.items()})
        coeffs: dict[int, Fraction] = {}
        for d1, c1 in self._coeffs.items():
            for d2, c2 in other._coeffs.items():
                deg = d1 + d2
                coeffs[deg] = coeffs.get(deg, Fraction(0)) + c1 * c2
        return DeltaPoly(coeffs)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> DeltaPoly:
        if exponent < 0:
            raise ValueError("negative powers are not polynomial")
        acc = DeltaPoly.one()
        base = self
        while exponent:
            if exponent & 1:
                acc = acc * base
            base = base * base
            exponent >>= 1
        return acc

    def evaluate(self, delta: Fraction | int) -> Fraction:
        """Evaluate at a nonzero rational value of d (Horner, exact)."""
        delta = Fraction(delta)
        if delta == 0:
            raise ValueError("d = 0 is excluded; the loop parameter must be nonzero")
        result = Fraction(0)
        for deg in range(self.degree, -1, -1):
            result = result * delta + self._coeffs.get(deg, Fraction(0))
        return result

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        chunks: list[str] = []
        for deg in sorted(self._coeffs, reverse=True):
            c = self._coeffs[deg]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if deg == 0:
                body = str(mag)
            else:
                var = "d" if deg == 1 else f"d^{deg}"
                body = var if mag == 1 else f"{mag}*{var}"
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"DeltaPoly({str(self)!r})"


def _as_poly(value: Coeffable) -> DeltaPoly:
    if isinstance(value, DeltaPoly):
        return value
    return DeltaPoly.constant(value)


def parse_poly(text: str) -> DeltaPoly:
    """Parse the textual form produced by ``str(DeltaPoly)``, e.g. ``3/2*d^2 - 1``."""
    stripped = text.replace(" ", "")
    if not stripped:
        raise ValueError("empty polynomial")
    if stripped == "0":
        return DeltaPoly.zero()
    # Split into signed terms; normalize the leading sign.
    pieces = re.split(r"(?=[+-])", stripped)
    coeffs: dict[int, Fraction] = {}
    for piece in pieces:
        if not piece:
            continue
        body = piece.lstrip("+-")
        sign = -1 if piece.startswith("-") else 1
        m = _TERM_RE.match(body)
        if m is None or (m.group("coeff") is None and m.group("var") is None):
            raise ValueError(f"bad polynomial term {piece!r} in {text!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        if m.group("var"):
            deg = int(m.group("exp")) if m.group("exp") else 1
        else:
            deg = 0
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + sign * coeff
    return DeltaPoly(coeffs)


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal like ``7/3`` or ``-5/2``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}") from exc
