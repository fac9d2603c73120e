"""Square roots of rationals and finite sums of radicals with squarefree radicands.

RadicalSum is the working field for sum-rule accumulation: it is closed under
+ and *, and a value is rational exactly when its only radicand is 1.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, isqrt, sqrt

from .errors import DomainError, ExactParseError
from .pfrational import PFRational, factorize, sqrt_extract


class SqrtRational:
    """sign * sqrt(radicand) with a nonnegative prime-factored radicand."""

    __slots__ = ("sign", "radicand")

    def __init__(self, sign: int, radicand: PFRational):
        if sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or 1, got {sign}")
        if radicand.sign < 0:
            raise DomainError("SqrtRational radicand must be nonnegative")
        if radicand.is_zero:
            sign = 0
        elif sign == 0:
            radicand = PFRational.zero()
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "radicand", radicand)

    def __setattr__(self, name, value):
        raise AttributeError("SqrtRational is immutable")

    @classmethod
    def zero(cls) -> "SqrtRational":
        return cls(0, PFRational.zero())

    @classmethod
    def from_fraction(cls, value, sign: int = 1) -> "SqrtRational":
        """sign * sqrt(value) for a nonnegative rational value."""
        fr = Fraction(value)
        if fr < 0:
            raise DomainError("radicand must be nonnegative")
        return cls(sign if fr != 0 else 0, PFRational.from_fraction(fr))

    def square(self) -> PFRational:
        if self.sign == 0:
            return PFRational.zero()
        return self.radicand

    def __mul__(self, other: "SqrtRational") -> "SqrtRational":
        if not isinstance(other, SqrtRational):
            return NotImplemented
        return SqrtRational(self.sign * other.sign, self.radicand * other.radicand)

    def __neg__(self) -> "SqrtRational":
        return SqrtRational(-self.sign, self.radicand)

    def to_radical_sum(self) -> "RadicalSum":
        if self.sign == 0:
            return RadicalSum.zero()
        rational, d = sqrt_extract(self.radicand)
        return RadicalSum({d: self.sign * rational.value})

    def to_float(self) -> float:
        """Binary64 shadow; diagnostics only."""
        return self.sign * sqrt(self.radicand.to_float())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SqrtRational):
            return NotImplemented
        return self.sign == other.sign and self.radicand == other.radicand

    def __hash__(self):
        return hash((self.sign, self.radicand))

    def __repr__(self) -> str:
        return f"SqrtRational({self.sign}, {self.radicand!r})"


def _combine_radicands(d1: int, d2: int) -> tuple[int, int]:
    """sqrt(d1)*sqrt(d2) = g*sqrt(d) for squarefree d1, d2; returns (g, d)."""
    g = gcd(d1, d2)
    return g, (d1 // g) * (d2 // g)


class RadicalSum:
    """A finite sum sum_i c_i * sqrt(d_i), c_i rational, d_i squarefree positive.

    The term map is canonical: no zero coefficients, each radicand stored once,
    so equal values compare equal structurally. Immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        clean: dict[int, Fraction] = {}
        for d, c in (terms or {}).items():
            if d <= 0:
                raise DomainError(f"radicand {d} must be positive")
            c = Fraction(c)
            if c != 0:
                clean[d] = c
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("RadicalSum is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "RadicalSum":
        return cls({})

    @classmethod
    def from_rational(cls, value) -> "RadicalSum":
        return cls({1: Fraction(value)})

    @classmethod
    def from_sqrt(cls, value, sign: int = 1) -> "RadicalSum":
        """sign * sqrt(value) for a nonnegative rational with small factors.

        Factors value by trial division, so this is meant for hand-sized
        inputs (weights such as sqrt((2l+1)(2l-3))); coupling coefficients
        keep their radicands prime-factored from construction instead.
        """
        fr = Fraction(value)
        if fr < 0:
            raise DomainError("radicand must be nonnegative")
        if fr == 0 or sign == 0:
            return cls.zero()
        return SqrtRational(sign, PFRational.from_fraction(fr)).to_radical_sum()

    # -- queries ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_rational(self) -> bool:
        return not self._terms or set(self._terms) == {1}

    def as_fraction(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if set(self._terms) != {1}:
            raise DomainError(f"{self} is not rational")
        return self._terms[1]

    def terms(self) -> list[tuple[int, Fraction]]:
        """(radicand, coefficient) pairs with radicands increasing."""
        return sorted(self._terms.items())

    def coefficient(self, d: int) -> Fraction:
        return self._terms.get(d, Fraction(0))

    def to_float(self) -> float:
        """Binary64 shadow; diagnostics and the floating Stark output only."""
        return float(sum(float(c) * sqrt(d) for d, c in self._terms.items()))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other) -> "RadicalSum":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for d, c in other._terms.items():
            terms[d] = terms.get(d, Fraction(0)) + c
        return RadicalSum(terms)

    __radd__ = __add__

    def __sub__(self, other) -> "RadicalSum":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RadicalSum":
        return _coerce(other) - self

    def __neg__(self) -> "RadicalSum":
        return RadicalSum({d: -c for d, c in self._terms.items()})

    def __mul__(self, other) -> "RadicalSum":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RadicalSum.zero()
            return RadicalSum({d: c * other for d, c in self._terms.items()})
        if not isinstance(other, RadicalSum):
            return NotImplemented
        terms: dict[int, Fraction] = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                g, d = _combine_radicands(d1, d2)
                terms[d] = terms.get(d, Fraction(0)) + c1 * c2 * g
        return RadicalSum(terms)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"RadicalSum({render_exact(self)!r})"

    def __str__(self) -> str:
        return render_exact(self)


def _coerce(value) -> "RadicalSum":
    if isinstance(value, RadicalSum):
        return value
    if isinstance(value, (int, Fraction)):
        return RadicalSum.from_rational(value)
    return NotImplemented


# -- fixed text grammar ----------------------------------------------
#
#   value  := '0/1' | term (' + ' term | ' - ' term)*
#   term   := ['-'] p '/' q  |  ['-'] '(' p '/' q ')' '*sqrt(' d ')'
#
# Terms appear with radicands strictly increasing; the leading '-' is only
# ever on the first term. parse_exact(render_exact(x)) == x bit-exactly.

_TERM_RE = re.compile(
    r"^(?:(?P<num>-?\d+)/(?P<den>\d+)"
    r"|(?P<neg>-)?\((?P<rnum>\d+)/(?P<rden>\d+)\)\*sqrt\((?P<rad>\d+)\))$"
)


def render_exact(value) -> str:
    """Render a RadicalSum (or rational) in the fixed exact-value grammar."""
    if isinstance(value, (int, Fraction)):
        value = RadicalSum.from_rational(value)
    if value.is_zero:
        return "0/1"
    parts: list[str] = []
    for i, (d, c) in enumerate(value.terms()):
        mag = abs(c)
        if d == 1:
            body = f"{mag.numerator}/{mag.denominator}"
        else:
            body = f"({mag.numerator}/{mag.denominator})*sqrt({d})"
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def parse_exact(text: str) -> RadicalSum:
    """Parse the exact-value grammar back into a RadicalSum."""
    s = text.strip()
    if not s:
        raise ExactParseError("empty exact-value string")
    # split into signed chunks on ' + ' / ' - '
    chunks = re.split(r" ([+-]) ", s)
    signed: list[tuple[int, str]] = [(1, chunks[0])]
    for op, body in zip(chunks[1::2], chunks[2::2]):
        signed.append((1 if op == "+" else -1, body))
    terms: dict[int, Fraction] = {}
    for outer_sign, chunk in signed:
        m = _TERM_RE.match(chunk)
        if not m:
            raise ExactParseError(f"bad exact-value term {chunk!r} in {text!r}")
        if m.group("num") is not None:
            d = 1
            c = Fraction(int(m.group("num")), int(m.group("den")))
        else:
            d = int(m.group("rad"))
            c = Fraction(int(m.group("rnum")), int(m.group("rden")))
            if m.group("neg"):
                c = -c
            if d < 1:
                raise ExactParseError(f"radicand must be positive in {chunk!r}")
            root = isqrt(d)
            if d > 1 and root * root == d:
                raise ExactParseError(f"radicand {d} is a perfect square")
        c *= outer_sign
        if d in terms:
            raise ExactParseError(f"radicand {d} repeated in {text!r}")
        if c != 0:
            terms[d] = c
    value = RadicalSum(terms)
    if value.is_zero and s != "0/1":
        # only the canonical zero spelling round-trips
        raise ExactParseError(f"zero must be written '0/1', got {text!r}")
    return value


def sqrt_int(k: int, sign: int = 1) -> RadicalSum:
    """sign * sqrt(k) for a small nonnegative integer k."""
    if k < 0:
        raise DomainError("radicand must be nonnegative")
    if k == 0 or sign == 0:
        return RadicalSum.zero()
    rational, d = sqrt_extract(PFRational(1, factorize(k)) if k > 1 else PFRational.one())
    return RadicalSum({d: sign * rational.value})
