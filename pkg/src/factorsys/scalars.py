"""Exact scalars: rationals (``Fraction``) and Gaussian rationals (``QI``).

Real values are always kept as ``Fraction`` so that purely rational work never
pays for the complex wrapper; ``QI`` only appears when an imaginary part is
nonzero, and collapses back to ``Fraction`` as soon as it vanishes.

>>> IMAGINARY_UNIT * IMAGINARY_UNIT
Fraction(-1, 1)
>>> conj(QI(1, 2))
QI(1, -2)
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union


class QI:
    """Gaussian rational ``re + im*i`` with a nonzero imaginary part."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __repr__(self) -> str:
        return f"QI({self.re}, {self.im})"

    def __str__(self) -> str:
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"

    def __hash__(self):
        return hash((self.re, self.im))

    def __eq__(self, other):
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, QI):
            return make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, QI):
            return make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return make(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, QI):
            return make(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)
        if isinstance(other, (int, Fraction)):
            return make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return make(self.re / other, self.im / other)
        if isinstance(other, QI):
            norm = other.re * other.re + other.im * other.im
            return self * QI(other.re / norm, -other.im / norm)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            norm = self.re * self.re + self.im * self.im
            return make(other * self.re / norm, -other * self.im / norm)
        return NotImplemented


Scalar = Union[int, Fraction, QI]

IMAGINARY_UNIT = QI(0, 1)


def make(re, im=0) -> Scalar:
    """Build the canonical scalar for ``re + im*i``."""
    if im:
        return QI(re, im)
    return Fraction(re)


def is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, QI)) and not isinstance(x, bool)


def as_scalar(x) -> Scalar:
    if isinstance(x, QI):
        return x if x.im else x.re
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def conj(x: Scalar) -> Scalar:
    if isinstance(x, QI):
        return QI(x.re, -x.im)
    return x


def real_part(x: Scalar) -> Fraction:
    return x.re if isinstance(x, QI) else Fraction(x)


def imag_part(x: Scalar) -> Fraction:
    return x.im if isinstance(x, QI) else Fraction(0)


def inverse(x: Scalar) -> Scalar:
    if not x:
        raise ZeroDivisionError("inverse of zero scalar")
    if isinstance(x, QI):
        return 1 / x
    return 1 / Fraction(x)


def parse(text: str) -> Scalar:
    """Parse ``"3/4"``, ``"-2"``, ``"1/2+3i"``, ``"i"`` and similar."""
    t = text.replace(" ", "")
    if not t.endswith("i"):
        return Fraction(t)
    body = t[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut <= 0:
        re_s, im_s = "0", body
    else:
        re_s, im_s = body[:cut], body[cut:]
    if im_s in ("", "+"):
        im_s = "1"
    elif im_s == "-":
        im_s = "-1"
    return make(Fraction(re_s), Fraction(im_s))


def encode(x: Scalar) -> dict:
    re, im = real_part(x), imag_part(x)
    return {"re_num": re.numerator, "re_den": re.denominator,
            "im_num": im.numerator, "im_den": im.denominator}


def decode(obj) -> Scalar:
    if isinstance(obj, dict):
        return make(Fraction(obj.get("re_num", 0), obj.get("re_den", 1)),
                    Fraction(obj.get("im_num", 0), obj.get("im_den", 1)))
    if isinstance(obj, str):
        return parse(obj)
    if isinstance(obj, int) and not isinstance(obj, bool):
        return Fraction(obj)
    raise ValueError(f"cannot decode scalar from {obj!r}")


FIELDS = ("q", "qi")


def check_field(x: Scalar, field: str) -> None:
    """Reject Gaussian values in a rational session."""
    if field == "q" and isinstance(x, QI):
        raise ValueError(f"{x} is not rational but the session field is q")
