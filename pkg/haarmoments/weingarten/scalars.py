"""
Exact scalars module.

Exact operator entries and group algebra coefficients are elements of
sympy's field of Gaussian rationals QQ_I. Class functions and closed
forms stay on Fraction; the helpers here move values between the two
and read their parts.
"""

from fractions import Fraction
from typing import Any, Union

from sympy import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational

from haarmoments.output.error_handler import ArgumentError, ConsistencyError

ScalarLike = Union[int, Fraction, GaussianRational]

ZERO: GaussianRational = QQ_I.zero
ONE: GaussianRational = QQ_I.one


def to_qq(value: Any) -> Any:
    """
    Converts an exact rational (int, Fraction or a QQ element) into QQ.

    :param value: Exact rational
    :return: QQ element
    :raises ArgumentError: If the value is not an exact rational
    """
    if isinstance(value, bool) or not hasattr(value, "denominator"):
        raise ArgumentError("bad_rational", value)
    return QQ(int(value.numerator), int(value.denominator))


def rational(value: Any) -> Fraction:
    """
    Converts a QQ element (or any exact rational) into a Fraction.

    :param value: Exact rational
    :return: Equal Fraction
    """
    return Fraction(int(value.numerator), int(value.denominator))


def gaussian(value: Any, imag: Any = 0) -> GaussianRational:
    """
    Builds a QQ_I element from exact parts, or converts a scalar.

    Floats and complex numbers are read through their exact binary
    value.

    :param value: Real part, or a complete scalar when imag is 0
    :param imag: Imaginary part
    :return: Gaussian rational
    :raises ArgumentError: If a part is not exact
    """
    if isinstance(value, GaussianRational) and not imag:
        return value
    if isinstance(value, complex):
        value, imag = Fraction(value.real), Fraction(value.imag) + Fraction(imag)
    elif isinstance(value, float):
        value = Fraction(value)
    if isinstance(imag, float):
        imag = Fraction(imag)
    return QQ_I.new(to_qq(value), to_qq(imag))


def real_part(value: GaussianRational) -> Fraction:
    return rational(value.x)


def imag_part(value: GaussianRational) -> Fraction:
    return rational(value.y)


def conjugate(value: GaussianRational) -> GaussianRational:
    return QQ_I.new(value.x, -value.y)


def abs2(value: GaussianRational) -> Fraction:
    """Squared modulus."""
    return rational(value.x * value.x + value.y * value.y)


def is_real(value: GaussianRational) -> bool:
    return not value.y


def real_value(value: GaussianRational, what: str = "value") -> Fraction:
    """
    Gets the real part, insisting that the imaginary part is zero.

    :param value: Gaussian rational
    :param what: Name of the quantity, for the error message
    :return: Real part
    :raises ConsistencyError: If the imaginary part is not zero
    """
    if value.y:
        raise ConsistencyError("not_real", what, value)
    return real_part(value)


def to_complex(value: GaussianRational) -> complex:
    return complex(float(real_part(value)), float(imag_part(value)))
