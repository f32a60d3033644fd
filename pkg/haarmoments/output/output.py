"""
Output tools module.

Everything the command line tool prints goes through this module: the
display string lookup, the exact and floating number formats, and the
JSON/text emitters. Exact rationals are always written as "p/q" strings
(never floats) so that machine consumers keep exactness.
"""

import json
from fractions import Fraction
from numbers import Integral
from typing import Any, Iterable, List, Optional, TextIO

import numpy
from loguru import logger
from sympy import QQ
from sympy.polys.domains.gaussiandomains import GaussianElement

from haarmoments.output import eng_strings

DEFAULT_LANG = "eng"

# Turned into a dict at runtime, so that we don't have to use getattr.
ENG_STRINGS = {
    name: value for name, value in vars(eng_strings).items()
    if not name.startswith("__")
}


def disp_str(str_name: str, lang: str = DEFAULT_LANG) -> str:
    """
    Retrieves display string based on string name.

    :param str_name: Name of string
    :param lang: Language of string
    :return: Pre-formatted string, or an empty string if the name is
        unknown
    """
    if lang == "eng" and str_name in ENG_STRINGS:
        return ENG_STRINGS[str_name]

    return ""


def format_rational(value: Any) -> str:
    """
    Format an exact rational as "p/q", or "p" when the denominator is 1.

    :param value: Integer, Fraction or QQ element
    :return: Exact string form
    """
    if isinstance(value, Integral):
        return str(int(value))

    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator == 1:
        return str(numerator)

    return f"{numerator}/{denominator}"


def format_gaussian(value: GaussianElement) -> str:
    """
    Format a Gaussian rational as "a", "bi" or "a+bi" with exact parts.

    :param value: QQ_I element
    :return: Exact string form
    """
    if not value.y:
        return format_rational(value.x)
    if not value.x:
        return f"{format_rational(value.y)}i"
    sign = "-" if value.y < 0 else "+"
    return f"{format_rational(value.x)}{sign}{format_rational(abs(value.y))}i"


def gaussian_pair(value: GaussianElement) -> List[str]:
    """Exact [re, im] string pair of a Gaussian rational."""
    return [format_rational(value.x), format_rational(value.y)]


def gaussian_to_json(value: GaussianElement) -> Any:
    """Real values serialize as "p/q", others as a [re, im] pair."""
    if not value.y:
        return format_rational(value.x)
    return gaussian_pair(value)


def format_float(value: Any, precision: int) -> str:
    """
    Format a float or complex number with the configured precision.

    :param value: Real or complex number
    :param precision: Significant digits
    :return: Formatted number
    """
    if isinstance(value, complex) or numpy.iscomplexobj(value):
        value = complex(value)
        if value.imag == 0:
            return f"{value.real:.{precision}g}"
        return f"{value.real:.{precision}g}{value.imag:+.{precision}g}i"

    return f"{float(value):.{precision}g}"


def to_jsonable(value: Any) -> Any:
    """
    Convert a result into something json.dumps accepts losslessly.

    Domain objects provide a to_json method, whose result is converted
    in turn; Fractions and QQ elements become "p/q" strings, QQ_I
    elements become "p/q" or an exact [re, im] pair, and complex
    numbers become [re, im] float pairs.

    :param value: Any result value
    :return: JSON-compatible value
    """
    if hasattr(value, "to_json"):
        return to_jsonable(value.to_json())
    if isinstance(value, (bool, numpy.bool_)):
        return bool(value)
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, (Integral, numpy.integer)):
        return int(value)
    if isinstance(value, GaussianElement):
        return gaussian_to_json(value)
    if isinstance(value, Fraction) or QQ.of_type(value):
        return format_rational(value)
    if isinstance(value, (complex, numpy.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (float, numpy.floating)):
        return float(value)
    if isinstance(value, numpy.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]

    logger.warning("Serializing unknown type {} as a string", type(value))
    return str(value)


def dump_json(payload: Any) -> str:
    """
    Serialize a payload deterministically.

    Keys are sorted so that re-serializing parsed output is idempotent.

    :param payload: Result payload
    :return: JSON text
    """
    return json.dumps(to_jsonable(payload), sort_keys=True)


def send_output(
        stream: TextIO,
        payload: Any,
        text_lines: Optional[Iterable[str]],
        output_format: str
) -> None:
    """
    Writes a command result to the output stream.

    :param stream: Output stream
    :param payload: JSON payload of the result
    :param text_lines: Human readable lines of the result; the JSON
        payload is printed when this is None
    :param output_format: "text" or "json"
    """
    if output_format == "json" or text_lines is None:
        stream.write(dump_json(payload) + "\n")
        return

    for line in text_lines:
        stream.write(line + "\n")


def format_table(rows: List[List[str]], header: Optional[List[str]] = None) -> List[str]:
    """
    Right-align a table of strings.

    :param rows: Table cells
    :param header: Optional header row
    :return: Lines of the aligned table
    """
    all_rows = ([header] if header is not None else []) + rows
    if not all_rows:
        return []

    widths = [
        max(len(row[column]) for row in all_rows)
        for column in range(len(all_rows[0]))
    ]
    return [
        "  ".join(cell.rjust(width) for cell, width in zip(row, widths))
        for row in all_rows
    ]
