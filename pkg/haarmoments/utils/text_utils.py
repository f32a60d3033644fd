"""
Text parsing util functions module.

Converters from command line text and matrix files into domain values.
Every converter raises ArgumentError with a display type naming what
went wrong, so that the command line tool can report it as a usage
error.
"""

from fractions import Fraction
from numbers import Integral, Real
from typing import Any, List, Tuple

import yaml
from loguru import logger

from haarmoments.output.error_handler import ArgumentError
from haarmoments.symfunc.symmetric_functions import RationalVector
from haarmoments.weingarten.exact_operator import ExactOperator
from haarmoments.weingarten.scalars import GaussianRational, gaussian


def parse_rational(user_input: Any) -> Fraction:
    """
    Reads an exact rational from an integer, a decimal or "p/q" text.

    Floats are read through their shortest decimal form, so 0.1 is 1/10.

    :param user_input: Text or number
    :return: Parsed rational
    :raises ArgumentError: If the input is not a rational
    """
    if isinstance(user_input, bool):
        raise ArgumentError("bad_rational", user_input)
    if isinstance(user_input, Integral):
        return Fraction(int(user_input))
    if isinstance(user_input, (Real, str)):
        try:
            return Fraction(str(user_input).strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ArgumentError("bad_rational", user_input) from e

    raise ArgumentError("bad_rational", user_input)


def parse_rational_list(text: str) -> RationalVector:
    """
    Reads a comma separated list of rationals, e.g. "1/2,3,-1".

    :param text: List text
    :return: Vector of the entries
    """
    if not text.strip():
        return RationalVector()
    return RationalVector(parse_rational(entry) for entry in text.split(","))


def parse_indices(text: str) -> Tuple[int, ...]:
    """
    Reads a comma separated tuple of indices, e.g. "1,2".

    :param text: Tuple text
    :return: Indices as written, range checks are left to the caller
    :raises ArgumentError: If an entry is not an integer
    """
    if not text.strip():
        return ()
    try:
        return tuple(int(entry) for entry in text.split(","))
    except ValueError as e:
        raise ArgumentError("bad_parameter", f"cannot read an index tuple from {text!r}") from e


def parse_entry(entry: Any, row: int, column: int) -> GaussianRational:
    """
    Reads one matrix file entry.

    Entries are numbers, "p/q" strings or [re, im] pairs of either.

    :param entry: Raw entry from the file
    :param row: 1-based row, for diagnostics
    :param column: 1-based column, for diagnostics
    :return: Exact entry
    :raises ArgumentError: If the entry is malformed
    """
    try:
        if isinstance(entry, list):
            if len(entry) != 2:
                raise ArgumentError(
                    "bad_matrix_file", f"complex entries need 2 parts, got {len(entry)}", row, column
                )
            return gaussian(parse_rational(entry[0]), parse_rational(entry[1]))
        return gaussian(parse_rational(entry))
    except ArgumentError as e:
        if e.disp_type == "bad_matrix_file":
            raise
        raise ArgumentError("bad_matrix_file", e.error_message.rstrip("."), row, column) from e


def parse_matrix(data: Any) -> List[List[GaussianRational]]:
    """
    Reads a square matrix from parsed JSON or YAML data.

    The data is either a list of rows or a mapping with a "matrix" key
    holding one.

    :param data: Parsed file contents
    :return: Rows of exact entries
    :raises ArgumentError: If the shape or an entry is malformed
    """
    if isinstance(data, dict):
        data = data.get("matrix")
    if not isinstance(data, list) or not data:
        raise ArgumentError("bad_matrix_shape", "expected a non-empty list of rows")

    size = len(data)
    rows = []
    for row_index, row in enumerate(data, start=1):
        if not isinstance(row, list):
            raise ArgumentError("bad_matrix_file", "row is not a list", row_index, 1)
        if len(row) != size:
            raise ArgumentError(
                "bad_matrix_file", f"expected {size} entries, got {len(row)}", row_index, len(row)
            )
        rows.append([
            parse_entry(entry, row_index, column_index)
            for column_index, entry in enumerate(row, start=1)
        ])
    return rows


def load_matrix_file(path: str) -> ExactOperator:
    """
    Loads an exact operator from a JSON or YAML matrix file.

    :param path: File path
    :return: Operator on C^n for an n × n file
    :raises ArgumentError: If the file cannot be read or is malformed
    """
    logger.debug("Loading matrix file {}", path)
    try:
        with open(path, "r", encoding="utf-8") as file:
            data = yaml.safe_load(file)
    except yaml.YAMLError as e:
        raise ArgumentError("bad_matrix_shape", f"{path}: {e}") from e
    except OSError as e:
        raise ArgumentError("bad_matrix_shape", f"{path}: {e.strerror}") from e

    rows = parse_matrix(data)
    return ExactOperator.from_rows(rows, (len(rows),))
