"""
Object utils module.

Parameter casting for configuration overrides and runtime type
enforcement for the public operations.
"""

import inspect
from functools import wraps
from typing import Callable, Union, get_type_hints

import typeguard
from loguru import logger

from haarmoments.output.error_handler import ArgumentError

TRUE_STRINGS = {"y", "yes", "t", "true", "on", "1"}
FALSE_STRINGS = {"n", "no", "f", "false", "off", "0"}


def strtobool(value: str) -> bool:
    """
    Converts a truthy or falsy string into a bool.

    :param value: String such as "yes" or "off"
    :return: Parsed bool
    :raises ValueError: If the string is neither truthy nor falsy
    """
    lowered = value.strip().lower()
    if lowered in TRUE_STRINGS:
        return True
    if lowered in FALSE_STRINGS:
        return False

    raise ValueError(f"invalid truth value {value!r}")


def match_param(
        original_param: Union[str, int, float, bool],
        new_param: Union[str, int, float, bool]
) -> Union[str, int, float, bool]:
    """
    Casts an override into the type of the parameter it replaces.

    Overrides arrive as strings from the environment and the command
    line, or as already typed YAML scalars.

    :param original_param: Original parameter
    :param new_param: New parameter
    :return: The new parameter casted to the same type as the original
    :raises ValueError: If parameter type is invalid or input parameter
        cannot be casted
    """
    if isinstance(original_param, bool):  # Bools are also ints!
        if isinstance(new_param, bool):
            return new_param
        return strtobool(str(new_param))
    if isinstance(original_param, str):
        return str(new_param)
    if isinstance(original_param, int):
        if isinstance(new_param, float) and not new_param.is_integer():
            raise ValueError(f"{new_param} is not an integer")
        return int(new_param)
    if isinstance(original_param, float):
        return float(new_param)

    raise ValueError(f"cannot cast to {type(original_param).__name__}")


def enforce_param_types(function: Callable) -> Callable:
    """
    Enforces parameter types based on type hints.

    Type violations are raised as ArgumentError so that the command
    line tool reports them as usage errors.

    :param function: Function to enforce input parameter types for
    :return: Wrapped function
    """
    func_sig = inspect.signature(function)

    @wraps(function)
    def wrapper(*args, **kwargs):
        logger.trace("Enforcing parameters for function {}", function.__name__)
        hints = get_type_hints(function)
        bound = func_sig.bind(*args, **kwargs)

        for p_name, p_value in bound.arguments.items():
            if p_name in {"self", "cls"} or p_name not in hints:
                continue
            try:
                typeguard.check_type(p_name, p_value, hints[p_name])
            except TypeError as e:
                raise ArgumentError("bad_argument_type", str(e)) from e

        return function(*args, **kwargs)

    return wrapper
