"""
Error handler module.

Every error the library raises on purpose derives from
HaarmomentsError, which pulls its title and message from the display
string table. The command line tool hands whatever escapes a command
to handle_command_error, which prints the diagnostic and picks the
exit code.
"""

from typing import TextIO

from loguru import logger

from haarmoments.output.output import disp_str

EXIT_SUCCESS = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

# Builtin exceptions that count as usage errors when a command lets
# them escape; they mostly come from argparse type converters.
COMMAND_ERRORS = {
    "ValueError": "command_error_usage",
    "FileNotFoundError": "command_error_usage",
    "IsADirectoryError": "command_error_usage",
    "PermissionError": "command_error_usage",
}


class HaarmomentsError(Exception):
    """
    Haarmoments error.

    Directs error outputs to disp_str, so that all user facing text
    lives in the display string table.
    """

    __slots__ = ["disp_type", "error_header", "error_message"]

    def __init__(self, disp_type: str, *args):
        """
        Initializer for the HaarmomentsError class.

        :param disp_type: Display type taken from disp_str, without the
            "error_" prefix
        """
        self.disp_type = disp_type
        self.error_header = disp_str(f"error_{disp_type}_title")
        self.error_message = disp_str(f"error_{disp_type}_desc")

        if args:
            self.error_message = self.error_message.format(*args)

        super().__init__(self.error_message)


class ArgumentError(HaarmomentsError, ValueError):
    """Raised when an operation's preconditions are violated."""


class ResourceError(HaarmomentsError, MemoryError):
    """Raised when a request would exceed a configured cap."""


class ConsistencyError(HaarmomentsError, ArithmeticError):
    """Raised when two independent computations disagree."""


def handle_command_error(exception: Exception, stream: TextIO) -> int:
    """
    Writes the diagnostic for an exception raised by a command.

    :param exception: Exception raised by the command
    :param stream: Stream diagnostics are written to
    :return: Exit code for the command line tool
    """
    if isinstance(exception, HaarmomentsError):
        logger.trace(
            disp_str("command_error_logger_header"),
            type(exception).__name__,
            exception.error_message
        )
        stream.write(
            f"{disp_str('command_error_header')}{exception.error_header}: "
            f"{exception.error_message}\n"
        )
        if isinstance(exception, ConsistencyError):
            logger.error("Consistency check failed: {}", exception)
            return EXIT_VERIFY_FAILED
        return EXIT_USAGE

    try:
        error_message = disp_str(
            COMMAND_ERRORS[type(exception).__name__]
        ).format(exception)
    except KeyError:
        logger.critical(
            "Unhandled {} escaped a command: {}",
            type(exception).__name__,
            exception
        )
        stream.write(
            disp_str("command_error_internal").format(
                type(exception).__name__, exception
            ) + "\n"
        )
        return EXIT_VERIFY_FAILED

    stream.write(f"{disp_str('command_error_header')}{error_message}\n")
    return EXIT_USAGE
