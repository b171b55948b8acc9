"""
Error types shared by the pipeline commands.
"""

from keboola.component.exceptions import UserException


class DataError(UserException):
    """Input data cannot be used: unreadable files, conflicting ids, runs without qrels overlap."""


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, DataError):
        return EXIT_DATA
    if isinstance(exc, UserException):
        return EXIT_USAGE
    return EXIT_INTERNAL
