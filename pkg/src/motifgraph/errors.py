"""Exception hierarchy shared by every module.

The CLI maps these onto stable exit codes, see ``EXIT_CODES``.
"""


class MotifGraphError(Exception):
    """Base class for all library errors."""

    exit_code = 2


class InputError(MotifGraphError, ValueError):
    exit_code = 2


class LoopEdge(InputError):
    pass


class DuplicateEdge(InputError):
    pass


class VertexOutOfRange(InputError, IndexError):
    pass


class EmptyGraph(InputError):
    pass


class Disconnected(InputError):
    pass


class DegenerateOrder(InputError):
    pass


class PartitionMismatch(InputError):
    pass


class InvalidPartition(InputError):
    pass


class InvalidBlockCount(InputError):
    pass


class SingletonBlock(InputError):
    pass


class MalformedConstraint(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class Infeasible(MotifGraphError):
    exit_code = 3


class BudgetExceeded(MotifGraphError):
    exit_code = 4
