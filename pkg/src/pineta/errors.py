class PinetaError(Exception):
    """Base class for engine errors."""


class UnknownAtomError(PinetaError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class PreconditionError(PinetaError, ValueError):
    """An operation was applied outside its domain (e.g. orientable circle-sum operand)."""


class NoPinStructureError(PreconditionError):
    pass


class PatternError(PreconditionError):
    """A rewrite (gluck twist, CP2 collapse) found no matching subexpression."""


class CoverError(PinetaError):
    """No orientation-cover rule matches; the engine never guesses a cover.

    The offending expression is rendered only when the message is read, since
    sweeps over many candidates raise this often.
    """

    def __init__(self, message, expr=None):
        super().__init__(message)
        self.expr = expr

    def __str__(self):
        if self.expr is None:
            return self.args[0]
        from .expr import render

        return self.args[0].replace("{}", render(self.expr))


class EnumerationLimitError(PinetaError):
    pass


class ParseError(PinetaError):
    def __init__(self, message, text="", pos=0, expected=()):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.expected = tuple(expected)
        self.message = message
        super().__init__(self._format())

    def _format(self):
        msg = f"line {self.line}, column {self.column}: {self.message}"
        if self.expected:
            msg += f" (expected {', '.join(self.expected)})"
        return msg
