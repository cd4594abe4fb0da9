"""Exception hierarchy shared by all mathlod modules."""


class MathLodError(Exception):
    """Base class for every error raised by mathlod."""


class ContractViolation(MathLodError, ValueError):
    """An operation was called with arguments outside its precondition."""


class SizeError(MathLodError, ValueError):
    """A model enumeration would exceed one of its configured caps."""
