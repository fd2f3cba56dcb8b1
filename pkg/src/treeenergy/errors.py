"""Exception hierarchy shared by all modules."""


class TreeEnergyError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(TreeEnergyError, ValueError):
    """An argument is outside its documented domain."""


class CapExceededError(TreeEnergyError):
    """A size cap (dense eigensolver, exact root isolation, enumeration) was hit."""


class InvariantViolation(TreeEnergyError, RuntimeError):
    """A structural invariant failed; indicates a bug, never a user error."""


class TreeParseError(TreeEnergyError, ValueError):
    """Malformed tree input (edge-list text or graph6)."""
