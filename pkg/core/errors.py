"""Exception types raised by the group-ring tensor library."""


class GroupRingError(Exception):
    """Base class for every error raised by `core`."""


class InvalidGroupSpecError(GroupRingError, ValueError):
    """Group spec is empty, malformed, or has a non-positive modulus."""


class GroupMismatchError(GroupRingError, ValueError):
    """Elements from different groups were combined."""


class InvalidRingSpecError(GroupRingError, ValueError):
    """Ring spec string is unknown or its parameters are out of range."""


class StructureMismatchError(GroupRingError, ValueError):
    """Operands do not share group, ring, or shape."""


class UnsupportedRingError(GroupRingError, TypeError):
    """Operation needs a different coefficient ring backend."""


class NotInvertibleError(GroupRingError, ArithmeticError):
    """A transform-domain slice is singular or too ill-conditioned to invert."""

    def __init__(self, character_index: int, condition: float):
        self.character_index = character_index
        self.condition = condition
        super().__init__(
            f"slice at character {character_index} is not invertible "
            f"(condition number {condition:.3e})"
        )


class InapplicableWitnessError(GroupRingError, ValueError):
    """Degeneracy witness called on a matrix it says nothing about."""


class GenerationFailedError(GroupRingError, RuntimeError):
    """Instance generator ran out of draws."""


class DemoTooLargeError(GroupRingError, ValueError):
    """Demo walkthrough requested for a group above the printable size."""


class CorrectnessError(GroupRingError, AssertionError):
    """Two computation paths that must agree did not."""
