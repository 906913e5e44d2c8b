"""Exception types shared across the package."""


class DimensionError(ValueError):
    """A matrix or vector has an unsupported shape (only 2x2 and 4x4 exist here)."""


class ContractError(ValueError):
    """An input violates a declared precondition (non-unitary, non-density, ...)."""


class MatrixFormatError(ValueError):
    """A matrix file or inline matrix object could not be parsed."""


class DecompositionError(ArithmeticError):
    """A numerical decomposition failed to meet its residual bound."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class SynthesisError(DecompositionError):
    """A synthesized circuit failed validation against its target matrix."""
