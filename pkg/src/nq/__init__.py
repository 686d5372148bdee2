from .smith import Diagonalization, kernel_basis
from .tails import TailArithmetic
from .triangle import (
    LayeredPresentation,
    TriangleParams,
    extend_class,
    image_elements,
    initial_class_quotient,
    triangle_quotient,
)

__all__ = [
    "Diagonalization",
    "LayeredPresentation",
    "TailArithmetic",
    "TriangleParams",
    "extend_class",
    "image_elements",
    "initial_class_quotient",
    "kernel_basis",
    "triangle_quotient",
]
