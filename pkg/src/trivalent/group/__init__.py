"""Finite 2-group quotients via the 2-quotient algorithm."""

from .pcp import PcPresentation, element_order, enumerate_elements, generator_set, multiply, project
from .pquotient import pquotient, pquotient_tower
from .words import Presentation, Word, g_presentation, relators

__all__ = [
    "PcPresentation", "Presentation", "Word", "element_order", "enumerate_elements",
    "g_presentation", "generator_set", "multiply", "pquotient", "pquotient_tower",
    "project", "relators",
]
