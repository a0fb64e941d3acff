"""Exact computations for the torus-bundle group tower, its commutator series,
Levine-Tristram signatures, obstruction values, equation systems and the
locality determinant criteria.

The group law runs on a compiled kernel when available; ``BACKEND`` names
the one in use (``"cython"`` or ``"python"``).
"""

from ._kernel import BACKEND
from .exact import (
    QQ,
    ZZ,
    ZZ_2,
    LocalizedRational,
    SubringSpec,
    TorsionCoset,
    is_unit,
    p_primary_part,
    ring_contains,
    torsion_op,
)
from .tower import (
    GeneratorWord,
    TowerElement,
    abelianize,
    inv,
    minimal_stage,
    mul,
    normalize,
    order,
    power,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "QQ",
    "ZZ",
    "ZZ_2",
    "LocalizedRational",
    "SubringSpec",
    "TorsionCoset",
    "is_unit",
    "p_primary_part",
    "ring_contains",
    "torsion_op",
    "GeneratorWord",
    "TowerElement",
    "abelianize",
    "inv",
    "minimal_stage",
    "mul",
    "normalize",
    "order",
    "power",
]
