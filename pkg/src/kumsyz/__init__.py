"""kumsyz: exact workbench for section rings, Koszul cohomology and
multiplication maps on products of elliptic curves and their Kummer
quotients."""

__version__ = "0.1.0"

from .exactcore import (Matrix, PrimeField, QQ, Scalar, WedgeIndex,
                        kernel_basis, kronecker, rank, wedge_map)
from .ellcurve import Curve, Divisor, Point, Section, SectionSpace, rr_basis
from .avkummer import (AbelianProduct, Pic0Element, ProductBundle,
                       ProductSectionSpace, plus_space, sections, twist)
from .gradedring import SectionSystem, generator_degrees, h_normality
from .syzygy import BettiTable, betti_table, check_Npr
from .multlab import MultLab, it0_check, mult_probe, sweep_alpha

__all__ = [
    "Matrix", "PrimeField", "QQ", "Scalar", "WedgeIndex",
    "kernel_basis", "kronecker", "rank", "wedge_map",
    "Curve", "Divisor", "Point", "Section", "SectionSpace", "rr_basis",
    "AbelianProduct", "Pic0Element", "ProductBundle", "ProductSectionSpace",
    "plus_space", "sections", "twist",
    "SectionSystem", "generator_degrees", "h_normality",
    "BettiTable", "betti_table", "check_Npr",
    "MultLab", "it0_check", "mult_probe", "sweep_alpha",
    "__version__",
]
