"""
cyclotower - exact cyclotomic towers and explicit non-abelian p^3-extensions.

For odd primes p and r = 1 (mod p) this package builds the tower
Q in F, K in L inside Q(zeta_pr), decides the ideal-theoretic criterion that
an element x of L induces H_{p^3}- and C_{p^2} x| C_p-extensions, and for
p = 3 writes down degree-9 polynomials with these Galois groups.
"""

__version__ = "0.1.0"
__description__ = "Cyclotomic towers, the p^3-extension criterion and H27 / C9xC3 polynomials"

from .config import Config
from .domain.cyclotomic import CycAut, CycNum
from .domain.tower import build_tower
from .logging import get_logger

__all__ = [
    "Config",
    "CycAut",
    "CycNum",
    "build_tower",
    "get_logger",
    "__version__",
]
