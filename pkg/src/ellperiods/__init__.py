"""Rings of elliptic periods over Z/nZ and elliptic AKS-style primality proofs."""

from .cm import Certificate, ProveConfig, prove_prime, verify_certificate
from .criteria import Verdict
from .errors import NonInvertible
from .periods import PeriodsRing, build_ring
from .residue import ResidueRing, Residue
from .weierstrass import Curve, make_curve

__version__ = "0.1.0"

__all__ = [
    "Certificate", "Curve", "NonInvertible", "PeriodsRing", "ProveConfig", "Residue",
    "ResidueRing", "Verdict", "build_ring", "make_curve", "prove_prime", "verify_certificate",
]
