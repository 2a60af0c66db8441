"""Exact computation in monomorphism categories of quiver representations
over Z/(p^n), with the correspondence to p-valuated abelian groups and
valuated trees."""

from .zpn_core import InputError, Partition, RingParams, ZpnMatrix

__version__ = "0.1.0"

__all__ = ["InputError", "Partition", "RingParams", "ZpnMatrix", "__version__"]
