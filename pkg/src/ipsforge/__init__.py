"""ipsforge: exact IPS_LIN refutations over finite fields, plus brute-force
lower-bound oracles at desk scale."""

from ipsforge._kernel import kernel_backend

__all__ = ["kernel_backend"]
__version__ = "0.1.0"
