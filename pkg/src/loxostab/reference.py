"""The worked example map used throughout the tests, docs and CLI defaults."""

from __future__ import annotations

import cmath

from .core import MoebiusMap, normalize

EXAMPLE_COEFFICIENTS = (1.64 + 0j, -25 + 11.07j, 0.04 + 0j, 0.27j)

# reference values quoted for the example
PRINTED_ALPHA = 25 + 12j
PRINTED_BETA = 16 - 18.75j
PRINTED_TRACE = 1.64 + 0.27j
PRINTED_KMOD = 1.5625
# the multiplier as printed; its modulus is not 1.5625 and it fails the
# trace identity sqrt(k) + 1/sqrt(k) = a + d
PRINTED_K = 1.5625 + 1.5j
CORRECTED_K = 0.4375 + 1.5j

DEFAULT_DELTA0 = 0.005
DEFAULT_T = 2.0


def example_map() -> MoebiusMap:
    return normalize(*EXAMPLE_COEFFICIENTS)


def trace_identity_residual(k: complex, trace: complex) -> float:
    """min over both square-root branches of |sqrt(k) + 1/sqrt(k) - trace|."""
    s = cmath.sqrt(complex(k))
    return min(abs(s + 1 / s - trace), abs(-s - 1 / s - trace))
