"""Baseline generator: exact doubling-map dynamics on coefficient pairs.

Doubling the root of x**2 + b*x + c modulo 1 yields the root of another
integer quadratic, so the doubling map can be followed exactly on the
coefficients.  The root lies below 1/2 exactly when f(1/2), whose sign
is that of the odd integer 1 + 2b + 4c, disagrees in sign with f(0) = c;
that test emits one expansion bit per step and selects the affine update

    bit 0:  (b, c) -> (2b, 4c)
    bit 1:  (b, c) -> (2b + 2, 2b + 4c + 1)

Coefficients roughly double every step, so n steps cost n integer words
of linear work each: the total is quadratic in the output length, which
is exactly what the Newton generator is measured against.  Plain Python
integers are used on purpose; every operation here is a shift, a small
multiple or an addition, and no multiplication library changes the
quadratic total.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitio import BitBuffer
from .newton import UnsupportedSeedError
from .seeds import Seed, validate_seed

__all__ = ["OrbitState", "orbit_step", "generate_true_orbit"]


@dataclass(frozen=True)
class OrbitState:
    """Coefficient pair after n doubling steps."""

    b: int
    c: int
    n: int

    @classmethod
    def from_seed(cls, seed: Seed) -> "OrbitState":
        return cls(seed.b, seed.c, 0)


def _step(b: int, c: int) -> tuple[int, int, int]:
    # 1 + 2b + 4c is odd and c != 0 for any valid pair, so the two
    # comparisons below are genuine sign tests.
    if ((1 + 2 * b + 4 * c) > 0) is not (c > 0):
        return 2 * b, 4 * c, 0
    return 2 * b + 2, 2 * b + 4 * c + 1, 1


def orbit_step(state: OrbitState) -> tuple[OrbitState, int]:
    """One exact doubling step; returns (next state, emitted bit)."""
    b, c, bit = _step(state.b, state.c)
    return OrbitState(b, c, state.n + 1), bit


def generate_true_orbit(seed: Seed, n_bits: int) -> BitBuffer:
    """First n_bits of the root's expansion via the exact orbit.

    Only the current coefficient pair is retained, so memory stays
    linear in n_bits.
    """
    if n_bits < 1:
        raise ValueError("n_bits must be positive")
    if not validate_seed(seed.b, seed.c):
        raise ValueError(f"{seed} has no root in (0, 1)")
    if seed.b < 2:
        raise UnsupportedSeedError(f"orbit generation requires b >= 2, got b = {seed.b}")
    b, c = seed.b, seed.c
    out = []
    for _ in range(n_bits):
        b, c, bit = _step(b, c)
        out.append("1" if bit else "0")
    return BitBuffer(int("".join(out), 2), n_bits)
