"""Seed pairs (b, c) for the monic quadratic x**2 + b*x + c.

A pair is a valid seed exactly when the quadratic has a single simple
root strictly inside (0, 1), i.e. when f(0) = c and f(1) = 1 + b + c
have opposite signs.  The canonical family with linear coefficient b
collects every such pair, ordered by increasing constant term, so that
index-based sampling is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Seed", "validate_seed", "seed_set", "sample_seed"]


@dataclass(frozen=True)
class Seed:
    """Integer coefficients of x**2 + b*x + c."""

    b: int
    c: int


def validate_seed(b: int, c: int) -> bool:
    """True iff x**2 + b*x + c has exactly one simple root in (0, 1)."""
    return (c > 0 and 1 + b + c < 0) or (c < 0 and 1 + b + c > 0)


def seed_set(b: int) -> list[Seed]:
    """All valid seeds with linear coefficient b, in increasing c order.

    For b >= 1 the constant term ranges over -b .. -1 (b seeds); for
    b <= -3 it ranges over 1 .. -b-2.  No seed exists for b in
    {-2, -1, 0}.
    """
    if b >= 1:
        constants = range(-b, 0)
    elif b <= -3:
        constants = range(1, -b - 1)
    else:
        raise ValueError(f"no seed family exists for b = {b}")
    return [Seed(b, c) for c in constants]


def sample_seed(b: int, index: int) -> Seed:
    """Pick seed_set(b)[index]; the caller supplies the index.

    The library never draws entropy itself: feeding an externally chosen
    uniform index through this function keeps every downstream bit
    sequence reproducible.
    """
    if b <= 1:
        raise ValueError(f"seed sampling requires b > 1, got {b}")
    family = seed_set(b)
    if not 0 <= index < len(family):
        raise ValueError(
            f"index {index} out of range for the {len(family)} seeds with b = {b}"
        )
    return family[index]
