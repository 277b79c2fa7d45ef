"""Accelerated generator: Newton's method on exact integer pairs.

For f(x) = x**2 + b*x + c with b >= 2 and a single root in (0, 1), the
Newton map F(x) = (x**2 - c) / (2*x + b) started at x0 = 1 decreases
strictly and converges quadratically from above; after i steps the error
is below b**(-2**i + 1).  Keeping the iterate as an unreduced integer
pair x_i = p_i / q_i turns F into the recurrence

    p_{i+1} = p_i**2 - c * q_i**2
    q_{i+1} = 2 * p_i * q_i + b * q_i**2

which stays exact in arbitrary-precision integers and satisfies
b**(2**i - 1) <= q_i <= (b + 2)**(2**i - 1).

Turning the approximation into exact expansion bits of the root relies
on one fact: if x lies within 2**-n above the root and some bit k <= n
of x is 1, then the first k - 1 bits of x and of the root coincide.
The generator therefore extracts the certified number of bits of x_i,
locates the last 1, and emits the prefix in front of it; if the prefix
is still too short, one extra Newton step squares the error and the
extraction repeats (each repeat is reached with probability roughly
2**-n_prime).

Arithmetic here runs on GMP integers (gmpy2): the squaring chain and the
final big division dominate the cost, and subquadratic multiplication
and division are what make this path faster than the exact orbit
baseline.  The certified log2 roundings below use plain Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpz

from .bitio import BitBuffer, extract_bits, last_one_index
from .seeds import Seed, validate_seed

__all__ = [
    "UnsupportedSeedError",
    "NewtonState",
    "newton_step",
    "log2_lower_bound",
    "required_iterations",
    "certified_bits",
    "generate",
]

# One shared precision for every log2-based rounding decision: the
# iteration count rounds up against the same lower bound the bit budget
# rounds down against, which keeps the two consistent (see generate).
LOG2_FRAC_BITS = 64


class UnsupportedSeedError(ValueError):
    """A valid seed outside the generator's supported range (b < 2)."""


@dataclass(frozen=True)
class NewtonState:
    """Unreduced iterate x_i = p / q plus the iteration counter."""

    p: int
    q: int
    i: int

    @classmethod
    def initial(cls) -> "NewtonState":
        return cls(1, 1, 0)


def newton_step(state: NewtonState, seed: Seed) -> NewtonState:
    """One exact step of the integer recurrence, no reduction.

    gcd reduction is skipped on purpose: the size bounds and the cost
    analysis hold for the raw recurrence, and reduction could only add
    work without changing any output bit.
    """
    p, q = state.p, state.q
    qq = q * q
    return NewtonState(p * p - seed.c * qq, 2 * p * q + seed.b * qq, state.i + 1)


def _mantissa_digits(b: int, e: int, frac_bits: int, prec: int) -> int | None:
    """frac_bits expansion digits of log2(b / 2**e), or None on ambiguity.

    Classic digit extraction by repeated squaring of the mantissa,
    carried as an integer interval [lo, hi] bracketing the true value at
    prec fractional bits.  Every rounding widens the interval, so a digit
    is only accepted once both endpoints agree on it.
    """
    two = 2 << prec
    lo = hi = b << (prec - e)  # exact start: mantissa in [1, 2) scaled by 2**prec
    digits = 0
    for _ in range(frac_bits):
        lo = (lo * lo) >> prec
        hi = -((-hi * hi) >> prec)
        digits <<= 1
        if lo >= two:
            digits |= 1
            lo >>= 1
            hi = -((-hi) >> 1)
        elif hi >= two:  # endpoints disagree: not enough working precision
            return None
    return digits


@lru_cache(maxsize=None)
def _log2_floor_scaled(b: int, frac_bits: int) -> int:
    """floor(2**frac_bits * log2(b)), exact.

    log2(b) is irrational unless b is a power of two, so every ambiguous
    digit resolves at some finite precision; the working precision
    doubles until it does.
    """
    e = b.bit_length() - 1
    if b == 1 << e:
        return e << frac_bits
    prec = max(2 * frac_bits + 32, e + 32)
    while True:
        digits = _mantissa_digits(b, e, frac_bits, prec)
        if digits is not None:
            return (e << frac_bits) | digits
        prec *= 2


def log2_lower_bound(b: int, frac_bits: int) -> Fraction:
    """Largest multiple of 2**-frac_bits not exceeding log2(b).

    The result L satisfies L <= log2(b) < L + 2**-frac_bits and is exact
    whenever b is a power of two.
    """
    if b < 2:
        raise ValueError(f"b must be >= 2, got {b}")
    if frac_bits < 1:
        raise ValueError("frac_bits must be positive")
    return Fraction(_log2_floor_scaled(b, frac_bits), 1 << frac_bits)


def _ceil_log2_ratio(u: int, v: int) -> int:
    """Smallest t >= 0 with u <= v * 2**t, for positive integers."""
    if u <= v:
        return 0
    t = max(u.bit_length() - v.bit_length() - 1, 0)
    while (v << t) < u:  # at most two rounds: the start undershoots by < 4x
        t += 1
    return t


def required_iterations(n: int, b: int) -> int:
    """Newton steps after which the error bound covers n expansion bits.

    Smallest safe i with b**(-2**i + 1) <= 2**-n, evaluated as
    ceil(log2(n / L + 1)) against the certified lower bound L <= log2(b).
    Rounding L down can only overestimate the step count, never
    undershoot it; for b a power of two the count is exact.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if b < 2:
        raise ValueError(f"b must be >= 2, got {b}")
    m = _log2_floor_scaled(b, LOG2_FRAC_BITS)
    return _ceil_log2_ratio((n << LOG2_FRAC_BITS) + m, m)


def certified_bits(i: int, b: int) -> int:
    """Expansion bits of the i-th iterate covered by the error bound.

    floor((2**i - 1) * L) with the same certified L, hence at most one
    below floor((2**i - 1) * log2(b)).  An undershoot only strengthens
    the guarantee that the iterate is within 2**-result of the root.
    """
    if i < 1:
        raise ValueError("i must be positive")
    if b < 2:
        raise ValueError(f"b must be >= 2, got {b}")
    m = _log2_floor_scaled(b, LOG2_FRAC_BITS)
    return (((1 << i) - 1) * m) >> LOG2_FRAC_BITS


def generate(seed: Seed, n_bits: int, n_prime: int = 64, on_retry=None) -> BitBuffer:
    """Exactly the first n_bits of the binary expansion of the seed's root.

    Runs required_iterations(n_bits + n_prime, b) Newton steps, extracts
    the certified number of expansion bits of the iterate, and outputs
    the first n_bits of them provided a 1 bit occurs beyond position
    n_bits (that 1 is what certifies the prefix).  Otherwise one more
    step is taken and the extraction stage repeats; the loop terminates
    with probability 1 and in practice immediately, since a whole
    certified tail must be zero for a repeat to trigger.

    on_retry, when given, is called with the current iteration count at
    every repeat (instrumentation for tests and diagnostics).

    Raises UnsupportedSeedError for valid seeds with b < 2 and ValueError
    for anything that is not a seed or for bad lengths.
    """
    if n_bits < 1:
        raise ValueError("n_bits must be positive")
    if n_prime < 1:
        raise ValueError("n_prime must be positive")
    if not validate_seed(seed.b, seed.c):
        raise ValueError(f"{seed} has no root in (0, 1)")
    if seed.b < 2:
        raise UnsupportedSeedError(f"generation requires b >= 2, got b = {seed.b}")

    n = n_bits + n_prime
    state = NewtonState(mpz(1), mpz(1), 0)
    for _ in range(required_iterations(n, seed.b)):
        state = newton_step(state, seed)
    while True:
        width = certified_bits(state.i, seed.b)
        # Consistency of the shared L bound: the iterate always has at
        # least the requested n certified bits.
        assert width >= n
        digits = extract_bits(state.p, state.q, width)
        last = last_one_index(digits)
        if last is not None and n_bits <= last - 1:
            return digits.prefix(n_bits)
        if on_retry is not None:
            on_retry(state.i)
        state = newton_step(state, seed)
