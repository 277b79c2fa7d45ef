"""Independent ground truth for both generators, plus theory probes.

Everything here reaches the root of x**2 + b*x + c through integer
square roots and exact sign tests only.  No code is shared with the
Newton recurrence or the orbit dynamics, so three-way agreement between
the generators and this module is evidence, not an identity.

The mismatch machinery at the bottom evaluates, on a concrete instance,
three conditions that are provably equivalent: an upper rational
approximation x of the root (within 2**-n) has a different length-N
prefix than the root itself exactly when the root's bits N+1..n are all
1 and a residual carry bit is set, equivalently when x's bits N+1..n are
all 0 with the same carry.  The test suite checks that equivalence on
randomized instances instead of assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .bitio import BitBuffer, extract_bits
from .seeds import Seed, validate_seed

__all__ = [
    "isqrt",
    "cmp_root",
    "root_bits",
    "MismatchInstance",
    "mismatch_instance",
    "mismatch_conditions",
    "guaranteed_prefix",
]


def _discriminant(seed: Seed) -> int:
    """b**2 - 4c for a supported seed, guaranteed not a perfect square.

    For b >= 2 a valid pair has -b <= c <= -1, so the discriminant sits
    strictly between b**2 and (b + 2)**2 at an even offset -4c, while the
    only square in between, (b + 1)**2, sits at an odd offset.  The check
    is kept anyway so a misuse fails loudly instead of corrupting bits.
    """
    b, c = seed.b, seed.c
    if not validate_seed(b, c) or b < 2:
        raise ValueError(f"unsupported seed {seed}: need a valid pair with b >= 2")
    d = b * b - 4 * c
    r = isqrt(d)
    if r * r == d:
        raise ValueError(f"degenerate seed {seed}: rational root")
    return d


def cmp_root(p: int, q: int, seed: Seed) -> int:
    """Exact sign of p/q - root for p >= 0, q > 0.

    With d = b**2 - 4c, comparing p/q against (-b + sqrt(d)) / 2 reduces
    to comparing u**2 against q**2 * d where u = 2p + b*q > 0, and the
    squaring is monotone.  Zero cannot occur: the root is irrational.
    """
    if q <= 0 or p < 0:
        raise ValueError(f"need p >= 0 and q > 0, got p={p}, q={q}")
    d = _discriminant(seed)
    u = 2 * p + seed.b * q
    s = u * u - q * q * d
    return (s > 0) - (s < 0)


def root_bits(seed: Seed, n: int) -> BitBuffer:
    """First n expansion bits of the root, by integer square root alone.

    floor(2**n * root) is read off floor(sqrt(d) * 2**(n+g)) carried with
    g guard bits, then certified by exact comparison against the two
    bracketing dyadics.  Truncation can in principle land one off, so g
    doubles until the certificate holds; the root is irrational, so some
    finite g always suffices (the initial 64 in practice).
    """
    if n < 1:
        raise ValueError("n must be positive")
    d = _discriminant(seed)
    b = seed.b
    g = 64
    while True:
        t = isqrt(d << (2 * (n + g)))
        candidate = (t - (b << (n + g))) >> (g + 1)
        den = 1 << n
        if cmp_root(candidate, den, seed) < 0 and cmp_root(candidate + 1, den, seed) > 0:
            return BitBuffer(candidate, n)
        g *= 2


@dataclass(frozen=True)
class MismatchInstance:
    """A root prefix, an upper rational approximation, and two cut points.

    root_prefix holds bits 1..n_err of the root; x = x_num / x_den
    satisfies root < x < 1 and x - root < 2**-n_err; the prefixes being
    compared have length n_cmp with 1 <= n_cmp < n_err and n_err >= 2.
    """

    root_prefix: BitBuffer
    x_num: int
    x_den: int
    n_cmp: int
    n_err: int


def mismatch_instance(seed: Seed, x_num: int, x_den: int, n_cmp: int, n_err: int) -> MismatchInstance:
    """Build a MismatchInstance, checking every precondition exactly."""
    if n_err < 2 or not 1 <= n_cmp < n_err:
        raise ValueError(f"need 1 <= n_cmp < n_err and n_err >= 2, got {n_cmp}, {n_err}")
    if x_den <= 0 or not 0 < x_num < x_den:
        raise ValueError("x must lie in (0, 1)")
    if cmp_root(x_num, x_den, seed) <= 0:
        raise ValueError("x must lie strictly above the root")
    # x - 2**-n_err < root, checked without leaving the integers.
    num = (x_num << n_err) - x_den
    if num > 0 and cmp_root(num, x_den << n_err, seed) >= 0:
        raise ValueError(f"x is not within 2**-{n_err} of the root")
    return MismatchInstance(root_bits(seed, n_err), x_num, x_den, n_cmp, n_err)


def mismatch_conditions(inst: MismatchInstance) -> tuple[bool, bool, bool]:
    """Evaluate the three equivalent prefix-mismatch tests independently.

    Returns (prefix_differs, root_tail_all_ones, x_tail_all_zeros):

    * prefix_differs: the first n_cmp bits of the root and of x differ;
    * root_tail_all_ones: root bits n_cmp+1 .. n_err are all 1 and bit
      n_err of the residual x - root_prefix is set;
    * x_tail_all_zeros: x bits n_cmp+1 .. n_err are all 0 and the same
      residual bit is set.

    Each is computed from scratch (extraction, masking, one exact
    division); their agreement is the property under test elsewhere.
    """
    n_cmp, n_err = inst.n_cmp, inst.n_err
    if n_err < 2 or not 1 <= n_cmp < n_err or len(inst.root_prefix) != n_err:
        raise ValueError("malformed instance")
    if inst.x_den <= 0 or not 0 < inst.x_num < inst.x_den:
        raise ValueError("x outside (0, 1)")
    x_bits = extract_bits(inst.x_num, inst.x_den, n_err)
    # Residual x - root_prefix_value: a rational in (0, 2**-(n_err - 1)),
    # so its bits 1 .. n_err-1 vanish and bit n_err is floor(res * 2**n_err).
    res_num = (inst.x_num << n_err) - inst.root_prefix.value * inst.x_den
    res_den = inst.x_den << n_err
    if not 0 < res_num * (1 << (n_err - 1)) < res_den:
        raise ValueError("x is outside the instance's error budget")
    residual_bit = int((res_num << n_err) // res_den)

    tail = (1 << (n_err - n_cmp)) - 1
    prefix_differs = x_bits.prefix(n_cmp) != inst.root_prefix.prefix(n_cmp)
    root_tail_all_ones = (inst.root_prefix.value & tail) == tail and residual_bit == 1
    x_tail_all_zeros = (x_bits.value & tail) == 0 and residual_bit == 1
    return prefix_differs, root_tail_all_ones, x_tail_all_zeros


def guaranteed_prefix(xbits: BitBuffer, n: int) -> int:
    """Prefix length certified by a 1 bit among positions 2..n.

    If x lies within 2**-n above the root, a 1 at position k of x with
    2 <= k <= n pins down the first k - 1 bits: they must equal the
    root's.  Returns k - 1 for the largest such k, or 0 when positions
    2..n are all zero and nothing is certified.
    """
    if n < 2 or n > len(xbits):
        raise ValueError(f"need 2 <= n <= {len(xbits)}, got {n}")
    masked = (xbits.value >> (len(xbits) - n)) & ((1 << (n - 1)) - 1)
    if masked == 0:
        return 0
    k = n - ((masked & -masked).bit_length() - 1)
    return k - 1
