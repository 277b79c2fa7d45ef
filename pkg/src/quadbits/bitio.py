"""Bit sequences and exact extraction of binary expansions of rationals.

A BitBuffer is an immutable fixed-length bit string with 1-based
indexing, bit 1 being the most significant: the buffer b1 b2 ... bn
represents the fractional prefix sum(b_k * 2**-k).  Bits are stored as
one big integer, so extraction, prefix taking and (de)serialization are
single integer operations rather than per-bit loops.

Serialized forms:

* ``packed``: bits fill octets most-significant-bit first; the final
  partial octet is zero padded on the right.  The bit count is not part
  of the format and must travel separately.
* ``ascii``: one '0'/'1' character per bit, no separators.
"""

from __future__ import annotations

from pathlib import Path

from gmpy2 import mpz

__all__ = [
    "BitBuffer",
    "extract_bits",
    "last_one_index",
    "pack_bits",
    "unpack_bits",
    "write_packed",
    "read_packed",
]


class BitBuffer:
    """Immutable bit string; bit(1) is the most significant bit."""

    __slots__ = ("_value", "_length")

    def __init__(self, value: int, length: int):
        value = int(value)
        if length < 0:
            raise ValueError("length must be non-negative")
        if value < 0 or value.bit_length() > length:
            raise ValueError(f"value does not fit in {length} bits")
        self._value = value
        self._length = length

    @classmethod
    def from_bits(cls, bits) -> "BitBuffer":
        """Build from an iterable of 0/1 values, most significant first."""
        value = 0
        n = 0
        for bit in bits:
            if bit not in (0, 1):
                raise ValueError(f"bits must be 0 or 1, got {bit!r}")
            value = (value << 1) | bit
            n += 1
        return cls(value, n)

    @classmethod
    def from_text(cls, text: str) -> "BitBuffer":
        """Parse an ascii '0'/'1' string (surrounding whitespace ignored)."""
        text = text.strip()
        if set(text) - {"0", "1"}:
            raise ValueError("ascii bit strings may only contain '0' and '1'")
        return cls(int(text, 2) if text else 0, len(text))

    @classmethod
    def from_bytes(cls, data: bytes, length: int) -> "BitBuffer":
        """Inverse of to_bytes; `length` says how many packed bits are real."""
        if length < 0 or len(data) != (length + 7) // 8:
            raise ValueError(f"{len(data)} bytes cannot hold exactly {length} bits")
        pad = 8 * len(data) - length
        return cls(int.from_bytes(data, "big") >> pad, length)

    @property
    def value(self) -> int:
        """All bits read as one big-endian integer."""
        return self._value

    def __len__(self) -> int:
        return self._length

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitBuffer):
            return NotImplemented
        return self._length == other._length and self._value == other._value

    def __hash__(self) -> int:
        return hash((self._length, self._value))

    def __iter__(self):
        for shift in range(self._length - 1, -1, -1):
            yield (self._value >> shift) & 1

    def __repr__(self) -> str:
        if self._length <= 64:
            return f"BitBuffer({self.to01()!r})"
        head = BitBuffer(self._value >> (self._length - 48), 48).to01()
        return f"BitBuffer({head + '...'!r}, length={self._length})"

    def bit(self, k: int) -> int:
        """Bit at 1-based position k."""
        if not 1 <= k <= self._length:
            raise IndexError(f"bit index {k} outside 1..{self._length}")
        return (self._value >> (self._length - k)) & 1

    def prefix(self, n: int) -> "BitBuffer":
        """The first n bits as a new buffer."""
        if not 0 <= n <= self._length:
            raise ValueError(f"prefix length {n} outside 0..{self._length}")
        return BitBuffer(self._value >> (self._length - n), n)

    def count_ones(self) -> int:
        return self._value.bit_count()

    def to01(self) -> str:
        """Ascii rendering, one character per bit."""
        if self._length == 0:
            return ""
        return format(self._value, f"0{self._length}b")

    def to_bytes(self) -> bytes:
        """MSB-first packing, last octet zero padded on the right."""
        nbytes = (self._length + 7) // 8
        return (self._value << (8 * nbytes - self._length)).to_bytes(nbytes, "big")


def extract_bits(p: int, q: int, count: int) -> BitBuffer:
    """First `count` expansion bits of the rational p/q with 0 < p/q < 1.

    A single exact division floor(p * 2**count / q) yields all bits at
    once.  Truncation automatically selects, for dyadic p/q, the binary
    expansion that does not end with all 1s, so no special casing is
    needed; and the result depends only on the ratio, so unreduced
    fractions are fine.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if q <= 0 or not 0 < p < q:
        raise ValueError(f"need 0 < p/q < 1, got p={p}, q={q}")
    return BitBuffer(int((mpz(p) << count) // mpz(q)), count)


def last_one_index(buf: BitBuffer) -> int | None:
    """1-based position of the last 1 bit, or None for an all-zero buffer."""
    v = buf.value
    if v == 0:
        return None
    return len(buf) - ((v & -v).bit_length() - 1)


def pack_bits(buf: BitBuffer, fmt: str) -> bytes:
    """Serialize to 'packed' octets or an 'ascii' byte string."""
    if fmt == "packed":
        return buf.to_bytes()
    if fmt == "ascii":
        return buf.to01().encode("ascii")
    raise ValueError(f"unknown bit format {fmt!r}")


def unpack_bits(data: bytes, length: int) -> BitBuffer:
    """Recover a BitBuffer from its packed form and recorded length."""
    return BitBuffer.from_bytes(data, length)


def write_packed(buf: BitBuffer, path) -> None:
    Path(path).write_bytes(buf.to_bytes())


def read_packed(path, length: int | None = None) -> BitBuffer:
    """Read a packed bitstream file; length defaults to every stored bit."""
    data = Path(path).read_bytes()
    if length is None:
        length = 8 * len(data)
    return BitBuffer.from_bytes(data, length)
