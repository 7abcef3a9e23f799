"""Vertex encoding and bit-level quantities of the hypercube H_d.

A vertex is a plain ``int`` whose low ``d`` bits are its binary string.
Written position ``i`` (1-based, leftmost in written strings) is
integer bit ``i - 1``.  All functions here are pure.
"""

from __future__ import annotations

from typing import Iterator, Tuple

MAX_D = 30


class CapacityError(ValueError):
    """Raised when an exhaustive routine is asked for a too-large instance."""


def check_dimension(d: int, max_d: int = MAX_D) -> None:
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")
    if d > max_d:
        raise CapacityError(f"dimension {d} exceeds enumeration cap {max_d}")


def check_vertex(v: int, d: int) -> None:
    if not 0 <= v < (1 << d):
        raise ValueError(f"vertex {v} is not a {d}-bit string")


def popcount(x: int) -> int:
    return x.bit_count()


def diff_positions(u: int, v: int) -> int:
    """Mask of positions where ``u`` and ``v`` differ (the set D(u, v))."""
    return u ^ v


def hamming_distance(u: int, v: int) -> int:
    return (u ^ v).bit_count()


def is_adjacent(u: int, v: int) -> bool:
    return (u ^ v).bit_count() == 1


def u_bit_count(x: int, u: int, v: int) -> int:
    """Number of positions of D(u, v) at which ``x`` disagrees with ``u``.

    Swap ``u`` and ``v`` to get the v-bit count.
    """
    return ((x ^ u) & (u ^ v)).bit_count()


def mask_positions(mask: int) -> list[int]:
    """Integer bit indices set in ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def extract_bits(v: int, mask: int) -> int:
    """Compress the bits of ``v`` selected by ``mask`` into the low bits.

    The lowest selected position lands in bit 0 (parallel bit extract).
    """
    out = 0
    for j, pos in enumerate(mask_positions(mask)):
        out |= ((v >> pos) & 1) << j
    return out


def deposit_bits(pattern: int, mask: int) -> int:
    """Inverse of :func:`extract_bits`: spread ``pattern`` onto ``mask``."""
    out = 0
    for j, pos in enumerate(mask_positions(mask)):
        out |= ((pattern >> j) & 1) << pos
    return out


def pattern_string(v: int, mask: int) -> str:
    """Written bit pattern f_P(v), lowest position first."""
    return "".join(str((v >> pos) & 1) for pos in mask_positions(mask))


def lex_key(pattern: int, width: int) -> int:
    """Integer whose order matches lexicographic order of written patterns.

    ``pattern`` is in extract order (first written character in bit 0), so
    reversing the ``width`` bits makes the first character most significant.
    """
    out = 0
    for j in range(width):
        out = (out << 1) | ((pattern >> j) & 1)
    return out


def canonical_orientation(u: int, v: int) -> Tuple[int, int]:
    """Order the pair so the first vertex has the lexicographically smaller
    pattern on D(u, v).

    The two patterns are complements, so they already differ at the lowest
    position of D(u, v); the vertex carrying a 0 there comes first.
    """
    if u == v:
        raise ValueError("canonical_orientation needs two distinct vertices")
    low = (u ^ v) & -(u ^ v)
    return (u, v) if not (u & low) else (v, u)


def nonadjacent_pairs(d: int) -> Iterator[Tuple[int, int]]:
    """All non-adjacent pairs of H_d, ordered by ascending (min, max).

    Each pair is yielded once, in canonical orientation.
    """
    check_dimension(d)
    n = 1 << d
    for a in range(n):
        for b in range(a + 1, n):
            if (a ^ b).bit_count() >= 2:
                yield canonical_orientation(a, b)


def nonadjacent_pair_count(d: int) -> int:
    n = 1 << d
    return n * (n - 1) // 2 - d * (n >> 1)


def to_bitstring(v: int, d: int) -> str:
    """Written string: position 1 (bit 0) is the leftmost character."""
    check_vertex(v, d)
    return "".join(str((v >> i) & 1) for i in range(d))


def from_bitstring(s: str) -> int:
    if not s or any(ch not in "01" for ch in s):
        raise ValueError(f"not a binary string: {s!r}")
    return sum(1 << i for i, ch in enumerate(s) if ch == "1")
