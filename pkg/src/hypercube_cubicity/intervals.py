"""Unit interval representations and the distance-layer graphs I_x.

Every interval is closed with length exactly 1, so two intervals meet iff
their starts differ by at most 1.  Starts are exact (ints or Fractions);
touching intervals count as intersecting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

from .core import check_dimension, check_vertex, to_bitstring

Start = Union[int, Fraction]


@dataclass(frozen=True)
class UnitIntervalRep:
    """Explicit start assignment; vertex ``v`` owns ``[starts[v], starts[v] + 1]``.

    ``d`` is the hypercube dimension when the vertex set is V(H_d), else None.
    """

    starts: Tuple[Start, ...]
    d: Optional[int] = None

    def __post_init__(self):
        if self.d is not None and len(self.starts) != 1 << self.d:
            raise ValueError("a hypercube representation needs 2^d starts")

    @property
    def n(self) -> int:
        return len(self.starts)

    def start(self, v: int) -> Start:
        return self.starts[v]

    def interval(self, v: int) -> Tuple[Start, Start]:
        s = self.starts[v]
        return (s, s + 1)


@dataclass(frozen=True)
class ApexLayerRep:
    """The graph I_x, kept virtual: start(u) is recomputed as δ(x, u)."""

    apex: int
    d: int

    def __post_init__(self):
        check_dimension(self.d)
        check_vertex(self.apex, self.d)

    @property
    def n(self) -> int:
        return 1 << self.d

    def start(self, v: int) -> int:
        return (self.apex ^ v).bit_count()

    def interval(self, v: int) -> Tuple[int, int]:
        s = self.start(v)
        return (s, s + 1)

    def materialize(self) -> UnitIntervalRep:
        return UnitIntervalRep(tuple(self.start(v) for v in range(self.n)), self.d)


def build_Ix(x: int, d: int) -> ApexLayerRep:
    return ApexLayerRep(x, d)


def rep_adjacent(rep, u: int, v: int) -> bool:
    """Whether the unit intervals of ``u`` and ``v`` intersect in ``rep``."""
    if u == v:
        raise ValueError("adjacency is only defined for distinct vertices")
    return abs(rep.start(u) - rep.start(v)) <= 1


def Ix_adjacent(x: int, u: int, v: int) -> bool:
    """Edge test in I_x from two XOR-popcounts, without building I_x."""
    if u == v:
        raise ValueError("adjacency is only defined for distinct vertices")
    return abs((x ^ u).bit_count() - (x ^ v).bit_count()) <= 1


def intersection_adjacent(seeds: Sequence[int], u: int, v: int) -> bool:
    """Edge test in the intersection of I_x over all apexes in ``seeds``."""
    if not seeds:
        raise ValueError("seed list must be non-empty")
    return all(Ix_adjacent(x, u, v) for x in seeds)


@dataclass(frozen=True)
class CubeRepresentation:
    """Axis-parallel unit cubes; vertex v sits at corner (δ(x_1,v), …, δ(x_k,v))."""

    d: int
    seeds: Tuple[int, ...]

    def __post_init__(self):
        check_dimension(self.d)
        if not self.seeds:
            raise ValueError("a cube representation needs at least one seed")
        for x in self.seeds:
            check_vertex(x, self.d)

    @property
    def dimension(self) -> int:
        return len(self.seeds)

    def corner(self, v: int) -> Tuple[int, ...]:
        return tuple((x ^ v).bit_count() for x in self.seeds)

    def cube(self, v: int) -> Tuple[Tuple[int, int], ...]:
        return tuple((c, c + 1) for c in self.corner(v))

    def cubes_intersect(self, u: int, v: int) -> bool:
        # closed boxes meet iff they overlap on every axis
        return all(
            max(a_lo, b_lo) <= min(a_hi, b_hi)
            for (a_lo, a_hi), (b_lo, b_hi) in zip(self.cube(u), self.cube(v))
        )

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "dimension": self.dimension,
            "seeds": [to_bitstring(x, self.d) for x in self.seeds],
            "corners": {
                to_bitstring(v, self.d): list(self.corner(v)) for v in range(1 << self.d)
            },
        }


def cube_representation(seeds: Iterable[int], d: int) -> CubeRepresentation:
    return CubeRepresentation(d, tuple(seeds))
