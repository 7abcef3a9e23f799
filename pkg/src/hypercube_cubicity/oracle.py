"""Exact cubicity of tiny graphs, used as ground truth for the builder.

cub(G) is the least t such that E(G) is the intersection of t unit
interval graphs on V(G).  Unit interval graphs are handled through proper
interval orderings: an order of the vertices plus a nondecreasing ``reach``
with reach[i] ≥ i, where position i sees exactly positions i+1..reach[i]
to its right.  That proper interval graphs are exactly the unit interval
graphs is Roberts' theorem; every ordering used here is additionally
turned into explicit unit interval starts and re-checked.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .builder import SeedSet
from .core import CapacityError
from .intervals import UnitIntervalRep, build_Ix, rep_adjacent

Edge = Tuple[int, int]

ORACLE_MAX_N = 7
RECOGNIZE_MAX_N = 10
CERTIFY_MAX_D = 10


@dataclass(frozen=True)
class SmallGraph:
    n: int
    adj: Tuple[int, ...]  # neighbor bitmask per vertex

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency list length must equal n")
        for i, row in enumerate(self.adj):
            if row >> i & 1:
                raise ValueError(f"self-loop at vertex {i}")
            if row >> self.n:
                raise ValueError(f"neighbor out of range at vertex {i}")
            for j in range(self.n):
                if (row >> j & 1) != (self.adj[j] >> i & 1):
                    raise ValueError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SmallGraph":
        adj = [0] * n
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise ValueError(f"bad edge ({a}, {b}) for n={n}")
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(n, tuple(adj))

    @classmethod
    def from_json(cls, text: str) -> "SmallGraph":
        data = json.loads(text)
        return cls.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])

    @classmethod
    def complete(cls, n: int) -> "SmallGraph":
        return cls.from_edges(n, itertools.combinations(range(n), 2))

    @classmethod
    def cycle(cls, n: int) -> "SmallGraph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "SmallGraph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def hypercube(cls, d: int) -> "SmallGraph":
        return cls.from_edges(1 << d, [(v, v ^ (1 << i)) for v in range(1 << d) for i in range(d) if v < v ^ (1 << i)])

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def edges(self) -> FrozenSet[Edge]:
        return frozenset((a, b) for a, b in itertools.combinations(range(self.n), 2) if self.has_edge(a, b))

    def edge_mask(self) -> int:
        """Edges as a bitmask over :func:`pair_index` positions."""
        return sum(1 << k for k, (a, b) in enumerate(pair_list(self.n)) if self.has_edge(a, b))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": sorted(map(list, self.edges()))})


@lru_cache(maxsize=None)
def pair_list(n: int) -> Tuple[Edge, ...]:
    return tuple(itertools.combinations(range(n), 2))


def mask_to_edges(n: int, mask: int) -> FrozenSet[Edge]:
    return frozenset(p for k, p in enumerate(pair_list(n)) if mask >> k & 1)


@dataclass(frozen=True)
class ProperOrderRep:
    order: Tuple[int, ...]  # vertex at each position
    reach: Tuple[int, ...]  # last position seen from each position

    def __post_init__(self):
        n = len(self.order)
        if sorted(self.order) != list(range(n)) or len(self.reach) != n:
            raise ValueError("order must be a permutation with one reach per position")
        for i, r in enumerate(self.reach):
            if not i <= r < n:
                raise ValueError(f"reach[{i}]={r} out of range")
        if any(a > b for a, b in zip(self.reach, self.reach[1:])):
            raise ValueError("reach must be nondecreasing")

    @property
    def n(self) -> int:
        return len(self.order)

    def edges(self) -> FrozenSet[Edge]:
        out = set()
        for i, r in enumerate(self.reach):
            for j in range(i + 1, r + 1):
                a, b = self.order[i], self.order[j]
                out.add((min(a, b), max(a, b)))
        return frozenset(out)

    def graph(self) -> SmallGraph:
        return SmallGraph.from_edges(self.n, self.edges())

    def starts(self) -> Tuple[Fraction, ...]:
        """Exact unit interval starts (indexed by vertex) realizing this ordering.

        Solves the difference system s[p] ≤ s[p+1], s[reach[p]] − s[p] ≤ 1,
        s[reach[p]+1] − s[p] ≥ 1 + ε by Bellman-Ford with ε = 1/(n+1); any
        simple cycle has at most n strict arcs, so this ε keeps a feasible
        strict system feasible.
        """
        n = self.n
        eps = Fraction(1, n + 1)
        arcs = []  # (a, b, w) meaning s[b] - s[a] <= w
        for p in range(n - 1):
            arcs.append((p + 1, p, Fraction(0)))
        for p, r in enumerate(self.reach):
            if r > p:
                arcs.append((p, r, Fraction(1)))
            if r + 1 < n:
                arcs.append((r + 1, p, -1 - eps))
        dist = [Fraction(0)] * n
        for _ in range(n + 1):
            changed = False
            for a, b, w in arcs:
                if dist[a] + w < dist[b]:
                    dist[b] = dist[a] + w
                    changed = True
            if not changed:
                break
        else:
            raise ArithmeticError("ordering admits no unit interval realization")
        base = min(dist)
        by_vertex = [Fraction(0)] * n
        for p, v in enumerate(self.order):
            by_vertex[v] = dist[p] - base
        return tuple(by_vertex)

    def interval_rep(self) -> UnitIntervalRep:
        return UnitIntervalRep(self.starts())

    def to_dict(self) -> dict:
        return {
            "order": list(self.order),
            "reach": list(self.reach),
            "starts": [str(s) for s in self.starts()],
        }


def rep_edges(rep: UnitIntervalRep) -> FrozenSet[Edge]:
    return frozenset(
        (a, b) for a, b in itertools.combinations(range(rep.n), 2) if rep_adjacent(rep, a, b)
    )


def unit_interval_witness(G: SmallGraph) -> Optional[ProperOrderRep]:
    """Search for an umbrella ordering of ``G``; None when none exists.

    Vertices are placed left to right.  A position is *open* while it is
    adjacent to everything placed after it; open positions always form a
    suffix.  A new vertex is admissible iff its earlier neighbors are
    exactly a suffix of the open segment.
    """
    n = G.n
    if n > RECOGNIZE_MAX_N:
        raise CapacityError(f"recognition capped at n={RECOGNIZE_MAX_N}")
    dead = set()

    def extend(order: List[int], placed: int, open_seg: Tuple[int, ...]) -> Optional[List[int]]:
        if len(order) == n:
            return order
        key = (placed, open_seg)
        if key in dead:
            return None
        for w in range(n):
            if placed >> w & 1:
                continue
            nb = G.adj[w] & placed
            k = len(open_seg)
            while k and G.adj[w] >> open_seg[k - 1] & 1:
                k -= 1
            # earlier neighbors must be exactly open_seg[k:]
            suffix = sum(1 << v for v in open_seg[k:])
            if nb != suffix:
                continue
            found = extend(order + [w], placed | 1 << w, open_seg[k:] + (w,))
            if found is not None:
                return found
        dead.add(key)
        return None

    order = extend([], 0, ())
    if order is None:
        return None
    pos = {v: p for p, v in enumerate(order)}
    reach = []
    for p, v in enumerate(order):
        right = [pos[w] for w in range(n) if G.has_edge(v, w) and pos[w] > p]
        reach.append(max(right, default=p))
    return ProperOrderRep(tuple(order), tuple(reach))


def is_unit_interval(G: SmallGraph) -> bool:
    return unit_interval_witness(G) is not None


@lru_cache(maxsize=None)
def reach_maps(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Nondecreasing sequences with i ≤ reach[i] ≤ n−1 (Catalan many)."""
    out = []

    def grow(prefix: List[int]) -> None:
        i = len(prefix)
        if i == n:
            out.append(tuple(prefix))
            return
        for r in range(max(i, prefix[-1] if prefix else 0), n):
            grow(prefix + [r])

    grow([])
    return tuple(out)


@lru_cache(maxsize=None)
def _all_unit_interval_masks(n: int) -> Dict[int, ProperOrderRep]:
    """Every labeled unit interval edge set on n vertices, with a witness."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int8).reshape(-1, n)
    pos = np.argsort(perms, axis=1)  # pos[k, v]: position of v in order k
    pairs = np.array(pair_list(n), dtype=np.int64).reshape(-1, 2)
    pa, pb = pos[:, pairs[:, 0]], pos[:, pairs[:, 1]]
    lo, hi = np.minimum(pa, pb), np.maximum(pa, pb)
    weights = np.left_shift(np.int64(1), np.arange(len(pairs), dtype=np.int64))
    found: Dict[int, ProperOrderRep] = {}
    for reach in reach_maps(n):
        masks = ((np.asarray(reach)[lo] >= hi) * weights).sum(axis=1)
        uniq, first = np.unique(masks, return_index=True)
        for m, k in zip(uniq.tolist(), first.tolist()):
            if m not in found:
                found[m] = ProperOrderRep(tuple(int(v) for v in perms[k]), reach)
    return found


def unit_interval_supergraphs(G: SmallGraph, max_n: int = ORACLE_MAX_N) -> Dict[FrozenSet[Edge], ProperOrderRep]:
    """All unit interval edge sets containing E(G), each with one witness ordering."""
    if G.n > max_n:
        raise CapacityError(f"supergraph enumeration capped at n={max_n}")
    return {mask_to_edges(G.n, m): w for m, w in _supergraph_masks(G).items()}


def _supergraph_masks(G: SmallGraph) -> Dict[int, ProperOrderRep]:
    g = G.edge_mask()
    return {m: w for m, w in _all_unit_interval_masks(G.n).items() if m & g == g}


@dataclass
class CubicityResult:
    value: Optional[int]  # None means "exceeds t_max"
    t_max: int
    certificate: List[ProperOrderRep]

    @property
    def exceeds(self) -> bool:
        return self.value is None

    def to_dict(self) -> dict:
        return {
            "cubicity": self.value if self.value is not None else f"exceeds {self.t_max}",
            "t_max": self.t_max,
            "certificate": [rep.to_dict() for rep in self.certificate],
        }


def exact_cubicity(G: SmallGraph, t_max: int = 4, max_n: int = ORACLE_MAX_N) -> CubicityResult:
    """Least number of unit interval supergraphs whose edge sets meet in E(G).

    Set cover over the non-edges of G: a supergraph covers the non-edges it
    leaves out.  Only inclusion-maximal covers are kept; iterative deepening
    on t, branching on the lowest uncovered non-edge.
    """
    if G.n > max_n:
        raise CapacityError(f"exact cubicity capped at n={max_n}")
    if not 1 <= t_max <= 4:
        raise ValueError("t_max must lie in 1..4")
    full = (1 << len(pair_list(G.n))) - 1
    universe = full & ~G.edge_mask()
    supers = _supergraph_masks(G)
    if universe == 0:
        return CubicityResult(1, t_max, [supers[full]])
    covers: Dict[int, int] = {}
    for m in sorted(supers):
        cov = universe & ~m
        if cov and cov not in covers:
            covers[cov] = m
    maximal = [c for c in covers if not any(c != o and c & o == c for o in covers)]
    maximal.sort(key=lambda c: (-c.bit_count(), c))

    def search(uncovered: int, depth: int, chosen: List[int]) -> Optional[List[int]]:
        if uncovered == 0:
            return chosen
        if depth == 0:
            return None
        low = uncovered & -uncovered
        for c in maximal:
            if c & low:
                got = search(uncovered & ~c, depth - 1, chosen + [c])
                if got is not None:
                    return got
        return None

    for t in range(1, t_max + 1):
        chosen = search(universe, t, [])
        if chosen is not None:
            return CubicityResult(t, t_max, [supers[covers[c]] for c in chosen])
    return CubicityResult(None, t_max, [])


@dataclass
class Certificate:
    ok: bool
    d: int
    size: int
    first_diff: Optional[Tuple[int, int]] = None
    expected_adjacent: Optional[bool] = None

    def __bool__(self) -> bool:
        return self.ok


def certify_upper_bound(S: SeedSet) -> Certificate:
    """Rebuild every I_x as explicit starts and compare the intersection to H_d.

    On success E(H_d) = ∩ E(I_x) with |S| unit interval graphs, so
    cub(H_d) ≤ |S|.
    """
    d = S.d
    if d > CERTIFY_MAX_D:
        raise CapacityError(f"certification capped at d={CERTIFY_MAX_D}")
    reps = [build_Ix(x, d).materialize() for x in S.seeds]
    for rep in reps:
        if len(rep.starts) != 1 << d or any(hi - lo != 1 for lo, hi in map(rep.interval, range(rep.n))):
            return Certificate(False, d, len(S))
    starts = np.array([rep.starts for rep in reps], dtype=np.int64)
    n = 1 << d
    verts = np.arange(n)
    for u in range(n):
        got = np.all(np.abs(starts[:, u, None] - starts[:, u + 1 :]) <= 1, axis=0)
        want = np.bitwise_count((verts[u + 1 :] ^ u).astype(np.uint32)) == 1
        bad = np.flatnonzero(got != want)
        if bad.size:
            v = u + 1 + int(bad[0])
            return Certificate(False, d, len(S), (u, v), bool(want[bad[0]]))
    return Certificate(True, d, len(S))
