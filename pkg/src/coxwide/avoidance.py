"""Wide subgraphs, special joins, and the avoidance deciders.

A subset of vertices is *wide* when it splits as P (disjoint union) Q with
every cross pair joined by an edge labeled 2 and either both parts generate
infinite groups or P is irreducible affine of rank >= 3 (Q may then be
anything, even empty).  Because cross pairs must commute, every irreducible
component of the subset lies entirely in P or in Q, so decompositions are
component bipartitions and wideness is decidable from the component
classification alone -- that is what ``wide_decomposition`` does; the
exhaustive bipartition search survives only as a test oracle.

The deciders quantify over inclusion-maximal blocked sets: a path avoiding a
superset avoids the subset, and a failing pair keeps failing when the blocked
set grows (for the spherical variant, among joins that keep the pair outside
K), so pruning changes nothing about the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .classification import _classify_component, is_spherical_mask
from .errors import SizeCapError
from .graphs import CoxeterGraph, bits, popcount, submasks

DEFAULT_VERTEX_CAP = 20


@dataclass(frozen=True)
class WideDecomposition:
    """Witness that a vertex set is wide.

    kind: 'TwoInfiniteFactors' (both parts infinite) or 'AffineRank3Plus'
    (P irreducible affine of rank >= 3, Q unconstrained).
    """
    p: tuple[str, ...]
    q: tuple[str, ...]
    kind: str

    def to_json_obj(self) -> dict:
        return {"P": list(self.p), "Q": list(self.q), "kind": self.kind}


@dataclass(frozen=True)
class SpecialJoin:
    """(P, Q, K): (P, Q) a wide decomposition of P union Q; K empty or
    spherical with every K-vertex adjacent (any label) to every P-vertex.
    K attaches to P only; the asymmetry is part of the definition."""
    p: tuple[str, ...]
    q: tuple[str, ...]
    k: tuple[str, ...]

    def blocked(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.p) | set(self.q) | set(self.k)))

    def to_json_obj(self) -> dict:
        return {"P": list(self.p), "Q": list(self.q), "K": list(self.k)}


@dataclass(frozen=True)
class AvoidanceReport:
    """Outcome of an avoidance check; witness fields are set on failure."""
    holds: bool
    blocking_set: Optional[tuple[str, ...]] = None
    pair: Optional[tuple[str, str]] = None
    join: Optional[SpecialJoin] = None

    def to_json_obj(self) -> dict:
        if self.holds:
            return {"holds": True, "witness": None}
        witness = {"blocking_set": list(self.blocking_set), "pair": list(self.pair)}
        if self.join is not None:
            witness["join"] = self.join.to_json_obj()
        return {"holds": False, "witness": witness}


# ---------------------------------------------------------------------------
# wideness


def _infinite_component(g: CoxeterGraph, comp_mask: int) -> bool:
    return _classify_component(g, comp_mask).kind != "FiniteType"


def _affine_rank3_component(g: CoxeterGraph, comp_mask: int) -> bool:
    v = _classify_component(g, comp_mask)
    return v.kind == "AffineType" and v.rank >= 3


def wide_decomposition_mask(g: CoxeterGraph, mask: int) -> Optional[tuple[int, int, str]]:
    """(P mask, Q mask, kind) for the canonical witness, or None if not wide."""
    if mask == 0:
        return None
    comps = g.irreducible_components_mask(mask)
    infinite = [c for c in comps if _infinite_component(g, c)]
    if len(infinite) >= 2:
        p = infinite[0]  # components come sorted by least vertex
        return p, mask & ~p, "TwoInfiniteFactors"
    affine = [c for c in comps if _affine_rank3_component(g, c)]
    if affine:
        p = affine[0]
        return p, mask & ~p, "AffineRank3Plus"
    return None


def wide_decomposition(g: CoxeterGraph, names) -> Optional[WideDecomposition]:
    """Canonical wide decomposition of a vertex set, or None.

    P is the least-vertex infinite component (two-infinite case) or the least
    affine rank >= 3 component; Q is everything else in the set.
    """
    res = wide_decomposition_mask(g, g.mask_of(names))
    if res is None:
        return None
    p, q, kind = res
    return WideDecomposition(g.names_of(p), g.names_of(q), kind)


def is_wide(g: CoxeterGraph) -> bool:
    return wide_decomposition_mask(g, g.full_mask()) is not None


@lru_cache(maxsize=4096)
def wide_masks(g: CoxeterGraph, cap: int = DEFAULT_VERTEX_CAP) -> tuple[int, ...]:
    """All wide subsets of the graph, ascending as masks.  Exponential in |V|."""
    if g.n > cap:
        raise SizeCapError(cap, f"graph has {g.n} vertices, enumeration cap is {cap}")
    return tuple(m for m in sorted(submasks(g.full_mask()))
                 if m and wide_decomposition_mask(g, m) is not None)


@lru_cache(maxsize=4096)
def maximal_wide_masks(g: CoxeterGraph, cap: int = DEFAULT_VERTEX_CAP) -> tuple[int, ...]:
    all_wide = wide_masks(g, cap)
    return tuple(m for m in all_wide
                 if not any(m != w and m & ~w == 0 for w in all_wide))


def enumerate_wide_subgraphs(g: CoxeterGraph, maximal_only: bool = False,
                             cap: int = DEFAULT_VERTEX_CAP) -> list[tuple[str, ...]]:
    masks = maximal_wide_masks(g, cap) if maximal_only else wide_masks(g, cap)
    return [g.names_of(m) for m in masks]


def label_in_wide_subgraph(g: CoxeterGraph, label_mask: int) -> Optional[int]:
    """A maximal wide subgraph containing the label set, or None."""
    for wm in maximal_wide_masks(g):
        if label_mask & ~wm == 0:
            return wm
    return None


# ---------------------------------------------------------------------------
# affine-freeness


@lru_cache(maxsize=4096)
def is_affine_free(g: CoxeterGraph, cap: int = DEFAULT_VERTEX_CAP) -> bool:
    """No subset of generators has an affine irreducible component of rank >= 3.

    Right-angled graphs are always affine-free: their conventional diagrams
    carry only infinity labels, while affine diagrams have finite ones.
    """
    if g.n > cap:
        raise SizeCapError(cap, f"graph has {g.n} vertices, enumeration cap is {cap}")
    if g.is_racg():
        return True
    for mask in submasks(g.full_mask()):
        for c in g.irreducible_components_mask(mask):
            if _affine_rank3_component(g, c):
                return False
    return True


# ---------------------------------------------------------------------------
# special joins


def _component_bipartitions(g: CoxeterGraph, mask: int):
    """Ordered (P, Q) wide decompositions of ``mask`` (Q possibly empty)."""
    comps = g.irreducible_components_mask(mask)
    k = len(comps)
    seen = set()
    for pick in range(1, 1 << k):
        p = 0
        for idx in bits(pick):
            p |= comps[idx]
        q = mask & ~p
        if (p, q) in seen:
            continue
        seen.add((p, q))
        p_infinite = not is_spherical_mask(g, p)
        q_infinite = not is_spherical_mask(g, q)
        if p_infinite and q_infinite:
            yield p, q
        elif popcount(pick) == 1 and _affine_rank3_component(g, p):
            yield p, q


def _common_neighbors(g: CoxeterGraph, p_mask: int) -> int:
    """Vertices adjacent (any label) to every vertex of ``p_mask``."""
    acc = g.full_mask()
    for i in bits(p_mask):
        acc &= g.neighbors_mask(i)
    return acc & ~p_mask


@lru_cache(maxsize=4096)
def _spherical_submasks(g: CoxeterGraph, ground: int) -> tuple[int, ...]:
    return tuple(m for m in submasks(ground) if is_spherical_mask(g, m))


def _maximal_spherical_submasks(g: CoxeterGraph, ground: int) -> list[int]:
    sub = _spherical_submasks(g, ground)
    return [m for m in sub if not any(m != s and m & ~s == 0 for s in sub)]


def enumerate_special_joins(g: CoxeterGraph, maximal_only: bool = False,
                            cap: int = DEFAULT_VERTEX_CAP) -> list[SpecialJoin]:
    """All special joins (ordered triples), deterministically sorted.

    With ``maximal_only``, keep those whose blocked set P|Q|K is
    inclusion-maximal among all blocked sets.
    """
    if g.n > cap:
        raise SizeCapError(cap, f"graph has {g.n} vertices, enumeration cap is {cap}")
    triples: list[tuple[int, int, int]] = []
    for d in wide_masks(g, cap):
        for p, q in _component_bipartitions(g, d):
            ground = _common_neighbors(g, p) & ~d
            for k in _spherical_submasks(g, ground):
                triples.append((p, q, k))
    if maximal_only:
        blocked = [p | q | k for p, q, k in triples]
        keep = []
        for idx, b in enumerate(blocked):
            if not any(b != b2 and b & ~b2 == 0 for b2 in blocked):
                keep.append(triples[idx])
        triples = keep
    triples.sort()
    return [SpecialJoin(g.names_of(p), g.names_of(q), g.names_of(k))
            for p, q, k in triples]


# ---------------------------------------------------------------------------
# the deciders


def _connected_pair(g: CoxeterGraph, s: int, t: int, allowed: int) -> bool:
    """Path from s to t all of whose vertices lie in ``allowed`` (s, t included)."""
    if not (allowed >> s) & 1 or not (allowed >> t) & 1:
        return False
    return (g.component_of(s, allowed) >> t) & 1 == 1


def is_wide_avoidant(g: CoxeterGraph, cap: int = DEFAULT_VERTEX_CAP) -> AvoidanceReport:
    """For every wide subgraph Delta and every vertex pair, some path meets
    Delta only in the endpoints.  Checked against maximal wide subgraphs only
    (avoiding a superset is stronger).  Vacuously true without wide subgraphs.
    """
    full = g.full_mask()
    for wm in maximal_wide_masks(g, cap):
        for s in range(g.n):
            for t in range(s + 1, g.n):
                allowed = (full & ~wm) | (1 << s) | (1 << t)
                if not _connected_pair(g, s, t, allowed):
                    return AvoidanceReport(
                        False, blocking_set=g.names_of(wm),
                        pair=(g.vertices[s], g.vertices[t]))
    return AvoidanceReport(True)


def is_wide_spherical_avoidant(g: CoxeterGraph,
                               cap: int = DEFAULT_VERTEX_CAP) -> AvoidanceReport:
    """For every special join (P, Q, K) and pair s, t outside K, some path
    meets K|P|Q only in the endpoints.

    Per pair, only maximal blocked sets among joins keeping the pair outside K
    are tested: any failing join extends (grow K within the legal ground set)
    to a failing tested one.
    """
    if g.n > cap:
        raise SizeCapError(cap, f"graph has {g.n} vertices, enumeration cap is {cap}")
    full = g.full_mask()
    decomps = []
    for d in wide_masks(g, cap):
        for p, q in _component_bipartitions(g, d):
            decomps.append((d, p, q, _common_neighbors(g, p) & ~d))
    for s in range(g.n):
        for t in range(s + 1, g.n):
            pair_mask = (1 << s) | (1 << t)
            for d, p, q, ground in decomps:
                for k in _maximal_spherical_submasks(g, ground & ~pair_mask):
                    blocked = d | k
                    allowed = (full & ~blocked) | pair_mask
                    if not _connected_pair(g, s, t, allowed):
                        return AvoidanceReport(
                            False, blocking_set=g.names_of(blocked),
                            pair=(g.vertices[s], g.vertices[t]),
                            join=SpecialJoin(g.names_of(p), g.names_of(q),
                                             g.names_of(k)))
    return AvoidanceReport(True)
