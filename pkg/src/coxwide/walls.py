"""Walls of geodesic words, pencils of parallel walls, Cayley-ball snapshots,
and the wide-window test for Morse geodesics.

The wall dual to position i of a geodesic word w is the fixed set of the
reflection  r_i = s_1 ... s_{i-1} s_i s_{i-1} ... s_1.  Two walls cross
exactly when the product of their reflections has finite order (the pair then
generates a finite dihedral group); parallel walls give an infinite-order
product, which is what the order cap detects.  A wall separates two elements
u, v exactly when left-multiplying by the reflection shortens exactly one of
them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .avoidance import label_in_wide_subgraph, is_affine_free
from .errors import SizeCapError
from .graphs import CoxeterGraph
from .words import Word, engine_for, DEFAULT_ORBIT_CAP

DEFAULT_BALL_CAP = 100_000
DEFAULT_ORDER_CAP = 64


# ---------------------------------------------------------------------------
# Cayley balls


@dataclass(frozen=True)
class CayleyBall:
    """Ball of given radius in the Cayley graph, elements as canonical words.

    words: canonical geodesic words in breadth-first order (lexicographic
    within a sphere); edges: triples (i, j, s) with i < j meaning the i-th
    and j-th elements differ by right-multiplication by generator s.
    """
    radius: int
    words: tuple[Word, ...]
    edges: tuple[tuple[int, int, str], ...]

    def index(self, word: Word) -> int:
        return self.words.index(word)

    def to_json_obj(self) -> dict:
        return {"radius": self.radius,
                "elements": [" ".join(w) for w in self.words],
                "edges": [[i, j, s] for i, j, s in self.edges]}

    def to_dot(self) -> str:
        lines = ["graph cayley_ball {", "  node [shape=circle];"]
        for idx, w in enumerate(self.words):
            lbl = " ".join(w) if w else "e"
            lines.append(f'  n{idx} [label="{lbl}"];')
        for i, j, s in self.edges:
            lines.append(f'  n{i} -- n{j} [label="{s}"];')
        lines.append("}")
        return "\n".join(lines)


def build_ball(g: CoxeterGraph, radius: int, cap: int = DEFAULT_BALL_CAP,
               orbit_cap: int = DEFAULT_ORBIT_CAP) -> CayleyBall:
    """Breadth-first ball around the identity; raises SizeCapError beyond cap."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    eng = engine_for(g, orbit_cap)
    gens = range(g.n)
    sphere: list[tuple[int, ...]] = [()]
    seen: dict[tuple[int, ...], int] = {(): 0}
    order: list[tuple[int, ...]] = [()]
    for _ in range(radius):
        nxt: set[tuple[int, ...]] = set()
        for w in sphere:
            ends = eng.ending_letters(w)
            for s in gens:
                if s not in ends:
                    nxt.add(eng.normalize(w + (s,)))
        sphere = sorted(nxt)
        for w in sphere:
            if len(order) >= cap:
                raise SizeCapError(cap, f"ball exceeds {cap} elements")
            seen[w] = len(order)
            order.append(w)
    edges = set()
    for w, i in seen.items():
        for s in gens:
            j = seen.get(eng.normalize(w + (s,)))
            if j is not None and i < j:
                edges.add((i, j, g.vertices[s]))
    return CayleyBall(radius, tuple(eng.decode(w) for w in order),
                      tuple(sorted(edges)))


# ---------------------------------------------------------------------------
# crossing and separation


def order_of(g: CoxeterGraph, word: Word, cap: int = DEFAULT_ORDER_CAP,
             orbit_cap: int = DEFAULT_ORBIT_CAP) -> Optional[int]:
    """Order of the element, or None when it exceeds cap (infinite order, for
    any cap at least the largest finite rotation order in the group)."""
    eng = engine_for(g, orbit_cap)
    w = eng.normalize(eng.encode(word))
    if not w:
        return 1
    acc: tuple[int, ...] = ()
    for k in range(1, cap + 1):
        acc = eng.mult(acc, w)
        if not acc:
            return k
    return None


def is_reflection(g: CoxeterGraph, word: Word,
                  orbit_cap: int = DEFAULT_ORBIT_CAP) -> bool:
    """Odd-length involution test: reflections are exactly the elements
    conjugate to a generator, hence odd length and order two."""
    eng = engine_for(g, orbit_cap)
    w = eng.normalize(eng.encode(word))
    return bool(w) and len(w) % 2 == 1 and eng.mult(w, w) == ()


def walls_cross(g: CoxeterGraph, word: Word, i: int, j: int,
                order_cap: int = DEFAULT_ORDER_CAP,
                orbit_cap: int = DEFAULT_ORBIT_CAP) -> bool:
    """Do the walls dual to positions i and j (1-based) of a geodesic cross?

    True exactly when the product of the two reflections has finite order.
    An order above ``order_cap`` is reported as parallel (infinite order);
    the default cap of 64 is far above any rotation order arising from the
    labels handled here.
    """
    eng = engine_for(g, orbit_cap)
    w = eng.encode(word)
    eng.require_geodesic(w)
    for pos in (i, j):
        if not 1 <= pos <= len(w):
            raise ValueError(f"position {pos} out of range 1..{len(w)}")
    ri = eng.reflection_word(w, i)
    rj = eng.reflection_word(w, j)
    if ri == rj:
        raise ValueError(f"positions {i} and {j} are dual to the same wall")
    prod = eng.mult(ri, rj)
    return order_of(g, eng.decode(prod), cap=order_cap,
                    orbit_cap=orbit_cap) is not None


def wall_separates(g: CoxeterGraph, reflection_word: Word, u: Word,
                   v: Word = (), orbit_cap: int = DEFAULT_ORBIT_CAP) -> bool:
    """Does the wall of the reflection separate the elements u and v?

    It does exactly when left multiplication by the reflection shortens one
    of them and lengthens the other.  (For v = ru this always holds, so the
    degenerate adjacent-chambers case needs no special handling.)
    """
    if not is_reflection(g, reflection_word, orbit_cap):
        raise ValueError("not a reflection word")
    eng = engine_for(g, orbit_cap)
    r = eng.normalize(eng.encode(reflection_word))
    uu = eng.normalize(eng.encode(u))
    vv = eng.normalize(eng.encode(v))
    du = len(eng.mult(r, uu)) < len(uu)
    dv = len(eng.mult(r, vv)) < len(vv)
    return du != dv


# ---------------------------------------------------------------------------
# pencils


@dataclass(frozen=True)
class Pencil:
    """A maximum pairwise-parallel set of walls dual to one geodesic word.

    positions: 1-based letter positions, lexicographically least among the
    maximum-size answers; reflections: their canonical reflection words;
    separates_endpoints: per-wall verification that the wall separates the
    identity from the word's endpoint (true for every dual wall).
    """
    positions: tuple[int, ...]
    reflections: tuple[Word, ...]
    separates_endpoints: tuple[bool, ...]

    def to_json_obj(self) -> dict:
        return {"positions": list(self.positions),
                "reflections": [" ".join(r) for r in self.reflections],
                "separates_endpoints": list(self.separates_endpoints)}


def _max_independent_set(n: int, adj: list[int]) -> tuple[int, ...]:
    """Lexicographically least maximum independent set of an n-vertex graph
    given as adjacency bitmasks.  Exact; n stays small here (one vertex per
    letter of a geodesic word)."""
    best_size: dict[int, int] = {}

    def size(remaining: int) -> int:
        if remaining == 0:
            return 0
        got = best_size.get(remaining)
        if got is not None:
            return got
        v = remaining & -remaining
        idx = v.bit_length() - 1
        res = max(size(remaining & ~v),
                  1 + size(remaining & ~v & ~adj[idx]))
        best_size[remaining] = res
        return res

    chosen = []
    remaining = (1 << n) - 1
    target = size(remaining)
    for v in range(n):
        if not (remaining >> v) & 1:
            continue
        rest = remaining & ~(1 << v) & ~adj[v]
        if 1 + size(rest) == target:
            chosen.append(v)
            remaining = rest
            target -= 1
    return tuple(chosen)


def find_pencil(g: CoxeterGraph, word: Word,
                order_cap: int = DEFAULT_ORDER_CAP,
                orbit_cap: int = DEFAULT_ORBIT_CAP) -> Pencil:
    """Largest set of pairwise non-crossing walls dual to a geodesic word,
    with each wall checked to separate the endpoints of the word."""
    eng = engine_for(g, orbit_cap)
    w = eng.encode(word)
    eng.require_geodesic(w)
    n = len(w)
    refl = [eng.reflection_word(w, i + 1) for i in range(n)]
    adj = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            prod = eng.mult(refl[a], refl[b])
            finite = order_of(g, eng.decode(prod), cap=order_cap,
                              orbit_cap=orbit_cap) is not None
            if finite:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    picked = _max_independent_set(n, adj)
    seps = []
    for p in picked:
        du = len(eng.mult(refl[p], w)) < len(w)
        seps.append(du)  # identity side never descends, so this is the XOR
    return Pencil(tuple(p + 1 for p in picked),
                  tuple(eng.decode(refl[p]) for p in picked), tuple(seps))


# ---------------------------------------------------------------------------
# the window test


@dataclass(frozen=True)
class MorseWindowReport:
    """Outcome of the wide-window scan.

    passes: no window of length k+1 has all letters inside one wide subgraph.
    window: on failure, the earliest offending positions (1-based, inclusive).
    within_proven_hypothesis: the graph is affine-free, the setting in which
    the window criterion is known to characterize Morse directions; outside
    it the scan still runs but the flag warns the verdict is heuristic.
    """
    passes: bool
    k: int
    window: Optional[tuple[int, int]]
    wide_subgraph: Optional[tuple[str, ...]]
    within_proven_hypothesis: bool

    def to_json_obj(self) -> dict:
        return {"passes": self.passes, "k": self.k,
                "window": None if self.window is None else list(self.window),
                "wide_subgraph": (None if self.wide_subgraph is None
                                  else list(self.wide_subgraph)),
                "within_proven_hypothesis": self.within_proven_hypothesis}


def morse_window_check(g: CoxeterGraph, word: Word, k: int,
                       orbit_cap: int = DEFAULT_ORBIT_CAP) -> MorseWindowReport:
    """Scan a geodesic word for a window of length k+1 whose letters all lie
    in a common wide subgraph.

    Longer wide windows contain wide windows of length exactly k+1, so
    scanning that one length decides every window of length > k.  The first
    (leftmost) offending window is reported without extension.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    eng = engine_for(g, orbit_cap)
    eng.require_geodesic(eng.encode(word))
    hypothesis = is_affine_free(g)
    width = k + 1
    for start in range(len(word) - width + 1):
        mask = 0
        for s in word[start:start + width]:
            mask |= 1 << g.index(s)
        wm = label_in_wide_subgraph(g, mask)
        if wm is not None:
            return MorseWindowReport(False, k, (start + 1, start + width),
                                     g.names_of(wm), hypothesis)
    return MorseWindowReport(True, k, None, None, hypothesis)
