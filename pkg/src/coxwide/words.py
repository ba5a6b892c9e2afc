"""Exact word engine: braid orbits, normalization, ending letters, extensions.

Everything here is driven by two facts about Coxeter systems.  First, a word
is geodesic iff no member of its orbit under braid moves (replace a length-m
alternating block ``abab...`` by ``baba...`` where m = m_ab) contains a
doubled letter.  Second, any two geodesic expressions of the same element lie
in one braid orbit.  Normalization therefore needs no automaton: search the
orbit for a doubled letter, delete it, restart; once no orbit member has one,
the word is geodesic and the lex-least orbit member (in the graph's vertex
order) is the canonical form.

Orbits can be exponential, so every orbit search honours an explicit cap
(default 200_000) and raises OrbitCapError beyond it.  Memo tables on the
engine are pure caches and never change observable behaviour.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import ConstructionError, GraphFormatError, NonGeodesicError, OrbitCapError
from .graphs import CoxeterGraph, bits

DEFAULT_ORBIT_CAP = 200_000

Word = tuple[str, ...]  # letters are vertex names; () is the identity


@dataclass(frozen=True)
class GroupElement:
    """A group element, identified by its canonical (lex-least geodesic) word."""
    word: Word

    def __len__(self):
        return len(self.word)

    def serialize(self) -> str:
        return " ".join(self.word)


@dataclass(frozen=True)
class Reflection:
    """An involution conjugate to a generator.

    ``type_generator`` records the generator the defining construction
    conjugated (for a wall dual to the i-th edge of a word, the i-th letter).
    Equality of walls is equality of ``element``; the recorded type is a
    construction artifact, not a conjugacy invariant, since generators joined
    by odd-labeled paths are conjugate to each other.
    """
    element: GroupElement
    type_generator: str


def parse_word(g: CoxeterGraph, text: str) -> Word:
    """Space-separated vertex names; the empty string is the identity."""
    letters = tuple(text.split())
    for s in letters:
        g.index(s)  # raises GraphFormatError for unknown names
    return letters


class WordEngine:
    """Index-space rewriting engine bound to one graph.

    Public module functions wrap this in vertex-name space; heavy callers
    (ball construction, diagram builders) use the engine directly.
    """

    def __init__(self, g: CoxeterGraph, orbit_cap: int = DEFAULT_ORBIT_CAP):
        self.g = g
        self.orbit_cap = orbit_cap
        self._pattern = {}  # (a, b) -> (alt starting a, alt starting b), len m_ab
        for i in range(g.n):
            for j in range(g.n):
                if i != j and g.m(i, j) is not None:
                    m = g.m(i, j)
                    fwd = tuple((i, j)[k % 2] for k in range(m))
                    rev = tuple((j, i)[k % 2] for k in range(m))
                    self._pattern[(i, j)] = (m, fwd, rev)
        self._norm: dict[tuple[int, ...], tuple[int, ...]] = {}
        self._ends: dict[tuple[int, ...], frozenset[int]] = {}

    # -- encoding -----------------------------------------------------------

    def encode(self, word: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.g.index(s) for s in word)

    def decode(self, iword: Sequence[int]) -> Word:
        return tuple(self.g.vertices[i] for i in iword)

    # -- braid moves ---------------------------------------------------------

    def moves(self, w: tuple[int, ...]):
        """All single braid-move rewrites of ``w``."""
        pat = self._pattern
        n = len(w)
        for i in range(n - 1):
            key = (w[i], w[i + 1])
            entry = pat.get(key)
            if entry is None:
                continue
            m, fwd, rev = entry
            if i + m <= n and w[i:i + m] == fwd:
                yield w[:i] + rev + w[i + m:]

    @staticmethod
    def _doubled_at(w: tuple[int, ...]) -> Optional[int]:
        for i in range(len(w) - 1):
            if w[i] == w[i + 1]:
                return i
        return None

    def orbit(self, w: tuple[int, ...], cap: Optional[int] = None) -> set[tuple[int, ...]]:
        """Braid orbit of any word (geodesic or not); length is preserved."""
        cap = self.orbit_cap if cap is None else cap
        seen = {w}
        dq = deque([w])
        while dq:
            u = dq.popleft()
            for v in self.moves(u):
                if v not in seen:
                    seen.add(v)
                    if len(seen) > cap:
                        raise OrbitCapError(cap)
                    dq.append(v)
        return seen

    # -- normalization -------------------------------------------------------

    def normalize(self, w: tuple[int, ...]) -> tuple[int, ...]:
        """Canonical form: lex-least geodesic expression of the element of ``w``."""
        cached = self._norm.get(w)
        if cached is not None:
            return cached
        start = w
        cap = self.orbit_cap
        while True:
            i = self._doubled_at(w)
            if i is not None:
                w = w[:i] + w[i + 2:]
                continue
            hit = self._norm.get(w)
            if hit is not None:
                self._norm[start] = hit
                return hit
            # braid-orbit search for a hidden doubled letter
            seen = {w}
            dq = deque([w])
            shortened = None
            while dq:
                u = dq.popleft()
                for v in self.moves(u):
                    if v in seen:
                        continue
                    j = self._doubled_at(v)
                    if j is not None:
                        shortened = v[:j] + v[j + 2:]
                        break
                    seen.add(v)
                    if len(seen) > cap:
                        raise OrbitCapError(cap)
                    dq.append(v)
                if shortened is not None:
                    break
            if shortened is not None:
                w = shortened
                continue
            # geodesic: the whole orbit was enumerated
            result = min(seen)
            for u in seen:
                self._norm[u] = result
            self._ends[result] = frozenset(u[-1] for u in seen) if result else frozenset()
            self._norm[start] = result
            return result

    def is_geodesic(self, w: tuple[int, ...]) -> bool:
        return len(self.normalize(w)) == len(w)

    def require_geodesic(self, w: tuple[int, ...]):
        if not self.is_geodesic(w):
            raise NonGeodesicError(f"word {self.decode(w)!r} is not geodesic")

    def mult(self, u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
        return self.normalize(u + v)

    def inverse(self, u: tuple[int, ...]) -> tuple[int, ...]:
        return self.normalize(tuple(reversed(u)))

    # -- descent structure ----------------------------------------------------

    def ending_letters(self, w: tuple[int, ...]) -> frozenset[int]:
        """Letters some geodesic expression of ``w`` ends with (the right descent set)."""
        c = self.normalize(w)
        if len(c) != len(w):
            raise NonGeodesicError(f"word {self.decode(w)!r} is not geodesic")
        hit = self._ends.get(c)
        if hit is not None:
            return hit
        ends = frozenset(u[-1] for u in self.orbit(c)) if c else frozenset()
        self._ends[c] = ends
        return ends

    def reflection_word(self, w: tuple[int, ...], i: int) -> tuple[int, ...]:
        """Canonical word of the reflection dual to the i-th edge (1-based) of ``w``."""
        prefix = w[:i - 1]
        return self.normalize(prefix + (w[i - 1],) + tuple(reversed(prefix)))


@lru_cache(maxsize=256)
def engine_for(g: CoxeterGraph, orbit_cap: int = DEFAULT_ORBIT_CAP) -> WordEngine:
    return WordEngine(g, orbit_cap)


# ---------------------------------------------------------------------------
# name-space API


def tits_orbit(g: CoxeterGraph, word: Sequence[str],
               cap: int = DEFAULT_ORBIT_CAP) -> set[Word]:
    """Closure of ``word`` under braid moves.  Raises OrbitCapError past ``cap``."""
    eng = engine_for(g)
    return {eng.decode(u) for u in eng.orbit(eng.encode(word), cap)}


def normalize(g: CoxeterGraph, word: Sequence[str],
              orbit_cap: int = DEFAULT_ORBIT_CAP) -> Word:
    """Canonical form of the element spelled by ``word``.

    >>> g = _dihedral(3)
    >>> normalize(g, ("a", "b", "a", "b"))
    ('b', 'a')
    >>> normalize(g, ("a", "a"))
    ()
    """
    eng = engine_for(g, orbit_cap)
    return eng.decode(eng.normalize(eng.encode(word)))


def is_geodesic(g: CoxeterGraph, word: Sequence[str]) -> bool:
    eng = engine_for(g)
    return eng.is_geodesic(eng.encode(word))


def element(g: CoxeterGraph, word: Sequence[str]) -> GroupElement:
    return GroupElement(normalize(g, word))


def ending_letters(g: CoxeterGraph, word: Sequence[str]) -> frozenset[str]:
    """The set K of last letters over all geodesic expressions of the word.

    The group generated by K is always finite, and w*t is geodesic exactly for
    t outside K.
    """
    eng = engine_for(g)
    return frozenset(g.vertices[i] for i in eng.ending_letters(eng.encode(word)))


def reflection_of_edge(g: CoxeterGraph, word: Sequence[str], i: int) -> Reflection:
    """Reflection dual to the i-th edge (1-based) of a geodesic word.

    A word is geodesic iff its edge reflections are pairwise distinct.
    """
    eng = engine_for(g)
    w = eng.encode(word)
    eng.require_geodesic(w)
    if not 1 <= i <= len(w):
        raise GraphFormatError(f"edge index {i} out of range 1..{len(w)}")
    return Reflection(GroupElement(eng.decode(eng.reflection_word(w, i))),
                      g.vertices[w[i - 1]])


# ---------------------------------------------------------------------------
# wide tails and geodesic extension (uses the wide-subgraph machinery)


def wide_tail(g: CoxeterGraph, word: Sequence[str]) -> tuple[Word, Optional[tuple[str, ...]]]:
    """Longest suffix whose label set lies in a wide subgraph, with one such subgraph.

    Returns ``((), None)`` when even the last letter is in no wide subgraph.
    The word must be geodesic.
    """
    from .avoidance import maximal_wide_masks
    eng = engine_for(g)
    w = eng.encode(word)
    eng.require_geodesic(w)
    wides = maximal_wide_masks(g)
    if not wides or not w:
        return (), None
    suffix_mask = 0
    best = None  # (start index, containing wide mask)
    for j in range(len(w) - 1, -1, -1):
        suffix_mask |= 1 << w[j]
        hit = next((wm for wm in wides if suffix_mask & ~wm == 0), None)
        if hit is not None:
            best = (j, hit)
        else:
            break
    if best is None:
        return (), None
    j, wm = best
    return eng.decode(w[j:]), g.names_of(wm)


def extension_constant(g: CoxeterGraph) -> int:
    """Window constant C = M + V + 1 for greedy extensions.

    Any window of the appended part longer than C has label in no wide
    subgraph: after at most M letters the wide tail covers the window, and
    each further greedy letter avoids a wide subgraph containing that tail,
    so at most V distinct new letters can follow.
    """
    from .classification import compute_constants
    c = compute_constants(g)
    return c.m_gamma + c.v_gamma + 1


def extend_geodesic(g: CoxeterGraph, word: Sequence[str], target_len: int) -> Word:
    """Extend a geodesic word to ``target_len`` by the greedy Morse-tail rule.

    Each step appends the least vertex outside Delta union K, where K is the
    ending-letter set and Delta is a wide subgraph covering the current wide
    tail (nothing, when the tail is empty).  Raises ConstructionError with the
    blocking set when no legal letter exists -- which happens exactly when the
    graph fails the preconditions (wide-spherical-avoidant, infinite group).
    """
    from .avoidance import maximal_wide_masks
    eng = engine_for(g)
    w = eng.encode(word)
    eng.require_geodesic(w)
    if target_len < len(w):
        raise GraphFormatError(f"target length {target_len} shorter than word")
    wides = maximal_wide_masks(g)
    full = g.full_mask()
    while len(w) < target_len:
        k_mask = 0
        for i in eng.ending_letters(w):
            k_mask |= 1 << i
        delta_mask = 0
        if w and wides:
            suffix_mask = 0
            hit = None
            for j in range(len(w) - 1, -1, -1):
                suffix_mask |= 1 << w[j]
                nxt = next((wm for wm in wides if suffix_mask & ~wm == 0), None)
                if nxt is None:
                    break
                hit = nxt
            if hit is not None:
                delta_mask = hit
        blocked = k_mask | delta_mask
        legal = full & ~blocked
        if legal == 0:
            raise ConstructionError(
                "no legal letter: every vertex lies in Delta union K",
                blocking_set=g.names_of(blocked))
        w = w + (next(bits(legal)),)
    return eng.decode(w)


def _dihedral(m: int) -> CoxeterGraph:
    """Two generators with label m -- used by doctests."""
    return CoxeterGraph(("a", "b"), [("a", "b", m)])
