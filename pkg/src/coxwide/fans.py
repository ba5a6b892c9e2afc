"""Fans: one-vertex bundles of geodesically-spreading edges joined by
dihedral polygons.

A fan hangs at the endpoint of a geodesic base word gamma: fan letters
s_0 .. s_r (r >= 2) with every gamma*s_i geodesic, consecutive letters joined
in the defining graph, and a 2m-gon cell between neighbours.  The wide-tail
side condition keeps interior letters out of a wide subgraph containing the
tail whenever the tail is long (> M); short tails need nothing.

Construction: ending letters K of gamma never extend it, so fan letters must
avoid K.  Short tail: any K-avoiding path from s to t works (one-endedness
guarantees K separates nothing).  Long tail: the blocked set C1 | D2 | K'
(infinite tail-side C1, full opposite side D2, K' = K minus tail letters)
forms a special join, so wide-spherical-avoidance supplies the path; a
length-1 path is replaced by the walk s,t,s,t and an s = t request by s,z,s.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .avoidance import (wide_decomposition_mask, wide_masks)
from .classification import compute_constants, is_spherical_mask
from .errors import ConstructionError
from .graphs import CoxeterGraph, bits
from .words import Word, engine_for, wide_tail, DEFAULT_ORBIT_CAP


@dataclass(frozen=True)
class FanDiagram:
    """base: the geodesic word gamma; labels: fan letters s_0..s_r;
    cells: polygon sizes (2 * m(s_i, s_i+1)); tail/tail_delta: the wide tail
    of the base and a wide subgraph containing its label (None when empty or
    the tail condition ran in the short case); case: 'short-tail' or
    'wide-tail'; blocked: the vertex set interior letters were kept out of."""
    base: Word
    labels: tuple[str, ...]
    cells: tuple[int, ...]
    tail: Word
    tail_delta: Optional[tuple[str, ...]]
    case: str
    blocked: tuple[str, ...]

    @property
    def left(self) -> str:
        return self.labels[0]

    @property
    def right(self) -> str:
        return self.labels[-1]

    def side_words(self, i: int) -> tuple[Word, Word]:
        """(lambda, rho) words of cell i: the two length-m alternating paths
        from the fan vertex to the cell's top vertex."""
        s, t = self.labels[i], self.labels[i + 1]
        m = self.cells[i] // 2
        lam = tuple((s, t)[j % 2] for j in range(m))
        rho = tuple((t, s)[j % 2] for j in range(m))
        return lam, rho

    def to_json_obj(self) -> dict:
        return {"base": " ".join(self.base),
                "labels": list(self.labels),
                "cells": list(self.cells),
                "tail": " ".join(self.tail),
                "tail_delta": (None if self.tail_delta is None
                               else list(self.tail_delta)),
                "case": self.case,
                "blocked": list(self.blocked)}


@dataclass(frozen=True)
class FanCheck:
    ok: bool
    failures: tuple[str, ...]

    def to_json_obj(self) -> dict:
        return {"ok": self.ok, "failures": list(self.failures)}


def _lex_least_path(g: CoxeterGraph, s: int, t: int, allowed: int) -> Optional[list[int]]:
    """Lexicographically least shortest path s -> t whose interior vertices
    lie in ``allowed`` (endpoints exempt), or None."""
    usable = allowed | (1 << s) | (1 << t)
    dist = {t: 0}
    frontier = [t]
    while frontier:
        nxt = []
        for u in frontier:
            for v in bits(g.neighbors_mask(u) & usable):
                if v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        frontier = nxt
    if s not in dist:
        return None
    path = [s]
    cur = s
    while cur != t:
        step = min(v for v in bits(g.neighbors_mask(cur) & usable)
                   if dist.get(v, -1) == dist[cur] - 1)
        path.append(step)
        cur = step
    return path


def _blocked_for_tail(g: CoxeterGraph, tail: Word, delta_names: tuple[str, ...],
                      k_mask: int) -> int:
    """C1 | D2 | K' for the long-tail case (see module docstring)."""
    delta = g.mask_of(delta_names)
    tail_mask = g.mask_of(tuple(set(tail)))
    p, q, _kind = wide_decomposition_mask(g, delta)
    c_p, c_q = tail_mask & p, tail_mask & q
    if not is_spherical_mask(g, c_p):
        c1, d2 = c_p, q
    else:
        c1, d2 = c_q, p  # the tail is non-spherical, so one side must be
    return c1 | d2 | (k_mask & ~tail_mask)


def build_fan(g: CoxeterGraph, base: Word, s: str, t: str,
              orbit_cap: int = DEFAULT_ORBIT_CAP) -> FanDiagram:
    """Fan at the endpoint of ``base`` with left letter s and right letter t.

    Raises NonGeodesicError when base, base+s or base+t is not geodesic, and
    ConstructionError (carrying the blocking set) when no legal letter path
    exists -- the graph then is not both one-ended and wide-spherical-avoidant.
    """
    eng = engine_for(g, orbit_cap)
    w = eng.encode(base)
    eng.require_geodesic(w)
    si, ti = g.index(s), g.index(t)
    eng.require_geodesic(w + (si,))
    eng.require_geodesic(w + (ti,))
    k_mask = 0
    for i in eng.ending_letters(w):
        k_mask |= 1 << i
    tail, delta_names = wide_tail(g, base)
    m_gamma = compute_constants(g).m_gamma
    full = g.full_mask()

    attempts: list[tuple[str, int]] = []
    if len(tail) <= m_gamma:
        attempts.append(("short-tail", k_mask))
    else:
        attempts.append(("wide-tail",
                         _blocked_for_tail(g, tail, delta_names, k_mask)))
        # fallback: block the whole containing wide subgraph (always sound;
        # needed only when the join trick leaves an interior letter wide)
        attempts.append(("wide-tail", g.mask_of(delta_names) | k_mask))

    last_blocked = 0
    for case, blocked in attempts:
        last_blocked = blocked
        allowed = full & ~blocked
        if si == ti:
            zs = [z for z in bits(g.neighbors_mask(si) & allowed)]
            if not zs:
                continue
            idx_path = [si, zs[0], si]
        else:
            path = _lex_least_path(g, si, ti, allowed)
            if path is None:
                continue
            idx_path = path if len(path) > 2 else [si, ti, si, ti]
        labels = tuple(g.vertices[i] for i in idx_path)
        cells = tuple(2 * g.m(idx_path[i], idx_path[i + 1])
                      for i in range(len(idx_path) - 1))
        fan = FanDiagram(tuple(base), labels, cells, tail, delta_names,
                         case, g.names_of(blocked))
        if check_fan(g, fan, orbit_cap).ok:
            return fan
    raise ConstructionError(
        f"no fan from {s} to {t}: every connecting path meets the blocked set",
        blocking_set=g.names_of(last_blocked))


def check_fan(g: CoxeterGraph, fan: FanDiagram,
              orbit_cap: int = DEFAULT_ORBIT_CAP) -> FanCheck:
    """Verify the fan axioms: at least three fan edges, dihedral cells
    between adjacent letters, geodesy of the base extended by every fan
    letter and every cell side, and the wide-tail side condition."""
    eng = engine_for(g, orbit_cap)
    fails: list[str] = []
    labels = fan.labels
    if len(labels) < 3:
        fails.append(f"only {len(labels)} fan edges, need at least 3")
    if len(fan.cells) != len(labels) - 1:
        fails.append("cell count does not match fan edge count")
    w = eng.encode(fan.base)
    if not eng.is_geodesic(w):
        fails.append("base word is not geodesic")
        return FanCheck(False, tuple(fails))
    for i in range(len(labels) - 1):
        a, b = g.index(labels[i]), g.index(labels[i + 1])
        if a == b:
            fails.append(f"fan letters {i},{i + 1} coincide")
            continue
        m = g.m(a, b)
        if m is None:
            fails.append(f"fan letters {labels[i]},{labels[i + 1]} not adjacent")
        elif i < len(fan.cells) and fan.cells[i] != 2 * m:
            fails.append(f"cell {i} is a {fan.cells[i]}-gon, expected {2 * m}-gon")
    for i, lab in enumerate(labels):
        if not eng.is_geodesic(w + (g.index(lab),)):
            fails.append(f"base + fan letter {lab} (position {i}) not geodesic")
    for i in range(min(len(fan.cells), len(labels) - 1)):
        lam, rho = fan.side_words(i)
        if not eng.is_geodesic(w + eng.encode(lam)):
            fails.append(f"base + left side of cell {i} not geodesic")
        if not eng.is_geodesic(w + eng.encode(rho)):
            fails.append(f"base + right side of cell {i} not geodesic")
    tail, _ = wide_tail(g, fan.base)
    if tail != fan.tail:
        fails.append("recorded tail differs from the wide tail of the base")
    want_case = "wide-tail" if len(tail) > compute_constants(g).m_gamma \
        else "short-tail"
    if fan.case != want_case:
        fails.append(f"recorded case {fan.case!r}, but the tail length "
                     f"dictates {want_case!r}")
    if len(tail) > compute_constants(g).m_gamma:
        tail_mask = g.mask_of(tuple(set(tail)))
        interior = g.mask_of(tuple(set(labels[1:-1])))
        if not any(tail_mask & ~wm == 0 and interior & wm == 0
                   for wm in wide_masks(g)):
            fails.append("no wide subgraph contains the tail label and "
                         "avoids all interior fan letters")
    return FanCheck(not fails, tuple(fails))
