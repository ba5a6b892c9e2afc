"""Morse-boundary classification verdicts.

For right-angled groups the four-way trichotomy-plus-empty-case is a theorem
and the verdict is definitive; the driver also extracts the visual splitting
(an amalgam decomposition of the defining graph over a separating subgraph)
whenever the boundary is disconnected for avoidance reasons.  For general
labels the connectedness direction is only proven under extra hypotheses, so
the driver reports which published implication applies, or flags the open
region with the exact hypothesis profile that was checked.

Every verdict is machine-checked before it is returned: witnesses are
re-validated against the graph (decompositions re-derived, splittings tested
for separation, blocking sets re-tested on their pair).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .avoidance import (AvoidanceReport, DEFAULT_VERTEX_CAP, _connected_pair,
                        is_affine_free, is_wide, is_wide_avoidant,
                        is_wide_spherical_avoidant, maximal_wide_masks,
                        wide_decomposition, wide_masks)
from .classification import (EndsVerdict, GroupConstants, compute_constants,
                             ends_verdict, is_spherical_mask)
from .graphs import CoxeterGraph, bits, popcount, submasks


@dataclass(frozen=True)
class Splitting:
    """Amalgam-shaped decomposition of the defining graph: gamma1 and gamma2
    cover the graph, meet exactly in delta, and have no edges across."""
    gamma1: tuple[str, ...]
    gamma2: tuple[str, ...]
    delta: tuple[str, ...]
    via: str    # 'component' | 'star' | 'search'

    def to_json_obj(self) -> dict:
        return {"gamma1": list(self.gamma1), "gamma2": list(self.gamma2),
                "delta": list(self.delta), "via": self.via}


@dataclass(frozen=True)
class ClassificationVerdict:
    case: str
    racg: bool
    constants: GroupConstants
    ends: EndsVerdict
    hypotheses: dict
    witness: dict

    def to_json_obj(self) -> dict:
        return {"case": self.case, "racg": self.racg,
                "constants": self.constants.to_json_obj(),
                "ends": self.ends.to_json_obj(),
                "hypotheses": dict(self.hypotheses),
                "witness": self.witness}


RACG_CASES = ("EmptyBoundary_FiniteOrWide", "Disconnected_MultiEnded",
              "Connected_LocallyConnected", "Disconnected_NotWideAvoidant")
GENERAL_CASES = ("EmptyBoundary", "TheoremApplies_A", "TheoremApplies_C",
                 "Unknown_ConjectureOpen")


def _mask_names(g: CoxeterGraph, mask: int) -> tuple[str, ...]:
    return g.names_of(mask)


def _check_splitting(g: CoxeterGraph, sp: Splitting) -> None:
    m1 = g.mask_of(sp.gamma1)
    m2 = g.mask_of(sp.gamma2)
    md = g.mask_of(sp.delta)
    full = g.full_mask()
    assert m1 | m2 == full, "splitting does not cover the graph"
    assert m1 & m2 == md, "splitting parts do not meet in delta"
    assert m1 != full and m2 != full, "splitting part equals the whole graph"
    for v in bits(m1 & ~md):
        assert g.neighbors_mask(v) & (m2 & ~md) == 0, \
            "edge across the splitting"


def _splitting_from_blocker(g: CoxeterGraph, pi_mask: int,
                            pair: tuple[str, str]) -> Optional[Splitting]:
    """Splitting extraction when a maximal wide subgraph Pi blocks a pair.

    If the complement of Pi is disconnected, one complement component joins
    Pi against the rest.  If it is connected, one of the blocked pair has its
    whole star inside Pi (otherwise a path through the complement component
    would dodge Pi), and the graph splits at that vertex over its link.
    """
    full = g.full_mask()
    rest = full & ~pi_mask
    comps = g.components_within(rest)
    if len(comps) >= 2:
        c = comps[0]
        return Splitting(_mask_names(g, c | pi_mask), _mask_names(g, full & ~c),
                         _mask_names(g, pi_mask), "component")
    if len(comps) == 1:
        for name in pair:
            s = g.index(name)
            if g.neighbors_mask(s) & ~pi_mask == 0 and (pi_mask >> s) & 1:
                star = g.neighbors_mask(s) | (1 << s)
                return Splitting(_mask_names(g, star),
                                 _mask_names(g, full & ~(1 << s)),
                                 _mask_names(g, g.neighbors_mask(s)), "star")
    return None


def _splitting_search(g: CoxeterGraph,
                      cap: int = DEFAULT_VERTEX_CAP) -> Optional[Splitting]:
    """Deterministic fallback: least non-spherical subset of a wide subgraph
    whose removal disconnects the graph."""
    full = g.full_mask()
    seen: set[int] = set()
    for wm in wide_masks(g, cap):
        for delta in submasks(wm):
            if delta in seen or delta == 0:
                continue
            seen.add(delta)
            if is_spherical_mask(g, delta):
                continue
            comps = g.components_within(full & ~delta)
            if len(comps) >= 2:
                c = comps[0]
                return Splitting(_mask_names(g, c | delta),
                                 _mask_names(g, full & ~c),
                                 _mask_names(g, delta), "search")
    return None


def _verify_blocking(g: CoxeterGraph, report: AvoidanceReport) -> None:
    """Re-test a failed avoidance witness on its pair."""
    assert report.blocking_set is not None and report.pair is not None
    blocked = g.mask_of(report.blocking_set)
    s = g.index(report.pair[0])
    t = g.index(report.pair[1])
    allowed = (g.full_mask() & ~blocked) | (1 << s) | (1 << t)
    assert not _connected_pair(g, s, t, allowed), \
        "stored blocking witness does not block its pair"


def classify(g: CoxeterGraph,
             cap: int = DEFAULT_VERTEX_CAP) -> ClassificationVerdict:
    """Classify the Morse boundary of the Coxeter group of ``g``."""
    constants = compute_constants(g, cap)
    ends = ends_verdict(g, cap)
    finite = ends.kind == "FiniteGroup"
    wide = is_wide(g)
    wa = is_wide_avoidant(g, cap)
    wsa = is_wide_spherical_avoidant(g, cap)
    affine_free = is_affine_free(g, cap)
    hypotheses = {
        "finite": finite,
        "wide": wide,
        "one_ended": ends.kind == "OneEnded",
        "affine_free": affine_free,
        "wide_avoidant": wa.holds,
        "wide_spherical_avoidant": wsa.holds,
    }
    racg = g.is_racg()
    common = dict(racg=racg, constants=constants, ends=ends,
                  hypotheses=hypotheses)

    if racg:
        if finite or wide:
            dec = wide_decomposition(g, g.vertices)
            witness = {"finite": finite,
                       "wide_decomposition":
                           None if dec is None else dec.to_json_obj()}
            assert finite or dec is not None
            return ClassificationVerdict("EmptyBoundary_FiniteOrWide",
                                         witness=witness, **common)
        if ends.kind != "OneEnded":
            return ClassificationVerdict(
                "Disconnected_MultiEnded",
                witness={"ends": ends.to_json_obj()}, **common)
        if wa.holds:
            witness = {"maximal_wide":
                       [list(_mask_names(g, wm))
                        for wm in maximal_wide_masks(g, cap)],
                       "wide_spherical_avoidant": wsa.holds}
            return ClassificationVerdict("Connected_LocallyConnected",
                                         witness=witness, **common)
        _verify_blocking(g, wa)
        pi_mask = g.mask_of(wa.blocking_set)
        sp = _splitting_from_blocker(g, pi_mask, wa.pair)
        if sp is None:
            sp = _splitting_search(g, cap)
        witness = {"avoidance": wa.to_json_obj(),
                   "splitting": None if sp is None else sp.to_json_obj()}
        if sp is not None:
            _check_splitting(g, sp)
            assert not is_spherical_mask(g, g.mask_of(sp.delta)), \
                "one-ended graph split over a spherical subgraph"
        return ClassificationVerdict("Disconnected_NotWideAvoidant",
                                     witness=witness, **common)

    # general labels
    if finite or wide:
        dec = wide_decomposition(g, g.vertices)
        witness = {"finite": finite,
                   "wide_decomposition":
                       None if dec is None else dec.to_json_obj()}
        assert finite or dec is not None
        return ClassificationVerdict("EmptyBoundary", witness=witness,
                                     **common)
    if not wa.holds:
        _verify_blocking(g, wa)
        pi_mask = g.mask_of(wa.blocking_set)
        sp = _splitting_from_blocker(g, pi_mask, wa.pair)
        if sp is None:
            sp = _splitting_search(g, cap)
        if sp is not None:
            _check_splitting(g, sp)
        witness = {"avoidance": wa.to_json_obj(),
                   "splitting": None if sp is None else sp.to_json_obj()}
        return ClassificationVerdict("TheoremApplies_A", witness=witness,
                                     **common)
    if affine_free and ends.kind == "OneEnded" and wsa.holds:
        witness = {"maximal_wide":
                   [list(_mask_names(g, wm))
                    for wm in maximal_wide_masks(g, cap)]}
        return ClassificationVerdict("TheoremApplies_C", witness=witness,
                                     **common)
    missing = [k for k in ("one_ended", "affine_free",
                           "wide_spherical_avoidant") if not hypotheses[k]]
    witness = {"missing_hypotheses": missing,
               "wsa": wsa.to_json_obj()}
    return ClassificationVerdict("Unknown_ConjectureOpen", witness=witness,
                                 **common)
