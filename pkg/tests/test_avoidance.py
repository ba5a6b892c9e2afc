"""Wide subgraphs, special joins, and the two avoidance deciders.

Every decision is cross-checked against the brute-force oracle, which
enumerates all ordered (P, Q) partitions / all special joins with no
maximality pruning and decides factor types by cosine-matrix eigenvalues.
"""

import random

import pytest

from coxwide.avoidance import (enumerate_special_joins, enumerate_wide_subgraphs,
                               is_affine_free, is_wide, is_wide_avoidant,
                               is_wide_spherical_avoidant, label_in_wide_subgraph,
                               maximal_wide_masks, wide_decomposition,
                               wide_masks)
from coxwide.errors import SizeCapError

import oracles as O
from conftest import (CORPUS_MAKERS, graph_from_labels, racg,
                      random_label_matrix)


def test_wide_decomposition_frozen(c4, c5, aff_tri, g6, wide8):
    d = wide_decomposition(c4, c4.vertices)
    assert d.kind == "TwoInfiniteFactors"
    assert set(d.p) | set(d.q) == set(c4.vertices)
    assert wide_decomposition(c5, c5.vertices) is None
    t = wide_decomposition(aff_tri, aff_tri.vertices)
    assert t.kind == "AffineRank3Plus" and set(t.p) == {"a", "b", "c"}
    assert wide_decomposition(g6, ("s1", "s2", "s3", "s4")) is not None
    assert wide_decomposition(wide8, wide8.vertices) is not None


def test_is_wide_corpus(corpus):
    wide_names = {"C4", "WIDE8", "AFF_TRI"}
    for name, g in corpus.items():
        assert is_wide(g) == (name in wide_names), name


def test_wide_masks_against_brute_force(corpus):
    for name, g in corpus.items():
        if g.n > 6:
            continue
        lab = O.labels_from_graph(g)
        assert set(wide_masks(g)) == set(O.brute_wide_masks(lab)), name


def test_wide_masks_random_against_brute_force():
    rng = random.Random(77)
    for _ in range(150):
        n = rng.randint(2, 5)
        lab = random_label_matrix(rng, n)
        g = graph_from_labels(lab)
        assert set(wide_masks(g)) == set(O.brute_wide_masks(lab)), lab


def test_maximal_wide_masks(g6, o8):
    for g in (g6, o8):
        all_w = set(wide_masks(g))
        mx = set(maximal_wide_masks(g))
        assert mx <= all_w
        for m in all_w:
            assert any(m & ~t == 0 for t in mx)
        for m in mx:
            assert not any(m != t and m & ~t == 0 for t in mx)
    assert maximal_wide_masks(o8) == (
        o8.mask_of(["s1", "s2", "s3", "s4"]), o8.mask_of(["t1", "t2", "t3", "t4"]))


def test_enumerate_wide_subgraphs(c4):
    subs = enumerate_wide_subgraphs(c4)
    assert ("s1", "s2", "s3", "s4") in subs
    # every returned vertex set admits a wide decomposition
    assert all(wide_decomposition(c4, names) is not None for names in subs)


def test_label_in_wide_subgraph(c4, c5):
    hit = label_in_wide_subgraph(c4, c4.mask_of(["s1", "s2"]))
    assert hit is not None and c4.mask_of(["s1", "s2"]) & ~hit == 0
    assert label_in_wide_subgraph(c5, c5.mask_of(["s1", "s2"])) is None


def test_avoidance_frozen(corpus):
    expected_wa = {"C4": False, "C5": True, "C6": True, "P3": True,
                   "G6": False, "O8": True, "WIDE8": False, "AFF_TRI": True,
                   "A4": True, "INF_PAIR": True}
    for name, wa in expected_wa.items():
        rep = is_wide_avoidant(corpus[name])
        assert rep.holds == wa, name
        reps = is_wide_spherical_avoidant(corpus[name])
        # on this corpus the two notions agree graph by graph
        assert reps.holds == wa, name


def test_g6_wa_witness_validated(g6):
    rep = is_wide_avoidant(g6)
    assert not rep.holds
    assert rep.blocking_set is not None and rep.pair is not None
    # the reported blocking set really disconnects the reported pair
    lab = O.labels_from_graph(g6)
    blocked = g6.mask_of(rep.blocking_set)
    s, t = (g6.index(x) for x in rep.pair)
    assert not O._path_avoiding(lab, s, t, blocked)
    # and it contains a wide subgraph of the defining graph
    assert any(wm & ~blocked == 0 for wm in wide_masks(g6))


def test_wsa_witness_join_validated(g6):
    rep = is_wide_spherical_avoidant(g6)
    assert not rep.holds and rep.join is not None
    lab = O.labels_from_graph(g6)
    p = g6.mask_of(rep.join.p)
    q = g6.mask_of(rep.join.q)
    k = g6.mask_of(rep.join.k)
    assert O.is_spherical_subset(lab, k)
    decs = O.brute_wide_decompositions(lab, p | q)
    assert any(dp == p and dq == q for dp, dq, _ in decs)
    blocked = p | q | k
    s, t = (g6.index(x) for x in rep.pair)
    assert not O._path_avoiding(lab, s, t, blocked)


def test_avoidance_random_against_brute_force():
    rng = random.Random(101)
    checked_wa = checked_wsa = 0
    for _ in range(120):
        n = rng.randint(2, 5)
        lab = random_label_matrix(rng, n)
        g = graph_from_labels(lab)
        lib_wa = is_wide_avoidant(g).holds
        brute_wa, _ = O.brute_is_wide_avoidant(lab)
        assert lib_wa == brute_wa, lab
        checked_wa += 1
        lib_wsa = is_wide_spherical_avoidant(g).holds
        brute_wsa, _ = O.brute_is_wide_spherical_avoidant(lab)
        assert lib_wsa == brute_wsa, lab
        checked_wsa += 1
    assert checked_wa == checked_wsa == 120


def test_wsa_implies_wa_on_random_graphs():
    """Avoiding every special join includes the K-empty joins, so
    wide-spherical-avoidance can never hold where wide-avoidance fails."""
    rng = random.Random(202)
    for _ in range(150):
        n = rng.randint(2, 5)
        lab = random_label_matrix(rng, n)
        g = graph_from_labels(lab)
        if is_wide_spherical_avoidant(g).holds:
            assert is_wide_avoidant(g).holds, lab


def test_special_joins(g6):
    joins = enumerate_special_joins(g6)
    assert joins
    lab = O.labels_from_graph(g6)
    for j in joins:
        p, q, k = (g6.mask_of(x) for x in (j.p, j.q, j.k))
        assert O.is_spherical_subset(lab, k)
        decs = O.brute_wide_decompositions(lab, p | q)
        assert any(dp == p and dq == q for dp, dq, _ in decs)
        # K consists of common neighbors of P, outside the wide set
        assert k & ~O._common_neighbors_brute(lab, p) == 0
        assert k & (p | q) == 0
    maximal = enumerate_special_joins(g6, maximal_only=True)
    assert maximal and len(maximal) <= len(joins)


def test_affine_free(corpus):
    expected = {"C4": True, "C5": True, "G6": True, "O8": True,
                "AFF_TRI": False, "A4": True, "H3": True, "INF_PAIR": True}
    for name, want in expected.items():
        assert is_affine_free(corpus[name]) == want, name
    # a graph containing an affine triangle plus a far vertex is not affine-free
    from coxwide import CoxeterGraph
    g = CoxeterGraph(["a", "b", "c", "z"],
                     [("a", "b", 3), ("b", "c", 3), ("a", "c", 3)])
    assert not is_affine_free(g)


def test_avoidance_size_cap():
    g = racg([f"v{i}" for i in range(25)], [])
    with pytest.raises(SizeCapError):
        is_wide_avoidant(g, cap=20)
