"""Involutions: constructors, decomposition, classification, the catalog."""

from fractions import Fraction

import pytest

from cartanclass import involution as iv, rootsys as rs, weylgroup as wg
from cartanclass import _linalg as la

F = Fraction


def test_identity_and_antipodal():
    B2 = rs.build("B", 2)
    i = iv.identity_involution(B2)
    assert i.real_set == frozenset(range(len(B2)))
    a = iv.antipodal_involution(B2)
    assert a.imaginary_set == frozenset(range(len(B2)))
    assert a.length == 2
    assert a.in_weyl


def test_involution_from_images_b4_example():
    B4 = rs.build("B", 4)
    ch = B4.canonical_chamber()
    basis = [B4.roots[b] for b in ch.basis]
    theta = iv.from_reflections(B4, [(1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, -1)])
    images = [theta.apply_vec(v) for v in basis]
    rebuilt = iv.involution_from_images(B4, images)
    assert rebuilt.perm == theta.perm
    # the computed images on the canonical basis, in basis coordinates
    got = [ch.coords(B4.root_index(v)) for v in images]
    assert got == [(-1, -1, -1, -2), (0, 0, 1, 2), (0, -1, -2, -2), (0, 1, 1, 1)]


def test_involution_from_images_rejects():
    A2 = rs.build("A", 2)
    with pytest.raises(iv.InvolutionError):
        # a rotation: images form a 3-cycle on the basis, not an involution
        iv.involution_from_images(A2, [(0, 1, -1), (-1, 0, 1)])
    with pytest.raises(iv.InvolutionError):
        iv.involution_from_images(A2, [(2, -2, 0), (0, 1, -1)])


def test_partition_orthogonality():
    # negated roots are orthogonal to fixed roots
    for fam, rank, refl in [("B", 4, [(1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, -1)]),
                            ("F4", 4, [(1, 0, 0, 0), (0, 1, -1, 0)])]:
        R = rs.build(fam, rank)
        th = iv.from_reflections(R, refl)
        for i in th.imaginary_set:
            for j in th.real_set:
                assert R.dot(i, j) == 0


def test_commutation_with_reflections():
    B2 = rs.build("B", 2)
    th = iv.from_reflections(B2, [(1, 0)])
    for b in range(len(B2)):
        s = B2.reflection_perm(b)
        commutes = wg.perm_mul(th.perm, s) == wg.perm_mul(s, th.perm)
        assert commutes == (b in th.real_set or b in th.imaginary_set)


def test_strongly_orthogonalize():
    B2 = rs.build("B", 2)
    got = iv.strongly_orthogonalize(B2, [B2.root_index((1, 0)), B2.root_index((0, 1))])
    assert {B2.roots[i] for i in got} == {(F(1), F(1)), (F(1), F(-1))}
    # already strongly orthogonal sets come back unchanged as sets
    D4 = rs.build("D", 4)
    s = [D4.root_index((1, -1, 0, 0)), D4.root_index((0, 0, 1, -1))]
    assert set(iv.strongly_orthogonalize(D4, s)) == set(s)
    F4 = rs.build("F4")
    quad = [F4.root_index(v) for v in [(1, 0, 0, 0), (0, 1, 0, 0),
                                       (0, 0, 1, 0), (0, 0, 0, 1)]]
    got = iv.strongly_orthogonalize(F4, quad)
    got_pm = {frozenset((F4.roots[i], la.vneg(F4.roots[i]))) for i in got}
    want = [(1, 1, 0, 0), (1, -1, 0, 0), (0, 0, 1, 1), (0, 0, 1, -1)]
    want_pm = {frozenset((la.vec(v), la.vneg(la.vec(v)))) for v in want}
    assert got_pm == want_pm
    assert la.rank([F4.roots[i] for i in got]) == 4
    with pytest.raises(iv.InvolutionError):
        iv.strongly_orthogonalize(B2, [B2.root_index((1, 0)), B2.root_index((1, 1))])


def test_decompose():
    B2 = rs.build("B", 2)
    th = iv.antipodal_involution(B2)
    eps, b = iv.decompose(th)
    assert eps.is_special() and eps.perm == wg.identity_perm(len(B2))
    assert {B2.roots[i] for i in b} == {(F(1), F(1)), (F(1), F(-1))}
    # identity decomposes trivially
    eps2, b2 = iv.decompose(iv.identity_involution(B2))
    assert b2 == () and eps2.perm == wg.identity_perm(len(B2))
    # A2 antipodal: nontrivial special part
    A2 = rs.build("A", 2)
    a = iv.antipodal_involution(A2)
    eps3, b3 = iv.decompose(a)
    assert len(b3) == a.length == 1
    assert not eps3.is_special() is False  # eps3 special
    assert wg.perm_mul(eps3.perm, A2.reflection_perm(b3[0])) == a.perm


def test_decompose_lengths_match_clique():
    # the antipodal length is the size of a maximal orthogonal root set
    for fam, rank, length in [("F4", 4, 4), ("E6", 6, 4), ("B", 4, 4),
                              ("A", 3, 2), ("G2", 2, 2)]:
        R = rs.build(fam, rank)
        th = iv.antipodal_involution(R)
        eps, b = iv.decompose(th)
        assert len(b) == th.length == length
        assert R.strongly_orthogonal_set(b)
        assert eps.is_special()


SPECIAL_COUNTS = [("A", 1, 1), ("A", 3, 2), ("A", 4, 2), ("B", 3, 1), ("C", 4, 1),
                  ("D", 4, 2), ("D", 5, 2), ("E6", 6, 2), ("E7", 7, 1),
                  ("E8", 8, 1), ("F4", 4, 1), ("G2", 2, 1)]


@pytest.mark.parametrize("fam,rank,count", SPECIAL_COUNTS)
def test_special_census(fam, rank, count):
    R = rs.build(fam, rank)
    got = iv.special_involutions(R)
    assert len(got) == count
    for eps in got:
        assert eps.is_special()


def test_special_table_entries():
    # the A-table map e_i -> -e_{l+2-i} acts on roots e_i - e_j accordingly
    A3 = rs.build("A", 3)
    eps = iv.special_involutions(A3)[1]
    for i in range(1, 5):
        for j in range(1, 5):
            if i == j:
                continue
            src = A3.root_index(la.vsub(la.unit_vec(4, i - 1), la.unit_vec(4, j - 1)))
            dst = A3.root_index(la.vsub(la.unit_vec(4, 5 - j - 1), la.unit_vec(4, 5 - i - 1)))
            assert eps(src) == dst
    D5 = rs.build("D", 5)
    eps = iv.special_involutions(D5)[1]
    assert eps.apply_vec(la.unit_vec(5, 4)) == la.vneg(la.unit_vec(5, 4))
    assert eps.apply_vec(la.unit_vec(5, 0)) == la.unit_vec(5, 0)


def test_classify_sos_examples():
    F4 = rs.build("F4")
    s = [F4.root_index(v) for v in [(1, 1, 0, 0), (1, -1, 0, 0), (0, 0, 0, 1)]]
    lab = iv.classify_sos(F4, s)
    assert lab.label == (2, 1)
    B4 = rs.build("B", 4)
    s = [B4.root_index(v) for v in [(1, -1, 0, 0), (0, 0, 1, 1), (0, 0, 1, -1)]]
    assert iv.classify_sos(B4, s).label == (1, 2)
    C4 = rs.build("C", 4)
    s = [C4.root_index(v) for v in [(1, -1, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)]]
    assert iv.classify_sos(C4, s).label == (1, 2)
    D4 = rs.build("D", 4)
    s = [D4.root_index(v) for v in [(1, -1, 0, 0), (0, 0, 1, -1)]]
    assert iv.classify_sos(D4, s).label == (2, 0)
    s = [D4.root_index(v) for v in [(0, 0, 1, 1), (0, 0, 1, -1)]]
    assert iv.classify_sos(D4, s).label == (0, 1)


def test_classify_sos_invariant_under_weyl():
    import random
    rng = random.Random(11)
    for fam, rank in [("B", 4), ("C", 4), ("F4", 4)]:
        R = rs.build(fam, rank)
        W = wg.weyl_group(R)
        gens = W.generators
        reps = iv.sos_classes_by_size(R)
        for lab, (S, _) in reps.items():
            for _ in range(20):
                g = wg.identity_perm(len(R.roots))
                for _ in range(6):
                    g = wg.perm_mul(g, gens[rng.randrange(len(gens))])
                moved = [g[x] for x in S]
                assert iv.classify_sos(R, moved) == lab


MAX_SOS = [("A", 4, 1), ("A", 5, 1), ("B", 4, 2), ("B", 5, 1), ("B", 6, 2),
           ("C", 4, 2), ("C", 5, 2), ("C", 6, 3), ("D", 4, 1), ("D", 6, 1),
           ("E6", 6, 1), ("F4", 4, 2), ("G2", 2, 1)]


@pytest.mark.parametrize("fam,rank,count", MAX_SOS)
def test_max_sos_class_counts(fam, rank, count):
    R = rs.build(fam, rank)
    assert iv.max_sos_class_count(fam, rank) == count
    mx = iv.maximal_sos_classes(R)
    if fam == "C":
        got = sum(1 for lab, _ in mx if lab.label[0] >= 1)
    else:
        got = len(mx)
    assert got == count


def test_e8_sos_dichotomy():
    E8 = rs.build("E8")
    reps = iv.sos_classes_by_size(E8)
    by_size = {}
    for lab, (S, _) in reps.items():
        by_size.setdefault(len(S), []).append(lab)
    for k in range(1, 9):
        assert len(by_size[k]) == (2 if k == 4 else 1), k
    flags = sorted(lab.label[1] for lab in by_size[4])
    assert flags == [False, True]


def test_e7_sos_dichotomy():
    E7 = rs.build("E7", realization="prime")
    reps = iv.sos_classes_by_size(E7)
    by_size = {}
    for lab, (S, _) in reps.items():
        by_size.setdefault(len(S), []).append(lab)
    for k in range(1, 8):
        assert len(by_size[k]) == (2 if k in (3, 4) else 1), k


TABLE2_COUNTS = [("A", 2, 3), ("A", 3, 5), ("B", 2, 3), ("B", 3, 5), ("C", 3, 5),
                 ("D", 4, 8), ("F4", 4, 7), ("G2", 2, 3), ("E7", 7, 9), ("E8", 8, 9)]


@pytest.mark.parametrize("fam,rank,count", TABLE2_COUNTS)
def test_table2_instantiates(fam, rank, count):
    R = rs.build(fam, rank)
    rows = iv.table2_representatives(R)
    assert len(rows) == count
    for lab, rep in rows:
        assert wg.perm_mul(rep.perm, rep.perm) == wg.identity_perm(len(R.roots))


def test_table2_weyl_membership():
    A3 = rs.build("A", 3)
    rows = dict(iv.table2_representatives(A3))
    assert rows["w1"].in_weyl and rows["w2"].in_weyl
    assert not rows["e1"].in_weyl
    D5 = rs.build("D", 5)
    rows = dict(iv.table2_representatives(D5))
    assert rows["r1,2"].in_weyl       # even flip count
    assert not rows["r1,1"].in_weyl   # odd flip count
    E6p = rs.build("E6", realization="prime")
    for lab, rep in iv.table2_representatives(E6p):
        assert not rep.in_weyl
    E6 = rs.build("E6")
    for lab, rep in iv.table2_representatives(E6):
        assert rep.in_weyl


def test_table2_pairwise_inequivalent_small():
    for fam, rank in [("A", 3), ("B", 3), ("G2", 2), ("C", 3)]:
        R = rs.build(fam, rank)
        rows = iv.table2_representatives(R)
        for a in range(len(rows)):
            for b in range(a + 1, len(rows)):
                assert not iv.equivalent_involutions(rows[a][1], rows[b][1])


def test_example_233_classes():
    B4 = rs.build("B", 4)
    tp = iv.from_reflections(B4, [(1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, -1)])
    tpp = iv.from_reflections(B4, [(1, 0, 0, -1), (0, 0, 1, 0)])
    tppp = iv.from_reflections(B4, [(1, 0, 1, 0), (0, 1, 0, -1)])
    assert iv.class_label(tp) == "r1,2"
    assert iv.class_label(tpp) == "r1,1"
    assert iv.class_label(tppp) == "r2,0"
    assert not iv.equivalent_involutions(tp, tpp)
    assert not iv.equivalent_involutions(tp, tppp)
    assert not iv.equivalent_involutions(tpp, tppp)


def test_closed_subsystems():
    # roots in the span of the fixed (negated) set belong to it
    B4 = rs.build("B", 4)
    th = iv.from_reflections(B4, [(1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, -1)])
    for part in (th.real_set, th.imaginary_set):
        span = [B4.roots[i] for i in part]
        if not span:
            continue
        for i in range(len(B4)):
            if la.solve(span, B4.roots[i]) is not None:
                assert i in part


def test_complex_type_involution():
    spec = rs.RootSystemSpec(factors=(rs.RootSystemSpec("A", 2),
                                      rs.RootSystemSpec("A", 2)))
    U = rs.build(spec)
    swap = iv.complex_type_involution(U)
    assert swap.complex_set == frozenset(range(len(U)))
    assert wg.perm_mul(swap.perm, swap.perm) == wg.identity_perm(len(U))
    assert swap.length == 0
    # swap preserves the product positive system built from both factors
    ch = U.canonical_chamber()
    assert all(swap(i) in ch.positive_set for i in ch.positive_set)
    # mismatched factors are rejected
    bad = rs.build(rs.RootSystemSpec(factors=(rs.RootSystemSpec("A", 1),
                                              rs.RootSystemSpec("B", 2))))
    with pytest.raises(iv.InvolutionError):
        iv.complex_type_involution(bad)


def test_involution_json():
    B2 = rs.build("B", 2)
    th = iv.antipodal_involution(B2)
    data = th.to_json()
    assert data["partition"] == {"real": 0, "imaginary": 8, "complex": 0}
    assert data["length"] == 2 and data["in_weyl"] is True
