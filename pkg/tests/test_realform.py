"""Sign-function data: lifts, twists, transforms, identification."""

from fractions import Fraction

import pytest

from cartanclass import _linalg as la
from cartanclass import chevalley as cv
from cartanclass import diagram as dg, involution as iv, realform as rf, rootsys as rs

F = Fraction


def test_eta_from_omega():
    G2 = rs.build("G2")
    eta = rf.eta_from_omega(G2, (1, 0, 0))
    assert eta(G2.root_index((1, -1, 0))) == -1
    assert eta(G2.root_index((0, 1, -1))) == 1
    zero = rf.eta_from_omega(G2, (0, 0, 0))
    assert all(zero(i) == 1 for i in range(len(G2)))
    with pytest.raises(rf.RealFormError):
        rf.eta_from_omega(rs.build("E8"), (1, F(1, 2), 0, 0, 0, 0, 0, 0))


def test_in_hom_theta():
    B2 = rs.build("B", 2)
    anti = iv.antipodal_involution(B2)
    for om in [(1, 0), (0, 1), (1, 1), (2, 1)]:
        assert rf.in_hom_theta(anti, om)
    A3 = rs.build("A", 3)
    th = iv.from_reflections(A3, [(1, -1, 0, 0), (0, 0, 1, -1)])
    om = (1, 0, 1, 0)
    assert rf.in_hom_theta(th, om)
    eta = rf.eta_from_omega(A3, om)
    assert eta(A3.root_index((1, -1, 0, 0))) == -1
    assert eta(A3.root_index((0, 0, 1, -1))) == -1
    # theta(omega) = -omega always qualifies
    om2 = (1, -1, 0, 0)
    assert th.apply_vec(om2) == la.vneg(la.vec(om2))
    assert rf.in_hom_theta(th, om2)
    # an incompatible vector: pairs oddly against alpha - theta(alpha)
    A2 = rs.build("A", 2)
    th_a = iv.from_reflections(A2, [(1, -1, 0)])
    assert not rf.in_hom_theta(th_a, (1, 0, 0))


def test_lift_identity_is_split():
    for fam, rank in [("A", 1), ("B", 2), ("G2", 2)]:
        R = rs.build(fam, rank)
        s = rf.quasi_split_lift(iv.identity_involution(R))
        assert all(v == 1 for v in s.f.values())
        assert rf.identify(s).is_split


def test_lift_b2_antipodal():
    B2 = rs.build("B", 2)
    s = rf.quasi_split_lift(iv.antipodal_involution(B2))
    longs = {B2.root_index(v) for v in [(1, 1), (1, -1), (-1, -1), (-1, 1)]}
    assert longs <= s.noncompact_set
    assert rf.is_quasi_split(s)
    assert rf.identify(s).name == "so(2,3)"


def test_lift_a5_su33():
    A5 = rs.build("A", 5)
    th = iv.from_reflections(A5, [(1, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 0),
                                  (0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0),
                                  (0, 0, 0, 0, 1, 0)])
    s = rf.quasi_split_lift(th)
    assert rf.identify(s).name == "su(3,3)"
    assert rf.signature(s).dim_k == 17
    assert rf.is_quasi_split(s)


def test_lift_is_automorphism_on_dense():
    B2 = rs.build("B", 2)
    s = rf.quasi_split_lift(iv.antipodal_involution(B2))
    A = cv.dense_algebra(s.constants)
    rep = cv.apply_map(A, rf.sigma_dense(A, s))
    assert rep.is_automorphism and rep.is_involution


def test_lift_nontrivial_special_part():
    # lifts over involutions with a special factor (flip types)
    A4 = rs.build("A", 4)
    rows = dict(iv.table2_representatives(A4))
    for lab in ("e0", "e1", "e2"):
        th = rows[lab]
        s = rf.quasi_split_lift(th)
        assert rf.is_quasi_split(s)
    A3 = rs.build("A", 3)
    rows3 = dict(iv.table2_representatives(A3))
    s = rf.quasi_split_lift(rows3["e1"])
    assert rf.identify(s).name in ("su(2,2)",)


def test_twist():
    B2 = rs.build("B", 2)
    anti = iv.antipodal_involution(B2)
    s = rf.quasi_split_lift(anti)
    eta = rf.eta_from_omega(B2, (1, 1))
    t = rf.twist(s, eta)
    assert t.f != s.f
    back = rf.twist(t, eta)
    assert back.f == s.f
    one = rf.eta_from_omega(B2, (0, 0))
    assert rf.twist(s, one).f == s.f
    # swapping which short pair is compact (the two split data)
    shorts = [B2.root_index((1, 0)), B2.root_index((0, 1))]
    for i in shorts:
        assert t.f[i] == -s.f[i]
    longs = [B2.root_index((1, 1)), B2.root_index((1, -1))]
    for i in longs:
        assert t.f[i] == s.f[i]
    assert rf.isomorphic(s, t)
    # incompatible character rejected
    A2 = rs.build("A", 2)
    s_a = rf.quasi_split_lift(iv.from_reflections(A2, [(1, -1, 0)]))
    with pytest.raises(rf.RealFormError):
        rf.twist(s_a, rf.eta_from_omega(A2, (1, 0, 0)))


def test_signature_counts():
    B2 = rs.build("B", 2)
    b = list(B2.canonical_chamber().basis)
    compact = rf.sigma_from_basis_signs(B2, {b[0]: 1, b[1]: 1})
    sig = rf.signature(compact)
    assert sig.dim_p == 0 and sig.dim_k == 2 + 8
    split = rf.quasi_split_lift(iv.identity_involution(B2))
    sig = rf.signature(split)
    assert sig.ellp == 2 and sig.n3 == 0
    assert sig.dim_k + sig.dim_p == 2 + 8


def test_cayley_rank1():
    A1 = rs.build("A", 1)
    b = A1.canonical_basis[0]
    s = rf.sigma_from_basis_signs(A1, {b: -1})
    out = rf.cayley(s, b)
    assert not out.theta.imaginary_set
    assert rf.identify(out).is_split
    with pytest.raises(rf.RealFormError):
        rf.cayley(out, b)


def test_cayley_shrinks_imaginary_and_checks_dense():
    C4 = rs.build("C", 4)
    b = list(C4.canonical_chamber().basis)
    s = rf.sigma_from_basis_signs(C4, {b[0]: -1, b[1]: 1, b[2]: 1, b[3]: 1})
    beta = C4.root_index((1, 1, 0, 0))
    out = rf.cayley(s, beta, verify_dense=True)
    assert len(out.theta.imaginary_set) < len(s.theta.imaginary_set)
    assert out.full
    fast = rf.cayley(s, beta, verify_dense=False)
    assert fast.compact_set == out.compact_set
    assert fast.noncompact_set == out.noncompact_set


def test_reduce_terminates_in_length_steps():
    for fam, rank in [("B", 3), ("C", 3), ("G2", 2)]:
        R = rs.build(fam, rank)
        bs = list(R.canonical_chamber().basis)
        s = rf.sigma_from_basis_signs(R, {b: -1 for b in bs})
        red = rf.reduce_noncompact(s)
        assert not red.noncompact_set
        assert rf.identify(red).name == rf.identify(rf.reduce_noncompact(s, verify_dense=False)).name
        # reduction of a reduced datum is itself
        again = rf.reduce_noncompact(red)
        assert again is red


def test_b2_example_family():
    B2 = rs.build("B", 2)
    b = list(B2.canonical_chamber().basis)
    s_xb = rf.sigma_from_basis_signs(B2, {b[0]: -1, b[1]: 1})   # star at long
    s_xx = rf.sigma_from_basis_signs(B2, {b[0]: -1, b[1]: -1})
    s_bx = rf.sigma_from_basis_signs(B2, {b[0]: 1, b[1]: -1})   # star at short
    assert rf.identify(rf.reduce_noncompact(s_xb)).name == "so(2,3)"
    assert rf.identify(rf.reduce_noncompact(s_xx)).name == "so(2,3)"
    assert rf.isomorphic(s_xb, s_xx)
    red = rf.reduce_noncompact(s_bx)
    assert rf.identify(red).name == "so(1,4)"
    assert not rf.isomorphic(s_bx, s_xb)
    assert not rf.is_quasi_split(s_bx)
    assert rf.is_quasi_split(s_xb) and rf.is_quasi_split(s_xx)
    # compact form: nothing noncompact, not quasi-split
    s_cc = rf.sigma_from_basis_signs(B2, {b[0]: 1, b[1]: 1})
    assert not rf.is_quasi_split(s_cc)
    assert rf.identify(s_cc).is_compact


def test_quasi_split_of_lift_by_construction():
    for fam, rank in [("B", 3), ("C", 3), ("D", 4), ("F4", 4), ("G2", 2)]:
        R = rs.build(fam, rank)
        for lab, th in iv.table2_representatives(R):
            s = rf.quasi_split_lift(th)
            assert rf.is_quasi_split(s), (fam, lab)


def test_isomorphic_equivalence_relation():
    B2 = rs.build("B", 2)
    b = list(B2.canonical_chamber().basis)
    sigmas = [rf.sigma_from_basis_signs(B2, {b[0]: x, b[1]: y})
              for x in (1, -1) for y in (1, -1)]
    for s in sigmas:
        assert rf.isomorphic(s, s)
    for s in sigmas:
        for t in sigmas:
            assert rf.isomorphic(s, t) == rf.isomorphic(t, s)
    for s in sigmas:
        for t in sigmas:
            for u in sigmas:
                if rf.isomorphic(s, t) and rf.isomorphic(t, u):
                    assert rf.isomorphic(s, u)


def test_identify_examples():
    # A3 flip-type lift with signature (1,3)
    A3 = rs.build("A", 3)
    rows = dict(iv.table2_representatives(A3))
    th = rows["e1"]  # one 2-cycle pair + fixed short: su(1,3)-type involution
    s = rf.quasi_split_lift(th)
    names = {rf.identify(rf.reduce_noncompact(rf.twist(s, rf.eta_from_omega(A3, om)),
                                              verify_dense=False)).name
             for om in [(0, 0, 0, 0), (0, 1, 1, 0)] if rf.in_hom_theta(th, om)}
    assert "su(1,3)" in names or "su(2,2)" in names
    # quaternionic data
    th4 = iv.from_reflections(A3, [(1, -1, 0, 0), (0, 0, 1, -1)])
    lift = rf.quasi_split_lift(th4)
    omega = rf.omega_for_set(A3, sorted(lift.theta.imaginary_set & {
        A3.root_index((1, -1, 0, 0)), A3.root_index((0, 0, 1, -1))}))
    tw = rf.twist(lift, rf.eta_from_omega(A3, omega))
    if not tw.noncompact_set:
        assert rf.identify(tw).name == "su*(4)"
    D4 = rs.build("D", 4)
    thd = iv.from_reflections(D4, [(1, -1, 0, 0), (0, 0, 1, -1)])
    liftd = rf.quasi_split_lift(thd)
    omb = rf.omega_for_set(D4, sorted(liftd.noncompact_set & frozenset(
        [D4.root_index((1, -1, 0, 0)), D4.root_index((0, 0, 1, -1))])))
    twd = rf.twist(liftd, rf.eta_from_omega(D4, omb))
    if not twd.noncompact_set:
        got = rf.identify(twd)
        assert "so*(8)" in (got.name,) + got.aliases
    # compact form
    G2 = rs.build("G2")
    cg = rf.sigma_from_basis_signs(G2, {bb: 1 for bb in G2.canonical_basis})
    assert rf.identify(cg).is_compact


def test_cartan_classes():
    A1 = rs.build("A", 1)
    split = rf.quasi_split_lift(iv.identity_involution(A1))
    assert len(rf.cartan_classes(split)) == 2
    compact = rf.sigma_from_basis_signs(A1, {A1.canonical_basis[0]: 1})
    assert len(rf.cartan_classes(compact)) == 1
    B2 = rs.build("B", 2)
    split2 = rf.quasi_split_lift(iv.identity_involution(B2))
    assert len(rf.cartan_classes(split2)) == 4
    # su(2) x nothing: so(1,4): classes = extensions of {e2}-type base
    b = list(B2.canonical_chamber().basis)
    s14 = rf.sigma_from_basis_signs(B2, {b[0]: 1, b[1]: -1})
    assert len(rf.cartan_classes(s14)) == 2


def test_compact_cartan_enumeration_b2():
    B2 = rs.build("B", 2)
    reps = rf.compact_cartan_enumeration(B2)
    names = sorted(rf.identify(rf.reduce_noncompact(s, verify_dense=False)).name
                   for s in reps)
    assert names == ["so(1,4)", "so(2,3)", "so(5)"]
    flags = {rf.identify(rf.reduce_noncompact(s, verify_dense=False)).name:
             rf.is_quasi_split(s) for s in reps}
    assert flags["so(2,3)"] and not flags["so(5)"] and not flags["so(1,4)"]


def test_compact_cartan_all_star_is_quasi_split():
    for fam, rank in [("A", 2), ("B", 3), ("C", 3), ("D", 4), ("G2", 2), ("F4", 4)]:
        R = rs.build(fam, rank)
        s = rf.sigma_from_basis_signs(R, {b: -1 for b in R.canonical_basis})
        assert rf.is_quasi_split(s), fam
        red = rf.reduce_noncompact(s, verify_dense=False)
        assert not red.theta.imaginary_set


def test_f_multiplicative_on_imaginary():
    C4 = rs.build("C", 4)
    b = list(C4.canonical_chamber().basis)
    s = rf.sigma_from_basis_signs(C4, {b[0]: -1, b[1]: 1, b[2]: -1, b[3]: 1})
    R = C4
    for i in s.theta.imaginary_set:
        for j in s.theta.imaginary_set:
            v = la.vadd(R.roots[i], R.roots[j])
            if R.contains_vector(v):
                k = R.root_index(v)
                assert s.f[k] == s.f[i] * s.f[j]


def test_signature_invariant_under_isomorphism():
    B2 = rs.build("B", 2)
    b = list(B2.canonical_chamber().basis)
    s1 = rf.sigma_from_basis_signs(B2, {b[0]: -1, b[1]: 1})
    s2 = rf.sigma_from_basis_signs(B2, {b[0]: -1, b[1]: -1})
    assert rf.isomorphic(s1, s2)
    assert rf.signature(s1).dim_k == rf.signature(s2).dim_k


def test_antiinvolution_json():
    B2 = rs.build("B", 2)
    s = rf.quasi_split_lift(iv.identity_involution(B2))
    data = s.to_json()
    assert data["name"] == "so(2,3)"
    assert data["signature"]["dim_k"] + data["signature"]["dim_p"] == 10
    assert set(data["f_on_simple"].values()) == {1}


def test_hom_constraints_projection_g2():
    G2 = rs.build("G2")
    rows_all = dict(iv.table2_representatives(G2))
    # short reflection: condition eta(long bullet) ... per the catalog rows
    for lab, bullet_forced in [("1", True), ("2", True)]:
        th = rows_all[lab]
        ch = dg.find_s_chamber(th)
        rows, bullet_mask = rf.hom_theta_constraints(th, ch)
        sols = rf.f2_solution_space(rows, len(ch.basis))
        proj = rf.project_span(sols, bullet_mask)
        # exactly one negated simple root, forced to +1: projection trivial
        assert bin(bullet_mask).count("1") == 1
        assert proj == {0}
