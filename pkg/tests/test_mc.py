"""Maurer-Cartan elements, gauge groupoids, obstructions, pushforward.

The golden algebras here are all DG, so every engine value can be
recomputed from the two-term twisted differential d(x) + bx - (-1)^|x| xa
and the two-term residual; morphism sets and components are then
cross-checked by exhaustive search over finite prime fields.
"""

from itertools import product as iter_product

import pytest

from barmc.ainfinity import (
    AInfAlgebra,
    AInfMorphism,
    StructureMaps,
    identity_morphism,
    tensor_label,
)
from barmc.artin import square_zero, truncated_polynomial
from barmc.errors import HypothesisNotMet, MathCheckFailure
from barmc.examples import golden_dg_pair, kpoints, njac, xy
from barmc.linalg import GradedSpace, vec_add, vec_clean, vec_eq, vec_sub
from barmc.mc import (
    DeformationSetup,
    HomComplex,
    HomSet,
    MCGroupoid,
    Tower,
    enumerate_mc,
    hom_groupoid,
    invariance_check,
    lift_mc,
    mc_category_ops,
    mc_residual,
    obstruction_o0,
    obstruction_o1,
    obstruction_o2,
    pi0,
    pushforward_mc,
    pushforward_morphism,
)
from barmc.scalars import Field

Q = Field.rationals()
F2 = Field.prime(2)
F3 = Field.prime(3)


# ---------------------------------------------------------------------------
# oracles: everything recomputed from the raw tensor-algebra operations


def dg_twisted_oracle(setup, alpha, beta, x):
    """d(x) + beta x - (-1)^|x| x alpha, one homogeneous piece at a time."""
    T = setup.T
    field = setup.field
    out = {}
    for deg, part in T.space.homogeneous_parts(x).items():
        vec_add(out, T.eval_m_vectors([part]))
        vec_add(out, T.eval_m_vectors([beta, part]))
        vec_add(out, T.eval_m_vectors([part, alpha]), -field.sign(deg))
    return vec_clean(out)


def dg_residual_oracle(setup, alpha):
    """-d(alpha) - alpha alpha, the arity <= 2 residual."""
    T = setup.T
    out = {}
    vec_add(out, T.eval_m_vectors([alpha]), -setup.field.one)
    vec_add(out, T.eval_m_vectors([alpha, alpha]), -setup.field.one)
    return vec_clean(out)


def all_vectors(field, labels):
    """Every vector supported on the given labels, in a fixed order."""
    for coeffs in iter_product(range(field.p), repeat=len(labels)):
        yield vec_clean({l: field(c) for l, c in zip(labels, coeffs)})


def brute_mc_set(setup):
    labels = setup.ideal_labels_of_degree(1)
    return [v for v in all_vectors(setup.field, labels)
            if not dg_residual_oracle(setup, v)]


def brute_morphism_vectors(setup, alpha, beta):
    """All g = 1 + u solving the twisted equation, by exhaustion."""
    labels = setup.ideal_labels_of_degree(0)
    found = []
    for u in all_vectors(setup.field, labels):
        g = dict(setup.one_vec)
        vec_add(g, u)
        if not dg_twisted_oracle(setup, alpha, beta, g):
            found.append(vec_clean(g))
    return found


def brute_gauge_translations(setup, alpha, beta):
    """The set of twisted differentials of degree -1 elements."""
    labels = setup.ideal_labels_of_degree(-1)
    out = []
    seen = set()
    for h in all_vectors(setup.field, labels):
        t = dg_twisted_oracle(setup, alpha, beta, h)
        key = tuple(sorted((repr(l), str(c)) for l, c in t.items()))
        if key not in seen:
            seen.add(key)
            out.append(t)
    return out


def brute_orbit_count(setup, alpha, beta):
    """Solutions modulo translation, counted by coset size."""
    sols = brute_morphism_vectors(setup, alpha, beta)
    if not sols:
        return 0
    translations = brute_gauge_translations(setup, alpha, beta)
    assert len(sols) % len(translations) == 0
    return len(sols) // len(translations)


def brute_components(setup, elements):
    """Connected components under existence of a brute-force morphism."""
    classes = []
    for alpha in elements:
        for cls in classes:
            if brute_morphism_vectors(setup, cls[0], alpha):
                cls.append(alpha)
                break
        else:
            classes.append([alpha])
    return classes


def brute_lift_exists(A, tower, alpha_bar):
    """Any eta in (A x I)^1 with residual(section + eta) = 0."""
    setup = DeformationSetup(A, tower.R)
    base = tower.section(alpha_bar)
    radical = set(tower.R.ideal_labels)
    kernel_labels = set()
    for row in tower.kernel_rows:
        kernel_labels |= set(row)
    labels = [l for l in setup.ideal
              if l[1] in kernel_labels and setup.T.deg(l) == 1]
    for eta in all_vectors(setup.field, labels):
        cand = dict(base)
        vec_add(cand, eta)
        if not dg_residual_oracle(setup, vec_clean(cand)):
            return True
    return False


def brute_morphism_lift_exists(A, tower, alpha1, alpha2, f_bar):
    """Any h in (A x I)^0 with the corrected section a morphism upstairs."""
    setup = DeformationSetup(A, tower.R)
    base = tower.section(f_bar)
    kernel_labels = set()
    for row in tower.kernel_rows:
        kernel_labels |= set(row)
    labels = [l for l in setup.ideal
              if l[1] in kernel_labels and setup.T.deg(l) == 0]
    for h in all_vectors(setup.field, labels):
        cand = dict(base)
        vec_add(cand, h)
        if not dg_twisted_oracle(setup, alpha1, alpha2, vec_clean(cand)):
            return True
    return False


# ---------------------------------------------------------------------------
# fixtures


def pq_algebra(field):
    """Unit, p in degree 0, q = d(p) in degree 1, ideal products zero.

    The degree-0 generator makes the gauge action move Maurer-Cartan
    elements around, so distinct elements become isomorphic.
    """
    space = GradedSpace([("1", 0), ("p", 0), ("q", 1)])
    ops = StructureMaps()
    one = field.one
    for l in space.labels:
        ops.set(2, ("1", l), {l: one})
        if l != "1":
            ops.set(2, (l, "1"), {l: one})
    ops.set(1, ("p",), {"q": one})
    return AInfAlgebra(space, field, ops, arity_bound=2,
                       unit="1", aug_label="1")


def negative_base(field):
    """Square-zero base with e in degree 0 and f in degree -1, d(f) = e."""
    return square_zero(field, [("e", 0), ("f", -1)], d={"f": {"e": 1}})


def cone_inclusion(A, C):
    """a -> a x 1 into a cone-tensored algebra; a strict quasi-isomorphism."""
    comps = StructureMaps()
    for l in A.space.labels:
        comps.set(1, (l,), {tensor_label(l, "1"): A.field.one})
    return AInfMorphism(A, C, comps, arity_bound=1, strict_unital=True)


# ---------------------------------------------------------------------------
# residual and enumeration


def test_residual_of_x_t_is_minus_y_t2():
    A = xy(Q)
    R = truncated_polynomial(Q, 3)
    res = mc_residual(A, R, {("x", "t"): Q.one})
    assert res == {("y", "t2"): -Q.one}


def test_residual_vanishes_at_shallower_truncation():
    A = xy(F2)
    R = truncated_polynomial(F2, 2)
    assert mc_residual(A, R, {("x", "t"): F2.one}) == {}


def test_residual_matches_two_term_oracle():
    for field in (F2, F3):
        for A, R in ((xy(field), truncated_polynomial(field, 3)),
                     (golden_dg_pair(field)[1], truncated_polynomial(field, 3)),
                     (xy(field), negative_base(field))):
            setup = DeformationSetup(A, R)
            labels = setup.ideal_labels_of_degree(1)
            for alpha in all_vectors(field, labels):
                assert setup.mc_residual(alpha) == \
                    dg_residual_oracle(setup, alpha)


def test_residual_rejects_wrong_degree_and_support():
    A = xy(F2)
    R = truncated_polynomial(F2, 3)
    setup = DeformationSetup(A, R)
    with pytest.raises(ValueError):
        setup.mc_residual({("y", "t"): F2.one})
    with pytest.raises(ValueError):
        setup.mc_residual({("x", "1"): F2.one})


def test_enumerate_xy_over_t3():
    found = enumerate_mc(xy(F2), truncated_polynomial(F2, 3))
    assert found == [{}, {("x", "t2"): F2.one}]


def test_enumerate_matches_brute_force():
    for field in (F2, F3):
        for A in (xy(field), njac(field, 1), kpoints(field, 2)):
            setup = DeformationSetup(A, truncated_polynomial(field, 3))
            assert setup.enumerate_mc() == brute_mc_set(setup)


def test_enumerate_refuses_rationals():
    with pytest.raises(HypothesisNotMet):
        enumerate_mc(xy(Q), truncated_polynomial(Q, 3))


def test_enumerate_refuses_past_cap():
    with pytest.raises(HypothesisNotMet):
        enumerate_mc(kpoints(F2, 2), truncated_polynomial(F2, 3), cap=8)


def test_enumerated_elements_satisfy_mc_exactly():
    for A, R in ((njac(F2, 2), truncated_polynomial(F2, 3)),
                 (golden_dg_pair(F2)[0], truncated_polynomial(F2, 3))):
        setup = DeformationSetup(A, R)
        for alpha in setup.enumerate_mc():
            assert setup.mc_residual(alpha) == {}


def test_enumeration_is_deterministic():
    A = kpoints(F2, 2)
    R = truncated_polynomial(F2, 3)
    first = enumerate_mc(A, R)
    second = enumerate_mc(A, R)
    assert first == second


# ---------------------------------------------------------------------------
# the category operations


def test_category_op_at_zero_objects_is_plain_tensor_op():
    A = golden_dg_pair(F2)[1]
    R = truncated_polynomial(F2, 3)
    setup = DeformationSetup(A, R)
    zero = {}
    for l in setup.ideal[:6]:
        x = {l: F2.one}
        assert setup.category_op([zero, zero], [x]) == \
            vec_clean(setup.T.eval_m_vectors([x]))
    l1, l2 = setup.ideal[0], setup.ideal[2]
    x1, x2 = {l1: F2.one}, {l2: F2.one}
    assert setup.category_op([zero, zero, zero], [x1, x2]) == \
        vec_clean(setup.T.eval_m_vectors([x2, x1]))


def test_twisted_differential_matches_dg_formula():
    for field in (F3, Q):
        A = xy(field)
        R = truncated_polynomial(field, 3)
        setup = DeformationSetup(A, R)
        alpha = {("x", "t2"): field.one}
        beta = {("x", "t2"): field(2)}
        samples = [
            {("x", "t"): field.one},
            {("1", "t"): field.one, ("y", "t2"): field(2)},
            {("x", "t2"): field.one, ("1", "t2"): field.one},
            {("y", "t"): field(2)},
        ]
        for x in samples:
            assert setup.category_op([alpha, beta], [x], check=False) == \
                dg_twisted_oracle(setup, alpha, beta, x)


def test_twisted_differential_on_negative_base():
    field = F3
    A = xy(field)
    setup = DeformationSetup(A, negative_base(field))
    alpha = {("x", "e"): field.one}
    beta = {}
    samples = [
        {("x", "f"): field.one},
        {("1", "e"): field.one, ("x", "f"): field(2)},
        {("y", "f"): field.one},
    ]
    for x in samples:
        assert setup.category_op([alpha, beta], [x], check=False) == \
            dg_twisted_oracle(setup, alpha, beta, x)


def test_category_op_refuses_non_mc_objects():
    A = xy(F2)
    R = truncated_polynomial(F2, 3)
    bad = {("x", "t"): F2.one}
    with pytest.raises(HypothesisNotMet):
        mc_category_ops(A, R, [bad, bad], [{("1", "t"): F2.one}])


def test_hom_complex_squares_to_zero_on_xy_example():
    A = xy(F2)
    R = truncated_polynomial(F2, 3)
    setup = DeformationSetup(A, R)
    alpha = {("x", "t2"): F2.one}
    hc = HomComplex(setup, alpha, alpha)
    for l in setup.ideal:
        once = hc.complex.apply_d({l: F2.one})
        assert vec_clean(hc.complex.apply_d(once)) == {}


# ---------------------------------------------------------------------------
# hom-sets, orbits, groupoid laws


def test_njac_homs_empty_off_diagonal():
    A = njac(F2, 1)
    R = truncated_polynomial(F2, 3)
    setup = DeformationSetup(A, R)
    elements = setup.enumerate_mc()
    assert len(elements) == 4
    for a in elements:
        for b in elements:
            hs = HomSet(setup, a, b)
            if a == b:
                assert hs.count == 4
            else:
                assert hs.is_empty()
            assert hs.count == brute_orbit_count(setup, a, b)


def test_identity_class_present_in_every_end_set():
    for A, R in ((njac(F2, 1), truncated_polynomial(F2, 3)),
                 (kpoints(F2, 2), truncated_polynomial(F2, 3)),
                 (xy(F3), truncated_polynomial(F3, 3))):
        setup = DeformationSetup(A, R)
        groupoid = MCGroupoid(setup)
        for alpha in setup.enumerate_mc():
            assert groupoid.identity(alpha) in groupoid.hom(alpha, alpha).orbits()


def test_orbit_counts_match_brute_force():
    cases = [
        (xy(F2), truncated_polynomial(F2, 3)),
        (xy(F3), truncated_polynomial(F3, 3)),
        (pq_algebra(F2), truncated_polynomial(F2, 3)),
        (xy(F2), negative_base(F2)),
    ]
    for A, R in cases:
        setup = DeformationSetup(A, R)
        elements = setup.enumerate_mc()
        for a in elements:
            for b in elements:
                hs = HomSet(setup, a, b)
                assert hs.count == brute_orbit_count(setup, a, b)
                reps = hs.orbits()
                assert len(set(r.key for r in reps)) == len(reps)
                for g in brute_morphism_vectors(setup, a, b):
                    assert any(vec_eq(hs.classify(g).u, r.u) for r in reps)


def test_pi0_counts_and_members():
    expected = [
        (njac(F2, 1), truncated_polynomial(F2, 3), 4),
        (xy(F2), truncated_polynomial(F2, 3), 2),
        (pq_algebra(F2), truncated_polynomial(F2, 3), 1),
        (xy(F2), negative_base(F2), 1),
    ]
    for A, R, count in expected:
        rep = pi0(A, R)
        assert rep.count == count
        setup = DeformationSetup(A, R)
        brute = brute_components(setup, setup.enumerate_mc())
        assert sorted(len(c) for c in rep.classes) == \
            sorted(len(c) for c in brute)


def test_pi0_over_the_ground_field_is_one_class():
    rep = pi0(xy(F2), truncated_polynomial(F2, 1))
    assert rep.count == 1
    assert rep.classes == [[{}]]


def test_groupoid_laws_on_all_small_morphisms():
    for A, R in ((pq_algebra(F2), truncated_polynomial(F2, 3)),
                 (xy(F2), negative_base(F2)),
                 (xy(F3), truncated_polynomial(F3, 3))):
        setup = DeformationSetup(A, R)
        groupoid = MCGroupoid(setup)
        elements = setup.enumerate_mc()
        morphisms = []
        for a in elements:
            for b in elements:
                morphisms.extend(groupoid.hom(a, b).orbits())
        for f in morphisms:
            inv = groupoid.invert(f)
            assert groupoid.compose(f, inv) == groupoid.identity(f.alpha)
            assert groupoid.compose(inv, f) == groupoid.identity(f.beta)
        for f in morphisms:
            for g in morphisms:
                if f.beta != g.alpha:
                    continue
                fg = groupoid.compose(f, g)
                assert groupoid.invert(fg) == groupoid.compose(
                    groupoid.invert(g), groupoid.invert(f))
                for h in morphisms:
                    if g.beta != h.alpha:
                        continue
                    assert groupoid.compose(groupoid.compose(f, g), h) == \
                        groupoid.compose(f, groupoid.compose(g, h))


def test_classify_rejects_bad_vectors():
    setup = DeformationSetup(xy(F2), truncated_polynomial(F2, 3))
    hs = HomSet(setup, {}, {})
    with pytest.raises(ValueError):
        hs.classify({("1", "t"): F2.one})
    with pytest.raises(ValueError):
        hs.classify({("1", "1"): F2.one, ("x", "t"): F2.one})
    beta = {("x", "t2"): F2.one}
    empty = HomSet(setup, {}, beta)
    assert empty.is_empty()
    with pytest.raises(MathCheckFailure):
        empty.classify({("1", "1"): F2.one, ("1", "t"): F2.one})


def test_infinite_hom_sets_over_the_rationals_refuse_counting():
    setup = DeformationSetup(xy(Q), truncated_polynomial(Q, 3))
    hs = HomSet(setup, {}, {})
    assert hs.count is None
    with pytest.raises(HypothesisNotMet):
        len(hs)
    with pytest.raises(HypothesisNotMet):
        hs.orbits()


def test_hom_groupoid_entry_point():
    hs = hom_groupoid(njac(F2, 1), truncated_polynomial(F2, 3), {}, {})
    assert hs.count == 4


# ---------------------------------------------------------------------------
# obstruction calculus


def test_o2_on_xy_is_the_y_t2_line():
    for field in (F2, F3):
        A = xy(field)
        tower = Tower(truncated_polynomial(field, 3), 2)
        cls = obstruction_o2(A, tower, {("x", "t"): field.one})
        assert not cls.is_zero
        assert set(cls.vec) == {("y", "t2")}
        h2 = cls.kernel_complex.cohomology(2)
        assert h2.dim == 1


def test_o2_of_zero_vanishes():
    for A in (xy(F2), njac(F2, 1), kpoints(F2, 2)):
        tower = Tower(truncated_polynomial(F2, 3), 2)
        assert obstruction_o2(A, tower, {}).is_zero


def test_o2_soundness_against_brute_lifting():
    cases = [(xy, F2), (xy, F3), (njac1, F2), (kpoints2, F2), (kpoints2, F3)]
    for make, field in cases:
        A = make(field)
        tower = Tower(truncated_polynomial(field, 3), 2)
        setup_bar = DeformationSetup(A, tower.Rbar)
        for alpha_bar in setup_bar.enumerate_mc():
            cls = obstruction_o2(A, tower, alpha_bar)
            assert cls.is_zero == brute_lift_exists(A, tower, alpha_bar)


def njac1(field):
    return njac(field, 1)


def kpoints2(field):
    return kpoints(field, 2)


def test_o2_vanishes_on_exterior_squares_in_every_characteristic():
    """e1 e2 = -e2 e1 makes the quadratic term cancel, so no obstruction."""
    A = kpoints(F3, 2)
    tower = Tower(truncated_polynomial(F3, 3), 2)
    sq = {("e1", "t"): F3.one, ("e2", "t"): F3.one}
    cls = obstruction_o2(A, tower, sq)
    assert cls.is_zero
    assert brute_lift_exists(A, tower, sq)


def test_o2_independent_of_lift_choice_across_seeds():
    A = xy(F3)
    tower = Tower(truncated_polynomial(F3, 3), 2)
    alpha_bar = {("x", "t"): F3.one}
    classes = [obstruction_o2(A, tower, alpha_bar, seed=s) for s in range(5)]
    for cls in classes[1:]:
        assert classes[0].same_class_as(cls)


def test_o2_refuses_non_square_zero_layer():
    R = truncated_polynomial(F2, 4)
    with pytest.raises(HypothesisNotMet):
        Tower(R, 2)  # m^2 inside k[t]/t^4 has m^2 * m != 0


def test_o2_verdict_agrees_on_isomorphic_elements():
    A = pq_algebra(F2)
    R = truncated_polynomial(F2, 3)
    tower = Tower(R, 2)
    rep = pi0(A, tower.Rbar)
    for cls_members in rep.classes:
        verdicts = {obstruction_o2(A, tower, a).is_zero for a in cls_members}
        assert len(verdicts) == 1


def test_o1_vanishes_for_identity_with_equal_endpoints():
    A = njac(F2, 1)
    tower = Tower(truncated_polynomial(F2, 3), 2)
    one_bar = {("1", "1"): F2.one}
    assert obstruction_o1(A, tower, {}, {}, one_bar).is_zero


def test_o1_distinguishes_lifts_differing_by_x_t2():
    A = njac(F2, 1)
    tower = Tower(truncated_polynomial(F2, 3), 2)
    one_bar = {("1", "1"): F2.one}
    shifted = {("x1", "t2"): F2.one}
    cls = obstruction_o1(A, tower, {}, shifted, one_bar)
    assert not cls.is_zero
    assert cls.vec == {("x1", "t2"): F2.one}


def test_o1_soundness_against_brute_morphism_lifting():
    A = njac(F2, 1)
    tower = Tower(truncated_polynomial(F2, 3), 2)
    setup = DeformationSetup(A, tower.R)
    setup_bar = DeformationSetup(A, tower.Rbar)
    one_bar = {("1", "1"): F2.one}
    upstairs = setup.enumerate_mc()
    for a1 in upstairs:
        for a2 in upstairs:
            if vec_clean(vec_sub(tower.project(a1), tower.project(a2))):
                continue
            f_bar = dict(one_bar)
            if dg_twisted_oracle(setup_bar, tower.project(a1),
                                 tower.project(a2), f_bar):
                continue
            cls = obstruction_o1(A, tower, a1, a2, f_bar)
            assert cls.is_zero == \
                brute_morphism_lift_exists(A, tower, a1, a2, f_bar)


def test_o1_equivariance_under_fiber_translation():
    """Translating an endpoint lift by a kernel cocycle shifts the class.

    Moving the target adds the cocycle's class; moving the source
    subtracts it.  Checked over F3 so the two directions differ.
    """
    A = njac(F3, 1)
    tower = Tower(truncated_polynomial(F3, 3), 2)
    one_bar = {("1", "1"): F3.one}
    eta = {("x1", "t2"): F3.one}
    base = obstruction_o1(A, tower, {}, {}, one_bar)
    kc = base.kernel_complex
    moved_target = obstruction_o1(A, tower, {}, eta, one_bar)
    shifted = dict(base.vec)
    vec_add(shifted, eta)
    assert moved_target.same_class_as(
        type(base)(kc, vec_clean(shifted), 1))
    moved_source = obstruction_o1(A, tower, eta, {}, one_bar)
    shifted = dict(base.vec)
    vec_add(shifted, eta, -F3.one)
    assert moved_source.same_class_as(
        type(base)(kc, vec_clean(shifted), 1))


def test_o1_refuses_non_morphism_downstairs():
    A = njac(F2, 1)
    tower = Tower(truncated_polynomial(F2, 3), 2)
    one_bar = {("1", "1"): F2.one}
    with pytest.raises(HypothesisNotMet):
        obstruction_o1(A, tower, {}, {("x1", "t"): F2.one}, one_bar)


def test_o0_zero_for_equal_lifts_and_nonzero_for_distinct_orbits():
    A = njac(F2, 1)
    tower = Tower(truncated_polynomial(F2, 3), 2)
    f1 = {("1", "1"): F2.one}
    f2 = {("1", "1"): F2.one, ("1", "t2"): F2.one}
    assert obstruction_o0(A, tower, {}, {}, f1, dict(f1)).is_zero
    verdict = obstruction_o0(A, tower, {}, {}, f1, f2)
    assert not verdict.is_zero
    setup = DeformationSetup(A, tower.R)
    hs = HomSet(setup, {}, {})
    assert (hs.classify(f1) == hs.classify(f2)) == verdict.is_zero


def test_o0_matches_orbit_equality_exhaustively():
    A = pq_algebra(F2)
    tower = Tower(truncated_polynomial(F2, 3), 2)
    setup = DeformationSetup(A, tower.R)
    alpha = {}
    hs = HomSet(setup, alpha, alpha)
    lifts = [g for g in brute_morphism_vectors(setup, alpha, alpha)
             if not vec_clean(vec_sub(tower.project(g),
                                      {("1", "1"): F2.one}))]
    assert len(lifts) > 1
    for f1 in lifts:
        for f2 in lifts:
            verdict = obstruction_o0(A, tower, alpha, alpha, f1, f2)
            assert verdict.is_zero == (hs.classify(f1) == hs.classify(f2))


def test_o0_coboundary_translation_fixes_the_orbit():
    A = xy(F2)
    R = negative_base(F2)
    tower = Tower(R, 1)
    setup = DeformationSetup(A, R)
    f1 = dict(setup.one_vec)
    zeta = {("1", "f"): F2.one}
    boundary = dg_twisted_oracle(setup, {}, {}, zeta)
    assert boundary == {("1", "e"): F2.one}
    f2 = dict(f1)
    vec_add(f2, boundary)
    verdict = obstruction_o0(A, tower, {}, {}, f1, vec_clean(f2))
    assert verdict.is_zero


def test_o0_rejects_lifts_of_different_morphisms():
    A = njac(F2, 1)
    tower = Tower(truncated_polynomial(F2, 3), 2)
    f1 = {("1", "1"): F2.one}
    f2 = {("1", "1"): F2.one, ("1", "t"): F2.one}
    with pytest.raises(ValueError):
        obstruction_o0(A, tower, {}, {}, f1, f2)


# ---------------------------------------------------------------------------
# order-by-order lifting


def test_lift_xy_fails_at_level_two_with_the_recorded_class():
    out = lift_mc(xy(F2), truncated_polynomial(F2, 3), {("x", "t"): F2.one})
    assert not out.ok
    assert out.level == 2
    assert set(out.obstruction.vec) == {("y", "t2")}


def test_lift_zero_gives_zero():
    out = lift_mc(xy(F2), truncated_polynomial(F2, 3), {})
    assert out.ok and out.element == {}


def test_lift_njac_always_succeeds():
    A = njac(F2, 1)
    for n in (3, 4):
        R = truncated_polynomial(F2, n)
        seed_setup = DeformationSetup(A, truncated_polynomial(F2, 2))
        for alpha0 in seed_setup.enumerate_mc():
            out = lift_mc(A, R, alpha0)
            assert out.ok
            assert DeformationSetup(A, R).mc_residual(out.element) == {}
            assert len(out.trace) == n - 2


def test_lift_failure_level_is_stable_under_deeper_base():
    out = lift_mc(xy(F2), truncated_polynomial(F2, 4), {("x", "t"): F2.one})
    assert not out.ok
    assert out.level == 2


def test_lift_agrees_with_brute_force_existence():
    for field in (F2, F3):
        A = kpoints(field, 2)
        R = truncated_polynomial(field, 3)
        tower = Tower(R, 2)
        seed_setup = DeformationSetup(A, tower.Rbar)
        for alpha0 in seed_setup.enumerate_mc():
            out = lift_mc(A, R, alpha0)
            assert out.ok == brute_lift_exists(A, tower, alpha0)


def test_lift_over_the_ground_field_is_trivial():
    out = lift_mc(xy(F2), truncated_polynomial(F2, 1), {})
    assert out.ok and out.element == {}


# ---------------------------------------------------------------------------
# pushforward and invariance


def test_pushforward_along_identity_fixes_everything():
    A = xy(F2)
    R = truncated_polynomial(F2, 3)
    f = identity_morphism(A)
    setup = DeformationSetup(A, R)
    for alpha in setup.enumerate_mc():
        assert pushforward_mc(f, R, alpha) == alpha


def test_pushforward_along_dg_map_is_f1_tensor_id():
    A = xy(F2)
    C = golden_dg_pair(F2)[0]
    f = cone_inclusion(A, C)
    R = truncated_polynomial(F2, 3)
    setup = DeformationSetup(A, R)
    for alpha in setup.enumerate_mc():
        image = pushforward_mc(f, R, alpha)
        expected = {}
        for (a, r), c in alpha.items():
            for out_a, cc in f.eval_f((a,)).items():
                vec_add(expected, {(out_a, r): c * cc})
        assert image == vec_clean(expected)


def test_pushforward_certifies_mc_on_golden_instances():
    for A, C in zip((xy(F2), kpoints(F2, 1)), golden_dg_pair(F2)):
        f = cone_inclusion(A, C)
        R = truncated_polynomial(F2, 3)
        setup = DeformationSetup(A, R)
        target = DeformationSetup(C, R)
        for alpha in setup.enumerate_mc():
            assert target.mc_residual(pushforward_mc(f, R, alpha)) == {}


def test_pushforward_refuses_non_strictly_unital():
    A = xy(F2)
    comps = StructureMaps()
    comps.set(1, ("x",), {"x": F2.one})
    comps.set(1, ("y",), {"y": F2.one})
    f = AInfMorphism(A, A, comps, arity_bound=1, strict_unital=True)
    with pytest.raises(HypothesisNotMet):
        pushforward_mc(f, truncated_polynomial(F2, 3), {})


def test_pushforward_morphism_lands_in_morphisms():
    for field in (F2, F3):
        A = xy(field)
        C = golden_dg_pair(field)[0]
        f = cone_inclusion(A, C)
        R = truncated_polynomial(field, 3)
        setup = DeformationSetup(A, R)
        target = DeformationSetup(C, R)
        ga = MCGroupoid(setup)
        gc = MCGroupoid(target)
        elements = setup.enumerate_mc()
        for a in elements:
            for b in elements:
                hs = ga.hom(a, b)
                if hs.is_empty():
                    continue
                fa = pushforward_mc(f, R, a)
                fb = pushforward_mc(f, R, b)
                th = gc.hom(fa, fb)
                for orb in hs.orbits():
                    w = pushforward_morphism(f, R, a, b, orb.vector())
                    assert th.contains_vector(w)


def test_pushforward_morphism_respects_composition():
    A = pq_algebra(F2)
    f = identity_morphism(A)
    R = truncated_polynomial(F2, 3)
    setup = DeformationSetup(A, R)
    groupoid = MCGroupoid(setup)
    elements = setup.enumerate_mc()
    a, b = elements[0], elements[1]
    g1 = groupoid.hom(a, b).orbits()[0]
    g2 = groupoid.hom(b, a).orbits()[0]
    comp = groupoid.compose(g1, g2)
    pushed = pushforward_morphism(f, R, a, a, comp.vector())
    assert groupoid.hom(a, a).classify(pushed) == comp


def test_invariance_identity():
    rep = invariance_check(identity_morphism(xy(F2)),
                           truncated_polynomial(F2, 3))
    assert rep.ok
    assert rep.pi0_counts == (2, 2)


def test_invariance_cone_inclusions():
    R = truncated_polynomial(F2, 3)
    for A, C in zip((xy(F2), kpoints(F2, 1)), golden_dg_pair(F2)):
        rep = invariance_check(cone_inclusion(A, C), R)
        assert rep.ok
        assert rep.pi0_counts[0] == rep.pi0_counts[1]
        for d1, d2 in rep.hom_dims:
            assert d1 == d2


def test_invariance_refuses_non_quasi_iso():
    A = xy(F2)
    comps = StructureMaps()
    comps.set(1, ("1",), {"1": F2.one})
    collapse = AInfMorphism(A, A, comps, arity_bound=1, strict_unital=True)
    with pytest.raises(HypothesisNotMet):
        invariance_check(collapse, truncated_polynomial(F2, 3))


def test_invariance_report_is_deterministic():
    R = truncated_polynomial(F2, 3)
    f = cone_inclusion(xy(F2), golden_dg_pair(F2)[0])
    rep1 = invariance_check(f, R)
    rep2 = invariance_check(f, R)
    assert rep1.pi0_counts == rep2.pi0_counts
    assert rep1.hom_counts == rep2.hom_counts
    assert rep1.hom_dims == rep2.hom_dims
