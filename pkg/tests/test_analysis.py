"""Tests for group closure, fixed-point decisions, and the torsion oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dihedral_torus.analysis import (
    ClosureCapExceeded,
    GroupElement,
    OracleBudgetExceeded,
    OrderCapExceeded,
    analyze_group,
    closure,
    conjugacy_classes,
    exists_fixed_point,
    is_translation,
    order,
    torsion_fixed_points_bruteforce,
)
from dihedral_torus.dihedral import (
    ambient_lattice,
    build_w,
    quotient_lattice,
    realified_action,
)
from dihedral_torus.torus import (
    AffineAuto,
    ComplexMonomialMap,
    TorsionPoint,
    TorusShape,
    compose,
    inverse,
    realify,
)

F = Fraction


@pytest.fixture(scope="module")
def quotient_pair():
    return realified_action(1)


@pytest.fixture(scope="module")
def ambient_pair():
    return realified_action(1, ambient_lattice(1))


def zero_offset_reflection(lattice):
    cmap = ComplexMonomialMap((1, 0, 2), (-1, -1, -1), TorsionPoint.zero(6))
    return realify(cmap, TorusShape(1), lattice)


class TestOrder:
    def test_identity_has_order_one(self, quotient_pair):
        r, _ = quotient_pair
        assert order(AffineAuto.identity(r.lattice)) == 1

    def test_rotation_order_scales_with_n(self):
        for n in (1, 2):
            r, _ = realified_action(n)
            assert order(r) == 4 * n

    def test_reflection_order_depends_on_lattice(self, ambient_pair):
        _, s = ambient_pair
        assert order(s) == 4
        assert order(s, lattice=quotient_lattice(1)) == 2

    def test_cap_enforced(self, quotient_pair):
        r, _ = quotient_pair
        with pytest.raises(OrderCapExceeded):
            order(r, cap=3)
        with pytest.raises(ValueError):
            order(r, cap=0)


class TestIsTranslation:
    def test_identity_is_not_a_translation(self, quotient_pair):
        r, _ = quotient_pair
        assert not is_translation(AffineAuto.identity(r.lattice))

    def test_reflection_square_is_a_translation_upstairs(self, ambient_pair):
        _, s = ambient_pair
        assert is_translation(compose(s, s))
        assert not is_translation(s)

    def test_explicit_translation(self):
        lat = ambient_lattice(1)
        assert is_translation(AffineAuto.translation_by(build_w(1), lat))


class TestExistsFixedPoint:
    def test_identity_fixes_everything(self, quotient_pair):
        r, _ = quotient_pair
        assert exists_fixed_point(AffineAuto.identity(r.lattice))

    def test_generators_act_freely_downstairs(self, quotient_pair):
        r, s = quotient_pair
        assert not exists_fixed_point(r)
        assert not exists_fixed_point(s)
        assert not exists_fixed_point(compose(r, s))

    def test_reflection_without_offsets_fixes_the_origin(self):
        s0 = zero_offset_reflection(quotient_lattice(1))
        assert exists_fixed_point(s0)
        assert s0.apply(TorsionPoint.zero(6)).is_zero

    def test_translation_has_no_fixed_point_until_it_collapses(self):
        amb, quo = ambient_lattice(1), quotient_lattice(1)
        t = AffineAuto.translation_by(build_w(1), amb)
        assert not exists_fixed_point(t)
        assert exists_fixed_point(t, lattice=quo)

    def test_lattice_override(self, ambient_pair):
        _, s = ambient_pair
        assert not exists_fixed_point(s)
        assert not exists_fixed_point(s, lattice=quotient_lattice(1))


class TestClosure:
    def test_single_identity_generator(self, quotient_pair):
        r, _ = quotient_pair
        group = closure([AffineAuto.identity(r.lattice)])
        assert len(group) == 1
        assert group[0].auto.is_identity
        assert group[0].path == ()

    def test_quotient_group_has_eight_elements(self, quotient_pair):
        assert len(closure(quotient_pair)) == 8

    def test_ambient_group_has_sixteen_elements(self, ambient_pair):
        assert len(closure(ambient_pair)) == 16

    def test_generator_order_does_not_change_the_set(self, quotient_pair):
        r, s = quotient_pair
        one = {e.auto for e in closure([r, s])}
        other = {e.auto for e in closure([s, r])}
        assert one == other

    def test_closure_contains_inverses(self, quotient_pair):
        r, s = quotient_pair
        autos = {e.auto for e in closure([r, s])}
        assert inverse(r) in autos
        assert inverse(s) in autos

    def test_cap_and_validation(self, quotient_pair):
        with pytest.raises(ClosureCapExceeded):
            closure(quotient_pair, cap=7)
        with pytest.raises(ValueError):
            closure([])
        with pytest.raises(ValueError):
            closure(quotient_pair, cap=0)

    def test_lattice_argument_moves_generators(self, ambient_pair):
        group = closure(ambient_pair, lattice=quotient_lattice(1))
        assert len(group) == 8


class TestConjugacyClasses:
    def test_trivial_group(self, quotient_pair):
        r, _ = quotient_pair
        group = closure([AffineAuto.identity(r.lattice)])
        assert len(conjugacy_classes(group)) == 1

    def test_dihedral_partition(self, quotient_pair):
        group = closure(quotient_pair)
        classes = conjugacy_classes(group)
        assert sorted(len(c) for c in classes) == [1, 1, 2, 2, 2]
        assert sum(len(c) for c in classes) == 8

    def test_generating_conjugators_give_the_full_partition(
        self, quotient_pair
    ):
        group = closure(quotient_pair)
        full = conjugacy_classes(group)
        seeded = conjugacy_classes(group, conjugators=list(quotient_pair))

        def as_sets(classes):
            return {frozenset(e.auto for e in cls) for cls in classes}

        assert as_sets(full) == as_sets(seeded)

    def test_conjugation_invariants_are_constant_on_classes(
        self, quotient_pair
    ):
        analysis = analyze_group(quotient_pair)
        by_label = {e.label: rep for e, rep in
                    zip(analysis.elements, analysis.reports)}
        for cls in conjugacy_classes(analysis.elements):
            verdicts = {
                (
                    by_label[e.label].order,
                    by_label[e.label].is_translation,
                    by_label[e.label].has_fixed_point,
                )
                for e in cls
            }
            assert len(verdicts) == 1

    def test_rejects_non_closed_input(self, quotient_pair):
        r, s = quotient_pair
        fragment = [
            GroupElement(auto=AffineAuto.identity(r.lattice), path=()),
            GroupElement(auto=s, path=(1,)),
        ]
        with pytest.raises(ValueError, match="not closed"):
            conjugacy_classes(fragment, conjugators=[r])


class TestAnalyzeGroup:
    def test_quotient_analysis(self, quotient_pair):
        analysis = analyze_group(quotient_pair)
        assert analysis.group_size == 8
        assert analysis.dihedral_shape
        assert analysis.rotation_order == 4
        assert analysis.is_free
        assert analysis.has_no_translations
        assert analysis.conjugacy_class_count == 5
        assert analysis.symmetry_class_count == 2
        assert [e.label for e in analysis.elements] == [
            "", "s", "r", "r s", "r^2", "r^2 s", "r^3", "r^3 s",
        ]
        identity_report = analysis.reports[0]
        assert identity_report.order == 1
        assert not identity_report.is_translation
        assert identity_report.has_fixed_point
        for rep in analysis.reports[1:]:
            assert not rep.has_fixed_point
            assert rep.order in (2, 4)

    def test_ambient_analysis_is_not_dihedral_of_the_expected_size(
        self, ambient_pair
    ):
        analysis = analyze_group(ambient_pair)
        assert analysis.group_size == 16
        assert not analysis.dihedral_shape
        assert analysis.rotation_order is None
        assert analysis.symmetry_class_count is None
        # Upstairs the action is still free, but s² survives as a
        # translation, so the group is not translation-free.
        assert not analysis.has_no_translations
        assert analysis.is_free
        # Fallback labels are BFS discovery words over the generator names.
        assert analysis.elements[0].label == ""
        assert {e.label for e in analysis.elements} >= {"r", "s", "s^2"}

    def test_symmetry_classes_for_larger_n(self):
        analysis = analyze_group(realified_action(2))
        assert analysis.group_size == 16
        assert analysis.symmetry_class_count == 2
        classes = conjugacy_classes(
            analysis.elements, conjugators=list(realified_action(2))
        )
        symmetry_sizes = [
            len(cls)
            for cls in classes
            if all(e.word[1] == 1 for e in cls)
        ]
        assert symmetry_sizes == [4, 4]

    def test_element_orders_divide_group_order(self):
        for n in (1, 2):
            analysis = analyze_group(realified_action(n))
            for rep in analysis.reports:
                assert analysis.group_size % rep.order == 0

    def test_rotation_shifts_the_last_coordinate_linearly(self):
        for n in (1, 2, 3):
            r, _ = realified_action(n)
            acc = AffineAuto.identity(r.lattice)
            for j in range(4 * n):
                assert acc.translation[4 * n] == F(j, 4 * n)
                acc = compose(acc, r)

    def test_custom_generator_names(self, quotient_pair):
        r, _ = quotient_pair
        analysis = analyze_group(
            [r], gen_names=("rho",), closure_cap=8
        )
        assert analysis.group_size == 4
        assert not analysis.dihedral_shape
        assert {e.label for e in analysis.elements} == {
            "", "rho", "rho^2", "rho^3",
        }

    def test_analysis_is_deterministic(self, quotient_pair):
        assert analyze_group(quotient_pair) == analyze_group(quotient_pair)


class TestTorsionOracle:
    def test_identity_fixes_the_whole_grid(self, quotient_pair):
        r, _ = quotient_pair
        e = AffineAuto.identity(r.lattice)
        points = torsion_fixed_points_bruteforce(e, 2)
        assert len(points) == 2**6 // 2
        assert TorsionPoint.zero(6) in points
        # Canonical and deduplicated: reducing changes nothing.
        assert all(r.lattice.reduce(p) == p for p in points)
        assert len({p.coords for p in points}) == len(points)

    def test_free_reflection_has_empty_grid(self, quotient_pair):
        _, s = quotient_pair
        assert torsion_fixed_points_bruteforce(s, 4) == []

    def test_reflection_without_offsets_finds_the_origin(self):
        s0 = zero_offset_reflection(quotient_lattice(1))
        points = torsion_fixed_points_bruteforce(s0, 2)
        assert TorsionPoint.zero(6) in points

    def test_oracle_results_are_actual_fixed_points(self):
        s0 = zero_offset_reflection(quotient_lattice(1))
        for p in torsion_fixed_points_bruteforce(s0, 4):
            assert s0.apply(p) == p

    def test_lattice_override_matches_requotiented_map(self, ambient_pair):
        _, s = ambient_pair
        moved = torsion_fixed_points_bruteforce(
            s, 2, lattice=quotient_lattice(1)
        )
        direct = torsion_fixed_points_bruteforce(
            s.with_lattice(quotient_lattice(1)), 2
        )
        assert moved == direct

    def test_budget_refusal(self, quotient_pair):
        r, _ = quotient_pair
        with pytest.raises(OracleBudgetExceeded):
            torsion_fixed_points_bruteforce(r, 4, budget=1000)
        with pytest.raises(ValueError):
            torsion_fixed_points_bruteforce(r, 0)

    def test_oracle_never_contradicts_the_exact_decision(self, quotient_pair):
        # Soundness at any denominator: a grid fixed point is a fixed point.
        for element in closure(quotient_pair):
            points = torsion_fixed_points_bruteforce(element.auto, 2)
            if points:
                assert exists_fixed_point(element.auto)


# --- property-based coverage ------------------------------------------------

rationals = st.fractions(min_value=0, max_value=1, max_denominator=4)


@st.composite
def quotient_monomial_autos(draw):
    """Random signed E-permutation maps, valid on the quotient lattice."""
    e_perm = draw(st.permutations(range(2)))
    perm = tuple(e_perm) + (2,)
    signs = tuple(draw(st.sampled_from((1, -1))) for _ in range(3))
    translation = TorsionPoint.of([draw(rationals) for _ in range(6)])
    cmap = ComplexMonomialMap(perm, signs, translation)
    return realify(cmap, TorusShape(1), quotient_lattice(1))


@given(quotient_monomial_autos())
@settings(deadline=None, max_examples=40)
def test_oracle_points_are_fixed_and_sound(g):
    points = torsion_fixed_points_bruteforce(g, 4)
    for p in points:
        assert g.apply(p) == p
    if points:
        assert exists_fixed_point(g)


@given(quotient_monomial_autos())
@settings(deadline=None, max_examples=40)
def test_order_matches_smallest_trivial_power(g):
    k = order(g, cap=64)
    acc = g
    for step in range(1, k):
        assert not acc.is_identity
        acc = compose(acc, g)
    assert acc.is_identity


@given(quotient_monomial_autos(), quotient_monomial_autos())
@settings(deadline=None, max_examples=20)
def test_conjugate_elements_share_order(g, h):
    conjugate = compose(h, compose(g, inverse(h)))
    assert order(g, cap=64) == order(conjugate, cap=64)
