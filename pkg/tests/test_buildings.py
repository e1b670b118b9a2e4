from fractions import Fraction

import pytest

from cch.buildings import (
    BuildingSkeleton,
    ComponentKind,
    ComponentSkeleton,
    EnumerationBounds,
    GenericityProfile,
    Level,
    building_key,
    check_cover_index_bound,
    check_cylinder_cover_index,
    check_multi_end_cover_combination,
    check_nontrivial_cover_bounds,
    check_trivial_cover_nonnegative,
    classify_building,
    component_index,
    component_key,
    enumerate_buildings,
    enumerate_components,
    run_estimate_sweep,
    underlying_index,
    verify_propositions,
)
from cch.errors import (
    DynamicalConvexityError,
    EnumerationLimitError,
    PreconditionError,
    SkeletonError,
)
from cch.orbits import OrbitRef, RotationData

F = Fraction

GENERIC = GenericityProfile(generic_J=True, dynamically_convex=False)
CONVEX = GenericityProfile(generic_J=True, dynamically_convex=True, condition_star=True)

ELL = RotationData("e", F(6, 5), 4, contractible=True)
POSH = RotationData("p", F(2), 30, contractible=True)
NEGH = RotationData("h", F(1, 2), 30)
FLAT = RotationData("z", F(0), 30)


def ref(orbit, m):
    return OrbitRef(orbit, m)


def trivial_cylinder(orbit, m):
    r, base = ref(orbit, m), ref(orbit, 1)
    return ComponentSkeleton(
        ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER,
        m, 0, 0, (r,), (r,), (base,), (base,),
    )


def branched_cover(orbit, parts):
    d = sum(parts)
    base = ref(orbit, 1)
    return ComponentSkeleton(
        ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER,
        d, len(parts) - 1, 0,
        (ref(orbit, d),),
        tuple(sorted((ref(orbit, p) for p in parts), key=lambda r: r.multiplicity)),
        (base,), (base,),
    )


def si(pos, negs):
    return ComponentSkeleton(
        ComponentKind.SOMEWHERE_INJECTIVE, 1, 0, 0, (pos,), tuple(negs), (pos,), tuple(negs)
    )


# ------------------------------------------------------------ component index


def test_index_zero_pair_of_pants():
    pants = branched_cover(ELL, (1, 2))
    assert component_index(pants) == 0
    assert pants.branch_count == 1


def test_somewhere_injective_cylinder_index():
    cyl = si(ref(ELL, 2), (ref(ELL, 1),))
    assert component_index(cyl) == 2


def test_unbranched_cover_has_index_zero():
    for m in (1, 2, 4):
        assert component_index(trivial_cylinder(ELL, m)) == 0


def test_riemann_hurwitz_violation_rejected():
    r, base = ref(ELL, 3), ref(ELL, 1)
    with pytest.raises(SkeletonError):
        ComponentSkeleton(
            ComponentKind.BRANCHED_COVER_OF_TRIVIAL_CYLINDER,
            3, 5, 0, (r,), (ref(ELL, 1), ref(ELL, 2)), (base,), (base,),
        )


def test_cover_partition_mismatch_rejected():
    pos = ref(POSH, 4)
    with pytest.raises(SkeletonError):
        ComponentSkeleton(
            ComponentKind.COVER_OF_NONTRIVIAL_CURVE,
            2, 1, 0, (pos,), (ref(NEGH, 3),), (ref(POSH, 2),), (ref(NEGH, 1),),
        )


# ------------------------------------------------------------ index estimates


def test_trivial_cover_check_examples():
    assert check_trivial_cover_nonnegative(branched_cover(ELL, (1, 2)))
    assert check_trivial_cover_nonnegative(trivial_cylinder(ELL, 3))
    assert check_trivial_cover_nonnegative(branched_cover(NEGH, (1, 1)))
    assert component_index(branched_cover(NEGH, (1, 1))) == 1


def test_trivial_cover_check_wrong_kind():
    with pytest.raises(PreconditionError):
        check_trivial_cover_nonnegative(si(ref(ELL, 1), ()))


def test_cover_index_bound_identity_cover():
    cyl = si(ref(ELL, 2), (ref(ELL, 1),))
    assert check_cover_index_bound(cyl)


def test_cover_index_bound_on_pants():
    pants = branched_cover(ELL, (1, 2))
    d, b = pants.cover_degree, pants.branch_count
    assert component_index(pants) >= d * underlying_index(pants) + 2 * (1 - d + b)
    assert check_cover_index_bound(pants)


def test_cover_index_bound_degree_two_cylinder_cover():
    # Cover of an index-one cylinder, d=2, b=1, split negative end: ind >= 2.
    one = RotationData("q", F(1), 30)
    cover = ComponentSkeleton(
        ComponentKind.COVER_OF_NONTRIVIAL_CURVE,
        2, 1, 0,
        (ref(ELL, 2),), (ref(one, 1), ref(one, 1)),
        (ref(ELL, 1),), (ref(one, 1),),
    )
    assert underlying_index(cover) == 1
    assert component_index(cover) == 2
    assert check_cover_index_bound(cover)
    assert check_nontrivial_cover_bounds(cover, GENERIC)


def test_nontrivial_cover_bounds_cylinder_case():
    under_pos, under_neg = ref(ELL, 2), ref(ELL, 1)
    cover = ComponentSkeleton(
        ComponentKind.COVER_OF_NONTRIVIAL_CURVE,
        2, 1, 0,
        (ref(ELL, 4),), (ref(ELL, 1), ref(ELL, 1)),
        (under_pos,), (under_neg,),
    )
    assert component_index(cover) >= 2
    assert check_nontrivial_cover_bounds(cover, GENERIC)


def test_nontrivial_cover_bounds_vacuous_on_plane():
    plane = si(ref(ELL, 1), ())
    assert check_nontrivial_cover_bounds(plane, GENERIC)


def test_nontrivial_cover_bounds_hyperbolic_bottom_equality_case():
    # Index-one underlying cylinder with a positive hyperbolic bottom end:
    # the cover index meets the n-end bound exactly.
    one = RotationData("q", F(1), 30)
    cover = ComponentSkeleton(
        ComponentKind.COVER_OF_NONTRIVIAL_CURVE,
        3, 2, 0,
        (ref(ELL, 3),), (ref(one, 1),) * 3,
        (ref(ELL, 1),), (ref(one, 1),),
    )
    assert underlying_index(cover) == 1
    assert component_index(cover) == 3 == len(cover.negative_ends)
    assert check_nontrivial_cover_bounds(cover, GENERIC)


def test_cylinder_cover_index_examples():
    cyl = si(ref(ELL, 2), (ref(POSH, 1),))
    assert component_index(cyl) == 1
    assert check_cylinder_cover_index(cyl, GENERIC)
    # Hyperbolic-to-hyperbolic underlying cylinder: the cover index is
    # d times the underlying index, so index one forces degree one.
    mixed = si(ref(NEGH, 1), (ref(FLAT, 1),))
    assert component_index(mixed) == 1
    assert check_cylinder_cover_index(mixed, GENERIC)
    cover = ComponentSkeleton(
        ComponentKind.COVER_OF_NONTRIVIAL_CURVE,
        2, 0, 0,
        (ref(NEGH, 2),), (ref(FLAT, 2),),
        (ref(NEGH, 1),), (ref(FLAT, 1),),
    )
    assert component_index(cover) == 2 * underlying_index(cover)
    assert check_cylinder_cover_index(cover, GENERIC)


def test_cylinder_cover_index_rejects_trivial():
    with pytest.raises(PreconditionError):
        check_cylinder_cover_index(trivial_cylinder(ELL, 2), GENERIC)


# ------------------------------------------------------------ component sweep


def test_enumerated_components_pass_all_checks():
    orbits = [ELL, NEGH, POSH]
    bounds = EnumerationBounds(max_total_multiplicity=4)
    report = run_estimate_sweep(orbits, GENERIC, bounds)
    assert report.components > 100
    assert report.ok, report.violations


def test_component_enumeration_respects_validity_bounds():
    orbits = [ELL]  # validity bound 4 < multiplicity bound 6
    bounds = EnumerationBounds(max_total_multiplicity=6)
    for c in enumerate_components(orbits, GENERIC, bounds):
        for r in c.positive_ends + c.negative_ends:
            assert r.multiplicity <= 4


def test_plane_components_only_over_contractible_orbits():
    orbits = [NEGH]
    bounds = EnumerationBounds(max_total_multiplicity=3)
    for c in enumerate_components(orbits, GENERIC, bounds):
        assert c.negative_ends, component_key(c)


def test_multi_end_cover_combination_applies():
    bounds = EnumerationBounds(max_total_multiplicity=6)
    seen = 0
    for c in enumerate_components([POSH, FLAT], GENERIC, bounds):
        if (
            c.kind is ComponentKind.COVER_OF_NONTRIVIAL_CURVE
            and len(c.underlying_negative_ends) > 1
        ):
            seen += 1
            assert check_multi_end_cover_combination(c)
    assert seen > 0


# ---------------------------------------------------------------- enumeration


def test_single_plane_enumeration():
    bounds = EnumerationBounds(max_index=2, max_negative_ends=0)
    out = enumerate_buildings([ELL], CONVEX, bounds)
    assert len(out) == 1
    (b,) = out
    assert len(b.levels) == 1
    assert b.total_index == 2
    assert len(b.negative_ends) == 0
    assert b.levels[0].components[0].kind is ComponentKind.SOMEWHERE_INJECTIVE


def test_index_one_enumeration_gives_one_level_cylinders():
    orbits = [ELL, POSH, RotationData("h", F(1, 2), 30)]
    bounds = EnumerationBounds(max_index=1)
    out = enumerate_buildings(orbits, CONVEX, bounds)
    assert out
    for b in out:
        assert len(b.levels) == 1
        assert len(b.negative_ends) == 1
        assert len(b.levels[0].components) == 1


def test_two_level_chains_and_split_plane_shapes_appear():
    orbits = [ELL, POSH, RotationData("h", F(1, 2), 30)]
    out = enumerate_buildings(orbits, CONVEX, EnumerationBounds())
    tags = [classify_building(b)[0] for b in out]
    assert "index-two:two-cylinder-levels" in tags
    assert "index-two:split-off-plane" in tags


def test_enumeration_respects_every_bound():
    orbits = [ELL, POSH, RotationData("h", F(1, 2), 30)]
    bounds = EnumerationBounds(max_levels=3, max_components_per_level=2, max_index=2)
    out = enumerate_buildings(orbits, CONVEX, bounds)
    assert out
    for b in out:
        assert len(b.levels) <= bounds.max_levels
        assert all(
            len(l.components) <= bounds.max_components_per_level for l in b.levels
        )
        assert b.total_index <= bounds.max_index
        assert len(b.negative_ends) <= bounds.max_negative_ends
        assert len(b.positive_ends) == 1
        assert not b.is_trivial


def test_enumeration_is_deterministic_and_duplicate_free():
    orbits = [ELL, POSH]
    a = enumerate_buildings(orbits, CONVEX, EnumerationBounds())
    b = enumerate_buildings(orbits, CONVEX, EnumerationBounds())
    keys_a = [building_key(x) for x in a]
    keys_b = [building_key(x) for x in b]
    assert keys_a == keys_b
    assert len(set(keys_a)) == len(keys_a)
    assert keys_a == sorted(keys_a)


def brute_force_keys(orbits, profile, bounds):
    # Reference enumeration: no index pruning, no bound tables, no canonical
    # ordering; assemble level lists directly and dedupe by canonical key.
    from itertools import product

    by_pos = {}
    for c in enumerate_components(orbits, profile, bounds):
        by_pos.setdefault(c.positive_ends[0], []).append(c)
    found = {}

    def emit(levels):
        skeleton_levels = tuple(Level(tuple(l)) for l in levels)
        matchings = tuple(
            tuple(range(len(levels[i + 1]))) for i in range(len(levels) - 1)
        )
        b = BuildingSkeleton(skeleton_levels, matchings)
        if b.total_index <= bounds.max_index and not b.is_trivial:
            found[building_key(b)] = b.total_index

    def rec(levels, frontier):
        if len(frontier) <= bounds.max_negative_ends:
            emit(levels)
        if (
            len(levels) >= bounds.max_levels
            or not frontier
            or len(frontier) > bounds.max_components_per_level
        ):
            return
        pools = [by_pos.get(r, ()) for r in frontier]
        for assignment in product(*pools):
            if all(c.is_trivial_cylinder for c in assignment):
                continue
            good = all(
                c.positive_ends[0] == r for c, r in zip(assignment, frontier)
            )
            assert good
            rec(
                levels + [list(assignment)],
                [e for c in assignment for e in c.negative_ends],
            )

    for group in by_pos.values():
        for root in group:
            if root.is_trivial_cylinder:
                continue
            rec([[root]], list(root.negative_ends))
    return found


def test_enumeration_matches_brute_force_reference():
    orbits = [
        RotationData("e", F(6, 5), 2, contractible=True),
        RotationData("h", F(1, 2), 2),
    ]
    for max_index in (1, 2, 4):
        bounds = EnumerationBounds(
            max_levels=3,
            max_total_multiplicity=2,
            max_index=max_index,
            max_components_per_level=3,
            max_negative_ends=1,
        )
        expected = brute_force_keys(orbits, CONVEX, bounds)
        got = {building_key(b): b.total_index for b in enumerate_buildings(orbits, CONVEX, bounds)}
        assert got == expected


def test_enumeration_matches_brute_force_no_negative_ends():
    orbits = [RotationData("e", F(6, 5), 3, contractible=True)]
    bounds = EnumerationBounds(
        max_levels=3,
        max_total_multiplicity=3,
        max_index=6,
        max_components_per_level=3,
        max_negative_ends=0,
    )
    expected = brute_force_keys(orbits, CONVEX, bounds)
    got = {building_key(b): b.total_index for b in enumerate_buildings(orbits, CONVEX, bounds)}
    assert got == expected
    assert got


def test_enumeration_requires_convex_data_when_flagged():
    bad = RotationData("c", F(1, 2), 10, contractible=True)
    with pytest.raises(DynamicalConvexityError):
        enumerate_buildings([bad], CONVEX, EnumerationBounds())


def test_enumeration_limit_carries_partial_results():
    orbits = [ELL, POSH]
    with pytest.raises(EnumerationLimitError) as err:
        enumerate_buildings(orbits, CONVEX, EnumerationBounds(max_buildings=1))
    assert len(err.value.partial) == 1


# ---------------------------------------------------------------- buildings


def test_building_validation_matched_ends():
    pants = branched_cover(ELL, (1, 1))
    plane = si(ref(ELL, 1), ())
    tcyl = trivial_cylinder(ELL, 1)
    good = BuildingSkeleton(
        (Level((pants,)), Level((tcyl, plane))), ((0, 1),)
    )
    assert good.total_index == 2
    assert len(good.negative_ends) == 1
    lopsided = branched_cover(ELL, (1, 2))
    with pytest.raises(SkeletonError):
        # Matched ends must reference equal orbits: e^2 cannot meet a plane at e^1.
        BuildingSkeleton(
            (Level((lopsided,)), Level((tcyl, si(ref(ELL, 1), ())))), ((0, 1),)
        )


def test_building_rejects_all_trivial_level():
    tcyl = trivial_cylinder(ELL, 1)
    with pytest.raises(SkeletonError):
        BuildingSkeleton((Level((tcyl,)), Level((tcyl,))), ((0,),))


def test_classification_of_split_plane_building():
    pants = branched_cover(ELL, (1, 1))
    plane = si(ref(ELL, 1), ())
    tcyl = trivial_cylinder(ELL, 1)
    b = BuildingSkeleton((Level((pants,)), Level((tcyl, plane))), ((0, 1),))
    assert classify_building(b) == ("index-two:split-off-plane", True)


# ---------------------------------------------------------------- propositions


def test_verify_propositions_clean_scenario():
    orbits = [ELL, POSH, RotationData("h", F(1, 2), 30)]
    report = verify_propositions(orbits, CONVEX, EnumerationBounds())
    assert report.entries
    assert report.ok, [e.key for e in report.counterexamples]
    tags = report.tally()
    assert tags.get("index-two:split-off-plane", 0) >= 1


def test_verify_propositions_empty_orbit_set():
    report = verify_propositions([], CONVEX, EnumerationBounds())
    assert report.entries == []
    assert report.ok


def test_verify_propositions_requires_flags():
    with pytest.raises(PreconditionError):
        verify_propositions([ELL], GENERIC, EnumerationBounds())
