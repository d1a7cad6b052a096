"""Tests for smooth complete fans, triple intersections, and edge charts."""

import pytest

from logcy3.exactnum import GaussianRational
from logcy3.fixtures import projective_space_fan, toric_fixture_fans, triple_line_fan
from logcy3.toric import (
    DualComplex,
    Fan3,
    FanError,
    ToricPicBasis,
    TripleIntersection,
    ToricIntersectionData,
    canonical_form,
    edge_coordinate_chart,
    edge_reference_character,
    fan_isomorphism,
    star_subdivide,
    star_surface,
    triple_intersection,
    validate_fan,
)


@pytest.fixture
def p3():
    return projective_space_fan()


@pytest.fixture
def p111():
    return triple_line_fan()


class TestValidation:
    def test_fixtures_are_valid(self):
        for fan in toric_fixture_fans().values():
            assert validate_fan(fan) is None

    def test_non_primitive_ray_rejected(self, p3):
        bad = Fan3([(2, 0, 0)] + list(p3.rays[1:]), p3.max_cones)
        assert "non-primitive" in validate_fan(bad)

    def test_missing_cone_rejected(self, p3):
        bad = Fan3(p3.rays, p3.max_cones[:-1])
        assert "wall with one incident" in validate_fan(bad)

    def test_singular_cone_rejected(self):
        rays = [(1, 0, 0), (0, 1, 0), (1, 1, 2), (-2, -2, -2)]
        bad = Fan3(rays, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
        assert validate_fan(bad) is not None

    def test_duplicate_ray_rejected(self, p3):
        bad = Fan3(list(p3.rays) + [(1, 0, 0)], p3.max_cones)
        assert "duplicate" in validate_fan(bad)


class TestDualComplex:
    def test_euler_characteristic_is_spherical(self, p3, p111):
        for fan in (p3, p111):
            complex_ = fan.dual_complex()
            assert complex_.euler_characteristic() == 2

    def test_counts(self, p3, p111):
        c = p3.dual_complex()
        assert (len(c.vertices), len(c.edges), len(c.triangles)) == (4, 6, 4)
        c = p111.dual_complex()
        assert (len(c.vertices), len(c.edges), len(c.triangles)) == (6, 12, 8)

    def test_positive_triangle_orientation(self, p3):
        c = p3.dual_complex()
        for v, w in c.edges:
            t1 = c.positive_triangle(v, w)
            t2 = c.positive_triangle(w, v)
            assert t1 != t2
            assert {v, w} < set(t1) and {v, w} < set(t2)

    def test_custom_edge_orientations(self, p3):
        flipped = [(w, v) for v, w in p3.dual_complex().edges]
        c = DualComplex.from_fan(p3, edge_orientations=flipped)
        assert set(c.edges) == set(flipped)


class TestTripleIntersection:
    def test_projective_space_values(self, p3):
        # Any three distinct rays span a cone: product 1.
        assert triple_intersection(p3, 0, 1, 2) == 1
        assert triple_intersection(p3, 0, 1, 3) == 1
        # All rays are linearly equivalent, so cubes agree.
        assert triple_intersection(p3, 0, 0, 0) == 1
        assert triple_intersection(p3, 0, 0, 1) == 1

    def test_split_threefold_values(self, p111):
        # Opposite rays never share a cone.
        assert triple_intersection(p111, 0, 1, 2) == 0
        # A divisor squared vanishes on a product factor of degree one.
        assert triple_intersection(p111, 0, 0, 2) == 0
        assert triple_intersection(p111, 0, 2, 4) == 1

    def test_symmetry(self, p3, p111):
        for fan in (p3, p111):
            n = fan.n_rays
            table = TripleIntersection(fan)
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        value = table.ray_triple(i, j, k)
                        assert value == table.ray_triple(j, i, k)
                        assert value == table.ray_triple(k, j, i)

    def test_linear_equivalence_annihilated(self, p3, p111):
        # Sum_v <m, n_v> D_v is principal; its triple products all vanish.
        for fan in (p3, p111):
            table = TripleIntersection(fan)
            n = fan.n_rays
            for m in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
                principal = tuple(
                    sum(mi * ri for mi, ri in zip(m, ray)) for ray in fan.rays
                )
                for j in range(n):
                    for k in range(n):
                        b = tuple(1 if x == j else 0 for x in range(n))
                        c = tuple(1 if x == k else 0 for x in range(n))
                        assert table.vector_triple(principal, b, c) == 0

    def test_anticanonical_cubes(self, p3, p111):
        basis = ToricPicBasis.of(p3)
        k = basis.to_ray_vector(basis.anticanonical())
        assert TripleIntersection(p3).vector_triple(k, k, k) == 64
        basis = ToricPicBasis.of(p111)
        k = basis.to_ray_vector(basis.anticanonical())
        assert TripleIntersection(p111).vector_triple(k, k, k) == 48

    def test_wall_relation(self, p111):
        # For a wall {i, k} with flanking rays p, q the relation
        # n_p + n_q = -a n_i - b n_k pins T(i,i,k) = a.
        table = TripleIntersection(p111)
        assert table.ray_triple(0, 0, 2) == 0
        data = ToricIntersectionData.of_fan(p111)
        for (a, b), (taa, tbb) in data.wall_curves.items():
            assert taa == table.ray_triple(b, b, a)
            assert tbb == table.ray_triple(a, a, b)


class TestPicBasis:
    def test_ranks(self, p3, p111):
        assert ToricPicBasis.of(p3).rank == 1
        assert ToricPicBasis.of(p111).rank == 3

    def test_reduce_and_expand_round_trip(self, p111):
        basis = ToricPicBasis.of(p111)
        for v in range(p111.n_rays):
            cls = basis.ray_class(v)
            expanded = basis.to_ray_vector(cls)
            assert basis.reduce_ray_vector(expanded) == cls


class TestStarSurface:
    def test_ray_counts(self, p3, p111):
        assert star_surface(p3, 0).n_rays == 3
        assert star_surface(p111, 0).n_rays == 4

    def test_projective_plane_intersections(self, p3):
        surface = star_surface(p3, 0)
        # Every boundary line of the plane has self-intersection 1.
        for i in range(3):
            assert surface.self_intersection(i) == 1
        assert surface.rank == 1

    def test_quadric_intersections(self, p111):
        surface = star_surface(p111, 0)
        for i in range(4):
            assert surface.self_intersection(i) == 0
        assert surface.rank == 2
        assert surface.pairing(0, 1) == 1

    def test_degree_matches_triple_intersection(self, p3, p111):
        # (D_w)|_{D_v} . (D_u)|_{D_v} = D_u . D_v . D_w for neighbors u, w.
        for fan in (p3, p111):
            table = TripleIntersection(fan)
            for v in range(fan.n_rays):
                surface = star_surface(fan, v)
                labels = surface.labels
                for i, u in enumerate(labels):
                    for j, w in enumerate(labels):
                        assert surface.pairing(i, j) == table.ray_triple(u, v, w)


class TestStarSubdivision:
    def test_results_are_valid(self, p3, p111):
        assert validate_fan(star_subdivide(p3, (0, 1, 2))) is None
        assert validate_fan(star_subdivide(p3, (0, 1))) is None
        assert validate_fan(star_subdivide(p111, (0, 2))) is None

    def test_cone_subdivision_counts(self, p3):
        sub = star_subdivide(p3, (0, 1, 2))
        assert sub.n_rays == 5
        assert len(sub.max_cones) == 6

    def test_wall_subdivision_counts(self, p3):
        sub = star_subdivide(p3, (0, 1))
        assert sub.n_rays == 5
        assert len(sub.max_cones) == 6

    def test_disjoint_subdivisions_commute(self, p111):
        a = star_subdivide(star_subdivide(p111, (0, 2, 4)), (1, 3, 5))
        b = star_subdivide(star_subdivide(p111, (1, 3, 5)), (0, 2, 4))
        assert canonical_form(a) == canonical_form(b)

    def test_missing_target_rejected(self, p3):
        with pytest.raises(FanError):
            star_subdivide(p3, (0, 1, 2, 3))


class TestFanIsomorphism:
    def test_self_isomorphism(self, p3, p111):
        for fan in (p3, p111):
            assert fan_isomorphism(fan, fan) is not None

    def test_relabeled_fan(self, p3):
        perm = [2, 3, 0, 1]
        rays = [p3.rays[perm.index(i)] for i in range(4)]
        cones = [tuple(sorted(perm[v] for v in cone)) for cone in p3.max_cones]
        relabeled = Fan3(rays, cones)
        assert fan_isomorphism(p3, relabeled) is not None

    def test_distinct_fans(self, p3, p111):
        assert fan_isomorphism(p3, p111) is None


class TestEdgeCharts:
    def test_chart_inversion(self, p3):
        chart = edge_coordinate_chart(p3, (0, 1))
        q = GaussianRational(3, 2)
        head_value = chart.coordinate_for(chart.head, q)
        tail_value = chart.coordinate_for(chart.tail, q)
        assert head_value == q
        assert tail_value * head_value == GaussianRational(1)

    def test_marker_is_self_inverse(self, p3):
        chart = edge_coordinate_chart(p3, (0, 1))
        marker = GaussianRational(-1)
        assert chart.coordinate_for(chart.tail, marker) == marker

    def test_stratum_positions(self, p3):
        complex_ = p3.dual_complex()
        chart = edge_coordinate_chart(p3, (0, 1))
        zero = chart.zero_triangle
        infinity = chart.infinity_triangle
        assert zero != infinity
        assert chart.stratum_position(chart.head, zero) == "0"
        assert chart.stratum_position(chart.head, infinity) == "inf"
        assert chart.stratum_position(chart.tail, zero) == "inf"
        assert chart.stratum_position(chart.tail, infinity) == "0"
        # The 0-end of the head chart is where (head, tail) is positive.
        assert set(zero) == set(complex_.positive_triangle(chart.head, chart.tail))

    def test_reference_character_orthogonality(self, p3, p111):
        for fan in (p3, p111):
            complex_ = fan.dual_complex()
            for v, w in complex_.edges:
                m = edge_reference_character(fan, complex_, (v, w))
                for u in (v, w):
                    assert sum(a * b for a, b in zip(m, fan.rays[u])) == 0
                apex = next(
                    x
                    for x in complex_.positive_triangle(w, v)
                    if x not in (v, w)
                )
                pairing = sum(a * b for a, b in zip(m, fan.rays[apex]))
                assert pairing > 0


class TestIntersectionData:
    def test_round_trip_shape(self, p111):
        data = ToricIntersectionData.of_fan(p111)
        assert data.n_vertices == 6
        assert frozenset(map(frozenset, p111.max_cones)) == frozenset(
            map(frozenset, data.cones)
        )

    def test_self_intersection_lookup(self, p3):
        data = ToricIntersectionData.of_fan(p3)
        # A line inside a plane of the tetrahedral boundary has square 1.
        assert data.self_intersection_in(0, 1) == 1
