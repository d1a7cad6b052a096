"""Cross-checks: blowup tensors against fan subdivisions, two period paths."""

import pytest

from logcy3.fixtures import pair_fixtures, projective_space_fan, triple_line_fan
from logcy3.oracle import (
    cocycle_period,
    curve_subdivision_check,
    point_subdivision_check,
)
from logcy3.periods import matching_lattice, unmarked_period


@pytest.fixture(scope="module")
def pairs():
    return pair_fixtures()


class TestSubdivisionOracle:
    def test_point_blowup_tensor_on_every_cone(self):
        for fan in (projective_space_fan(), triple_line_fan()):
            for cone in fan.max_cones:
                assert point_subdivision_check(fan, cone) is None

    def test_curve_blowup_tensor_on_every_wall(self):
        for fan in (projective_space_fan(), triple_line_fan()):
            for wall in fan.walls():
                assert curve_subdivision_check(fan, tuple(sorted(wall))) is None


class TestTwoPathPeriods:
    def test_paths_agree_on_matching_classes(self, pairs):
        for pair in pairs.values():
            character = unmarked_period(pair)
            for gen, expected in zip(character.basis, character.values):
                assert cocycle_period(pair, gen) == expected

    def test_flipped_orientation_inverts(self, pairs):
        pair = pairs["p3-conic"]
        for gen in matching_lattice(pair):
            value = cocycle_period(pair, gen)
            flipped = cocycle_period(pair, gen, flip_orientation=True)
            assert value * flipped == cocycle_period(pair, [0] * len(gen))

    def test_flip_distinguishes_nontrivial_values(self, pairs):
        pair = pairs["p3-conic"]
        seen_difference = False
        for gen in matching_lattice(pair):
            value = cocycle_period(pair, gen)
            flipped = cocycle_period(pair, gen, flip_orientation=True)
            if value != flipped:
                seen_difference = True
        assert seen_difference
