import xml.etree.ElementTree as ET
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twobridge_floer.complexes import (
    EXTERIOR,
    INTERIOR,
    UNIT,
    ck_complex,
    export_svg,
    reflect,
    reflected_complex,
    stable_complex,
    stable_homology_check,
    to_svg,
    verify_ck_euler,
)
from twobridge_floer.homalg import HomologyGroup
from twobridge_floer.twobridge import UNKNOT, TwoBridgeKnot, genus, knots_up_to

K3 = TwoBridgeKnot(3, 1)
K11 = TwoBridgeKnot(11, 5)
K13 = TwoBridgeKnot(13, 5)
SMALL = list(knots_up_to(41))
NS = {"svg": "http://www.w3.org/2000/svg"}


def active(model, kind):
    return sorted(pr.i for pr in model.active_pairs() if pr.kind == kind)


class TestStable:
    def test_k11_5(self):
        c = stable_complex(K11)
        assert c.gradings == (-1, 0, 1, 0, -1, 0, 1, 0, -1, 0, 1)
        assert active(c, INTERIOR) == [2, 4, 6, 8, 10] and active(c, EXTERIOR) == []

    def test_k13_5_has_six_arrows(self):
        assert len(stable_complex(K13).active_pairs()) == 6

    def test_trefoil_arrow(self):
        c = stable_complex(K3)
        assert c.gradings == (-1, 0, 1)
        assert c.complex.arrows() == {("x3", "x2"): 1}

    def test_unknot(self):
        c = stable_complex(UNKNOT)
        assert len(c.complex) == 1 and not c.active_pairs()
        assert stable_homology_check(UNKNOT)

    @pytest.mark.parametrize("knot, grading", [(TwoBridgeKnot(5, 3), 0), (K11, -1), (K13, 0)])
    def test_homology_single_z(self, knot, grading):
        assert stable_homology_check(knot)
        assert stable_complex(knot).homology().groups == {grading: HomologyGroup(1, ())}

    def test_interior_pairs_are_even(self):
        for knot in SMALL:
            for pr in stable_complex(knot).pairs:
                assert (pr.kind == INTERIOR) == (pr.i % 2 == 0)


class TestReflect:
    def test_k13_5_level_zero(self):
        c = reflected_complex(K13, 0)
        assert c.gradings == (0, -1, -2, -1, 0, -1, 0, -1, 0, -1, -2, -1, 0)
        assert active(c, EXTERIOR) == [1, 3, 7]
        assert active(c, INTERIOR) == [6, 10, 12]
        assert c.euler_characteristic() == 1

    def test_trefoil_level_zero(self):
        c = reflected_complex(K3, 0)
        assert c.gradings == (-1, 0, -1)
        assert not c.active_pairs()

    def test_exterior_points_to_larger_epsilon(self):
        for pr in reflected_complex(K13, 0).active_pairs():
            if pr.kind == EXTERIOR:
                eps = stable_complex(K13).epsilon
                assert eps[pr.target - 1] > eps[pr.source - 1]

    def test_above_genus_is_stable(self):
        for knot in SMALL:
            c, s = reflected_complex(knot, genus(knot) + 1), stable_complex(knot)
            assert c.gradings == s.gradings and c.active_pairs() == s.active_pairs()

    def test_only_stable_input(self):
        with pytest.raises(ValueError):
            reflect(reflected_complex(K3, 0), 0)

    @given(st.sampled_from(SMALL), st.integers(-8, 8), st.integers(-8, 8))
    def test_levels_agree_below_both(self, knot, k1, k2):
        a, b = reflected_complex(knot, k1), reflected_complex(knot, k2)
        low = min(k1, k2)
        for e, ga, gb in zip(a.epsilon, a.gradings, b.gradings):
            if e <= low:
                assert ga == gb == e

    def test_euler_characteristic_is_unit(self):
        for knot in SMALL:
            g = genus(knot)
            assert all(abs(reflected_complex(knot, k).euler_characteristic()) == 1
                       for k in range(-g, g + 1))


class TestCk:
    def test_trefoil(self):
        c = ck_complex(K3, 0)
        assert c.complex.labels == ("[x3,-1]",) and c.gradings == (-1,)

    def test_k13_5_level_zero(self):
        c = ck_complex(K13, 0)
        assert dict(zip(c.complex.labels, c.gradings)) == {
            "[x2,-1]": -1, "[x3,-1]": 0, "[x3,-2]": -2, "[x4,-1]": -1, "[x8,-1]": -1}
        assert c.euler_characteristic() == -1
        assert verify_ck_euler(K13, 0) and verify_ck_euler(K3, 0)

    def test_empty_at_genus(self):
        for knot in SMALL:
            assert len(ck_complex(knot, genus(knot)).complex) == 0

    def test_euler_identity_every_level(self):
        for knot in SMALL:
            g = genus(knot)
            assert all(verify_ck_euler(knot, k) for k in range(-g - 1, g + 2))

    def test_truncation_plus_reflection(self):
        # per column: stable tower points in [k, eps) plus the mirror image in level k of those in (k, eps]
        for knot in SMALL[::4]:
            eps = stable_complex(knot).epsilon
            for k in range(genus(knot) + 1):
                c = ck_complex(knot, k)
                got = Counter(zip(c.column, c.gradings))
                expected = Counter()
                for i, e in enumerate(eps, start=1):
                    kept = list(range(e - 2, k - 1, -2))
                    for g in kept + [2 * k - g for g in range(e, k, -2)]:
                        expected[(i, g)] += 1
                assert got == expected, (knot, k)


class TestSvg:
    def test_stable_dots_and_heights(self, tmp_path):
        path = tmp_path / "k11.svg"
        export_svg(stable_complex(K11), path)
        root = ET.parse(path).getroot()
        dots = root.findall("svg:circle", NS)
        assert len(dots) == 11
        ys = [float(d.get("cy")) for d in dots]
        grads = [int(d.get("data-grading")) for d in dots]
        assert grads == list(stable_complex(K11).gradings)
        top = max(grads)
        assert all(y - ys[0] == UNIT * (grads[0] - g) for y, g in zip(ys, grads))
        assert all(y == 40 + UNIT * (top - g) for y, g in zip(ys, grads))
        xs = [float(d.get("cx")) for d in dots]
        assert xs == sorted(xs)
        assert not root.findall("svg:line[@class='reflection']", NS)

    def test_reflected_line_styles(self):
        root = ET.fromstring(ET.tostring(to_svg(reflected_complex(K13, 0))))
        dashed = root.findall("svg:line[@class='exterior']", NS)
        solid = root.findall("svg:line[@class='interior']", NS)
        assert len(dashed) == 3 and len(solid) == 3
        assert all(l.get("stroke-dasharray") for l in dashed)
        assert not any(l.get("stroke-dasharray") for l in solid)
        (line,) = root.findall("svg:line[@class='reflection']", NS)
        assert line.get("stroke") == "gray" and line.get("y1") == line.get("y2")

    def test_empty_canvas(self, tmp_path):
        empty = ck_complex(K3, 5)
        path = tmp_path / "empty.svg"
        export_svg(empty, path)
        root = ET.parse(path).getroot()
        assert root.tag.endswith("svg") and not root.findall("svg:circle", NS)
