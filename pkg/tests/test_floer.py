import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twobridge_floer.floer import (
    DecompositionError,
    Free,
    FloerError,
    HatModule,
    Torsion,
    Tower,
    TwistedCaseError,
    UModule,
    d_invariants,
    gysin_hat_ranks,
    hf_hat_large_n,
    hf_minus_large_n,
    hf_plus_large_n,
    hf_plus_n_surgery,
    hf_plus_negative_surgery,
    hf_plus_zero_surgery,
    torus_decomposition_check,
)
from twobridge_floer.twobridge import (
    TwoBridgeKnot,
    genus,
    inverse_form,
    knots_up_to,
    mirror,
    signature,
    spinc_invariants,
)

K3 = TwoBridgeKnot(3, 1)
K3M = TwoBridgeKnot(3, -1)
K13 = TwoBridgeKnot(13, 5)
SMALL = list(knots_up_to(41))


def graded(*summands, twisted=False):
    return UModule(tuple(summands), twisted=twisted)


def ungraded(*summands):
    return UModule(tuple(summands), "ungraded")


class TestModules:
    def test_order_does_not_matter(self):
        assert graded(Tower(0), Free(1, -1)) == graded(Free(1, -1), Tower(0))
        assert graded(Tower(0)) != graded(Tower(2))

    def test_zero_summands_rejected(self):
        with pytest.raises(FloerError):
            Free(0, 1)
        with pytest.raises(FloerError):
            Torsion(0, 1)

    def test_ungraded_has_no_gradings(self):
        with pytest.raises(FloerError):
            UModule((Tower(0),), "ungraded")
        assert graded(Torsion(2, -3), Tower(1)).ungraded() == ungraded(Torsion(2), Tower())

    @given(st.sampled_from(SMALL), st.integers(-6, 6))
    def test_json_round_trip(self, knot, k):
        for m in (hf_plus_large_n(knot, k), hf_minus_large_n(knot, k), hf_plus_zero_surgery(knot, k),
                  hf_plus_n_surgery(knot, 3, k)):
            text = json.dumps(m.to_dict(), separators=(",", ":"))
            again = UModule.from_dict(json.loads(text))
            assert again == m
            assert json.dumps(again.to_dict(), separators=(",", ":")) == text
        hat = hf_hat_large_n(knot, k)
        assert HatModule.from_dict(hat.to_dict()) == hat


class TestLargeSurgery:
    def test_trefoil(self):
        assert hf_plus_large_n(K3, 0) == graded(Torsion(1, -1), Tower(-1))
        assert hf_plus_large_n(K3, 0).to_dict() == {
            "summands": [{"type": "torsion", "length": 1, "bottom": -1},
                         {"type": "tower", "bottom": -1}],
            "grading_kind": "relative"}

    def test_k13_5(self):
        assert hf_plus_large_n(K13, 1) == graded(Free(1, 0), Tower(0))
        assert hf_plus_large_n(K13, 0) == graded(Free(1, -1), Tower(0))

    def test_positive_signature_absorbs_torsion(self):
        # sigma = 2, h_0 = 1: the tower starts two steps lower
        assert hf_plus_large_n(K3M, 0) == graded(Tower(-1))

    def test_stable_range(self):
        for knot in SMALL:
            g = genus(knot)
            assert hf_plus_large_n(knot, g) == graded(Tower(signature(knot) // 2))
            assert hf_hat_large_n(knot, g + 3).ranks == {signature(knot) // 2: 1}
            assert hf_plus_zero_surgery(knot, g).is_zero()

    def test_conjugation(self):
        for knot in SMALL[::3]:
            for k in range(1, genus(knot) + 2):
                assert hf_plus_large_n(knot, k) == hf_plus_large_n(knot, -k)
                assert hf_hat_large_n(knot, k) == hf_hat_large_n(knot, -k)
                assert hf_plus_zero_surgery(knot, k) == hf_plus_zero_surgery(knot, -k)

    def test_zero_signature_branches_agree(self):
        for knot in SMALL:
            if signature(knot) == 0:
                for k in range(genus(knot) + 1):
                    assert spinc_invariants(knot, k).h == 0
                    assert not hf_plus_large_n(knot, k).of_type(Torsion)


class TestHat:
    def test_trefoil(self):
        assert hf_hat_large_n(K3, 0).ranks == {0: 1, -1: 2}

    def test_k13_5_level_zero(self):
        # Q_0 = Z at -1 contributes at -1 and 0; the tower adds Z at 0
        assert hf_hat_large_n(K13, 0).ranks == {0: 2, -1: 1}

    def test_figure_eight_level_zero(self):
        assert hf_hat_large_n(TwoBridgeKnot(5, 3), 0).ranks == {0: 2, -1: 1}

    def test_rank_formula(self):
        for knot in SMALL:
            for k in range(genus(knot) + 1):
                inv = spinc_invariants(knot, k)
                extra = 2 if inv.h and signature(knot) <= 0 else 0
                hat = hf_hat_large_n(knot, k)
                assert hat.total_rank == 2 * abs(inv.b) + extra + 1
                assert abs(hat.euler_characteristic()) == 1

    def test_gysin_recomputation(self):
        for knot in SMALL:
            for k in range(genus(knot) + 1):
                assert gysin_hat_ranks(hf_plus_large_n(knot, k)) == hf_hat_large_n(knot, k).ranks


class TestMinus:
    def test_trefoil(self):
        assert hf_minus_large_n(K3, 0) == graded(Torsion(1, -2), Tower(-3, downward=True))

    def test_k13_5(self):
        assert hf_minus_large_n(K13, 1) == graded(Free(1, -1), Tower(-2, downward=True))

    def test_stable(self):
        assert hf_minus_large_n(K3, 5) == graded(Tower(-3, downward=True))


class TestZeroSurgery:
    def test_examples(self):
        assert hf_plus_zero_surgery(K3, 1).is_zero()
        assert hf_plus_zero_surgery(K13, 1) == graded(Free(1, 0))
        assert hf_plus_zero_surgery(K3, 0) == graded(Torsion(1, -1), Tower(None), twisted=True)

    def test_twisted_flag_serialized(self):
        assert hf_plus_zero_surgery(K3, 0).to_dict()["twisted"] is True
        assert "twisted" not in hf_plus_zero_surgery(K13, 1).to_dict()

    def test_euler_characteristic(self):
        for knot in SMALL:
            half = signature(knot) // 2
            for k in range(1, genus(knot)):
                chi = hf_plus_zero_surgery(knot, k).euler_characteristic()
                u = spinc_invariants(knot, k).u
                assert abs(chi) == abs(u)
                assert chi == (-1) ** (half % 2) * u


class TestSurgeries:
    def test_examples(self):
        assert hf_plus_n_surgery(K3, 1, 0) == ungraded(Tower(), Torsion(1))
        assert hf_plus_n_surgery(K3M, 1, 0) == ungraded(Tower())
        assert hf_plus_negative_surgery(K3, 1, 0) == ungraded(Tower())
        assert hf_plus_negative_surgery(K3M, 1, 0) == ungraded(Tower(), Torsion(1))

    def test_bad_coefficient(self):
        with pytest.raises(FloerError):
            hf_plus_n_surgery(K3, 0, 0)

    def test_spinc_reduced(self):
        assert hf_plus_n_surgery(K13, 3, 4) == hf_plus_n_surgery(K13, 3, 1)

    def test_large_n_consistency(self):
        for knot in SMALL:
            g = genus(knot)
            for n in (max(2 * g - 1, 1), 2 * g, 5 * g):
                for k in range(n):
                    i0 = min((k, k - n), key=lambda i: (abs(i), -i))
                    assert hf_plus_n_surgery(knot, n, k) == hf_plus_large_n(knot, i0).ungraded()

    def test_mirror_duality(self):
        for knot in SMALL:
            g = genus(knot)
            for n in {1, 2, max(2 * g - 1, 1), 2 * g, 5 * g}:
                for k in range(n):
                    assert hf_plus_negative_surgery(knot, n, k) == hf_plus_n_surgery(mirror(knot), n, k)

    def test_zero_signature_cases_coincide(self):
        for knot in SMALL:
            if signature(knot) == 0:
                for n in (1, 2, 3):
                    for k in range(n):
                        assert hf_plus_negative_surgery(knot, n, k) == hf_plus_n_surgery(knot, n, k)


class TestDInvariants:
    @pytest.mark.parametrize("knot, expected", [
        (TwoBridgeKnot(5, 3), (0, 0)), (K3M, (-2, 0)), (K3, (0, 2)), (TwoBridgeKnot(5, 1), (0, 2)),
    ])
    def test_examples(self, knot, expected):
        assert tuple(d_invariants(knot)) == expected

    def test_census_shape(self):
        for knot in knots_up_to(99):
            d = d_invariants(knot)
            assert d.plus_one <= 0 and d.plus_one % 2 == 0
            assert d.minus_one >= 0 and d.minus_one % 2 == 0
            assert d.plus_one == -d_invariants(mirror(knot)).minus_one


class TestTorusDecomposition:
    def test_examples(self):
        assert tuple(torus_decomposition_check(TwoBridgeKnot(11, 5), 1)) == (0, 0)
        assert tuple(torus_decomposition_check(K13, 1)) == (1, 0)
        with pytest.raises(TwistedCaseError):
            torus_decomposition_check(TwoBridgeKnot(7, 3), 0)

    def test_holds_on_small_census(self):
        for knot in SMALL:
            for k in range(1, genus(knot)):
                res = torus_decomposition_check(knot, k)
                assert res.q_grading == k - 1 and res.q_rank == abs(spinc_invariants(knot, k).b)

    def test_failure_is_reported(self, monkeypatch):
        import twobridge_floer.floer as fl

        monkeypatch.setattr(fl, "torus_companion", lambda k: TwoBridgeKnot(5, 1))
        with pytest.raises(DecompositionError):
            fl.torus_decomposition_check(K3, 1)


class TestFormInvariance:
    def test_all_ops(self):
        for knot in SMALL:
            alt = inverse_form(knot)
            assert d_invariants(alt) == d_invariants(knot)
            for k in range(genus(knot) + 1):
                assert hf_plus_large_n(alt, k) == hf_plus_large_n(knot, k)
                assert hf_hat_large_n(alt, k) == hf_hat_large_n(knot, k)
                assert hf_plus_zero_surgery(alt, k) == hf_plus_zero_surgery(knot, k)
                assert hf_plus_n_surgery(alt, 2, k) == hf_plus_n_surgery(knot, 2, k)
