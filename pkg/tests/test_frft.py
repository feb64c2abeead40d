import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prbox import (
    FrftPlan,
    FrftStage,
    compose_orders,
    frft_distance,
    frft_order_from_distance,
    plan_lens_system,
)
from prbox.frft import PlanNotFoundError

PI = math.pi

# the six lens-bench rows: (order, focal length cm, bench distance cm)
BENCH_ROWS = [
    (PI / 2, 25.0, 25.0),
    (29 * PI / 50, 20.0, 25.0),
    (PI / 2, 25.0, 25.0),
    (3 * PI / 4, 15.0, 25.6),
    (PI / 2, 50.0, 50.0),
    (37 * PI / 50, 30.0, 50.6),
]


class TestFrftDistance:
    @pytest.mark.parametrize(
        "order,f,z",
        [
            (PI / 2, 25.0, 25.0),
            (3 * PI / 4, 15.0, 25.607),
            (29 * PI / 50, 20.0, 24.978),
            (37 * PI / 50, 30.0, 50.537),
        ],
    )
    def test_known_distances(self, order, f, z):
        assert frft_distance(order, f) == pytest.approx(z, abs=5e-3)

    def test_monotone_in_order(self):
        zs = [frft_distance(t, 20.0) for t in [0.1, 0.5, 1.0, 2.0, 3.0, PI]]
        assert all(a < b for a, b in zip(zs, zs[1:]))

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            frft_distance(0.0, 25.0)
        with pytest.raises(ValueError):
            frft_distance(2 * PI, 25.0)
        with pytest.raises(ValueError):
            frft_distance(PI / 2, -1.0)

    @settings(max_examples=50)
    @given(
        st.floats(min_value=1e-3, max_value=PI - 1e-3),
        st.floats(min_value=1.0, max_value=100.0),
    )
    def test_roundtrip_with_inverse(self, order, f):
        z = frft_distance(order, f)
        assert frft_order_from_distance(z, f) == pytest.approx(order, rel=1e-9)


class TestComposeOrders:
    def test_reference_compositions(self):
        assert compose_orders([PI / 2, 29 * PI / 50]) == pytest.approx(27 * PI / 25)
        assert compose_orders([PI / 2, 3 * PI / 4]) == pytest.approx(5 * PI / 4)

    def test_single_order(self):
        assert compose_orders([1.234]) == pytest.approx(1.234)

    def test_wraps_modulo_two_pi(self):
        assert compose_orders([3 * PI / 2, 3 * PI / 2]) == pytest.approx(PI)

    @settings(max_examples=50)
    @given(st.lists(st.floats(min_value=0.0, max_value=10.0), min_size=2, max_size=5))
    def test_order_independent(self, orders):
        assert compose_orders(orders) == pytest.approx(
            compose_orders(list(reversed(orders))), abs=1e-9
        )

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            compose_orders([])


class TestStageAndPlan:
    def test_stage_consistency_enforced(self):
        FrftStage(order=PI / 2, focal_cm=25.0, z_cm=25.0)
        with pytest.raises(ValueError, match="inconsistent"):
            FrftStage(order=PI / 2, focal_cm=25.0, z_cm=26.0)

    def test_plan_checks_composition(self):
        stage = FrftStage(order=PI / 2, focal_cm=25.0, z_cm=25.0)
        with pytest.raises(ValueError, match="deviates"):
            FrftPlan(stages=(stage,), target_order=PI)


class TestPlanner:
    def test_two_stage_bench_layout(self):
        plan = plan_lens_system(5 * PI / 4, [25.0, 15.0], max_stages=2)
        assert len(plan.stages) == 2
        first, second = plan.stages
        assert first.order == pytest.approx(PI / 2)
        assert first.focal_cm == 25.0
        assert first.z_cm == pytest.approx(25.0, abs=0.05)
        assert second.order == pytest.approx(3 * PI / 4)
        assert second.focal_cm == 15.0
        assert second.z_cm == pytest.approx(25.6, abs=0.05)

    def test_single_stage_fourier(self):
        plan = plan_lens_system(PI / 2, [50.0], max_stages=1)
        assert len(plan.stages) == 1
        assert plan.stages[0].focal_cm == 50.0
        assert plan.stages[0].z_cm == pytest.approx(50.0, abs=1e-9)

    def test_zero_target_is_identity(self):
        plan = plan_lens_system(0.0, [25.0], max_stages=2)
        assert plan.stages == ()
        assert plan.composed_order == 0.0

    def test_empty_inventory_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            plan_lens_system(PI / 2, [], max_stages=1)

    def test_unreachable_target_reports_best_deviation(self):
        with pytest.raises(PlanNotFoundError, match="deviation"):
            plan_lens_system(3 * PI / 2, [25.0], max_stages=1)

    def test_composed_order_matches_target(self):
        for target in [0.3, PI / 2, PI - 0.1, 5 * PI / 4, 7 * PI / 4]:
            plan = plan_lens_system(target, [25.0, 15.0, 30.0], max_stages=3)
            assert plan.composed_order == pytest.approx(target % (2 * PI), abs=1e-9)

    def test_superset_inventory_never_worse(self):
        # with one lens the target is unreachable; adding lenses fixes it
        with pytest.raises(PlanNotFoundError):
            plan_lens_system(5 * PI / 4, [25.0], max_stages=3)
        plan = plan_lens_system(5 * PI / 4, [25.0, 15.0], max_stages=3)
        assert plan.composed_order == pytest.approx(5 * PI / 4)

    def test_prefers_fewer_stages(self):
        plan = plan_lens_system(3 * PI / 4, [25.0, 15.0], max_stages=2)
        assert len(plan.stages) == 1

    def test_ties_broken_by_total_distance(self):
        plan = plan_lens_system(3 * PI / 4, [25.0, 15.0], max_stages=1)
        # a single 3pi/4 stage is cheaper with the shorter lens
        assert plan.stages[0].focal_cm == 15.0
