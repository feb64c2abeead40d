"""Lens-system planning for optical fractional Fourier transforms.

A single lens of focal length f placed symmetrically at distance
z = 2 f sin^2(theta/2) from input and output planes realizes a theta-order
FRFT, i.e. a phase-space rotation by theta.  A single symmetric stage is
realizable for theta in (0, pi); larger rotations are composed from several
stages using FRFT additivity.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi
Z_TOL_CM = 0.05
# realizable single-stage order range (open: sin(theta) > 0 needed)
MAX_STAGE_ORDER = math.pi - 1e-9
MIN_STAGE_ORDER = 1e-9


class PlanNotFoundError(ValueError):
    """No lens arrangement reaches the target rotation within tolerance."""


def frft_distance(order: float, focal_cm: float) -> float:
    """Symmetric lens distance z = 2 f sin^2(theta/2) in centimeters."""
    if not 0.0 < order < TWO_PI:
        raise ValueError(f"order must be in (0, 2*pi), got {order}")
    if not focal_cm > 0.0:
        raise ValueError(f"focal length must be positive, got {focal_cm}")
    return 2.0 * focal_cm * math.sin(0.5 * order) ** 2


def frft_order_from_distance(z_cm: float, focal_cm: float) -> float:
    """Inverse design rule: the order in (0, pi] realized at distance z."""
    if not focal_cm > 0.0:
        raise ValueError(f"focal length must be positive, got {focal_cm}")
    if not 0.0 < z_cm <= 2.0 * focal_cm:
        raise ValueError(f"need 0 < z <= 2f, got z={z_cm}, f={focal_cm}")
    return 2.0 * math.asin(math.sqrt(z_cm / (2.0 * focal_cm)))


def compose_orders(orders) -> float:
    """Sum of FRFT orders modulo 2*pi (additivity of the FRFT)."""
    orders = list(orders)
    if not orders:
        raise ValueError("orders must be non-empty")
    return math.fsum(orders) % TWO_PI


@dataclass(frozen=True)
class FrftStage:
    """One symmetric-lens FRFT stage."""

    order: float
    focal_cm: float
    z_cm: float

    def __post_init__(self) -> None:
        if not 0.0 < self.order < TWO_PI:
            raise ValueError(f"order must be in (0, 2*pi), got {self.order}")
        if not self.focal_cm > 0.0:
            raise ValueError(f"focal length must be positive, got {self.focal_cm}")
        expected = frft_distance(self.order, self.focal_cm)
        if abs(self.z_cm - expected) > Z_TOL_CM:
            raise ValueError(
                f"z={self.z_cm}cm inconsistent with 2f sin^2(theta/2)="
                f"{expected:.3f}cm for order={self.order}, f={self.focal_cm}"
            )


@dataclass(frozen=True)
class FrftPlan:
    """Ordered lens stages composing a target rotation."""

    stages: tuple[FrftStage, ...]
    target_order: float
    angle_tol: float = 1e-9

    def __post_init__(self) -> None:
        if self.stages:
            composed = compose_orders(s.order for s in self.stages)
            dev = _angle_deviation(composed, self.target_order)
        else:
            dev = _angle_deviation(0.0, self.target_order)
        if dev > self.angle_tol:
            raise ValueError(
                f"composed order deviates from target by {dev} rad "
                f"(tolerance {self.angle_tol})"
            )

    @property
    def composed_order(self) -> float:
        return compose_orders(s.order for s in self.stages) if self.stages else 0.0

    @property
    def total_z_cm(self) -> float:
        return math.fsum(s.z_cm for s in self.stages)


def _angle_deviation(a: float, b: float) -> float:
    """Distance between two angles modulo 2*pi."""
    d = (a - b) % TWO_PI
    return min(d, TWO_PI - d)


def _stage_orders(target: float, k: int) -> list[float] | None:
    """Split a reduced target into k realizable stage orders.

    The first k-1 stages are quarter rotations (pi/2, the standard Fourier
    lens arrangement); the last stage absorbs the remainder.
    """
    last = target - (k - 1) * (math.pi / 2.0)
    if not MIN_STAGE_ORDER < last < MAX_STAGE_ORDER:
        return None
    return [math.pi / 2.0] * (k - 1) + [last]


def plan_lens_system(
    target: float,
    inventory,
    max_stages: int = 2,
    angle_tol: float = 1e-6,
) -> FrftPlan:
    """Search lens assignments realizing the target rotation.

    Each focal length in the inventory is a physical lens usable at most
    once.  Candidate plans are ranked by deviation from the target, then by
    stage count, then by total propagation distance.
    """
    inventory = [float(f) for f in inventory]
    if not inventory:
        raise ValueError("lens inventory is empty")
    if any(f <= 0.0 for f in inventory):
        raise ValueError("focal lengths must be positive")
    if max_stages < 1:
        raise ValueError(f"max_stages must be >= 1, got {max_stages}")

    reduced = target % TWO_PI
    if reduced <= angle_tol or TWO_PI - reduced <= angle_tol:
        return FrftPlan(stages=(), target_order=target, angle_tol=angle_tol)

    best = None  # (total_z, stages)
    k_limit = min(max_stages, len(inventory))
    for k in range(1, k_limit + 1):
        orders = _stage_orders(reduced, k)
        if orders is None:
            continue
        for focals in sorted(set(itertools.permutations(inventory, k))):
            stages = tuple(
                FrftStage(order=o, focal_cm=f, z_cm=frft_distance(o, f))
                for o, f in zip(orders, focals)
            )
            total_z = math.fsum(s.z_cm for s in stages)
            if best is None or total_z < best[0] - 1e-12:
                best = (total_z, stages)
        if best is not None:
            # exact plans exist at this stage count; fewer stages wins
            break
    if best is None:
        reachable = (k_limit - 1) * (math.pi / 2.0) + MAX_STAGE_ORDER
        deviation = max(0.0, reduced - reachable)
        raise PlanNotFoundError(
            f"no plan within {angle_tol} rad of target {target}: best "
            f"achievable deviation with {k_limit} stage(s) is {deviation:.6f} rad"
        )
    return FrftPlan(stages=best[1], target_order=target, angle_tol=angle_tol)
