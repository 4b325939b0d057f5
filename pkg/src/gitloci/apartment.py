"""GIT computations on one apartment of the translation space.

Given the valued weight configuration of a point (weights of a weight
basis of sections and the valuations of those sections at the point), this
module evaluates the difference function ``delta`` on apartment
coordinates, its minimum and minimum locus, moves the base point along
the torus, and classifies the specialization with the Hilbert-Mumford
criterion relative to the torus.

Sign conventions: a torus element with coordinate ``v`` (``v_j = ord t_j``)
multiplies the section of weight ``w`` by ``t^w``, hence adds ``<w, v>`` to
its valuation, and

    delta(v) = -min_i (y_i + <w_i, v>) = conjugate(-v)

for a normalized configuration (``min y_i = 0``, so ``delta(0) = 0``).
Values are the degree-one normalization: for sections of degree ``m`` the
order function differs from ``m * delta`` by a constant.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .convex import (
    Location,
    Polytope,
    ValuedWeightConfig,
    conjugate_eval,
    convex_hull,
    lower_hull_value,
    subdiff_zero,
)
from .errors import DomainError
from .linalg import vec
from .valued_field import INF, NEG_INF, ExtendedRational

__all__ = [
    "ApartmentPoint",
    "ReductionClass",
    "apartment_min",
    "apartment_min_locus",
    "classify_reduction",
    "delta_on_apartment",
    "normalize_config",
    "translate_config",
]


@dataclass(frozen=True)
class ApartmentPoint:
    """Rational apartment coordinate ``v``; ``base`` names the conjugating element."""

    v: tuple
    base: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "v", vec(self.v))


PointLike = Union[ApartmentPoint, Sequence]


def _coords(config: ValuedWeightConfig, p: PointLike) -> tuple:
    v = p.v if isinstance(p, ApartmentPoint) else vec(p)
    if len(v) != config.rank:
        raise DomainError(f"dimension mismatch: point of length {len(v)} for rank {config.rank}")
    return v


class ReductionClass(str, enum.Enum):
    """Torus-relative Hilbert-Mumford class of the specialized point."""

    UNSTABLE = "unstable"
    SEMISTABLE_NOT_STABLE = "semistable_not_stable"
    STABLE = "stable"

    @property
    def semistable(self) -> bool:
        return self is not ReductionClass.UNSTABLE

    def __str__(self):
        return self.value


def _require_normalized(config: ValuedWeightConfig) -> None:
    if not config.normalized:
        raise DomainError(
            f"configuration is not normalized (minimum value {config.min_value}); apply normalize_config first"
        )


def normalize_config(config: ValuedWeightConfig) -> tuple[ValuedWeightConfig, Fraction]:
    """Subtract the minimum finite value; returns ``(normalized, shift)``."""
    c = config.min_value
    return config.shifted(-c), c


def delta_on_apartment(config: ValuedWeightConfig, p: PointLike) -> Fraction:
    """The difference function at apartment coordinate ``p``."""
    _require_normalized(config)
    v = _coords(config, p)
    return conjugate_eval(config, tuple(-c for c in v))


def apartment_min(config: ValuedWeightConfig) -> ExtendedRational:
    """Minimum of ``delta`` over the apartment, or ``NEG_INF`` if unbounded below."""
    _require_normalized(config)
    base = lower_hull_value(config, (0,) * config.rank)
    return NEG_INF if base is INF else -base


def apartment_min_locus(config: ValuedWeightConfig) -> Polytope:
    """The set of apartment coordinates where ``delta`` attains its minimum."""
    _require_normalized(config)
    return subdiff_zero(config).negated()


def translate_config(config: ValuedWeightConfig, u: PointLike, renormalize: bool = False) -> ValuedWeightConfig:
    """Configuration of the point moved by the torus element with coordinate ``u``."""
    u = _coords(config, u)
    entries = tuple((w, y if y is INF else y + sum(a * b for a, b in zip(w, u))) for w, y in config.entries)
    moved = ValuedWeightConfig._trusted(config.rank, entries)
    if renormalize:
        moved, _ = normalize_config(moved)
    return moved


def classify_reduction(config: ValuedWeightConfig) -> ReductionClass:
    """Hilbert-Mumford class of the specialization, relative to this torus.

    The specialization keeps exactly the weights with value 0, so the
    test is whether 0 lies in (the ambient interior of) their hull.
    ``UNSTABLE`` certifies that the base point lies outside the
    semistable reduction locus; the semistable classes are certificates
    for this torus only.
    """
    _require_normalized(config)
    zero_set = [w for w, y in config.finite_entries if y == 0]
    if len(zero_set) == 1:
        # a single point never has ambient interior (rank >= 1)
        return ReductionClass.SEMISTABLE_NOT_STABLE if not any(zero_set[0]) else ReductionClass.UNSTABLE
    loc = convex_hull(zero_set, config.rank).query((0,) * config.rank)
    if loc is Location.INTERIOR:
        return ReductionClass.STABLE
    if loc is Location.BOUNDARY:
        return ReductionClass.SEMISTABLE_NOT_STABLE
    return ReductionClass.UNSTABLE
