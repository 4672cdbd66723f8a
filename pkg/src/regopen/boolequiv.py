"""Boolean equivalence of compact metric space descriptors.

Two such spaces have isomorphic regular-open algebras exactly when their
isolated-point counts match (as finite numbers or both countably
infinite) and their perfect parts are both empty or both not.  A
descriptor lists component kinds only; no geometry is needed for the
decision.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import EmptyDescriptor
from .space import Point, Space1D

KINDS = ("interval", "point", "convseq", "cantor")

OMEGA = "omega"


@dataclass(frozen=True)
class SpaceDescriptor:
    """Multiset of component kinds; order is not significant."""

    components: tuple[str, ...]

    def __post_init__(self):
        if not self.components:
            raise EmptyDescriptor("a compact space has at least one component")
        for kind in self.components:
            if kind not in KINDS:
                raise ValueError(f"unknown component kind {kind!r}")
        object.__setattr__(self, "components", tuple(sorted(self.components)))

    def count(self, kind: str) -> int:
        return sum(1 for k in self.components if k == kind)

    def to_json(self) -> dict:
        return {"components": [{"kind": k} for k in self.components]}


def descriptor(*kinds: str) -> SpaceDescriptor:
    return SpaceDescriptor(tuple(kinds))


def descriptor_from_json(data: dict) -> SpaceDescriptor:
    return SpaceDescriptor(tuple(entry["kind"] for entry in data["components"]))


@dataclass(frozen=True)
class BoolInvariant:
    """Complete invariant: isolated-point count and perfect-part flag."""

    isol_card: Union[int, str]  # a count, or OMEGA
    perfect_nonempty: bool

    def to_json(self) -> dict:
        return {"isol_card": self.isol_card, "perfect_nonempty": self.perfect_nonempty}


def invariant(d: SpaceDescriptor) -> BoolInvariant:
    # every point of a convergent sequence except its limit is isolated
    isol: Union[int, str] = OMEGA if d.count("convseq") else d.count("point")
    perfect = bool(d.count("interval") or d.count("cantor"))
    return BoolInvariant(isol, perfect)


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    left: BoolInvariant
    right: BoolInvariant

    def __bool__(self) -> bool:
        return self.equivalent

    def to_json(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        }


def equivalent(d1: SpaceDescriptor, d2: SpaceDescriptor) -> EquivalenceVerdict:
    a, b = invariant(d1), invariant(d2)
    return EquivalenceVerdict(a == b, a, b)


def from_space1d(space: Space1D) -> SpaceDescriptor:
    kinds = tuple(
        "point" if isinstance(comp, Point) else "interval" for comp in space.components
    )
    return SpaceDescriptor(kinds)
