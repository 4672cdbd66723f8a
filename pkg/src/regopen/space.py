"""Compact rational-line spaces and their exact region calculus.

A space is a finite disjoint union of closed rational intervals and
isolated rational points, listed left to right with positive gaps.  A
region is an arbitrary finite union of subintervals of the space, kept in
a canonical sorted span form so that set equality is structural equality.

All topology is relative to the space: an isolated point is open, and a
component endpoint has no outside neighbours.  Everything is exact; no
floating point enters any computation.
"""
from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, NamedTuple, Optional, Union

from .errors import EmptySubspace, NotClosed, SpaceMismatch
from .rationals import Rational, rat


@dataclass(frozen=True)
class Interval:
    """Closed interval component [a, b] with a < b."""

    a: Rational
    b: Rational

    def __post_init__(self):
        object.__setattr__(self, "a", rat(self.a))
        object.__setattr__(self, "b", rat(self.b))
        if not self.a < self.b:
            raise ValueError(f"interval needs a < b, got [{self.a}, {self.b}]")


@dataclass(frozen=True)
class Point:
    """Isolated point component."""

    at: Rational

    def __post_init__(self):
        object.__setattr__(self, "at", rat(self.at))


Component = Union[Interval, Point]


def _bounds(comp: Component):
    if isinstance(comp, Point):
        return comp.at, comp.at
    return comp.a, comp.b


@dataclass(frozen=True)
class Space1D:
    """A compact subset of the rational line in component form."""

    components: tuple[Component, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("space needs at least one component")
        for c in comps:
            if not isinstance(c, (Interval, Point)):
                raise ValueError(f"bad component: {c!r}")
        for left, right in zip(comps, comps[1:]):
            if not _bounds(left)[1] < _bounds(right)[0]:
                raise ValueError("components must be sorted with positive gaps")

    def contains(self, x: Rational) -> bool:
        for c in self.components:
            lo, hi = _bounds(c)
            if lo <= x <= hi:
                return True
        return False

    def full_region(self) -> "Region":
        return Region(self, tuple(Span(*_bounds(c), True, True) for c in self.components))

    def empty_region(self) -> "Region":
        return Region(self, ())

    def interval_components(self) -> tuple[Interval, ...]:
        return tuple(c for c in self.components if isinstance(c, Interval))

    def point_components(self) -> tuple[Point, ...]:
        return tuple(c for c in self.components if isinstance(c, Point))


@dataclass(frozen=True)
class Span:
    """One maximal run of a region: endpoints plus inclusion flags.

    lo == hi is a single point and must have both flags set; raw input
    spans that are reversed or degenerate without both flags are empty.
    """

    lo: Rational
    hi: Rational
    lo_incl: bool
    hi_incl: bool

    def __post_init__(self):
        object.__setattr__(self, "lo", rat(self.lo))
        object.__setattr__(self, "hi", rat(self.hi))

    def contains(self, x: Rational) -> bool:
        if not self.lo <= x <= self.hi:
            return False
        if self.lo < x < self.hi:
            return True
        if self.lo == self.hi:
            return self.lo_incl and self.hi_incl
        return self.lo_incl if x == self.lo else self.hi_incl

    @property
    def is_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and not (self.lo_incl and self.hi_incl)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi and self.lo_incl and self.hi_incl


@dataclass(frozen=True)
class Region:
    """Canonical region of a space. Build via canonicalize/Region.make."""

    space: Space1D
    spans: tuple[Span, ...]

    @staticmethod
    def make(space: Space1D, spans: Iterable[Span]) -> "Region":
        return canonicalize(space, spans).region

    @property
    def is_empty(self) -> bool:
        return not self.spans

    @cached_property
    def _los(self) -> tuple[Rational, ...]:
        return tuple(s.lo for s in self.spans)

    def contains(self, x: Rational) -> bool:
        # canonical spans are sorted and disjoint: one candidate suffices
        i = bisect_right(self._los, x)
        return i > 0 and self.spans[i - 1].contains(x)

    # --- set operations (exact, relative to the space) ---

    def union(self, other: "Region") -> "Region":
        _check_space(self, other)
        return _combine(self, other, lambda a, b: a or b)

    def intersect(self, other: "Region") -> "Region":
        _check_space(self, other)
        return _combine(self, other, lambda a, b: a and b)

    def difference(self, other: "Region") -> "Region":
        _check_space(self, other)
        return _combine(self, other, lambda a, b: a and not b)

    def complement(self) -> "Region":
        pts = _endpoints(self.spans)
        return Region(self.space, _rebuild(self.space, pts, lambda x: not self.contains(x)))

    # --- topology (relative to the space) ---

    def closure(self) -> "Region":
        out: list[Span] = []
        for s in self.spans:
            closed = Span(s.lo, s.hi, True, True)
            if out and out[-1].hi == closed.lo:
                out[-1] = Span(out[-1].lo, closed.hi, True, True)
            else:
                out.append(closed)
        return Region(self.space, tuple(out))

    def interior(self) -> "Region":
        # canonical spans are never adjacent, so interior works span by span
        comps = self.space.components
        ci = 0
        out = []
        for s in self.spans:
            while not (_bounds(comps[ci])[0] <= s.lo and s.hi <= _bounds(comps[ci])[1]):
                ci += 1
            comp = comps[ci]
            if isinstance(comp, Point):
                out.append(s)
                continue
            t = Span(s.lo, s.hi, s.lo_incl and s.lo == comp.a, s.hi_incl and s.hi == comp.b)
            if not t.is_empty:
                out.append(t)
        return Region(self.space, tuple(out))

    def perp(self) -> "Region":
        """Complement of the closure: the Boolean negation on regular opens."""
        return self.closure().complement()

    def regularize(self) -> "Region":
        """Interior of the closure."""
        return self.closure().interior()

    def is_regular_open(self) -> bool:
        return self == self.regularize()

    def is_open(self) -> bool:
        return self == self.interior()

    def is_closed(self) -> bool:
        return self == self.closure()


class CanonicalizeResult(NamedTuple):
    region: Region
    clipped: bool


def _check_space(a: Region, b: Region) -> None:
    if a.space != b.space:
        raise SpaceMismatch("regions live over different spaces")


def _endpoints(spans: Iterable[Span]) -> list[Rational]:
    pts = []
    for s in spans:
        pts.append(s.lo)
        pts.append(s.hi)
    return pts


def _rebuild(space: Space1D, breakpoints: Iterable[Rational], member: Callable[[Rational], bool]) -> tuple[Span, ...]:
    """Reassemble canonical spans from an exact membership predicate.

    Membership must be constant on the open intervals between consecutive
    breakpoints inside each component; it is sampled at midpoints.
    """
    bps = sorted(set(breakpoints))
    out: list[Span] = []
    for comp in space.components:
        if isinstance(comp, Point):
            if member(comp.at):
                out.append(Span(comp.at, comp.at, True, True))
            continue
        pts = [comp.a] + [p for p in bps if comp.a < p < comp.b] + [comp.b]
        cur: Optional[list] = None  # [lo, hi, lo_incl, hi_incl]
        for i, p in enumerate(pts):
            if member(p):
                if cur is not None and cur[1] == p:
                    cur[3] = True
                else:
                    if cur is not None:
                        out.append(Span(*cur))
                    cur = [p, p, True, True]
            else:
                if cur is not None:
                    out.append(Span(*cur))
                    cur = None
            if i + 1 < len(pts):
                q = pts[i + 1]
                if member((p + q) / 2):
                    if cur is not None and cur[1] == p and cur[3]:
                        cur[1], cur[3] = q, False
                    else:
                        if cur is not None:
                            out.append(Span(*cur))
                        cur = [p, q, False, False]
                else:
                    if cur is not None:
                        out.append(Span(*cur))
                        cur = None
        if cur is not None:
            out.append(Span(*cur))
    return tuple(out)


def _combine(a: Region, b: Region, op: Callable[[bool, bool], bool]) -> Region:
    pts = _endpoints(a.spans) + _endpoints(b.spans)
    return Region(a.space, _rebuild(a.space, pts, lambda x: op(a.contains(x), b.contains(x))))


def canonicalize(space: Space1D, raw_spans: Iterable[Span]) -> CanonicalizeResult:
    """Clip raw spans to the space and merge them into canonical form.

    The flag reports whether any nonempty raw span stuck out of the space.
    """
    live = [s for s in raw_spans if not s.is_empty]
    clipped = any(not _inside_some_component(space, s) for s in live)

    def member(x: Rational) -> bool:
        for s in live:
            if s.contains(x):
                return True
        return False

    spans = _rebuild(space, _endpoints(live), member)
    return CanonicalizeResult(Region(space, spans), clipped)


def _inside_some_component(space: Space1D, s: Span) -> bool:
    for c in space.components:
        lo, hi = _bounds(c)
        if lo <= s.lo and s.hi <= hi:
            return True
    return False


# --- the Boolean algebra of regular open sets ---


def ropen_join(u: Region, v: Region) -> Region:
    """Join: interior of the closure of the union."""
    _check_space(u, v)
    return u.union(v).regularize()


def ropen_meet(u: Region, v: Region) -> Region:
    """Meet: plain intersection (regular opens are closed under it)."""
    _check_space(u, v)
    return u.intersect(v)


def ropen_neg(u: Region) -> Region:
    """Negation: complement of the closure."""
    return u.perp()


# --- atomic/atomless decomposition ---


class Decomposition(NamedTuple):
    isolated: tuple[Rational, ...]
    atomic_part: Region      # closure of the isolated points
    atomless_part: Region    # closure of the rest
    sub_atomic: Optional[Space1D]
    sub_atomless: Optional[Space1D]


def decompose_space(space: Space1D) -> Decomposition:
    """Split a space into the closure of its isolated points and the rest."""
    isolated = tuple(p.at for p in space.point_components())
    atomic = Region(space, tuple(Span(x, x, True, True) for x in isolated))
    atomless = Region(space, tuple(Span(c.a, c.b, True, True) for c in space.interval_components()))
    sub_a = Space1D(space.point_components()) if isolated else None
    sub_c = Space1D(space.interval_components()) if space.interval_components() else None
    return Decomposition(isolated, atomic, atomless, sub_a, sub_c)


def subspace(space: Space1D, closed: Region) -> Space1D:
    """View a nonempty closed region as a compact space in its own right."""
    if closed.space != space:
        raise SpaceMismatch("region lives over a different space")
    if closed.is_empty:
        raise EmptySubspace("cannot take the empty subspace")
    if closed != closed.closure():
        raise NotClosed("subspace requires a closed region")
    comps: list[Component] = []
    for s in closed.spans:
        comps.append(Point(s.lo) if s.lo == s.hi else Interval(s.lo, s.hi))
    return Space1D(tuple(comps))


def embed(region: Region, space: Space1D) -> Region:
    """Reinterpret a subspace region inside the ambient space."""
    res = canonicalize(space, region.spans)
    if res.clipped:
        raise SpaceMismatch("region does not fit inside the ambient space")
    return res.region


def theta(space: Space1D, w_atomic: Optional[Region], w_atomless: Optional[Region]) -> Region:
    """Recombine regular opens of the two decomposition factors.

    Each argument lives over the corresponding subspace; pass None for a
    factor the space does not have.  The result is the regularized union
    of the embedded pieces.
    """
    dec = decompose_space(space)
    parts: list[Region] = []
    for w, sub in ((w_atomic, dec.sub_atomic), (w_atomless, dec.sub_atomless)):
        if sub is None:
            if w is not None and not w.is_empty:
                raise SpaceMismatch("space has no matching factor for argument")
            continue
        if w is None:
            continue
        if w.space != sub:
            raise SpaceMismatch("argument does not live over the decomposition factor")
        parts.append(embed(w, space))
    acc = space.empty_region()
    for p in parts:
        acc = acc.union(p)
    return acc.regularize()


# --- seeded random regular opens ---


def random_regular_open(space: Space1D, seed: int, complexity: int = 3) -> Region:
    """Deterministic pseudo-random regular open with at most `complexity` spans."""
    rng = random.Random(seed)
    raw: list[Span] = []
    for _ in range(rng.randint(1, max(1, complexity))):
        comp = rng.choice(space.components)
        if isinstance(comp, Point):
            raw.append(Span(comp.at, comp.at, True, True))
            continue
        den = 1 << rng.randint(2, 6)
        i = rng.randrange(den)
        j = rng.randrange(i + 1, den + 1)
        width = comp.b - comp.a
        lo = comp.a + width * i / den
        hi = comp.a + width * j / den
        raw.append(Span(lo, hi, False, False))
    return canonicalize(space, raw).region.regularize()
