"""Piecewise-linear maps between compact rational-line spaces.

A map carries, per interval component of the domain, a run of affine
pieces that tile the component, plus an image point for every isolated
point.  Everything (images, preimages, the irreducibility decision) is
exact span arithmetic; no sampling enters the library semantics.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import (
    Discontinuity,
    ImageEscapesCodomain,
    NotSurjective,
    SpaceMismatch,
)
from .rationals import Rational, rat
from .space import Interval, Point, Region, Space1D, Span, canonicalize


@dataclass(frozen=True)
class Piece:
    """One affine piece: x ↦ slope·x + intercept on [src_lo, src_hi]."""

    src_lo: Rational
    src_hi: Rational
    slope: Rational
    intercept: Rational

    def __post_init__(self):
        for name in ("src_lo", "src_hi", "slope", "intercept"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if not self.src_lo < self.src_hi:
            raise ValueError("piece needs src_lo < src_hi")

    def value(self, x: Rational) -> Rational:
        return self.slope * x + self.intercept

    def image_interval(self) -> tuple[Rational, Rational]:
        a, b = self.value(self.src_lo), self.value(self.src_hi)
        return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class PLMap:
    """A continuous piecewise-linear map between two spaces."""

    domain: Space1D
    codomain: Space1D
    pieces: tuple[tuple[Piece, ...], ...]  # one run per interval component
    point_images: tuple[tuple[Rational, Rational], ...] = ()  # (point, image)

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(tuple(run) for run in self.pieces))
        object.__setattr__(
            self, "point_images", tuple((rat(p), rat(v)) for p, v in self.point_images)
        )
        self.validate()

    def validate(self) -> None:
        comps = self.domain.interval_components()
        if len(self.pieces) != len(comps):
            raise ValueError("one piece run per interval component required")
        for comp, run in zip(comps, self.pieces):
            if not run:
                raise ValueError(f"empty piece run for component [{comp.a}, {comp.b}]")
            if run[0].src_lo != comp.a or run[-1].src_hi != comp.b:
                raise ValueError("pieces must tile the component exactly")
            for left, right in zip(run, run[1:]):
                if left.src_hi != right.src_lo:
                    raise ValueError("pieces must be consecutive")
                if left.value(left.src_hi) != right.value(right.src_lo):
                    raise Discontinuity(left.src_hi)
            for piece in run:
                lo, hi = piece.image_interval()
                if not self._codomain_holds_interval(lo, hi):
                    raise ImageEscapesCodomain((piece.src_lo, piece.src_hi))
        points = {p.at for p in self.domain.point_components()}
        given = {p for p, _ in self.point_images}
        if points != given:
            raise ValueError("point_images must cover the isolated points exactly")
        if len(given) != len(self.point_images):
            raise ValueError("duplicate point in point_images")
        for p, v in self.point_images:
            if not self.codomain.contains(v):
                raise ImageEscapesCodomain(p)

    def _codomain_holds_interval(self, lo: Rational, hi: Rational) -> bool:
        for comp in self.codomain.components:
            if isinstance(comp, Point):
                if lo == hi == comp.at:
                    return True
            elif comp.a <= lo and hi <= comp.b:
                return True
        return False

    # --- evaluation and set maps ---

    def value(self, x: Rational) -> Rational:
        for p, v in self.point_images:
            if x == p:
                return v
        for comp, run in zip(self.domain.interval_components(), self.pieces):
            if comp.a <= x <= comp.b:
                for piece in run:
                    if piece.src_lo <= x <= piece.src_hi:
                        return piece.value(x)
        raise ValueError(f"{x} not in the domain")

    def image(self, r: Region) -> Region:
        if r.space != self.domain:
            raise SpaceMismatch("region is not over the domain")
        raw: list[Span] = []
        for run in self.pieces:
            for piece in run:
                src = Span(piece.src_lo, piece.src_hi, True, True)
                for s in r.spans:
                    part = _span_intersect(s, src)
                    if part is not None:
                        raw.append(_affine_span(part, piece.slope, piece.intercept))
        for p, v in self.point_images:
            if r.contains(p):
                raw.append(Span(v, v, True, True))
        return canonicalize(self.codomain, raw).region

    def preimage(self, s: Region) -> Region:
        if s.space != self.codomain:
            raise SpaceMismatch("region is not over the codomain")
        raw: list[Span] = []
        for run in self.pieces:
            for piece in run:
                src = Span(piece.src_lo, piece.src_hi, True, True)
                for t in s.spans:
                    if piece.slope == 0:
                        if t.contains(piece.intercept):
                            raw.append(src)
                        continue
                    back = _affine_span(t, 1 / piece.slope, -piece.intercept / piece.slope)
                    part = _span_intersect(back, src)
                    if part is not None:
                        raw.append(part)
        for p, v in self.point_images:
            if s.contains(v):
                raw.append(Span(p, p, True, True))
        return canonicalize(self.domain, raw).region

    def is_surjective(self) -> bool:
        return self.image(self.domain.full_region()) == self.codomain.full_region()

    # --- the induced maps on regular opens ---

    def psi(self, u: Region) -> Region:
        """Interior of the image of the closure."""
        return self.image(u.closure()).interior()

    def phi(self, v: Region) -> Region:
        """Interior of the closure of the preimage."""
        return self.preimage(v).closure().interior()


def _span_intersect(a: Span, b: Span) -> Optional[Span]:
    lo = max(a.lo, b.lo)
    hi = min(a.hi, b.hi)
    if lo > hi:
        return None
    lo_incl = a.contains(lo) and b.contains(lo)
    hi_incl = a.contains(hi) and b.contains(hi)
    out = Span(lo, hi, lo_incl, hi_incl)
    return None if out.is_empty else out


def _affine_span(s: Span, slope: Rational, intercept: Rational) -> Span:
    if slope == 0:
        return Span(intercept, intercept, True, True)
    lo = slope * s.lo + intercept
    hi = slope * s.hi + intercept
    if slope > 0:
        return Span(lo, hi, s.lo_incl, s.hi_incl)
    return Span(hi, lo, s.hi_incl, s.lo_incl)


@dataclass(frozen=True)
class IrreducibilityVerdict:
    """Decision plus, when reducible, a verified open witness."""

    irreducible: bool
    witness: Optional[Region] = None
    reason: str = ""

    def to_json(self) -> dict:
        from .jsonio import encode_region

        out: dict = {"irreducible": self.irreducible}
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = encode_region(self.witness)
        return out


def is_irreducible(m: PLMap) -> IrreducibilityVerdict:
    """Decide whether no proper closed subset of the domain still surjects.

    The decision walks three exact rules: a removable isolated point, a
    constant piece, or a monotone piece whose image interior overlaps the
    union of the other branches.  Any witness is re-verified by exact
    recomputation before it is returned.
    """
    if not m.is_surjective():
        raise NotSurjective("irreducibility is only defined for surjective maps")

    full = m.domain.full_region()
    x_full = m.codomain.full_region()

    def verified(witness: Region, reason: str) -> IrreducibilityVerdict:
        rest = full.difference(witness)
        if m.image(rest) != x_full:
            raise AssertionError(f"internal witness failed re-verification: {reason}")
        return IrreducibilityVerdict(False, witness, reason)

    # rule 1: an isolated point whose removal keeps the map onto
    for p, _ in m.point_images:
        candidate = Region.make(m.domain, [Span(p, p, True, True)])
        if m.image(full.difference(candidate)) == x_full:
            return verified(candidate, f"isolated point {p} is redundant")

    # rule 2: a constant piece always leaves both endpoints behind
    for run in m.pieces:
        for piece in run:
            if piece.slope == 0:
                third = (piece.src_hi - piece.src_lo) / 3
                w = Region.make(
                    m.domain, [Span(piece.src_lo + third, piece.src_hi - third, False, False)]
                )
                return verified(w, f"constant piece on [{piece.src_lo}, {piece.src_hi}]")

    # rule 3: a monotone piece whose image interior is covered elsewhere
    branches: list[tuple[Optional[Piece], Span]] = []
    for run in m.pieces:
        for piece in run:
            lo, hi = piece.image_interval()
            branches.append((piece, Span(lo, hi, True, True)))
    for _, v in m.point_images:
        branches.append((None, Span(v, v, True, True)))

    for i, (piece, _) in enumerate(branches):
        if piece is None:
            continue
        own = Region.make(m.codomain, [branches[i][1]]).interior()
        others = Region.make(m.codomain, [s for j, (_, s) in enumerate(branches) if j != i])
        overlap = own.intersect(others.interior())
        if overlap.is_empty:
            continue
        span = overlap.spans[0]
        third = (span.hi - span.lo) / 3
        w1, w2 = span.lo + third, span.hi - third
        a = (w1 - piece.intercept) / piece.slope
        b = (w2 - piece.intercept) / piece.slope
        if a > b:
            a, b = b, a
        witness = Region.make(m.domain, [Span(a, b, False, False)])
        return verified(witness, f"piece image ({span.lo}, {span.hi}) overlap is covered twice")

    return IrreducibilityVerdict(True)


def identity_map(space: Space1D) -> PLMap:
    runs = tuple((Piece(c.a, c.b, 1, 0),) for c in space.interval_components())
    points = tuple((p.at, p.at) for p in space.point_components())
    return PLMap(space, space, runs, points)


def plmap_from_breakpoints(
    domain: Space1D, codomain: Space1D, values: Iterable[tuple[Rational, Rational]],
    point_images: Iterable[tuple[Rational, Rational]] = (),
) -> PLMap:
    """Build the interpolating map through (x, value) breakpoints.

    Breakpoints must include both endpoints of every interval component
    of the domain, in order.
    """
    values = [(rat(x), rat(v)) for x, v in values]
    runs = []
    for comp in domain.interval_components():
        inside = [(x, v) for x, v in values if comp.a <= x <= comp.b]
        if len(inside) < 2 or inside[0][0] != comp.a or inside[-1][0] != comp.b:
            raise ValueError("breakpoints must span each interval component")
        run = []
        for (x0, v0), (x1, v1) in zip(inside, inside[1:]):
            slope = (v1 - v0) / (x1 - x0)
            run.append(Piece(x0, x1, slope, v0 - slope * x0))
        runs.append(tuple(run))
    return PLMap(domain, codomain, tuple(runs), tuple(point_images))
