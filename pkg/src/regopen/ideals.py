"""Regular ideals of the continuous functions on a space.

A regular ideal is represented losslessly by its regular-open support
region; concrete functions enter only as piecewise-linear witnesses.  The
transport maps upsilon/omega carry ideals across an irreducible cover by
moving supports through the cover's phi/psi.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import NotIrreducible, SpaceMismatch
from .plmap import Piece, PLMap, is_irreducible
from .rationals import Rational, rat
from .space import Region, Space1D, Span, canonicalize, ropen_join, ropen_meet, ropen_neg


@dataclass(frozen=True)
class PLFunc:
    """A continuous piecewise-linear real function on a space."""

    space: Space1D
    pieces: tuple[tuple[Piece, ...], ...]
    point_values: tuple[tuple[Rational, Rational], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(tuple(run) for run in self.pieces))
        object.__setattr__(
            self, "point_values", tuple((rat(p), rat(v)) for p, v in self.point_values)
        )
        comps = self.space.interval_components()
        if len(self.pieces) != len(comps):
            raise ValueError("one piece run per interval component required")
        for comp, run in zip(comps, self.pieces):
            if not run:
                raise ValueError("empty piece run")
            if run[0].src_lo != comp.a or run[-1].src_hi != comp.b:
                raise ValueError("pieces must tile the component exactly")
            for left, right in zip(run, run[1:]):
                if left.src_hi != right.src_lo:
                    raise ValueError("pieces must be consecutive")
                if left.value(left.src_hi) != right.value(right.src_lo):
                    raise ValueError(f"discontinuity at {left.src_hi}")
        points = {p.at for p in self.space.point_components()}
        if points != {p for p, _ in self.point_values} or len(points) != len(
            self.point_values
        ):
            raise ValueError("point_values must cover the isolated points exactly")

    def value(self, x: Rational) -> Rational:
        for p, v in self.point_values:
            if x == p:
                return v
        for comp, run in zip(self.space.interval_components(), self.pieces):
            if comp.a <= x <= comp.b:
                for piece in run:
                    if piece.src_lo <= x <= piece.src_hi:
                        return piece.value(x)
        raise ValueError(f"{x} not in the space")

    def breakpoints(self) -> list[Rational]:
        out = []
        for run in self.pieces:
            out.append(run[0].src_lo)
            out.extend(p.src_hi for p in run)
        return out


def plfunc_from_breakpoints(
    space: Space1D,
    values: list[tuple[Rational, Rational]],
    point_values: tuple[tuple[Rational, Rational], ...] = (),
) -> PLFunc:
    values = [(rat(x), rat(v)) for x, v in values]
    runs = []
    for comp in space.interval_components():
        inside = [(x, v) for x, v in values if comp.a <= x <= comp.b]
        if len(inside) < 2 or inside[0][0] != comp.a or inside[-1][0] != comp.b:
            raise ValueError("breakpoints must span each interval component")
        run = []
        for (x0, v0), (x1, v1) in zip(inside, inside[1:]):
            slope = (v1 - v0) / (x1 - x0)
            run.append(Piece(x0, x1, slope, v0 - slope * x0))
        runs.append(tuple(run))
    return PLFunc(space, tuple(runs), point_values)


def zero_func(space: Space1D) -> PLFunc:
    runs = tuple((Piece(c.a, c.b, 0, 0),) for c in space.interval_components())
    points = tuple((p.at, rat(0)) for p in space.point_components())
    return PLFunc(space, runs, points)


def const_func(space: Space1D, c: Rational) -> PLFunc:
    c = rat(c)
    runs = tuple((Piece(k.a, k.b, 0, c),) for k in space.interval_components())
    points = tuple((p.at, c) for p in space.point_components())
    return PLFunc(space, runs, points)


def pl_supp(f: PLFunc) -> Region:
    """Exact open region where f is nonzero, by per-piece root solving."""
    raw: list[Span] = []
    for run in f.pieces:
        for piece in run:
            if piece.slope == 0:
                if piece.intercept != 0:
                    raw.append(Span(piece.src_lo, piece.src_hi, True, True))
                continue
            root = -piece.intercept / piece.slope
            if root <= piece.src_lo or root >= piece.src_hi:
                half = Span(
                    piece.src_lo,
                    piece.src_hi,
                    piece.value(piece.src_lo) != 0,
                    piece.value(piece.src_hi) != 0,
                )
                if not half.is_empty:
                    raw.append(half)
            else:
                raw.append(Span(piece.src_lo, root, piece.value(piece.src_lo) != 0, False))
                raw.append(Span(root, piece.src_hi, False, piece.value(piece.src_hi) != 0))
    for p, v in f.point_values:
        if v != 0:
            raw.append(Span(p, p, True, True))
    return canonicalize(f.space, raw).region


@dataclass(frozen=True)
class RegIdeal:
    """A regular ideal, keyed by its regular-open support."""

    space: Space1D
    support: Region

    def __post_init__(self):
        if self.support.space != self.space:
            raise SpaceMismatch("support region over a different space")
        if not self.support.is_regular_open():
            raise ValueError("support must be regular open")


def ideal_from_open(g: Region) -> RegIdeal:
    """The regular ideal of all functions vanishing outside the open set."""
    return RegIdeal(g.space, g.regularize())


def supp(j: RegIdeal) -> Region:
    return j.support


def in_ideal(f: PLFunc, j: RegIdeal) -> bool:
    if f.space != j.space:
        raise SpaceMismatch("function and ideal live on different spaces")
    return pl_supp(f).difference(j.support).is_empty


def annihilator(j: RegIdeal) -> RegIdeal:
    return RegIdeal(j.space, j.support.perp())


def ideal_join(j1: RegIdeal, j2: RegIdeal) -> RegIdeal:
    return RegIdeal(j1.space, ropen_join(j1.support, j2.support))


def ideal_meet(j1: RegIdeal, j2: RegIdeal) -> RegIdeal:
    return RegIdeal(j1.space, ropen_meet(j1.support, j2.support))


def ideal_neg(j: RegIdeal) -> RegIdeal:
    return RegIdeal(j.space, ropen_neg(j.support))


def _require_essential(pi: PLMap) -> None:
    if not is_irreducible(pi).irreducible:
        raise NotIrreducible("transport needs an irreducible cover")


def upsilon(pi: PLMap, j: RegIdeal) -> RegIdeal:
    """Transport an ideal of the codomain up to the domain of the cover."""
    if j.space != pi.codomain:
        raise SpaceMismatch("ideal is not over the cover codomain")
    _require_essential(pi)
    return RegIdeal(pi.domain, pi.phi(j.support))


def omega(pi: PLMap, k: RegIdeal) -> RegIdeal:
    """Transport an ideal of the domain back down; inverse of upsilon."""
    if k.space != pi.domain:
        raise SpaceMismatch("ideal is not over the cover domain")
    _require_essential(pi)
    return RegIdeal(pi.codomain, pi.psi(k.support))


def is_essential_extension(pi: PLMap) -> bool:
    return is_irreducible(pi).irreducible


def pullback(pi: PLMap, f: PLFunc) -> PLFunc:
    """The composed function f after the cover: exact piecewise composition."""
    if f.space != pi.codomain:
        raise SpaceMismatch("function is not over the cover codomain")
    cuts = sorted(set(f.breakpoints()))
    runs = []
    for run in pi.pieces:
        out = []
        for piece in run:
            xs = {piece.src_lo, piece.src_hi}
            if piece.slope != 0:
                for t in cuts:
                    x = (t - piece.intercept) / piece.slope
                    if piece.src_lo < x < piece.src_hi:
                        xs.add(x)
            ordered = sorted(xs)
            for x0, x1 in zip(ordered, ordered[1:]):
                mid = (x0 + x1) / 2
                y = piece.value(mid)
                m, k = _affine_at(f, y)
                out.append(
                    Piece(x0, x1, m * piece.slope, m * piece.intercept + k)
                )
        runs.append(tuple(out))
    points = tuple((p, f.value(v)) for p, v in pi.point_images)
    return PLFunc(pi.domain, tuple(runs), points)


def _affine_at(f: PLFunc, y: Rational) -> tuple[Rational, Rational]:
    """Slope and intercept of f on a neighborhood of y (y not a breakpoint)."""
    for comp, run in zip(f.space.interval_components(), f.pieces):
        if comp.a <= y <= comp.b:
            for piece in run:
                if piece.src_lo <= y <= piece.src_hi:
                    return piece.slope, piece.intercept
    for p, v in f.point_values:
        if y == p:
            return rat(0), v
    raise ValueError(f"{y} not in the space of f")


def random_plfunc(space: Space1D, seed: int, den: int = 8) -> PLFunc:
    """Seeded random witness with dyadic breakpoints; hits zero often."""
    rng = random.Random(seed)
    values = []
    for comp in space.interval_components():
        width = comp.b - comp.a
        n = rng.randint(1, 3)
        inner = sorted(rng.sample(range(1, den), min(n, den - 1)))
        xs = [comp.a] + [comp.a + width * rat(i, den) for i in inner] + [comp.b]
        for x in xs:
            values.append((x, rat(rng.randint(-2 * den, 2 * den), den)
                           if rng.random() > 0.3 else rat(0)))
    points = tuple(
        (p.at, rat(rng.randint(-den, den), den) if rng.random() > 0.4 else rat(0))
        for p in space.point_components()
    )
    return plfunc_from_breakpoints(space, values, points)
