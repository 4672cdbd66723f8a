"""JSON codecs for every interchange type; rationals travel as strings."""
from __future__ import annotations

import json
from typing import Any

from .cantor import CantorClopen
from .errors import SpaceMismatch
from .ideals import PLFunc, RegIdeal
from .plmap import Piece, PLMap
from .rationals import parse_rat, rat_str
from .space import Interval, Point, Region, Space1D, Span, canonicalize


def canonical_json(obj: Any) -> str:
    """Sorted keys, no whitespace: byte-stable for identical values."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# --- spaces ---

def encode_space(space: Space1D) -> dict:
    comps = []
    for c in space.components:
        if isinstance(c, Point):
            comps.append({"kind": "point", "at": rat_str(c.at)})
        else:
            comps.append({"kind": "interval", "a": rat_str(c.a), "b": rat_str(c.b)})
    return {"components": comps}


def decode_space(data: dict) -> Space1D:
    comps = []
    for entry in data["components"]:
        kind = entry.get("kind")
        if kind == "interval":
            comps.append(Interval(parse_rat(entry["a"]), parse_rat(entry["b"])))
        elif kind == "point":
            comps.append(Point(parse_rat(entry["at"])))
        else:
            raise ValueError(f"unknown component kind {kind!r}")
    return Space1D(tuple(comps))


# --- regions ---

def encode_region(region: Region) -> dict:
    return {
        "spans": [
            {
                "lo": rat_str(s.lo),
                "hi": rat_str(s.hi),
                "lo_incl": s.lo_incl,
                "hi_incl": s.hi_incl,
            }
            for s in region.spans
        ]
    }


def decode_region(space: Space1D, data: dict) -> Region:
    spans = [
        Span(
            parse_rat(s["lo"]),
            parse_rat(s["hi"]),
            bool(s["lo_incl"]),
            bool(s["hi_incl"]),
        )
        for s in data["spans"]
    ]
    result = canonicalize(space, spans)
    if result.clipped:
        raise SpaceMismatch("a span reaches outside the space")
    return result.region


# --- piecewise-linear maps and functions ---

def _encode_piece(p: Piece) -> dict:
    return {
        "src_lo": rat_str(p.src_lo),
        "src_hi": rat_str(p.src_hi),
        "slope": rat_str(p.slope),
        "intercept": rat_str(p.intercept),
    }


def _decode_piece(data: dict) -> Piece:
    return Piece(
        parse_rat(data["src_lo"]),
        parse_rat(data["src_hi"]),
        parse_rat(data["slope"]),
        parse_rat(data["intercept"]),
    )


def _encode_pairs(pairs) -> list:
    return [[rat_str(a), rat_str(b)] for a, b in pairs]


def _decode_pairs(data) -> tuple:
    return tuple((parse_rat(a), parse_rat(b)) for a, b in data)


def encode_plmap(m: PLMap) -> dict:
    return {
        "domain": encode_space(m.domain),
        "codomain": encode_space(m.codomain),
        "pieces": [[_encode_piece(p) for p in run] for run in m.pieces],
        "point_images": _encode_pairs(m.point_images),
    }


def decode_plmap(data: dict) -> PLMap:
    return PLMap(
        decode_space(data["domain"]),
        decode_space(data["codomain"]),
        tuple(tuple(_decode_piece(p) for p in run) for run in data["pieces"]),
        _decode_pairs(data.get("point_images", [])),
    )


def encode_plfunc(f: PLFunc) -> dict:
    return {
        "space": encode_space(f.space),
        "pieces": [[_encode_piece(p) for p in run] for run in f.pieces],
        "point_values": _encode_pairs(f.point_values),
    }


def decode_plfunc(data: dict) -> PLFunc:
    return PLFunc(
        decode_space(data["space"]),
        tuple(tuple(_decode_piece(p) for p in run) for run in data["pieces"]),
        _decode_pairs(data.get("point_values", [])),
    )


# --- clopens and ideals ---

def encode_clopen(k: CantorClopen) -> dict:
    return {"words": list(k.words)}


def decode_clopen(data: dict) -> CantorClopen:
    return CantorClopen(tuple(data["words"]))


def encode_ideal(j: RegIdeal) -> dict:
    return {"space": encode_space(j.space), "support": encode_region(j.support)}


def decode_ideal(data: dict) -> RegIdeal:
    space = decode_space(data["space"])
    return RegIdeal(space, decode_region(space, data["support"]))
