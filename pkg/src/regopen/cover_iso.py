"""Backend-generic checks for essential covers and composed equivalences.

A backend wraps one concrete cover (a piecewise-linear map, or the binary
map out of Cantor space) behind a uniform face: Boolean operations on both
sides, the induced psi/phi pair, and seeded element generators.  The
engine then runs the same surjectivity / irreducibility / law / inverse
battery against any backend, and composes two covers over a common domain
into an equivalence of their codomain algebras.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from . import cantor as _cantor
from .errors import DomainMismatch, NotIrreducible, SpaceMismatch
from .plmap import PLMap, identity_map, is_irreducible
from .space import (
    Interval,
    Point,
    Region,
    Space1D,
    random_regular_open,
    ropen_join,
    ropen_meet,
    ropen_neg,
)


def space_key(space: Space1D) -> str:
    parts = []
    for c in space.components:
        if isinstance(c, Point):
            parts.append(f"P({c.at})")
        else:
            parts.append(f"I({c.a},{c.b})")
    return "|".join(parts)


class CoverBackend:
    """One essential-cover candidate behind a uniform interface."""

    name: str = "abstract"
    domain_key: str
    codomain_key: str

    # Boolean structure on the domain side
    def dom_join(self, a, b):
        raise NotImplementedError

    def dom_meet(self, a, b):
        raise NotImplementedError

    def dom_neg(self, a):
        raise NotImplementedError

    # Boolean structure on the codomain side
    def cod_join(self, a, b):
        raise NotImplementedError

    def cod_meet(self, a, b):
        raise NotImplementedError

    def cod_neg(self, a):
        raise NotImplementedError

    def psi(self, u):
        raise NotImplementedError

    def phi(self, v):
        raise NotImplementedError

    def random_dom(self, rng: random.Random):
        raise NotImplementedError

    def random_cod(self, rng: random.Random):
        raise NotImplementedError

    def check_surjective(self) -> bool:
        raise NotImplementedError

    def check_irreducible(self) -> tuple[bool, Optional[Any], str]:
        """(irreducible, witness or None, reason)."""
        raise NotImplementedError

    def encode(self, elem) -> Any:
        """JSON-ready form of an element, for report witnesses."""
        return repr(elem)


class PLMapBackend(CoverBackend):
    def __init__(self, m: PLMap, name: str = "plmap", complexity: int = 3):
        self.map = m
        self.name = name
        self.domain_key = space_key(m.domain)
        self.codomain_key = space_key(m.codomain)
        self.complexity = complexity

    def dom_join(self, a, b):
        return ropen_join(a, b)

    def dom_meet(self, a, b):
        return ropen_meet(a, b)

    def dom_neg(self, a):
        return ropen_neg(a)

    cod_join = dom_join
    cod_meet = dom_meet
    cod_neg = dom_neg

    def psi(self, u):
        return self.map.psi(u)

    def phi(self, v):
        return self.map.phi(v)

    def random_dom(self, rng):
        return random_regular_open(self.map.domain, rng.randrange(2**62), self.complexity)

    def random_cod(self, rng):
        return random_regular_open(self.map.codomain, rng.randrange(2**62), self.complexity)

    def check_surjective(self):
        return self.map.is_surjective()

    def check_irreducible(self):
        v = is_irreducible(self.map)
        return v.irreducible, v.witness, v.reason

    def encode(self, elem):
        from .jsonio import encode_region

        return encode_region(elem)


class CantorBackend(CoverBackend):
    """The binary-expansion cover of [0,1] on its dyadic subalgebra."""

    def __init__(self, depth: int = 6, check_depth: int = 8):
        self.name = "cantor"
        self.domain_key = "cantor"
        self.codomain_key = space_key(_cantor.UNIT_INTERVAL)
        self.depth = depth
        self.check_depth = check_depth

    def dom_join(self, a, b):
        return _cantor.clopen_union(a, b)

    def dom_meet(self, a, b):
        return _cantor.clopen_inter(a, b)

    def dom_neg(self, a):
        return _cantor.clopen_compl(a)

    def cod_join(self, a, b):
        return ropen_join(a, b)

    def cod_meet(self, a, b):
        return ropen_meet(a, b)

    def cod_neg(self, a):
        return ropen_neg(a)

    def psi(self, u):
        return _cantor.psi_c(u)

    def phi(self, v):
        return _cantor.phi_c(v)

    def random_dom(self, rng):
        return _cantor.random_clopen(rng, self.depth)

    def random_cod(self, rng):
        return _cantor.random_dyadic_regular_open(rng, self.depth)

    def check_surjective(self):
        full = _cantor.UNIT_INTERVAL.full_region()
        return _cantor.closed_value_region(_cantor.FULL) == full

    def check_irreducible(self):
        rep = _cantor.check_irreducible_cantor(self.check_depth)
        return rep.ok, None, rep.note

    def encode(self, elem):
        if isinstance(elem, _cantor.CantorClopen):
            return {"words": list(elem.words)}
        from .jsonio import encode_region

        return encode_region(elem)


class CantorIdentityBackend(CantorBackend):
    """Identity on Cantor space; useful as a composition endpoint."""

    def __init__(self, depth: int = 6):
        super().__init__(depth)
        self.name = "cantor-identity"
        self.codomain_key = "cantor"

    def cod_join(self, a, b):
        return _cantor.clopen_union(a, b)

    def cod_meet(self, a, b):
        return _cantor.clopen_inter(a, b)

    def cod_neg(self, a):
        return _cantor.clopen_compl(a)

    def psi(self, u):
        return u

    def phi(self, v):
        return v

    def random_cod(self, rng):
        return _cantor.random_clopen(rng, self.depth)

    def check_surjective(self):
        return True

    def check_irreducible(self):
        return True, None, "identity"


def identity_backend(space: Space1D) -> PLMapBackend:
    return PLMapBackend(identity_map(space), name="identity")


LAW_NAMES = ("psi_join", "psi_meet", "psi_neg", "phi_join", "phi_meet", "phi_neg")
INVERSE_NAMES = ("psi_phi_id", "phi_psi_id")


@dataclass(frozen=True)
class CoverReport:
    backend: str
    surjective: bool
    irreducible: bool
    witness: Optional[Any]
    reason: str
    samples: int
    seed: int
    law_passes: dict
    law_failures: tuple
    inverse_passes: dict
    inverse_failures: tuple

    @property
    def all_ok(self) -> bool:
        return (
            self.surjective
            and self.irreducible
            and not self.law_failures
            and not self.inverse_failures
        )

    def to_json(self) -> dict:
        return {
            "backend": self.backend,
            "surjective": self.surjective,
            "irreducible": self.irreducible,
            "witness": self.witness,
            "reason": self.reason,
            "samples": self.samples,
            "seed": self.seed,
            "law_passes": dict(sorted(self.law_passes.items())),
            "law_failures": list(self.law_failures),
            "inverse_passes": dict(sorted(self.inverse_passes.items())),
            "inverse_failures": list(self.inverse_failures),
            "all_ok": self.all_ok,
        }


def check_essential(backend: CoverBackend, samples: int = 100, seed: int = 0) -> CoverReport:
    """Run the full battery against one backend; deterministic per seed."""
    rng = random.Random(seed)
    surjective = backend.check_surjective()
    irreducible, witness, reason = (False, None, "not surjective")
    if surjective:
        irreducible, witness, reason = backend.check_irreducible()

    law_passes = {name: 0 for name in LAW_NAMES}
    inverse_passes = {name: 0 for name in INVERSE_NAMES}
    law_failures: list = []
    inverse_failures: list = []

    def score(table, failures, name, ok, trial):
        if ok:
            table[name] += 1
        elif len(failures) < 10:
            failures.append({"law": name, "trial": trial, "seed": seed})

    for trial in range(samples):
        u1 = backend.random_dom(rng)
        u2 = backend.random_dom(rng)
        v1 = backend.random_cod(rng)
        v2 = backend.random_cod(rng)
        score(
            law_passes, law_failures, "psi_join",
            backend.psi(backend.dom_join(u1, u2))
            == backend.cod_join(backend.psi(u1), backend.psi(u2)),
            trial,
        )
        score(
            law_passes, law_failures, "psi_meet",
            backend.psi(backend.dom_meet(u1, u2))
            == backend.cod_meet(backend.psi(u1), backend.psi(u2)),
            trial,
        )
        score(
            law_passes, law_failures, "psi_neg",
            backend.psi(backend.dom_neg(u1)) == backend.cod_neg(backend.psi(u1)),
            trial,
        )
        score(
            law_passes, law_failures, "phi_join",
            backend.phi(backend.cod_join(v1, v2))
            == backend.dom_join(backend.phi(v1), backend.phi(v2)),
            trial,
        )
        score(
            law_passes, law_failures, "phi_meet",
            backend.phi(backend.cod_meet(v1, v2))
            == backend.dom_meet(backend.phi(v1), backend.phi(v2)),
            trial,
        )
        score(
            law_passes, law_failures, "phi_neg",
            backend.phi(backend.cod_neg(v1)) == backend.dom_neg(backend.phi(v1)),
            trial,
        )
        score(
            inverse_passes, inverse_failures, "psi_phi_id",
            backend.psi(backend.phi(v1)) == v1, trial,
        )
        score(
            inverse_passes, inverse_failures, "phi_psi_id",
            backend.phi(backend.psi(u1)) == u1, trial,
        )

    return CoverReport(
        backend=backend.name,
        surjective=surjective,
        irreducible=irreducible,
        witness=backend.encode(witness) if witness is not None else None,
        reason=reason,
        samples=samples,
        seed=seed,
        law_passes=law_passes,
        law_failures=tuple(law_failures),
        inverse_passes=inverse_passes,
        inverse_failures=tuple(inverse_failures),
    )


@dataclass(frozen=True)
class ComposedEquivalence:
    """Two irreducible covers out of one domain compose to an isomorphism."""

    f: CoverBackend  # Z -> X
    g: CoverBackend  # Z -> Y

    def forward(self, v):
        """Ropen(Y) -> Ropen(X): first pull back along g, then push along f."""
        return self.f.psi(self.g.phi(v))

    def backward(self, u):
        return self.g.psi(self.f.phi(u))


def compose_equivalence(f: CoverBackend, g: CoverBackend) -> ComposedEquivalence:
    if f.domain_key != g.domain_key:
        raise DomainMismatch(f"{f.domain_key} vs {g.domain_key}")
    for backend in (f, g):
        ok, _, _ = backend.check_irreducible() if backend.check_surjective() else (False, None, "")
        if not ok:
            raise NotIrreducible(f"backend {backend.name} is not an essential cover")
    return ComposedEquivalence(f, g)


def apply_composed(ce: ComposedEquivalence, v, direction: str = "forward"):
    if direction == "forward":
        return ce.forward(v)
    if direction == "backward":
        return ce.backward(v)
    raise ValueError("direction must be forward or backward")
