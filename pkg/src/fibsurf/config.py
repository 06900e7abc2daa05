"""Fibre configurations as weighted dual graphs.

A fibre ``F = sum m_i C_i`` is stored as its components (multiplicity,
arithmetic genus, self-intersection) plus the intersection numbers
``C_i . C_j`` for ``i != j``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class Component:
    id: str
    mult: int
    pa: int = 0
    self_int: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "id", str(self.id))
        if self.mult < 1:
            raise ConfigurationError(f"component {self.id}: multiplicity must be >= 1")
        if self.pa < 0:
            raise ConfigurationError(f"component {self.id}: arithmetic genus must be >= 0")


def _key(i: str, j: str) -> tuple[str, str]:
    return (i, j) if i <= j else (j, i)


@dataclass(frozen=True)
class CurveConfiguration:
    components: tuple[Component, ...] = ()
    intersections: Mapping[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self):
        comps = tuple(self.components)
        ids = [c.id for c in comps]
        if len(set(ids)) != len(ids):
            raise ConfigurationError("component ids must be unique")
        known = set(ids)
        clean: dict = {}
        for (i, j), v in dict(self.intersections).items():
            i, j = str(i), str(j)
            if i == j:
                raise ConfigurationError("self-intersections belong on the component, not the map")
            if i not in known or j not in known:
                raise ConfigurationError(f"intersection ({i}, {j}) names an unknown component")
            if v < 0:
                raise ConfigurationError(f"negative intersection number for ({i}, {j})")
            k = _key(i, j)
            if k in clean and clean[k] != v:
                raise ConfigurationError(f"intersection map is not symmetric at ({i}, {j})")
            if v:
                clean[k] = int(v)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "intersections", clean)

    # access -----------------------------------------------------------------
    @property
    def ids(self) -> list[str]:
        return [c.id for c in self.components]

    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def meet(self, i: str, j: str) -> int:
        if i == j:
            s = self.component(i).self_int
            if s is None:
                raise ConfigurationError(f"self-intersection of {i} is not known")
            return s
        return self.intersections.get(_key(i, j), 0)

    def neighbours(self, cid: str) -> list[str]:
        return [c.id for c in self.components if c.id != cid and self.meet(cid, c.id) > 0]

    def has_self_intersections(self) -> bool:
        return all(c.self_int is not None for c in self.components)

    def mults(self) -> list[int]:
        return [c.mult for c in self.components]

    def fibre_dot(self, cid: str) -> int:
        """F . C for the fibre F = sum m_j C_j."""
        return sum(c.mult * self.meet(cid, c.id) for c in self.components)

    def __len__(self):
        return len(self.components)

    # serialization ----------------------------------------------------------
    def to_dict(self) -> dict:
        comps = []
        for c in self.components:
            d = {"id": c.id, "mult": c.mult, "pa": c.pa}
            if c.self_int is not None:
                d["self_int"] = c.self_int
            comps.append(d)
        inter = [[i, j, v] for (i, j), v in sorted(self.intersections.items())]
        return {"components": comps, "intersections": inter}

    @classmethod
    def from_dict(cls, data: Mapping) -> "CurveConfiguration":
        try:
            comps = tuple(
                Component(c["id"], int(c["mult"]), int(c.get("pa", 0)),
                          None if c.get("self_int") is None else int(c["self_int"]))
                for c in data["components"]
            )
            inter = {}
            for i, j, v in data.get("intersections", []):
                k = _key(str(i), str(j))
                if k in inter and inter[k] != int(v):
                    raise ConfigurationError(f"intersection map is not symmetric at ({i}, {j})")
                inter[k] = int(v)
        except (KeyError, TypeError) as exc:
            raise ConfigurationError(f"malformed configuration: {exc}") from exc
        return cls(comps, inter)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CurveConfiguration":
        return cls.from_dict(json.loads(text))


def configuration(mults: Iterable[int], intersections: Mapping | None = None, *,
                  pa: Iterable[int] | None = None, ids: Iterable[str] | None = None) -> CurveConfiguration:
    """Shorthand: components named by position unless ids are given."""
    mults = list(mults)
    ids = [str(i) for i in (ids if ids is not None else range(len(mults)))]
    pas = list(pa) if pa is not None else [0] * len(mults)
    comps = tuple(Component(i, m, g) for i, m, g in zip(ids, mults, pas))
    inter = {(str(i), str(j)): v for (i, j), v in (intersections or {}).items()}
    return CurveConfiguration(comps, inter)


# ---------------------------------------------------------------------------
# Winters admissibility and the fibre class


@dataclass(frozen=True)
class WintersResult:
    passed: bool
    witnesses: dict  # id -> (sum_{j != i} m_j C_i.C_j, m_i, divides)


def winters_check(cfg: CurveConfiguration) -> WintersResult:
    witnesses = {}
    ok = True
    for c in cfg.components:
        total = sum(d.mult * cfg.meet(c.id, d.id) for d in cfg.components if d.id != c.id)
        divides = total % c.mult == 0
        ok = ok and divides
        witnesses[c.id] = (total, c.mult, divides)
    return WintersResult(ok, witnesses)


def derive_self_intersections(cfg: CurveConfiguration) -> CurveConfiguration:
    """Fill C_i^2 = -(1/m_i) sum_{j != i} m_j C_i.C_j, forced by F.C_i = 0."""
    result = winters_check(cfg)
    comps = []
    for c in cfg.components:
        total, m, divides = result.witnesses[c.id]
        if not divides:
            raise ConfigurationError(
                f"component {c.id}: multiplicity {m} does not divide {total}"
            )
        derived = -(total // m)
        if c.self_int is not None and c.self_int != derived:
            raise ConfigurationError(
                f"component {c.id}: supplied self-intersection {c.self_int} violates F.C = 0 (expected {derived})"
            )
        comps.append(replace(c, self_int=derived))
    return CurveConfiguration(tuple(comps), cfg.intersections)


def _with_self_intersections(cfg: CurveConfiguration) -> CurveConfiguration:
    if not cfg.has_self_intersections():
        return derive_self_intersections(cfg)
    for c in cfg.components:
        if cfg.fibre_dot(c.id) != 0:
            raise ConfigurationError(f"F.C != 0 for component {c.id}")
    return cfg


def fibre_genus(cfg: CurveConfiguration) -> int:
    """Genus g from adjunction: 2g - 2 = sum m_i (2 p_a(C_i) - 2 - C_i^2)."""
    if not cfg.components:
        raise ConfigurationError("empty configuration has no genus")
    cfg = _with_self_intersections(cfg)
    total = sum(c.mult * (2 * c.pa - 2 - c.self_int) for c in cfg.components)
    if total % 2:
        raise ConfigurationError(f"2g - 2 = {total} is odd")
    return total // 2 + 1


# ---------------------------------------------------------------------------
# predicates


@dataclass(frozen=True)
class FibrePredicates:
    gcd: int
    min: int
    connected: bool
    is_multiple: bool
    is_c_fibre: bool
    is_valid_fibration_fibre: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def is_connected(cfg: CurveConfiguration) -> bool:
    ids = cfg.ids
    if not ids:
        return True
    seen = {ids[0]}
    stack = [ids[0]]
    while stack:
        cur = stack.pop()
        for nb in cfg.neighbours(cur):
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(ids)


def fibre_predicates(cfg: CurveConfiguration) -> FibrePredicates:
    mults = cfg.mults()
    g = math.gcd(*mults) if mults else 0
    lo = min(mults) if mults else 0
    conn = is_connected(cfg)
    return FibrePredicates(
        gcd=g,
        min=lo,
        connected=conn,
        is_multiple=g > 1,
        is_c_fibre=g == 1 and lo > 1,
        is_valid_fibration_fibre=conn and g == 1,
    )


@dataclass(frozen=True)
class MultipleFibreConstraints:
    """Admissible multiplicities n of a multiple fibre F = nE in genus g."""

    genus: int
    all_admissible: bool
    multiplicities: tuple[int, ...]

    def admits(self, n: int) -> bool:
        return n >= 1 and (self.all_admissible or n in self.multiplicities)

    def quotient_genus(self, n: int) -> int:
        """p_a(E) = 1 + (g - 1)/n."""
        if not self.admits(n):
            raise ConfigurationError(f"multiplicity {n} does not divide g - 1 = {self.genus - 1}")
        return 1 + (self.genus - 1) // n

    def as_dict(self) -> dict[int, int]:
        if self.all_admissible:
            raise ConfigurationError("every multiplicity is admissible in genus 1")
        return {n: self.quotient_genus(n) for n in self.multiplicities}


def multiple_fibre_constraints(g: int) -> MultipleFibreConstraints:
    if g < 0:
        raise ConfigurationError("genus must be nonnegative")
    if g == 1:
        return MultipleFibreConstraints(1, True, ())
    k = abs(g - 1)
    divs = tuple(n for n in range(1, k + 1) if k % n == 0)
    return MultipleFibreConstraints(g, False, divs)


# ---------------------------------------------------------------------------
# contraction of (-1)-curves


def _is_minus_one(c: Component) -> bool:
    return c.pa == 0 and c.self_int == -1


def contract_component(cfg: CurveConfiguration, cid: str) -> CurveConfiguration:
    """Blow down a single (-1)-curve."""
    e = cfg.component(cid)
    if not _is_minus_one(e):
        raise ConfigurationError(f"{cid} is not a smooth rational (-1)-curve")
    rest = [c for c in cfg.components if c.id != cid]
    hits = {c.id: cfg.meet(cid, c.id) for c in rest}
    comps = tuple(replace(c, self_int=c.self_int + hits[c.id] ** 2) for c in rest)
    inter = {}
    for a in range(len(rest)):
        for b in range(a + 1, len(rest)):
            i, j = rest[a].id, rest[b].id
            v = cfg.meet(i, j) + hits[i] * hits[j]
            if v:
                inter[_key(i, j)] = v
    return CurveConfiguration(comps, inter)


def contract_minus_one(cfg: CurveConfiguration, order: Iterable[str] | None = None) -> tuple[CurveConfiguration, int]:
    """Contract (-1)-curves to a fixpoint; lowest position first.

    ``order`` optionally overrides the priority (ids earlier in the list are
    contracted first); it exists for order-independence checks.
    """
    if not cfg.has_self_intersections():
        raise ConfigurationError("contraction needs self-intersections")
    priority = list(order) if order is not None else cfg.ids
    count = 0
    while True:
        present = set(cfg.ids)
        target = next(
            (cid for cid in priority if cid in present and _is_minus_one(cfg.component(cid))),
            None,
        )
        if target is None:
            return cfg, count
        cfg = contract_component(cfg, target)
        count += 1
