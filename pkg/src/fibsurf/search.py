"""Exhaustive searches over small fibre configurations."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .config import (
    ConfigurationError,
    CurveConfiguration,
    configuration,
    derive_self_intersections,
    fibre_genus,
    fibre_predicates,
    winters_check,
)


@dataclass(frozen=True)
class TwoComponentEntry:
    m1: int
    m2: int
    k: int
    genus: int

    def as_tuple(self) -> tuple:
        return (self.m1, self.m2, self.k, self.genus)


def two_component_search(max_m: int, max_k: int) -> list[TwoComponentEntry]:
    """C-fibres m1 A + m2 B with A, B rational and A.B = k.

    Winters' condition for coprime m1 < m2 forces m1 m2 | k, so only those
    k are visited; the genus comes from the general adjunction routine.
    """
    out = []
    for m1 in range(2, max_m + 1):
        for m2 in range(m1 + 1, max_m + 1):
            if math.gcd(m1, m2) != 1:
                continue
            step = m1 * m2
            for k in range(step, max_k + 1, step):
                cfg = configuration([m1, m2], {(0, 1): k})
                out.append(TwoComponentEntry(m1, m2, k, fibre_genus(cfg)))
    out.sort(key=lambda e: (e.genus, e.m1, e.m2, e.k))
    return out


@dataclass(frozen=True)
class SearchSpace:
    max_components: int
    max_mult: int
    max_int: int
    max_pa: int = 0
    max_genus: int | None = None
    c_fibre: bool = True
    connected: bool = True
    winters: bool = True
    no_minus_one: bool = False

    def __post_init__(self):
        for name in ("max_components", "max_mult", "max_int"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.max_pa < 0:
            raise ValueError("max_pa must be nonnegative")

    def is_empty(self) -> bool:
        return self.max_components < 1 or self.max_mult < 1


@dataclass(frozen=True)
class FoundConfiguration:
    labels: tuple  # (mult, pa) per component
    matrix: tuple  # symmetric, zero diagonal, row-major tuples
    configuration: CurveConfiguration
    genus: int
    flags: tuple

    @property
    def mults(self) -> tuple:
        return tuple(m for m, _ in self.labels)

    def sort_key(self):
        return (len(self.labels), self.genus, self.labels, self.matrix)


def _matrix(n: int, upper: tuple) -> tuple:
    m = [[0] * n for _ in range(n)]
    pos = 0
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = upper[pos]
            pos += 1
    return tuple(tuple(r) for r in m)


def _block_permutations(labels: tuple):
    """Permutations of positions that keep the label sequence unchanged."""
    blocks = [list(g) for _, g in itertools.groupby(range(len(labels)), key=lambda i: labels[i])]
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        yield [i for part in parts for i in part]


def canonical_matrix(labels: tuple, matrix: tuple) -> tuple:
    """Lexicographically smallest relabelling among label-preserving permutations."""
    best = None
    for perm in _block_permutations(labels):
        cand = tuple(tuple(matrix[perm[i]][perm[j]] for j in range(len(perm))) for i in range(len(perm)))
        if best is None or cand < best:
            best = cand
    return best


def _label_multisets(n: int, max_mult: int, max_pa: int):
    labels = [(m, g) for m in range(1, max_mult + 1) for g in range(max_pa + 1)]
    return itertools.combinations_with_replacement(labels, n)


def _flags(cfg: CurveConfiguration) -> tuple:
    p = fibre_predicates(cfg)
    out = []
    if p.is_c_fibre:
        out.append("c_fibre")
    if p.connected:
        out.append("connected")
    if p.is_multiple:
        out.append("multiple")
    if winters_check(cfg).passed:
        out.append("winters")
    return tuple(out)


def enumerate_configurations(space: SearchSpace) -> Iterator[FoundConfiguration]:
    """All configurations in the space passing its filters, one per isomorphism class.

    Configurations are emitted sorted by component count, genus, labels and
    intersection matrix.
    """
    if space.is_empty():
        return iter(())
    found: list[FoundConfiguration] = []
    for n in range(1, space.max_components + 1):
        pairs = n * (n - 1) // 2
        for labels in _label_multisets(n, space.max_mult, space.max_pa):
            mults = [m for m, _ in labels]
            if space.c_fibre and (math.gcd(*mults) != 1 or min(mults) < 2):
                continue
            for upper in itertools.product(range(space.max_int + 1), repeat=pairs):
                matrix = _matrix(n, upper)
                ids = [str(i) for i in range(n)]
                inter = {(ids[i], ids[j]): matrix[i][j] for i in range(n) for j in range(i + 1, n)}
                cfg = configuration(mults, inter, pa=[g for _, g in labels])
                if space.winters and not winters_check(cfg).passed:
                    continue
                pred = fibre_predicates(cfg)
                if space.connected and not pred.connected:
                    continue
                if space.c_fibre and not pred.is_c_fibre:
                    continue
                try:
                    cfg = derive_self_intersections(cfg)
                    genus = fibre_genus(cfg)
                except ConfigurationError:
                    continue
                if space.max_genus is not None and genus > space.max_genus:
                    continue
                if space.no_minus_one and any(c.pa == 0 and c.self_int == -1 for c in cfg.components):
                    continue
                if canonical_matrix(labels, matrix) != matrix:
                    continue
                found.append(FoundConfiguration(labels, matrix, cfg, genus, _flags(cfg)))
    found.sort(key=FoundConfiguration.sort_key)
    return iter(found)
