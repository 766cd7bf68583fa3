"""Cayley-ball growth tables by BFS over canonical encodings.

Works for finite and infinite groups alike: elements are deduplicated by
their canonical encodings, levels are expanded generator-by-generator in
a fixed order, and caps (element count, estimated bytes) turn a run into
a partial table that is exact up to its last completed radius. Partial
tables are first-class results, flagged `truncated`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .elements import GenSet, GroupElement, TreeAuto
from .errors import DegenerateWindow
from .specio import spec_digest
from .table import FiniteGroupTable, commutator_subgroup, enumerate_group, reduce_generators, whole_group

DEFAULT_MAX_ELEMENTS = 2_000_000
DEFAULT_MAX_BYTES = 8 << 30
_PER_ELEMENT_OVERHEAD = 64


@dataclass
class GrowthTable:
    """Cumulative ball sizes gamma(0..R) with provenance metadata."""

    counts: list[int]
    digest: str
    generator_count: int
    requested_radius: int
    truncated: bool = False
    truncation_reason: str | None = None

    @property
    def radius(self) -> int:
        return len(self.counts) - 1

    def gamma(self, r: int) -> int:
        if r < 0:
            raise ValueError("radius must be >= 0")
        return self.counts[min(r, self.radius)] if r <= self.radius else self._oob(r)

    def _oob(self, r: int):
        raise ValueError(f"radius {r} beyond computed table (R = {self.radius})")

    def to_csv(self) -> str:
        lines = ["radius,gamma"]
        lines += [f"{r},{c}" for r, c in enumerate(self.counts)]
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        return {
            "digest": self.digest,
            "generator_count": self.generator_count,
            "requested_radius": self.requested_radius,
            "radius": self.radius,
            "counts": list(self.counts),
            "truncated": self.truncated,
            "truncation_reason": self.truncation_reason,
        }


def growth_table(
    X: GenSet,
    R: int,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    max_bytes: int = DEFAULT_MAX_BYTES,
) -> GrowthTable:
    """Exact gamma(0..R) for <X>, stopping early only at the caps.

    A level that would cross a cap is discarded whole, so every reported
    count is the exact ball size at its radius.
    """
    if R < 0:
        raise ValueError("radius must be >= 0")
    e = X.identity()
    steps = [s for s, _ref in X.bfs_steps()]
    seen = {e.encode()}
    bytes_used = len(e.encode()) + _PER_ELEMENT_OVERHEAD
    frontier = [e]
    counts = [1]
    truncated = False
    reason = None
    for _r in range(1, R + 1):
        staged: list[GroupElement] = []
        staged_keys: set[bytes] = set()
        level_bytes = 0
        for x in frontier:
            for s in steps:
                y = x * s
                k = y.encode()
                if k in seen or k in staged_keys:
                    continue
                staged_keys.add(k)
                staged.append(y)
                level_bytes += len(k) + _PER_ELEMENT_OVERHEAD
        if not staged:
            break  # group exhausted; ball is the whole group from here on
        if len(seen) + len(staged) > max_elements:
            truncated, reason = True, "max_elements"
            break
        if bytes_used + level_bytes > max_bytes:
            truncated, reason = True, "max_bytes"
            break
        seen |= staged_keys
        bytes_used += level_bytes
        counts.append(counts[-1] + len(staged))
        frontier = staged
    return GrowthTable(
        counts=counts,
        digest=spec_digest(X),
        generator_count=len(X),
        requested_radius=R,
        truncated=truncated,
        truncation_reason=reason,
    )


def growth_from_table(T: FiniteGroupTable) -> list[int]:
    """gamma(0..diameter) from an enumerated table's word lengths."""
    return T.growth_counts()


def gap_hypothesis_check(tbl: GrowthTable, theta: float, C: float) -> bool:
    """Whether gamma(n) <= exp(C n^theta) at every computed radius >= 1."""
    if not (0 < theta < 1):
        raise ValueError("theta must be in (0, 1)")
    if C < 1:
        raise ValueError("C must be >= 1")
    return all(
        math.log(tbl.counts[n]) <= C * n**theta for n in range(1, tbl.radius + 1)
    )


@dataclass
class GrowthFit:
    """Fitted growth model on a radius window."""

    kind: str  # "polynomial" | "stretched_exponential"
    parameter: float  # degree d or exponent beta
    intercept: float
    residual: float
    window: tuple[int, int]

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "parameter": self.parameter,
            "intercept": self.intercept,
            "residual": self.residual,
            "window": list(self.window),
        }


def growth_exponent_fit(
    tbl: GrowthTable, window: tuple[int, int] | None = None
) -> GrowthFit:
    """Least-squares fit of the tail: polynomial vs stretched exponential.

    Polynomial: log gamma ~ d log n; stretched: log log gamma ~ beta log n.
    Both models are scored by their mean squared error predicting
    log gamma (a common scale, so the comparison is fair); the better one
    is returned. Default window: the top half of the computed radii.
    """
    if window is None:
        window = (max(1, tbl.radius // 2), tbl.radius)
    lo, hi = window
    if lo < 1 or hi > tbl.radius or hi < lo:
        raise DegenerateWindow(f"window {window} outside table radii 1..{tbl.radius}")
    ns = list(range(lo, hi + 1))
    log_n = np.array([math.log(n) for n in ns])
    log_g = np.array([math.log(tbl.counts[n]) for n in ns])
    fits = []
    if len(set(ns)) >= 2:
        d, c = np.polyfit(log_n, log_g, 1)
        res = float(np.mean((log_g - (d * log_n + c)) ** 2))
        fits.append(("polynomial", float(d), float(c), res))
    if all(tbl.counts[n] > 1 for n in ns) and len(set(ns)) >= 2:
        loglog_g = np.log(log_g)
        beta, c2 = np.polyfit(log_n, loglog_g, 1)
        pred = np.exp(beta * log_n + c2)
        res = float(np.mean((log_g - pred) ** 2))
        fits.append(("stretched_exponential", float(beta), float(c2), res))
    if not fits:
        raise DegenerateWindow("too few usable points in fit window")
    kind, slope, intercept, residual = min(fits, key=lambda f: f[3])
    return GrowthFit(kind, slope, intercept, residual, (lo, hi))


# -- iterated wreath towers of Sym(4) ----------------------------------------

_S4_GEN_LABELS = [(1, 0, 2, 3), (1, 2, 3, 0)]
_A4_GEN_LABELS = [(1, 2, 0, 3), (1, 0, 3, 2)]  # (0 1 2), (0 1)(2 3)


def _leveled_gen(depth: int, level: int, label: tuple[int, ...]) -> TreeAuto:
    return TreeAuto(depth, 4, {(0,) * level: label})


def _embed(auto: TreeAuto, depth: int, subtree: int) -> TreeAuto:
    """Place a depth-(d-1) automorphism inside one subtree of a depth-d tree."""
    return TreeAuto(
        depth, 4, {(subtree,) + path: lab for path, lab in auto.portrait.items()}
    )


def s4_tower(depth: int) -> GenSet:
    """Generators of the full depth-d truncation of the Sym(4) tree tower.

    Two Sym(4) generators per level, placed along the leftmost path; the
    level-0 copy permutes subtrees transitively, so conjugation reaches
    every node and the full iterated wreath product is generated.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    gens = []
    for level in range(depth):
        for label in _S4_GEN_LABELS:
            gens.append(_leveled_gen(depth, level, label))
    return GenSet(gens)


def s4_tower_order(depth: int) -> int:
    return 24 ** ((4**depth - 1) // 3)


def s4_tower_derived_order(depth: int) -> int:
    # The abelianization is C2 (depth 1) or C2 x C2 (top sign, base sign).
    return s4_tower_order(depth) // (2 if depth == 1 else 4)


def s4_tower_derived(depth: int) -> GenSet:
    """Generators of the derived subgroup of the depth-d tower truncation.

    depth 1: computed from the enumerated 24-element table by
    commutator_subgroup. depth >= 2 uses the lift rule for W = A wr Sym(4):
    the derived subgroup is generated by Alt(4) at the root, the pairs
    (x in subtree 0, x^-1 in subtree 1) over the generators x of A, and
    the derived generators of A in subtree 0 (recursively). These
    generate {f in A^4 : product of f mod A' trivial} x| Alt(4) = W'.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if depth == 1:
        T = enumerate_group(s4_tower(1))
        D = reduce_generators(T, commutator_subgroup(T, whole_group(T), whole_group(T)))
        return GenSet([T.elements[g] for g in D.generators])
    gens: list[TreeAuto] = []
    for label in _A4_GEN_LABELS:
        gens.append(_leveled_gen(depth, 0, label))
    inner = s4_tower(depth - 1)
    for x in inner.elements:
        assert isinstance(x, TreeAuto)
        pos = _embed(x, depth, 0)
        neg = _embed(x.inverse(), depth, 1)
        gens.append(pos * neg)
    for x in s4_tower_derived(depth - 1).elements:
        assert isinstance(x, TreeAuto)
        gens.append(_embed(x, depth, 0))
    return GenSet(gens)
