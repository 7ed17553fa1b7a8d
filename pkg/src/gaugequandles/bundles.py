"""Discrete principal bundles, gauge transformations, and equivariant maps.

A discrete principal bundle here is always the trivialized one: total points
are pairs (m, g) over a finite base 0..|M|-1 with fiber coordinates in a
finite group G, encoded as the single index p = m * |G| + g. The fiber chart
psi_m reads off the coordinate, the right action multiplies it, and the
canonical section is s(m) = (m, e).

Equivariant maps f : P -> G with f(p*g) = g^-1 f(p) g are stored by their
values on the canonical section; the value anywhere else is forced:
f(m, g) = g^-1 * f(s(m)) * g.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

from .errors import AlgebraError, BundleMismatch, CapExceeded, ShapeError
from .groups import FiniteGroup, group_from_json, group_to_json

DEFAULT_ENUMERATION_CAP = 10**6


@dataclass(frozen=True, eq=False)
class DiscreteBundle:
    """Total space M x G with the right G-action on fiber coordinates."""

    group: FiniteGroup
    base_size: int

    def __post_init__(self):
        if self.base_size < 1:
            raise ShapeError("base must have at least one point")
        self._validate()

    @property
    def total_size(self) -> int:
        return self.base_size * self.group.order

    def points(self) -> range:
        return range(self.total_size)

    def total(self) -> list[tuple[int, int]]:
        """All points as (base index, fiber coordinate) pairs, in point order."""
        return [(self.base(p), self.coord(p)) for p in self.points()]

    def base(self, p: int) -> int:
        """The projection pi(p)."""
        return p // self.group.order

    def coord(self, p: int) -> int:
        """The chart psi_m(p), m = pi(p)."""
        return p % self.group.order

    def point(self, m: int, g: int) -> int:
        return m * self.group.order + g

    def act(self, p: int, g: int) -> int:
        """The right action p * g."""
        return self.point(self.base(p), self.group.mul(self.coord(p), g))

    def section(self, m: int) -> int:
        """The canonical section s(m) = psi_m^-1(e)."""
        return self.point(m, 0)

    def action_table(self) -> np.ndarray:
        """act[p, g] = p * g for all total points and group elements."""
        n = self.group.order
        fibers = np.arange(self.base_size) * n
        return (fibers[:, None, None] + self.group.table[None, :, :]).reshape(
            self.total_size, n
        )

    def _validate(self) -> None:
        # The (m, g) encoding makes these hold by construction; the scan keeps
        # the structural contract executable.
        n = self.group.order
        act = self.action_table()
        for m in range(self.base_size):
            fiber = [self.point(m, g) for g in range(n)]
            coords = sorted(self.coord(p) for p in fiber)
            if coords != list(range(n)):
                raise AlgebraError(f"chart is not a bijection on fiber {m}")
            for p in fiber:
                if sorted(act[p].tolist()) != fiber:
                    raise AlgebraError(f"action is not free and transitive at point {p}")
        for p in self.points():
            for g in range(n):
                q = int(act[p, g])
                if self.base(q) != self.base(p):
                    raise AlgebraError(f"action moved point {p} off its fiber")
                if self.coord(q) != self.group.mul(self.coord(p), g):
                    raise AlgebraError(f"chart equivariance fails at ({p}, {g})")

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiscreteBundle):
            return NotImplemented
        return self.base_size == other.base_size and self.group == other.group

    def __repr__(self) -> str:
        return f"DiscreteBundle(group={self.group!r}, base_size={self.base_size})"


def trivial_bundle(G: FiniteGroup, base_size: int) -> DiscreteBundle:
    return DiscreteBundle(group=G, base_size=base_size)


@dataclass(frozen=True, eq=False)
class GaugeTransformation:
    """A fiber-preserving equivariant permutation of the total points."""

    bundle: DiscreteBundle
    values: np.ndarray

    def __post_init__(self):
        b = self.bundle
        vals = np.asarray(self.values, dtype=np.int64)
        if sorted(vals.tolist()) != list(b.points()):
            raise AlgebraError("gauge transformation must permute the total points")
        for p in b.points():
            if b.base(int(vals[p])) != b.base(p):
                raise AlgebraError(f"projection not preserved at point {p}")
        act = b.action_table()
        if not np.array_equal(vals[act], act[vals]):
            raise AlgebraError("equivariance phi(p*g) == phi(p)*g fails")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __call__(self, p: int) -> int:
        return int(self.values[p])

    def compose(self, other: GaugeTransformation) -> GaugeTransformation:
        """Function composition: (self . other)(p) = self(other(p))."""
        if self.bundle != other.bundle:
            raise BundleMismatch("gauge transformations live on different bundles")
        return GaugeTransformation(self.bundle, self.values[other.values])

    def inverted(self) -> GaugeTransformation:
        inv = np.empty_like(self.values)
        inv[self.values] = np.arange(len(self.values))
        return GaugeTransformation(self.bundle, inv)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaugeTransformation):
            return NotImplemented
        return self.bundle == other.bundle and np.array_equal(self.values, other.values)


@dataclass(frozen=True, eq=False)
class EquivariantMap:
    """An element of Map(P, G)^G, stored by its canonical-section values."""

    bundle: DiscreteBundle
    section_values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.section_values)
        if len(vals) != self.bundle.base_size:
            raise ShapeError(
                f"need one section value per base point, got {len(vals)} "
                f"for base size {self.bundle.base_size}"
            )
        n = self.bundle.group.order
        if any(v < 0 or v >= n for v in vals):
            raise ShapeError("section values out of range for the structure group")
        object.__setattr__(self, "section_values", vals)

    def eval(self, p: int) -> int:
        """f(m, g) = g^-1 * f(s(m)) * g."""
        b = self.bundle
        return b.group.conjugate(self.section_values[b.base(p)], b.coord(p))

    def total_values(self) -> np.ndarray:
        """f(p) for every total point, in point order."""
        b = self.bundle
        G = b.group
        cols = []
        for c in self.section_values:
            # row over g of g^-1 * c * g
            cols.append(G.table[G.table[G.inverses, c], np.arange(G.order)])
        return np.concatenate(cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EquivariantMap):
            return NotImplemented
        return self.bundle == other.bundle and self.section_values == other.section_values

    def __hash__(self) -> int:
        return hash(self.section_values)


def identity_map(b: DiscreteBundle) -> EquivariantMap:
    """The constant-e map, the unit of Map(P, G)^G."""
    return EquivariantMap(b, (0,) * b.base_size)


def eval_map(f: EquivariantMap, p: int) -> int:
    return f.eval(p)


def equivariance_witnesses(b: DiscreteBundle, values) -> list[tuple[int, int]]:
    """Pairs (p, g) where f(p*g) != g^-1 f(p) g for a raw total-value array."""
    vals = np.asarray(values, dtype=np.int64)
    if vals.shape != (b.total_size,):
        raise ShapeError("need one value per total point")
    G = b.group
    act = b.action_table()
    bad: list[tuple[int, int]] = []
    for p in b.points():
        for g in range(G.order):
            if vals[act[p, g]] != G.conjugate(int(vals[p]), g):
                bad.append((p, g))
    return bad


def check_equivariance(f: EquivariantMap) -> tuple[bool, list[tuple[int, int]]]:
    """Exhaustive check of f(p*g) == g^-1 f(p) g over all points and elements.

    This is exactly the augmented-rack condition for (P, G, f).
    """
    witnesses = equivariance_witnesses(f.bundle, f.total_values())
    return (not witnesses, witnesses)


def to_gauge(f: EquivariantMap) -> GaugeTransformation:
    """The gauge transformation phi_f(p) = p * f(p).

    Its inverse is p -> p * f(p)^-1, and composition matches pointwise
    multiplication: to_gauge(compose_maps(f1, f2)) == to_gauge(f1).compose(to_gauge(f2)),
    i.e. f -> phi_f is a group isomorphism onto its image (not an anti-isomorphism).
    """
    b = f.bundle
    vals = f.total_values()
    act = b.action_table()
    perm = act[np.arange(b.total_size), vals]
    return GaugeTransformation(b, perm)


def compose_maps(f1: EquivariantMap, f2: EquivariantMap) -> EquivariantMap:
    """Pointwise product (f1 f2)(p) = f1(p) * f2(p)."""
    if f1.bundle != f2.bundle:
        raise BundleMismatch("maps live on different bundles")
    G = f1.bundle.group
    vals = tuple(
        G.mul(a, b) for a, b in zip(f1.section_values, f2.section_values)
    )
    return EquivariantMap(f1.bundle, vals)


def invert_map(f: EquivariantMap) -> EquivariantMap:
    G = f.bundle.group
    return EquivariantMap(f.bundle, tuple(G.inverse(v) for v in f.section_values))


def enumerate_maps(
    b: DiscreteBundle, cap: int = DEFAULT_ENUMERATION_CAP
) -> Iterator[EquivariantMap]:
    """All |G|^|M| equivariant maps, one per section-value assignment."""
    total = b.group.order ** b.base_size
    if total > cap:
        raise CapExceeded(f"{total} maps exceed the cap {cap}")
    for vals in itertools.product(range(b.group.order), repeat=b.base_size):
        yield EquivariantMap(b, vals)


# ---------------------------------------------------------------------------
# JSON interfaces
#   bundle: {"group": <name or group object>, "base_size": int}
#   map:    {"section_values": [int, ...]}
# ---------------------------------------------------------------------------

def bundle_to_json(b: DiscreteBundle) -> dict:
    group: object = b.group.name if b.group.name else group_to_json(b.group)
    return {"group": group, "base_size": b.base_size}


def bundle_from_json(obj) -> DiscreteBundle:
    if not isinstance(obj, dict) or "group" not in obj or "base_size" not in obj:
        raise ShapeError("bundle JSON must carry 'group' and 'base_size'")
    return trivial_bundle(group_from_json(obj["group"]), int(obj["base_size"]))


def load_bundle(path: str | Path) -> DiscreteBundle:
    return bundle_from_json(json.loads(Path(path).read_text()))


def map_to_json(f: EquivariantMap) -> dict:
    return {"section_values": list(f.section_values)}


def map_from_json(b: DiscreteBundle, obj) -> EquivariantMap:
    if not isinstance(obj, dict) or "section_values" not in obj:
        raise ShapeError("map JSON must carry 'section_values'")
    return EquivariantMap(b, tuple(int(v) for v in obj["section_values"]))


def load_map(b: DiscreteBundle, path: str | Path) -> EquivariantMap:
    return map_from_json(b, json.loads(Path(path).read_text()))
