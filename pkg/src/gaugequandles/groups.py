"""Finite groups as Cayley tables, plus the structural queries the rest of
the library consumes (inverses, conjugation, subgroups, normalizers, cosets).

Elements are dense integer indices 0..n-1 with the identity fixed at 0.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import AxiomViolation, ShapeError

# Exhaustive O(n^3) associativity validation is capped here; larger tables
# must be constructed with verify_associativity=False.
ASSOCIATIVITY_CAP = 256


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its Cayley table, table[a, b] = a*b.

    Identity is element 0. Instances are immutable; construct through
    group_from_table or the catalog.
    """

    order: int
    table: np.ndarray
    inverses: np.ndarray
    name: str = ""

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inverses[a])

    def conjugate(self, a: int, g: int) -> int:
        """g^-1 * a * g."""
        t = self.table
        return int(t[t[self.inverses[g], a], g])

    def inner_automorphism(self, g: int) -> np.ndarray:
        """The permutation a -> g^-1 * a * g as an index array."""
        t = self.table
        return t[t[self.inverses[g], :], g].copy()

    def elements(self) -> range:
        return range(self.order)

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.table, other.table)

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"FiniteGroup({label}, order={self.order})"


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A validated subgroup, stored as a sorted tuple of element indices."""

    group: FiniteGroup
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in set(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group == other.group and self.elements == other.elements

    def __repr__(self) -> str:
        return f"Subgroup({list(self.elements)} of {self.group!r})"


def _as_index_table(table) -> np.ndarray:
    arr = np.asarray(table)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"Cayley table must be square, got shape {arr.shape}")
    if arr.size == 0:
        raise ShapeError("Cayley table must be non-empty")
    if not np.issubdtype(arr.dtype, np.integer):
        if np.issubdtype(arr.dtype, np.floating) and np.all(arr == arr.astype(np.int64)):
            arr = arr.astype(np.int64)
        else:
            raise ShapeError(f"Cayley table entries must be integers, got dtype {arr.dtype}")
    return arr.astype(np.int64)


def _check_associativity(t: np.ndarray) -> None:
    n = t.shape[0]
    for a in range(n):
        lhs = t[t[a]]        # lhs[b, c] = (a*b)*c
        rhs = t[a][t]        # rhs[b, c] = a*(b*c)
        if not np.array_equal(lhs, rhs):
            b, c = np.argwhere(lhs != rhs)[0]
            raise AxiomViolation("associativity", (a, int(b), int(c)))


def group_from_table(table, name: str = "", *, verify_associativity: bool = True) -> FiniteGroup:
    """Validate a Cayley table and return the group with identity relabeled to 0.

    Raises ShapeError for malformed input and AxiomViolation (with a witness)
    when closure, associativity, identity, or inverses fail.
    """
    t = _as_index_table(table)
    n = t.shape[0]

    if t.min() < 0 or t.max() >= n:
        a, b = np.argwhere((t < 0) | (t >= n))[0]
        raise AxiomViolation("closure", (int(a), int(b)), f"entry {int(t[a, b])} out of range")

    idx = np.arange(n)
    identity = None
    for e in range(n):
        if np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx):
            identity = e
            break
    if identity is None:
        raise AxiomViolation("identity", None, "no two-sided identity element")

    if verify_associativity:
        if n > ASSOCIATIVITY_CAP:
            raise ShapeError(
                f"order {n} exceeds the associativity check cap {ASSOCIATIVITY_CAP}; "
                "pass verify_associativity=False to skip"
            )
        _check_associativity(t)

    inverses = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        for b in np.flatnonzero(t[a] == identity):
            if t[b, a] == identity:
                inverses[a] = b
                break
        if inverses[a] < 0:
            raise AxiomViolation("inverse", (a,))

    if identity != 0:
        # Relabel so the identity sits at index 0, preserving the relative
        # order of the remaining elements.
        relabel = np.empty(n, dtype=np.int64)
        old_order = [identity] + [a for a in range(n) if a != identity]
        for new, old in enumerate(old_order):
            relabel[old] = new
        new_t = np.empty_like(t)
        for a in range(n):
            new_t[relabel[a], relabel] = relabel[t[a]]
        t = new_t
        inverses = relabel[inverses[np.argsort(relabel)]]

    t.setflags(write=False)
    inverses.setflags(write=False)
    return FiniteGroup(order=n, table=t, inverses=inverses, name=name)


# ---------------------------------------------------------------------------
# Subgroups and related queries
# ---------------------------------------------------------------------------

def subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Validate a set of element indices as a subgroup of G."""
    elems = sorted({int(a) for a in elements})
    if any(a < 0 or a >= G.order for a in elems):
        raise ShapeError(f"subgroup elements out of range for order {G.order}")
    member = set(elems)
    if 0 not in member:
        raise AxiomViolation("identity", None, "subgroup must contain the identity")
    for a in elems:
        if G.inverse(a) not in member:
            raise AxiomViolation("inverse", (a,), "subgroup not closed under inverses")
        for b in elems:
            if G.mul(a, b) not in member:
                raise AxiomViolation("closure", (a, b), "subgroup not closed under product")
    return Subgroup(group=G, elements=tuple(elems))


def generated_subgroup(G: FiniteGroup, generators: Iterable[int]) -> Subgroup:
    """The subgroup generated by the given elements."""
    closure = {0}
    frontier = {0, *(int(g) for g in generators)}
    while frontier:
        closure |= frontier
        frontier = {
            G.mul(a, b) for a in closure for b in closure
        } | {G.inverse(a) for a in closure}
        frontier -= closure
    return subgroup(G, closure)


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """All g with g^-1 H g = H, as a subgroup."""
    helems = set(H.elements)
    keep = [
        g for g in G.elements()
        if {G.conjugate(h, g) for h in H.elements} == helems
    ]
    return subgroup(G, keep)


def cosets(G: FiniteGroup, H: Subgroup, side: str = "left") -> list[tuple[int, ...]]:
    """Partition G into left cosets gH or right cosets Hg.

    Blocks are sorted internally and ordered by their smallest element.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    seen: set[int] = set()
    blocks: list[tuple[int, ...]] = []
    for g in G.elements():
        if g in seen:
            continue
        if side == "left":
            block = sorted(G.mul(g, h) for h in H.elements)
        else:
            block = sorted(G.mul(h, g) for h in H.elements)
        seen.update(block)
        blocks.append(tuple(block))
    blocks.sort(key=lambda b: b[0])
    return blocks


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    helems = set(H.elements)
    return all(
        G.conjugate(h, g) in helems for g in G.elements() for h in H.elements
    )


def centralizes(G: FiniteGroup, g: int, H: Subgroup) -> bool:
    """True iff g*h == h*g for every h in H."""
    return all(G.mul(g, h) == G.mul(h, g) for h in H.elements)


# Function forms of the single-group queries; internal code uses the methods.
def inverse(G: FiniteGroup, a: int) -> int:
    return G.inverse(a)


def conjugate(G: FiniteGroup, a: int, g: int) -> int:
    return G.conjugate(a, g)


def inner_automorphism(G: FiniteGroup, g: int) -> np.ndarray:
    return G.inner_automorphism(g)


# ---------------------------------------------------------------------------
# Built-in catalog
# ---------------------------------------------------------------------------

def _table_from_elements(elements: Sequence, compose) -> np.ndarray:
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    t = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            t[i, j] = index[compose(a, b)]
    return t


def _cyclic_table(n: int) -> np.ndarray:
    idx = np.arange(n)
    return (idx[:, None] + idx[None, :]) % n


def _dihedral_table(n: int) -> np.ndarray:
    # Elements (k, e) = r^k s^e, encoded as k + n*e; rotations come first.
    # (k1,e1)*(k2,e2) = (k1 + (-1)^e1 k2 mod n, e1 xor e2).
    elements = [(k, e) for e in (0, 1) for k in range(n)]

    def compose(x, y):
        k1, e1 = x
        k2, e2 = y
        k = (k1 - k2) % n if e1 else (k1 + k2) % n
        return (k, e1 ^ e2)

    return _table_from_elements(elements, compose)


def symmetric_group_elements(n: int) -> list[tuple[int, ...]]:
    """Permutations of range(n) in lexicographic order; identity first."""
    return sorted(itertools.permutations(range(n)))


def compose_permutations(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """(a*b)(i) = a(b(i)): apply b first, then a."""
    return tuple(a[b[i]] for i in range(len(a)))


def _symmetric_table(n: int) -> np.ndarray:
    return _table_from_elements(symmetric_group_elements(n), compose_permutations)


def _quaternion_table() -> np.ndarray:
    # Units 1, i, j, k with signs; element order: +1,-1,+i,-i,+j,-j,+k,-k.
    units = "1ijk"
    rules = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    elements = [(s, u) for u in units for s in (1, -1)]

    def compose(x, y):
        s1, u1 = x
        s2, u2 = y
        s3, u3 = rules[(u1, u2)]
        return (s1 * s2 * s3, u3)

    return _table_from_elements(elements, compose)


def _catalog_tables() -> dict[str, np.ndarray]:
    tables: dict[str, np.ndarray] = {}
    for n in range(1, 13):
        tables[f"Z{n}"] = _cyclic_table(n)
    for n in range(2, 7):
        tables[f"D{n}"] = _dihedral_table(n)
    tables["S3"] = _symmetric_table(3)
    tables["S4"] = _symmetric_table(4)
    tables["Q8"] = _quaternion_table()
    return tables


_CATALOG_TABLES = _catalog_tables()
_CATALOG_CACHE: dict[str, FiniteGroup] = {}


def catalog_names() -> list[str]:
    return list(_CATALOG_TABLES)


def catalog(name: str) -> FiniteGroup:
    """Look up a built-in group by name ("Z4", "S3", "D4", "Q8", ...)."""
    key = "Z1" if name == "trivial" else name
    if key not in _CATALOG_TABLES:
        raise KeyError(f"unknown catalog group {name!r}; available: {catalog_names()}")
    if key not in _CATALOG_CACHE:
        _CATALOG_CACHE[key] = group_from_table(_CATALOG_TABLES[key], name=key)
    return _CATALOG_CACHE[key]


# ---------------------------------------------------------------------------
# JSON interface: {"name": str, "order": n, "table": [[int, ...], ...]}
# ---------------------------------------------------------------------------

def group_to_json(G: FiniteGroup) -> dict:
    return {"name": G.name, "order": G.order, "table": G.table.tolist()}


def group_from_json(obj) -> FiniteGroup:
    """Accepts the group file format, a bare catalog name, or an inline table."""
    if isinstance(obj, str):
        return catalog(obj)
    if isinstance(obj, dict):
        if "table" in obj:
            G = group_from_table(obj["table"], name=str(obj.get("name", "")))
            if "order" in obj and int(obj["order"]) != G.order:
                raise ShapeError(f"declared order {obj['order']} != table size {G.order}")
            return G
        if "name" in obj:
            return catalog(str(obj["name"]))
    raise ShapeError("group JSON must be a catalog name or carry a 'table'")


def load_group(path: str | Path) -> FiniteGroup:
    return group_from_json(json.loads(Path(path).read_text()))
