"""Finite magmas with rack/quandle axiom verification and the standard
quandle constructions.

A rack is a set with a binary operation x <| y that is right self-distributive,
    (x <| y) <| z == (x <| z) <| (y <| z),
and whose right translations  - <| y  are bijective. A quandle additionally
satisfies x <| x == x. Tables store op[x, y] = x <| y.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import AutomorphismRequired, NotARack, ShapeError, SizeMismatch
from .groups import FiniteGroup

# Chunk the n^3 self-distributivity scan to bound peak memory.
_SD_CHUNK_ELEMENTS = 1_000_000


@dataclass(frozen=True, eq=False)
class MagmaTable:
    """An n x n operation table op[x, y] = x <| y over elements 0..n-1."""

    size: int
    op: np.ndarray
    labels: tuple[str, ...] | None = None

    def apply(self, x: int, y: int) -> int:
        return int(self.op[x, y])

    def __eq__(self, other) -> bool:
        # Entrywise table equality; labels are display-only.
        if not isinstance(other, MagmaTable):
            return NotImplemented
        return self.size == other.size and np.array_equal(self.op, other.op)

    def __repr__(self) -> str:
        return f"MagmaTable(size={self.size})"


@dataclass(frozen=True)
class RackReport:
    """Outcome of a rack/quandle axiom scan, with sorted witness lists."""

    is_rack: bool
    is_quandle: bool
    sd_violations: tuple[tuple[int, int, int], ...]
    bijectivity_violations: tuple[int, ...]
    idem_violations: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "is_rack": self.is_rack,
            "is_quandle": self.is_quandle,
            "sd_violations": [list(w) for w in self.sd_violations],
            "bijectivity_violations": list(self.bijectivity_violations),
            "idem_violations": list(self.idem_violations),
        }


def magma_from_table(op, labels: Sequence[str] | None = None) -> MagmaTable:
    arr = np.asarray(op)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.size == 0:
        raise ShapeError(f"operation table must be square and non-empty, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ShapeError(f"operation table entries must be integers, got dtype {arr.dtype}")
    arr = arr.astype(np.int64)
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise ShapeError("operation table entries out of range")
    if labels is not None and len(labels) != n:
        raise ShapeError(f"got {len(labels)} labels for {n} elements")
    arr.setflags(write=False)
    return MagmaTable(size=n, op=arr, labels=tuple(labels) if labels is not None else None)


def verify_rack(m: MagmaTable) -> RackReport:
    """Exhaustively scan all axioms and report every violation.

    The self-distributivity scan covers all n^3 triples; bijectivity is a
    per-column permutation test; idempotency is also scanned so the report
    can state is_quandle.
    """
    op = m.op
    n = m.size
    idx = np.arange(n)

    col_sorted = np.sort(op, axis=0)
    bij = tuple(int(y) for y in np.flatnonzero(~(col_sorted == idx[:, None]).all(axis=0)))

    idem = tuple(int(x) for x in np.flatnonzero(np.diagonal(op) != idx))

    sd: list[tuple[int, int, int]] = []
    chunk = max(1, _SD_CHUNK_ELEMENTS // (n * n))
    for start in range(0, n, chunk):
        xs = np.arange(start, min(start + chunk, n))
        lhs = op[op[xs]]                                # [i, y, z] = (x <| y) <| z
        rhs = op[op[xs][:, None, :], op[None, :, :]]    # [i, y, z] = (x <| z) <| (y <| z)
        for i, y, z in np.argwhere(lhs != rhs):
            sd.append((int(xs[i]), int(y), int(z)))

    is_rack = not sd and not bij
    return RackReport(
        is_rack=is_rack,
        is_quandle=is_rack and not idem,
        sd_violations=tuple(sd),
        bijectivity_violations=bij,
        idem_violations=idem,
    )


def verify_quandle(m: MagmaTable) -> RackReport:
    """Rack scan plus idempotency; see verify_rack (one scan covers both)."""
    return verify_rack(m)


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def trivial_quandle(n: int) -> MagmaTable:
    """x <| y = x for all x, y."""
    if n < 1:
        raise ShapeError("trivial quandle needs at least one element")
    op = np.broadcast_to(np.arange(n)[:, None], (n, n)).copy()
    return magma_from_table(op)


def conjugation_quandle(G: FiniteGroup) -> MagmaTable:
    """a <| b = b^-1 * a * b on the elements of G."""
    t = G.table
    n = G.order
    op = np.empty((n, n), dtype=np.int64)
    for b in range(n):
        op[:, b] = t[t[G.inverses[b], :], b]
    return magma_from_table(op)


def check_automorphism(G: FiniteGroup, sigma) -> np.ndarray:
    """Validate sigma as a group automorphism, returned as an index array.

    Raises AutomorphismRequired with a witness pair (a, b) on failure.
    """
    s = np.asarray(sigma, dtype=np.int64)
    if s.shape != (G.order,) or sorted(s.tolist()) != list(range(G.order)):
        raise ShapeError(f"sigma must be a permutation of 0..{G.order - 1}")
    t = G.table
    mism = np.argwhere(s[t] != t[np.ix_(s, s)])
    if len(mism):
        a, b = mism[0]
        raise AutomorphismRequired((int(a), int(b)))
    return s


def generalized_alexander(G: FiniteGroup, sigma) -> MagmaTable:
    """g1 <| g2 = sigma(g1 * g2^-1) * g2 for an automorphism sigma of G."""
    s = check_automorphism(G, sigma)
    t = G.table
    n = G.order
    op = np.empty((n, n), dtype=np.int64)
    for g2 in range(n):
        op[:, g2] = t[s[t[:, G.inverses[g2]]], g2]
    return magma_from_table(op)


def rack_iota(m: MagmaTable) -> np.ndarray:
    """The map iota with iota(x) <| x == x, recomputed by column scan.

    Existence and uniqueness follow from bijectivity of the right
    translations; requires a rack.
    """
    report = verify_rack(m)
    if not report.is_rack:
        raise NotARack(f"table fails rack axioms: {report.to_json()}")
    n = m.size
    iota = np.empty(n, dtype=np.int64)
    for x in range(n):
        iota[x] = int(np.flatnonzero(m.op[:, x] == x)[0])
    return iota


def associated_quandle(m: MagmaTable) -> MagmaTable:
    """The quandle x <|' y = iota(x) <| y induced by a rack.

    If m is already a quandle, iota is the identity and the table is
    returned unchanged.
    """
    iota = rack_iota(m)
    return magma_from_table(m.op[iota], labels=m.labels)


# ---------------------------------------------------------------------------
# Morphisms and isomorphism search
# ---------------------------------------------------------------------------

def morphism_witnesses(f, src: MagmaTable, dst: MagmaTable) -> list[tuple[int, int]]:
    """Pairs (x, y) where f(x <| y) != f(x) <| f(y), sorted."""
    fa = np.asarray(f, dtype=np.int64)
    if fa.shape != (src.size,):
        raise ShapeError(f"map must assign all {src.size} source elements")
    if fa.min() < 0 or fa.max() >= dst.size:
        raise ShapeError("map values out of range for the target table")
    bad = np.argwhere(fa[src.op] != dst.op[np.ix_(fa, fa)])
    return [(int(x), int(y)) for x, y in bad]


def is_morphism(f, src: MagmaTable, dst: MagmaTable) -> bool:
    return not morphism_witnesses(f, src, dst)


def _cycle_type(perm: np.ndarray) -> tuple[int, ...]:
    n = len(perm)
    seen = np.zeros(n, dtype=bool)
    lengths = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = int(perm[x])
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def _column_signature(col: np.ndarray) -> tuple:
    # Cycle type for permutation columns; in-degree profile otherwise (both
    # are preserved by relabeling).
    n = len(col)
    if sorted(col.tolist()) == list(range(n)):
        return ("perm", _cycle_type(col))
    return ("func", tuple(sorted(np.unique(col, return_counts=True)[1].tolist())))


def element_invariants(m: MagmaTable) -> list[tuple]:
    """Per-element fingerprints preserved by any isomorphism."""
    op = m.op
    n = m.size
    values, counts = np.unique(op, return_counts=True)
    occurrences = dict(zip(values.tolist(), counts.tolist()))
    inv = []
    for x in range(n):
        right_sig = _column_signature(op[:, x])
        row_profile = tuple(sorted(np.unique(op[x], return_counts=True)[1].tolist()))
        inv.append((
            right_sig,
            bool(op[x, x] == x),
            occurrences.get(x, 0),
            row_profile,
        ))
    return inv


def find_isomorphism(a: MagmaTable, b: MagmaTable) -> list[int] | None:
    """Search for a bijection f with f(x <| y) = f(x) <| f(y).

    Backtracking over images, pruned by per-element invariants (right
    translation cycle type, x <| x fixed-point flag, occurrence counts).
    Returns the witness as a list, or None after exhaustion.
    """
    if a.size != b.size:
        raise SizeMismatch(f"sizes differ: {a.size} != {b.size}")
    n = a.size
    inv_a = element_invariants(a)
    inv_b = element_invariants(b)
    if sorted(inv_a) != sorted(inv_b):
        return None

    candidates = {x: [w for w in range(n) if inv_b[w] == inv_a[x]] for x in range(n)}
    # Most-constrained-first ordering keeps the search shallow.
    order = sorted(range(n), key=lambda x: (len(candidates[x]), x))
    op_a, op_b = a.op, b.op
    f = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=bool)

    def consistent(x: int, assigned: list[int]) -> bool:
        # A pair (u, v) is fully checkable once u, v, and op_a[u, v] are all
        # mapped; x is the element mapped last, so it suffices to look at
        # pairs involving x and pairs whose op value is x.
        group = assigned + [x]
        for u in group:
            for v in group:
                if u != x and v != x and op_a[u, v] != x:
                    continue
                img = f[op_a[u, v]]
                if img >= 0 and img != op_b[f[u], f[v]]:
                    return False
        return True

    def search(pos: int, assigned: list[int]) -> bool:
        if pos == n:
            return True
        x = order[pos]
        for w in candidates[x]:
            if used[w]:
                continue
            f[x] = w
            used[w] = True
            if consistent(x, assigned):
                assigned.append(x)
                if search(pos + 1, assigned):
                    return True
                assigned.pop()
            f[x] = -1
            used[w] = False
        return False

    if search(0, []):
        assert is_morphism(f, a, b)
        return [int(v) for v in f]
    return None


# ---------------------------------------------------------------------------
# JSON interface: {"size": n, "op": [[int, ...], ...], "labels": [...]?}
# ---------------------------------------------------------------------------

def magma_to_json(m: MagmaTable) -> dict:
    obj: dict = {"size": m.size, "op": m.op.tolist()}
    if m.labels is not None:
        obj["labels"] = list(m.labels)
    return obj


def magma_from_json(obj) -> MagmaTable:
    if not isinstance(obj, dict) or "op" not in obj:
        raise ShapeError("quandle JSON must carry an 'op' table")
    m = magma_from_table(obj["op"], labels=obj.get("labels"))
    if "size" in obj and int(obj["size"]) != m.size:
        raise ShapeError(f"declared size {obj['size']} != table size {m.size}")
    return m


def load_magma(path: str | Path) -> MagmaTable:
    return magma_from_json(json.loads(Path(path).read_text()))
