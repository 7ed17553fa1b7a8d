"""Quandles induced on a discrete principal bundle by an equivariant map.

An equivariant map f makes (P, G, f) an augmented rack, so P carries the rack
    p1 <| p2 = p1 * f(p2),
and the associated quandle
    p1 <|f p2 = p1 * f(p1)^-1 f(p2)  =  phi_f^-1(p1) * f(p2),
the gauge quandle. Both operations preserve fibers, every fiber is a quandle
in its own right, and quotients by suitable subgroups inherit the structure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bundles import (
    DEFAULT_ENUMERATION_CAP,
    DiscreteBundle,
    EquivariantMap,
    bundle_to_json,
    enumerate_maps,
    to_gauge,
)
from .errors import (
    AlgebraError,
    CentralizerViolation,
    NormalizerViolation,
    ShapeError,
)
from .groups import FiniteGroup, Subgroup, centralizes, cosets, normalizer
from .racks import (
    MagmaTable,
    element_invariants,
    find_isomorphism,
    generalized_alexander,
    magma_from_table,
    magma_to_json,
    verify_quandle,
)


def rack_from_map(b: DiscreteBundle, f: EquivariantMap) -> MagmaTable:
    """The augmented-rack operation p1 <| p2 = p1 * f(p2).

    Always a rack; a quandle only when f is identically the unit, since
    x <| x = x * f(x).
    """
    act = b.action_table()
    fvals = f.total_values()
    return magma_from_table(act[:, fvals])


@dataclass(frozen=True, eq=False)
class GaugeQuandle:
    """A gauge quandle: the bundle, the inducing map, and the full table."""

    bundle: DiscreteBundle
    map: EquivariantMap
    table: MagmaTable

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaugeQuandle):
            return NotImplemented
        return (
            self.bundle == other.bundle
            and self.map == other.map
            and self.table == other.table
        )


def build(b: DiscreteBundle, f: EquivariantMap, *, check: bool = True) -> GaugeQuandle:
    """Construct the gauge quandle p1 <|f p2 = p1 * f(p1)^-1 f(p2).

    The equivalent form phi_f^-1(p1) * f(p2) is computed independently and
    asserted equal; with check=True the quandle axioms are verified
    exhaustively over all |P|^3 triples.
    """
    G = b.group
    act = b.action_table()
    fvals = f.total_values()
    finv = G.inverses[fvals]

    # op[p1, p2] = p1 * (f(p1)^-1 * f(p2))
    shift = G.table[np.ix_(finv, fvals)]
    op = act[np.arange(b.total_size)[:, None], shift]

    phi_inv = to_gauge(f).inverted()
    op_alt = act[phi_inv.values][:, fvals]
    if not np.array_equal(op, op_alt):
        raise AlgebraError("the two defining forms of the gauge quandle disagree")

    table = magma_from_table(op)
    if check:
        report = verify_quandle(table)
        if not report.is_quandle:
            raise AlgebraError(f"constructed table fails quandle axioms: {report.to_json()}")
        bases = np.arange(b.total_size) // G.order
        if not np.array_equal(bases[op], np.broadcast_to(bases[:, None], op.shape)):
            raise AlgebraError("operation does not preserve fibers")
    return GaugeQuandle(bundle=b, map=f, table=table)


def fiber_quandle(q: GaugeQuandle, m: int) -> MagmaTable:
    """The subquandle on pi^-1(m), re-indexed 0..|G|-1 in chart order."""
    b = q.bundle
    if not 0 <= m < b.base_size:
        raise ShapeError(f"base index {m} out of range")
    pts = np.array([b.point(m, g) for g in range(b.group.order)])
    sub = q.table.op[np.ix_(pts, pts)] % b.group.order
    return magma_from_table(sub)


def transport_fiber(q: GaugeQuandle, m: int) -> tuple[MagmaTable, np.ndarray]:
    """Move the fiber quandle at m onto G through the chart psi_m.

    Returns the transported table g1 <| g2 = psi_m(psi_m^-1(g1) <|f psi_m^-1(g2))
    and the chart bijection (fiber position -> group element) as the witness.
    The result always coincides with the generalized Alexander quandle of G
    for the inner automorphism of f(s(m)).
    """
    b = q.bundle
    if not 0 <= m < b.base_size:
        raise ShapeError(f"base index {m} out of range")
    n = b.group.order
    psi = np.array([b.coord(b.point(m, g)) for g in range(n)], dtype=np.int64)
    op = np.empty((n, n), dtype=np.int64)
    psi_inv = np.empty(n, dtype=np.int64)
    psi_inv[psi] = np.arange(n)
    for g1 in range(n):
        for g2 in range(n):
            p = q.table.apply(b.point(m, psi_inv[g1]), b.point(m, psi_inv[g2]))
            op[g1, g2] = b.coord(p)
    return magma_from_table(op), psi


@dataclass(frozen=True, eq=False)
class ReducedQuandle:
    """The quotient quandle on the classes p*H of a gauge quandle."""

    parent: GaugeQuandle
    subgroup: Subgroup
    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray
    table: MagmaTable


def reduce(q: GaugeQuandle, H: Subgroup) -> ReducedQuandle:
    """Quotient the gauge quandle by the right H-orbits p*H.

    Requires Im(f), evaluated on every total point, to lie in the normalizer
    of H (NormalizerViolation with witness (p, h) otherwise). Well-definedness
    of [p1] <| [p2] = [p1 <|f p2] is verified over all representative pairs,
    and the quotient table is verified to be a quandle.
    """
    b = q.bundle
    if H.group != b.group:
        raise ShapeError("subgroup belongs to a different group")
    norm = set(normalizer(b.group, H).elements)
    members = set(H.elements)
    fvals = q.map.total_values()
    for p in b.points():
        v = int(fvals[p])
        if v not in norm:
            witness_h = next(
                h for h in H.elements if b.group.conjugate(h, v) not in members
            )
            raise NormalizerViolation((p, witness_h))

    act = b.action_table()
    class_of = np.full(b.total_size, -1, dtype=np.int64)
    classes: list[tuple[int, ...]] = []
    for p in b.points():
        if class_of[p] >= 0:
            continue
        orbit = tuple(sorted(int(act[p, h]) for h in H.elements))
        idx = len(classes)
        classes.append(orbit)
        for r in orbit:
            class_of[r] = idx

    k = len(classes)
    op = np.full((k, k), -1, dtype=np.int64)
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            results = {int(class_of[q.table.op[p1, p2]]) for p1 in ci for p2 in cj}
            if len(results) != 1:
                raise AlgebraError(
                    f"quotient not well-defined on classes ({i}, {j}): images {sorted(results)}"
                )
            op[i, j] = results.pop()

    table = magma_from_table(op)
    report = verify_quandle(table)
    if not report.is_quandle:
        raise AlgebraError(f"reduced table fails quandle axioms: {report.to_json()}")
    class_of.setflags(write=False)
    return ReducedQuandle(
        parent=q,
        subgroup=H,
        classes=tuple(classes),
        class_of=class_of,
        table=table,
    )


def homogeneous_quandle(G: FiniteGroup, H: Subgroup, c: int) -> MagmaTable:
    """[g1] <| [g2] = [sigma_c(g1 g2^-1) g2] on the right cosets Hg.

    Requires c to commute with every element of H (CentralizerViolation with
    the offending h otherwise); well-definedness is verified exhaustively over
    all representative pairs. With H = {e} this is the generalized Alexander
    quandle of sigma_c.
    """
    if H.group != G:
        raise ShapeError("subgroup belongs to a different group")
    if not 0 <= c < G.order:
        raise ShapeError(f"element {c} out of range")
    if not centralizes(G, c, H):
        witness = next(h for h in H.elements if G.mul(c, h) != G.mul(h, c))
        raise CentralizerViolation(witness)

    blocks = cosets(G, H, side="right")
    class_of = np.empty(G.order, dtype=np.int64)
    for i, block in enumerate(blocks):
        for g in block:
            class_of[g] = i

    sigma = G.inner_automorphism(c)
    ga = generalized_alexander(G, sigma)

    k = len(blocks)
    op = np.full((k, k), -1, dtype=np.int64)
    for i, bi in enumerate(blocks):
        for j, bj in enumerate(blocks):
            results = {int(class_of[ga.op[g1, g2]]) for g1 in bi for g2 in bj}
            if len(results) != 1:
                raise AlgebraError(
                    f"coset table not well-defined on classes ({i}, {j}): images {sorted(results)}"
                )
            op[i, j] = results.pop()

    labels = ["{" + ",".join(str(g) for g in block) + "}" for block in blocks]
    table = magma_from_table(op, labels=labels)
    report = verify_quandle(table)
    if not report.is_quandle:
        raise AlgebraError(f"homogeneous table fails quandle axioms: {report.to_json()}")
    return table


def gauge_quandle_to_json(q: GaugeQuandle) -> dict:
    """Quandle file format plus a provenance block recording the inputs."""
    obj = magma_to_json(q.table)
    obj["provenance"] = {
        "bundle": bundle_to_json(q.bundle),
        "section_values": list(q.map.section_values),
    }
    return obj


@dataclass(frozen=True)
class CensusClass:
    """One isomorphism class of gauge quandles over a fixed bundle."""

    representative: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.members)


def isomorphism_census(
    b: DiscreteBundle, cap: int = DEFAULT_ENUMERATION_CAP, *, check: bool = True
) -> list[CensusClass]:
    """Group all |G|^|M| gauge quandles on b into isomorphism classes.

    Classes appear in order of their first representative (enumeration is
    lexicographic in section values), so output is deterministic.
    """
    buckets: dict[tuple, list[tuple[GaugeQuandle, list[tuple[int, ...]]]]] = {}
    ordered: list[tuple[GaugeQuandle, list[tuple[int, ...]]]] = []
    for f in enumerate_maps(b, cap=cap):
        q = build(b, f, check=check)
        key = tuple(sorted(element_invariants(q.table)))
        entry = None
        for rep, members in buckets.setdefault(key, []):
            if find_isomorphism(q.table, rep.table) is not None:
                entry = (rep, members)
                break
        if entry is None:
            entry = (q, [])
            buckets[key].append(entry)
            ordered.append(entry)
        entry[1].append(f.section_values)
    return [
        CensusClass(representative=rep.map.section_values, members=tuple(members))
        for rep, members in ordered
    ]
