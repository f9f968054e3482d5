"""Finite topological spaces in minimal-open-neighbourhood form.

Every topology on a finite set is determined by the smallest open set
``U_p`` around each point ``p``: a set is open exactly when it contains
``U_p`` for each of its points.  All subsets are bitsets over ``0..m-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CapacityExceeded, MemberOutOfRange
from .lattice import bits, mask_of

SEPARATION_CAP = 20
CLASSICAL = "classical"
FINER_PATCH = "finer_patch"
CUSTOM = "custom"


@dataclass(frozen=True, eq=False)
class FiniteTopology:
    size: int
    min_open: tuple[int, ...]
    provenance: str = CUSTOM
    subbase: str = ""
    labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        full = (1 << self.size) - 1
        if len(self.min_open) != self.size:
            raise MemberOutOfRange("min_open needs one entry per point")
        for p, u in enumerate(self.min_open):
            if u & ~full or not u >> p & 1:
                raise MemberOutOfRange(f"minimal open of point {p} is malformed", point=p)
            for q in bits(u):
                if self.min_open[q] & ~u:
                    raise MemberOutOfRange(
                        f"minimal opens are not coherent at points {p}, {q}", points=[p, q]
                    )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteTopology)
            and self.size == other.size
            and self.min_open == other.min_open
        )

    def __hash__(self) -> int:
        return hash((self.size, self.min_open))

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def point_closure(self) -> tuple[int, ...]:
        """``point_closure[p]`` is the closure of ``{p}``: every ``q`` whose ``U_q`` holds ``p``."""
        out = [0] * self.size
        for q, u in enumerate(self.min_open):
            for p in bits(u):
                out[p] |= 1 << q
        return tuple(out)

    def name(self, p: int) -> str:
        return self.labels[p] if self.labels else str(p)


def generate_from_subbase(
    size: int,
    subbase: Iterable[int],
    provenance: str = CUSTOM,
    description: str = "",
    labels: Sequence[str] | None = None,
) -> FiniteTopology:
    """Topology on ``size`` points generated by a family of bitsets.

    ``U_p`` is the intersection of the members containing ``p``; with no such
    member it is the whole space.
    """
    full = (1 << size) - 1
    U = [full] * size
    for s in subbase:
        if s & ~full or s < 0:
            raise MemberOutOfRange(f"subbase member {s:#x} leaves the point set", member=s)
        for p in bits(s):
            U[p] &= s
    return FiniteTopology(size, tuple(U), provenance, description, tuple(labels) if labels else None)


def classical_zariski(ctx) -> FiniteTopology:
    """Topology generated by the complements of all varieties."""
    full = ctx.full
    sub = {full & ~v for v in ctx.var}
    return generate_from_subbase(
        ctx.m,
        sorted(sub),
        CLASSICAL,
        "complements of varieties",
        [ctx.label(p) for p in ctx.points],
    )


def finer_patch(ctx) -> FiniteTopology:
    """Topology generated by every ``V(x)`` minus ``V(y)``."""
    full = ctx.full
    vs = sorted(set(ctx.var))
    sub = {a & (full & ~b) for a in vs for b in vs}
    return generate_from_subbase(
        ctx.m,
        sorted(sub),
        FINER_PATCH,
        "variety minus variety",
        [ctx.label(p) for p in ctx.points],
    )


def closure(T: FiniteTopology, A: int) -> int:
    out = 0
    for p in bits(A):
        out |= T.point_closure[p]
    return out


def interior(T: FiniteTopology, A: int) -> int:
    return mask_of(p for p in range(T.size) if T.min_open[p] & ~A == 0)


def open_hull(T: FiniteTopology, A: int) -> int:
    """Smallest open set containing ``A``."""
    out = 0
    for p in bits(A):
        out |= T.min_open[p]
    return out


def is_open(T: FiniteTopology, A: int) -> bool:
    return open_hull(T, A) == A


def is_closed(T: FiniteTopology, A: int) -> bool:
    return closure(T, A) == A


def is_irreducible(T: FiniteTopology, A: int) -> bool:
    """Non-empty and no two relatively open non-empty subsets are disjoint."""
    if not A:
        return False
    members = bits(A)
    for i, a in enumerate(members):
        ua = T.min_open[a] & A
        for b in members[i + 1:]:
            if not ua & T.min_open[b]:
                return False
    return True


def generic_points(T: FiniteTopology, F: int) -> int:
    return mask_of(g for g in range(T.size) if T.point_closure[g] == F)


def irreducible_closed_sets(T: FiniteTopology) -> list[int]:
    """Distinct point closures; in a finite space these are all the irreducible closed sets."""
    return sorted(set(T.point_closure))


def irreducible_components(T: FiniteTopology) -> list[int]:
    cls = irreducible_closed_sets(T)
    return [c for c in cls if not any(c != d and c & ~d == 0 for d in cls)]


def _union_closure(generators: Iterable[int], limit: int | None) -> list[int]:
    family = {0}
    for g in sorted(set(generators)):
        new = {f | g for f in family}
        family |= new
        if limit is not None and len(family) > limit:
            raise CapacityExceeded(f"more than {limit} sets", limit=limit)
    return sorted(family)


def open_sets(T: FiniteTopology, limit: int | None = None) -> list[int]:
    return _union_closure(T.min_open, limit)


def closed_sets(T: FiniteTopology, limit: int | None = None) -> list[int]:
    return _union_closure(T.point_closure, limit)


def connected_components(T: FiniteTopology) -> list[int]:
    parent = list(range(T.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p, u in enumerate(T.min_open):
        for q in bits(u):
            rp, rq = find(p), find(q)
            if rp != rq:
                parent[max(rp, rq)] = min(rp, rq)
    groups: dict[int, int] = {}
    for p in range(T.size):
        groups[find(p)] = groups.get(find(p), 0) | 1 << p
    return sorted(groups.values())


def _check_separation_cap(T: FiniteTopology):
    if T.size > SEPARATION_CAP:
        raise CapacityExceeded(
            f"regular/normal need closed-set enumeration; {T.size} points exceeds {SEPARATION_CAP}",
            size=T.size,
        )


def is_regular(T: FiniteTopology) -> bool:
    """Every non-empty closed ``F`` and point outside it have disjoint open neighbourhoods."""
    _check_separation_cap(T)
    for F in closed_sets(T):
        if not F:
            continue
        hull = open_hull(T, F)
        for x in bits(T.full & ~F):
            if T.min_open[x] & hull:
                return False
    return True


def is_normal(T: FiniteTopology) -> bool:
    _check_separation_cap(T)
    cls = [F for F in closed_sets(T) if F]
    hulls = {F: open_hull(T, F) for F in cls}
    for i, F in enumerate(cls):
        for G in cls[i + 1:]:
            if not F & G and hulls[F] & hulls[G]:
                return False
    return True


def is_t0(T: FiniteTopology) -> bool:
    return len(set(T.point_closure)) == T.size


def is_t1(T: FiniteTopology) -> bool:
    return all(c == 1 << p for p, c in enumerate(T.point_closure))


def is_t2(T: FiniteTopology) -> bool:
    U = T.min_open
    return all(not U[p] & U[q] for p in range(T.size) for q in range(p + 1, T.size))


def is_discrete(T: FiniteTopology) -> bool:
    return all(u == 1 << p for p, u in enumerate(T.min_open))


def is_connected(T: FiniteTopology) -> bool:
    return T.size > 0 and len(connected_components(T)) == 1


def is_hyperconnected(T: FiniteTopology) -> bool:
    return is_irreducible(T, T.full)


def is_ultraconnected(T: FiniteTopology) -> bool:
    # two disjoint non-empty closed sets contain disjoint point closures
    cl = T.point_closure
    return T.size > 0 and all(
        cl[p] & cl[q] for p in range(T.size) for q in range(p + 1, T.size)
    )


def is_sober(T: FiniteTopology) -> bool:
    return all(bin(generic_points(T, F)).count("1") == 1 for F in irreducible_closed_sets(T))


def compact_open_basis(T: FiniteTopology) -> list[int]:
    """Minimal opens closed under pairwise intersection; finite so every member is compact."""
    family = set(T.min_open)
    frontier = set(family)
    while frontier:
        new = set()
        for a in frontier:
            for b in family:
                c = a & b
                if c not in family:
                    new.add(c)
        family |= new
        frontier = new
    return sorted(family)


def has_intersection_closed_compact_basis(T: FiniteTopology) -> bool:
    basis = compact_open_basis(T)
    as_set = set(basis)
    return (
        all(is_open(T, B) for B in basis)
        and all(u in as_set for u in T.min_open)
        and all((a & b) in as_set for a in basis for b in basis)
    )


def is_spectral(T: FiniteTopology) -> bool:
    compact = True  # finite space
    return compact and is_t0(T) and is_sober(T) and has_intersection_closed_compact_basis(T)


def property_report(T: FiniteTopology) -> dict:
    """Every separation / connectedness / spectral flag, computed on the finite space."""
    flags = {
        "T0": is_t0(T),
        "T1": is_t1(T),
        "T2": is_t2(T),
        "discrete": is_discrete(T),
        "connected": is_connected(T),
        "hyperconnected": is_hyperconnected(T),
        "ultraconnected": is_ultraconnected(T),
        "sober": is_sober(T),
        "compact": True,
        "spectral": is_spectral(T),
    }
    notes = {"compact": "finite space"}
    try:
        flags["regular"] = is_regular(T)
        flags["normal"] = is_normal(T)
    except CapacityExceeded as exc:
        flags["regular"] = None
        flags["normal"] = None
        notes["regular"] = notes["normal"] = str(exc)
    return {"flags": flags, "notes": notes}


def to_json(T: FiniteTopology) -> dict:
    names = [T.name(p) for p in range(T.size)]
    return {
        "points": names,
        "min_open": [[names[q] for q in bits(u)] for u in T.min_open],
        "flags": property_report(T)["flags"],
        "provenance": T.provenance,
    }


def specialization_edges(T: FiniteTopology) -> list[tuple[int, int]]:
    """Edges ``p -> q`` with ``q`` in ``U_p``, ``p != q``, transitively reduced."""
    edges = []
    for p, u in enumerate(T.min_open):
        strict = u & ~(1 << p)
        direct = strict
        for q in bits(strict):
            if T.min_open[q] != u:
                direct &= ~(T.min_open[q] & ~(1 << q))
        edges.extend((p, q) for q in bits(direct))
    return edges


def to_dot(T: FiniteTopology, name: str = "specialization") -> str:
    lines = [f"digraph {name} {{"]
    for p in range(T.size):
        label = T.name(p).replace('"', '\\"')
        lines.append(f'  p{p} [label="{label}"];')
    for p, q in specialization_edges(T):
        lines.append(f"  p{p} -> p{q};")
    lines.append("}")
    return "\n".join(lines) + "\n"
