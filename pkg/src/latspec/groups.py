"""Finite groups from multiplication tables, normal-subgroup lattices and centre spectra."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

from .errors import CapacityExceeded, NotAGroup, SchemaError, capacity
from .lattice import Lattice, bits, mask_of, validate_lattice

NORMAL = "normal"
CENTER = "center"
FINITE_CENTER = "finite_center"
GROUP_KINDS = (NORMAL, CENTER, FINITE_CENTER)


@dataclass(frozen=True)
class GroupTable:
    order: int
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        g = self.order
        if not isinstance(g, int) or g < 1:
            raise NotAGroup(f"order must be a positive integer, got {g!r}")
        if g > capacity("group"):
            raise CapacityExceeded(f"order {g} exceeds the group cap {capacity('group')}", size=g)
        table = tuple(tuple(row) for row in self.table)
        object.__setattr__(self, "table", table)
        if len(table) != g or any(len(row) != g for row in table):
            raise NotAGroup("table must be order x order")
        if any(not isinstance(v, int) or not 0 <= v < g for row in table for v in row):
            raise NotAGroup("table entries must be element indices")
        ids = [e for e in range(g) if all(table[e][x] == x and table[x][e] == x for x in range(g))]
        if not ids:
            raise NotAGroup("no identity element")
        e = ids[0]
        for x in range(g):
            if not any(table[x][y] == e for y in range(g)):
                raise NotAGroup(f"element {x} has no inverse", element=x)
        for x in range(g):
            for y in range(g):
                xy = table[x][y]
                for z in range(g):
                    if table[xy][z] != table[x][table[y][z]]:
                        raise NotAGroup(f"associativity fails at ({x},{y},{z})", triple=[x, y, z])
        if self.names is not None and len(self.names) != g:
            raise SchemaError("names must list one label per element")

    @cached_property
    def identity(self) -> int:
        return next(
            e for e in range(self.order)
            if all(self.table[e][x] == x for x in range(self.order))
        )

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(next(y for y in range(self.order) if self.table[x][y] == e) for x in range(self.order))

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def generate(self, gens) -> int:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.table[x][s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return mask_of(seen)

    @cached_property
    def center(self) -> int:
        t = self.table
        return mask_of(
            x for x in range(self.order) if all(t[x][y] == t[y][x] for y in range(self.order))
        )

    @cached_property
    def subgroups(self) -> tuple[int, ...]:
        cyclic = {self.generate([x]) for x in range(self.order)}
        found = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            new = set()
            for a in frontier:
                for c in cyclic:
                    if c & ~a:
                        s = self.generate(bits(a | c))
                        if s not in found:
                            new.add(s)
            found |= new
            frontier = new
        return tuple(sorted(found, key=lambda s: (bin(s).count("1"), s)))

    def is_normal(self, H: int) -> bool:
        t, inv = self.table, self.inverse
        members = bits(H)
        return all(H >> t[t[g][h]][inv[g]] & 1 for g in range(self.order) for h in members)

    @cached_property
    def normal_subgroups(self) -> tuple[int, ...]:
        return tuple(H for H in self.subgroups if self.is_normal(H))

    def describe(self, H: int) -> str:
        if H == 1 << self.identity:
            return "1"
        if H == (1 << self.order) - 1:
            return "G"
        gens: list[int] = []
        span = 1 << self.identity
        for x in bits(H):
            if not span >> x & 1:
                gens.append(x)
                span = self.generate(gens)
        names = self.names or tuple(str(i) for i in range(self.order))
        return "<" + ",".join(names[x] for x in gens) + ">"

    def to_json(self) -> dict:
        doc = {"schema": "latspec/1", "kind": "group", "order": self.order, "table": [list(r) for r in self.table]}
        if self.names:
            doc["names"] = list(self.names)
        return doc


@dataclass(frozen=True, eq=False)
class GroupLattice:
    lattice: Lattice
    members: tuple[int, ...]
    group: GroupTable
    kind: str
    points: frozenset[int]


def group_lattices(G: GroupTable, kind: str = NORMAL) -> GroupLattice:
    """Normal-subgroup lattice of ``G`` and the point set for ``kind``.

    ``normal`` takes every proper normal subgroup; ``center`` and
    ``finite_center`` take the proper subgroups of the centre (all finite
    here, so the two coincide).
    """
    if kind not in GROUP_KINDS:
        raise SchemaError(f"unknown group kind {kind!r}; expected one of {GROUP_KINDS}")
    subs = G.normal_subgroups
    labels = [G.describe(H) for H in subs]
    leq = [(i, j) for i, a in enumerate(subs) for j, b in enumerate(subs) if a & ~b == 0]
    L = validate_lattice(labels, leq=leq)
    whole = (1 << G.order) - 1
    if kind == NORMAL:
        pts = frozenset(i for i, H in enumerate(subs) if H != whole)
    else:
        Z = G.center
        pts = frozenset(i for i, H in enumerate(subs) if H != whole and H & ~Z == 0)
    out = GroupLattice(L, subs, G, kind, pts)
    _assert_radicals_are_points(out)
    return out


def _assert_radicals_are_points(gl: GroupLattice):
    from .spectrum import SpectrumContext

    ctx = SpectrumContext(gl.lattice, gl.points)
    expected = set(gl.points) | {gl.lattice.top}
    if set(ctx.radicals) != expected:
        raise AssertionError(
            f"radical elements {sorted(ctx.radicals)} differ from points plus G {sorted(expected)}"
        )


def _from_elements(elements, mul, names) -> GroupTable:
    where = {x: i for i, x in enumerate(elements)}
    table = [[where[mul(a, b)] for b in elements] for a in elements]
    return GroupTable(len(elements), table, tuple(names))


def _closure(gens, mul, identity):
    seen = [identity]
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = mul(x, s)
                if y not in seen:
                    seen.append(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def cyclic_group(n: int) -> GroupTable:
    return GroupTable(n, [[(a + b) % n for b in range(n)] for a in range(n)], tuple(str(i) for i in range(n)))


def symmetric_group(k: int) -> GroupTable:
    perms = list(permutations(range(k)))

    def mul(p, q):  # apply q then p
        return tuple(p[q[i]] for i in range(k))

    names = ["".join(str(i + 1) for i in p) for p in perms]
    return _from_elements(perms, mul, names)


def dihedral_group(k: int) -> GroupTable:
    """Symmetries of a regular ``k``-gon, order ``2k``."""
    r = tuple((i + 1) % k for i in range(k))
    s = tuple((-i) % k for i in range(k))

    def mul(p, q):
        return tuple(p[q[i]] for i in range(k))

    ident = tuple(range(k))
    elements = _closure([r, s], mul, ident)
    return _from_elements(elements, mul, ["".join(str(i) for i in p) for p in elements])


def quaternion_group() -> GroupTable:
    # unit quaternions as (sign, axis) with axis in 1, i, j, k
    axes = "1ijk"
    prod_table = {
        ("1", x): (1, x) for x in axes
    }
    prod_table.update({(x, "1"): (1, x) for x in axes})
    prod_table.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })
    elements = [(s, a) for s in (1, -1) for a in axes]

    def mul(x, y):
        sign, axis = prod_table[(x[1], y[1])]
        return (x[0] * y[0] * sign, axis)

    names = [("" if s == 1 else "-") + a for s, a in elements]
    return _from_elements(elements, mul, names)


BUILTIN_GROUPS = {
    "s3": lambda: symmetric_group(3),
    "z4": lambda: cyclic_group(4),
    "d4": lambda: dihedral_group(4),
    "q8": quaternion_group,
}


def builtin_group(name: str) -> GroupTable:
    try:
        return BUILTIN_GROUPS[name]()
    except KeyError:
        raise SchemaError(f"unknown builtin group {name!r}; choose from {sorted(BUILTIN_GROUPS)}") from None
