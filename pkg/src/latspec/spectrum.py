"""Varieties, radicals and the X-top test for a lattice with a chosen point set.

A :class:`SpectrumContext` fixes a lattice and a set ``X`` of points.  In
``primal`` orientation ``X`` must avoid the top and a variety collects the
points above an element.  In ``dual`` orientation every computation runs on
the order-reversed lattice, so ``X`` must avoid the bottom and varieties
collect the points below an element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import SchemaError, UnknownElement
from .lattice import (
    Lattice,
    bits,
    classify_elements,
    dualize,
    mask_of,
    maximal_elements,
    strongly_irreducible,
)

PRIMAL = "primal"
DUAL = "dual"


class SpectrumContext:
    """A lattice together with a designated point set ``X``.

    ``points`` are element ids of ``base``; they are stored sorted and point
    ``i`` of the context is ``points[i]``.  Point sets are bitsets over these
    point indices.
    """

    def __init__(
        self,
        lattice: Lattice,
        points: Iterable[int],
        orientation: str = PRIMAL,
        meta: dict | None = None,
    ):
        if orientation not in (PRIMAL, DUAL):
            raise SchemaError(f"orientation must be 'primal' or 'dual', got {orientation!r}")
        self.base = lattice
        self.orientation = orientation
        self.lattice = lattice if orientation == PRIMAL else dualize(lattice)
        self.points: tuple[int, ...] = tuple(sorted({lattice.check(p) for p in points}))
        L = self.lattice
        if L.top in self.points:
            which = "top" if orientation == PRIMAL else "bottom"
            raise SchemaError(
                f"point set contains the {which} element {lattice.labels[L.top]!r}",
                element=lattice.labels[L.top],
            )
        self.meta = dict(meta or {})
        self.m = len(self.points)
        self.full = (1 << self.m) - 1
        self.point_index = {p: i for i, p in enumerate(self.points)}
        self.point_mask_in_L = mask_of(self.points)
        # eager caches: variety bitsets and radicals for every element
        self.var: tuple[int, ...] = tuple(
            mask_of(i for i, p in enumerate(self.points) if L.leq(a, p)) for a in range(L.n)
        )
        self.rad: tuple[int, ...] = tuple(self.meet_points(v) for v in self.var)

    def __repr__(self) -> str:
        return f"SpectrumContext(|L|={self.lattice.n}, |X|={self.m}, {self.orientation})"

    # -- conversions --------------------------------------------------------

    def meet_points(self, pmask: int) -> int:
        """Meet of the points in a point bitset; the empty meet is the top."""
        L = self.lattice
        acc = L.top
        for i in bits(pmask):
            acc = L.meet_table[acc][self.points[i]]
        return acc

    def elements_of(self, pmask: int) -> list[int]:
        return [self.points[i] for i in bits(pmask)]

    def mask_of_points(self, elements: Iterable[int]) -> int:
        m = 0
        for e in elements:
            if e not in self.point_index:
                raise UnknownElement(f"{e!r} is not a point of X", element=e)
            m |= 1 << self.point_index[e]
        return m

    def label(self, a: int) -> str:
        return self.base.labels[a]

    def labels_of(self, elements: Iterable[int]) -> list[str]:
        return sorted(self.base.labels[e] for e in elements)

    def point_labels(self, pmask: int) -> list[str]:
        return self.labels_of(self.elements_of(pmask))

    # -- derived structures -------------------------------------------------

    @cached_property
    def radicals(self) -> tuple[int, ...]:
        return tuple(a for a in range(self.lattice.n) if self.rad[a] == a)

    @cached_property
    def radical_lattice(self) -> "RadicalLattice":
        return radical_elements(self)

    @cached_property
    def classification(self):
        return classify_elements(self.lattice)

    @cached_property
    def xtop(self) -> "XTopResult":
        return is_X_top(self)

    @cached_property
    def tau_cl(self):
        from .topology import classical_zariski

        return classical_zariski(self)

    @cached_property
    def tau_fp(self):
        from .topology import finer_patch

        return finer_patch(self)

    @cached_property
    def intervals(self) -> "IntervalData":
        return interval_data(self)


def variety(ctx: SpectrumContext, a: int) -> int:
    """Bitset of the points above ``a`` (below ``a`` in dual orientation)."""
    return ctx.var[ctx.lattice.check(a)]


def radical(ctx: SpectrumContext, a: int) -> int:
    return ctx.rad[ctx.lattice.check(a)]


@dataclass(frozen=True)
class RadicalLattice:
    """The radical elements as a lattice in their own right.

    ``lattice`` is indexed ``0..k-1``; ``members[i]`` is the element of the
    context lattice it stands for.  Its meet is the ambient meet and its join
    is the radical of the ambient join.
    """

    lattice: Lattice
    members: tuple[int, ...]
    index: dict = field(compare=False)

    def to_ambient(self, i: int) -> int:
        return self.members[i]

    def from_ambient(self, a: int) -> int:
        return self.index[a]


def radical_elements(ctx: SpectrumContext) -> RadicalLattice:
    C, members = ctx.lattice.sublattice(ctx.radicals)
    return RadicalLattice(C, members, {a: i for i, a in enumerate(members)})


@dataclass(frozen=True)
class XTopResult:
    is_x_top: bool
    witness: tuple[int, int, int] | None
    strongly_x_top: bool

    def to_json(self, ctx: SpectrumContext) -> dict:
        w = None
        if self.witness is not None:
            x, y, p = self.witness
            w = {"x": ctx.label(x), "y": ctx.label(y), "point": ctx.label(p)}
        return {"is_x_top": self.is_x_top, "witness": w, "strongly_x_top": self.strongly_x_top}


def is_X_top(ctx: SpectrumContext) -> XTopResult:
    """Decide whether varieties are closed under finite unions.

    It suffices to compare ``V(x ^ y)`` with ``V(x) | V(y)`` over radical
    pairs; a failing pair comes back with a point in the difference.
    """
    L = ctx.lattice
    witness = None
    rads = ctx.radicals
    for i, x in enumerate(rads):
        for y in rads[i:]:
            extra = ctx.var[L.meet_table[x][y]] & ~(ctx.var[x] | ctx.var[y])
            if extra:
                witness = (x, y, ctx.points[(extra & -extra).bit_length() - 1])
                break
        if witness:
            break
    si = strongly_irreducible(L)
    return XTopResult(witness is None, witness, all(p in si for p in ctx.points))


def min_over(ctx: SpectrumContext, x: int) -> int:
    """Points of ``V(x)`` that are minimal in ``V(x)``."""
    L = ctx.lattice
    vx = variety(ctx, x)
    out = 0
    for i in bits(vx):
        p = ctx.points[i]
        # another point q in V(x) strictly below p disqualifies p
        if not any(q != p and L.leq(q, p) for q in ctx.elements_of(vx)):
            out |= 1 << i
    return out


def max_points(ctx: SpectrumContext) -> int:
    L = ctx.lattice
    out = 0
    for i, p in enumerate(ctx.points):
        if not any(q != p and L.leq(p, q) for q in ctx.points):
            out |= 1 << i
    return out


def min_points(ctx: SpectrumContext) -> int:
    return min_over(ctx, ctx.lattice.bottom)


@dataclass(frozen=True)
class IntervalData:
    max_points: int
    min_points: int
    atomic: bool
    coatomic: bool
    c_prime: frozenset[int]
    r_set: frozenset[int]
    radical_condition: bool

    def to_json(self, ctx: SpectrumContext) -> dict:
        return {
            "max_points": ctx.point_labels(self.max_points),
            "min_points": ctx.point_labels(self.min_points),
            "atomic": self.atomic,
            "coatomic": self.coatomic,
            "c_prime": ctx.labels_of(self.c_prime),
            "r_set": ctx.labels_of(self.r_set),
            "radical_condition": self.radical_condition,
        }


def complemented_radicals(ctx: SpectrumContext) -> frozenset[int]:
    """Radicals ``x`` having a radical ``y`` with ``x ^ y = sqrt(0)`` and ``sqrt(x v y) = 1``."""
    L = ctx.lattice
    root0 = ctx.rad[L.bottom]
    rads = ctx.radicals
    out = set()
    for x in rads:
        for y in rads:
            if L.meet_table[x][y] == root0 and ctx.rad[L.join_table[x][y]] == L.top:
                out.add(x)
                break
    return frozenset(out)


def interval_data(ctx: SpectrumContext) -> IntervalData:
    from .topology import is_irreducible

    L = ctx.lattice
    mx = max_points(ctx)
    mn = min_points(ctx)
    atomic = all(
        any(L.leq(q, p) for q in ctx.elements_of(mn)) for p in ctx.points
    )
    coatomic = all(
        any(L.leq(p, q) for q in ctx.elements_of(mx)) for p in ctx.points
    )
    T = ctx.tau_cl
    r_set = frozenset(ctx.rad[x] for x in range(L.n) if is_irreducible(T, ctx.var[x]))
    return IntervalData(
        max_points=mx,
        min_points=mn,
        atomic=atomic,
        coatomic=coatomic,
        c_prime=complemented_radicals(ctx),
        r_set=r_set,
        radical_condition=all(r in ctx.point_index for r in r_set),
    )


def lattice_maximal(ctx: SpectrumContext) -> frozenset[int]:
    return maximal_elements(ctx.lattice)
