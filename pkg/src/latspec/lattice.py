"""Finite bounded lattices stored as bitset order rows plus meet/join tables.

Elements are the integers ``0..n-1``; ``labels[i]`` is the display name.
Bit ``b`` of ``up[a]`` is set iff ``a <= b``; ``down`` is the transpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .errors import CapacityExceeded, MissingBounds, NotALattice, NotAPoset, UnknownElement, capacity


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class Lattice:
    """An immutable finite lattice. Build one with :func:`validate_lattice`."""

    def __init__(self, labels: Sequence[str], up: Sequence[int]):
        n = len(labels)
        self.labels: tuple[str, ...] = tuple(labels)
        self.n = n
        self.up: tuple[int, ...] = tuple(up)
        down = [0] * n
        for a in range(n):
            for b in bits(self.up[a]):
                down[b] |= 1 << a
        self.down: tuple[int, ...] = tuple(down)
        full = (1 << n) - 1
        bottoms = [a for a in range(n) if self.up[a] == full]
        tops = [a for a in range(n) if self.down[a] == full]
        if not bottoms or not tops:
            raise MissingBounds(
                "lattice needs a global minimum and maximum",
                has_bottom=bool(bottoms),
                has_top=bool(tops),
            )
        self.bottom: int = bottoms[0]
        self.top: int = tops[0]
        self.meet_table, self.join_table = self._tables()

    def _tables(self):
        n = self.n
        # linear extension: a < b implies |down(a)| < |down(b)|
        order = sorted(range(n), key=lambda e: (bin(self.down[e]).count("1"), e))
        pos = [0] * n
        for i, e in enumerate(order):
            pos[e] = i
        down_pos = [mask_of(pos[b] for b in bits(self.down[a])) for a in range(n)]
        up_pos = [mask_of(pos[b] for b in bits(self.up[a])) for a in range(n)]
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            meet[a][a] = a
            join[a][a] = a
            for b in range(a + 1, n):
                lower = down_pos[a] & down_pos[b]
                g = order[lower.bit_length() - 1]
                if lower & ~down_pos[g]:
                    raise NotALattice(
                        f"{self.labels[a]} and {self.labels[b]} have no greatest lower bound",
                        pair=[self.labels[a], self.labels[b]],
                    )
                upper = up_pos[a] & up_pos[b]
                l = order[(upper & -upper).bit_length() - 1]
                if upper & ~up_pos[l]:
                    raise NotALattice(
                        f"{self.labels[a]} and {self.labels[b]} have no least upper bound",
                        pair=[self.labels[a], self.labels[b]],
                    )
                meet[a][b] = meet[b][a] = g
                join[a][b] = join[b][a] = l
        return tuple(map(tuple, meet)), tuple(map(tuple, join))

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Lattice(n={self.n}, bottom={self.labels[self.bottom]!r}, top={self.labels[self.top]!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and self.labels == other.labels and self.up == other.up

    def __hash__(self) -> int:
        return hash((self.labels, self.up))

    @property
    def elements(self) -> range:
        return range(self.n)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.n:
            raise UnknownElement(f"unknown element {a!r}", element=a)
        return a

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownElement(f"unknown element label {label!r}", element=label) from None

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and bool(self.up[a] >> b & 1)

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def meet_all(self, elements: Iterable[int]) -> int:
        acc = self.top
        for e in elements:
            acc = self.meet_table[acc][self.check(e)]
        return acc

    def join_all(self, elements: Iterable[int]) -> int:
        acc = self.bottom
        for e in elements:
            acc = self.join_table[acc][self.check(e)]
        return acc

    def meet_mask(self, mask: int) -> int:
        acc = self.top
        for e in bits(mask):
            acc = self.meet_table[acc][e]
        return acc

    def join_mask(self, mask: int) -> int:
        acc = self.bottom
        for e in bits(mask):
            acc = self.join_table[acc][e]
        return acc

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Hasse edges ``(a, b)`` with ``a`` covered by ``b``."""
        out = []
        for a in range(self.n):
            strict = self.up[a] & ~(1 << a)
            above = strict
            for b in bits(strict):
                above &= ~(self.up[b] & ~(1 << b))
            out.extend((a, b) for b in bits(above))
        return tuple(sorted(out))

    @cached_property
    def ranks(self) -> tuple[int, ...]:
        """Length of the longest chain from the bottom to each element."""
        lower: dict[int, list[int]] = {}
        for a, b in self.covers:
            lower.setdefault(b, []).append(a)
        rank = [0] * self.n
        for e in sorted(range(self.n), key=lambda e: bin(self.down[e]).count("1")):
            rank[e] = max((rank[a] + 1 for a in lower.get(e, ())), default=0)
        return tuple(rank)

    def sublattice(self, elements: Iterable[int]) -> tuple["Lattice", tuple[int, ...]]:
        """Induced order on ``elements`` as a lattice, with the index map back into ``self``."""
        members = tuple(sorted(set(self.check(e) for e in elements)))
        where = {e: i for i, e in enumerate(members)}
        up = []
        for e in members:
            up.append(mask_of(where[b] for b in bits(self.up[e]) if b in where))
        return Lattice([self.labels[e] for e in members], up), members

    def to_json(self) -> dict:
        return {
            "schema": "latspec/1",
            "kind": "lattice",
            "elements": list(self.labels),
            "covers": [list(c) for c in self.covers],
        }

    def to_dot(self, name: str = "lattice") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, label in enumerate(self.labels):
            lines.append(f'  n{i} [label="{_escape(label)}"];')
        by_rank: dict[int, list[int]] = {}
        for i, r in enumerate(self.ranks):
            by_rank.setdefault(r, []).append(i)
        for r in sorted(by_rank):
            members = " ".join(f"n{i};" for i in by_rank[r])
            lines.append(f"  {{ rank=same; {members} }}")
        for a, b in self.covers:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def validate_lattice(
    elements: Sequence[str],
    covers: Iterable[tuple[int, int]] | None = None,
    leq: Iterable[tuple[int, int]] | None = None,
) -> Lattice:
    """Build a :class:`Lattice` from element labels and order (or cover) pairs.

    Pairs are ``(a, b)`` meaning ``a <= b``; entries may be indices or labels.
    The reflexive-transitive closure is taken before checking antisymmetry.
    """
    labels = [str(e) for e in elements]
    n = len(labels)
    if len(set(labels)) != n:
        dupes = sorted({l for l in labels if labels.count(l) > 1})
        raise NotAPoset("element identifiers must be unique", duplicates=dupes)
    if n > capacity("lattice"):
        raise CapacityExceeded(f"{n} elements exceeds the lattice cap {capacity('lattice')}", size=n)
    if n == 0:
        raise MissingBounds("empty element list has no bounds")
    where = {l: i for i, l in enumerate(labels)}

    def resolve(x) -> int:
        if isinstance(x, bool):
            raise UnknownElement(f"unknown element {x!r}", element=x)
        if isinstance(x, int):
            if 0 <= x < n:
                return x
        elif isinstance(x, str) and x in where:
            return where[x]
        raise UnknownElement(f"order pair mentions undeclared element {x!r}", element=x)

    up = [1 << i for i in range(n)]
    for pairs in (covers, leq):
        for pair in pairs or ():
            a, b = pair
            up[resolve(a)] |= 1 << resolve(b)
    for k in range(n):
        kbit = 1 << k
        uk = up[k]
        for i in range(n):
            if up[i] & kbit:
                up[i] |= uk
    for a in range(n):
        for b in bits(up[a]):
            if b != a and up[b] >> a & 1:
                raise NotAPoset(
                    f"{labels[a]} <= {labels[b]} <= {labels[a]} violates antisymmetry",
                    cycle=[labels[a], labels[b]],
                )
    return Lattice(labels, up)


def lattice_from_tables(labels: Sequence[str], leq_fn) -> Lattice:
    """Build a lattice from a predicate ``leq_fn(i, j)`` over element indices."""
    n = len(labels)
    up = [mask_of(j for j in range(n) if leq_fn(i, j)) for i in range(n)]
    return validate_lattice(labels, leq=[(i, j) for i in range(n) for j in bits(up[i])])


def dualize(L: Lattice) -> Lattice:
    """The order-reversed lattice on the same element ids and labels.

    The result is memoised on ``L`` (and points back to ``L``) so repeated
    dual contexts share their caches.
    """
    cached = L.__dict__.get("_dual")
    if cached is not None:
        return cached
    D = Lattice.__new__(Lattice)
    D.labels = L.labels
    D.n = L.n
    D.up = L.down
    D.down = L.up
    D.bottom = L.top
    D.top = L.bottom
    D.meet_table = L.join_table
    D.join_table = L.meet_table
    L.__dict__["_dual"] = D
    D.__dict__["_dual"] = L
    return D


@dataclass(frozen=True)
class Classification:
    strongly_irreducible: frozenset[int]
    strongly_hollow: frozenset[int]
    irreducible: frozenset[int]
    hollow: frozenset[int]
    maximal: frozenset[int]
    minimal: frozenset[int]
    atoms: frozenset[int]
    coatoms: frozenset[int]
    is_hollow_lattice: bool
    is_uniform_lattice: bool
    is_atomic: bool
    is_coatomic: bool

    def to_json(self, L: Lattice) -> dict:
        out = {}
        for k, v in self.__dict__.items():
            out[k] = sorted(L.labels[e] for e in v) if isinstance(v, frozenset) else v
        return out


def strongly_irreducible(L: Lattice) -> frozenset[int]:
    """Elements ``x != top`` such that ``a ^ b <= x`` forces ``a <= x`` or ``b <= x``."""
    out = []
    for x in range(L.n):
        if x == L.top:
            continue
        outside = bits(L.full & ~L.down[x])
        below = L.down[x]
        if not any(below >> L.meet_table[a][b] & 1 for a in outside for b in outside):
            out.append(x)
    return frozenset(out)


def irreducible(L: Lattice) -> frozenset[int]:
    out = []
    for x in range(L.n):
        if x == L.top:
            continue
        # a ^ b = x with a, b != x needs both strictly above x
        above = bits(L.up[x] & ~(1 << x))
        if not any(L.meet_table[a][b] == x for a in above for b in above):
            out.append(x)
    return frozenset(out)


def maximal_elements(L: Lattice) -> frozenset[int]:
    """Maximal elements of ``L`` minus its top."""
    return frozenset(
        x for x in range(L.n) if x != L.top and L.up[x] & ~(1 << x) == 1 << L.top
    )


def classify_elements(L: Lattice) -> Classification:
    D = dualize(L)
    si = strongly_irreducible(L)
    sh = strongly_irreducible(D)
    maxl = maximal_elements(L)
    minl = maximal_elements(D)
    proper_top = [x for x in range(L.n) if x != L.top]
    proper_bottom = [x for x in range(L.n) if x != L.bottom]
    hollow_lattice = not any(
        L.join_table[x][y] == L.top for x in proper_top for y in proper_top
    )
    uniform_lattice = not any(
        L.meet_table[x][y] == L.bottom for x in proper_bottom for y in proper_bottom
    )
    max_mask = mask_of(maxl)
    min_mask = mask_of(minl)
    coatomic = all(L.up[x] & max_mask for x in proper_top)
    atomic = all(L.down[x] & min_mask for x in proper_bottom)
    return Classification(
        strongly_irreducible=si,
        strongly_hollow=sh,
        irreducible=irreducible(L),
        hollow=irreducible(D),
        maximal=maxl,
        minimal=minl,
        atoms=minl,
        coatoms=maxl,
        is_hollow_lattice=hollow_lattice,
        is_uniform_lattice=uniform_lattice,
        is_atomic=atomic,
        is_coatomic=coatomic,
    )


def completely_strongly_irreducible(L: Lattice, p: int) -> bool:
    """Whether every ``S`` with ``meet(S) <= p`` has a member below ``p``.

    The largest set containing no member below ``p`` has the smallest meet,
    so testing that one set decides every ``S``.
    """
    L.check(p)
    return not L.leq(L.meet_mask(L.full & ~L.down[p]), p)


def complete_A_property(L: Lattice, A: Iterable[int]) -> bool:
    """For every ``q`` in ``A``, the meet of ``A`` without ``q`` is not below ``q``."""
    members = {L.check(a) for a in A}
    for q in members:
        if L.leq(L.meet_all(members - {q}), q):
            return False
    return True


# -- families ---------------------------------------------------------------

def chain(n: int) -> Lattice:
    """The ``n``-element chain ``0 < 1 < ... < n-1``."""
    if n < 1:
        raise MissingBounds("a chain needs at least one element")
    return validate_lattice([str(i) for i in range(n)], covers=[(i, i + 1) for i in range(n - 1)])


def boolean(k: int) -> Lattice:
    """Subsets of a ``k``-set under inclusion; labels list the members."""
    labels = []
    for m in range(1 << k):
        labels.append("{" + ",".join(str(i + 1) for i in bits(m)) + "}")
    covers = [(m, m | 1 << i) for m in range(1 << k) for i in range(k) if not m >> i & 1]
    return validate_lattice(labels, covers=covers)


def antichain(k: int) -> Lattice:
    """``k`` pairwise incomparable atoms between a bottom and a top."""
    labels = ["0"] + [f"a{i + 1}" for i in range(k)] + ["1"]
    covers = [(0, i) for i in range(1, k + 1)] + [(i, k + 1) for i in range(1, k + 1)]
    if k == 0:
        covers = [(0, 1)]
    return validate_lattice(labels, covers=covers)


def pentagon() -> Lattice:
    return validate_lattice(
        ["0", "a", "b", "c", "1"], covers=[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")]
    )


def diamond() -> Lattice:
    return antichain(3)


def product_lattice(A: Lattice, B: Lattice) -> Lattice:
    labels = [f"({a},{b})" for a, b in product(A.labels, B.labels)]
    nb = B.n
    leq = [
        (i * nb + j, k * nb + l)
        for i, j, k, l in product(range(A.n), range(nb), range(A.n), range(nb))
        if A.leq(i, k) and B.leq(j, l)
    ]
    return validate_lattice(labels, leq=leq)
