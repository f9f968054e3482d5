"""Submodule lattices of finite Z_n-modules and their prime-like spectra.

A module is ``Z_{d1} x ... x Z_{dk}`` over the ring ``Z_n`` with
``d1 | d2 | ... | dk | n``.  The ideals of ``Z_n`` are ``(e)`` for ``e | n``
and act on a submodule ``N`` by ``(e)N = eN``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import gcd, prod

from .errors import CapacityExceeded, SchemaError, capacity
from .lattice import Lattice, bits, mask_of, validate_lattice

PRIME = "prime"
COPRIME = "coprime"
SECOND = "second"
FIRST = "first"
KINDS = (PRIME, COPRIME, SECOND, FIRST)
DUAL_KINDS = (SECOND, FIRST)


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@dataclass(frozen=True)
class FiniteModule:
    modulus: int
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        n = self.modulus
        factors = tuple(self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        if not isinstance(n, int) or n < 2:
            raise SchemaError(f"modulus must be an integer >= 2, got {n!r}")
        if not factors:
            raise SchemaError("a module needs at least one invariant factor")
        for i, d in enumerate(factors):
            if not isinstance(d, int) or d < 2 or n % d:
                raise SchemaError(f"invariant factor {d!r} must be >= 2 and divide {n}")
            if i and d % factors[i - 1]:
                raise SchemaError(f"invariant factors must form a divisor chain, got {list(factors)}")
        size = prod(factors)
        if size > capacity("module"):
            raise CapacityExceeded(f"|M| = {size} exceeds the module cap {capacity('module')}", size=size)

    @cached_property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(product(*(range(d) for d in self.invariant_factors)))

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def scale(self, e: int, x):
        return tuple((e * a) % d for a, d in zip(x, self.invariant_factors))

    def span(self, gens) -> int:
        """Bitset of the subgroup generated by ``gens``."""
        zero = tuple(0 for _ in self.invariant_factors)
        seen = {zero}
        frontier = [zero]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return mask_of(self.index[x] for x in seen)

    def members(self, sub: int):
        return [self.elements[i] for i in bits(sub)]

    def sum(self, a: int, b: int) -> int:
        return self.span(self.members(a) + self.members(b))

    def act(self, e: int, sub: int) -> int:
        return mask_of(self.index[self.scale(e, x)] for x in self.members(sub))

    @cached_property
    def submodules(self) -> tuple[int, ...]:
        """Every submodule as a bitset, found by closing cyclic subgroups under sums."""
        cyclic = {self.span([x]) for x in self.elements}
        found = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            new = set()
            for a in frontier:
                for c in cyclic:
                    if c & ~a:
                        s = self.sum(a, c)
                        if s not in found:
                            new.add(s)
            found |= new
            frontier = new
        return tuple(sorted(found, key=lambda s: (bin(s).count("1"), s)))

    def describe(self, sub: int) -> str:
        if sub == 1:
            return "0"
        if sub == (1 << len(self.elements)) - 1:
            return "M"
        if len(self.invariant_factors) == 1:
            d = self.invariant_factors[0]
            order = bin(sub).count("1")
            return f"{d // order}M"
        gens: list = []
        span = 1
        for x in self.members(sub):
            if not span >> self.index[x] & 1:
                gens.append(x)
                span = self.span(gens)
        return "<" + ",".join("(" + ",".join(map(str, g)) + ")" for g in gens) + ">"

    def to_json(self) -> dict:
        return {
            "schema": "latspec/1",
            "kind": "module",
            "modulus": self.modulus,
            "invariant_factors": list(self.invariant_factors),
        }


@dataclass(frozen=True, eq=False)
class ModuleLattice:
    """A submodule lattice with the ideal action tabulated.

    ``action[e][k]`` is the element ``(e)K`` for every divisor ``e`` of the
    modulus and element ``k``.
    """

    lattice: Lattice
    modulus: int
    action: dict = field(repr=False)
    zero: int
    whole: int
    description: str = ""

    @property
    def ideals(self) -> list[int]:
        return sorted(self.action)


def submodule_lattice(M: FiniteModule) -> ModuleLattice:
    subs = M.submodules
    where = {s: i for i, s in enumerate(subs)}
    labels = [M.describe(s) for s in subs]
    leq = [(i, j) for i, a in enumerate(subs) for j, b in enumerate(subs) if a & ~b == 0]
    L = validate_lattice(labels, leq=leq)
    action = {e: tuple(where[M.act(e, s)] for s in subs) for e in divisors(M.modulus)}
    return ModuleLattice(
        L,
        M.modulus,
        action,
        where[1],
        where[(1 << len(M.elements)) - 1],
        f"Z_n-module n={M.modulus} factors={list(M.invariant_factors)}",
    )


def ideal_lattice(n: int) -> ModuleLattice:
    """Ideals ``(d)`` of ``Z_n`` ordered by inclusion, carrying the ring's own action."""
    if not isinstance(n, int) or n < 2:
        raise SchemaError(f"n must be an integer >= 2, got {n!r}")
    if n > 10**6:
        raise CapacityExceeded(f"n = {n} exceeds 10^6", size=n)
    ds = divisors(n)
    if len(ds) > capacity("divisors"):
        raise CapacityExceeded(f"{len(ds)} ideals exceeds the cap", size=len(ds))
    where = {d: i for i, d in enumerate(ds)}
    # (d) is contained in (e) iff e | d
    leq = [(where[d], where[e]) for d in ds for e in ds if d % e == 0]
    L = validate_lattice([f"({d})" for d in ds], leq=leq)
    action = {e: tuple(where[gcd(e * d, n)] for d in ds) for e in ds}
    return ModuleLattice(L, n, action, where[n], where[1], f"ideals of Z_{n}")


def spec(ml: ModuleLattice, kind: str) -> frozenset[int]:
    """Prime, coprime, second or first submodules by brute force over all ideals."""
    L = ml.lattice
    act = ml.action
    es = ml.ideals
    M, Z = ml.whole, ml.zero
    out = set()
    if kind == PRIME:
        for K in L.elements:
            if K == M:
                continue
            ok = all(
                not L.leq(act[e][N], K) or L.leq(N, K) or L.leq(act[e][M], K)
                for e in es
                for N in L.elements
            )
            if ok:
                out.add(K)
    elif kind == COPRIME:
        for K in L.elements:
            if K == M:
                continue
            if all(L.join(act[e][M], K) == M or L.leq(act[e][M], K) for e in es):
                out.add(K)
    elif kind == SECOND:
        for K in L.elements:
            if K == Z:
                continue
            if all(act[e][K] in (K, Z) for e in es):
                out.add(K)
    elif kind == FIRST:
        for K in L.elements:
            if K == Z:
                continue
            ok = all(
                act[e][N] != Z or N == Z or act[e][K] == Z
                for e in es
                for N in L.elements
                if L.leq(N, K)
            )
            if ok:
                out.add(K)
    else:
        raise SchemaError(f"unknown spectrum kind {kind!r}; expected one of {KINDS}")
    return frozenset(out)


def maximal_submodules(ml: ModuleLattice) -> frozenset[int]:
    L = ml.lattice
    return frozenset(
        K for K in L.elements if K != ml.whole and L.up[K] & ~(1 << K) == 1 << ml.whole
    )


def simple_submodules(ml: ModuleLattice) -> frozenset[int]:
    L = ml.lattice
    return frozenset(
        K for K in L.elements if K != ml.zero and L.down[K] & ~(1 << K) == 1 << ml.zero
    )
