"""Registry of hypothesis-guarded checks over a :class:`SpectrumContext`.

Each check first tests its hypotheses (raising :class:`NotApplicable` with
the name of the first one that fails), then asserts its conclusion.  A
failed assertion raises :class:`Violation` carrying a witness phrased in
element labels so it can be replayed through the core modules.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import topology as top
from .errors import CapacityExceeded, UnknownCheck
from .lattice import (
    Lattice,
    bits,
    complete_A_property,
    completely_strongly_irreducible,
    mask_of,
    maximal_elements,
    strongly_irreducible,
)
from .spectrum import PRIMAL, SpectrumContext, max_points, min_over, min_points
from .subsets import fold_and, fold_table, split, subset_masks

PASS = "pass"
FAIL = "fail"
NA = "not_applicable"

EXHAUSTIVE_LATTICE = 24
EXHAUSTIVE_POINTS = 12
SAMPLES = 2000
PARTITION_LIMIT = 16
CLOSED_SET_LIMIT = 1 << 16


class NotApplicable(Exception):
    pass


class Violation(Exception):
    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


@dataclass
class CheckResult:
    check_id: str
    status: str
    witness: Any = None
    details: dict = field(default_factory=dict)
    ms: float = 0.0

    def to_json(self, timings: bool = True) -> dict:
        out = {"check_id": self.check_id, "status": self.status, "witness": self.witness}
        if self.details:
            out["details"] = self.details
        if timings:
            out["ms"] = round(self.ms, 3)
        return out


@dataclass
class Env:
    ctx: SpectrumContext
    rng: random.Random
    details: dict


REGISTRY: dict[str, tuple[Callable[[Env], None], str]] = {}


def check(check_id: str, summary: str):
    def register(fn):
        REGISTRY[check_id] = (fn, summary)
        return fn

    return register


def check_ids() -> list[str]:
    return list(REGISTRY)


def run_check(check_id: str, ctx: SpectrumContext, seed: int = 0) -> CheckResult:
    if check_id not in REGISTRY:
        raise UnknownCheck(f"unknown check {check_id!r}", known=check_ids())
    fn, _ = REGISTRY[check_id]
    env = Env(ctx, random.Random(f"{seed}:{check_id}"), {})
    start = time.perf_counter()
    try:
        fn(env)
        status, witness = PASS, None
    except NotApplicable as exc:
        status, witness = NA, {"unmet_hypothesis": str(exc)}
    except Violation as exc:
        status, witness = FAIL, {"message": str(exc), **exc.witness}
    ms = (time.perf_counter() - start) * 1000
    return CheckResult(check_id, status, witness, env.details, ms)


def run_all(ctx: SpectrumContext, seed: int = 0, only=None) -> list[CheckResult]:
    ids = check_ids() if only is None else list(only)
    for cid in ids:
        if cid not in REGISTRY:
            raise UnknownCheck(f"unknown check {cid!r}", known=check_ids())
    return [run_check(cid, ctx, seed) for cid in ids]


# -- shared helpers ---------------------------------------------------------

def require(cond: bool, hypothesis: str):
    if not cond:
        raise NotApplicable(hypothesis)


def expect(cond: bool, message: str, **witness):
    if not cond:
        raise Violation(message, witness)


def need_xtop(ctx: SpectrumContext):
    require(ctx.xtop.is_x_top, "X-top fails")


def radical_lattice(ctx: SpectrumContext) -> tuple[Lattice, tuple[int, ...], dict]:
    R = ctx.radical_lattice
    return R.lattice, R.members, R.index


def si_of_radicals(ctx: SpectrumContext) -> frozenset[int]:
    """Strongly irreducible elements of the radical lattice, as ambient ids."""
    C, members, _ = radical_lattice(ctx)
    return frozenset(members[i] for i in strongly_irreducible(C))


def max_of_radicals(ctx: SpectrumContext) -> frozenset[int]:
    C, members, _ = radical_lattice(ctx)
    return frozenset(members[i] for i in maximal_elements(C))


def radical_complete_max(ctx: SpectrumContext) -> bool:
    C, _, _ = radical_lattice(ctx)
    return complete_A_property(C, maximal_elements(C))


def lattice_complete_max(L: Lattice) -> bool:
    return complete_A_property(L, maximal_elements(L))


def point_set(ctx: SpectrumContext) -> frozenset[int]:
    return frozenset(ctx.points)


def flags(T) -> dict:
    return {
        "T1": top.is_t1(T),
        "T2": top.is_t2(T),
        "discrete": top.is_discrete(T),
        "connected": top.is_connected(T),
    }


def enumerate_closed(ctx: SpectrumContext) -> list[int]:
    try:
        return top.closed_sets(ctx.tau_cl, CLOSED_SET_LIMIT)
    except CapacityExceeded:
        raise NotApplicable(f"closed-set enumeration exceeds {CLOSED_SET_LIMIT} sets") from None


def decompose(ctx: SpectrumContext, x: int) -> list[int] | None:
    """Split a reducible ``V(x)`` into proper subvarieties ``V(a v x)``.

    Returns ``None`` when ``V(x)`` is irreducible.  Following the standard
    argument: write ``V(x) = F1 u F2`` with closed proper ``F1, F2``; for a
    point ``q`` of ``V(x)`` outside ``Fk`` the elements ``a`` with ``q`` not in
    ``V(a)`` cover ``Fk`` by their varieties, and joining each with ``x``
    keeps the pieces inside ``V(x)`` while excluding ``q``.
    """
    T = ctx.tau_cl
    L = ctx.lattice
    vx = ctx.var[x]
    if not vx or top.is_irreducible(T, vx):
        return None
    closures = {T.point_closure[i] for i in bits(vx)}
    comps = sorted(c for c in closures if not any(c != d and c & ~d == 0 for d in closures))
    F1 = comps[0]
    F2 = 0
    for c in comps[1:]:
        F2 |= c
    parts: dict[int, int] = {}
    for F in (F1, F2):
        outside = vx & ~F
        q = (outside & -outside).bit_length() - 1
        family = [a for a in range(L.n) if not ctx.var[a] >> q & 1 and ctx.var[a] & F]
        cover = 0
        for a in family:
            cover |= ctx.var[a]
        expect(F & ~cover == 0, "closed piece not covered by varieties avoiding a point outside it",
               variety=ctx.point_labels(vx), piece=ctx.point_labels(F), point=ctx.label(ctx.points[q]))
        for a in family:
            xr = L.join_table[a][x]
            parts.setdefault(ctx.var[xr], xr)
    return [parts[v] for v in sorted(parts)]


# -- the checks -------------------------------------------------------------

def _lattice_cache(L: Lattice) -> dict:
    cache = L.__dict__.get("_check_cache")
    if cache is None:
        cache = {}
        L.__dict__["_check_cache"] = cache
    return cache


def _antitone_meets(L: Lattice, rng: random.Random) -> dict | None:
    """Witness for ``A <= B`` with ``I(B)`` not below ``I(A)``, or ``None``.

    Exhaustive for small lattices via vectorised subset folds; it suffices to
    compare each subset with its one-element extensions.
    """
    cache = _lattice_cache(L)
    if "antitone" in cache:
        return cache["antitone"]
    n = L.n
    leq = np.array([[L.leq(a, b) for b in range(n)] for a in range(n)], dtype=bool)
    meet = np.array(L.meet_table, dtype=np.int32)
    result = None
    if n <= EXHAUSTIVE_LATTICE:
        lo, hi = split(n)
        low = fold_table(np.arange(lo), meet, L.top)
        chunks = {}
        for h in range(1 << hi):
            mh = L.meet_mask(h << lo)
            chunks[h] = meet[low, mh]
        for h, arr in chunks.items():
            for i in range(lo):
                view = arr.reshape(-1, 2, 1 << i)
                bad = ~leq[view[:, 1, :], view[:, 0, :]]
                if bad.any():
                    flat = int(np.flatnonzero(bad.reshape(-1))[0])
                    result = {"i": i, "h": h, "flat": flat}
                    break
            for j in range(hi):
                if not h >> j & 1 and result is None:
                    bad = ~leq[chunks[h | 1 << j], arr]
                    if bad.any():
                        result = {"extra": lo + j, "h": h, "index": int(np.flatnonzero(bad)[0])}
            if result:
                break
        if result is not None:
            result = {"lattice_size": n, "detail": result}
    else:
        for _ in range(SAMPLES):
            A = rng.getrandbits(n)
            B = A | rng.getrandbits(n)
            if not L.leq(L.meet_mask(B), L.meet_mask(A)):
                result = {"A": [L.labels[e] for e in bits(A)], "B": [L.labels[e] for e in bits(B)]}
                break
    cache["antitone"] = result
    return result


def _intersection_is_join_variety(ctx: SpectrumContext) -> dict | None:
    L = ctx.lattice
    n = L.n
    var = np.array(ctx.var, dtype=np.int64)
    if n <= EXHAUSTIVE_LATTICE:
        join = np.array(L.join_table, dtype=np.int32)
        lo, hi = split(n)
        low_join = fold_table(np.arange(lo), join, L.bottom)
        low_var = fold_and(var[:lo], ctx.full)
        for h in range(1 << hi):
            hmask = h << lo
            jh = L.join_mask(hmask)
            vh = ctx.full
            for e in bits(hmask):
                vh &= ctx.var[e]
            bad = var[join[low_join, jh]] != (low_var & np.int64(vh))
            if bad.any():
                A = int(np.flatnonzero(bad)[0]) | hmask
                return {"A": [L.labels[e] for e in bits(A)]}
        return None
    env_rng = random.Random(f"join-variety:{n}")
    for _ in range(SAMPLES):
        A = env_rng.getrandbits(n)
        inter = ctx.full
        for e in bits(A):
            inter &= ctx.var[e]
        if ctx.var[L.join_mask(A)] != inter:
            return {"A": [L.labels[e] for e in bits(A)]}
    return None


@check("galois_identities", "order-reversing correspondence between elements and point sets")
def galois_identities(env: Env):
    ctx = env.ctx
    L = ctx.lattice
    n = L.n
    env.details["mode"] = "exhaustive" if n <= EXHAUSTIVE_LATTICE else f"sampled {SAMPLES}"
    w = _antitone_meets(L, env.rng)
    expect(w is None, "meet is not antitone in the subset", **(w or {}))
    for x in range(n):
        for y in range(n):
            sub = ctx.var[x] & ~ctx.var[y] == 0
            expect(sub == L.leq(ctx.rad[y], ctx.rad[x]),
                   "variety inclusion disagrees with reversed radical order",
                   x=ctx.label(x), y=ctx.label(y))
    for x in range(n):
        expect(ctx.var[ctx.rad[x]] == ctx.var[x], "variety of the radical differs",
               x=ctx.label(x))
    w = _intersection_is_join_variety(ctx)
    expect(w is None, "intersection of varieties differs from variety of the join", **(w or {}))
    m = ctx.m
    if m <= 20:
        meets = fold_table(np.array(ctx.points, dtype=np.int32),
                           np.array(L.meet_table, dtype=np.int32), L.top)
        rad = np.array(ctx.rad, dtype=np.int32)
        bad = rad[meets] != meets
        if bad.any():
            Y = int(np.flatnonzero(bad)[0])
            expect(False, "meet of a point set is not radical", Y=ctx.point_labels(Y))
    else:
        for Y in subset_masks(m, env.rng, 20, SAMPLES):
            a = ctx.meet_points(Y)
            expect(ctx.rad[a] == a, "meet of a point set is not radical", Y=ctx.point_labels(Y))
    for x in range(n):
        expect(ctx.var[ctx.meet_points(ctx.var[x])] == ctx.var[x],
               "variety of the meet of a variety differs", x=ctx.label(x))
    # varieties closed under pairwise union, decided without the radical shortcut
    fam = set(ctx.var)
    closed_union = all((a | b) in fam for a in fam for b in fam)
    expect(closed_union == ctx.xtop.is_x_top, "union-closure of varieties disagrees with the X-top test",
           union_closed=closed_union, x_top=ctx.xtop.is_x_top)
    env.details["x_top"] = ctx.xtop.is_x_top


@check("closure_is_variety_of_meet", "closure of a point set is the variety of its meet")
def closure_is_variety_of_meet(env: Env):
    ctx = env.ctx
    need_xtop(ctx)
    T = ctx.tau_cl
    for Y in subset_masks(ctx.m, env.rng, EXHAUSTIVE_POINTS, SAMPLES):
        cl = top.closure(T, Y)
        v = ctx.var[ctx.meet_points(Y)]
        expect(cl == v, "closure differs from variety of the meet",
               Y=ctx.point_labels(Y), closure=ctx.point_labels(cl), variety=ctx.point_labels(v))


@check("point_closures", "point closures are varieties and closed sets are unions of them")
def point_closures(env: Env):
    ctx = env.ctx
    T = ctx.tau_cl
    for i, p in enumerate(ctx.points):
        expect(T.point_closure[i] == ctx.var[p], "closure of a point differs from its variety",
               point=ctx.label(p))
        expect(top.is_irreducible(T, ctx.var[p]), "variety of a point is reducible", point=ctx.label(p))
    try:
        closed = top.closed_sets(T, CLOSED_SET_LIMIT)
        env.details["closed_sets"] = "exhaustive"
    except CapacityExceeded:
        closed = sorted({top.closure(T, Y) for Y in subset_masks(ctx.m, env.rng, 0, SAMPLES)})
        env.details["closed_sets"] = f"sampled {SAMPLES}"
    xtop = ctx.xtop.is_x_top
    for Y in closed:
        union = 0
        for i in bits(Y):
            union |= ctx.var[ctx.points[i]]
        expect(union == Y, "closed set is not the union of its point varieties", Y=ctx.point_labels(Y))
        if xtop:
            expect(ctx.var[ctx.meet_points(Y)] == Y, "closed set is not the variety of its meet",
                   Y=ctx.point_labels(Y))
    env.details["x_top_variant"] = "checked" if xtop else "skipped: X-top fails"


@check("t0_and_sober", "the classical topology is T0 and every irreducible closed set has one generic point")
def t0_and_sober(env: Env):
    ctx = env.ctx
    T = ctx.tau_cl
    expect(top.is_t0(T), "classical topology is not T0")
    try:
        closed = top.closed_sets(T, CLOSED_SET_LIMIT)
        candidates = [F for F in closed if top.is_irreducible(T, F)]
        env.details["irreducible_closed"] = "from all closed sets"
    except CapacityExceeded:
        candidates = top.irreducible_closed_sets(T)
        env.details["irreducible_closed"] = "point closures"
    for F in candidates:
        g = top.generic_points(T, F)
        expect(bin(g).count("1") == 1, "irreducible closed set without a unique generic point",
               F=ctx.point_labels(F), generic=ctx.point_labels(g))


@check("bottom_point_dense", "when the bottom is a point it lies in every non-empty open set")
def bottom_point_dense(env: Env):
    ctx = env.ctx
    L = ctx.lattice
    require(L.bottom in ctx.point_index, "bottom element is not in X")
    T = ctx.tau_cl
    b = ctx.point_index[L.bottom]
    for i, u in enumerate(T.min_open):
        expect(u >> b & 1, "a minimal open set misses the bottom point", point=ctx.label(ctx.points[i]))
    expect(T.point_closure[b] == ctx.full, "closure of the bottom point is not X")
    expect(top.is_irreducible(T, ctx.full), "X is reducible although the bottom is a point")


@check("irreducible_iff_meet_strongly_irreducible",
       "a point set is irreducible iff its meet is (strongly) irreducible among radicals")
def irreducible_iff_meet_si(env: Env):
    ctx = env.ctx
    need_xtop(ctx)
    T = ctx.tau_cl
    C, members, index = radical_lattice(ctx)
    from .lattice import irreducible as irr

    si = strongly_irreducible(C)
    ir = irr(C)
    env.details["mode"] = "exhaustive" if ctx.m <= EXHAUSTIVE_POINTS else f"sampled {SAMPLES}"
    for A in subset_masks(ctx.m, env.rng, EXHAUSTIVE_POINTS, SAMPLES):
        a = index[ctx.meet_points(A)]
        r = (top.is_irreducible(T, A), a in si, a in ir)
        expect(r[0] == r[1] == r[2], "irreducibility, strong irreducibility and irreducibility of the meet disagree",
               A=ctx.point_labels(A), irreducible_set=r[0], meet_strongly_irreducible=r[1],
               meet_irreducible=r[2])


@check("lattice_max_equals_point_max", "maximal lattice elements are exactly the maximal points")
def lattice_max_equals_point_max(env: Env):
    ctx = env.ctx
    need_xtop(ctx)
    require(ctx.classification.is_coatomic, "L is not coatomic")
    maxl = maximal_elements(ctx.lattice)
    require(maxl <= point_set(ctx), "Max(L) is not contained in X")
    maxx = frozenset(ctx.elements_of(max_points(ctx)))
    expect(maxl == maxx, "Max(L) differs from Max(X)",
           lattice_max=ctx.labels_of(maxl), point_max=ctx.labels_of(maxx))


@check("t1_iff_max_eq_min", "T1 iff every point is both maximal and minimal")
def t1_iff_max_eq_min(env: Env):
    ctx = env.ctx
    t1 = top.is_t1(ctx.tau_cl)
    eq = max_points(ctx) == ctx.full == min_points(ctx)
    expect(t1 == eq, "T1 disagrees with Max(X) = X = Min(X)", T1=t1, max_eq_min=eq)


@check("max_points_are_max_radicals", "maximal points are the maximal radicals; separation collapses to discreteness")
def max_points_are_max_radicals(env: Env):
    ctx = env.ctx
    T = ctx.tau_cl
    maxx = frozenset(ctx.elements_of(max_points(ctx)))
    maxc = max_of_radicals(ctx)
    expect(maxx == maxc, "Max(X) differs from Max(C(L))",
           point_max=ctx.labels_of(maxx), radical_max=ctx.labels_of(maxc))
    f = flags(T)
    cmax = radical_complete_max(ctx)
    if f["T1"] and cmax:
        expect(f["discrete"], "T1 with complete max property but not discrete")
    # discrete => complete max uses the closure formula, which needs X-top
    if ctx.xtop.is_x_top and f["discrete"]:
        expect(f["T1"] and cmax, "discrete under X-top without T1 and complete max property",
               T1=f["T1"], complete_max=cmax)
    env.details["discrete_converse"] = "checked" if ctx.xtop.is_x_top else "skipped: X-top fails"
    eq = max_points(ctx) == ctx.full == min_points(ctx)
    if cmax:
        vals = [f["T1"], f["T2"], f["discrete"], eq]
        expect(len(set(vals)) == 1, "T1, T2, discrete and Max=X=Min disagree under complete max property",
               T1=vals[0], T2=vals[1], discrete=vals[2], max_eq_min=vals[3])
    L = ctx.lattice
    maxl = maximal_elements(L)
    guarded = (lattice_complete_max(L) and ctx.classification.is_coatomic
               and maxl <= frozenset(ctx.radicals))
    if guarded:
        vals = [f["T1"], f["T2"], f["discrete"], eq]
        expect(len(set(vals)) == 1, "separation flags disagree for a coatomic lattice with complete max property",
               T1=vals[0], T2=vals[1], discrete=vals[2], max_eq_min=vals[3])
    env.details["radical_complete_max"] = cmax
    env.details["lattice_level_variant"] = "checked" if guarded else "hypotheses unmet"


@check("regular_implies_hausdorff", "a regular classical topology is T1 and T2")
def regular_implies_hausdorff(env: Env):
    ctx = env.ctx
    T = ctx.tau_cl
    require(ctx.m <= top.SEPARATION_CAP, f"|X| <= {top.SEPARATION_CAP} (separation capacity)")
    require(top.is_regular(T), "classical topology is not regular")
    expect(top.is_t1(T) and top.is_t2(T), "regular space is not T1 and T2",
           T1=top.is_t1(T), T2=top.is_t2(T))


@check("finite_space_spectral", "a finite classical topology is spectral")
def finite_space_spectral(env: Env):
    T = env.ctx.tau_cl
    parts = {
        "compact": True,
        "T0": top.is_t0(T),
        "sober": top.is_sober(T),
        "intersection_closed_compact_open_basis": top.has_intersection_closed_compact_basis(T),
    }
    env.details.update(parts)
    expect(all(parts.values()) and top.is_spectral(T), "finite space is not spectral", **parts)


@check("sober_iff_radical_condition", "sober implies the radical condition, and conversely under X-top")
def sober_iff_radical_condition(env: Env):
    ctx = env.ctx
    T = ctx.tau_cl
    sober = top.is_sober(T)
    rc = ctx.intervals.radical_condition
    if sober:
        expect(rc, "sober space fails the radical condition",
               r_set=ctx.labels_of(ctx.intervals.r_set))
    if ctx.xtop.is_x_top and rc:
        expect(sober, "radical condition under X-top but space not sober")
    env.details.update(sober=sober, radical_condition=rc)


@check("reducible_variety_decomposition", "a reducible variety splits into finitely many proper subvarieties")
def reducible_variety_decomposition(env: Env):
    ctx = env.ctx
    L = ctx.lattice
    seen = {}
    for x in range(L.n):
        seen.setdefault(ctx.var[x], x)
    out = []
    for v, x in sorted(seen.items()):
        parts = decompose(ctx, x)
        if parts is None:
            continue
        union = 0
        for a in parts:
            union |= ctx.var[a]
        expect(union == v, "decomposition does not cover the variety", x=ctx.label(x),
               parts=[ctx.label(a) for a in parts])
        for a in parts:
            expect(ctx.var[a] != v and ctx.var[a] & ~v == 0, "decomposition part is not a proper subvariety",
                   x=ctx.label(x), part=ctx.label(a))
        out.append({"x": ctx.label(x), "parts": [ctx.label(a) for a in parts]})
    require(bool(out), "no reducible variety")
    env.details["decompositions"] = out


@check("hausdorff_cover_by_proper_varieties", "a Hausdorff space with two points is a union of proper varieties")
def hausdorff_cover(env: Env):
    ctx = env.ctx
    T = ctx.tau_cl
    require(ctx.m >= 2, "|X| >= 2")
    require(top.is_t2(T), "classical topology is not T2")
    parts = decompose(ctx, ctx.lattice.bottom)
    expect(parts is not None, "Hausdorff X with two points is irreducible")
    union = 0
    for a in parts:
        union |= ctx.var[a]
        expect(ctx.var[a] != ctx.full, "cover member is not proper", part=ctx.label(a))
    expect(union == ctx.full, "proper varieties do not cover X", parts=[ctx.label(a) for a in parts])
    env.details["cover"] = [ctx.label(a) for a in parts]


@check("radical_condition_patch_compact", "radical condition gives a compact patch topology and a spectral space")
def radical_condition_patch_compact(env: Env):
    ctx = env.ctx
    require(ctx.intervals.radical_condition, "radical condition fails")
    cl, fp = ctx.tau_cl, ctx.tau_fp
    refines = all(fp.min_open[p] & ~cl.min_open[p] == 0 for p in range(ctx.m))
    expect(refines, "patch topology does not refine the classical topology")
    expect(top.is_spectral(cl), "classical topology is not spectral")
    env.details.update(patch_compact="finite space", classical_spectral=True)


@check("minimal_point_radical_condition",
       "completely strongly irreducible minimal points over every radical give the radical condition")
def minimal_point_radical_condition(env: Env):
    ctx = env.ctx
    L = ctx.lattice
    C, members, index = radical_lattice(ctx)
    for x in ctx.radicals:
        if x == L.top or x in ctx.point_index or not ctx.var[x]:
            continue
        found = any(
            completely_strongly_irreducible(C, index[ctx.points[i]]) for i in bits(min_over(ctx, x))
        )
        require(found, f"radical {ctx.label(x)} has no completely strongly irreducible minimal point")
    expect(ctx.intervals.radical_condition, "radical condition fails",
           r_set=ctx.labels_of(ctx.intervals.r_set))
    expect(top.is_spectral(ctx.tau_cl), "classical topology is not spectral")


@check("minimal_varieties_finite", "minimal points that are strongly irreducible radicals are irredundant")
def minimal_varieties_finite(env: Env):
    ctx = env.ctx
    mins = frozenset(ctx.elements_of(min_points(ctx)))
    si = si_of_radicals(ctx)
    require(mins <= si, "Min(X) is not contained in SI(C(L))")
    require(ctx.intervals.atomic, "X is not atomic")
    union = 0
    for p in mins:
        union |= ctx.var[p]
    expect(union == ctx.full, "varieties of minimal points do not cover X")
    expect(complete_A_property(ctx.lattice, mins), "minimal points are redundant",
           minimal=ctx.labels_of(mins))
    env.details["finite_varieties"] = "finite space"


@check("points_strongly_irreducible_radicals", "under X-top every point is strongly irreducible among radicals")
def points_si_radicals(env: Env):
    ctx = env.ctx
    need_xtop(ctx)
    si = si_of_radicals(ctx)
    missing = point_set(ctx) - si
    expect(not missing, "point not strongly irreducible in C(L)", points=ctx.labels_of(missing))


@check("xtop_irreducibility_remarks", "irreducibility, T1 and per-point irreducibility under X-top")
def xtop_irreducibility_remarks(env: Env):
    ctx = env.ctx
    need_xtop(ctx)
    T = ctx.tau_cl
    L = ctx.lattice
    si = si_of_radicals(ctx)
    irr = top.is_irreducible(T, ctx.full)
    root0_si = ctx.rad[L.bottom] in si
    proper = 0
    for v in set(ctx.var):
        if v != ctx.full:
            proper |= v
    uncovered = proper != ctx.full
    expect(irr == root0_si == uncovered,
           "irreducible X, strongly irreducible radical of 0 and no proper-variety cover disagree",
           irreducible=irr, root_of_zero_si=root0_si, not_covered_by_proper=uncovered)
    t1 = top.is_t1(T)
    expect(t1 == (max_points(ctx) == ctx.full), "T1 disagrees with Max(X) = X", T1=t1)
    if si <= point_set(ctx):
        expect(top.is_sober(T), "SI(C(L)) within X but space not sober")
    if ctx.intervals.radical_condition:
        expect(top.is_sober(T), "radical condition but space not sober")
    if radical_complete_max(ctx):
        expect(t1 == top.is_discrete(T), "T1 and discreteness differ under complete max property")
    for p in ctx.points:
        expect(top.is_irreducible(T, ctx.var[p]), "variety of a point is reducible", point=ctx.label(p))
    env.details["finite_items"] = "compactness and countability items hold trivially"


def _min_partitions(k: int, rng: random.Random):
    if k <= PARTITION_LIMIT:
        return range(1, (1 << k) - 1), True
    return (rng.randrange(1, (1 << k) - 1) for _ in range(SAMPLES)), False


@check("xtop_connectedness", "connectedness criteria for X-top spaces")
def xtop_connectedness(env: Env):
    ctx = env.ctx
    need_xtop(ctx)
    require(ctx.m > 0, "X is non-empty")
    T = ctx.tau_cl
    L = ctx.lattice
    full = ctx.full
    connected = top.is_connected(T)
    clopen_variety = any(
        v and v != full and top.is_open(T, v) for v in set(ctx.var)
    )
    root0 = ctx.rad[L.bottom]
    meets = True
    for x in ctx.radicals:
        if x in (root0, L.top):
            continue
        for y in range(L.n):
            if (full & ~ctx.var[x]) & ~ctx.var[y] == 0 and not ctx.var[x] & ctx.var[y]:
                meets = False
    cprime = ctx.intervals.c_prime == frozenset({root0, L.top})
    vals = [connected, not clopen_variety, meets, cprime]
    expect(len(set(vals)) == 1, "connectedness equivalents disagree", connected=vals[0],
           no_clopen_variety=vals[1], complementary_varieties_meet=vals[2], trivial_complements=vals[3])
    items = {"connectedness_equivalents": "checked"}

    if top.is_t1(T):
        cmax = radical_complete_max(ctx)
        expect((ctx.m == 1) == (connected and cmax), "T1: singleton disagrees with connected and complete max",
               connected=connected, complete_max=cmax)
        items["t1_singleton"] = "checked"
    else:
        items["t1_singleton"] = "skipped: not T1"

    iv = ctx.intervals
    C, members, index = radical_lattice(ctx)
    maxx = ctx.elements_of(iv.max_points)
    if iv.coatomic:
        csi = all(completely_strongly_irreducible(C, index[p]) for p in maxx)
        if len(maxx) == 1:
            expect(connected and csi, "unique maximal point but not connected with completely strongly irreducible maximum",
                   max_points=ctx.labels_of(maxx), connected=connected, maxima_completely_si=csi)
        # the converse needs the maximal points to split X into disjoint down-sets;
        # a point under two maxima (e.g. the bottom) breaks it
        separated = all(
            sum(1 for q in maxx if L.leq(p, q)) == 1 for p in ctx.points
        )
        if separated:
            expect((len(maxx) == 1) == (connected and csi),
                   "unique maximal point disagrees with connected and completely strongly irreducible maxima",
                   max_points=ctx.labels_of(maxx), connected=connected, maxima_completely_si=csi)
            items["unique_max"] = "checked"
        else:
            items["unique_max"] = "converse skipped: a point lies under several maximal points"
    else:
        items["unique_max"] = "skipped: X not coatomic"

    cls = ctx.classification
    if cls.is_coatomic and maximal_elements(L) <= point_set(ctx):
        ultra = top.is_ultraconnected(T)
        expect(ultra == cls.is_hollow_lattice, "ultraconnected disagrees with hollow lattice",
               ultraconnected=ultra, hollow=cls.is_hollow_lattice)
        items["ultraconnected_hollow"] = "checked"
    else:
        items["ultraconnected_hollow"] = "skipped: L not coatomic or Max(L) not within X"

    if iv.atomic:
        mins = ctx.elements_of(iv.min_points)
        maxs = maxx
        k = len(mins)
        masks, exhaustive = _min_partitions(k, env.rng)
        split_found = False
        split_ok = {"min": True, "max": True}
        for s in masks:
            part1 = [mins[i] for i in bits(s)]
            part2 = [mins[i] for i in range(k) if not s >> i & 1]
            m1, m2 = L.meet_all(part1), L.meet_all(part2)
            if any(not L.leq(m2, q) for q in part1) and any(not L.leq(m1, q) for q in part2):
                split_found = True
            j = L.join_table[m1][m2]
            if not ctx.var[j]:
                split_ok["min"] = False
            rest_max = [p for p in maxs if p not in part1]
            if not ctx.var[L.join_table[m1][L.meet_all(rest_max)]]:
                split_ok["max"] = False
        reducible = not top.is_irreducible(T, full)
        if exhaustive:
            expect(reducible == split_found, "reducibility disagrees with the minimal-point partition test",
                   reducible=reducible, partition_found=split_found)
            readings = [r for r in ("min", "max") if split_ok[r] == connected]
            expect(bool(readings), "connectedness disagrees with both partition-join readings",
                   connected=connected, min_reading=split_ok["min"], max_reading=split_ok["max"])
            items["atomic_partition"] = "checked"
            items["join_reading"] = readings
        else:
            items["atomic_partition"] = f"skipped: |Min(X)| > {PARTITION_LIMIT}"
    else:
        items["atomic_partition"] = "skipped: X not atomic"
    env.details.update(items)


@check("single_max_iff_connected", "when X is Max(L), one maximal element iff connected with complete max")
def single_max_iff_connected(env: Env):
    ctx = env.ctx
    need_xtop(ctx)
    L = ctx.lattice
    maxl = maximal_elements(L)
    require(point_set(ctx) == maxl, "X is not Max(L)")
    connected = top.is_connected(ctx.tau_cl)
    cmax = radical_complete_max(ctx)
    expect((len(maxl) == 1) == (connected and cmax), "single maximal element disagrees with connected and complete max",
           maximal=ctx.labels_of(maxl), connected=connected, complete_max=cmax)


@check("radical_closed_correspondence", "radicals correspond to closed sets; points to irreducible closed sets")
def radical_closed_correspondence(env: Env):
    ctx = env.ctx
    need_xtop(ctx)
    T = ctx.tau_cl
    closed = enumerate_closed(ctx)
    rads = ctx.radicals
    expect(len(closed) == len(rads), "closed-set count differs from radical count",
           closed=len(closed), radicals=len(rads))
    by_variety = {}
    for a in range(ctx.lattice.n):
        by_variety.setdefault(ctx.var[a], a)
    for x in rads:
        expect(ctx.rad[x] == x, "radical not recovered from its variety", x=ctx.label(x))
    images = {ctx.var[x] for x in rads}
    expect(len(images) == len(rads), "distinct radicals share a variety")
    for F in closed:
        expect(F in by_variety, "closed set is not a variety", F=ctx.point_labels(F))
        y = ctx.rad[by_variety[F]]
        expect(ctx.var[y] == F, "variety of the radical of a closed set differs", F=ctx.point_labels(F))
    env.details["closed_sets"] = len(closed)
    env.details["radicals"] = len(rads)
    if si_of_radicals(ctx) <= point_set(ctx):
        irr = [F for F in closed if top.is_irreducible(T, F)]
        expect(len(irr) == ctx.m, "irreducible closed count differs from |X|", irreducible=len(irr), points=ctx.m)
        expect(set(irr) == {ctx.var[p] for p in ctx.points}, "irreducible closed sets are not point varieties")
        for F in irr:
            expect(ctx.meet_points(F) in ctx.point_index, "meet of irreducible closed set is not a point",
                   F=ctx.point_labels(F))
        comps = [F for F in irr if not any(F != G and F & ~G == 0 for G in irr)]
        mins = ctx.elements_of(min_points(ctx))
        expect(len(comps) == len(mins), "component count differs from |Min(X)|",
               components=len(comps), minimal=len(mins))
        expect(set(comps) == {ctx.var[p] for p in mins}, "components are not minimal-point varieties")
        expect(set(comps) == set(top.irreducible_components(T)), "component enumeration disagrees")
        for F in comps:
            expect(ctx.meet_points(F) in mins, "meet of a component is not a minimal point", F=ctx.point_labels(F))
        env.details.update(irreducible_closed=len(irr), components=len(comps))
    else:
        env.details["point_correspondence"] = "skipped: SI(C(L)) not within X"


@check("prime_spectrum_contains_si_radicals", "strongly irreducible radicals of a module lattice are prime")
def prime_spectrum_contains_si_radicals(env: Env):
    from .modules import PRIME, spec

    ctx = env.ctx
    ml = ctx.meta.get("module_lattice")
    require(ml is not None, "context is not module-generated")
    require(ctx.orientation == PRIMAL, "orientation is primal")
    require(point_set(ctx) == spec(ml, PRIME), "X is not the prime spectrum")
    need_xtop(ctx)
    missing = si_of_radicals(ctx) - point_set(ctx)
    expect(not missing, "strongly irreducible radical that is not prime", elements=ctx.labels_of(missing))


@check("module_max_simple_spectra", "maximal submodules are prime and coprime; simple ones second and first")
def module_max_simple_spectra(env: Env):
    from .modules import COPRIME, FIRST, PRIME, SECOND, maximal_submodules, simple_submodules, spec

    ctx = env.ctx
    ml = ctx.meta.get("module_lattice")
    require(ml is not None, "context is not module-generated")
    L = ml.lattice
    sp = {k: spec(ml, k) for k in (PRIME, COPRIME, SECOND, FIRST)}
    mx, sm = maximal_submodules(ml), simple_submodules(ml)
    lab = lambda s: sorted(L.labels[e] for e in s)  # noqa: E731
    for kind in (PRIME, COPRIME):
        expect(mx <= sp[kind], f"maximal submodule outside the {kind} spectrum", missing=lab(mx - sp[kind]))
    for kind in (SECOND, FIRST):
        expect(sm <= sp[kind], f"simple submodule outside the {kind} spectrum", missing=lab(sm - sp[kind]))
    env.details["spectra"] = {k: lab(v) for k, v in sp.items()}
    if len(mx) == 1:
        for kind in (PRIME, COPRIME):
            sub = SpectrumContext(L, sp[kind])
            expect(radical_complete_max(sub), f"local module: radicals of the {kind} spectrum lack complete max")
        env.details["local"] = True


def _group_meta(ctx, kinds):
    gl = ctx.meta.get("group_lattice")
    require(gl is not None and gl.kind in kinds, f"context is a {'/'.join(kinds)} group lattice")
    require(ctx.orientation == PRIMAL and point_set(ctx) == gl.points,
            "X is the group selector's point set")
    return gl


def _group_common(env: Env, gl):
    ctx = env.ctx
    L = ctx.lattice
    expect(set(ctx.radicals) == point_set(ctx) | {L.top}, "radicals differ from X plus G",
           radicals=ctx.labels_of(ctx.radicals))
    si = si_of_radicals(ctx)
    expect(si <= point_set(ctx), "strongly irreducible radical outside X", extra=ctx.labels_of(si - point_set(ctx)))
    T = ctx.tau_cl
    if gl.group.order > 1:
        expect(L.bottom in ctx.point_index, "trivial subgroup is not a point")
        expect(ctx.rad[L.bottom] == L.bottom, "radical of the trivial subgroup is not trivial")
        expect(top.is_irreducible(T, ctx.full) and top.is_connected(T), "X is not irreducible and connected")
    expect((si == point_set(ctx)) == ctx.xtop.is_x_top, "SI(C(L)) = X disagrees with X-top",
           x_top=ctx.xtop.is_x_top)
    f = flags(T)
    vals = [f["T1"], ctx.m == 1, f["T2"], f["discrete"]]
    expect(len(set(vals)) == 1, "T1, singleton, T2 and discrete disagree",
           T1=vals[0], singleton=vals[1], T2=vals[2], discrete=vals[3])
    expect(top.is_spectral(T), "finite space is not spectral")


@check("normal_subgroup_spectrum", "proper normal subgroups as points")
def normal_subgroup_spectrum(env: Env):
    from .groups import NORMAL

    ctx = env.ctx
    gl = _group_meta(ctx, (NORMAL,))
    _group_common(env, gl)
    L = ctx.lattice
    if ctx.xtop.is_x_top:
        nonzero = [p for p in ctx.points if p != L.bottom]
        if nonzero:
            expect(L.meet_all(nonzero) != L.bottom, "X-top yet two non-trivial normal subgroups meet trivially",
                   subgroups=ctx.labels_of(nonzero))


@check("center_subgroup_spectrum", "proper subgroups of the centre as points")
def center_subgroup_spectrum(env: Env):
    from .groups import CENTER, FINITE_CENTER

    ctx = env.ctx
    gl = _group_meta(ctx, (CENTER, FINITE_CENTER))
    _group_common(env, gl)
    G = gl.group
    if G.center != (1 << G.order) - 1:
        iv = ctx.intervals
        zc = gl.members.index(G.center)
        expect(iv.coatomic, "X is not coatomic although Z(G) is proper")
        expect(ctx.elements_of(iv.max_points) == [zc], "Z(G) is not the unique maximal point",
               max_points=ctx.point_labels(iv.max_points))
        env.details["proper_center"] = True
    if ctx.xtop.is_x_top and ctx.m > 1:
        orders = {bin(gl.members[p]).count("1") for p in ctx.points}
        primes = set()
        for o in orders:
            d = 2
            while o > 1:
                while o % d == 0:
                    primes.add(d)
                    o //= d
                d += 1
        expect(len(primes) <= 1, "X-top but point orders involve several primes", primes=sorted(primes))
