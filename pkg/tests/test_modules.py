import random

import pytest

from latspec.errors import CapacityExceeded, NotAGroup, SchemaError
from latspec.groups import GroupTable, builtin_group, group_lattices
from latspec.lattice import bits, dualize
from latspec.modules import (
    COPRIME,
    FIRST,
    PRIME,
    SECOND,
    FiniteModule,
    ideal_lattice,
    maximal_submodules,
    simple_submodules,
    spec,
    submodule_lattice,
)
from latspec.spectrum import SpectrumContext

import oracles

MODULES = [(12, (12,)), (4, (4,)), (9, (9,)), (2, (2, 2)), (6, (6,)), (8, (2, 4))]


def names(L, s):
    return sorted(L.labels[e] for e in s)


def as_sets(M, ml, elements):
    return {frozenset(M.members(M.submodules[e])) for e in elements}


@pytest.mark.parametrize("n,factors", MODULES)
def test_submodules_match_subset_oracle(n, factors):
    M = FiniteModule(n, factors)
    got = {frozenset(M.members(s)) for s in M.submodules}
    assert got == set(oracles.submodules_by_subsets(factors))


@pytest.mark.parametrize("n,factors", MODULES)
def test_spectra_match_definition_oracle(n, factors):
    M = FiniteModule(n, factors)
    ml = submodule_lattice(M)
    expected = oracles.spectra_by_definition(n, factors)
    for kind in (PRIME, COPRIME, SECOND, FIRST):
        assert as_sets(M, ml, spec(ml, kind)) == expected[kind], kind


def test_spectra_examples():
    ml = submodule_lattice(FiniteModule(12, (12,)))
    L = ml.lattice
    assert names(L, spec(ml, PRIME)) == ["2M", "3M"]
    assert names(L, spec(ml, COPRIME)) == ["2M", "3M"]
    assert names(L, spec(ml, SECOND)) == ["4M", "6M"]
    assert names(L, spec(ml, FIRST)) == ["4M", "6M"]
    for p in (2, 3):
        ml = submodule_lattice(FiniteModule(p * p, (p * p,)))
        assert names(ml.lattice, spec(ml, PRIME)) == [f"{p}M"]
    assert len(FiniteModule(2, (2, 2)).submodules) == 5
    assert len(FiniteModule(12, (12,)).submodules) == 6
    ml = submodule_lattice(FiniteModule(5, (5,)))
    assert ml.lattice.labels == ("0", "M")


def test_ideal_lattice_examples():
    assert ideal_lattice(12).lattice.n == 6
    assert ideal_lattice(7).lattice.n == 2
    assert ideal_lattice(360).lattice.n == 24
    ml = ideal_lattice(12)
    assert names(ml.lattice, spec(ml, PRIME)) == ["(2)", "(3)"]


def test_module_validation(monkeypatch):
    with pytest.raises(SchemaError):
        FiniteModule(12, (5,))
    with pytest.raises(SchemaError):
        FiniteModule(12, (4, 6))
    with pytest.raises(SchemaError):
        FiniteModule(0, (2,))
    monkeypatch.setenv("LATSPEC_CAP", "10")
    with pytest.raises(CapacityExceeded):
        FiniteModule(12, (12,))


@pytest.mark.parametrize("n,factors", MODULES)
def test_max_and_simple_submodules(n, factors):
    ml = submodule_lattice(FiniteModule(n, factors))
    mx, sm = maximal_submodules(ml), simple_submodules(ml)
    assert mx <= spec(ml, PRIME) and mx <= spec(ml, COPRIME)
    assert sm <= spec(ml, SECOND) and sm <= spec(ml, FIRST)


def test_second_through_dual_plumbing():
    # second submodules via the dual lattice: radicals of the dual context are
    # joins of second submodules, and every second submodule is radical there
    ml = submodule_lattice(FiniteModule(12, (12,)))
    L = ml.lattice
    second = spec(ml, SECOND)
    ctx = SpectrumContext(L, second, "dual")
    D = dualize(L)
    assert ctx.lattice is D
    for s in second:
        assert ctx.rad[s] == s
        assert ctx.var[s] == sum(1 << i for i, p in enumerate(ctx.points) if L.leq(p, s))


def test_local_module_complete_max():
    from latspec.checks import radical_complete_max

    for n in (4, 8, 9, 27):
        ml = submodule_lattice(FiniteModule(n, (n,)))
        assert len(maximal_submodules(ml)) == 1
        assert radical_complete_max(SpectrumContext(ml.lattice, spec(ml, PRIME)))


def test_lattice_tables_match_set_operations():
    M = FiniteModule(8, (2, 4))
    ml = submodule_lattice(M)
    L = ml.lattice
    subs = M.submodules
    rnd = random.Random(7)
    for _ in range(100):
        a, b = rnd.randrange(L.n), rnd.randrange(L.n)
        A, B = set(M.members(subs[a])), set(M.members(subs[b]))
        assert set(M.members(subs[L.meet(a, b)])) == A & B
        assert set(M.members(subs[L.join(a, b)])) == set(oracles.set_sum(A, B, M.invariant_factors))


def test_groups():
    S3 = builtin_group("s3")
    gl = group_lattices(S3, "normal")
    assert sorted(gl.lattice.labels[e] for e in gl.lattice.elements) == sorted(["1", "G", gl.lattice.labels[1]])
    assert [bin(h).count("1") for h in gl.members] == [1, 3, 6]
    c = group_lattices(S3, "center")
    assert [c.lattice.labels[p] for p in c.points] == ["1"]
    z4 = group_lattices(builtin_group("z4"), "normal")
    assert z4.lattice.n == 3 and len(z4.points) == 2
    z4c = group_lattices(builtin_group("z4"), "center")
    assert z4c.points == z4.points
    assert len(builtin_group("q8").normal_subgroups) == 6
    assert len(builtin_group("d4").normal_subgroups) == 6
    q8c = group_lattices(builtin_group("q8"), "center")
    assert sorted(bin(q8c.members[p]).count("1") for p in q8c.points) == [1, 2]


def test_group_validation():
    with pytest.raises(NotAGroup):
        GroupTable(2, [[0, 0], [0, 0]])
    with pytest.raises(NotAGroup):
        GroupTable(3, [[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    G = builtin_group("d4")
    assert G.to_json()["order"] == 8
    assert all(G.is_normal(H) for H in G.normal_subgroups)
    assert bits(G.center) and G.center != (1 << 8) - 1
