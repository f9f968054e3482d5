import pytest
from hypothesis import given
from hypothesis import strategies as st

from latspec import topology as top
from latspec.errors import CapacityExceeded, MemberOutOfRange
from latspec.lattice import bits, chain
from latspec.spectrum import SpectrumContext

from conftest import lattice_with_points
from oracles import closure_by_opens, connected_by_opens, irreducible_by_opens, opens_from_subbase


def as_set(mask):
    return frozenset(bits(mask))


def test_subbase_examples():
    T = top.generate_from_subbase(3, [])
    assert T.min_open == (7, 7, 7)
    T = top.generate_from_subbase(3, [1, 2, 4])
    assert top.is_discrete(T)
    S = top.generate_from_subbase(2, [0b01])
    assert S.min_open == (0b01, 0b11)
    with pytest.raises(MemberOutOfRange):
        top.generate_from_subbase(2, [0b100])


def test_coherence_enforced():
    with pytest.raises(MemberOutOfRange):
        top.FiniteTopology(3, (0b011, 0b110, 0b100))  # 1 in U_0 but U_1 not inside U_0
    with pytest.raises(MemberOutOfRange):
        top.FiniteTopology(2, (0b01, 0b00))


def test_classical_and_patch(z12_prime_ctx):
    T = z12_prime_ctx.tau_cl
    assert top.is_discrete(T)
    L = chain(4)
    ctx = SpectrumContext(L, [1, 2])
    assert ctx.tau_cl.min_open == (0b01, 0b11)  # Sierpinski with open point "1"
    for p in range(ctx.m):
        assert ctx.tau_fp.min_open[p] & ~ctx.tau_cl.min_open[p] == 0


def test_closure_and_irreducible_examples(z12_prime_ctx):
    S = top.generate_from_subbase(2, [0b01])
    assert top.closure(S, 0) == 0
    assert top.closure(S, 0b01) == 0b11
    assert top.is_irreducible(S, 0b11)
    assert top.is_irreducible(S, 0b10)
    assert not top.is_irreducible(S, 0)
    D = top.generate_from_subbase(2, [1, 2])
    assert not top.is_irreducible(D, 0b11)
    ctx = z12_prime_ctx
    i = ctx.point_index[ctx.lattice.index("(2)")]
    assert top.closure(ctx.tau_cl, 1 << i) == 1 << i == ctx.var[ctx.lattice.index("(2)")]


def test_components_examples(z12_prime_ctx):
    D = top.generate_from_subbase(3, [1, 2, 4])
    assert top.irreducible_components(D) == [1, 2, 4]
    S = top.generate_from_subbase(2, [0b01])
    assert top.irreducible_components(S) == [0b11]
    ctx = z12_prime_ctx
    comps = [ctx.point_labels(c) for c in top.irreducible_components(ctx.tau_cl)]
    assert sorted(comps) == [["(2)"], ["(3)"]]


def test_property_report_examples():
    S = top.property_report(top.generate_from_subbase(2, [0b01]))["flags"]
    assert S["T0"] and not S["T1"] and S["sober"] and S["spectral"]
    I = top.property_report(top.generate_from_subbase(2, []))["flags"]
    assert not I["T0"] and not I["spectral"]
    D = top.property_report(top.generate_from_subbase(2, [1, 2]))["flags"]
    assert D["T2"] and D["spectral"]


def test_separation_cap():
    big = top.generate_from_subbase(21, [1 << i for i in range(21)])
    rep = top.property_report(big)
    assert rep["flags"]["regular"] is None and "regular" in rep["notes"]
    assert rep["flags"]["T2"]
    with pytest.raises(CapacityExceeded):
        top.is_regular(big)


def test_specialization_dot():
    T = top.generate_from_subbase(3, [0b001, 0b011])
    dot = top.to_dot(T)
    # 2 -> 1 -> 0 chain, transitively reduced
    assert dot.count("->") == 2


@st.composite
def subbases(draw, max_points=10):
    m = draw(st.integers(0, max_points))
    fam = draw(st.lists(st.integers(0, (1 << m) - 1), max_size=8))
    return m, fam


@given(subbases())
def test_opens_match_naive_oracle(data):
    m, fam = data
    T = top.generate_from_subbase(m, fam)
    points = frozenset(range(m))
    expected = opens_from_subbase(points, [as_set(s) for s in fam])
    got = {as_set(o) for o in top.open_sets(T)}
    assert got == expected


@given(subbases(max_points=6), st.randoms(use_true_random=False))
def test_closure_irreducible_connected_against_oracle(data, rnd):
    m, fam = data
    T = top.generate_from_subbase(m, fam)
    points = frozenset(range(m))
    opens = opens_from_subbase(points, [as_set(s) for s in fam])
    for _ in range(5):
        A = rnd.getrandbits(m) if m else 0
        assert as_set(top.closure(T, A)) == closure_by_opens(opens, points, as_set(A))
        assert top.is_irreducible(T, A) == irreducible_by_opens(opens, as_set(A))
    assert top.is_connected(T) == connected_by_opens(opens, points)


@given(subbases(max_points=8), st.randoms(use_true_random=False))
def test_kuratowski_and_coherence(data, rnd):
    m, fam = data
    T = top.generate_from_subbase(m, fam)
    for p, u in enumerate(T.min_open):
        assert u >> p & 1
        for q in bits(u):
            assert T.min_open[q] & ~u == 0
    assert top.closure(T, 0) == 0
    for _ in range(5):
        A = rnd.getrandbits(m) if m else 0
        B = rnd.getrandbits(m) if m else 0
        c = top.closure(T, A)
        assert A & ~c == 0 and top.closure(T, c) == c
        assert top.closure(T, A | B) == c | top.closure(T, B)
        assert top.interior(T, A) & ~A == 0 and top.is_open(T, top.interior(T, A))


@given(subbases(max_points=8))
def test_connectivity_relations(data):
    m, fam = data
    T = top.generate_from_subbase(m, fam)
    assert top.is_hyperconnected(T) == top.is_irreducible(T, T.full)
    if top.is_ultraconnected(T):
        assert top.is_connected(T)
    if top.is_t2(T):
        assert top.is_t1(T) or not top.is_t0(T)


@given(lattice_with_points())
def test_generated_classical_topologies(data):
    L, pts = data
    ctx = SpectrumContext(L, pts)
    T = ctx.tau_cl
    assert top.is_t0(T) and top.is_sober(T) and top.is_spectral(T)
    if T.size <= top.SEPARATION_CAP and top.is_regular(T):
        assert top.is_t2(T)
    for p in range(ctx.m):
        assert ctx.tau_fp.min_open[p] & ~T.min_open[p] == 0
    if ctx.xtop.is_x_top:
        assert set(top.closed_sets(T)) == set(ctx.var)


def test_closed_set_limit():
    T = top.generate_from_subbase(12, [1 << i for i in range(12)])
    with pytest.raises(CapacityExceeded):
        top.closed_sets(T, limit=100)
    assert len(top.closed_sets(T)) == 4096
