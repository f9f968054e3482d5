import pytest
from hypothesis import given, settings

from latspec import checks as chk
from latspec import topology as top
from latspec.documents import load_document, resolve
from latspec.errors import UnknownCheck
from latspec.lattice import antichain, boolean, complete_A_property, maximal_elements
from latspec.spectrum import SpectrumContext, radical

from conftest import lattice_with_points


def test_correspondence_on_z12(z12_prime_ctx):
    r = chk.run_check("radical_closed_correspondence", z12_prime_ctx)
    assert r.status == chk.PASS
    assert r.details["closed_sets"] == r.details["radicals"] == 4


def test_xtop_guard_names_hypothesis():
    ctx = SpectrumContext(antichain(3), [1, 2, 3])
    r = chk.run_check("closure_is_variety_of_meet", ctx)
    assert r.status == chk.NA and r.witness == {"unmet_hypothesis": "X-top fails"}


def test_t0_sober_always_passes(z12_prime_ctx):
    assert chk.run_check("t0_and_sober", z12_prime_ctx).status == chk.PASS


def test_decomposition_of_two_incomparable_points():
    B = boolean(2)
    ctx = SpectrumContext(B, [B.index("{1}"), B.index("{2}")])
    r = chk.run_check("reducible_variety_decomposition", ctx)
    assert r.status == chk.PASS
    (dec,) = r.details["decompositions"]
    assert dec["x"] == "{}" and sorted(dec["parts"]) == ["{1}", "{2}"]


def test_unknown_check(z12_prime_ctx):
    with pytest.raises(UnknownCheck):
        chk.run_check("nope", z12_prime_ctx)
    with pytest.raises(UnknownCheck):
        chk.run_all(z12_prime_ctx, only=["nope"])


def test_registry_is_ordered_and_complete():
    ids = chk.check_ids()
    assert len(ids) == len(set(ids)) == 26
    assert ids[0] == "galois_identities"


def test_failure_witness_replays(z12_prime_ctx):
    # corrupt one cached radical; the reported element must replay as a mismatch
    ctx = z12_prime_ctx
    L = ctx.lattice
    bad = L.index("(4)")
    rad = list(ctx.rad)
    rad[bad] = L.index("(1)")
    ctx.rad = tuple(rad)
    r = chk.run_check("galois_identities", ctx)
    assert r.status == chk.FAIL
    fresh = resolve(load_document({"kind": "ideals", "modulus": 12}), ["(2)", "(3)"])
    named = [v for k, v in r.witness.items() if k in ("x", "y")]
    assert any(ctx.rad[L.index(e)] != radical(fresh, L.index(e)) for e in named)


def test_seeded_sampling_is_deterministic():
    src = load_document({"kind": "ideals", "modulus": 720})  # 30 ideals: sampled mode
    ctx = resolve(src, "max")
    a = [r.to_json(timings=False) for r in chk.run_all(ctx, seed=5)]
    ctx = resolve(load_document({"kind": "ideals", "modulus": 720}), "max")
    b = [r.to_json(timings=False) for r in chk.run_all(ctx, seed=5)]
    assert a == b
    g = next(r for r in a if r["check_id"] == "galois_identities")
    assert g["status"] == chk.PASS and g["details"]["mode"] == "sampled 2000"


def test_discreteness_converse_needs_xtop():
    # antichain atoms: discrete, yet the radicals lack the complete max property
    ctx = SpectrumContext(antichain(3), [1, 2, 3])
    assert top.is_discrete(ctx.tau_cl) and not ctx.xtop.is_x_top
    assert not chk.radical_complete_max(ctx)
    r = chk.run_check("max_points_are_max_radicals", ctx)
    assert r.status == chk.PASS and r.details["discrete_converse"] == "skipped: X-top fails"


def test_group_checks():
    for g in ("s3", "z4", "d4", "q8"):
        src = load_document({"kind": "group", "builtin": g})
        r = chk.run_check("normal_subgroup_spectrum", resolve(src, "normal"))
        assert r.status == chk.PASS, (g, r.witness)
        r = chk.run_check("center_subgroup_spectrum", resolve(src, "center"))
        assert r.status == chk.PASS, (g, r.witness)


def test_module_checks():
    src = load_document({"kind": "module", "modulus": 12, "invariant_factors": [12]})
    ctx = resolve(src, "spec_p")
    assert chk.run_check("prime_spectrum_contains_si_radicals", ctx).status == chk.PASS
    assert chk.run_check("module_max_simple_spectra", ctx).status == chk.PASS
    ctx = resolve(src, "max")
    r = chk.run_check("prime_spectrum_contains_si_radicals", ctx)
    assert r.status == chk.PASS  # Max = Spec^p here
    plain = SpectrumContext(antichain(2), [1])
    assert chk.run_check("module_max_simple_spectra", plain).witness == {
        "unmet_hypothesis": "context is not module-generated"
    }


@settings(max_examples=80)
@given(lattice_with_points())
def test_no_check_fails_on_random_contexts(data):
    L, pts = data
    for ctx in (SpectrumContext(L, pts), SpectrumContext(L, [p for p in pts if p != L.bottom], "dual")):
        for r in chk.run_all(ctx, seed=1):
            assert r.status != chk.FAIL, (r.check_id, r.witness, L.labels, ctx.labels_of(ctx.points))
            if r.status == chk.NA:
                assert r.witness["unmet_hypothesis"]


@given(lattice_with_points())
def test_complete_max_under_xtop_and_discrete(data):
    L, pts = data
    ctx = SpectrumContext(L, pts)
    if ctx.xtop.is_x_top and top.is_discrete(ctx.tau_cl):
        C = ctx.radical_lattice.lattice
        assert complete_A_property(C, maximal_elements(C))


@given(lattice_with_points())
def test_xtop_per_point_irreducibility_consistent(data):
    L, pts = data
    ctx = SpectrumContext(L, pts)
    if ctx.xtop.is_x_top:
        a = chk.run_check("points_strongly_irreducible_radicals", ctx).status
        b = chk.run_check("xtop_irreducibility_remarks", ctx).status
        assert a == b == chk.PASS


def test_unique_max_converse_needs_separated_maxima():
    # bottom point under two maxima: connected, maxima completely strongly
    # irreducible, yet two maximal points
    from latspec.lattice import completely_strongly_irreducible, validate_lattice

    labels = ["{}", "{0}", "{2}", "{0,2}", "{1,2}", "{0,1,2}"]
    sets = [set(), {0}, {2}, {0, 2}, {1, 2}, {0, 1, 2}]
    leq = [(i, j) for i, a in enumerate(sets) for j, b in enumerate(sets) if a <= b]
    L = validate_lattice(labels, leq=leq)
    ctx = SpectrumContext(L, [L.index("{}"), L.index("{0,2}"), L.index("{1,2}")])
    assert ctx.xtop.is_x_top and ctx.intervals.coatomic and top.is_connected(ctx.tau_cl)
    R = ctx.radical_lattice
    maxima = ctx.elements_of(ctx.intervals.max_points)
    assert len(maxima) == 2
    assert all(completely_strongly_irreducible(R.lattice, R.from_ambient(p)) for p in maxima)
    r = chk.run_check("xtop_connectedness", ctx)
    assert r.status == chk.PASS and r.details["unique_max"].startswith("converse skipped")
