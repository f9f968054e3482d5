import sys
import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from latspec.documents import load_document, resolve
from latspec.lattice import validate_lattice

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def closure_lattices(draw, max_base: int = 4, max_sets: int = 8):
    """Random finite lattices: intersection-closed set families ordered by inclusion."""
    k = draw(st.integers(1, max_base))
    full = (1 << k) - 1
    family = {full}
    for s in draw(st.lists(st.integers(0, full), max_size=max_sets)):
        new = {s}
        for f in family:
            new.add(f & s)
        family |= new
    changed = True
    while changed:
        changed = False
        for a in list(family):
            for b in list(family):
                if a & b not in family:
                    family.add(a & b)
                    changed = True
    sets = sorted(family, key=lambda s: (bin(s).count("1"), s))
    labels = ["{" + ",".join(str(i) for i in range(k) if s >> i & 1) + "}" for s in sets]
    leq = [(i, j) for i, a in enumerate(sets) for j, b in enumerate(sets) if a & ~b == 0]
    return validate_lattice(labels, leq=leq)


@st.composite
def lattice_with_points(draw, max_base: int = 4):
    L = draw(closure_lattices(max_base))
    candidates = [a for a in L.elements if a != L.top]
    pts = draw(st.lists(st.sampled_from(candidates), unique=True)) if candidates else []
    return L, pts


@pytest.fixture
def z12_ideals():
    return load_document({"kind": "ideals", "modulus": 12})


@pytest.fixture
def z12_prime_ctx(z12_ideals):
    return resolve(z12_ideals, ["(2)", "(3)"])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        status, title = results[number]
        terminalreporter.write_line(f"{status} criterion {number}: {title}")
