"""Acceptance checks at desk scale (p = 32003, a <= 4), exact comparisons throughout.

Each test carries a ``criterion`` marker; conftest prints one PASS/FAIL line
per criterion at the end of the run.
"""

import io
import json

import numpy as np
import pytest

from helpers import DIM1_RINGS, make_ring, test_ring
from socleprobe import (
    certify_sop,
    cli,
    det_transition,
    dim1_bound,
    exactla,
    family_ring,
    gorenstein_dim1,
    is_irreducible,
    limit_closure,
    power_quotient_system,
    probe_ell,
    quotient_socle,
    verify_ps_consequence,
)
from socleprobe.dim1 import EXACT, reduces
from socleprobe.gorprobe import deterministic_candidates

P = 32003
A_RANGE = [1, 2, 3, 4]
C6 = "injectivity past the torsion gap, minimal generation of m^(n+i), det-map well-definedness"


def criterion(n, title):
    return pytest.mark.criterion(n, title)


@pytest.fixture(scope="module")
def family_report():
    out, err = io.StringIO(), io.StringIO()
    code = cli.run_command(["family-xy", "--a-min", "1", "--a-max", "4", "--char", str(P)], out, err)
    assert code == 0, err.getvalue()
    return {row["a"]: row for row in json.loads(out.getvalue())["results"]["rows"]}


@criterion(1, "family invariants: g = 2a, c = a (exact) with witness y, n = 2a+1")
@pytest.mark.parametrize("a", A_RANGE)
def test_family_invariants(family_report, a):
    row = family_report[a]
    assert row["g"] == 2 * a
    assert row["witness"] == "y" and row["c"] <= a
    assert row["c"] == a and row["c_certainty"] == EXACT
    ring = family_ring(a, P)
    # (y) m^a = m^{a+1}, and the dimension count H(a) = a+1 > a = H(a-1) rules out smaller c
    assert reduces(ring, ring.element("y"), a)
    assert ring.hilbert(a) == a + 1 and ring.hilbert(a - 1) == a
    assert row["n"] == 2 * a + 1


@criterion(2, "(y^a) irreducible with socle {x^a y^(a-1)}; probe at L=a gives ell > a")
@pytest.mark.parametrize("a", A_RANGE)
def test_family_irreducible_power(a):
    ring = family_ring(a, P)
    assert is_irreducible(ring, [f"y^{a}"])
    soc = quotient_socle(ring.algebra(), certify_sop(ring, [f"y^{a}"]))
    assert list(soc.basis) == [ring.monomial((a, a - 1))]
    rep = probe_ell(ring, a, samples=0)
    assert rep.ell_lower_bound == a


@criterion(3, "200 seeded samples at L = 2a: zero irreducible parameter ideals (a = 1, 2)")
@pytest.mark.parametrize("a", [1, 2])
def test_reducible_at_2a(a):
    rep = probe_ell(family_ring(a, P), 2 * a, samples=200, seed=0)
    assert rep.samples == 200 and rep.tested >= 200
    assert len(rep.irreducible_found) == 0


@criterion(4, "a = 1, sop (y): stable socle dim 1, surjectivity index 2, certified")
def test_surjectivity_index_a1():
    rep = power_quotient_system(family_ring(1, P), ["y"])
    assert rep.stable_socle_dim == 1
    assert rep.surjectivity_index == 2
    assert rep.certification == "certified"
    assert rep.image_dims[0] == 0  # Soc(Q/(y)) = span{x} and y x = 0


@criterion(5, "I = (xy): Gorenstein, n = 2, first deterministic candidate at L = 2 irreducible")
def test_gorenstein_control():
    ring = make_ring("xy", ["x*y"], P)
    assert gorenstein_dim1(ring).gorenstein
    inv = dim1_bound(ring)
    assert inv.bound_n == 2
    first = deterministic_candidates(ring, inv.bound_n, inv.c_witness)[0]
    assert certify_sop(ring, first).certified and is_irreducible(ring, first)


@criterion(6, C6)
@pytest.mark.parametrize("name", DIM1_RINGS)
def test_injectivity(name):
    ring = test_ring(name)
    inv = dim1_bound(ring)
    alg = ring.algebra()
    for d in range(inv.g, alg.N - 1):
        for i in range(1, alg.N - d):
            M = alg.mult_matrix(inv.c_witness**i, d)
            assert exactla.rank(M, ring.p) == M.shape[0]


@criterion(6, C6)
@pytest.mark.parametrize("name", DIM1_RINGS)
def test_minimal_generation(name):
    ring = test_ring(name)
    inv = dim1_bound(ring)
    n = max(inv.c, inv.g)
    alg = ring.algebra()
    for i in range(1, alg.N - n - 1):
        M = alg.mult_matrix(inv.c_witness**i, n)
        assert exactla.rank(M, ring.p) == alg.dim(n) == alg.dim(n + i)


CM_NESTED = [
    (("xy", []), ["x", "y"]),
    (("xyz", ["x*y*z"]), ["x-y", "y-z"]),
    (("xy", ["x*y"]), ["x+y"]),
    (("xyz", ["x*y", "x*z", "y*z"]), ["x+y+z"]),
]


@criterion(6, C6)
@pytest.mark.parametrize("seed", range(24))
def test_det_well_defined(seed):
    (names, ideal), sop = CM_NESTED[seed % len(CM_NESTED)]
    ring = make_ring(names, ideal, P)
    rng = np.random.default_rng(seed)
    xs = [ring.element(f) for f in sop]
    i = int(rng.integers(1, 3))
    outer = certify_sop(ring, [x**i for x in xs], truncation=40)
    inner = certify_sop(ring, [x ** (i + int(rng.integers(0, 3))) for x in xs], truncation=40)
    ta = det_transition(ring, outer, inner)
    tb = det_transition(ring, outer, inner, rng=np.random.default_rng(10_000 + seed))
    assert ta.map == tb.map


@criterion(7, "I = (x^2, xy), sop (y): dim Soc(closure/(y)) = dim ker of the stage-1 socle map")
def test_kernel_identity():
    ring = make_ring("xy", ["x^2", "x*y"], P)
    rep = power_quotient_system(ring, ["y"])
    lc = limit_closure(ring, ["y"])
    assert lc.certified
    assert lc.socle_dim == rep.stage_socle_kernel_dim(1) == 1


@criterion(8, "I = (x^2, xy), sop (y), s = 2: surjective from s")
def test_ps_consequence():
    chk = verify_ps_consequence(make_ring("xy", ["x^2", "x*y"], P), ["y"], s=2)
    assert chk.surjective_from_s is True


INFRA_SUITES = [
    ("test_exactla.py", "test_rank_nullity"),
    ("test_exactla.py", "test_rref_canonical_and_idempotent"),
    ("test_exactla.py", "test_modular_law"),
    ("test_localring.py", "test_hilbert_vs_enumeration"),
    ("test_cli.py", "test_cli_determinism"),
    ("test_cli.py", "test_ring_file_round_trip"),
]


@criterion(9, "property suites (>= 100 cases each): rank-nullity, RREF, modular law, Hilbert, CLI, round trip")
@pytest.mark.parametrize("module,name", INFRA_SUITES)
def test_infrastructure_suite(module, name):
    """Re-run the named property test and check its example budget."""
    import importlib

    mod = importlib.import_module(module[:-3])
    fn = getattr(mod, name)
    assert fn.hypothesis.inner_test is not None
    assert fn._hypothesis_internal_use_settings.max_examples >= 100
    fn()
