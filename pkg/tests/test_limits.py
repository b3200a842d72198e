import numpy as np
import pytest

import oracles
from helpers import TEST_RINGS, make_ring, test_ring
from socleprobe import certify_sop, det_transition, limit_closure, power_quotient_system, verify_ps_consequence
from socleprobe.errors import ContainmentError, InputError, NotCertified
from socleprobe.limits import GradedMap


def family(a):
    return make_ring("xy", [f"x^{a + 1}", f"x*y^{a}"])


def nested_powers(ring, sop, seed):
    """(x_1^i, .., x_d^i) inside (x_1^j1, .., x_d^jd) with seeded exponents j >= i."""
    rng = np.random.default_rng(seed)
    xs = [ring.element(f) for f in sop]
    i = int(rng.integers(1, 3))
    js = [i + int(rng.integers(0, 3)) for _ in xs]
    outer = certify_sop(ring, [x**i for x in xs], truncation=40)
    inner = certify_sop(ring, [x**j for x, j in zip(xs, js)], truncation=40)
    return outer, inner


CM_SYSTEMS = [
    (make_ring("xy", []), ["x", "y"]),
    (make_ring("xyz", ["x*y*z"]), ["x-y", "y-z"]),
    (make_ring("xyz", ["x*y*z"]), ["x+2*y", "y+3*z"]),
    (test_ring("node"), ["x+y"]),
    (test_ring("three_lines"), ["x+y+z"]),
]

NON_CM_SYSTEMS = [
    (test_ring("q1"), ["y"]),
    (test_ring("q2"), ["y"]),
    (test_ring("q2"), ["x+y"]),
    (test_ring("cusp_like"), ["x+y"]),
]

SYSTEMS = [
    ("q1", ["y"], 6),
    ("q2", ["y"], 5),
    ("q2", ["x+y"], 5),
    ("node", ["x+y"], 5),
    ("cusp_like", ["x+y"], 4),
    ("three_lines", ["x+y+z"], 4),
    ("plane_line", ["x+z", "y"], 5),
]


class TestPowerQuotientSystem:
    def test_q1(self):
        rep = power_quotient_system(test_ring("q1"), ["y"], i_max=6)
        assert rep.stable_socle_dim == 1 and rep.surjectivity_index == 2
        assert rep.certified
        # stage 1: Soc(R/(y)) = span{x} and y * x = 0 kills it
        assert rep.socle_dims[0] == 1 and rep.image_dims[0] == 0

    def test_node(self):
        rep = power_quotient_system(test_ring("node"), ["x+y"], i_max=5)
        assert set(rep.socle_dims) == {1}
        assert rep.surjectivity_index == 1 and rep.stable_socle_dim == 1

    def test_plane_line(self):
        rep = power_quotient_system(test_ring("plane_line"), ["x+z", "y"], i_max=5)
        assert rep.stable_socle_dim == 1 and rep.surjectivity_index == 2
        assert rep.certification == "empirical(window 3)"
        assert rep.surjectivity_index <= rep.i_max - rep.window

    @pytest.mark.parametrize("name,sop,i_max", SYSTEMS)
    def test_matches_groebner_oracle(self, name, sop, i_max):
        names, _, gens = TEST_RINGS[name]
        ring = test_ring(name)
        rep = power_quotient_system(ring, sop, i_max=i_max)
        socles, images = oracles.direct_system(names, gens, sop, ring.p, i_max, rep.window)
        assert list(rep.socle_dims) == socles
        assert list(rep.image_dims) == images

    @pytest.mark.parametrize("name,sop,i_max", SYSTEMS)
    def test_images_nondecreasing(self, name, sop, i_max):
        rep = power_quotient_system(test_ring(name), sop, i_max=i_max)
        assert all(a <= b for a, b in zip(rep.image_dims, rep.image_dims[1:]))
        assert rep.image_dims[rep.surjectivity_index - 1] == rep.stable_socle_dim

    @pytest.mark.parametrize("a", [1, 2, 3, 4])
    def test_family_stable_socle(self, a):
        rep = power_quotient_system(family(a), ["y"])
        assert rep.stable_socle_dim == 1 and rep.certified
        assert rep.surjectivity_index == a + 1

    def test_uncertified(self):
        with pytest.raises(NotCertified):
            power_quotient_system(test_ring("q1"), ["x"])


class TestDetTransition:
    def test_identity(self):
        ring = test_ring("plane_line")
        t = det_transition(ring, ["x+z", "y"], ["x+z", "y"])
        assert t.det == ring.one()
        assert all(np.array_equal(b, np.eye(b.shape[0], dtype=b.dtype)) for b in t.map.blocks.values())

    def test_diagonal(self):
        ring = test_ring("plane_line")
        i = 2
        t = det_transition(ring, ["x^2+2*x*z+z^2", "y^2"], ["x^4+4*x^3*z+6*x^2*z^2+4*x*z^3+z^4", "y^4"])
        f = ring.element("x+z") * ring.element("y")
        assert t.det == f**i

    def test_q1(self):
        ring = test_ring("q1")
        t = det_transition(ring, ["y^2"], ["y^3"])
        assert t.matrix == ((ring.element("y"),),)
        assert t.det == ring.element("y")

    def test_containment(self):
        with pytest.raises(ContainmentError):
            det_transition(test_ring("q1"), ["y^2"], ["y"])

    @pytest.mark.parametrize("seed", range(24))
    def test_well_defined_cohen_macaulay(self, seed):
        """Two independently solved coefficient matrices induce the same map."""
        ring, sop = CM_SYSTEMS[seed % len(CM_SYSTEMS)]
        outer, inner = nested_powers(ring, sop, seed)
        ta = det_transition(ring, outer, inner)
        tb = det_transition(ring, outer, inner, rng=np.random.default_rng(seed + 1000))
        for t in (ta, tb):
            for r, y in enumerate(inner.elements):
                assert sum((t.matrix[r][j] * outer.elements[j] for j in range(len(outer.elements))), ring.zero()) == y
        assert ta.map == tb.map

    @pytest.mark.parametrize("seed", range(12))
    def test_agree_in_limit(self, seed):
        """Outside the CM case the choices may differ, but only by something dying in the limit."""
        ring, sop = NON_CM_SYSTEMS[seed % len(NON_CM_SYSTEMS)]
        outer, inner = nested_powers(ring, sop, seed)
        ta = det_transition(ring, outer, inner)
        tb = det_transition(ring, outer, inner, rng=np.random.default_rng(seed + 1000))
        delta = tb.det - ta.det
        lc = limit_closure(ring, inner)
        for d in range(outer.artinian_degree):
            for u in ring.standard_monomials(d):
                assert lc.contains(delta * ring.monomial(u))

    def test_choice_matters_without_cohen_macaulay(self):
        ring = test_ring("q2")
        t = det_transition(ring, ["y^2"], ["y^4"])
        assert t.det == ring.element("y^2")
        other = ring.element("y^2 + x^2")
        assert other * ring.element("y^2") == ring.element("y^4")
        alt = GradedMap.multiplication(t.outer, t.inner, other)
        assert alt != t.map
        # the discrepancy x^2 is killed in the limit
        assert limit_closure(ring, ["y^4"]).contains("x^2")

    def test_random_solutions_really_differ(self):
        ring, sop = CM_SYSTEMS[1]
        outer = certify_sop(ring, [ring.element(f) for f in sop])
        inner = certify_sop(ring, [ring.element(f) ** 2 for f in sop])
        ta = det_transition(ring, outer, inner)
        tb = det_transition(ring, outer, inner, rng=np.random.default_rng(1))
        assert ta.matrix != tb.matrix and ta.det != tb.det
        assert ta.map == tb.map

    @pytest.mark.parametrize("i", [1, 2])
    def test_functorial(self, i):
        ring = test_ring("plane_line")
        x1, x2 = ring.element("x+z"), ring.element("y")
        outer = [x1**i, x2**i]
        middle = [x1 ** (i + 1), x2 ** (i + 1)]
        inner = [x1 ** (i + 3), x2 ** (i + 2)]
        first = det_transition(ring, outer, middle)
        second = det_transition(ring, middle, inner)
        direct = det_transition(ring, outer, inner)
        assert first.map.compose(second.map) == direct.map


class TestLimitClosure:
    def test_regular(self):
        ring = test_ring("node")
        lc = limit_closure(ring, ["x+y"])
        assert lc.horizon == 0 and lc.socle_dim == 0 and lc.quotient_dim == 0
        assert lc.contains("x+y") and not lc.contains("x")

    def test_q1_is_maximal_ideal(self):
        lc = limit_closure(test_ring("q1"), ["y"])
        assert lc.contains("x") and lc.contains("y") and not lc.contains("1")
        assert lc.certified and lc.stabilized

    def test_q2(self):
        lc = limit_closure(test_ring("q2"), ["y^2"])
        assert lc.contains("x") and lc.contains("x*y")

    def test_chain_nondecreasing(self):
        lc = limit_closure(test_ring("q3"), ["y"], n_max=6)
        assert all(a <= b for a, b in zip(lc.chain_dims, lc.chain_dims[1:]))

    @pytest.mark.parametrize("name,sop,i_max", [s for s in SYSTEMS if s[0] != "plane_line"])
    def test_kernel_identity(self, name, sop, i_max):
        ring = test_ring(name)
        rep = power_quotient_system(ring, sop, i_max=i_max)
        lc = limit_closure(ring, sop)
        assert lc.socle_dim == rep.stage_socle_kernel_dim(1)


class TestPsConsequence:
    def test_q1(self):
        chk = verify_ps_consequence(test_ring("q1"), ["y"], s=2)
        assert chk.surjective_from_s and chk.least_index == 2

    def test_node(self):
        assert verify_ps_consequence(test_ring("node"), ["x+y"], s=2).surjective_from_s

    def test_plane_line(self):
        chk = verify_ps_consequence(test_ring("plane_line"), ["x+z", "y"], s=2)
        assert chk.surjective_from_s and chk.least_index == 2

    def test_s_too_small(self):
        with pytest.raises(InputError):
            verify_ps_consequence(test_ring("q1"), ["y"], s=1)

    def test_failing_stage_reported(self):
        chk = verify_ps_consequence(test_ring("q3"), ["y"], s=2)
        assert not chk.surjective_from_s and chk.failing_stages == (2, 3)
