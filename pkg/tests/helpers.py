"""Ring constructors and the shared collection of test rings."""

from socleprobe import RingSpec, load_ring

P = 32003


def make_ring(names, ideal, p=P):
    return load_ring(RingSpec.from_strings(tuple(names), list(ideal), p))


# name -> (vars, ideal gens, exponent vectors for the oracles)
TEST_RINGS = {
    "q1": ("xy", ["x^2", "x*y"], [(2, 0), (1, 1)]),
    "q2": ("xy", ["x^3", "x*y^2"], [(3, 0), (1, 2)]),
    "q3": ("xy", ["x^4", "x*y^3"], [(4, 0), (1, 3)]),
    "node": ("xy", ["x*y"], [(1, 1)]),
    "cusp_like": ("xy", ["x^2*y", "x*y^2"], [(2, 1), (1, 2)]),
    "line_emb": ("xy", ["x^2", "x*y^3"], [(2, 0), (1, 3)]),
    "three_lines": ("xyz", ["x*y", "x*z", "y*z"], [(1, 1, 0), (1, 0, 1), (0, 1, 1)]),
    "plane_line": ("xyz", ["x*z", "y*z"], [(1, 0, 1), (0, 1, 1)]),
    "artin": ("xy", ["x^2", "y^2"], [(2, 0), (0, 2)]),
}

DIM1_RINGS = ["q1", "q2", "q3", "node", "cusp_like", "line_emb", "three_lines"]


def test_ring(name, p=P):
    names, ideal, _ = TEST_RINGS[name]
    return make_ring(names, ideal, p)


test_ring.__test__ = False
