"""The reference implementations reproduce every hand-derived value frozen elsewhere."""
import sympy as sp

import oracles as o

t, x, y, z = o.COORDS[:4]
LOR = (1, -1, -1, -1)


def laplace_beltrami(form):
    out = {}
    for part in (o.d(o.codifferential(form, LOR), 4), o.codifferential(o.d(form, 4), LOR)):
        for k, v in part.items():
            out[k] = out.get(k, 0) + v
    return o.clean(out)


def test_hodge_values():
    assert o.hodge({(): 1}, LOR) == {(0, 1, 2, 3): 1}
    assert o.hodge({(0, 1, 2, 3): 1}, LOR) == {(): -1}
    assert o.hodge({(0, 1): 1}, LOR) == {(2, 3): -1}
    assert o.hodge({(1, 2): 1}, LOR) == {(0, 3): 1}
    assert o.hodge({(3,): 1}, LOR) == {(0, 1, 2): 1}


def test_derivative_values():
    assert o.d({(1, 2): z}, 4) == {(1, 2, 3): 1}
    assert o.interior((0, 0, 0, 1), {(2, 3): 1}, 4) == {(2,): -1}
    assert o.interior((0, 0, 0, 1), o.hodge({(0, 1): 1}, LOR), 4) == {(2,): 1}


def test_second_order_values():
    assert o.codifferential({(0,): t}, LOR) == {(): -1}
    assert laplace_beltrami({(): t ** 2}) == {(): -2}
    assert laplace_beltrami({(): x ** 2}) == {(): 2}
    assert o.wave({(2,): (t - x) ** 2}, LOR) == {}


def test_vacuum_constitutive_values():
    Ex, Bz = sp.symbols("Ex Bz")
    assert o.hodge({(0, 1): Ex}, LOR) == {(2, 3): -Ex}
    assert o.hodge({(1, 2): -Bz}, LOR) == {(0, 3): -Bz}


def test_maxwell_known_solutions():
    for fields in ({"Ex": x, "rho": 1}, {"Ey": t - x, "Bz": t - x}, {"Bx": 1}):
        r = o.maxwell_vector_residuals(fields)
        assert r["gauss_B"] == r["gauss_E"] == r["continuity"] == 0
        assert r["faraday"] == [0, 0, 0] and r["ampere"] == [0, 0, 0]
    assert o.maxwell_vector_residuals({"Ex": t})["ampere"] == [-1, 0, 0]
