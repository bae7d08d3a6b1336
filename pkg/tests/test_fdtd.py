import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from formdescent.fdtd import (
    BBE_FIELDS,
    CSV_HEADER,
    EEB_FIELDS,
    FIELDS,
    CourantViolation,
    Grid,
    GridSpec,
    div_B,
    energies,
    format_row,
    leakage,
    normalize_peak,
    poly_sources,
    run,
    sample,
    sample_functions,
    step,
)
from formdescent.maxwell import EMConfig
from formdescent.randforms import random_poly


def loop_step(fields, spec, steps):
    """Per-cell Yee update written out index by index (slow reference)."""
    nx, ny, nz = spec.shape
    h, dt = spec.dx, spec.dt
    f = {k: v.copy() for k, v in fields.items()}
    for _ in range(steps):
        Ex, Ey, Ez, Bx, By, Bz = (f[k] for k in FIELDS)
        nBx, nBy, nBz = Bx.copy(), By.copy(), Bz.copy()
        for i in range(nx):
            for j in range(ny):
                for k in range(nz):
                    ip, jp, kp = (i + 1) % nx, (j + 1) % ny, (k + 1) % nz
                    nBx[i, j, k] -= dt * ((Ez[i, jp, k] - Ez[i, j, k]) - (Ey[i, j, kp] - Ey[i, j, k])) / h
                    nBy[i, j, k] -= dt * ((Ex[i, j, kp] - Ex[i, j, k]) - (Ez[ip, j, k] - Ez[i, j, k])) / h
                    nBz[i, j, k] -= dt * ((Ey[ip, j, k] - Ey[i, j, k]) - (Ex[i, jp, k] - Ex[i, j, k])) / h
        nEx, nEy, nEz = Ex.copy(), Ey.copy(), Ez.copy()
        for i in range(nx):
            for j in range(ny):
                for k in range(nz):
                    im, jm, km = (i - 1) % nx, (j - 1) % ny, (k - 1) % nz
                    nEx[i, j, k] += dt * ((nBz[i, j, k] - nBz[i, jm, k]) - (nBy[i, j, k] - nBy[i, j, km])) / h
                    nEy[i, j, k] += dt * ((nBx[i, j, k] - nBx[i, j, km]) - (nBz[i, j, k] - nBz[im, j, k])) / h
                    nEz[i, j, k] += dt * ((nBy[i, j, k] - nBy[im, j, k]) - (nBx[i, j, k] - nBx[i, jm, k])) / h
        f = dict(zip(FIELDS, (nEx, nEy, nEz, nBx, nBy, nBz)))
    return f


def random_grid(seed, spec):
    rng = np.random.default_rng(seed)
    return Grid(spec, {k: rng.standard_normal(spec.shape) for k in FIELDS})


def pure_sector_config(rng, sector):
    names = EEB_FIELDS if sector == "eeb" else BBE_FIELDS
    return EMConfig(**{n: random_poly(rng, 4, 3, 3, free_axes=(1, 2)) for n in names})


class TestGridSpec:
    def test_time_step(self):
        spec = GridSpec(4, 4, 4, 0.1, 0.5)
        assert spec.dt == pytest.approx(0.05 / math.sqrt(3))

    @pytest.mark.parametrize("courant", [0.0, -0.1, 1.5])
    def test_courant_violation(self, courant):
        with pytest.raises(CourantViolation):
            GridSpec(4, 4, 4, 0.1, courant)

    def test_bad_shape(self):
        with pytest.raises(ValueError):
            GridSpec(0, 4, 4)


class TestSampling:
    def test_zero_config(self):
        g = sample(EMConfig(), GridSpec(5, 5, 1))
        assert all(not g[k].any() for k in FIELDS)

    def test_staggered_positions(self):
        spec = GridSpec(4, 3, 2, 0.25, 0.5)
        g = sample(EMConfig(Ey="y", Bz="x + t"), spec)
        assert g["Ey"][0, 1, 0] == pytest.approx(1.5 * 0.25)
        assert g["Bz"][2, 0, 0] == pytest.approx(2.5 * 0.25 - 0.5 * spec.dt)
        assert not g["Ex"].any()

    def test_polynomial_approximation_of_profile(self):
        # degree-5 Taylor polynomial of sin(2 pi (x - 1/2)) about x = 1/2, rational coefficients
        from fractions import Fraction

        from formdescent.coeff import Poly

        a = 2 * math.pi
        u = Poly(4, {(0, 1, 0, 0): 1, (0, 0, 0, 0): Fraction(-1, 2)})
        coeffs = [Fraction(a ** k / math.factorial(k) * (-1) ** (k // 2)).limit_denominator(10 ** 6)
                  for k in (1, 3, 5)]
        profile = sum((u ** k * c for k, c in zip((1, 3, 5), coeffs)), Poly.zero(4))
        spec = GridSpec(16, 1, 1, 1 / 16)
        g = sample(EMConfig(Ey=profile), spec)
        x = (np.arange(16) + 0.0) / 16
        np.testing.assert_allclose(g["Ey"][:, 0, 0], [float(profile(0, xi, 0.5 / 16, 0)) for xi in x])
        assert abs(g["Ey"][8, 0, 0]) < 1e-12 and g["Ey"][10, 0, 0] == pytest.approx(np.sin(a / 8), abs=1e-3)
        assert all(not g[k].any() for k in FIELDS if k != "Ey")

    def test_z_dependent_config_is_accepted(self):
        g = sample(EMConfig(Ex="z"), GridSpec(2, 2, 4, 0.25))
        assert g["Ex"][0, 0, 3] == pytest.approx(0.75)


class TestStep:
    def test_zero_stays_zero(self):
        g = step(Grid(GridSpec(6, 5, 4)), 25)
        assert all(not g[k].any() for k in FIELDS)

    def test_constant_bx_is_stationary(self):
        spec = GridSpec(6, 5, 4)
        g0 = sample(EMConfig(Bx="1"), spec)
        g = step(g0, 100)
        assert np.array_equal(g["Bx"], g0["Bx"])
        assert all(not g[k].any() for k in FIELDS if k != "Bx")

    def test_step_returns_copy(self):
        g0 = random_grid(0, GridSpec(3, 3, 3))
        g = step(g0, 2)
        assert g0.step_count == 0 and g.step_count == 2

    @pytest.mark.parametrize("shape", [(3, 4, 2), (2, 2, 5), (4, 1, 1)])
    def test_matches_loop_reference(self, shape):
        spec = GridSpec(*shape, 0.1, 0.9)
        g0 = random_grid(sum(shape), spec)
        want = loop_step(g0.fields, spec, 3)
        got = step(g0, 3)
        for k in FIELDS:
            np.testing.assert_allclose(got[k], want[k], rtol=1e-12, atol=1e-12)

    def test_sources_enter_ampere_law(self):
        spec = GridSpec(3, 3, 3, 0.1, 0.5)
        c = EMConfig(jx="1")
        g = step(Grid(spec), 1, poly_sources(c, spec))
        np.testing.assert_allclose(g["Ex"], -spec.dt)
        assert poly_sources(EMConfig(), spec) is None


class TestDiagnostics:
    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_divergence_preserved(self, seed):
        spec = GridSpec(6, 5, 4, 0.2, 0.7)
        g = normalize_peak(random_grid(seed, spec))
        before = div_B(g)
        g.advance(50)
        assert np.max(np.abs(div_B(g) - before)) <= 50 * 1e-13

    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_energy_conserved(self, seed):
        g = random_grid(seed, GridSpec(6, 5, 4, 0.2, 0.7))
        e0 = energies(g).total
        g.advance(200)
        assert abs(energies(g).total - e0) <= 1e-12 * abs(e0)

    def test_sector_energies_add_up(self):
        e = energies(random_grid(1, GridSpec(4, 4, 4)))
        assert e.eeb + e.bbe == pytest.approx(e.total)

    @pytest.mark.parametrize("sector", ["eeb", "bbe"])
    def test_pure_sector_has_no_leakage(self, sector):
        spec = GridSpec(32, 32, 1, 1 / 32, 0.5)
        g = sample(pure_sector_config(random.Random(5), sector), spec)
        g.advance(200)
        assert leakage(g, sector) <= 1e-12 * abs(energies(g).total)

    def test_z_dependent_data_leaks(self):
        spec = GridSpec(8, 8, 8, 1 / 8, 0.5)
        g = sample(EMConfig(Ex="z y", Ey="x z", Bz="x y"), spec)
        g.advance(50)
        assert leakage(g, "eeb") > 1e-6

    def test_leakage_rejects_unknown_sector(self):
        with pytest.raises(ValueError):
            leakage(Grid(GridSpec(2, 2, 2)), "xyz")

    def test_normalize_peak(self):
        g = normalize_peak(random_grid(3, GridSpec(3, 3, 3)))
        assert max(np.max(np.abs(g[k])) for k in FIELDS) == pytest.approx(1.0)
        assert not normalize_peak(Grid(GridSpec(2, 2, 2)))["Ex"].any()


class TestTrace:
    def test_rows_and_format(self):
        spec = GridSpec(8, 8, 1, 1 / 8, 0.5)
        rows = list(run(sample(EMConfig(Ey="x", Bz="y"), spec), 10, every=5))
        assert [r.step for r in rows] == [0, 5, 10]
        line = format_row(rows[1])
        assert len(line.split(",")) == len(CSV_HEADER.split(","))
        assert float(line.split(",")[1]) == pytest.approx(5 * spec.dt)

    def test_zero_trace(self):
        rows = list(run(Grid(GridSpec(4, 4, 1)), 3))
        assert all(r.total == 0 and r.leakage == 0 and r.divB_max == 0 for r in rows)
