import math

import numpy as np
import pytest
from scipy.integrate import quad

from schoenberg_lab import symbols as sym
from schoenberg_lab.errors import DivergenceError, DomainError, UnsupportedSymbolError


# -- SpectralMeasure ----------------------------------------------------------


def test_measure_validation():
    with pytest.raises(DomainError):
        sym.SpectralMeasure(atoms=[(0.0, 1.0)])
    with pytest.raises(DomainError):
        sym.SpectralMeasure(atoms=[(1.0, -1.0)])
    with pytest.raises(DomainError):
        sym.SpectralMeasure(grid=[0.0, 1.0], values=[-0.5])
    with pytest.raises(DomainError):
        sym.SpectralMeasure(grid=[1.0, 0.5], values=[1.0])


def test_measure_total_mass_and_json_roundtrip(tmp_path):
    mea = sym.SpectralMeasure(atoms=[(1.0, 0.25)], grid=[0.0, 1.0, 3.0], values=[0.5, 0.125])
    assert mea.total_mass == pytest.approx(0.25 + 0.5 + 0.25)
    path = tmp_path / "measure.json"
    mea.save(path)
    back = sym.SpectralMeasure.load(path)
    assert np.array_equal(back.atoms, mea.atoms)
    assert np.array_equal(back.grid, mea.grid)
    assert np.array_equal(back.values, mea.values)


def test_measure_moment_atom():
    assert sym.measure_moment(sym.SpectralMeasure.delta(1.0), -0.5) == pytest.approx(1.0)


def test_measure_moment_discretized_gamma():
    tau = sym.gamma_density_measure(2.0, s_max=40.0, cells=4000, s_min=1e-4)
    # analytic oracle: int s^{-1} s e^{-s} ds = Gamma(1) = 1 (beta = 2)
    assert sym.measure_moment(tau, -1.0) == pytest.approx(1.0, abs=1e-3)


def test_measure_moment_divergence_flag():
    tau = sym.gamma_density_measure(0.5, s_max=40.0, cells=4000)  # touches 0
    assert sym.measure_moment(tau, -1.0) == math.inf


def test_measure_half_mass_point():
    tau = sym.SpectralMeasure(atoms=[(1.0, 0.5), (2.0, 0.5)])
    assert tau.half_mass_point() == pytest.approx(2.0)
    assert sym.SpectralMeasure.delta(3.0).half_mass_point() == pytest.approx(3.0)


def test_doubling_diagnostic_lebesgue_like():
    mea = sym.SpectralMeasure(grid=np.linspace(0.0, 8.0, 33), values=np.full(32, 1.0))
    # uniform density doubles intervals with factor exactly 2
    assert sym.doubling_diagnostic(mea, [(0.5, 1.0), (1.0, 2.0)]) == pytest.approx(2.0)


# -- symbol evaluation ---------------------------------------------------------


def test_gaussian_closed_form():
    g = sym.builtin("gaussian", a=1.0)
    assert g.eval(2.0) == pytest.approx(math.exp(-4.0), rel=1e-14)


def test_alpha_mixture_single_atom_matches_gaussian():
    f = sym.AlphaMixture(2.0, sym.SpectralMeasure.delta(1.0))
    for r in (0.0, 0.5, 1.7):
        assert f.eval(r) == pytest.approx(math.exp(-r * r), rel=1e-14)


def test_bernstein_mixture_gamma_density_matches_inverse_power():
    tau = sym.gamma_density_measure(1.0, s_max=45.0, cells=4500)
    f = sym.bernstein_mixture(tau)
    assert f.eval(1.0) == pytest.approx(0.5, abs=1e-6)
    for r in (0.3, 2.0, 7.0):
        assert f.eval(r) == pytest.approx(1.0 / (1.0 + r), abs=1e-5)


def test_mixture_normalization_at_zero():
    tau = sym.SpectralMeasure(atoms=[(0.5, 0.5), (4.0, 0.5)])
    for alpha in (0.5, 1.0, 2.0):
        f = sym.AlphaMixture(alpha, tau)
        assert f.eval(0.0) == pytest.approx(1.0, abs=1e-12)


def test_mixture_with_density_cells_small_r_stability():
    mea = sym.SpectralMeasure(grid=[0.0, 2.0], values=[0.5])
    f = sym.AlphaMixture(1.0, mea)
    # int_0^2 e^{-s r} 0.5 ds = 0.5 (1 - e^{-2r}) / r, evaluated cancellation-free
    for r in (1e-12, 1e-6, 0.1, 3.0):
        expect = 0.5 * (-math.expm1(-2.0 * r)) / r if r > 0 else 1.0
        assert f.eval(r) == pytest.approx(expect, rel=1e-12)


def test_omega_mixture_atom():
    f = sym.OmegaMixture(3, sym.SpectralMeasure.delta(2.0))
    r = 1.3
    assert f.eval(r) == pytest.approx(math.sin(2.0 * r) / (2.0 * r), rel=1e-10)


def test_builtin_catalog_and_lookup_error():
    catalog = sym.builtin_symbols()
    assert {"gaussian", "exponential", "matern", "inverse_power"} <= set(catalog)
    with pytest.raises(DomainError):
        sym.builtin("does-not-exist")


def test_builtin_matern_half_is_exponential():
    m = sym.builtin("matern", p=0.5)
    for r in (0.2, 1.0, 3.0):
        assert m.eval(r) == pytest.approx(math.exp(-r), rel=1e-12)


def test_builtin_truncated_symbols():
    t = sym.builtin("truncated_linear")
    assert t.eval(2.5) == 0.0
    assert t.eval(1.0) == pytest.approx(0.5)
    p = sym.builtin("truncated_power", l=2.0)
    assert p.eval(0.5) == pytest.approx(0.25)
    assert p.pd_dimension == 3.0  # positive definite iff l >= (n+1)/2


def test_builtin_omega_scaled():
    w = sym.builtin("omega_scaled", n=3, rho=1.0)
    r = 2.1
    assert w.eval(r) == pytest.approx(math.sin(r) / r, rel=1e-10)


def test_builtin_class_metadata():
    assert sym.builtin("gaussian").alpha == 2.0
    assert sym.builtin("exponential").alpha == 1.0
    assert sym.builtin("matern", p=0.25).alpha == 1.0
    assert sym.builtin("matern", p=2.0).alpha == 2.0
    assert sym.builtin("truncated_linear").pd_dimension == 1.0


# -- tail moments ---------------------------------------------------------------


def test_tail_moment_exponential():
    assert sym.tail_moment(sym.builtin("exponential"), 1) == pytest.approx(1.0, rel=1e-9)


def test_tail_moment_gaussian():
    # oracle: half gaussian integral sqrt(pi)/2, cross-checked by quadrature
    oracle, _ = quad(lambda t: math.exp(-t * t), 0.0, 10.0)
    assert oracle == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-12)
    assert sym.tail_moment(sym.builtin("gaussian"), 1) == pytest.approx(oracle, rel=1e-9)


def test_tail_moment_divergent_harmonic_tail():
    assert sym.tail_moment(sym.builtin("inverse_power", beta=1.0), 1) == math.inf


def test_tail_moment_oscillatory_diagnostic():
    with pytest.raises(DivergenceError):
        sym.tail_moment(sym.builtin("omega_scaled", n=3, rho=1.0), 1)


def test_tail_moment_compact_support():
    assert sym.tail_moment(sym.builtin("truncated_power", l=1.0), 1) == pytest.approx(
        0.5, rel=1e-10
    )


def test_squared_tail_moment():
    # int_0^inf e^{-2t} dt = 1/2
    assert sym.squared_tail_moment(sym.builtin("exponential"), 1) == pytest.approx(
        0.5, rel=1e-9
    )


# -- moment identity -------------------------------------------------------------


def test_moment_identity_gaussian_atom():
    report = sym.moment_identity_check(2.0, 1, sym.SpectralMeasure.delta(1.0))
    assert report.lhs == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-8)
    assert report.rhs == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-12)
    assert report.rel_error < 1e-6


def test_moment_identity_exponential_atom():
    # alpha = 1, d = 2, atom at 2: both sides int t e^{-2t} dt = 1/4
    report = sym.moment_identity_check(1.0, 2, sym.SpectralMeasure.delta(2.0))
    assert report.lhs == pytest.approx(0.25, rel=1e-8)
    assert report.rhs == pytest.approx(0.25, rel=1e-12)
    assert report.rel_error < 1e-6


def test_moment_identity_two_atoms():
    mea = sym.SpectralMeasure(atoms=[(1.0, 0.5), (3.0, 0.5)])
    report = sym.moment_identity_check(1.0, 1, mea)
    assert report.rhs == pytest.approx((1.0 + 1.0 / 3.0) / 2.0, rel=1e-12)
    assert report.rel_error < 1e-6


def test_moment_identity_divergence_agreement():
    mea = sym.SpectralMeasure(grid=[0.0, 1.0], values=[1.0])
    report = sym.moment_identity_check(1.0, 1, mea)  # exponent -1 at a 0-cell
    assert math.isinf(report.lhs) and math.isinf(report.rhs)
    assert report.rel_error == 0.0


# -- class diagnostics ------------------------------------------------------------


GRID = np.linspace(0.05, 8.0, 60)


def test_class_diagnostics_exponential_clean():
    report = sym.class_diagnostics(sym.builtin("exponential"), GRID, 4)
    assert report.consistent_with_cm
    assert report.nonneg_ok and report.monotone_ok


def test_class_diagnostics_matern_small_p_clean():
    for p in (0.25, 0.5):
        report = sym.class_diagnostics(sym.builtin("matern", p=p), GRID, 4)
        assert report.consistent_with_cm


def test_class_diagnostics_matern_large_p_violation_near_zero():
    for p in (1.0, 2.0):
        report = sym.class_diagnostics(sym.builtin("matern", p=p), GRID, 2)
        assert report.violation is not None
        assert report.violation.order == 2
        assert report.violation.t < 1.5


def test_class_diagnostics_alpha_mixture_nesting():
    # alpha < 1 mixtures are completely monotone; no violation may be found
    mea = sym.SpectralMeasure(atoms=[(1.0, 0.7), (2.5, 0.3)])
    for alpha in (0.4, 0.7, 1.0):
        f = sym.AlphaMixture(alpha, mea)
        report = sym.class_diagnostics(f, np.linspace(0.1, 6.0, 40), 4)
        assert report.consistent_with_cm


def test_alpha_mixture_decreasing_and_log_convex():
    mea = sym.SpectralMeasure(atoms=[(0.5, 0.5), (2.0, 0.5)])
    f = sym.AlphaMixture(0.8, mea)
    r = np.linspace(0.05, 10.0, 300)
    vals = f.eval_array(r)
    assert np.all(np.diff(vals) < 0.0)
    logs = np.log(vals)
    assert np.all(np.diff(logs, 2) > -1e-10)


# -- domination constant -----------------------------------------------------------


def test_domination_exponential():
    f = sym.builtin("exponential", a=1.0)
    rng = np.random.default_rng(0)
    xi = np.zeros(2)
    eta = np.array([3.0, 0.0])
    sample = rng.uniform(-20.0, 20.0, size=(1000, 2))
    bound, ratio = sym.domination_constant_check(f, xi, eta, sample)
    assert bound == pytest.approx(2.0 * math.exp(3.0))
    assert ratio <= math.exp(3.0) + 1e-9
    assert ratio <= bound


def test_domination_two_atom_mixture():
    tau = sym.SpectralMeasure(atoms=[(1.0, 0.5), (2.0, 0.5)])
    f = sym.bernstein_mixture(tau)
    rng = np.random.default_rng(1)
    xi = np.zeros(3)
    eta = np.array([3.0, 0.0, 0.0])
    sample = rng.uniform(-20.0, 20.0, size=(1000, 3))
    bound, ratio = sym.domination_constant_check(f, xi, eta, sample)
    assert bound == pytest.approx(2.0 * math.exp(2.0 * 3.0))
    assert ratio <= bound


def test_domination_identical_centers():
    f = sym.builtin("exponential")
    bound, ratio = sym.domination_constant_check(
        f, [0.0], [0.0], np.linspace(-5, 5, 101)[:, None]
    )
    assert ratio == pytest.approx(1.0)
    assert bound == pytest.approx(2.0)


def test_domination_needs_accessible_measure():
    with pytest.raises(UnsupportedSymbolError):
        sym.domination_constant_check(
            sym.builtin("gaussian"), [0.0], [1.0], [[0.5]]
        )


# -- nu density --------------------------------------------------------------------


def test_nu_density_atom_closed_form():
    f = sym.AlphaMixture(2.0, sym.SpectralMeasure.delta(1.0))
    n, s, u = 3, 1.0, 2.0
    q = 0.5 * n - 1.0
    expect = (
        u ** (n - 1)
        * (2.0 * s) ** (-0.5 * n)
        * math.exp(-u * u / (4.0 * s))
        / (2.0**q * math.gamma(q + 1.0))
    )
    assert sym.nu_density(f, n, u) == pytest.approx(expect, rel=1e-12)


def test_nu_density_vanishes_at_origin():
    f = sym.AlphaMixture(2.0, sym.SpectralMeasure.delta(1.0))
    assert sym.nu_density(f, 3, 0.0) == 0.0


def test_nu_density_reconstructs_symbol():
    # int Omega_n(r u) phi(u) du = f(r) at r = 1, n = 3, atom at 1
    from schoenberg_lab import specfun

    f = sym.AlphaMixture(2.0, sym.SpectralMeasure.delta(1.0))
    val, _ = quad(
        lambda u: specfun.omega_n(3, 1.0 * u) * sym.nu_density(f, 3, u),
        0.0,
        30.0,
        limit=300,
    )
    assert val == pytest.approx(f.eval(1.0), abs=1e-6)


def test_nu_density_strictly_positive():
    f = sym.AlphaMixture(2.0, sym.SpectralMeasure(atoms=[(0.5, 0.3), (2.0, 0.7)]))
    for u in np.linspace(0.1, 10.0, 25):
        assert sym.nu_density(f, 2, float(u)) > 0.0
