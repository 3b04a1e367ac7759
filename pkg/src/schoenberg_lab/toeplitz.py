r"""Analysis of translation-invariant (Toeplitz) Schoenberg sections.

For a unit-spaced configuration on a line the matrix ``f(|i-j|)`` is a
symmetric Toeplitz matrix with symbol

.. math::
    a(f, e^{i\varphi}) = \sum_{k \in Z} f(|k|) e^{ik\varphi},

whose closed range ``[c_-, c_+]`` is the spectrum of the associated
operator.  The symbol admits three independent evaluation routes:

* ``symbol_direct``  -- the truncated cosine series with an integral-test
  tail bound;
* ``symbol_theta``   -- for gaussian mixtures, a mixture of Jacobi theta
  values ``theta_3(phi/2, e^{-s})``;
* ``symbol_poisson`` -- for completely monotone symbols, a mixture of
  Poisson-kernel values ``P(e^{-s}, e^{i phi})``.

The spectrum endpoints are the symbol values at ``phi = pi`` (minimum; the
alternating series) and ``phi = 0`` (maximum, possibly infinite --
an unbounded operator is a first-class result, reported as ``inf``
together with the failing moment criterion).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import specfun
from .errors import DivergenceError, DomainError
from .points import PointSet
from .schoenberg import MatrixSection, assemble, eigenvalues
from .symbols import RadialSymbol, SpectralMeasure, measure_moment, tail_moment


def _tail_integral(fn, start: float) -> float:
    """Dyadic upper-tail integral with the same Cauchy rule as the moments."""
    total = 0.0
    hi = start
    for _ in range(64):
        lo, hi = hi, 2.0 * hi
        inc, _ = quad(fn, lo, hi, limit=200, epsabs=1e-14)
        total += inc
        if abs(inc) <= 1e-12 * max(1.0, abs(total)):
            return total
    return math.inf


def symbol_direct(sym: RadialSymbol, phi: float, K: int = 256) -> tuple[float, float]:
    """Truncated symbol ``f(0) + 2 sum_{k<=K} f(k) cos k phi`` together with
    the integral-test bound ``2 int_K^inf f`` on the discarded tail.

    Raises :class:`DivergenceError` for non-summable symbols.
    """
    if K < 1:
        raise DomainError("symbol_direct requires K >= 1")
    if not sym.monotone_nonneg:
        raise DomainError("symbol_direct needs a monotone nonnegative symbol")
    if math.isinf(tail_moment(sym, 1)):
        raise DivergenceError(f"{sym.name}: f is not summable, the symbol diverges")
    ks = np.arange(1, K + 1, dtype=float)
    value = sym.eval(0.0) + 2.0 * float(np.sum(sym.eval_array(ks) * np.cos(ks * phi)))
    if sym.support is not None and sym.support <= K:
        return value, 0.0
    return value, 2.0 * _tail_integral(sym.eval, float(K))


def symbol_theta(sigma: SpectralMeasure, phi: float) -> float:
    r"""Symbol of a gaussian mixture: ``int theta_3(phi/2, e^{-s}) sigma(ds)``.

    At ``phi = 0`` the value is ``inf`` exactly when the inverse square-root
    moment of the mixing measure diverges (``theta_3(0, e^{-s}) ~ 1/sqrt(s)``).
    """
    phi_mod = math.fmod(phi, 2.0 * math.pi)
    if phi_mod == 0.0 and math.isinf(measure_moment(sigma, -0.5)):
        return math.inf
    z = 0.5 * phi
    total = 0.0
    for s, m in sigma.atoms:
        total += m * specfun.theta3(z, math.exp(-s))
    for s0, s1, v in zip(sigma.grid[:-1], sigma.grid[1:], sigma.values):
        if v == 0.0:
            continue
        val, _ = quad(
            lambda s: specfun.theta3(z, math.exp(-s)), s0, s1, limit=200, epsabs=1e-12
        )
        total += v * val
    return total


def poisson_kernel(r: float, phi: float) -> float:
    """Poisson kernel ``(1 - r^2) / (1 - 2 r cos phi + r^2)`` for the disk."""
    return (1.0 - r * r) / (1.0 - 2.0 * r * math.cos(phi) + r * r)


def symbol_poisson(tau: SpectralMeasure, phi: float) -> float:
    r"""Symbol of a completely monotone symbol: ``int P(e^{-s}, e^{i phi}) tau(ds)``.

    ``inf`` at ``phi = 0`` exactly when ``int tau(ds)/s`` diverges.
    """
    phi_mod = math.fmod(phi, 2.0 * math.pi)
    if phi_mod == 0.0 and math.isinf(measure_moment(tau, -1.0)):
        return math.inf
    total = 0.0
    for s, m in tau.atoms:
        total += m * poisson_kernel(math.exp(-s), phi)
    for s0, s1, v in zip(tau.grid[:-1], tau.grid[1:], tau.values):
        if v == 0.0:
            continue
        val, _ = quad(
            lambda s: poisson_kernel(math.exp(-s), phi), s0, s1, limit=200, epsabs=1e-12
        )
        total += v * val
    return total


def spectrum_interval(sym: RadialSymbol, kind: str) -> tuple[float, float]:
    """Spectrum endpoints ``(c_-, c_+)`` of the Toeplitz operator.

    ``kind="phi_infty"`` uses the theta-mixture route on the gaussian-mixture
    measure; ``kind="cm0"`` evaluates ``c_pm = int (1 pm e^{-s})/(1 mp e^{-s})
    tau(ds)`` over the Laplace measure; ``kind="direct"`` scans the truncated
    cosine series (exact for compactly supported symbols).  A divergent
    ``c_+`` is reported as ``inf``, not an error.
    """
    if kind == "phi_infty":
        sigma = sym.schoenberg_measure()
        return symbol_theta(sigma, math.pi), symbol_theta(sigma, 0.0)
    if kind == "cm0":
        tau = sym.bernstein_measure()
        c_minus = _cm0_endpoint(tau, upper=False)
        c_plus = (
            math.inf
            if math.isinf(measure_moment(tau, -1.0))
            else _cm0_endpoint(tau, upper=True)
        )
        return c_minus, c_plus
    if kind == "direct":
        K = 256 if sym.support is None else int(math.ceil(sym.support)) + 1
        if math.isinf(tail_moment(sym, 1)):
            raise DivergenceError(f"{sym.name}: f is not summable, the symbol diverges")
        ks = np.arange(1, K + 1, dtype=float)
        coeffs = sym.eval_array(ks)
        tail = (
            0.0
            if (sym.support is not None and sym.support <= K)
            else 2.0 * _tail_integral(sym.eval, float(K))
        )
        phis = np.linspace(0.0, math.pi, 2881)
        values = sym.eval(0.0) + 2.0 * np.cos(phis[:, None] * ks[None, :]) @ coeffs
        return float(np.min(values)) - tail, float(np.max(values)) + tail
    raise DomainError(f"unknown spectrum kind {kind!r}")


def _cm0_endpoint(tau: SpectralMeasure, upper: bool) -> float:
    def kernel(s):
        e = math.exp(-s)
        return (1.0 + e) / (1.0 - e) if upper else (1.0 - e) / (1.0 + e)

    total = 0.0
    for s, m in tau.atoms:
        total += m * kernel(s)
    for s0, s1, v in zip(tau.grid[:-1], tau.grid[1:], tau.values):
        if v == 0.0:
            continue
        val, _ = quad(kernel, s0, s1, limit=200, epsabs=1e-12)
        total += v * val
    return total


@dataclass(frozen=True)
class SymbolSweep:
    """Symbol values on a grid of angles, with per-point error bars."""

    phi_grid: tuple[float, ...]
    values: tuple[float, ...]
    error_bars: tuple[float, ...]
    method: str

    def save_csv(self, path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write("phi,value,error_bar\n")
            for p, v, e in zip(self.phi_grid, self.values, self.error_bars):
                fh.write(f"{p:.17g},{v:.17g},{e:.17g}\n")


def sweep_symbol(
    sym: RadialSymbol, phi_grid, method: str = "direct", K: int = 256
) -> SymbolSweep:
    """Evaluate the Toeplitz symbol on a grid of angles by the chosen route."""
    values, errors = [], []
    for phi in phi_grid:
        phi = float(phi)
        if method == "direct":
            v, e = symbol_direct(sym, phi, K)
        elif method == "theta":
            v, e = symbol_theta(sym.schoenberg_measure(), phi), 0.0
        elif method == "poisson":
            v, e = symbol_poisson(sym.bernstein_measure(), phi), 0.0
        else:
            raise DomainError(f"unknown sweep method {method!r}")
        values.append(v)
        errors.append(e)
    return SymbolSweep(tuple(float(p) for p in phi_grid), tuple(values), tuple(errors), method)


@dataclass(frozen=True)
class FiniteSectionReport:
    size: int
    c_minus: float
    c_plus: float
    lambda_min: float
    lambda_max: float
    contained: bool
    coverage: float


def toeplitz_section(sym: RadialSymbol, N: int) -> MatrixSection:
    """The N x N unit-spacing section ``f(|i-j|)``."""
    if N < 1:
        raise DomainError("toeplitz_section requires N >= 1")
    ps = PointSet(np.arange(N, dtype=float)[:, None])
    return assemble(ps, sym)


def finite_section_check(
    sym: RadialSymbol, N: int, kind: str, tol: float = 1e-8
) -> FiniteSectionReport:
    """Eigenvalues of the N x N section against the symbol range.

    Containment uses the exact-mathematics tolerance ``tol``; coverage is the
    fraction of ``[c_-, c_+]`` within ``0.01 (c_+ - c_-)`` of some eigenvalue
    (only meaningful for bounded symbols).
    """
    c_minus, c_plus = spectrum_interval(sym, kind)
    ev = eigenvalues(toeplitz_section(sym, N))
    contained = bool(ev[0] >= c_minus - tol) and (
        math.isinf(c_plus) or bool(ev[-1] <= c_plus + tol)
    )
    if math.isinf(c_plus):
        coverage = math.nan
    else:
        grid = np.linspace(c_minus, c_plus, 2001)
        eps = 1e-2 * (c_plus - c_minus)
        dist = np.min(np.abs(grid[:, None] - ev[None, :]), axis=1)
        coverage = float(np.mean(dist <= eps))
    return FiniteSectionReport(
        size=N,
        c_minus=c_minus,
        c_plus=c_plus,
        lambda_min=float(ev[0]),
        lambda_max=float(ev[-1]),
        contained=contained,
        coverage=coverage,
    )
