"""Distribution of the studentized range by numerical integration.

For ``k`` independent standard normals the range ``R`` has

    P(R <= x) = k * integral phi(z) * (Phi(z + x) - Phi(z))**(k - 1) dz

and with ``df`` error degrees of freedom the studentized range ``Q = R / s``
mixes that over ``s = sqrt(chi2_df / df)``:

    P(Q <= q) = integral f_df(s) * P(R <= q * s) ds.

Both integrals use composite Gauss-Legendre rules whose panel count doubles
until two successive estimates agree.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import ndtr

from .errors import ConvergenceFailure

GAUSS_ORDER = 20
OUTER_TOL = 1e-9
INNER_TOL = 1e-11
MAX_PANELS = 4096
# Beyond this many degrees of freedom s is treated as exactly 1.
INFINITE_DF = 1e4
Z_LIMIT = 9.0
QUANTILE_TOL = 1e-8


@lru_cache(maxsize=None)
def _rule(panels: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(GAUSS_ORDER)
    edges = np.linspace(a, b, panels + 1)
    half = (edges[1:] - edges[:-1]) / 2
    mid = (edges[1:] + edges[:-1]) / 2
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _integrate(f, a: float, b: float, tol: float, panels: int = 4):
    """Integrate ``f`` (vectorised over its last axis) over ``[a, b]``."""
    nodes, weights = _rule(panels, a, b)
    prev = f(nodes) @ weights
    while panels < MAX_PANELS:
        panels *= 2
        nodes, weights = _rule(panels, a, b)
        est = f(nodes) @ weights
        if np.max(np.abs(est - prev)) < tol:
            return est
        prev = est
    raise ConvergenceFailure(
        f"quadrature on [{a:g}, {b:g}] did not reach tolerance {tol:g} with {MAX_PANELS} panels")


def _range_cdf(x: np.ndarray, k: int) -> np.ndarray:
    """P(range of k standard normals <= x) for each entry of ``x``."""
    x = np.asarray(x, dtype=float)

    def integrand(z):
        phi = np.exp(-0.5 * z * z) / math.sqrt(2 * math.pi)
        inner = ndtr(z[None, :] + x[:, None]) - ndtr(z)[None, :]
        return k * phi[None, :] * inner ** (k - 1)

    out = _integrate(integrand, -Z_LIMIT, Z_LIMIT, INNER_TOL)
    return np.clip(out, 0.0, 1.0)


def _log_scaled_chi_pdf(s: np.ndarray, df: float) -> np.ndarray:
    half = df / 2
    const = half * math.log(df) - math.lgamma(half) - (half - 1) * math.log(2)
    with np.errstate(divide="ignore"):
        return const + (df - 1) * np.log(s) - half * s * s


def _check(k: int, df: float) -> float:
    if int(k) != k or k < 2:
        raise ValueError(f"k must be an integer >= 2, got {k!r}")
    if df is None:
        return math.inf
    if not df >= 1:
        raise ValueError(f"df must be >= 1, got {df!r}")
    return float(df)


def srange_cdf(q: float, k: int, df: float = math.inf) -> float:
    """P(Q <= q) for the studentized range of ``k`` means with ``df`` d.o.f.

    ``df`` may be ``math.inf`` (or ``None``); values above 10^4 are treated
    as infinite.
    """
    df = _check(k, df)
    k = int(k)
    if q <= 0:
        return 0.0
    if df > INFINITE_DF:
        return float(_range_cdf(np.array([q]), k)[0])

    spread = 13 / math.sqrt(2 * df)
    lo, hi = max(0.0, 1 - spread), 1 + spread

    def integrand(s):
        dens = np.exp(_log_scaled_chi_pdf(s, df))
        return dens * _range_cdf(q * s, k)

    return float(min(1.0, max(0.0, _integrate(integrand, lo, hi, OUTER_TOL))))


def srange_sf(q: float, k: int, df: float = math.inf) -> float:
    return 1.0 - srange_cdf(q, k, df)


def srange_quantile(p: float, k: int, df: float = math.inf) -> float:
    """Inverse of :func:`srange_cdf` by bisection, to within 1e-8 in ``q``."""
    if not 0 < p < 1:
        raise ValueError(f"p must be within (0, 1), got {p!r}")
    _check(k, df)
    lo, hi = 0.0, 8.0
    while srange_cdf(hi, k, df) < p:
        lo, hi = hi, hi * 2
        if hi > 1e6:
            raise ConvergenceFailure(f"could not bracket the {p} quantile")
    while hi - lo > QUANTILE_TOL:
        mid = (lo + hi) / 2
        if srange_cdf(mid, k, df) < p:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2
