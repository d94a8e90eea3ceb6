"""Critical density for k-core emergence in H_r(n, c/n^(r-1)), and the
round-count growth coefficients.

The analytic threshold comes from minimizing f(x) = x / P(Po(x) >= k-1)^(r-1)
over x > 0; the minimum value is the critical expected vertex degree, and
multiplying by (r-1)! maps it into the c of p = c/n^(r-1) (a vertex's expected
degree is C(n-1, r-1) * p ~ c/(r-1)!).  That mapping is cross-validated by an
empirical bisection that classifies sampled-and-peeled instances as sub- or
supercritical.

All logarithms are natural, both here and in the growth-law fits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BracketError, PeelkitError
from .models import ModelParams, mix_seed, sample_binomial_hypergraph
from .peeling import parallel_peel

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class ThresholdResult:
    r: int
    k: int
    x_star: float | None = None
    lambda_star: float | None = None
    c_analytic: float | None = None
    c_empirical: float | None = None
    c_empirical_interval: tuple | None = None
    a: float | None = None
    a_star: float | None = None
    mapping_validated: bool | None = None

    def to_dict(self) -> dict:
        d = {
            "r": self.r,
            "k": self.k,
            "x_star": self.x_star,
            "lambda_star": self.lambda_star,
            "c_analytic": self.c_analytic,
            "c_empirical": self.c_empirical,
            "c_empirical_interval": list(self.c_empirical_interval)
            if self.c_empirical_interval
            else None,
            "a": self.a,
            "a_star": self.a_star,
            "mapping_validated": self.mapping_validated,
        }
        return d


def poisson_tail(x: float, j: int) -> float:
    """P(Poisson(x) >= j) by stable summation of the smaller tail.

    Absolute error below 1e-12 for x <= 50, j <= 50.
    """
    if x < 0:
        raise PeelkitError(f"Poisson rate must be >= 0, got {x}")
    if j <= 0:
        return 1.0
    if x == 0.0:
        return 0.0
    if x >= j:
        # Lower tail P(< j) is the smaller side; subtract it from 1.
        term = math.exp(-x)
        cdf = term
        for i in range(1, j):
            term *= x / i
            cdf += term
        return 1.0 - cdf
    # Upper tail summed directly, starting from the term at j.
    log_term = -x + j * math.log(x) - math.lgamma(j + 1)
    term = math.exp(log_term)
    total = 0.0
    i = j
    while term > 0.0:
        total += term
        i += 1
        term *= x / i
        if term < total * 1e-18:
            total += term
            break
    return total


def threshold_objective(x: float, r: int, k: int) -> float:
    """x / P(Po(x) >= k-1)^(r-1); its minimum over x > 0 is the critical
    expected vertex degree."""
    if x <= 0:
        raise PeelkitError(f"objective defined for x > 0, got {x}")
    tail = poisson_tail(x, k - 1)
    if tail <= 0.0:
        return math.inf
    return x / tail ** (r - 1)


def coefficients(r: int, k: int) -> tuple[float, float]:
    """(a, a_star) with a = 1/ln((r-1)(k-1)) and a_star = 1/ln(k(r-1)/r),
    natural logs; undefined at (r, k) = (2, 2)."""
    if r < 2 or k < 2:
        raise PeelkitError(f"need r, k >= 2, got r={r} k={k}")
    if r == 2 and k == 2:
        raise PeelkitError("(r, k) = (2, 2) is excluded: both denominators are ln 1")
    a = 1.0 / math.log((r - 1) * (k - 1))
    a_star = 1.0 / math.log(k * (r - 1) / r)
    return a, a_star


def _golden_section(f, lo: float, hi: float, tol: float) -> float:
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def compute_threshold_analytic(r: int, k: int, tol: float = 1e-9):
    """Minimize the threshold objective: returns (x_star, lambda_star,
    c_analytic) with c_analytic = (r-1)! * lambda_star.

    Bracket via a 1000-point log-spaced grid on (1e-3, 50], then refine with
    golden-section to interval width `tol`.
    """
    if r < 2 or k < 2 or (r, k) == (2, 2):
        raise PeelkitError(f"threshold undefined for r={r}, k={k}")
    grid = np.logspace(-3, math.log10(50.0), 1000)
    vals = [threshold_objective(float(x), r, k) for x in grid]
    i = int(np.argmin(vals))
    if i == 0 or i == len(grid) - 1:
        raise BracketError(
            f"no interior minimum of the threshold objective for r={r}, k={k} "
            "on (1e-3, 50]"
        )
    x_star = _golden_section(
        lambda x: threshold_objective(x, r, k), float(grid[i - 1]), float(grid[i + 1]), tol
    )
    lambda_star = threshold_objective(x_star, r, k)
    return x_star, lambda_star, math.factorial(r - 1) * lambda_star


def _is_supercritical(
    r: int, k: int, c: float, n: int, trials: int, seed: int, frac: float
) -> bool:
    """Median core size over `trials` sampled instances exceeds frac * n."""
    sizes = []
    for t in range(trials):
        params = ModelParams(r=r, n=n, c=c, seed=mix_seed(seed, t), k=k)
        h = sample_binomial_hypergraph(params)
        trace = parallel_peel(h, k)
        sizes.append(trace.core_vertices.size)
    return float(np.median(sizes)) > frac * n


def compute_threshold_empirical(
    r: int,
    k: int,
    n: int = 10**5,
    trials: int = 9,
    tol: float = 0.02,
    seed: int = 0,
    c_lo: float = 0.25,
    c_hi: float | None = None,
    core_frac: float = 0.01,
):
    """Bisection estimate of the critical c: at each candidate, sample and
    peel `trials` instances and classify supercritical iff the median core
    exceeds core_frac * n.

    Returns (c_mid, (c_lo, c_hi)) with final bracket width <= tol * c_mid.
    Finite-size rounding stays below tol for n >= 1e5 at the (r, k) pairs
    exercised here.
    """
    if c_hi is None:
        c_hi = 8.0 * math.factorial(r - 1) * k
    if _is_supercritical(r, k, c_lo, n, trials, seed, core_frac):
        raise BracketError(f"lower bracket c={c_lo} already supercritical")
    if not _is_supercritical(r, k, c_hi, n, trials, seed, core_frac):
        raise BracketError(f"upper bracket c={c_hi} still subcritical")
    step = 0
    while c_hi - c_lo > tol * 0.5 * (c_lo + c_hi):
        mid = 0.5 * (c_lo + c_hi)
        step += 1
        if _is_supercritical(r, k, mid, n, trials, seed + step, core_frac):
            c_hi = mid
        else:
            c_lo = mid
    return 0.5 * (c_lo + c_hi), (c_lo, c_hi)


def threshold_report(
    r: int,
    k: int,
    method: str = "both",
    tol: float = 1e-9,
    n: int = 10**5,
    trials: int = 9,
    seed: int = 0,
    empirical_tol: float = 0.02,
) -> ThresholdResult:
    """Bundle analytic and/or empirical thresholds plus the growth
    coefficients into one result."""
    res = ThresholdResult(r=r, k=k)
    res.a, res.a_star = coefficients(r, k)
    if method in ("analytic", "both"):
        res.x_star, res.lambda_star, res.c_analytic = compute_threshold_analytic(
            r, k, tol
        )
    if method in ("empirical", "both"):
        res.c_empirical, res.c_empirical_interval = compute_threshold_empirical(
            r, k, n=n, trials=trials, tol=empirical_tol, seed=seed
        )
    if res.c_analytic is not None and res.c_empirical is not None:
        res.mapping_validated = (
            abs(res.c_empirical - res.c_analytic) <= 0.05 * res.c_analytic
        )
    return res
