"""Special functions and quadrature primitives.

Everything here is pure and reentrant. The interference kernel
``lambda_kernel`` evaluates the Gauss hypergeometric factor

    Lambda(rho, T) = 2F1(1, (alpha-2)/alpha; 2-2/alpha; -rho^alpha T)

that appears in every Laplace transform of the out-of-cluster shot noise.
Three evaluation paths are used depending on x = rho^alpha * T:

* x < 0.9           direct Gauss series (alternating, geometric),
* 0.9 <= x <= 250   Pfaff transformation  2F1(1,b;c;z) =
                    (1-z)^(-1) 2F1(1, c-b; c; z/(z-1)), argument in [0,1),
* x > 250           incomplete-beta continuation (see below), needed because
                    the Pfaff series slows down as x grows and rate-domain
                    evaluations push x beyond 1e8.

The continuation uses the exact identity (a=1, c-b=1):

    2F1(1, b; b+1; -x) = b x^(-b) * B(x/(1+x); b, 1-b)
                       = b x^(-b) * [ pi/sin(pi b) - J(x) ],
    J(x) = integral_0^{1/(1+x)} (1-v)^(b-1) v^(-b) dv,

and J is summed as a binomial series in 1/(1+x), which converges in a
handful of terms for large x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError, NumericError

MAX_SERIES_TERMS = 10_000
SERIES_RTOL = 1e-15
# switch points between the three kernel paths
_DIRECT_CUTOFF = 0.9
_PFAFF_CUTOFF = 250.0


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre abscissae/weights on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int


@dataclass(frozen=True)
class LambdaKernelArgs:
    rho: float
    threshold: float
    alpha: float

    def __post_init__(self):
        if not self.rho > 0.0:
            raise DomainError(f"rho must be positive, got {self.rho}")
        if self.threshold < 0.0:
            raise DomainError(f"threshold must be >= 0, got {self.threshold}")
        if not self.alpha > 2.0:
            raise DomainError(f"alpha must exceed 2, got {self.alpha}")


def gauss_legendre(order: int) -> QuadratureRule:
    if not 2 <= order <= 512:
        raise ConfigurationError(f"quadrature order must be in [2, 512], got {order}")
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return QuadratureRule(nodes=nodes, weights=weights, order=order)


def integrate_1d(f, a: float, b: float, rule: QuadratureRule, panels: int = 1) -> float:
    """Composite Gauss-Legendre integral of f over [a, b]."""
    if a > b:
        raise DomainError(f"integration bounds reversed: [{a}, {b}]")
    if panels < 1:
        raise DomainError("panels must be >= 1")
    x, w = panel_nodes(a, b, rule, panels)
    fx = np.asarray([f(xi) for xi in x], dtype=float)
    bad = ~np.isfinite(fx)
    if bad.any():
        raise NumericError(f"integrand not finite at x={x[bad][0]!r}")
    return float(np.dot(w, fx))


def panel_nodes(a: float, b: float, rule: QuadratureRule, panels: int):
    """Flattened abscissae/weights of the composite rule (vectorized form)."""
    edges = np.linspace(a, b, panels + 1)
    lo = edges[:-1][:, None]
    hi = edges[1:][:, None]
    x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes[None, :]
    w = 0.5 * (hi - lo) * rule.weights[None, :]
    return x.ravel(), w.ravel()


def _erf_series(x: float) -> float:
    # 2/sqrt(pi) * sum (-1)^n x^(2n+1) / (n! (2n+1)), fine for |x| < 2
    term = x
    acc = x
    n = 0
    while abs(term) > 1e-18 * abs(acc) + 1e-300:
        n += 1
        term *= -x * x / n
        acc += term / (2 * n + 1)
        if n > 200:
            break
    return 2.0 / math.sqrt(math.pi) * acc


def _erfc_cf(x: float) -> float:
    # continued fraction erfc(x) = e^{-x^2}/sqrt(pi) / (x + 1/2/(x + 2/2/(x + ...)))
    # evaluated by the modified Lentz algorithm; accurate for x >= 2
    tiny = 1e-300
    f = tiny
    c = f
    d = 0.0
    for k in range(0, 120):
        a_k = 1.0 if k == 0 else k / 2.0
        b_k = x
        d = b_k + a_k * d
        if d == 0.0:
            d = tiny
        c = b_k + a_k / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-17:
            break
    return math.exp(-x * x) / math.sqrt(math.pi) * f


def erf(x: float) -> float:
    """Error function, implemented natively for bit-stable outputs."""
    if x == 0.0:
        return 0.0
    ax = abs(x)
    if ax < 2.0:
        val = _erf_series(ax)
    else:
        val = 1.0 - _erfc_cf(ax)
    return math.copysign(val, x)


def find_root(f, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Bisection/secant hybrid on a bracketing interval."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise DomainError(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")
    for it in range(max_iter):
        # secant candidate on even iterations, forced bisection on odd ones
        # (plain false position can stagnate with one endpoint pinned)
        x = hi - fhi * (hi - lo) / (fhi - flo) if it % 2 == 0 else 0.5 * (lo + hi)
        if not (lo < x < hi):
            x = 0.5 * (lo + hi)
        fx = f(x)
        if abs(fx) <= tol or (hi - lo) <= tol:
            return x
        if flo * fx < 0.0:
            hi, fhi = x, fx
        else:
            lo, flo = x, fx
    return 0.5 * (lo + hi)


def _direct_series(x: np.ndarray, b: float, c: float) -> np.ndarray:
    # 2F1(1,b;c;-x) = sum_n (b)_n/(c)_n (-x)^n for |x| < 1
    term = np.ones_like(x)
    acc = np.ones_like(x)
    for n in range(1, MAX_SERIES_TERMS + 1):
        term = term * (b + n - 1) / (c + n - 1) * (-x)
        acc += term
        if np.all(np.abs(term) <= SERIES_RTOL * np.abs(acc)):
            return acc
    raise NumericError("direct hypergeometric series did not converge",
                       partial=acc, terms=MAX_SERIES_TERMS)


def _pfaff_series(x: np.ndarray, b: float, c: float) -> np.ndarray:
    # 2F1(1,b;c;-x) = (1+x)^{-1} 2F1(1, c-b; c; x/(1+x)); here c-b = 1, so the
    # transformed series is sum_n (1)_n(1)_n/((c)_n n!) w^n = sum_n n!/(c)_n w^n
    w = x / (1.0 + x)
    term = np.ones_like(w)
    acc = np.ones_like(w)
    for n in range(1, MAX_SERIES_TERMS + 1):
        term = term * n / (c + n - 1) * w
        acc += term
        if np.all(term <= SERIES_RTOL * acc):
            return acc / (1.0 + x)
    raise NumericError("Pfaff-transformed hypergeometric series did not converge",
                       partial=acc / (1.0 + x), terms=MAX_SERIES_TERMS)


def _beta_continuation(x: np.ndarray, b: float) -> np.ndarray:
    # 2F1(1,b;b+1;-x) = b x^{-b} [pi/sin(pi b) - J], J as a binomial series in
    # eps = 1/(1+x); converges for eps < 1, fast for large x
    eps = 1.0 / (1.0 + x)
    J = np.zeros_like(x)
    coef = 1.0  # C(b-1, k) * (-1)^k
    for k in range(MAX_SERIES_TERMS):
        inc = coef * eps ** (k + 1 - b) / (k + 1 - b)
        J += inc
        if np.all(np.abs(inc) <= SERIES_RTOL * np.abs(J)) and k > 2:
            break
        coef *= -(b - 1 - k) / (k + 1)
    return b * x ** (-b) * (math.pi / math.sin(math.pi * b) - J)


def interference_kernel(x, alpha: float):
    """Vectorized Lambda evaluated at x = rho^alpha * T (x >= 0)."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if np.any(x < 0.0) or not np.all(np.isfinite(x)):
        raise DomainError("kernel argument must be finite and >= 0")
    b = (alpha - 2.0) / alpha
    c = 2.0 - 2.0 / alpha
    out = np.ones_like(x)
    small = x < _DIRECT_CUTOFF
    large = x > _PFAFF_CUTOFF
    mid = ~small & ~large
    if small.any():
        out[small] = _direct_series(x[small], b, c)
    if mid.any():
        out[mid] = _pfaff_series(x[mid], b, c)
    if large.any():
        out[large] = _beta_continuation(x[large], b)
    return float(out[0]) if scalar else out


def lambda_kernel(args: LambdaKernelArgs) -> float:
    """Lambda(rho, T) = 2F1(1, (alpha-2)/alpha; 2-2/alpha; -rho^alpha T)."""
    x = args.rho ** args.alpha * args.threshold
    return float(interference_kernel(x, args.alpha))


def lambda_kernel_pfaff(args: LambdaKernelArgs) -> float:
    """Pfaff-path evaluation regardless of the argument band (for cross-checks)."""
    x = args.rho ** args.alpha * args.threshold
    b = (args.alpha - 2.0) / args.alpha
    c = 2.0 - 2.0 / args.alpha
    return float(_pfaff_series(np.atleast_1d(np.float64(x)), b, c)[0])


def lambda_kernel_direct(args: LambdaKernelArgs) -> float:
    """Direct-series evaluation (requires rho^alpha * T < 1)."""
    x = args.rho ** args.alpha * args.threshold
    if x >= 1.0:
        raise DomainError("direct series requires rho^alpha * T < 1")
    b = (args.alpha - 2.0) / args.alpha
    c = 2.0 - 2.0 / args.alpha
    return float(_direct_series(np.atleast_1d(np.float64(x)), b, c)[0])
