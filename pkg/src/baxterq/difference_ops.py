"""Macdonald and Ruijsenaars difference operators and the trigonometric
kernel-function identity.

Operators act on black-box evaluators.  An evaluator receives an array whose
last axis holds the ``n`` coordinates and must return an array of the leading
shape, so one call can serve many points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Sequence, Tuple

import numpy as np

from .errors import CoincidingCoordinates, GaugeSingular, SingularDenominator, StripExceeded
from .kernels import ModelParams, log_measure_product

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class AnalyticTestFunction:
    """A function of ``n`` complex variables analytic in a horizontal strip.

    Parameters
    ----------
    evaluator : callable
        Maps an array of shape ``(..., n)`` to an array of shape ``(...)``.
    strip_halfwidth : float
        The evaluator is trusted for ``|Im x_i| < strip_halfwidth``.
    """

    evaluator: Evaluator
    strip_halfwidth: float = np.inf

    def __call__(self, x) -> np.ndarray:
        return np.asarray(self.evaluator(np.asarray(x, dtype=complex)))


def gaussian(center: Sequence[complex], width: float = 1.0, tilt: Sequence[complex] = ()) -> AnalyticTestFunction:
    """Entire Gaussian test function ``exp(-sum (x_i - c_i)^2 / (2 w^2) + sum k_i x_i)``.

    ``tilt`` adds a linear exponent that breaks the permutation symmetry.
    """
    c = np.asarray(center, dtype=complex)
    k = np.asarray(tilt, dtype=complex) if len(tilt) else np.zeros_like(c)

    def ev(x):
        d = x - c
        return np.exp(-np.sum(d * d, axis=-1) / (2 * width * width) + np.sum(k * x, axis=-1))

    return AnalyticTestFunction(ev, np.inf)


def plane_wave(lam: Sequence[complex]) -> AnalyticTestFunction:
    """``exp(2 pi i sum lam_i x_i)``."""
    lam_arr = np.asarray(lam, dtype=complex)
    return AnalyticTestFunction(lambda x: np.exp(2j * np.pi * np.sum(lam_arr * x, axis=-1)), np.inf)


def subsets(n: int, r: int) -> Iterable[Tuple[int, ...]]:
    """All ``r``-element subsets of ``{0, ..., n-1}`` in lexicographic order."""
    return itertools.combinations(range(n), r)


def elementary_symmetric(r: int, vals: Sequence[complex]) -> complex:
    """Elementary symmetric polynomial ``e_r(vals)``.

    Examples
    --------
    >>> elementary_symmetric(2, [2, 3, 4])
    26
    """
    vals = list(vals)
    if r < 0 or r > len(vals):
        raise ValueError("need 0 <= r <= len(vals)")
    e = [1] + [0] * r
    for v in vals:
        for j in range(r, 0, -1):
            e[j] = e[j] + e[j - 1] * v
    return e[r]


def _sh(w):
    return np.sinh(w)


def _check_strip(f: AnalyticTestFunction, pts: np.ndarray) -> None:
    if np.isfinite(f.strip_halfwidth) and np.any(np.abs(pts.imag) >= f.strip_halfwidth):
        raise StripExceeded(f"shifted arguments leave the strip |Im x| < {f.strip_halfwidth}")


def macdonald_coefficient(I: Sequence[int], x: np.ndarray, p: ModelParams) -> np.ndarray:
    """``prod_{i in I, j not in I} sh(pi(x_i - x_j - ig)/w2) / sh(pi(x_i - x_j)/w2)``."""
    n = x.shape[-1]
    w2 = p.omega.omega2
    comp = [j for j in range(n) if j not in I]
    coef = np.ones(x.shape[:-1], dtype=complex)
    for i in I:
        for j in comp:
            d = x[..., i] - x[..., j]
            den = _sh(np.pi * d / w2)
            if np.any(np.abs(den) < 1e-14):
                raise CoincidingCoordinates(f"x_{i + 1} - x_{j + 1} is on the lattice i w2 Z")
            coef = coef * _sh(np.pi * (d - 1j * p.g) / w2) / den
    return coef


def _shifted(x: np.ndarray, I: Sequence[int], a: complex) -> np.ndarray:
    xs = x.copy()
    for i in I:
        xs[..., i] = xs[..., i] + a
    return xs


def macdonald_apply(r: int, f, x, p: ModelParams) -> np.ndarray:
    """Apply ``M_r`` to ``f`` at the point(s) ``x``.

    ``(M_r f)(x) = sum_{|I|=r} prod_{i in I, j not in I}
    sh(pi(x_i - x_j - ig)/w2) / sh(pi(x_i - x_j)/w2) f(x - i w1 1_I)``.

    Parameters
    ----------
    r : int
        Operator index, ``1 <= r <= n``.
    f : AnalyticTestFunction or callable
    x : array_like
        Shape ``(..., n)``.
    p : ModelParams
    """
    if not isinstance(f, AnalyticTestFunction):
        f = AnalyticTestFunction(f)
    x = np.asarray(x, dtype=complex)
    n = x.shape[-1]
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= {n}")
    shift = -1j * p.omega.omega1
    total = np.zeros(x.shape[:-1], dtype=complex)
    for I in subsets(n, r):
        xs = _shifted(x, I, shift)
        _check_strip(f, xs)
        total = total + macdonald_coefficient(I, x, p) * f(xs)
    return total


def _continued_sqrt(values: np.ndarray) -> np.ndarray:
    """Square root continued along axis 0, starting from the principal branch."""
    roots = np.sqrt(values)
    out = roots.copy()
    for s in range(1, values.shape[0]):
        flip = np.abs(roots[s] - out[s - 1]) > np.abs(roots[s] + out[s - 1])
        out[s] = np.where(flip, -roots[s], roots[s])
    return out


_PATH_STEPS = 129


def ruijsenaars_apply(r: int, f, x, p: ModelParams) -> np.ndarray:
    """Apply ``H_r = sqrt(mu) M_r sqrt(mu)^{-1}`` (gauge route) at the point(s) ``x``.

    ``sqrt(mu)`` at ``x`` uses the principal branch; at each shifted point it
    is continued along the straight path ``x - i s w1 1_I``, ``0 <= s <= 1``.

    Raises
    ------
    GaugeSingular
        If ``mu(x) = 0``.
    """
    if not isinstance(f, AnalyticTestFunction):
        f = AnalyticTestFunction(f)
    x = np.asarray(x, dtype=complex)
    n = x.shape[-1]
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= {n}")
    log_mu0 = np.asarray(log_measure_product(x, p))
    if np.any(np.isinf(log_mu0.real)):
        raise GaugeSingular("mu(x) vanishes")
    svals = np.linspace(0.0, 1.0, _PATH_STEPS)
    shift = -1j * p.omega.omega1
    total = np.zeros(x.shape[:-1], dtype=complex)
    for I in subsets(n, r):
        # mu along the path, normalised by mu(x) so the ratio starts at 1
        path = np.stack([_shifted(x, I, s * shift) for s in svals])
        ratio = np.exp(np.asarray(log_measure_product(path, p)) - log_mu0)
        sq = _continued_sqrt(ratio)[-1]
        if np.any(sq == 0):
            raise GaugeSingular("mu vanishes at a shifted point")
        xs = path[-1]
        _check_strip(f, xs)
        total = total + macdonald_coefficient(I, x, p) * f(xs) / sq
    return total


def ruijsenaars_apply_direct(r: int, f, x, p: ModelParams) -> np.ndarray:
    """Apply ``H_r`` from its symmetric definition with half-power sinh factors.

    The left factors ``[sh(pi(d - ig)/w2)/sh(pi d/w2)]^{1/2}`` sit at ``x``;
    the right factors ``[sh(pi(d + ig)/w2)/sh(pi d/w2)]^{1/2}`` act before the
    shift, i.e. at ``x - i w1 1_I``.  Branches: at ``s = 0`` the two factors of
    each pair share the principal root of their product, and the right factor
    is continued along the shift path.
    """
    if not isinstance(f, AnalyticTestFunction):
        f = AnalyticTestFunction(f)
    x = np.asarray(x, dtype=complex)
    n = x.shape[-1]
    w1, w2 = p.omega.omega1, p.omega.omega2
    svals = np.linspace(0.0, 1.0, _PATH_STEPS)
    total = np.zeros(x.shape[:-1], dtype=complex)
    for I in subsets(n, r):
        comp = [j for j in range(n) if j not in I]
        coef = np.ones(x.shape[:-1], dtype=complex)
        for i in I:
            for j in comp:
                d = x[..., i] - x[..., j]
                den0 = _sh(np.pi * d / w2)
                if np.any(np.abs(den0) < 1e-14):
                    raise CoincidingCoordinates(f"x_{i + 1} - x_{j + 1} is on the lattice i w2 Z")
                left = _sh(np.pi * (d - 1j * p.g) / w2) / den0
                ds = d[None, ...] - 1j * w1 * svals.reshape((-1,) + (1,) * d.ndim)
                right = _sh(np.pi * (ds + 1j * p.g) / w2) / _sh(np.pi * ds / w2)
                both = _continued_sqrt(left[None, ...] * right)
                coef = coef * both[-1]
        xs = _shifted(x, I, -1j * w1)
        _check_strip(f, xs)
        total = total + coef * f(xs)
    return total


# ---------------------------------------------------------------------------
# Trigonometric kernel-function identity
# ---------------------------------------------------------------------------


def _sin_ratio(num, den):
    d = np.sin(den)
    if np.any(np.abs(d) < 1e-300):
        raise SingularDenominator("vanishing sine denominator")
    return np.sin(num) / d


def kernel_identity_sides(z: Sequence[complex], y: Sequence[complex], alpha: complex, r: int) -> Tuple[complex, complex]:
    """Both sides of the trigonometric kernel-function identity.

    ``sum_{|I|=r} prod_{i in I} [prod_{j not in I} sin(z_i-z_j-a)/sin(z_i-z_j)
    prod_a sin(z_i-y_a+a)/sin(z_i-y_a)]`` versus the dual sum over subsets of
    the ``y``-indices with ``sin(y_a-y_b+a)/sin(y_a-y_b)``.

    Raises
    ------
    SingularDenominator
        When a sine in a denominator vanishes.
    """
    z = np.asarray(z, dtype=complex)
    y = np.asarray(y, dtype=complex)
    n = len(z)
    if len(y) != n:
        raise ValueError("z and y must have equal length")
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    zy = z[:, None] - y[None, :]
    cross = np.prod(np.sin(zy + alpha), axis=1)
    cross_den = np.prod(np.sin(zy), axis=1)
    if np.any(np.abs(cross_den) < 1e-300):
        raise SingularDenominator("sin(z_i - y_a) vanishes")
    cross_y = np.prod(np.sin(zy + alpha), axis=0) / np.prod(np.sin(zy), axis=0)
    cross_z = cross / cross_den
    lhs = 0j
    rhs = 0j
    for I in subsets(n, r):
        comp = [j for j in range(n) if j not in I]
        term_l = 1 + 0j
        term_r = 1 + 0j
        for i in I:
            for j in comp:
                term_l *= _sin_ratio(z[i] - z[j] - alpha, z[i] - z[j])
                term_r *= _sin_ratio(y[i] - y[j] + alpha, y[i] - y[j])
            term_l *= cross_z[i]
            term_r *= cross_y[i]
        lhs += term_l
        rhs += term_r
    return complex(lhs), complex(rhs)


def hyperbolic_dressing(z: Sequence[complex], y: Sequence[complex], p: ModelParams):
    """Substitution turning the trigonometric identity into its hyperbolic form.

    Returns ``(z', y', alpha)`` with ``z' = (i pi/w2) z``,
    ``y' = (i pi/w2)(y + i g*/2 + i g)`` and ``alpha = (i pi/w2) i g``.
    """
    c = 1j * np.pi / p.omega.omega2
    zt = c * np.asarray(z, dtype=complex)
    yt = c * (np.asarray(y, dtype=complex) + 0.5j * p.gstar + 1j * p.g)
    return zt, yt, c * 1j * p.g


def kernel_identity_residual(z, y, alpha, r) -> float:
    lhs, rhs = kernel_identity_sides(z, y, alpha, r)
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def binomial(n: int, r: int) -> int:
    return comb(n, r)
