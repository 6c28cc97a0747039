"""Kernel function, measure and the Q- and Lambda-operator kernels.

All multi-point functions take coordinate arrays whose *last* axis indexes the
points, so ``y`` of shape ``(N, n)`` evaluates ``N`` tuples at once.  Products
are accumulated as sums of logarithms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .errors import PoleHit
from .special_functions import (
    Periods,
    PrecisionPolicy,
    double_sine,
    hyperbolic_gamma,
    log_double_sine,
)

ArrayLike = Union[complex, np.ndarray]


@dataclass(frozen=True)
class ModelParams:
    """Periods and coupling of the hyperbolic Ruijsenaars model.

    Constraints are not enforced; instead the regime flags record which of the
    standing assumptions hold, and each operation checks what it needs.

    Parameters
    ----------
    omega : Periods
    g : complex
        Coupling constant.

    Attributes
    ----------
    gstar : complex
        Dual coupling ``w1 + w2 - g``.
    nu_g : float
        Decay rate ``Re(g / (w1 w2))``.
    """

    omega: Periods
    g: complex
    gstar: complex = field(init=False)
    nu_g: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "g", complex(self.g))
        object.__setattr__(self, "gstar", self.omega.total - self.g)
        object.__setattr__(self, "nu_g", (self.g / self.omega.product).real)

    @classmethod
    def from_numbers(cls, omega1: complex, omega2: complex, g: complex) -> "ModelParams":
        return cls(Periods(omega1, omega2), g)

    @property
    def basic_regime(self) -> bool:
        """``0 < Re g < Re(w1 + w2)``."""
        return 0 < self.g.real < self.omega.total.real

    @property
    def below_omega2(self) -> bool:
        """``Re g < Re w2`` (needed by the Macdonald commutation theorem)."""
        return self.g.real < self.omega.omega2.real

    @property
    def decaying(self) -> bool:
        """``nu_g > 0``, so the kernel decays and Q-integrals converge."""
        return self.nu_g > 0

    @property
    def real_parameters(self) -> bool:
        return self.omega.omega1.imag == 0 and self.omega.omega2.imag == 0 and self.g.imag == 0

    def flags(self) -> dict:
        return {
            "basic_regime": self.basic_regime,
            "below_omega2": self.below_omega2,
            "decaying": self.decaying,
            "real_parameters": self.real_parameters,
        }


def _unwrap(v: np.ndarray):
    return v[()] if v.ndim == 0 else v


def log_kernel_K(z: ArrayLike, p: ModelParams, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """``log K(z) = -log S2(iz + g*/2) - log S2(-iz + g*/2)``."""
    z = np.asarray(z, dtype=complex)
    half = 0.5 * p.gstar
    a = log_double_sine(1j * z + half, p.omega, pol)
    b = log_double_sine(-1j * z + half, p.omega, pol)
    total = np.asarray(-a - b)
    if np.any(np.isinf(total.real) & (total.real > 0)):
        bad = np.atleast_1d(z)[np.atleast_1d(np.isinf(total.real))][0]
        raise PoleHit(f"kernel K has a pole at z = {bad}", "K")
    return _unwrap(total)


def kernel_K(z: ArrayLike, p: ModelParams, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """Kernel ``K(z) = S2^{-1}(iz + g*/2) S2^{-1}(-iz + g*/2)``.

    Examples
    --------
    >>> p = ModelParams(Periods(1, 1), 1.0)
    >>> abs(kernel_K(0.0, p) - 0.5) < 1e-12
    True
    """
    return np.exp(log_kernel_K(z, p, pol))


def kernel_K_gamma(z: ArrayLike, p: ModelParams, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """Kernel via hyperbolic gamma functions, ``G(z - ig/2) / G(z + ig/2)``."""
    z = np.asarray(z, dtype=complex)
    return hyperbolic_gamma(z - 0.5j * p.g, p.omega, pol) / hyperbolic_gamma(z + 0.5j * p.g, p.omega, pol)


def log_measure_mu(z: ArrayLike, p: ModelParams, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """``log mu(z) = log S2(iz) + log S2(-iz + g*)``; ``-inf`` at zeros."""
    z = np.asarray(z, dtype=complex)
    return log_double_sine(1j * z, p.omega, pol) + log_double_sine(-1j * z + p.gstar, p.omega, pol)


def measure_mu(z: ArrayLike, p: ModelParams, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """Two-point measure ``mu(z) = S2(iz) S2(-iz + g*)``."""
    return np.exp(log_measure_mu(z, p, pol))


def _pair_differences(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[..., :, None] - b[..., None, :]


def log_kernel_product(z, y, p: ModelParams, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """``sum_{i,j} log K(z_i - y_j)``; last axes of ``z`` and ``y`` index points."""
    z = np.asarray(z, dtype=complex)
    y = np.asarray(y, dtype=complex)
    d = _pair_differences(z, y)
    try:
        val = log_kernel_K(d, p, pol)
    except PoleHit as exc:
        raise PoleHit(f"kernel product singular: {exc}", "K(z_i - y_j)") from exc
    return _unwrap(np.sum(np.asarray(val), axis=(-2, -1)))


def kernel_product(z, y, p: ModelParams, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """Product ``K(z, y) = prod_{i,j} K(z_i - y_j)``.

    Examples
    --------
    >>> p = ModelParams(Periods(1, 2 ** 0.5), 0.4)
    >>> v1 = kernel_product([0.2, -0.1], [0.3], p)
    >>> v2 = kernel_K(-0.1, p) * kernel_K(-0.4, p)
    >>> abs(v1 - v2) < 1e-12 * abs(v2)
    True
    """
    return np.exp(log_kernel_product(z, y, p, pol))


def log_measure_product(x, p: ModelParams, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """``sum_{i != j} log mu(x_i - x_j)``."""
    x = np.asarray(x, dtype=complex)
    n = x.shape[-1]
    if n == 1:
        return _unwrap(np.zeros(x.shape[:-1], dtype=complex))
    i, j = np.nonzero(~np.eye(n, dtype=bool))
    d = x[..., i] - x[..., j]
    return _unwrap(np.sum(np.asarray(log_measure_mu(d, p, pol)), axis=-1))


def measure_product(x, p: ModelParams, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """Measure ``mu(x) = prod_{i != j} mu(x_i - x_j)``; equals 1 for one point."""
    return np.exp(log_measure_product(x, p, pol))


def q_kernel(z, y, lam: complex, p: ModelParams, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """Q-operator kernel ``e^{2 pi i lam (sum z - sum y)} K(z, y) mu(y)``."""
    z = np.asarray(z, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if z.shape[-1] != y.shape[-1]:
        raise ValueError("z and y must have the same number of points")
    phase = 2j * np.pi * lam * (z.sum(axis=-1) - y.sum(axis=-1))
    return np.exp(phase + log_kernel_product(z, y, p, pol) + log_measure_product(y, p, pol))


def lambda_kernel(x, y, lam: complex, p: ModelParams, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """Lambda-operator kernel ``e^{2 pi i lam (sum x - sum y)} K(x, y) mu(y)``,
    with ``y`` one point shorter than ``x``."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.shape[-1] < 2 or y.shape[-1] != x.shape[-1] - 1:
        raise ValueError("lambda_kernel needs n >= 2 points in x and n - 1 in y")
    phase = 2j * np.pi * lam * (x.sum(axis=-1) - y.sum(axis=-1))
    return np.exp(phase + log_kernel_product(x, y, p, pol) + log_measure_product(y, p, pol))


def d_const(n: int, p: ModelParams, pol: Optional[PrecisionPolicy] = None) -> complex:
    """Normalization ``(1/(n-1)!) [sqrt(w1 w2) S2(g)]^{1-n}`` of the Lambda operator."""
    if n < 2:
        raise ValueError("n >= 2 required")
    s = complex(double_sine(p.g, p.omega, pol))
    base = cmath.sqrt(p.omega.product) * s
    return base ** (1 - n) / math.factorial(n - 1)


def envelope_constants(p: ModelParams, ys: Sequence[float]) -> dict:
    """Fit ``C`` in ``|K(y)| <= C e^{-pi nu |y|}`` and ``|mu(y)| <= C e^{pi nu |y|}``.

    Returns the fitted constants (maximal ratio over the sample) together with
    the values at ``y = 0`` used as reference.
    """
    ys = np.asarray(ys, dtype=float)
    nu = p.nu_g
    k = np.abs(kernel_K(ys, p)) * np.exp(np.pi * nu * np.abs(ys))
    m = np.abs(measure_mu(ys, p)) * np.exp(-np.pi * nu * np.abs(ys))
    return {"C_K": float(k.max()), "C_mu": float(m.max())}
