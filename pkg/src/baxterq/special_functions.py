"""Double sine function and relatives.

The double sine ``S2(z|w1, w2)`` is evaluated by three cross-validated routes:

* the logarithmic integral representation inside the strip
  ``0 < Re z < Re(w1 + w2)`` (:func:`double_sine_strip`),
* the functional equations, which move any argument into that strip
  (:func:`double_sine`),
* the infinite product in the nomes ``q = exp(pi i w1/w2)`` and
  ``q~ = exp(-pi i w2/w1)`` for non-real period ratio
  (:func:`double_sine_product`).

All numerical routines accept scalars or numpy arrays and are vectorized over
the argument.  Work happens in log space, because ``|S2|`` grows like
``exp(c |z|^2)`` away from the real axis.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

import mpmath
import numpy as np

from .errors import (
    DegenerateLattice,
    InsideCone,
    NonconvergentProduct,
    OutOfStrip,
    PoleHit,
    QuadratureFailure,
    RealPeriodRatio,
    ShiftDepthExceeded,
)

ArrayLike = Union[complex, float, np.ndarray]


@dataclass(frozen=True)
class Periods:
    """A pair of quasi-periods with positive real parts.

    Parameters
    ----------
    omega1, omega2 : complex
        The periods.  Both must satisfy ``Re > 0``.
    """

    omega1: complex
    omega2: complex

    def __post_init__(self):
        w1, w2 = complex(self.omega1), complex(self.omega2)
        object.__setattr__(self, "omega1", w1)
        object.__setattr__(self, "omega2", w2)
        if not (w1.real > 0 and w2.real > 0):
            raise ValueError(f"periods need positive real parts, got {w1}, {w2}")

    @property
    def total(self) -> complex:
        """The sum ``w1 + w2``."""
        return self.omega1 + self.omega2

    @property
    def product(self) -> complex:
        return self.omega1 * self.omega2

    def swapped(self) -> "Periods":
        return Periods(self.omega2, self.omega1)

    def scaled(self, gamma: complex) -> "Periods":
        return Periods(gamma * self.omega1, gamma * self.omega2)

    def canonical(self) -> Tuple[complex, complex]:
        """Periods sorted by (real, imag) so that swapping is invisible to algorithms."""
        a, b = self.omega1, self.omega2
        return (a, b) if (a.real, a.imag) <= (b.real, b.imag) else (b, a)

    def ratio_is_real(self, tol: float = 1e-12) -> bool:
        r = self.omega1 / self.omega2
        return abs(r.imag) <= tol * abs(r)


@dataclass(frozen=True)
class LatticePoint:
    """Lattice label ``(m, k)`` of the point ``m*w1 + k*w2``."""

    m: int
    k: int

    def position(self, omega: Periods) -> complex:
        return self.m * omega.omega1 + self.k * omega.omega2


@dataclass(frozen=True)
class PrecisionPolicy:
    """Numerical knobs shared by the double sine evaluators.

    Parameters
    ----------
    digits : int
        Working precision in decimal digits.  15 means IEEE double; anything
        larger switches the strip integral to mpmath.
    tolerance : float
        Target accuracy of quadratures and product truncations.
    max_shift_depth : int
        Maximal number of functional-equation steps used to reach the strip.
    pole_tolerance : float
        Relative distance (in units of ``|w1 + w2|``) below which a point is
        treated as lying on the pole or zero lattice.
    """

    digits: int = 15
    tolerance: float = 1e-14
    max_shift_depth: int = 64
    pole_tolerance: float = 1e-8

    def __post_init__(self):
        if self.digits < 15:
            raise ValueError("working precision must be at least 15 digits")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_shift_depth < 1:
            raise ValueError("max_shift_depth must be positive")

    @property
    def extended(self) -> bool:
        return self.digits > 15


DEFAULT_POLICY = PrecisionPolicy()


def _policy(pol: Optional[PrecisionPolicy]) -> PrecisionPolicy:
    return DEFAULT_POLICY if pol is None else pol


# ---------------------------------------------------------------------------
# Elementary pieces
# ---------------------------------------------------------------------------


def bernoulli_b22(z: ArrayLike, omega: Periods) -> ArrayLike:
    """Multiple Bernoulli polynomial ``B_{2,2}(z|w)``.

    Examples
    --------
    >>> bernoulli_b22(0, Periods(1, 1))
    (0.8333333333333334+0j)
    """
    w1, w2 = omega.omega1, omega.omega2
    p = w1 * w2
    return z * z / p - (w1 + w2) * z / p + (w1 * w1 + 3 * p + w2 * w2) / (6 * p)


def log_two_sin(w: ArrayLike) -> ArrayLike:
    """``log(2 sin w)`` computed without overflow for large ``|Im w|``.

    The branch is not the principal one; only ``exp`` of the result is
    meaningful.
    """
    w = np.asarray(w, dtype=complex)
    out = np.empty_like(w)
    up = w.imag > 1.0
    down = w.imag < -1.0
    mid = ~(up | down)
    # 2 sin w = i e^{-iw} (1 - e^{2iw})   (upper half plane)
    wu = w[up]
    out[up] = 0.5j * np.pi - 1j * wu + np.log1p(-np.exp(2j * wu))
    # 2 sin w = -i e^{iw} (1 - e^{-2iw}) (lower half plane)
    wd = w[down]
    out[down] = -0.5j * np.pi + 1j * wd + np.log1p(-np.exp(-2j * wd))
    out[mid] = np.log(2.0 * np.sin(w[mid]))
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Lattice bookkeeping
# ---------------------------------------------------------------------------


def _nearest_lattice(z: complex, w1: complex, w2: complex, tol: float):
    """Return integer labels ``(m, k)`` with ``|z - m w1 - k w2| < tol`` or None."""
    det = w1.real * w2.imag - w1.imag * w2.real
    if abs(det) > 1e-12 * abs(w1) * abs(w2):
        a = (z.real * w2.imag - z.imag * w2.real) / det
        b = (w1.real * z.imag - w1.imag * z.real) / det
        m, k = round(a), round(b)
        if abs(z - m * w1 - k * w2) < tol:
            return m, k
        return None
    # real period ratio: w2 = rho * w1 with rho > 0
    x = z / w1
    if abs(x.imag) * abs(w1) >= tol:
        return None
    rho = (w2 / w1).real
    xr = x.real
    unit = tol / abs(w1)
    best = None
    # scan k so that m = xr - k rho is near an integer
    kmax = int(abs(xr) / rho) + 2
    for k in range(-kmax, kmax + 1):
        mr = xr - k * rho
        m = round(mr)
        if abs(mr - m) < unit:
            cand = (m, k)
            if best is None:
                best = cand
            # prefer labels inside the pole or zero cones
            if (m >= 1 and k >= 1) or (m <= 0 and k <= 0):
                return cand
    return best


def classify_point(z: complex, omega: Periods, pol: Optional[PrecisionPolicy] = None):
    """Classify ``z`` with respect to the pole and zero lattices.

    Returns
    -------
    tuple
        ``("pole", LatticePoint)``, ``("zero", LatticePoint)`` or
        ``("regular", None)``.  Zero labels are reported as the negated
        ``(m, k) >= 0`` of ``-m w1 - k w2``.
    """
    pol = _policy(pol)
    tol = pol.pole_tolerance * abs(omega.total)
    w1, w2 = omega.omega1, omega.omega2
    z = complex(z)
    hit = _nearest_lattice(z, w1, w2, tol)
    if hit is None:
        return "regular", None
    m, k = hit
    if m >= 1 and k >= 1:
        return "pole", LatticePoint(m, k)
    if m <= 0 and k <= 0:
        return "zero", LatticePoint(-m, -k)
    return "regular", None


def _scan_lattice(z: np.ndarray, omega: Periods, pol: PrecisionPolicy) -> np.ndarray:
    """Boolean mask of zero-lattice points; raises PoleHit on pole-lattice points."""
    tol = pol.pole_tolerance * abs(omega.total)
    w1, w2 = omega.omega1, omega.omega2
    flat = z.ravel()
    det = w1.real * w2.imag - w1.imag * w2.real
    if abs(det) > 1e-12 * abs(w1) * abs(w2):
        a = (flat.real * w2.imag - flat.imag * w2.real) / det
        b = (w1.real * flat.imag - w1.imag * flat.real) / det
        cand = np.abs(flat - np.round(a) * w1 - np.round(b) * w2) < tol
    else:
        cand = np.abs((flat / w1).imag) * abs(w1) < tol
    zero = np.zeros(flat.shape, dtype=bool)
    for idx in np.flatnonzero(cand):
        kind, lp = classify_point(complex(flat[idx]), omega, pol)
        if kind == "pole":
            raise PoleHit(f"S2 pole at z = {flat[idx]} (m={lp.m}, k={lp.k})", lp)
        if kind == "zero":
            zero[idx] = True
    return zero.reshape(z.shape)


# ---------------------------------------------------------------------------
# Strip evaluation: series near t = 0 plus rotated-ray double-exponential tail
# ---------------------------------------------------------------------------

_NSERIES = 16


def _reciprocal_sinhc_coeffs(n: int) -> np.ndarray:
    """Taylor coefficients ``r_k`` of ``x / sinh x = sum r_k x^{2k}``."""
    r = np.zeros(n)
    r[0] = 1.0
    for k in range(1, n):
        r[k] = -sum(r[k - j] / math.factorial(2 * j + 1) for j in range(1, k + 1))
    return r


_R = _reciprocal_sinhc_coeffs(_NSERIES)
_P = np.array([1.0 / math.factorial(2 * j + 1) for j in range(_NSERIES)])


def _series_part(A: np.ndarray, w1: complex, w2: complex, t0: np.ndarray) -> np.ndarray:
    """Exact termwise integral of the small-t expansion over ``[0, t0]``."""
    # coefficient sequences in the variable t^2
    pa = _P[:, None] * (A[None, :] ** 2) ** np.arange(_NSERIES)[:, None]
    r1 = _R * (w1 * w1) ** np.arange(_NSERIES)
    r2 = _R * (w2 * w2) ** np.arange(_NSERIES)
    rr = np.convolve(r1, r2)[:_NSERIES]
    total = np.zeros(A.shape, dtype=complex)
    for k in range(1, _NSERIES):
        ck = np.zeros(A.shape, dtype=complex)
        for j in range(k + 1):
            ck += pa[j] * rr[k - j]
        total += ck * t0 ** (2 * k - 1) / (2 * k - 1)
    return A / (2 * w1 * w2) * total


_DE_TAU_MIN = -4.2
_DE_TARGET = 40.0
_THETA_GRID = np.linspace(-1.0, 1.0, 41)


def _ray_angles(c: np.ndarray, w1: complex, w2: complex) -> Tuple[np.ndarray, np.ndarray]:
    """Pick a ray direction per element and return (theta, margin).

    The ray ``t0 + s e^{i theta}`` must stay between the pole lines of
    ``1/(1 - exp(-2 w t))`` and should turn ``c e^{i theta}`` towards the
    negative real axis.  The margin is the smaller of the two angular gaps.
    """
    args = np.array([cmath.phase(w1), cmath.phase(w2)])
    lo = -np.pi / 2 - args.min()
    hi = np.pi / 2 - args.max()
    thetas = lo + (hi - lo) * (0.5 + 0.5 * _THETA_GRID * 0.999)
    gap = np.minimum(thetas - lo, hi - thetas)
    dev = np.abs(np.angle(-c[:, None] * np.exp(1j * thetas[None, :])))
    decay_margin = np.pi / 2 - dev
    margin = np.minimum(gap[None, :], decay_margin)
    best = np.argmax(margin, axis=1)
    return thetas[best], margin[np.arange(c.size), best]


def _tail_part(c: np.ndarray, t0: np.ndarray, w1: complex, w2: complex, step_scale: float) -> np.ndarray:
    """``int_{t0}^inf exp(c t) / (t (1-e^{-2 w1 t})(1-e^{-2 w2 t})) dt`` per element."""
    theta, margin = _ray_angles(c, w1, w2)
    if np.any(margin <= 0):
        raise QuadratureFailure("integrand of the strip representation does not decay")
    rot = np.exp(1j * theta)
    rate = -(c * rot).real  # decay rate along the ray, > 0
    scale = t0
    s_max = (_DE_TARGET + 5.0) / rate
    tau_max = np.arcsinh((2 / np.pi) * np.log(np.maximum(s_max / scale, 2.0)))
    # angular head-room translated to the tau-plane gives the step size
    eta = margin / ((np.pi / 2) * np.cosh(tau_max))
    h = np.minimum(0.1, 2 * np.pi * eta / _DE_TARGET) * step_scale
    # bucket step sizes to powers of two so that elements can share grids
    level = np.ceil(np.log2(0.1 / h)).astype(int)
    out = np.zeros(c.shape, dtype=complex)
    for lev in np.unique(level):
        sel = np.flatnonzero(level == lev)
        hh = 0.1 / 2.0 ** lev
        tmax = tau_max[sel].max()
        tau = np.arange(_DE_TAU_MIN, tmax + hh, hh)
        e = (np.pi / 2) * np.sinh(tau)
        s = scale[sel, None] * np.exp(e)[None, :]
        ds = s * ((np.pi / 2) * np.cosh(tau))[None, :]
        t = t0[sel, None] + rot[sel, None] * s
        cc = c[sel, None]
        den = t * (-np.expm1(-2 * w1 * t)) * (-np.expm1(-2 * w2 * t))
        f = np.exp(cc * t) / den
        out[sel] = hh * np.sum(f * ds, axis=1) * rot[sel]
    return out


def _log_s2_strip_double(z: np.ndarray, w1: complex, w2: complex, step_scale: float = 1.0) -> np.ndarray:
    omega_sum = w1 + w2
    A = 2 * z - omega_sum
    t0 = 0.5 / np.maximum(np.maximum(abs(w1), abs(w2)), np.abs(A))
    series = _series_part(A, w1, w2, t0)
    jp = _tail_part(A - omega_sum, t0, w1, w2, step_scale)
    jm = _tail_part(-A - omega_sum, t0, w1, w2, step_scale)
    return series + jp - jm - A / (2 * w1 * w2 * t0)


def _log_s2_strip_mp(z: complex, w1: complex, w2: complex, dps: int) -> complex:
    """Extended-precision strip evaluation with mpmath (scalar)."""
    with mpmath.workdps(dps + 5):
        z, w1m, w2m = mpmath.mpc(z), mpmath.mpc(w1), mpmath.mpc(w2)
        omega_sum = w1m + w2m
        A = 2 * z - omega_sum
        t0 = mpmath.mpf("0.5") / max(abs(w1m), abs(w2m), abs(A))
        # series part with enough terms for the requested precision
        nterms = 12 + dps
        r = [mpmath.mpf(1)]
        for k in range(1, nterms):
            r.append(-mpmath.fsum(r[k - j] / mpmath.factorial(2 * j + 1) for j in range(1, k + 1)))
        pa = [A ** (2 * j) / mpmath.factorial(2 * j + 1) for j in range(nterms)]
        r1 = [r[j] * w1m ** (2 * j) for j in range(nterms)]
        r2 = [r[j] * w2m ** (2 * j) for j in range(nterms)]
        rr = [mpmath.fsum(r1[i] * r2[k - i] for i in range(k + 1)) for k in range(nterms)]
        total = mpmath.mpc(0)
        for k in range(1, nterms):
            ck = mpmath.fsum(pa[j] * rr[k - j] for j in range(k + 1))
            total += ck * t0 ** (2 * k - 1) / (2 * k - 1)
        series = A / (2 * w1m * w2m) * total

        def tail(c):
            theta, _ = _ray_angles(np.array([complex(c)]), w1, w2)
            rot = mpmath.expj(float(theta[0]))

            def f(s):
                t = t0 + rot * s
                return mpmath.exp(c * t) / (t * (-mpmath.expm1(-2 * w1m * t)) * (-mpmath.expm1(-2 * w2m * t))) * rot

            return mpmath.quad(f, [0, 1 / abs(c), 10 / abs(c), mpmath.inf])

        val = series + tail(A - omega_sum) - tail(-A - omega_sum) - A / (2 * w1m * w2m * t0)
        return complex(val)


def log_double_sine_strip(z: ArrayLike, omega: Periods, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """Logarithm of the double sine from the integral representation.

    Parameters
    ----------
    z : complex or ndarray
        Arguments with ``0 < Re z < Re(w1 + w2)``.
    omega : Periods
    pol : PrecisionPolicy, optional

    Raises
    ------
    OutOfStrip
        If some argument is outside the validity strip.
    """
    pol = _policy(pol)
    za = np.asarray(z, dtype=complex)
    w1, w2 = omega.canonical()
    re_sum = (w1 + w2).real
    if np.any(za.real <= 0) or np.any(za.real >= re_sum):
        raise OutOfStrip(f"need 0 < Re z < {re_sum}")
    flat = za.ravel()
    if pol.extended:
        out = np.array([_log_s2_strip_mp(complex(v), w1, w2, pol.digits) for v in flat])
    else:
        out = _log_s2_strip_double(flat, w1, w2)
    out = out.reshape(za.shape)
    return out[()] if out.ndim == 0 else out


def double_sine_strip(z: ArrayLike, omega: Periods, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """Double sine inside the strip ``0 < Re z < Re(w1 + w2)``.

    Examples
    --------
    >>> abs(double_sine_strip(0.5, Periods(1, 1)) - 2 ** 0.5) < 1e-12
    True
    """
    return np.exp(log_double_sine_strip(z, omega, pol))


def strip_self_check(z: ArrayLike, omega: Periods) -> float:
    """Difference between the default and a halved-step strip quadrature.

    Used as the quadrature error estimate; raises QuadratureFailure when it
    is not small.
    """
    za = np.atleast_1d(np.asarray(z, dtype=complex))
    w1, w2 = omega.canonical()
    a = _log_s2_strip_double(za, w1, w2, 1.0)
    b = _log_s2_strip_double(za, w1, w2, 0.5)
    err = float(np.max(np.abs(a - b)))
    if not np.isfinite(err):
        raise QuadratureFailure("non-finite strip quadrature")
    return err


# ---------------------------------------------------------------------------
# Global evaluation by shift reduction
# ---------------------------------------------------------------------------


_CHUNK = 8192  # points per vectorized strip evaluation, bounds memory use


def log_double_sine(z: ArrayLike, omega: Periods, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """Logarithm of ``S2(z|w)`` on the whole plane (modulo ``2 pi i``).

    Zeros give ``-inf``.  Arguments outside the strip are moved towards its
    centre with integer steps of the period of smaller real part, each step
    contributing ``log(2 sin(pi z / w_other))``.

    Raises
    ------
    PoleHit
        At a pole (within ``pol.pole_tolerance``).
    ShiftDepthExceeded
        When more than ``pol.max_shift_depth`` steps are required.
    """
    pol = _policy(pol)
    za = np.asarray(z, dtype=complex)
    w1, w2 = omega.canonical()
    zero = _scan_lattice(za, omega, pol)
    flat = za.ravel().copy()
    zflat = zero.ravel()
    flat[zflat] = 0.5 * (w1 + w2)  # placeholder, overwritten below
    centre = 0.5 * (w1 + w2).real
    nshift = np.round((flat.real - centre) / w1.real).astype(int)
    if np.any(np.abs(nshift) > pol.max_shift_depth):
        raise ShiftDepthExceeded(
            f"{int(np.abs(nshift).max())} shifts needed, cap is {pol.max_shift_depth}"
        )
    corr = np.zeros(flat.shape, dtype=complex)
    for j in range(1, int(np.abs(nshift).max(initial=0)) + 1):
        down = nshift >= j
        if np.any(down):
            arg = np.pi * (flat[down] - j * w1) / w2
            corr[down] -= _guarded_log_two_sin(arg, flat[down])
        up = -nshift >= j
        if np.any(up):
            arg = np.pi * (flat[up] + (j - 1) * w1) / w2
            corr[up] += _guarded_log_two_sin(arg, flat[up])
    reduced = flat - nshift * w1
    if pol.extended:
        base = np.array([_log_s2_strip_mp(complex(v), w1, w2, pol.digits) for v in reduced])
    else:
        base = np.empty_like(reduced)
        for s in range(0, reduced.size, _CHUNK):
            base[s : s + _CHUNK] = _log_s2_strip_double(reduced[s : s + _CHUNK], w1, w2)
    out = base + corr
    out[zflat] = -np.inf
    out = out.reshape(za.shape)
    return out[()] if out.ndim == 0 else out


def _guarded_log_two_sin(arg: np.ndarray, where: np.ndarray) -> np.ndarray:
    val = log_two_sin(arg)
    bad = ~np.isfinite(np.atleast_1d(val))
    if np.any(bad):
        raise PoleHit(f"functional-equation step hits a sine zero near z = {np.atleast_1d(where)[bad][0]}")
    return val


def double_sine(z: ArrayLike, omega: Periods, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """Double sine ``S2(z|w1, w2)`` anywhere off the pole lattice.

    Examples
    --------
    >>> w = Periods(1, 2 ** 0.5)
    >>> z = 0.3 + 0.2j
    >>> abs(double_sine(z, w) * double_sine(w.total - z, w) - 1) < 1e-12
    True
    >>> double_sine(-1.0, w)
    0j
    """
    return np.exp(log_double_sine(z, omega, pol))


def hyperbolic_gamma(z: ArrayLike, omega: Periods, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """Ruijsenaars hyperbolic gamma ``G(z) = S2(iz + (w1 + w2)/2)``."""
    return double_sine(1j * np.asarray(z, dtype=complex) + 0.5 * omega.total, omega, pol)


# ---------------------------------------------------------------------------
# Product representation
# ---------------------------------------------------------------------------


def log_double_sine_product(z: ArrayLike, omega: Periods, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """Logarithm of the double sine from the nome product (non-real period ratio).

    ``S2 = exp(pi i B22 / 2) * prod_{m>=0}(1 - q^{2m} e^{2 pi i z/w2})
    / prod_{m>=1}(1 - q~^{2m} e^{2 pi i z/w1})`` with ``q = e^{pi i w1/w2}``
    and ``q~ = e^{-pi i w2/w1}``; the periods are ordered so that
    ``Im(w1/w2) > 0``.

    Raises
    ------
    RealPeriodRatio
        If ``w1/w2`` is real.
    NonconvergentProduct
        If a nome is not strictly inside the unit disc.
    """
    pol = _policy(pol)
    if omega.ratio_is_real():
        raise RealPeriodRatio("product representation needs Im(w1/w2) != 0")
    w1, w2 = omega.omega1, omega.omega2
    if (w1 / w2).imag < 0:
        w1, w2 = w2, w1
    za = np.asarray(z, dtype=complex)
    zero = _scan_lattice(za, omega, pol)
    flat = za.ravel()
    log_q = 1j * np.pi * w1 / w2
    log_qt = -1j * np.pi * w2 / w1
    if log_q.real >= 0 or log_qt.real >= 0:
        raise NonconvergentProduct("|q| >= 1 or |q~| >= 1")
    lx = 2j * np.pi * flat / w2
    ly = 2j * np.pi * flat / w1
    log_tol = math.log(pol.tolerance) - 2.0

    def _log_prod(lbase, lnome, start):
        need = np.ceil((log_tol - lbase.real) / (2 * lnome.real)).astype(int)
        nterms = int(max(need.max(initial=0), 0)) + 2
        if nterms > 200000:
            raise NonconvergentProduct(f"product needs {nterms} factors")
        acc = np.zeros(lbase.shape, dtype=complex)
        for m in range(start, start + nterms):
            acc += np.log1p(-np.exp(2 * m * lnome + lbase))
        return acc

    with np.errstate(divide="ignore"):
        val = 0.5j * np.pi * bernoulli_b22(flat, Periods(w1, w2)) + _log_prod(lx, log_q, 0) - _log_prod(ly, log_qt, 1)
    val = np.where(zero.ravel(), -np.inf, val).reshape(za.shape)
    return val[()] if val.ndim == 0 else val


def double_sine_product(z: ArrayLike, omega: Periods, pol: Optional[PrecisionPolicy] = None) -> ArrayLike:
    """Double sine from the nome product; see :func:`log_double_sine_product`."""
    return np.exp(log_double_sine_product(z, omega, pol))


def nomes(omega: Periods) -> Tuple[complex, complex]:
    """Return ``(q, q~)`` of the product representation for the given ordering."""
    w1, w2 = omega.omega1, omega.omega2
    return cmath.exp(1j * cmath.pi * w1 / w2), cmath.exp(-1j * cmath.pi * w2 / w1)


# ---------------------------------------------------------------------------
# Residues and asymptotics
# ---------------------------------------------------------------------------


def check_nondegenerate(omega: Periods, max_den: int = 1000, tol: float = 1e-10) -> None:
    """Raise DegenerateLattice when ``w1/w2`` is (numerically) rational."""
    if not omega.ratio_is_real():
        return
    r = (omega.omega1 / omega.omega2).real
    frac = Fraction(r).limit_denominator(max_den)
    if abs(r - float(frac)) <= tol * max(1.0, abs(r)):
        raise DegenerateLattice(f"period ratio {r} is close to the rational {frac}")


def _sine_chain(count: int, a: complex, b: complex) -> complex:
    prod = 1.0 + 0j
    for s in range(1, count + 1):
        prod *= 2 * cmath.sin(cmath.pi * s * a / b)
    return prod


def s2_residue(at: LatticePoint, omega: Periods) -> complex:
    """Residue of ``S2`` at the pole ``m w1 + k w2`` (``m, k >= 1``).

    Examples
    --------
    >>> w = Periods(1, 2 ** 0.5)
    >>> abs(s2_residue(LatticePoint(1, 1), w) + w.product ** 0.5 / (2 * math.pi)) < 1e-15
    True
    """
    if at.m < 1 or at.k < 1:
        raise ValueError("poles have m, k >= 1")
    check_nondegenerate(omega)
    w1, w2 = omega.omega1, omega.omega2
    sign = -1.0 if (at.m * at.k) % 2 else 1.0
    den = _sine_chain(at.m - 1, w1, w2) * _sine_chain(at.k - 1, w2, w1)
    return cmath.sqrt(w1 * w2) / (2 * cmath.pi) * sign / den


def s2_inv_residue(at: LatticePoint, omega: Periods) -> complex:
    """Residue of ``1/S2`` at the zero ``-m w1 - k w2`` (``m, k >= 0``)."""
    if at.m < 0 or at.k < 0:
        raise ValueError("zeros have m, k >= 0")
    check_nondegenerate(omega)
    w1, w2 = omega.omega1, omega.omega2
    sign = -1.0 if (at.m * at.k + at.m + at.k) % 2 else 1.0
    den = _sine_chain(at.m, w1, w2) * _sine_chain(at.k, w2, w1)
    return cmath.sqrt(w1 * w2) / (2 * cmath.pi) * sign / den


def contour_residue(func, centre: complex, radius: float, nodes: int = 128) -> complex:
    """Numerical residue ``(1/2 pi i) \\oint func`` over a circle (trapezoid rule)."""
    phi = 2 * np.pi * np.arange(nodes) / nodes
    pts = centre + radius * np.exp(1j * phi)
    vals = np.asarray(func(pts), dtype=complex)
    return complex(np.mean(vals * radius * np.exp(1j * phi)))


def cone_distance(z: complex, omega: Periods) -> float:
    """Distance from ``z`` to the closed cones of poles and zeros."""
    s = sorted([cmath.phase(omega.omega1), cmath.phase(omega.omega2)])

    def to_sector(w: complex) -> float:
        if w == 0:
            return 0.0
        a = cmath.phase(w)
        if s[0] <= a <= s[1]:
            return 0.0
        best = abs(w)
        for sig in s:
            rot = w * cmath.exp(-1j * sig)
            if rot.real > 0:
                best = min(best, abs(rot.imag))
        return best

    return min(to_sector(complex(z)), to_sector(-complex(z)))


def log_s2_asymptotic(z: complex, omega: Periods, margin: float = 1.0) -> complex:
    """Leading large-``|z|`` behaviour ``+-(pi i/2) B22(z)`` of ``log S2``.

    The ``+`` sign applies in the upper half plane.  The error is of order
    ``1/d`` where ``d`` is the distance to the pole/zero cones.

    Raises
    ------
    InsideCone
        If ``z`` is closer than ``margin`` to the cones.
    """
    z = complex(z)
    if cone_distance(z, omega) < margin:
        raise InsideCone(f"z = {z} is within {margin} of the pole/zero cones")
    sign = 1.0 if z.imag > 0 else -1.0
    return sign * 0.5j * cmath.pi * complex(bernoulli_b22(z, omega))
