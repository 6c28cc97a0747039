"""Direct quadrature of the Q-operator integrals for one and two variables.

The integrands are analytic in a horizontal strip around the integration
contour and decay exponentially, so the trapezoid rule on a truncated line
converges geometrically in the step size.  Each integral is evaluated at a
sequence of halved steps until two successive values agree; the difference
is reported as the discretization error.  The truncation radius comes from
the exponential envelope of the integrand and is checked afterwards against
the magnitude on the boundary of the box.

For two variables the kernel factors are separable per axis and the measure
depends only on the difference ``y_1 - y_2``, so on the tensor grid it is a
Toeplitz matrix.

The contour is the line ``Im y = -c``.  For real ``z`` one takes ``c = 0``;
for complex ``z`` (shifted arguments in difference operators) ``c`` is the
centre of the interval that keeps every ``z_a - y`` inside the analyticity
strip ``|Im| < Re g*/2`` of the kernel.  Since that interval also meets
``(-Re g*/2, Re g*/2)``, the integral is the analytic continuation of the
real-``z`` one.
"""

from __future__ import annotations

import cmath
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Sequence

import numpy as np

from .difference_ops import AnalyticTestFunction, macdonald_apply, macdonald_coefficient, subsets
from .errors import RegimeViolation, StripExceeded, ToleranceExceeded, ToleranceNotMet
from .kernels import ModelParams, d_const, log_kernel_K, log_measure_mu
from .reports import Report
from .residue_series import SeriesOrder, series_Q_sum


def thread_count() -> int:
    """Worker threads for independent integrals, from ``BAXTERQ_THREADS`` (default 1)."""
    raw = os.environ.get("BAXTERQ_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map(fn, items):
    items = list(items)
    k = thread_count()
    if k == 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class IntegrationPlan:
    """Settings for the trapezoid integrator.

    Parameters
    ----------
    tol : float
        Relative agreement required between two successive step halvings,
        and relative size of the integrand allowed on the truncation boundary.
    radius : float, optional
        Half-width of the box on every axis.  Derived from the decay rate when
        omitted.
    max_depth : int
        Number of step halvings allowed after the initial step.
    oscillation_hint : float, optional
        Frequency ``|2 pi lam|`` used for the initial step; inferred when omitted.
    contour_shift : float, optional
        Force ``c`` in ``Im y = -c``.
    decay_radius : float, optional
        Lower bound on the radius, for test functions that are concentrated
        (a Gaussian's centre plus a few widths).
    """

    tol: float = 1e-10
    radius: Optional[float] = None
    max_depth: int = 6
    oscillation_hint: Optional[float] = None
    contour_shift: Optional[float] = None
    decay_radius: Optional[float] = None

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")

    @classmethod
    def coarse(cls) -> "IntegrationPlan":
        return cls(tol=1e-7, max_depth=5)


@dataclass
class QuadResult:
    value: complex
    error: float
    step: float
    radius: float
    contour_shift: float
    levels: int
    boundary_ratio: float

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "error": self.error,
            "step": self.step,
            "radius": self.radius,
            "contour_shift": self.contour_shift,
            "levels": self.levels,
            "boundary_ratio": self.boundary_ratio,
        }


def _strip_half(p: ModelParams) -> float:
    return 0.5 * p.gstar.real


def choose_contour(z: Sequence[complex], p: ModelParams, requested: Optional[float] = None):
    """Pick ``c`` for the contour ``Im y = -c`` and return it with the distance
    of the kernel arguments to the edge of their strip.

    Raises
    ------
    StripExceeded
        When no horizontal line keeps all ``z_a - y`` in the strip.
    """
    half = _strip_half(p)
    ims = [complex(v).imag for v in z]
    lo = max([-half - t for t in ims] + [-half])
    hi = min([half - t for t in ims] + [half])
    if not lo < hi:
        raise StripExceeded(f"imaginary parts {ims} do not fit in a strip of half-width {half:.4g}")
    c = 0.5 * (lo + hi) if requested is None else float(requested)
    if not lo < c < hi:
        raise StripExceeded(f"contour shift {c} outside the admissible interval ({lo:.4g}, {hi:.4g})")
    margin = min(half - abs(t + c) for t in ims)
    return c, margin


def _initial_step(d: float, tol: float, freq: float) -> float:
    dd = 0.8 * d
    return 2 * math.pi * dd / (math.log(1 / tol) + freq * dd)


def _grid(R: float, h: float):
    N = int(math.ceil(R / h))
    return h * np.arange(-N, N + 1), N


def _finite_exp(logv: np.ndarray) -> np.ndarray:
    out = np.zeros(logv.shape, dtype=complex)
    ok = np.isfinite(logv.real)
    out[ok] = np.exp(logv[ok])
    return out


class _Integrand:
    """``prod_i A(y_i) * P(y_1 - y_2) * G(y)`` on ``Im y = -c``.

    ``A`` and ``P`` return logarithms (``P`` holds both orderings of the pair); ``G`` (optional) is evaluated only away
    from the diagonal ``y_1 = y_2``, where the pair factor vanishes.
    """

    def __init__(self, n: int, log_axis: Callable, log_pair: Optional[Callable], grid_fn: Optional[Callable], c: float):
        if n not in (1, 2):
            raise ValueError("quadrature is implemented for n = 1 and n = 2 only")
        self.n, self.log_axis, self.log_pair, self.grid_fn, self.c = n, log_axis, log_pair, grid_fn, c

    def grid_values(self, R: float, h: float):
        t, N = _grid(R, h)
        y = t - 1j * self.c
        a = _finite_exp(np.asarray(self.log_axis(y), dtype=complex))
        if self.n == 1:
            vals = a.copy()
            if self.grid_fn is not None:
                vals = vals * np.asarray(self.grid_fn(y[:, None]))
            return vals, h
        d = h * np.arange(-2 * N, 2 * N + 1)
        with np.errstate(all="ignore"):
            pv = _finite_exp(np.asarray(self.log_pair(d), dtype=complex))
        pv[2 * N] = 0
        idx = np.arange(2 * N + 1)
        T = pv[idx[:, None] - idx[None, :] + 2 * N]
        vals = a[:, None] * a[None, :] * T
        if self.grid_fn is not None:
            Y1, Y2 = np.meshgrid(y, y, indexing="ij")
            off = ~np.eye(len(y), dtype=bool)
            pts = np.stack([Y1[off], Y2[off]], axis=-1)
            g = np.zeros(vals.shape, dtype=complex)
            g[off] = np.asarray(self.grid_fn(pts))
            vals = vals * g
        return vals, h

    def integrate(self, R: float, h: float):
        vals, h = self.grid_values(R, h)
        total = vals.sum() * h**self.n
        if self.n == 1:
            edge = max(abs(vals[0]), abs(vals[-1]))
        else:
            edge = max(np.abs(vals[0]).max(), np.abs(vals[-1]).max(), np.abs(vals[:, 0]).max(), np.abs(vals[:, -1]).max())
        peak = float(np.abs(vals).max())
        return complex(total), float(edge), peak


def _run(integrand: _Integrand, R: float, h0: float, plan: IntegrationPlan, rate: float) -> QuadResult:
    for _ in range(4):
        prev = None
        for level in range(plan.max_depth + 1):
            h = h0 / 2**level
            val, edge, peak = integrand.integrate(R, h)
            if prev is not None and abs(val - prev) <= plan.tol * max(abs(val), 1e-300):
                break
            prev = val
        else:
            raise ToleranceNotMet(
                f"step halving did not converge: last change {abs(val - prev):.3e} at h = {h:.3g}, value {val:.6g}"
            )
        ratio = edge / peak if peak > 0 else 0.0
        if ratio <= plan.tol:
            tail = edge * integrand.n / max(rate, 1e-3) * (2 * R) ** (integrand.n - 1)
            return QuadResult(val, abs(val - prev) + tail, h, R, integrand.c, level, ratio)
        R *= 1.5
    raise ToleranceNotMet(f"integrand still {ratio:.3e} of its peak on the boundary at radius {R / 1.5:.3g}")


def _radius(rate: float, plan: IntegrationPlan, n: int) -> float:
    if plan.radius is not None:
        return float(plan.radius)
    return max((math.log(1 / plan.tol) + 3 * n) / rate, 2.0)


def _check_lambda(lam: complex, p: ModelParams) -> None:
    if not p.decaying or abs(complex(lam).imag) >= p.nu_g:
        raise RegimeViolation(f"need |Im lam| < nu_g, got |Im lam| = {abs(complex(lam).imag):.4g}, nu_g = {p.nu_g:.4g}")


def _kernel_axis(z: np.ndarray, lam: complex, sign: int, p: ModelParams):
    """``log( e^{2 pi i sign lam y} prod_a K(z_a - y) )``."""

    def f(y):
        return 2j * math.pi * sign * lam * y + np.sum(log_kernel_K(z[:, None] - y[None, :], p), axis=0)

    return f


def _log_pair_mu(p: ModelParams):
    def f(d):
        return log_measure_mu(d, p) + log_measure_mu(-d, p)

    return f


def integrate_Q(z2n: Sequence[complex], lam: complex, p: ModelParams, plan: IntegrationPlan = IntegrationPlan()) -> QuadResult:
    """Quadrature of ``int e^{2 pi i lam sum y} prod_{a,i} K(z_a - y_i) prod_{i != j} mu(y_i - y_j) dy``.

    Parameters
    ----------
    z2n : sequence
        The ``2n`` parameters, ``n`` in ``{1, 2}``.
    lam : complex
        Spectral parameter with ``|Im lam| < nu_g``.
    p : ModelParams
    plan : IntegrationPlan

    Returns
    -------
    QuadResult
        Value, error estimate (step-halving difference plus boundary tail) and
        the grid that produced it.

    Raises
    ------
    RegimeViolation
        When ``nu_g <= |Im lam|``.
    ToleranceNotMet
        When the step halving or the truncation check does not settle.
    """
    z = np.asarray(z2n, dtype=complex)
    if z.ndim != 1 or len(z) % 2:
        raise ValueError("z2n must hold an even number of parameters")
    n = len(z) // 2
    if n not in (1, 2):
        raise ValueError("integrate_Q supports n = 1 and n = 2 only")
    _check_lambda(lam, p)
    c, margin = choose_contour(z, p, plan.contour_shift)
    d = min(margin, p.g.real)
    freq = plan.oscillation_hint if plan.oscillation_hint is not None else 2 * math.pi * abs(lam)
    rate = 2 * math.pi * (p.nu_g - abs(complex(lam).imag))
    integrand = _Integrand(n, _kernel_axis(z, lam, 1, p), _log_pair_mu(p), None, c)
    return _run(integrand, _radius(rate, plan, n), _initial_step(d, plan.tol, freq), plan, rate)


def verify_commutativity(
    z2n: Sequence[complex],
    lam: complex,
    p: ModelParams,
    plan: IntegrationPlan = IntegrationPlan(),
    rtol: Optional[float] = None,
    strict: bool = True,
) -> Report:
    """Check ``Q(z; lam) = e^{2 pi i lam sum z} Q(z; -lam)`` by quadrature of both sides.

    The default tolerance is ``1e-6`` for ``n = 1`` and ``1e-4`` for ``n = 2``.
    """
    n = len(z2n) // 2
    if rtol is None:
        rtol = 1e-6 if n == 1 else 1e-4
    t0 = time.perf_counter()
    report = Report(
        "q_commutativity",
        {"z2n": list(z2n), "lam": lam, "omega": [p.omega.omega1, p.omega.omega2], "g": p.g, "rtol": rtol, "plan": vars(plan)},
    )
    if lam == 0:
        report.add_case(True, lam=lam, lhs=None, rhs=None, residual=0.0)
        report.notes.append("lam = 0: both sides coincide")
        return report
    a = integrate_Q(z2n, lam, p, plan)
    b = integrate_Q(z2n, -lam, p, plan)
    rhs = cmath.exp(2j * math.pi * lam * sum(complex(v) for v in z2n)) * b.value
    res = abs(a.value - rhs) / abs(a.value)
    report.add_case(res < rtol, lam=lam, lhs=a.value, rhs=rhs, residual=res, error_estimate=(a.error + b.error) / abs(a.value))
    report.timing["seconds"] = time.perf_counter() - t0
    if strict:
        report.raise_if_failed(ToleranceExceeded, f"Q(lam) = {a.value}, e^(..) Q(-lam) = {rhs}, residual {res:.3e}")
    return report


def apply_Q_operator(
    f,
    z: Sequence[complex],
    lam: complex,
    p: ModelParams,
    plan: IntegrationPlan = IntegrationPlan(),
) -> QuadResult:
    """``(Q f)(z) = int e^{2 pi i lam (sum z - sum y)} K(z, y) mu(y) f(y) dy`` for ``n`` in ``{1, 2}``.

    ``f`` must decay fast enough to beat the growth of ``mu``; Gaussians are
    the intended inputs, together with ``plan.decay_radius`` to cap the box.
    Complex ``z`` are handled by moving the contour (see module notes).

    Raises
    ------
    StripExceeded
        When the imaginary parts of ``z`` leave no admissible contour.
    """
    if not isinstance(f, AnalyticTestFunction):
        f = AnalyticTestFunction(f)
    z = np.asarray(z, dtype=complex)
    n = len(z)
    if n not in (1, 2):
        raise ValueError("apply_Q_operator supports n = 1 and n = 2 only")
    c, margin = choose_contour(z, p, plan.contour_shift)
    d = min(margin, p.g.real)
    if np.isfinite(f.strip_halfwidth):
        d = min(d, f.strip_halfwidth - abs(c))
        if d <= 0:
            raise StripExceeded("the contour leaves the analyticity strip of f")
    freq = plan.oscillation_hint if plan.oscillation_hint is not None else 2 * math.pi * abs(lam)
    pref = cmath.exp(2j * math.pi * lam * complex(z.sum()))
    integrand = _Integrand(n, _kernel_axis(z, lam, -1, p), _log_pair_mu(p), f, c)
    rate = max(math.pi * p.nu_g, 0.5)
    R = plan.radius if plan.radius is not None else (plan.decay_radius or _radius(rate, plan, n))
    res = _run(integrand, R, _initial_step(d, plan.tol, freq), plan, rate)
    res.value *= pref
    res.error *= abs(pref)
    return res


def _apply_with_coefficients(r: int, f: AnalyticTestFunction, p: ModelParams) -> AnalyticTestFunction:
    """``M_r f`` as an evaluator; its coefficients need distinct coordinates,
    which the integrator guarantees."""

    def ev(y):
        return macdonald_apply(r, f, y, p)

    return AnalyticTestFunction(ev, np.inf)


def verify_MQ_commutation(
    r: int,
    f,
    z: Sequence[complex],
    lam: complex,
    p: ModelParams,
    plan: IntegrationPlan = IntegrationPlan(),
    rtol: Optional[float] = None,
    strict: bool = True,
) -> Report:
    """Check ``(M_r Q f)(z) = (Q M_r f)(z)``.

    The left side applies ``M_r`` to the function ``z -> (Q f)(z)``; the
    shifted arguments ``z - i w1 1_I`` are integrated on the moved contour.
    The right side integrates ``Q`` against ``M_r f`` with real ``z``.

    Raises
    ------
    RegimeViolation
        Unless ``Re g < Re w2``, which is what makes a common contour exist.
    """
    if not p.below_omega2:
        raise RegimeViolation("the commutation needs Re g < Re w2")
    if not isinstance(f, AnalyticTestFunction):
        f = AnalyticTestFunction(f)
    z = np.asarray(z, dtype=complex)
    n = len(z)
    if rtol is None:
        rtol = 1e-6 if n == 1 else 1e-5
    t0 = time.perf_counter()
    report = Report(
        "mq_commutation",
        {"r": r, "z": list(z), "lam": lam, "omega": [p.omega.omega1, p.omega.omega2], "g": p.g, "rtol": rtol, "plan": vars(plan)},
    )
    shift = -1j * p.omega.omega1
    errs: List[float] = []

    def one(I):
        zs = z.copy()
        for i in I:
            zs[i] += shift
        q = apply_Q_operator(f, zs, lam, p, plan)
        return I, q

    lhs = 0j
    for I, q in _map(one, subsets(n, r)):
        coef = complex(macdonald_coefficient(I, z, p))
        lhs += coef * q.value
        errs.append(abs(coef) * q.error)
    rq = apply_Q_operator(_apply_with_coefficients(r, f, p), z, lam, p, plan)
    res = abs(lhs - rq.value) / abs(rq.value)
    report.add_case(res < rtol, lhs=lhs, rhs=rq.value, residual=res, error_estimate=(sum(errs) + rq.error) / abs(rq.value))
    report.timing["seconds"] = time.perf_counter() - t0
    if strict:
        report.raise_if_failed(ToleranceExceeded, f"M_r Q f = {lhs}, Q M_r f = {rq.value}, residual {res:.3e}")
    return report


def psi_n2(x: Sequence[complex], lam1: complex, lam2: complex, p: ModelParams, plan: IntegrationPlan = IntegrationPlan()) -> QuadResult:
    """``Psi(x) = d_2 int e^{2 pi i lam2 (x1 + x2 - y)} K(x1 - y) K(x2 - y) e^{2 pi i lam1 y} dy``."""
    x = np.asarray(x, dtype=complex)
    if len(x) != 2:
        raise ValueError("psi_n2 takes two coordinates")
    c, margin = choose_contour(x, p, plan.contour_shift)
    d = min(margin, p.g.real)
    dl = lam1 - lam2
    freq = plan.oscillation_hint if plan.oscillation_hint is not None else 2 * math.pi * abs(dl)
    rate = 2 * math.pi * p.nu_g - 2 * math.pi * abs(complex(dl).imag)
    if rate <= 0:
        raise RegimeViolation("the one-dimensional integral diverges for these spectral parameters")
    integrand = _Integrand(1, _kernel_axis(x, dl, 1, p), None, None, c)
    res = _run(integrand, _radius(rate, plan, 1), _initial_step(d, plan.tol, freq), plan, rate)
    pref = d_const(2, p) * cmath.exp(2j * math.pi * lam2 * complex(x.sum()))
    res.value *= pref
    res.error *= abs(pref)
    return res


def eigenfunction_check_n2(
    lam1: complex,
    lam2: complex,
    x: Sequence[complex],
    p: ModelParams,
    plan: IntegrationPlan = IntegrationPlan(),
    rtol: float = 1e-5,
    strict: bool = True,
) -> Report:
    """Check ``M_1 Psi = (e^{2 pi lam1 w1} + e^{2 pi lam2 w1}) Psi`` and
    ``M_2 Psi = e^{2 pi lam1 w1} e^{2 pi lam2 w1} Psi`` at ``x``.

    Raises
    ------
    RegimeViolation
        Unless the parameters are real with ``Re g < Re w2``.
    """
    if not (p.below_omega2 and p.real_parameters):
        raise RegimeViolation("the eigenfunction check needs real parameters and Re g < Re w2")
    x = np.asarray(x, dtype=complex)
    t0 = time.perf_counter()
    report = Report(
        "eigenfunction_n2",
        {"lam": [lam1, lam2], "x": list(x), "omega": [p.omega.omega1, p.omega.omega2], "g": p.g, "rtol": rtol, "plan": vars(plan)},
    )
    w1 = p.omega.omega1
    e = [cmath.exp(2 * math.pi * lam1 * w1), cmath.exp(2 * math.pi * lam2 * w1)]

    def ev(pts):
        pts = np.asarray(pts, dtype=complex)
        flat = pts.reshape(-1, 2)
        vals = _map(lambda q: psi_n2(q, lam1, lam2, p, plan).value, list(flat))
        return np.array(vals, dtype=complex).reshape(pts.shape[:-1])

    F = AnalyticTestFunction(ev, np.inf)
    psi = complex(ev(x))
    for r, eig in ((1, e[0] + e[1]), (2, e[0] * e[1])):
        lhs = complex(macdonald_apply(r, F, x, p))
        res = abs(lhs - eig * psi) / abs(eig * psi)
        report.add_case(res < rtol, r=r, M_psi=lhs, eigenvalue=eig, psi=psi, residual=res)
    report.timing["seconds"] = time.perf_counter() - t0
    if strict:
        report.raise_if_failed(ToleranceExceeded, f"eigenrelation residuals {[c['residual'] for c in report.cases]}")
    return report


def verify_series_vs_quadrature(
    z2n: Sequence[complex],
    lam: complex,
    p: ModelParams,
    order: SeriesOrder = SeriesOrder(),
    plan: IntegrationPlan = IntegrationPlan(),
    rtol: float = 1e-6,
    strict: bool = True,
) -> Report:
    """Compare the residue series with direct quadrature of the same integral."""
    t0 = time.perf_counter()
    report = Report(
        "series_vs_quadrature",
        {"z2n": list(z2n), "lam": lam, "omega": [p.omega.omega1, p.omega.omega2], "g": p.g, "order": vars(order), "rtol": rtol},
    )
    q = integrate_Q(z2n, lam, p, plan)
    s = series_Q_sum(z2n, lam, order, p)
    res = abs(q.value - s.value) / abs(q.value)
    report.add_case(res < rtol, quadrature=q.value, series=s.value, residual=res, tail_bound=s.tail_bound, quad_error=q.error)
    report.timing["seconds"] = time.perf_counter() - t0
    if strict:
        report.raise_if_failed(ToleranceExceeded, f"series {s.value} vs quadrature {q.value}, residual {res:.3e}")
    return report


def self_convergence(z2n, lam, p: ModelParams, plan: IntegrationPlan = IntegrationPlan()) -> dict:
    """Value at ``plan.tol`` and at ``plan.tol / 2`` with the reported error of the first."""
    a = integrate_Q(z2n, lam, p, plan)
    b = integrate_Q(z2n, lam, p, replace(plan, tol=plan.tol / 2))
    return {"value": a.value, "refined": b.value, "change": abs(a.value - b.value), "error": a.error}


def lambda_analyticity(z2n, p: ModelParams, centre: complex = 0.0, radius: float = 0.1, plan: IntegrationPlan = IntegrationPlan()) -> dict:
    """Fit a degree-4 polynomial in ``lam`` through 9 samples on a circle and
    predict the value at the centre."""
    ts = 2 * math.pi * np.arange(9) / 9
    lams = centre + radius * np.exp(1j * ts)
    vals = np.array([integrate_Q(z2n, l, p, plan).value for l in lams])
    A = np.vander(lams - centre, 5, increasing=True)
    coef, *_ = np.linalg.lstsq(A, vals, rcond=None)
    held = integrate_Q(z2n, centre, p, plan).value
    return {"predicted": complex(coef[0]), "actual": held, "residual": abs(coef[0] - held) / abs(held)}
