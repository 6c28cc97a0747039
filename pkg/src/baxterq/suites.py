"""Randomized identity suites for the double sine and the kernel identity.

Each suite draws its sample points from a seeded generator and returns a
:class:`~baxterq.reports.Report`.  They back both the command line and the
acceptance tests.
"""

from __future__ import annotations

import cmath
import math
import time
from typing import Sequence

import numpy as np

from .difference_ops import kernel_identity_sides
from .errors import IdentityViolation, ToleranceExceeded
from .reports import Report
from .special_functions import (
    LatticePoint,
    Periods,
    contour_residue,
    double_sine,
    double_sine_product,
    double_sine_strip,
    s2_inv_residue,
    s2_residue,
)


def _random_points(rng: np.random.Generator, count: int, omega: Periods, re=(-2.0, 4.0), im=(-1.5, 1.5), gap=0.05):
    """Uniform points kept ``gap`` away from the lattice ``m w1 + k w2`` (``|m|, |k| <= 12``)."""
    out = []
    w1, w2 = omega.omega1, omega.omega2
    lat = np.array([m * w1 + k * w2 for m in range(-12, 13) for k in range(-12, 13)])
    while len(out) < count:
        z = complex(rng.uniform(*re), rng.uniform(*im))
        if np.min(np.abs(lat - z)) > gap:
            out.append(z)
    return np.array(out)


def verify_s2_identities(seed: int = 0, points: int = 100, omega: Periods = Periods(1.0, math.sqrt(2)), tol: float = 1e-10) -> Report:
    """Reflection, both shifts, factorization for ``|m|, |k| <= 3``, homogeneity
    with ``gamma`` in ``{1/2, 2}`` and the period swap at seeded random points."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    z = _random_points(rng, points, omega)
    w1, w2 = omega.omega1, omega.omega2
    rep = Report("s2_identities", {"seed": seed, "points": points, "omega": [w1, w2], "tol": tol})
    s = double_sine(z, omega)

    def rel(a, b):
        return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))

    r = float(np.max(np.abs(s * double_sine(omega.total - z, omega) - 1)))
    rep.add_case(r < tol, identity="reflection", residual=r)
    r = rel(s, 2 * np.sin(np.pi * z / w2) * double_sine(z + w1, omega))
    rep.add_case(r < tol, identity="shift_w1", residual=r)
    r = rel(s, 2 * np.sin(np.pi * z / w1) * double_sine(z + w2, omega))
    rep.add_case(r < tol, identity="shift_w2", residual=r)
    worst = 0.0
    zf = z[:20]
    for m in range(-3, 4):
        for k in range(-3, 4):
            lhs = s[:20] * double_sine(zf + m * w1 + k * w2, omega)
            rhs = (-1) ** (m * k) * double_sine(zf + m * w1, omega) * double_sine(zf + k * w2, omega)
            worst = max(worst, rel(lhs, rhs))
    rep.add_case(worst < tol, identity="factorization", residual=worst)
    for gamma in (0.5, 2.0):
        r = rel(double_sine(gamma * z, omega.scaled(gamma)), s)
        rep.add_case(r < tol, identity=f"homogeneity_{gamma}", residual=r)
    r = float(np.max(np.abs(double_sine(z, omega.swapped()) - s)))
    rep.add_case(r == 0.0, identity="period_swap", residual=r)
    rep.timing["seconds"] = time.perf_counter() - t0
    return rep


def verify_s2_representations(seed: int = 0, points: int = 50, omega: Periods = Periods(1.0, 1.0 + 1.0j), tol: float = 1e-9) -> Report:
    """Strip integral against the nome product inside the strip, plus the
    special values ``S2(Omega/2) = 1`` and ``S2(1/2 | 1, 1) = sqrt 2``."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    rs = omega.total.real
    z = _random_points(rng, points, omega, re=(0.05 * rs, 0.95 * rs), im=(-1.0, 1.0))
    rep = Report("s2_representations", {"seed": seed, "points": points, "omega": [omega.omega1, omega.omega2], "tol": tol})
    a = double_sine_strip(z, omega)
    b = double_sine_product(z, omega)
    r = float(np.max(np.abs(a - b) / np.abs(b)))
    rep.add_case(r < tol, identity="integral_vs_product", residual=r)
    r = abs(complex(double_sine(omega.total / 2, omega)) - 1)
    rep.add_case(r < 1e-10, identity="midpoint_value", residual=r)
    r = abs(complex(double_sine(0.5, Periods(1, 1))) - math.sqrt(2))
    rep.add_case(r < 1e-10, identity="half_at_unit_periods", residual=r)
    rep.timing["seconds"] = time.perf_counter() - t0
    return rep


def verify_s2_residues(omega: Periods = Periods(1.0, math.sqrt(2)), size: int = 2, tol: float = 1e-8) -> Report:
    """Contour-integral residues of ``S2`` at poles and of ``1/S2`` at zeros
    against the closed forms."""
    t0 = time.perf_counter()
    rep = Report("s2_residues", {"omega": [omega.omega1, omega.omega2], "size": size, "tol": tol})
    rad = 0.1 * min(abs(omega.omega1), abs(omega.omega2), abs(omega.omega1 - omega.omega2))
    for m in range(1, size + 1):
        for k in range(1, size + 1):
            at = LatticePoint(m, k)
            num = contour_residue(lambda x: double_sine(x, omega), at.position(omega), rad)
            ref = s2_residue(at, omega)
            r = abs(num - ref) / abs(ref)
            rep.add_case(r < tol, kind="pole", m=m, k=k, numeric=num, closed_form=ref, residual=r)
    for m in range(0, size):
        for k in range(0, size):
            at = LatticePoint(m, k)
            num = contour_residue(lambda x: 1 / double_sine(x, omega), -at.position(omega), rad)
            ref = s2_inv_residue(at, omega)
            r = abs(num - ref) / abs(ref)
            rep.add_case(r < tol, kind="zero", m=m, k=k, numeric=num, closed_form=ref, residual=r)
    rep.timing["seconds"] = time.perf_counter() - t0
    return rep


def verify_kernel_identity(seed: int = 0, samples: int = 50, n_max: int = 3, tol: float = 1e-11) -> Report:
    """Trigonometric kernel identity at random complex points for ``n <= n_max`` and all ``r``."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    rep = Report("kernel_identity", {"seed": seed, "samples": samples, "n_max": n_max, "tol": tol})
    for n in range(1, n_max + 1):
        worst = 0.0
        for _ in range(samples):
            z = rng.uniform(-1, 1, n) + 1j * rng.uniform(-0.5, 0.5, n)
            y = rng.uniform(-1, 1, n) + 1j * rng.uniform(-0.5, 0.5, n)
            alpha = complex(rng.uniform(-1, 1), rng.uniform(-0.5, 0.5))
            for r in range(n + 1):
                lhs, rhs = kernel_identity_sides(z, y, alpha, r)
                worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
        rep.add_case(worst < tol, n=n, residual=worst)
    rep.timing["seconds"] = time.perf_counter() - t0
    return rep


def raise_on_failure(rep: Report) -> Report:
    return rep.raise_if_failed(IdentityViolation if rep.check != "kernel_identity" else ToleranceExceeded, f"{rep.check} failed")
