"""Simple-pole residue expansion of the Q-commutativity integral.

The integral over ``y`` of ``e^{2 pi i lam sum y} prod K(z_a - y_i) mu(y)`` is
computed by closing the contours in the lower half plane.  Only products of
simple poles survive, and they are grouped by the subset ``I`` of the ``2n``
parameters that the residue variables are attached to.  For each index the
multiple residue has a closed form in terms of double sines, written either
directly (``form="direct"``) or through hyperbolic Pochhammer symbols
(``form="pochhammer"``).

Conventions
-----------
Within one term the parameters are relabeled as ``z_a = i z_{I[a]}`` and
``x_i = i z_{Ibar[i]}`` (with ``I`` and its complement sorted).  The
left-hand terms carry the indices of the residue variables attached to
``z_a``, the right-hand terms (upper half plane) those attached to ``x_i``.
"""

from __future__ import annotations

import cmath
import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .errors import (
    DegenerateConfiguration,
    NonconvergentSeries,
    PoleHit,
    SlopeMismatch,
    ToleranceExceeded,
)
from .kernels import ModelParams, log_kernel_product, log_measure_product
from .q_identities import compositions, hyp_pochhammer
from .reports import Report
from .special_functions import check_nondegenerate, log_double_sine


@dataclass(frozen=True)
class ResidueIndex:
    """Subset ``I`` of ``[2n]`` (0-based) with the period multiplicities of
    the ``n`` one-dimensional residues."""

    subset_I: Tuple[int, ...]
    m1: Tuple[int, ...]
    m2: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "subset_I", tuple(sorted(self.subset_I)))
        object.__setattr__(self, "m1", tuple(int(v) for v in self.m1))
        object.__setattr__(self, "m2", tuple(int(v) for v in self.m2))
        n = len(self.subset_I)
        if len(set(self.subset_I)) != n:
            raise ValueError("subset entries must be distinct")
        if len(self.m1) != n or len(self.m2) != n:
            raise ValueError("m1 and m2 need one entry per residue variable")
        if min(self.m1 + self.m2, default=0) < 0:
            raise ValueError("multiplicities are non-negative")

    @property
    def n(self) -> int:
        return len(self.subset_I)

    def complement(self) -> Tuple[int, ...]:
        return tuple(i for i in range(2 * self.n) if i not in self.subset_I)


@dataclass(frozen=True)
class SeriesOrder:
    """Truncation of the double series in ``u = e^{2 pi lam w1}``, ``v = e^{2 pi lam w2}``."""

    M_max: int = 8
    K_max: int = 8

    def __post_init__(self):
        if self.M_max < 0 or self.K_max < 0:
            raise ValueError("truncation orders are non-negative")


def subsets(n2: int, n: int) -> List[Tuple[int, ...]]:
    return list(itertools.combinations(range(n2), n))


def _split(z2n: Sequence[complex], subset: Sequence[int]):
    z2n = [complex(v) for v in z2n]
    rest = [i for i in range(len(z2n)) if i not in subset]
    zs = [1j * z2n[i] for i in subset]
    xs = [1j * z2n[i] for i in rest]
    return zs, xs


def generic_position_guard(z2n: Sequence[complex], p: ModelParams, span: int = 6, tol: float = 1e-6) -> None:
    """Reject configurations where ``i(z_a - z_b) + c`` is within ``tol`` of a
    lattice point ``j w1 + l w2`` (``|j|, |l| <= span``) for ``c`` in
    ``{0, g, g*}``."""
    w1, w2 = p.omega.omega1, p.omega.omega2
    z = [complex(v) for v in z2n]
    shifts = (0.0, p.g, p.gstar, -p.g, -p.gstar)
    for a in range(len(z)):
        for b in range(len(z)):
            if a == b:
                continue
            d = 1j * (z[a] - z[b])
            for c in shifts:
                for j in range(-span, span + 1):
                    for l in range(-span, span + 1):
                        if abs(d + c - j * w1 - l * w2) < tol:
                            raise DegenerateConfiguration(
                                f"i(z_{a} - z_{b}) + {c} sits on the lattice point ({j}, {l})"
                            )


def _log_s2_sum(args: List[complex], powers: List[int], p: ModelParams) -> complex:
    vals = np.asarray(log_double_sine(np.array(args, dtype=complex), p.omega))
    vals = np.atleast_1d(vals)
    if np.any(~np.isfinite(vals.real)):
        raise DegenerateConfiguration("a double sine factor vanishes at this configuration")
    return complex(np.dot(np.array(powers, dtype=float), vals))


def _sine_chain(count: int, a: complex, b: complex) -> complex:
    out = 1 + 0j
    for s in range(1, count + 1):
        out *= 2 * cmath.sin(cmath.pi * s * a / b)
    return out


def _shift(m1: int, m2: int, p: ModelParams) -> complex:
    return m1 * p.omega.omega1 + m2 * p.omega.omega2


def _checked(fn):
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (PoleHit, ZeroDivisionError) as exc:
            raise DegenerateConfiguration(f"residue term is singular here: {exc}") from exc

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_checked
def residue_L_term(idx: ResidueIndex, z2n: Sequence[complex], p: ModelParams, form: str = "pochhammer") -> complex:
    """One multiple residue of the lower-half-plane expansion.

    Parameters
    ----------
    idx : ResidueIndex
        Subset ``I`` and multiplicities ``(m1_a, m2_a)`` attached to ``z_{I[a]}``.
    z2n : sequence of complex
        The ``2n`` parameters (``z`` followed by ``x``), typically real.
    p : ModelParams
    form : {"pochhammer", "direct"}
        Closed form to use; the two must agree.

    Returns
    -------
    complex
        The residue, normalized so that ``(-2 pi i)^n n!`` times the sum of
        all terms weighted by ``u^M v^K`` reproduces the subset series.
    """
    n = idx.n
    if len(z2n) != 2 * n:
        raise ValueError("z2n must have 2n entries")
    zs, xs = _split(z2n, idx.subset_I)
    mm = list(zip(idx.m1, idx.m2))
    w = p.omega
    gs, g = p.gstar, p.g
    if form == "direct":
        pref = cmath.sqrt(w.product) ** n / (-2j * math.pi) ** n
        args, pw = [], []
        for a in range(n):
            m1, m2 = mm[a]
            sign = -1 if (m1 * m2 + m1 + m2) % 2 else 1
            pref *= sign / (_sine_chain(m1, w.omega1, w.omega2) * _sine_chain(m2, w.omega2, w.omega1))
            args.append(gs + _shift(m1, m2, p))
            pw.append(-1)
        for a in range(n):
            for b in range(n):
                if a == b:
                    continue
                d = zs[a] - zs[b]
                da = _shift(mm[a][0] - mm[b][0], mm[a][1] - mm[b][1], p)
                args += [d + da, d + gs + da, d + gs + _shift(*mm[a], p), d - _shift(*mm[b], p)]
                pw += [1, 1, -1, -1]
        for i in range(n):
            for a in range(n):
                sa = _shift(*mm[a], p)
                args += [zs[a] - xs[i] + gs + sa, xs[i] - zs[a] - sa]
                pw += [-1, -1]
        return pref * cmath.exp(_log_s2_sum(args, pw, p))
    if form != "pochhammer":
        raise ValueError("form must be 'pochhammer' or 'direct'")
    base = _base_factor(zs, xs, p, -1)
    out = base
    tot = w.total
    for a in range(n):
        out *= hyp_pochhammer(gs, *mm[a], p) / hyp_pochhammer(tot, *mm[a], p)
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            d = zs[a] - zs[b] - _shift(*mm[b], p)
            out *= hyp_pochhammer(d + g, *mm[a], p) / hyp_pochhammer(d, *mm[a], p)
    for i in range(n):
        for a in range(n):
            d = zs[a] - xs[i]
            out *= hyp_pochhammer(d + gs, *mm[a], p) / hyp_pochhammer(d + tot, *mm[a], p)
    return complex(out)


def _base_factor(zs, xs, p: ModelParams, orientation: int) -> complex:
    n = len(zs)
    w = p.omega
    args, pw = [p.gstar], [-n]
    for i in range(n):
        for a in range(n):
            args += [zs[a] - xs[i] + p.gstar, xs[i] - zs[a]]
            pw += [-1, -1]
    return cmath.sqrt(w.product) ** n / (orientation * 2j * math.pi) ** n * cmath.exp(_log_s2_sum(args, pw, p))


@_checked
def residue_R_term(idx: ResidueIndex, z2n: Sequence[complex], p: ModelParams, form: str = "pochhammer") -> complex:
    """One multiple residue of the upper-half-plane expansion for the complement.

    ``idx.subset_I`` is the subset ``I`` of the matching left-hand term; the
    residue variables sit at ``x_i - g*/2 - m_i w`` with ``x`` the
    parameters in the complement of ``I`` and ``m_i = (m1_i, m2_i)``.
    """
    n = idx.n
    if len(z2n) != 2 * n:
        raise ValueError("z2n must have 2n entries")
    zs, xs = _split(z2n, idx.subset_I)
    mm = list(zip(idx.m1, idx.m2))
    w = p.omega
    gs, g = p.gstar, p.g
    if form == "direct":
        pref = cmath.sqrt(w.product) ** n / (2j * math.pi) ** n
        args, pw = [], []
        for i in range(n):
            m1, m2 = mm[i]
            sign = -1 if (m1 * m2 + m1 + m2) % 2 else 1
            pref *= sign / (_sine_chain(m1, w.omega1, w.omega2) * _sine_chain(m2, w.omega2, w.omega1))
            args.append(gs + _shift(m1, m2, p))
            pw.append(-1)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                d = xs[i] - xs[j]
                dj = _shift(mm[j][0] - mm[i][0], mm[j][1] - mm[i][1], p)
                args += [d + dj, d + gs + dj, d + gs + _shift(*mm[j], p), d - _shift(*mm[i], p)]
                pw += [1, 1, -1, -1]
        for i in range(n):
            for a in range(n):
                si = _shift(*mm[i], p)
                args += [zs[a] - xs[i] + gs + si, xs[i] - zs[a] - si]
                pw += [-1, -1]
        return pref * cmath.exp(_log_s2_sum(args, pw, p))
    if form != "pochhammer":
        raise ValueError("form must be 'pochhammer' or 'direct'")
    out = _base_factor(zs, xs, p, +1)
    tot = w.total
    for i in range(n):
        out *= hyp_pochhammer(gs, *mm[i], p) / hyp_pochhammer(tot, *mm[i], p)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            d = xs[i] - xs[j] - _shift(*mm[i], p)
            out *= hyp_pochhammer(d + g, *mm[j], p) / hyp_pochhammer(d, *mm[j], p)
    for i in range(n):
        for a in range(n):
            d = zs[a] - xs[i]
            out *= hyp_pochhammer(d + gs, *mm[i], p) / hyp_pochhammer(d + tot, *mm[i], p)
    return complex(out)


def index_block(subset: Sequence[int], M: int, K: int) -> Iterator[ResidueIndex]:
    """All indices with ``|m1| = M`` and ``|m2| = K`` for a given subset."""
    n = len(subset)
    for m1 in compositions(n, M):
        for m2 in compositions(n, K):
            yield ResidueIndex(tuple(subset), m1, m2)


def block_sum(side: str, subset: Sequence[int], M: int, K: int, z2n, p: ModelParams, form: str = "pochhammer") -> complex:
    """``L^I_{M,K}`` (side ``"L"``) or ``R^{Ibar}_{M,K}`` (side ``"R"``)."""
    term = residue_L_term if side == "L" else residue_R_term
    return complex(sum(term(idx, z2n, p, form) for idx in index_block(subset, M, K)))


def verify_LR_equality(
    n: int,
    M: int,
    K: int,
    z2n: Sequence[complex],
    p: ModelParams,
    rtol: float = 1e-8,
    strict: bool = True,
) -> Report:
    """Check ``L^I_{M',K'} = (-1)^n R^{Ibar}_{M',K'}`` for all subsets and all
    blocks with ``M' <= M``, ``K' <= K``.

    Raises
    ------
    ToleranceExceeded
        When ``strict`` and some block misses ``rtol`` (the worst subset is
        named in the report).
    """
    if len(z2n) != 2 * n:
        raise ValueError("z2n must have 2n entries")
    check_nondegenerate(p.omega)
    generic_position_guard(z2n, p, span=max(M, K) + 2)
    t0 = time.perf_counter()
    report = Report("residue_LR_equality", {"n": n, "M": M, "K": K, "z2n": list(z2n), "omega": [p.omega.omega1, p.omega.omega2], "g": p.g, "rtol": rtol})
    sign = (-1) ** n
    for subset in subsets(2 * n, n):
        for Mi in range(M + 1):
            for Ki in range(K + 1):
                lhs = block_sum("L", subset, Mi, Ki, z2n, p)
                rhs = sign * block_sum("R", subset, Mi, Ki, z2n, p)
                scale = max(abs(lhs), abs(rhs), 1e-300)
                res = abs(lhs - rhs) / scale
                report.add_case(res < rtol, subset=list(subset), M=Mi, K=Ki, lhs=lhs, rhs=rhs, residual=res)
    report.timing["seconds"] = time.perf_counter() - t0
    if strict and not report.passed:
        worst = max(report.cases, key=lambda c: c["residual"])
        report.notes.append(f"worst subset {worst['subset']} at (M, K) = ({worst['M']}, {worst['K']})")
        report.raise_if_failed(ToleranceExceeded, f"block equality failed, worst residual {worst['residual']:.3e}")
    return report


@dataclass
class SeriesResult:
    value: complex
    tail_bound: float
    ratio: float
    order: SeriesOrder
    per_subset: dict = field(default_factory=dict)


def series_Q_sum(z2n: Sequence[complex], lam: complex, order: SeriesOrder, p: ModelParams) -> SeriesResult:
    """Residue series for the Q-commutativity integral.

    ``sum_I e^{2 pi lam (n g*/2 + i sum_{I} z)} n! (-2 pi i)^n sum_{M,K} L^I_{M,K} u^M v^K``
    truncated at ``order``.  The tail bound is the geometric extrapolation
    ``B r / (1 - r)`` with ``r = max(|u|, |v|)`` and ``B`` the largest
    magnitude among the blocks of the two outermost orders.

    Raises
    ------
    NonconvergentSeries
        When ``|u| >= 1`` or ``|v| >= 1``.
    """
    n2 = len(z2n)
    if n2 % 2:
        raise ValueError("z2n must have an even number of entries")
    n = n2 // 2
    check_nondegenerate(p.omega)
    generic_position_guard(z2n, p, span=max(order.M_max, order.K_max) + 2)
    u = cmath.exp(2 * math.pi * lam * p.omega.omega1)
    v = cmath.exp(2 * math.pi * lam * p.omega.omega2)
    r = max(abs(u), abs(v))
    if r >= 1:
        raise NonconvergentSeries(f"|u| = {abs(u):.3g}, |v| = {abs(v):.3g}; need both < 1")
    total = 0j
    edge = 0.0
    per = {}
    for subset in subsets(n2, n):
        pre = cmath.exp(2 * math.pi * lam * (n * p.gstar / 2 + 1j * sum(complex(z2n[i]) for i in subset)))
        pre *= math.factorial(n) * (-2j * math.pi) ** n
        acc = 0j
        for M in range(order.M_max + 1):
            for K in range(order.K_max + 1):
                blk = pre * block_sum("L", subset, M, K, z2n, p) * u**M * v**K
                acc += blk
                if M == order.M_max or K == order.K_max:
                    edge = max(edge, abs(blk))
        per[str(list(subset))] = acc
        total += acc
    tail = edge * r / (1 - r) * (order.M_max + order.K_max + 2)
    return SeriesResult(total, tail, r, order, per)


# ---------------------------------------------------------------------------
# Double zeros of symmetrized integrands
# ---------------------------------------------------------------------------


@dataclass
class PairSpec:
    """One coincidence pair ``i y_{2j-1} = a + eps + p w``, ``i y_{2j} = a + q w``."""

    a: complex
    p: Tuple[int, int]
    q: Tuple[int, int]


def _mp_ratio(base, s1: int, s2: int, w1, w2):
    """``S2(base + s1 w1 + s2 w2) / S2(base)`` as a finite product of sines."""
    out = mpmath.mpc(1)
    x = base
    for _ in range(s1):
        out /= 2 * mpmath.sin(mpmath.pi * x / w2)
        x = x + w1
    for _ in range(-s1):
        x = x - w1
        out *= 2 * mpmath.sin(mpmath.pi * x / w2)
    for _ in range(s2):
        out /= 2 * mpmath.sin(mpmath.pi * x / w1)
        x = x + w2
    for _ in range(-s2):
        x = x - w2
        out *= 2 * mpmath.sin(mpmath.pi * x / w1)
    return out


class _IntegrandFactors:
    """The integrand ``F`` as a product of double sines whose arguments are a
    fixed base plus integer period shifts.

    Terms related by the exchange operators share all bases, so their ratios
    are finite sine products which are summed in extended precision.
    """

    def __init__(self, bases_iy, z2n, lam, p: ModelParams, dps: int = 40):
        self.p = p
        self.dps = dps
        self.lam = complex(lam)
        self.bases = bases_iy  # mp complex, one per y
        self.z2n = [complex(v) for v in z2n]
        n = len(bases_iy)
        gs = p.gstar
        with mpmath.workdps(dps):
            gsm = mpmath.mpc(gs)
            self.factors = []  # (base, coefficient vector index, sign of shift, power)
            for i in range(n):
                for zc in self.z2n:
                    izc = mpmath.mpc(1j * zc)
                    self.factors.append((self.bases[i] - izc + gsm / 2, ((i, 1),), -1))
                    self.factors.append((-self.bases[i] + izc + gsm / 2, ((i, -1),), -1))
            for i in range(n):
                for j in range(n):
                    if i != j:
                        self.factors.append((self.bases[i] - self.bases[j], ((i, 1), (j, -1)), 1))
                        self.factors.append((-self.bases[i] + self.bases[j] + gsm, ((i, -1), (j, 1)), 1))
        args = np.array([complex(f[0]) for f in self.factors])
        pw = np.array([f[2] for f in self.factors], dtype=float)
        logs = np.atleast_1d(np.asarray(log_double_sine(args, p.omega)))
        if np.any(~np.isfinite(logs.real)):
            raise DegenerateConfiguration("base point of the double-zero check hits a zero of S2")
        self.log_base = complex(np.dot(pw, logs))

    def shifts_of(self, shifts_y, factor):
        s1 = sum(c * shifts_y[i][0] for i, c in factor[1])
        s2 = sum(c * shifts_y[i][1] for i, c in factor[1])
        return s1, s2

    def ratio(self, shifts_y):
        w1, w2 = self.p.omega.omega1, self.p.omega.omega2
        with mpmath.workdps(self.dps):
            w1m, w2m = mpmath.mpc(w1), mpmath.mpc(w2)
            out = mpmath.mpc(1)
            for f in self.factors:
                s1, s2 = self.shifts_of(shifts_y, f)
                if s1 or s2:
                    out *= _mp_ratio(f[0], s1, s2, w1m, w2m) ** f[2]
            return out

    def phase(self, shifts_y):
        # sum of y is invariant under the exchanges; y = -i (i y)
        tot = complex(sum(self.points(shifts_y)))
        return cmath.exp(2j * math.pi * self.lam * tot)

    def points(self, shifts_y):
        w1, w2 = self.p.omega.omega1, self.p.omega.omega2
        return np.array([-1j * (complex(b) + s[0] * w1 + s[1] * w2) for b, s in zip(self.bases, shifts_y)])


def _exchange_terms(pairs: Sequence[PairSpec], n: int):
    """Integer shift vectors of the ``4^k`` terms of the symmetrized sum."""
    k = len(pairs)
    for choice in itertools.product((0, 1), repeat=2 * k):
        shifts = [(0, 0)] * n
        for j, pr in enumerate(pairs):
            t1, t2 = choice[2 * j], choice[2 * j + 1]
            p1, q1 = (pr.q[0], pr.p[0]) if t1 else (pr.p[0], pr.q[0])
            p2, q2 = (pr.q[1], pr.p[1]) if t2 else (pr.p[1], pr.q[1])
            shifts[2 * j] = (p1, p2)
            shifts[2 * j + 1] = (q1, q2)
        yield choice, shifts


def direct_integrand(y: np.ndarray, z2n, lam: complex, p: ModelParams) -> complex:
    """``F(y, z) = e^{2 pi i lam sum y} prod K(y_i - z_a) prod_{i != j} mu(y_i - y_j)``."""
    y = np.asarray(y, dtype=complex)
    z = np.asarray(z2n, dtype=complex)
    val = 2j * math.pi * lam * y.sum() + log_kernel_product(z, y, p) + log_measure_product(y, p)
    return complex(np.exp(val))


def double_zero_check(
    pairs: Sequence[PairSpec],
    eps_list: Sequence[float],
    p: ModelParams,
    z2n: Sequence[float],
    lam: complex = 0.0,
    extra_y: Sequence[complex] = (),
    slope_tol: float = 0.05,
    strict: bool = True,
) -> Report:
    """Fit the vanishing order of the symmetrized integrand at coinciding pairs.

    For ``k = len(pairs)`` pairs the ``4^k`` exchanged terms are summed at
    each ``eps`` and the slope of ``log|sum|`` against ``log eps`` must be
    ``2k`` within a relative ``slope_tol``.  The slope of a single term is
    recorded as a control.  The integrand has ``n = 2k + len(extra_y)``
    variables and ``2n`` parameters ``z2n``.

    Raises
    ------
    SlopeMismatch
        When ``strict`` and the fitted slope misses the target.
    """
    k = len(pairs)
    n = 2 * k + len(extra_y)
    if len(z2n) != 2 * n:
        raise ValueError(f"need {2 * n} parameters for n = {n}")
    report = Report(
        "double_zero",
        {
            "k": k,
            "n": n,
            "eps": list(eps_list),
            "pairs": [{"a": pr.a, "p": list(pr.p), "q": list(pr.q)} for pr in pairs],
            "z2n": list(z2n),
            "extra_y": list(extra_y),
            "lam": lam,
            "omega": [p.omega.omega1, p.omega.omega2],
            "g": p.g,
        },
    )
    sums, singles = [], []
    consistency = 0.0
    for eps in eps_list:
        with mpmath.workdps(40):
            bases = []
            for pr in pairs:
                bases += [mpmath.mpc(pr.a) + mpmath.mpf(eps), mpmath.mpc(pr.a)]
            bases += [mpmath.mpc(1j * complex(v)) for v in extra_y]
        fac = _IntegrandFactors(bases, z2n, lam, p)
        total = mpmath.mpc(0)
        first = None
        for _, shifts in _exchange_terms(pairs, n):
            term = fac.ratio(shifts)
            total += term
            if first is None:
                first = (term, shifts)
        scale = cmath.exp(fac.log_base) * fac.phase(first[1])
        s_val = complex(total) * scale
        one = complex(first[0]) * scale
        # cross-check one term against the direct product of K and mu
        ref = direct_integrand(fac.points(first[1]), z2n, lam, p)
        consistency = max(consistency, abs(ref - one) / abs(ref))
        sums.append(abs(s_val))
        singles.append(abs(one))
        report.add_case(True, eps=eps, symmetrized=abs(s_val), single=abs(one), direct_vs_factored=abs(ref - one) / abs(ref))
    le = np.log(np.asarray(eps_list, dtype=float))
    slope = float(np.polyfit(le, np.log(sums), 1)[0])
    single_slope = float(np.polyfit(le, np.log(singles), 1)[0])
    target = 2.0 * k
    ok = abs(slope - target) <= slope_tol * target
    report.add_case(ok, part="slope", slope=slope, target=target, residual=abs(slope - target))
    report.add_case(consistency < 1e-8, part="factored_vs_direct", residual=consistency)
    report.config["single_term_slope"] = single_slope
    report.notes.append(f"single-term slope {single_slope:.3f} (the integrand is regular on the hyperplane)")
    if strict:
        report.raise_if_failed(SlopeMismatch, f"fitted slope {slope:.3f}, expected {target}")
    return report


def default_pairs(k: int, rng: np.random.Generator) -> List[PairSpec]:
    """Generic coincidence data for ``k`` pairs with nonzero period offsets."""
    out = []
    for j in range(k):
        a = complex(rng.uniform(0.1, 0.4), rng.uniform(-0.6, 0.6))
        pv = (int(rng.integers(1, 3)), int(rng.integers(1, 3)))
        out.append(PairSpec(a, pv, (0, 0)))
    return out
