"""Exact verification of the q-hypergeometric duality identity and its lemmas.

Two representations are used.

* Nonsymmetric q-Pochhammer symbols ``(z;q)_k`` evaluated directly on
  :class:`fractions.Fraction` samples (or on complex floats).  This is the
  canonical route for the duality identity itself.
* Symmetric brackets ``[z;q]_k = prod_j (q^{j/2} z^{1/2} - q^{-j/2} z^{-1/2})``.
  To keep them rational we sample *square roots* ``Q, T, U_i, V_a`` and set
  ``q = Q^2`` and so on.  Every square root of a monomial in ``q, t, u, v``
  is then a monomial in the roots, and each bracket factor has the form
  ``w - 1/w`` with ``w`` a root monomial.  Residues at simple poles are exact
  limits obtained by replacing each vanishing factor by its derivative.
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DenominatorZero, IdentityViolation, ZeroDenominator
from .kernels import ModelParams
from .reports import Report
from .special_functions import PrecisionPolicy, double_sine

# ---------------------------------------------------------------------------
# Pochhammer symbols
# ---------------------------------------------------------------------------


def q_pochhammer(z, q, k: int):
    """Nonsymmetric q-Pochhammer symbol ``(z;q)_k``.

    For ``k < 0`` the standard extension ``(z;q)_{-n} = prod_{j=1}^{n}
    1/(1 - q^{-j} z)`` is used, so that ``(z;q)_{-n} (q^{-n} z;q)_n = 1``.

    Examples
    --------
    >>> q_pochhammer(Fraction(2), Fraction(3), 2)
    Fraction(5, 1)
    >>> q_pochhammer(Fraction(2), Fraction(3), -1)
    Fraction(3, 1)

    Raises
    ------
    ZeroDenominator
        If a factor of a negative-index symbol vanishes.
    """
    one = z**0  # unit of the same number type as z
    out = one
    if k >= 0:
        qj = one
        for _ in range(k):
            out = out * (one - qj * z)
            qj = qj * q
        return out
    for j in range(1, -k + 1):
        fac = one - z / q**j
        if fac == 0:
            raise ZeroDenominator(f"(z;q)_{k}: factor 1 - q^-{j} z vanishes")
        out = out / fac
    return out


def sym_pochhammer(z: complex, q: complex, k: int) -> complex:
    """Symmetric bracket ``[z;q]_k`` in floating point (principal square roots)."""
    zs = np.sqrt(complex(z))
    qs = np.sqrt(complex(q))
    out = 1 + 0j
    if k >= 0:
        for j in range(k):
            out *= qs**j * zs - qs ** (-j) / zs
        return out
    for j in range(1, -k + 1):
        out /= qs ** (-j) * zs - qs**j / zs
    return out


def compositions(n: int, K: int) -> Iterator[Tuple[int, ...]]:
    """Tuples of ``n`` non-negative integers with sum ``K``, in decreasing
    lexicographic order.

    Examples
    --------
    >>> list(compositions(2, 2))
    [(2, 0), (1, 1), (0, 2)]
    """
    if n < 1 or K < 0:
        raise ValueError("need n >= 1 and K >= 0")
    if n == 1:
        yield (K,)
        return
    for first in range(K, -1, -1):
        for rest in compositions(n - 1, K - first):
            yield (first,) + rest


def hyp_pochhammer(x: complex, m: int, k: int, p: ModelParams) -> complex:
    """Hyperbolic Pochhammer symbol ``<x>_{m,k} = (-1)^{mk} S2(x)/S2(x + m w1 + k w2)``.

    Evaluated through the factorization ``<x>_{m,k} = <x>_{m,0} <x>_{0,k}``
    with ``<x>_{m,0} = prod_{s<m} 2 sin(pi(x + s w1)/w2)`` for ``m >= 0`` and
    the reciprocal product for ``m < 0``.
    """
    w1, w2 = p.omega.omega1, p.omega.omega2
    return _hyp_one(x, m, w1, w2) * _hyp_one(x, k, w2, w1)


def _hyp_one(x, m, a, b):
    out = 1 + 0j
    if m >= 0:
        for s in range(m):
            out *= 2 * np.sin(np.pi * (x + s * a) / b)
        return out
    for s in range(1, -m + 1):
        out /= 2 * np.sin(np.pi * (x - s * a) / b)
    return out


def hyp_pochhammer_s2(x: complex, m: int, k: int, p: ModelParams, pol: Optional[PrecisionPolicy] = None) -> complex:
    """``<x>_{m,k}`` straight from its definition as a ratio of double sines."""
    sign = -1 if (m * k) % 2 else 1
    a = double_sine(x, p.omega, pol)
    b = double_sine(x + m * p.omega.omega1 + k * p.omega.omega2, p.omega, pol)
    return complex(sign * a / b)


# ---------------------------------------------------------------------------
# Samples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HypSample:
    """Point ``(q, t, u, v)`` for the nonsymmetric duality identity."""

    q: object
    t: object
    u: Tuple
    v: Tuple

    @property
    def n(self) -> int:
        return len(self.u)

    def describe(self) -> Dict[str, object]:
        return {"q": str(self.q), "t": str(self.t), "u": [str(x) for x in self.u], "v": [str(x) for x in self.v]}


@dataclass(frozen=True)
class RootSample:
    """Square roots ``(Q, T, U, V)`` of a sample; ``q = Q^2`` etc."""

    Q: Fraction
    T: Fraction
    U: Tuple[Fraction, ...]
    V: Tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.U)

    def squared(self) -> HypSample:
        return HypSample(self.Q**2, self.T**2, tuple(x**2 for x in self.U), tuple(x**2 for x in self.V))

    def values(self) -> List[Fraction]:
        return [self.Q, self.T, *self.U, *self.V]

    def replace(self, U: Optional[Sequence] = None, V: Optional[Sequence] = None) -> "RootSample":
        return RootSample(self.Q, self.T, tuple(U) if U is not None else self.U, tuple(V) if V is not None else self.V)

    def involution(self) -> "RootSample":
        """``u_i -> 1/v_i``, ``v_i -> 1/u_i``."""
        return RootSample(self.Q, self.T, tuple(1 / x for x in self.V), tuple(1 / x for x in self.U))

    def describe(self) -> Dict[str, object]:
        return {"Q": str(self.Q), "T": str(self.T), "U": [str(x) for x in self.U], "V": [str(x) for x in self.V]}


def random_rational(rng: random.Random, bound: int = 64, avoid: Sequence = (0,)) -> Fraction:
    """Random nonzero rational with numerator and denominator bounded by ``bound``."""
    while True:
        val = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if val not in avoid:
            return val


def random_hyp_sample(rng: random.Random, n: int, bound: int = 64) -> HypSample:
    q = random_rational(rng, bound, avoid=(0, 1, -1))
    t = random_rational(rng, bound)
    u = tuple(random_rational(rng, bound) for _ in range(n))
    v = tuple(random_rational(rng, bound) for _ in range(n))
    return HypSample(q, t, u, v)


def random_root_sample(rng: random.Random, n: int, bound: int = 64) -> RootSample:
    Q = random_rational(rng, bound, avoid=(0, 1, -1))
    T = random_rational(rng, bound, avoid=(0, 1, -1))
    U = tuple(random_rational(rng, bound) for _ in range(n))
    V = tuple(random_rational(rng, bound) for _ in range(n))
    return RootSample(Q, T, U, V)


# ---------------------------------------------------------------------------
# The duality identity, nonsymmetric form
# ---------------------------------------------------------------------------


def _ratio(num_z, den_z, q, k: int, label: str):
    den = q_pochhammer(den_z, q, k)
    if den == 0:
        raise DenominatorZero(f"vanishing Pochhammer {label}", label)
    return q_pochhammer(num_z, q, k) / den


def theorem2_term(side: str, k: Sequence[int], s: HypSample):
    """One summand of the chosen side of the nonsymmetric identity.

    Parameters
    ----------
    side : {"left", "right"}
    k : sequence of int
        Composition indexing the summand.
    s : HypSample
    """
    q, t, u, v = s.q, s.t, s.u, s.v
    n = len(u)
    out = q**0
    for i in range(n):
        out = out * _ratio(q * t, q, q, k[i], f"(q;q)_{k[i]}")
    if side == "left":
        for i in range(n):
            for j in range(n):
                if i != j:
                    z = u[i] / u[j] / q ** k[j]
                    out = out * _ratio(z / t, z, q, k[i], f"(q^-k{j + 1} u{i + 1}/u{j + 1};q)_{k[i]}")
        for a in range(n):
            for j in range(n):
                z = u[j] / v[a]
                out = out * _ratio(t * z, z, q, k[j], f"(u{j + 1}/v{a + 1};q)_{k[j]}")
    elif side == "right":
        for a in range(n):
            for b in range(n):
                if a != b:
                    z = v[a] / v[b] / q ** k[a]
                    out = out * _ratio(z / t, z, q, k[b], f"(q^-k{a + 1} v{a + 1}/v{b + 1};q)_{k[b]}")
        for a in range(n):
            for j in range(n):
                z = u[j] / v[a]
                out = out * _ratio(t * z, z, q, k[a], f"(u{j + 1}/v{a + 1};q)_{k[a]}")
    else:
        raise ValueError("side must be 'left' or 'right'")
    return out


def theorem2_side(side: str, s: HypSample, K: int):
    """Sum of :func:`theorem2_term` over all compositions of ``K``.

    Raises
    ------
    DenominatorZero
        If the sample hits a denominator zero of this side.
    """
    total = s.q * 0
    for k in compositions(s.n, K):
        total = total + theorem2_term(side, k, s)
    return total


def _digest(value) -> str:
    return hashlib.sha256(str(value).encode()).hexdigest()[:16]


def verify_theorem2(n: int, K: int, trials: int, seed: int, strict: bool = True, bound: int = 64) -> Report:
    """Check the duality identity exactly at ``trials`` random rational samples.

    Samples that hit a denominator zero of either side are redrawn.

    Raises
    ------
    IdentityViolation
        If some sample gives different sides (only when ``strict``).
    """
    if n < 1 or K < 0:
        raise ValueError("need n >= 1 and K >= 0")
    rng = random.Random(f"theorem2:{seed}:{n}:{K}")
    report = Report("theorem2", {"n": n, "K": K, "trials": trials, "seed": seed, "bound": bound})
    start = time.perf_counter()
    redraws = 0
    for trial in range(trials):
        while True:
            s = random_hyp_sample(rng, n, bound)
            try:
                lhs = theorem2_side("left", s, K)
                rhs = theorem2_side("right", s, K)
                break
            except (DenominatorZero, ZeroDenominator):
                redraws += 1
        equal = lhs == rhs
        report.add_case(
            equal,
            trial=trial,
            sample=s.describe(),
            residual=0.0 if equal else 1.0,
            lhs_digest=_digest(lhs),
            rhs_digest=_digest(rhs),
            lhs_size=len(str(lhs)),
        )
    report.config["redraws"] = redraws
    report.timing["seconds"] = time.perf_counter() - start
    if strict:
        report.raise_if_failed(IdentityViolation, f"duality identity violated for n={n}, K={K}")
    return report


# ---------------------------------------------------------------------------
# Symmetric brackets in root variables
# ---------------------------------------------------------------------------


class RootSpace:
    """Index bookkeeping for monomials in ``Q, T, U_1..U_n, V_1..V_n``."""

    def __init__(self, n: int):
        self.n = n
        self.size = 2 + 2 * n

    def Q(self) -> int:
        return 0

    def T(self) -> int:
        return 1

    def U(self, i: int) -> int:
        return 2 + i

    def V(self, a: int) -> int:
        return 2 + self.n + a

    def mono(self, q: int = 0, t: int = 0, u: Optional[Dict[int, int]] = None, v: Optional[Dict[int, int]] = None) -> Tuple[int, ...]:
        """Root exponents of ``z^{1/2}`` for ``z = q^q t^t prod u^u prod v^v``."""
        e = [0] * self.size
        e[0] += q
        e[1] += t
        for i, c in (u or {}).items():
            e[2 + i] += c
        for a, c in (v or {}).items():
            e[2 + self.n + a] += c
        return tuple(e)


def _add(m1: Tuple[int, ...], m2: Tuple[int, ...], c: int = 1) -> Tuple[int, ...]:
    return tuple(a + c * b for a, b in zip(m1, m2))


@dataclass
class SymExpr:
    """``coef * roots^pre * prod (w - 1/w)^power`` over root monomials ``w``."""

    coef: Fraction
    pre: Tuple[int, ...]
    factors: List[Tuple[Tuple[int, ...], int]]

    def times(self, other: "SymExpr") -> "SymExpr":
        return SymExpr(self.coef * other.coef, _add(self.pre, other.pre), self.factors + other.factors)


def sym_bracket(space: RootSpace, z: Tuple[int, ...], k: int, power: int = 1) -> List[Tuple[Tuple[int, ...], int]]:
    """Factors of ``[z;q]_k^power``; ``z`` is the root monomial of ``z^{1/2}``.

    Negative ``k`` follows ``[z]_{-n} = 1/[q^{-n} z]_n``.
    """
    eq = space.mono(q=1)
    if k >= 0:
        return [(_add(z, eq, j), power) for j in range(k)]
    return [(_add(z, eq, -j), -power) for j in range(1, -k + 1)]


def _monomial_value(mono: Tuple[int, ...], vals: Sequence[Fraction]) -> Fraction:
    out = Fraction(1)
    for e, x in zip(mono, vals):
        if e:
            out *= x**e
    return out


def sym_value(expr: SymExpr, roots: RootSample) -> Fraction:
    """Exact value of a bracket expression at a root sample."""
    vals = roots.values()
    out = Fraction(expr.coef) * _monomial_value(expr.pre, vals)
    for mono, power in expr.factors:
        w = _monomial_value(mono, vals)
        f = w - 1 / w
        if f == 0:
            if power < 0:
                raise DenominatorZero(f"bracket factor with monomial {mono} vanishes", str(mono))
            return Fraction(0)
        out *= f**power
    return out


class HigherOrderPole(ArithmeticError):
    """Raised when an expected simple pole turns out to have higher order."""


def sym_residue(expr: SymExpr, roots: RootSample, var: int) -> Fraction:
    """Exact residue in the squared variable ``x = X^2`` of root index ``var``.

    ``roots`` must already sit on the pole.  Each vanishing factor ``w - 1/w``
    with ``w ~ X^e`` is replaced by its derivative ``e (w + 1/w) / (2 x)``.
    Returns 0 at regular points.

    Raises
    ------
    HigherOrderPole
        If the net order of vanishing is below ``-1``.
    """
    vals = roots.values()
    x = vals[var] ** 2
    out = Fraction(expr.coef) * _monomial_value(expr.pre, vals)
    order = 0
    for mono, power in expr.factors:
        w = _monomial_value(mono, vals)
        f = w - 1 / w
        if f == 0:
            e = mono[var]
            if e == 0:
                raise HigherOrderPole(f"factor {mono} vanishes identically along the residue variable")
            order += power
            out *= (Fraction(e) * (w + 1 / w) / (2 * x)) ** power
        else:
            out *= f**power
    if order >= 0:
        return Fraction(0)
    if order < -1:
        raise HigherOrderPole(f"pole of order {-order}")
    return out


def U_expr(space: RootSpace, k: Sequence[int]) -> SymExpr:
    """Summand ``U_k`` of the left side of the symmetric identity."""
    n = space.n
    facs: List = []
    for i in range(n):
        facs += sym_bracket(space, space.mono(q=1, t=1), k[i], 1)
        facs += sym_bracket(space, space.mono(q=1), k[i], -1)
    for i in range(n):
        for j in range(n):
            if i != j:
                facs += sym_bracket(space, space.mono(t=-1, q=-k[j], u={i: 1, j: -1}), k[i], 1)
                facs += sym_bracket(space, space.mono(q=-k[j], u={i: 1, j: -1}), k[i], -1)
    for a in range(n):
        for j in range(n):
            facs += sym_bracket(space, space.mono(t=1, u={j: 1}, v={a: -1}), k[j], 1)
            facs += sym_bracket(space, space.mono(u={j: 1}, v={a: -1}), k[j], -1)
    return SymExpr(Fraction(1), (0,) * space.size, facs)


def V_expr(space: RootSpace, k: Sequence[int]) -> SymExpr:
    """Summand ``V_k`` of the right side of the symmetric identity."""
    n = space.n
    facs: List = []
    for a in range(n):
        facs += sym_bracket(space, space.mono(q=1, t=1), k[a], 1)
        facs += sym_bracket(space, space.mono(q=1), k[a], -1)
    for a in range(n):
        for b in range(n):
            if a != b:
                facs += sym_bracket(space, space.mono(t=-1, q=-k[a], v={a: 1, b: -1}), k[b], 1)
                facs += sym_bracket(space, space.mono(q=-k[a], v={a: 1, b: -1}), k[b], -1)
    for a in range(n):
        for j in range(n):
            facs += sym_bracket(space, space.mono(t=1, u={j: 1}, v={a: -1}), k[a], 1)
            facs += sym_bracket(space, space.mono(u={j: 1}, v={a: -1}), k[a], -1)
    return SymExpr(Fraction(1), (0,) * space.size, facs)


def symmetric_side(side: str, roots: RootSample, K: int) -> Fraction:
    """Exact value of one side of the symmetric identity."""
    space = RootSpace(roots.n)
    build = U_expr if side == "left" else V_expr
    return sum((sym_value(build(space, k), roots) for k in compositions(roots.n, K)), Fraction(0))


# ---------------------------------------------------------------------------
# Regularity at same-group diagonals
# ---------------------------------------------------------------------------


def phi_map(k: Sequence[int], p: int) -> Tuple[int, ...]:
    """``(k1, k2, k') -> (k2 - p, k1 + p, k')``; the same formula serves both directions."""
    return (k[1] - p, k[0] + p) + tuple(k[2:])


def in_I(k: Sequence[int], p: int) -> bool:
    return k[0] >= k[1] + 1 - p and k[1] >= p


def in_II(k: Sequence[int], p: int) -> bool:
    return k[0] >= -p and k[1] >= k[0] + 1 + p


def _redraw_until_regular(rng: random.Random, n: int, place, probe) -> RootSample:
    for _ in range(1000):
        roots = place(random_root_sample(rng, n))
        try:
            probe(roots)
            return roots
        except (DenominatorZero, HigherOrderPole, ZeroDivisionError):
            continue
    raise RuntimeError("could not find a generic sample")


def verify_lemma_p1(n: int, K: int, p: int, roots: Optional[RootSample] = None, seed: int = 0, strict: bool = True) -> Report:
    """Residues at ``u1 = u2 q^p`` (and ``v2 = v1 q^p``) cancel in pairs.

    For each ``k`` in ``I_p`` the residues of ``U_k`` and ``U_{phi_p(k)}``
    are computed exactly and their sum must vanish; the same for ``V``.
    Compositions outside ``I_p`` and ``II_p`` must have zero residue.
    """
    if n < 2:
        raise ValueError("the lemma needs n >= 2")
    space = RootSpace(n)
    comps = list(compositions(n, K))
    report = Report("lemma_p1", {"n": n, "K": K, "p": p, "seed": seed})
    # combinatorial part: bijection between I_p and II_p
    set_I = [k for k in comps if in_I(k, p)]
    set_II = [k for k in comps if in_II(k, p)]
    images = sorted(phi_map(k, p) for k in set_I)
    back = all(phi_map(phi_map(k, p), p) == tuple(k) for k in set_II)
    report.add_case(images == sorted(set_II) and back, part="bijection", size=len(set_I), residual=0.0)

    def place_u(r: RootSample) -> RootSample:
        U = list(r.U)
        U[0] = U[1] * r.Q**p
        return r.replace(U=U)

    def place_v(r: RootSample) -> RootSample:
        V = list(r.V)
        V[1] = V[0] * r.Q**p
        return r.replace(V=V)

    rng = random.Random(f"lemma_p1:{seed}:{n}:{K}:{p}")
    for label, place, build, var in (
        ("U", place_u, U_expr, space.U(0)),
        ("V", place_v, V_expr, space.V(1)),
    ):
        def probe(r, build=build, var=var):
            for k in comps:
                sym_residue(build(space, k), r, var)

        pt = place(roots) if roots is not None else _redraw_until_regular(rng, n, place, probe)
        for k in comps:
            res_k = sym_residue(build(space, k), pt, var)
            if in_I(k, p):
                partner = phi_map(k, p)
                res_p = sym_residue(build(space, partner), pt, var)
                ok = res_k + res_p == 0 and res_k != 0
                report.add_case(ok, part=label, k=list(k), partner=list(partner), residue=str(res_k), residual=0.0 if ok else 1.0)
            elif not in_II(k, p):
                ok = res_k == 0
                report.add_case(ok, part=label, k=list(k), regular=True, residue=str(res_k), residual=0.0 if ok else 1.0)
        report.config[f"sample_{label}"] = pt.describe()
    if strict:
        report.raise_if_failed(IdentityViolation, f"residue cancellation failed for n={n}, K={K}, p={p}")
    return report


def verify_involution(n: int, K: int, seed: int = 0, strict: bool = True) -> Report:
    """``U_k`` evaluated at ``u -> 1/v, v -> 1/u`` equals ``V_k``."""
    space = RootSpace(n)
    rng = random.Random(f"involution:{seed}:{n}:{K}")
    report = Report("involution", {"n": n, "K": K, "seed": seed})
    for k in compositions(n, K):
        while True:
            r = random_root_sample(rng, n)
            try:
                a = sym_value(U_expr(space, k), r.involution())
                b = sym_value(V_expr(space, k), r)
                break
            except (DenominatorZero, ZeroDivisionError):
                continue
        report.add_case(a == b, k=list(k), residual=0.0 if a == b else 1.0)
    if strict:
        report.raise_if_failed(IdentityViolation, "involution does not exchange U and V")
    return report


# ---------------------------------------------------------------------------
# Residues at mixed diagonals
# ---------------------------------------------------------------------------


def phi_p_expr(space: RootSpace, p: int, printed: bool = False) -> SymExpr:
    """Prefactor of the mixed-diagonal recursion.

    ``(-1)^p [q^{1-p} t]_{2p}/([q]_p [q]_{p-1}) prod_j [t u_j/v_1]_p/[u_1/u_j]_p
    prod_b [t u_1/v_b]_p/[v_b/v_1]_p`` with products over ``j, b >= 2``.

    With ``printed=True`` the first bracket is ``[tq]_{2p}`` instead.  That
    variant does not satisfy the recursion for any ``p >= 1``; it is kept so
    that the discrepancy can be reported.
    """
    n = space.n
    start = space.mono(q=1, t=1) if printed else space.mono(q=1 - p, t=1)
    facs = sym_bracket(space, start, 2 * p, 1)
    facs += sym_bracket(space, space.mono(q=1), p, -1)
    facs += sym_bracket(space, space.mono(q=1), p - 1, -1)
    for j in range(1, n):
        facs += sym_bracket(space, space.mono(t=1, u={j: 1}, v={0: -1}), p, 1)
        facs += sym_bracket(space, space.mono(u={0: 1, j: -1}), p, -1)
    for b in range(1, n):
        facs += sym_bracket(space, space.mono(t=1, u={0: 1}, v={b: -1}), p, 1)
        facs += sym_bracket(space, space.mono(v={b: 1, 0: -1}), p, -1)
    return SymExpr(Fraction((-1) ** p), (0,) * space.size, facs)


def lemma_2p_sides(side: str, k: Sequence[int], p: int, roots: RootSample, printed: bool = False) -> Tuple[Fraction, Fraction, Fraction]:
    """Return ``(residue, phi_p, reduced)`` for the mixed-diagonal lemma.

    ``residue = Res_{v1 = q^{p-1} u1} (1/v1) X_k`` and
    ``reduced = X_{k1-p, k'}(q v1, u'; u1/q, v')`` with ``X = U`` (side
    ``"left"``) or ``X = V`` (side ``"right"``).  ``roots`` must satisfy
    ``V1 = Q^{p-1} U1``.
    """
    space = RootSpace(roots.n)
    build = U_expr if side == "left" else V_expr
    expr = build(space, k)
    inv_v1 = SymExpr(Fraction(1), space.mono(v={0: -2}), [])
    res = sym_residue(expr.times(inv_v1), roots, space.V(0))
    phi = sym_value(phi_p_expr(space, p, printed), roots)
    U = list(roots.U)
    V = list(roots.V)
    new = roots.replace(U=[roots.Q * V[0]] + U[1:], V=[U[0] / roots.Q] + V[1:])
    reduced = sym_value(build(space, (k[0] - p,) + tuple(k[1:])), new)
    return res, phi, reduced


def verify_lemma_2p(n: int, k1: int, p: int, kprime: Sequence[int] = (), roots: Optional[RootSample] = None, seed: int = 0, strict: bool = True) -> Report:
    """Check ``Res (1/v1) X_k = phi_p * X_{k1-p,k'}(q v1, u'; u1/q, v')`` exactly.

    Each case also records the ratio obtained with the ``[tq]_{2p}``
    variant of the prefactor, which differs from 1 for every ``p >= 1``.
    """
    if not 1 <= p <= k1:
        raise ValueError("need 1 <= p <= k1")
    kprime = tuple(kprime) if kprime else (0,) * (n - 1)
    if len(kprime) != n - 1:
        raise ValueError("k' must have n - 1 entries")
    k = (k1,) + kprime
    report = Report("lemma_2p", {"n": n, "k": list(k), "p": p, "seed": seed})
    rng = random.Random(f"lemma_2p:{seed}:{n}:{k}:{p}")

    def place(r: RootSample) -> RootSample:
        V = list(r.V)
        V[0] = r.Q ** (p - 1) * r.U[0]
        return r.replace(V=V)

    def probe(r):
        for side in ("left", "right"):
            lemma_2p_sides(side, k, p, r)

    pt = place(roots) if roots is not None else _redraw_until_regular(rng, n, place, probe)
    report.config["sample"] = pt.describe()
    for side in ("left", "right"):
        res, phi, reduced = lemma_2p_sides(side, k, p, pt)
        rhs = phi * reduced
        ok = res == rhs
        ratio = str(res / rhs) if rhs != 0 else ("0/0" if res == 0 else "inf")
        _, phi_pr, _ = lemma_2p_sides(side, k, p, pt, printed=True)
        alt = phi_pr * reduced
        alt_ratio = str(res / alt) if alt != 0 else "inf"
        report.add_case(ok, side=side, residue=str(res), rhs=str(rhs), ratio=ratio, printed_prefactor_ratio=alt_ratio, residual=0.0 if ok else 1.0)
    if strict:
        report.raise_if_failed(IdentityViolation, f"mixed-diagonal recursion failed for k={k}, p={p}")
    return report


# ---------------------------------------------------------------------------
# Pochhammer transformation rules
# ---------------------------------------------------------------------------


def bracket_value(roots_qu: Tuple[Fraction, Fraction], zq: int, zu: int, k: int) -> Fraction:
    """Exact ``[q^{zq} u^{zu}; q]_k`` from the roots ``(Q, U)`` of ``q`` and ``u``."""
    Q, U = roots_qu
    space = RootSpace(1)
    r = RootSample(Q, Fraction(2), (U,), (Fraction(3),))
    expr = SymExpr(Fraction(1), (0,) * space.size, sym_bracket(space, space.mono(q=zq, u={0: zu}), k))
    return sym_value(expr, r)


def bracket_value_nonsym(roots_qu: Tuple[Fraction, Fraction], zq: int, zu: int, k: int) -> Fraction:
    """Same as :func:`bracket_value` but through ``(z;q)_k`` and the tracked prefactor
    ``[z;q]_k = (-1)^k z^{-k/2} q^{-k(k-1)/4} (z;q)_k``."""
    Q, U = roots_qu
    q = Q * Q
    if k < 0:
        inner = bracket_value_nonsym(roots_qu, zq + k, zu, -k)
        if inner == 0:
            raise ZeroDenominator("negative-index bracket has a vanishing factor")
        return 1 / inner
    z = q**zq * (U * U) ** zu
    z_half = Q**zq * U**zu
    pref = Fraction((-1) ** k) / z_half**k / Q ** (k * (k - 1) // 2)
    if (k * (k - 1)) % 2:
        raise AssertionError("k(k-1) is always even")
    return pref * q_pochhammer(z, q, k)


def pochhammer_rule_sides(roots_qu, m: int, n: int, p: int, nonsym: bool = False):
    """Both sides of the two bracket transformation rules.

    Returns ``((lhs_a, rhs_a), (lhs_b, rhs_b))`` for
    ``[q^p u]_m [u]_n = [q^p u]_{n-p} [u]_{m+p}`` and
    ``[qu]_m [q^{-(m+p)}/u]_n = (-1)^p [qu]_{m+p} [q^{-m}/u]_{n-p}``.
    """
    br = bracket_value_nonsym if nonsym else bracket_value
    a_l = br(roots_qu, p, 1, m) * br(roots_qu, 0, 1, n)
    a_r = br(roots_qu, p, 1, n - p) * br(roots_qu, 0, 1, m + p)
    b_l = br(roots_qu, 1, 1, m) * br(roots_qu, -(m + p), -1, n)
    b_r = (-1) ** p * br(roots_qu, 1, 1, m + p) * br(roots_qu, -m, -1, n - p)
    return (a_l, a_r), (b_l, b_r)


def verify_pochhammer_lemmas(roots_qu: Tuple[Fraction, Fraction], m: int, n: int, p: int, strict: bool = True) -> Report:
    """Check both bracket rules exactly, in symmetric and tracked nonsymmetric form.

    The shift rule holds for all integers ``m, n, p``.  The reflection rule
    holds for ``p >= 0`` (all ``m, n``) with the negative-index convention
    ``[z]_{-n} = 1/[q^{-n} z]_n``; for ``p < 0`` it generally fails, so it is
    evaluated and recorded there but not asserted.
    """
    report = Report("pochhammer_rules", {"Q": str(roots_qu[0]), "U": str(roots_qu[1]), "m": m, "n": n, "p": p})
    for nonsym in (False, True):
        form = "nonsymmetric" if nonsym else "symmetric"
        (a_l, a_r), (b_l, b_r) = pochhammer_rule_sides(roots_qu, m, n, p, nonsym)
        report.add_case(a_l == a_r, rule="shift", form=form, residual=0.0 if a_l == a_r else 1.0)
        if p >= 0:
            report.add_case(b_l == b_r, rule="reflect", form=form, residual=0.0 if b_l == b_r else 1.0)
        else:
            report.notes.append(f"reflect rule ({form}) at p={p} not asserted; holds: {b_l == b_r}")
    if strict:
        report.raise_if_failed(IdentityViolation, f"Pochhammer rule failed at m={m}, n={n}, p={p}")
    return report
