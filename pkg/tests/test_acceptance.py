"""Acceptance criteria at desk scale.

Each criterion prints one line ``criterion N: PASS|FAIL <detail>``.  Run with
``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

import math
import time

import pytest

from baxterq import cli
from baxterq.difference_ops import gaussian
from baxterq.kernels import ModelParams
from baxterq.quadrature import (
    IntegrationPlan,
    eigenfunction_check_n2,
    verify_commutativity,
    verify_MQ_commutation,
    verify_series_vs_quadrature,
)
from baxterq.residue_series import SeriesOrder, default_pairs, double_zero_check, verify_LR_equality
from baxterq.special_functions import Periods
from baxterq.suites import (
    verify_kernel_identity,
    verify_s2_identities,
    verify_s2_representations,
    verify_s2_residues,
)

import numpy as np

SEED = 0


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def c1():
    rep, sec = _timed(lambda: verify_s2_identities(SEED, 100, Periods(1.0, math.sqrt(2)), 1e-10))
    ok = rep.passed and sec < 10
    return ok, f"max residual {rep.worst():.2e} (< 1e-10), {sec:.1f} s (< 10 s)"


def c2():
    rep = verify_s2_representations(SEED, 50, Periods(1.0, 1.0 + 1.0j), 1e-9)
    res = {c["identity"]: c["residual"] for c in rep.cases}
    return rep.passed, "integral vs product {:.2e}, midpoint {:.2e}, sqrt2 value {:.2e}".format(
        res["integral_vs_product"], res["midpoint_value"], res["half_at_unit_periods"]
    )


def c3():
    rep = verify_s2_residues(Periods(1.0, math.sqrt(2)), 2, 1e-8)
    return rep.passed, f"{len(rep.cases)} residues, max relative deviation {rep.worst():.2e} (< 1e-8)"


def c4():
    rep, sec = _timed(lambda: verify_kernel_identity(SEED, 50, 3, 1e-11))
    ok = rep.passed and sec < 5
    return ok, f"max residual {rep.worst():.2e} (< 1e-11), {sec:.1f} s (< 5 s)"


def c5():
    reps, sec = _timed(lambda: cli.suite_theorem2(cli.RunConfig("verify-theorem2", "desk", SEED)))
    bad = [r.config for r in reps if not r.passed]
    ok = not bad and sec < 120
    return ok, f"{len(reps)} (n, K) blocks exact, {len(bad)} failing, {sec:.1f} s (< 120 s)"


def c6():
    reps = cli.suite_lemmas_q(cli.RunConfig("verify-lemmas-q", "desk", SEED, scenario={"n": 2, "K": 3}))
    bad = [r.check for r in reps if not r.passed]
    return not bad, f"{len(reps)} exact checks, {len(bad)} failing"


def c7():
    p = ModelParams.from_numbers(1.0, math.sqrt(2), 0.7)
    rng = np.random.default_rng(SEED)
    worst, ok = 0.0, True
    for n in (1, 2):
        z = [float(round(v, 6)) for v in rng.uniform(-0.5, 0.5, 2 * n)]
        rep = verify_LR_equality(n, 2, 2, z, p, rtol=1e-8, strict=False)
        ok = ok and rep.passed
        worst = max(worst, rep.worst())
    return ok, f"worst block residual {worst:.2e} (< 1e-8)"


def c8():
    p = ModelParams.from_numbers(1.0, math.sqrt(2), 0.7)
    rng = np.random.default_rng(SEED)
    eps = [1e-2, 1e-3, 1e-4]
    slopes = {}
    for k in (1, 2):
        pairs = default_pairs(k, rng)
        z = [float(round(v, 6)) for v in rng.uniform(-0.5, 0.5, 4 * k)]
        rep = double_zero_check(pairs, eps, p, z, lam=-0.3, strict=False)
        slopes[k] = [c for c in rep.cases if c.get("part") == "slope"][0]["slope"]
    ok = abs(slopes[1] - 2.0) < 0.1 and abs(slopes[2] - 4.0) < 0.2
    return ok, f"slopes {slopes[1]:.3f} (2 +- 0.1) and {slopes[2]:.3f} (4 +- 0.2)"


def c9():
    p = ModelParams.from_numbers(1.0, 1.0, 0.5)
    lams = [0.2, -0.2, 0.5, -0.5, 0.8]
    t0 = time.perf_counter()
    w1 = max(verify_commutativity([0.3, -0.2], l, p, IntegrationPlan(tol=1e-10), strict=False).worst() for l in lams)
    w2 = max(
        verify_commutativity([0.3, -0.2, 0.1, 0.45], l, p, IntegrationPlan.coarse(), strict=False).worst() for l in lams
    )
    sec = time.perf_counter() - t0
    ok = w1 < 1e-6 and w2 < 1e-4 and sec < 300
    return ok, f"n=1 {w1:.2e} (< 1e-6), n=2 {w2:.2e} (< 1e-4), {sec:.1f} s (< 300 s)"


def c10():
    p = ModelParams.from_numbers(1.0, math.sqrt(2), 0.5)
    worst = max(
        verify_series_vs_quadrature([0.3, -0.2], lam, p, SeriesOrder(8, 8), IntegrationPlan(tol=1e-11), strict=False).worst()
        for lam in (-1.0, -1.5)
    )
    return worst < 1e-6, f"max relative residual {worst:.2e} (< 1e-6)"


def c11():
    p = ModelParams.from_numbers(1.0, 1.0, 0.5)
    plan = IntegrationPlan(tol=1e-10, decay_radius=9.0)
    r1 = verify_MQ_commutation(1, gaussian([0.1], 1.0), [0.3], 0.2, p, plan, strict=False).worst()
    f2 = gaussian([0.1, -0.2], 1.0, [0.3, -0.1])
    r2 = max(verify_MQ_commutation(r, f2, [0.3, -0.2], 0.2, p, plan, strict=False).worst() for r in (1, 2))
    return r1 < 1e-6 and r2 < 1e-5, f"n=1 {r1:.2e} (< 1e-6), n=2 {r2:.2e} (< 1e-5)"


def c12():
    p = ModelParams.from_numbers(1.0, 1.0, 0.5)
    rep, sec = _timed(lambda: eigenfunction_check_n2(0.1, -0.2, [0.4, -0.3], p, rtol=1e-5, strict=False))
    ok = rep.passed and sec < 120
    res = ", ".join(f"{c['residual']:.2e}" for c in rep.cases)
    return ok, f"residuals {res} (< 1e-5), {sec:.1f} s (< 120 s)"


def c13(tmpdir):
    paths = [f"{tmpdir}/run_a.json", f"{tmpdir}/run_b.json"]
    codes = [cli.main(["all", "--preset", "desk", "--seed", str(SEED), "--no-timing", "-o", path]) for path in paths]
    with open(paths[0], "rb") as fa, open(paths[1], "rb") as fb:
        same = fa.read() == fb.read()
    return same, f"identical reports: {same}, exit codes {codes}"


CRITERIA = {1: c1, 2: c2, 3: c3, 4: c4, 5: c5, 6: c6, 7: c7, 8: c8, 9: c9, 10: c10, 11: c11, 12: c12}


def _line(num, ok, detail):
    return f"criterion {num}: {'PASS' if ok else 'FAIL'} {detail}"


class TestAcceptance:
    @pytest.mark.parametrize("num", sorted(CRITERIA))
    def test_criterion(self, num, capsys):
        ok, detail = CRITERIA[num]()
        with capsys.disabled():
            print("\n" + _line(num, ok, detail))
        assert ok, detail

    def test_criterion_13(self, tmp_path, capsys):
        ok, detail = c13(str(tmp_path))
        with capsys.disabled():
            print("\n" + _line(13, ok, detail))
        assert ok, detail


if __name__ == "__main__":
    import tempfile

    for num in sorted(CRITERIA):
        print(_line(num, *CRITERIA[num]()))
    with tempfile.TemporaryDirectory() as tmp:
        print(_line(13, *c13(tmp)))
