"""Command line driver: every verification as a subcommand with a JSON report.

Exit status is 0 when every check passes, 1 when some check fails and 2 for
configuration errors.  Settings come from an optional INI file (``--config``)
and are overridden by flags.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from .difference_ops import gaussian
from .errors import BaxterQError, ConfigError, PoleHit, VerificationError
from .kernels import ModelParams
from .q_identities import (
    verify_involution,
    verify_lemma_2p,
    verify_lemma_p1,
    verify_pochhammer_lemmas,
    verify_theorem2,
)
from .quadrature import (
    IntegrationPlan,
    eigenfunction_check_n2,
    verify_commutativity,
    verify_MQ_commutation,
    verify_series_vs_quadrature,
)
from .reports import SCHEMA_VERSION, Report, jsonable
from .residue_series import SeriesOrder, default_pairs, double_zero_check, verify_LR_equality
from .special_functions import Periods, double_sine
from .suites import verify_kernel_identity, verify_s2_identities, verify_s2_representations, verify_s2_residues

PRESETS = ("desk", "quick")
SQRT2 = math.sqrt(2)


@dataclass
class RunConfig:
    """Resolved settings of one run.

    ``params`` holds ``omega1``, ``omega2`` and ``g`` when the user fixed them;
    otherwise each check uses its own default parameter set.
    """

    command: str
    preset: str = "desk"
    seed: int = 0
    params: Dict[str, complex] = field(default_factory=dict)
    tolerances: Dict[str, float] = field(default_factory=dict)
    scenario: Dict[str, Any] = field(default_factory=dict)

    def model(self, omega1: complex, omega2: complex, g: complex) -> ModelParams:
        return ModelParams.from_numbers(
            self.params.get("omega1", omega1), self.params.get("omega2", omega2), self.params.get("g", g)
        )

    def get(self, key: str, default: Any) -> Any:
        return self.scenario.get(key, default)

    def tol(self, key: str, default: float) -> float:
        return float(self.tolerances.get(key, default))

    def echo(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "preset": self.preset,
            "seed": self.seed,
            "params": jsonable(self.params),
            "tolerances": jsonable(self.tolerances),
            "scenario": jsonable(self.scenario),
        }


# ---------------------------------------------------------------------------
# Parsing helpers
# ---------------------------------------------------------------------------


def parse_complex(text: str, field_name: str = "value") -> complex:
    """``"1.5"``, ``"1.5,0.2"`` (real, imag) or Python syntax ``"1.5+0.2j"``."""
    s = str(text).strip()
    try:
        if "," in s:
            re_s, im_s = s.split(",", 1)
            return complex(float(re_s), float(im_s))
        return complex(s.replace(" ", ""))
    except ValueError as exc:
        raise ConfigError(f"cannot read {s!r} as a complex number", field_name) from exc


def parse_grid(text: str, field_name: str = "grid") -> np.ndarray:
    """``start:stop:step`` inclusive of ``stop`` (up to rounding)."""
    try:
        a, b, h = (float(t) for t in text.split(":"))
    except ValueError as exc:
        raise ConfigError(f"grid must be start:stop:step, got {text!r}", field_name) from exc
    if h <= 0 or b < a:
        raise ConfigError("grid needs step > 0 and stop >= start", field_name)
    count = int(math.floor((b - a) / h + 1e-9)) + 1
    return np.round(a + h * np.arange(count), 12)


def _scalar(text: str) -> Any:
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        return text


def load_config_file(path: str) -> Dict[str, Dict[str, str]]:
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}", "config") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file: {exc}", "config") from exc
    known = {"params", "run", "tolerances", "scenario"}
    for sec in parser.sections():
        if sec not in known:
            raise ConfigError(f"unknown section [{sec}]", sec)
    return {sec: dict(parser[sec]) for sec in parser.sections()}


def resolve_config(args: argparse.Namespace) -> RunConfig:
    data = load_config_file(args.config) if getattr(args, "config", None) else {}
    run = data.get("run", {})
    cfg = RunConfig(command=args.command)
    preset = args.preset or run.get("preset", "desk")
    if preset not in PRESETS:
        raise ConfigError(f"preset must be one of {PRESETS}", "run.preset")
    cfg.preset = preset
    seed = args.seed if args.seed is not None else run.get("seed", 0)
    try:
        cfg.seed = int(seed)
    except ValueError as exc:
        raise ConfigError("seed must be an integer", "run.seed") from exc
    for key, val in data.get("params", {}).items():
        if key not in ("omega1", "omega2", "g"):
            raise ConfigError(f"unknown parameter {key!r}", f"params.{key}")
        cfg.params[key] = parse_complex(val, f"params.{key}")
    for key, val in data.get("tolerances", {}).items():
        try:
            cfg.tolerances[key] = float(val)
        except ValueError as exc:
            raise ConfigError("tolerances must be real numbers", f"tolerances.{key}") from exc
    for key, val in data.get("scenario", {}).items():
        cfg.scenario[key] = _scalar(val)
    if getattr(args, "omega", None):
        cfg.params["omega1"] = parse_complex(args.omega[0], "omega")
        cfg.params["omega2"] = parse_complex(args.omega[1], "omega")
    if getattr(args, "g", None) is not None:
        cfg.params["g"] = parse_complex(args.g, "g")
    for key in ("n", "K", "M", "trials", "points", "samples", "r", "grid", "imag", "csv"):
        val = getattr(args, key, None)
        if val is not None:
            cfg.scenario[key] = val
    for key in ("lam", "lam1", "lam2"):
        val = getattr(args, key, None)
        if val is not None:
            cfg.scenario[key] = [parse_complex(v, key) for v in val] if isinstance(val, list) else parse_complex(val, key)
    for p in ("omega1", "omega2"):
        if p in cfg.params and cfg.params[p].real <= 0:
            raise ConfigError("periods need positive real parts", f"params.{p}")
    return cfg


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def _capture(fn: Callable[[], Report], name: str) -> Report:
    """Run a check; turn exceptions into a failed report instead of aborting the run."""
    try:
        return fn()
    except VerificationError as exc:
        if isinstance(exc.report, Report):
            return exc.report
        rep = Report(name)
        rep.add_case(False, error=type(exc).__name__, message=str(exc))
        return rep
    except BaxterQError as exc:
        rep = Report(name)
        rep.add_case(False, error=type(exc).__name__, message=str(exc))
        return rep


def suite_s2(cfg: RunConfig) -> List[Report]:
    pts = int(cfg.get("points", 100))
    omega = Periods(cfg.params.get("omega1", 1.0), cfg.params.get("omega2", SQRT2))
    return [
        _capture(lambda: verify_s2_identities(cfg.seed, pts, omega, cfg.tol("s2_identities", 1e-10)), "s2_identities"),
        _capture(lambda: verify_s2_representations(cfg.seed, min(pts, 50), Periods(1.0, 1.0 + 1.0j), cfg.tol("s2_representations", 1e-9)), "s2_representations"),
        _capture(lambda: verify_s2_residues(omega, 2, cfg.tol("s2_residues", 1e-8)), "s2_residues"),
    ]


def suite_kernel_identity(cfg: RunConfig) -> List[Report]:
    n_max = int(cfg.get("n", 3 if cfg.preset == "desk" else 1))
    samples = int(cfg.get("samples", 50))
    return [_capture(lambda: verify_kernel_identity(cfg.seed, samples, n_max, cfg.tol("kernel_identity", 1e-11)), "kernel_identity")]


def suite_theorem2(cfg: RunConfig) -> List[Report]:
    trials = int(cfg.get("trials", 20))
    if "n" in cfg.scenario or "K" in cfg.scenario:
        ns = [int(cfg.get("n", 2))]
        Ks = [int(cfg.get("K", 3))]
    else:
        ns = [1, 2, 3] if cfg.preset == "desk" else [1]
        Ks = list(range(0, 5))
    out = []
    for n in ns:
        for K in Ks:
            out.append(_capture(lambda: verify_theorem2(n, K, trials, cfg.seed, strict=False), "theorem2"))
    return out


def suite_lemmas_q(cfg: RunConfig) -> List[Report]:
    n = int(cfg.get("n", 2))
    Kmax = int(cfg.get("K", 3))
    out = []
    for K in range(Kmax + 1):
        for p in range(-K - 1, K + 2):
            out.append(_capture(lambda: verify_lemma_p1(n, K, p, seed=cfg.seed, strict=False), "lemma_p1"))
        out.append(_capture(lambda: verify_involution(n, K, seed=cfg.seed, strict=False), "involution"))
    if n == 2:
        for k1 in range(1, Kmax + 1):
            for kp in range(0, Kmax - k1 + 1):
                for p in range(1, k1 + 1):
                    out.append(_capture(lambda: verify_lemma_2p(2, k1, p, (kp,), seed=cfg.seed, strict=False), "lemma_2p"))
    roots = (Fraction(3, 2), Fraction(5, 7))
    for m in range(-2, 3):
        for nn in range(-2, 3):
            for p in range(-2, 3):
                out.append(_capture(lambda: verify_pochhammer_lemmas(roots, m, nn, p, strict=False), "pochhammer_rules"))
    return out


def _generic_reals(rng: np.random.Generator, count: int) -> List[float]:
    return [float(round(v, 6)) for v in rng.uniform(-0.5, 0.5, count)]


def suite_residue_series(cfg: RunConfig) -> List[Report]:
    p = cfg.model(1.0, SQRT2, 0.7)
    M = int(cfg.get("M", 2))
    K = int(cfg.get("K", 2))
    ns = [int(cfg.get("n", 0))] if "n" in cfg.scenario else ([1, 2] if cfg.preset == "desk" else [1])
    rng = np.random.default_rng(cfg.seed)
    out = []
    for n in ns:
        z = _generic_reals(rng, 2 * n)
        out.append(_capture(lambda: verify_LR_equality(n, M, K, z, p, rtol=cfg.tol("residue_LR", 1e-8), strict=False), "residue_LR_equality"))
    if cfg.preset == "desk":
        eps = [1e-2, 1e-3, 1e-4]
        for k in (1, 2):
            pairs = default_pairs(k, rng)
            z = _generic_reals(rng, 4 * k)
            out.append(_capture(lambda: double_zero_check(pairs, eps, p, z, lam=-0.3, strict=False), "double_zero"))
    return out


def suite_series_quadrature(cfg: RunConfig) -> List[Report]:
    p = cfg.model(1.0, SQRT2, 0.5)
    lams = cfg.get("lam", [-1.0, -1.5])
    lams = lams if isinstance(lams, list) else [lams]
    z = [0.3, -0.2]
    return [
        _capture(lambda: verify_series_vs_quadrature(z, lam, p, SeriesOrder(8, 8), IntegrationPlan(tol=1e-11), rtol=cfg.tol("series_quadrature", 1e-6), strict=False), "series_vs_quadrature")
        for lam in lams
    ]


def suite_q_commutativity(cfg: RunConfig) -> List[Report]:
    p = cfg.model(1.0, 1.0, 0.5)
    lams = cfg.get("lam", [0.2, -0.2, 0.5, -0.5, 0.8])
    lams = lams if isinstance(lams, list) else [lams]
    ns = [int(cfg.get("n", 0))] if "n" in cfg.scenario else ([1, 2] if cfg.preset == "desk" else [1])
    out = []
    for n in ns:
        z = [0.3, -0.2] if n == 1 else [0.3, -0.2, 0.1, 0.45]
        plan = IntegrationPlan(tol=1e-10) if n == 1 else IntegrationPlan.coarse()
        rtol = cfg.tol("q_commutativity_n1", 1e-6) if n == 1 else cfg.tol("q_commutativity_n2", 1e-4)
        for lam in lams:
            out.append(_capture(lambda: verify_commutativity(z, lam, p, plan, rtol=rtol, strict=False), "q_commutativity"))
    return out


def suite_mq_commutation(cfg: RunConfig) -> List[Report]:
    p = cfg.model(1.0, 1.0, 0.5)
    lam = cfg.get("lam", 0.2)
    lam = lam[0] if isinstance(lam, list) else lam
    plan = IntegrationPlan(tol=1e-10, decay_radius=9.0)
    cases = [(1, [0.3], 1)]
    if cfg.preset == "desk" or cfg.get("n", 1) == 2:
        cases += [(2, [0.3, -0.2], 1), (2, [0.3, -0.2], 2)]
    if "n" in cfg.scenario:
        cases = [c for c in cases if c[0] == int(cfg.get("n", 1))]
    if "r" in cfg.scenario:
        cases = [c for c in cases if c[2] == int(cfg.get("r", 1))]
    out = []
    for n, z, r in cases:
        f = gaussian([0.1], 1.0) if n == 1 else gaussian([0.1, -0.2], 1.0, [0.3, -0.1])
        rtol = cfg.tol("mq_n1", 1e-6) if n == 1 else cfg.tol("mq_n2", 1e-5)
        out.append(_capture(lambda: verify_MQ_commutation(r, f, z, lam, p, plan, rtol=rtol, strict=False), "mq_commutation"))
    return out


def suite_eigenfunction(cfg: RunConfig) -> List[Report]:
    p = cfg.model(1.0, 1.0, 0.5)
    lam1 = cfg.get("lam1", 0.1)
    lam2 = cfg.get("lam2", -0.2)
    x = [0.4, -0.3]
    return [_capture(lambda: eigenfunction_check_n2(lam1, lam2, x, p, rtol=cfg.tol("eigenfunction", 1e-5), strict=False), "eigenfunction_n2")]


SUITES: Dict[str, Callable[[RunConfig], List[Report]]] = {
    "verify-s2": suite_s2,
    "verify-kernel-identity": suite_kernel_identity,
    "verify-theorem2": suite_theorem2,
    "verify-lemmas-q": suite_lemmas_q,
    "verify-residue-series": lambda cfg: suite_residue_series(cfg) + suite_series_quadrature(cfg),
    "verify-q-commutativity": suite_q_commutativity,
    "verify-mq-commutation": suite_mq_commutation,
    "verify-eigenfunction-n2": suite_eigenfunction,
}

ALL_ORDER = [
    "verify-s2",
    "verify-kernel-identity",
    "verify-theorem2",
    "verify-lemmas-q",
    "verify-residue-series",
    "verify-q-commutativity",
    "verify-mq-commutation",
    "verify-eigenfunction-n2",
]


def run(cfg: RunConfig) -> Dict[str, Any]:
    """Run the checks of ``cfg.command`` and assemble the report document."""
    t0 = time.perf_counter()
    if cfg.command == "all":
        names = list(ALL_ORDER)
        if cfg.preset == "quick":
            names = [n for n in names if n not in ("verify-lemmas-q", "verify-eigenfunction-n2")]
    else:
        names = [cfg.command]
    groups = []
    for name in names:
        t1 = time.perf_counter()
        reps = SUITES[name](cfg)
        groups.append({"suite": name, "reports": reps, "seconds": time.perf_counter() - t1})
    ok = all(r.passed for g in groups for r in g["reports"])
    return {"config": cfg, "groups": groups, "pass": ok, "seconds": time.perf_counter() - t0}


def render(result: Dict[str, Any], with_timing: bool = True) -> str:
    doc: Dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "config": result["config"].echo(),
        "suites": [
            {
                "suite": g["suite"],
                "pass": all(r.passed for r in g["reports"]),
                "reports": [r.to_dict(with_timing) for r in g["reports"]],
                **({"timing": {"seconds": g["seconds"]}} if with_timing else {}),
            }
            for g in result["groups"]
        ],
        "pass": result["pass"],
    }
    if with_timing:
        doc["timing"] = {"seconds": result["seconds"]}
    return json.dumps(jsonable(doc), indent=2, sort_keys=True) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".baxterq-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# eval-s2
# ---------------------------------------------------------------------------

CSV_COLUMNS = ["re_z", "im_z", "re_s2", "im_s2", "abs_s2", "status", "reflection_residual"]


def eval_s2_rows(omega: Periods, re_grid: np.ndarray, im_grid: np.ndarray) -> List[List[Any]]:
    """One row per grid point; poles and zeros are flagged in ``status``."""
    rows = []
    for y in im_grid:
        for x in re_grid:
            z = complex(float(x), float(y))
            try:
                s = complex(double_sine(z, omega))
            except PoleHit:
                rows.append([x, y, "", "", "inf", "pole", ""])
                continue
            if s == 0:
                rows.append([x, y, 0.0, 0.0, 0.0, "zero", ""])
                continue
            refl = abs(s * complex(double_sine(omega.total - z, omega)) - 1)
            rows.append([x, y, repr(s.real), repr(s.imag), repr(abs(s)), "ok", repr(refl)])
    return rows


def command_eval_s2(cfg: RunConfig, csv_path: Optional[str]) -> int:
    omega = Periods(cfg.params.get("omega1", 1.0), cfg.params.get("omega2", 1.0))
    re_grid = parse_grid(str(cfg.get("grid", "-2:2:0.1")))
    im_grid = parse_grid(str(cfg.get("imag", "0:0:1")), "imag")
    rows = eval_s2_rows(omega, re_grid, im_grid)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(rows)
    if csv_path:
        write_atomic(csv_path, buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


# ---------------------------------------------------------------------------
# Argument parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="baxterq", description="Verification harness for double sine identities and Baxter Q-operators.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="INI file with [params], [run], [tolerances], [scenario]")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--preset", choices=PRESETS)
        sp.add_argument("--omega", nargs=2, metavar="RE,IM", help="the two periods")
        sp.add_argument("--g", help="coupling, RE or RE,IM")
        sp.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
        sp.add_argument("--no-timing", action="store_true", help="omit timing fields from the report")
        return sp

    sp = common(sub.add_parser("eval-s2", help="evaluate S2 on a grid and write CSV"))
    sp.add_argument("--grid", help="real parts start:stop:step")
    sp.add_argument("--imag", help="imaginary parts start:stop:step (default 0)")
    sp.add_argument("--csv", help="CSV output path (default stdout)")

    sp = common(sub.add_parser("verify-s2", help="double sine identity suite"))
    sp.add_argument("--points", type=int)
    sp = common(sub.add_parser("verify-kernel-identity", help="trigonometric kernel identity"))
    sp.add_argument("--n", type=int, help="largest n")
    sp.add_argument("--samples", type=int)
    sp = common(sub.add_parser("verify-theorem2", help="exact duality identity"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--K", type=int)
    sp.add_argument("--trials", type=int)
    sp = common(sub.add_parser("verify-lemmas-q", help="residue cancellation, recursion and bracket rules"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--K", type=int)
    sp = common(sub.add_parser("verify-residue-series", help="block equality, double zeros, series against quadrature"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--M", type=int)
    sp.add_argument("--K", type=int)
    sp.add_argument("--lam", nargs="+")
    sp = common(sub.add_parser("verify-q-commutativity", help="Q(lam) against its reflection"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--lam", nargs="+")
    sp = common(sub.add_parser("verify-mq-commutation", help="difference operators commute with Q"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--lam", nargs=1)
    sp = common(sub.add_parser("verify-eigenfunction-n2", help="eigenrelations of the two-particle wave function"))
    sp.add_argument("--lam1")
    sp.add_argument("--lam2")
    common(sub.add_parser("all", help="full suite"))
    return parser


def _join_ranges(argv: Sequence[str]) -> List[str]:
    """Protect values with a leading minus (``-2:2:0.1``, ``-1,0``) that
    argparse would otherwise read as new options."""
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("--grid", "--imag", "--g"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        elif tok == "--omega":
            out.append(tok)
            for _ in range(2):
                nxt = next(it, None)
                if nxt is None:
                    break
                # a leading space hides the minus; parse_complex strips it
                out.append(" " + nxt if nxt.startswith("-") and nxt[1:2].isdigit() else nxt)
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_ranges(sys.argv[1:] if argv is None else argv))
    try:
        cfg = resolve_config(args)
        if args.command == "eval-s2":
            return command_eval_s2(cfg, getattr(args, "csv", None))
        result = run(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    text = render(result, with_timing=not args.no_timing)
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return 0 if result["pass"] else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
