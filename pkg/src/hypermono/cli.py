"""Command-line entry point: figure data, single computations and verification.

Examples::

    hypermono fig2 --grid 1e-2:1e3:41 --out fig2.csv
    hypermono epsilon --A 18.8495559 --k 2
    hypermono renorm --C 1e-6
    hypermono density --surface mc --C 1 --coord time --weight natural --grid 1.5:20:32
    hypermono verify --suite all
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import __version__
from . import profile as prof
from .errors import HypermonoError
from .models import CoordFn, SPoint
from .monotone import density_curve, unweighted_curve, verdict
from .renorm import FIG2_COLUMNS, ar_mc, fig2_data, renorm_report
from .sphere import FIG3_COLUMNS, VERONESE_POINT, EpsQuery, epsilon_of_area, fig3_data
from .surfaces import (clifford_torus, disc_at_distance, geodesic_cone, great_subsphere, mc_annulus,
                       veronese, veronese_map)
from .tables import fmt, to_csv, to_json
from .weights import Weight

COMMANDS = ("fig1a", "fig1b", "fig2", "fig3", "profile", "density", "renorm", "epsilon", "verify")
FORMATS = ("csv", "json")
COORDS = ("time", "space", "null", "sphere")
SURFACES = ("disc", "mc", "cone", "subsphere", "clifford", "veronese")

# complete default parameter set per command
DEFAULTS: dict[str, dict] = {
    "fig1a": {"C": "0.25,1,4"},
    "fig1b": {"C": None, "target": 2.0 * math.pi / 3.0},
    "fig2": {"grid": "1e-2:1e3:41"},
    "fig3": {"grid": f"{4 * math.pi!r}:{40 * math.pi!r}:181"},
    "profile": {"C": 1.0, "ambient": "hyperbolic", "r_max": 10.0},
    "density": {"surface": "disc", "C": 1.0, "d": 0.0, "beta": 1.0, "coord": "time",
                "weight": "natural", "h0": None, "c": None, "a": "optimal", "grid": None},
    "renorm": {"C": 1.0, "coord": "time"},
    "epsilon": {"A": 6.0 * math.pi, "k": 2, "m": 1.0},
    "verify": {"suite": "all"},
}
COMMON = ("out", "format")


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    output: str | None = None
    format: str = "csv"


# parsing

def parse_grid(text: str) -> tuple[float, float, int]:
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must be lo:hi:n, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad grid {text!r}: {exc}") from None
    if not (hi > lo and n >= 2):
        raise ConfigError(f"grid needs hi > lo and n >= 2, got {text!r}")
    return lo, hi, n


def parse_floats(text) -> list[float]:
    if isinstance(text, (int, float)):
        return [float(text)]
    if isinstance(text, list):
        return [float(x) for x in text]
    try:
        return [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad number list {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hypermono", description="Weighted monotonicity toolkit for minimal surfaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    S = argparse.SUPPRESS

    def common(sp):
        sp.add_argument("--out", default=S, help="output path (default stdout)")
        sp.add_argument("--format", choices=FORMATS, default=S)
        sp.add_argument("--config", default=S, help="JSON file with parameters")
        return sp

    sp = common(sub.add_parser("fig1a", help="hyperbolic profile curves"))
    sp.add_argument("--C", default=S, help="comma separated list of C values")
    sp = common(sub.add_parser("fig1b", help="spherical profile sweeping a given angle"))
    sp.add_argument("--C", type=float, default=S, help="use this C instead of solving for the angle")
    sp.add_argument("--target", type=float, default=S, help="target sweep angle")
    sp = common(sub.add_parser("fig2", help="area and perimeter terms of the Hopf annuli"))
    sp.add_argument("--grid", default=S, help="lo:hi:n, log spaced C values")
    sp = common(sub.add_parser("fig3", help="epsilon(A, 2) with the Veronese point"))
    sp.add_argument("--grid", default=S, help="lo:hi:n, linearly spaced areas")
    sp = common(sub.add_parser("profile", help="one profile curve"))
    sp.add_argument("--C", type=float, default=S)
    sp.add_argument("--ambient", choices=prof.AMBIENTS, default=S)
    sp.add_argument("--r-max", dest="r_max", type=float, default=S)
    sp = common(sub.add_parser("density", help="density curve and verdict"))
    sp.add_argument("--surface", choices=SURFACES, default=S)
    sp.add_argument("--C", type=float, default=S, help="annulus parameter")
    sp.add_argument("--d", type=float, default=S, help="disc distance from the origin")
    sp.add_argument("--beta", type=float, default=S, help="cone opening angle")
    sp.add_argument("--coord", choices=COORDS, default=S)
    sp.add_argument("--weight", default=S,
                    help="natural, uniform, pow_xi:E, pow_xi_plus_one:E or unweighted")
    sp.add_argument("--h0", type=float, default=S)
    sp.add_argument("--c", type=float, default=S)
    sp.add_argument("--a", default=S, help="lower bound for the unweighted density ('optimal')")
    sp.add_argument("--grid", default=S, help="lo:hi:n")
    sp = common(sub.add_parser("renorm", help="renormalised area of the Hopf annulus"))
    sp.add_argument("--C", type=float, default=S)
    sp.add_argument("--coord", choices=("time", "space", "null"), default=S)
    sp = common(sub.add_parser("epsilon", help="antipodalness threshold for a given area"))
    sp.add_argument("--A", type=float, default=S)
    sp.add_argument("--k", type=int, default=S)
    sp.add_argument("--m", type=float, default=S)
    sp = common(sub.add_parser("verify", help="run invariant suites and acceptance checks"))
    sp.add_argument("--suite", default=S)
    return p


def resolve(argv) -> RunConfig:
    """Merge flags over the config file over defaults."""
    ns = vars(build_parser().parse_args(argv))
    cmd = ns.pop("command")
    merged = dict(DEFAULTS[cmd])
    merged.update({"out": None, "format": "csv"})
    path = ns.pop("config", None)
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path!r}: {exc}") from None
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
        if doc.pop("command", cmd) != cmd:
            raise ConfigError("config is for a different command")
        unknown = sorted(set(doc) - set(merged))
        if unknown:
            raise ConfigError(f"unknown config keys for {cmd}: {unknown}")
        merged.update(doc)
    merged.update(ns)
    if merged["format"] not in FORMATS:
        raise ConfigError(f"format must be one of {FORMATS}")
    out, fmt_ = merged.pop("out"), merged.pop("format")
    return RunConfig(cmd, merged, out, fmt_)


# commands

def _table(columns: dict, cfg: RunConfig, meta: dict | None = None, comments=None) -> str:
    if cfg.format == "json":
        return to_json(columns, meta)
    lines = list(comments or [])
    if meta:
        lines.insert(0, json.dumps(meta, sort_keys=True))
    return to_csv(columns, lines)


def _stack(tables: list[dict]) -> dict:
    names = list(tables[0])
    return {n: np.concatenate([np.asarray(t[n], dtype=float) for t in tables]) for n in names}


def _profile_table(curve: prof.ProfileCurve) -> dict:
    cols = {"C": np.full(curve.s.size, curve.C)}
    cols.update(curve.columns())
    return cols


def cmd_fig1a(cfg: RunConfig) -> str:
    Cs = sorted(parse_floats(cfg.params["C"]))
    curves = [prof.integrate_profile(C, prof.HYPERBOLIC) for C in Cs]
    return _table(_stack([_profile_table(c) for c in curves]), cfg)


def cmd_fig1b(cfg: RunConfig) -> str:
    C = cfg.params["C"]
    target = float(cfg.params["target"])
    if C is None:
        lo, hi = prof.sweep_angle_integral(1e-8), prof.sweep_angle_integral(1.0 - 1e-9)
        if not lo < target < hi:
            raise ConfigError(f"target angle must lie in ({lo}, {hi})")
        C = brentq(lambda c: prof.sweep_angle_integral(c) - target, 1e-8, 1.0 - 1e-9, xtol=1e-14)
    curve = prof.integrate_profile(float(C), prof.SPHERICAL)
    meta = {"C": float(C), "sweep_angle": prof.sweep_angle(curve)}
    return _table(_profile_table(curve), cfg, meta)


def cmd_fig2(cfg: RunConfig) -> str:
    lo, hi, n = parse_grid(cfg.params["grid"])
    if lo <= 0:
        raise ConfigError("C grid must be positive")
    rows = sorted(fig2_data(np.geomspace(lo, hi, n)))
    cols = {name: [r[i] for r in rows] for i, name in enumerate(FIG2_COLUMNS)}
    return _table(cols, cfg)


def cmd_fig3(cfg: RunConfig) -> str:
    lo, hi, n = parse_grid(cfg.params["grid"])
    rows = fig3_data(np.linspace(lo, hi, n))
    cols = {name: [r[i] for r in rows] for i, name in enumerate(FIG3_COLUMNS)}
    A, eps = VERONESE_POINT
    if cfg.format == "json":
        return to_json(cols, {"veronese": {"A": A, "epsilon": eps}})
    return to_csv(cols, [f"veronese,{fmt(A)},{fmt(eps)}"])


def cmd_profile(cfg: RunConfig) -> str:
    p = cfg.params
    curve = prof.integrate_profile(float(p["C"]), p["ambient"], r_max=float(p["r_max"]))
    return _table(_profile_table(curve), cfg)


def _density_setup(p: dict):
    kind, coord = p["surface"], p["coord"]
    if kind == "disc":
        s = disc_at_distance(float(p["d"]))
        fs = {"time": CoordFn.time(n=3), "space": CoordFn.space([0, 1, 0, 0]),
              "null": CoordFn.null([-1, 0, 0], n=3)}
    elif kind == "cone":
        s = geodesic_cone(float(p["beta"]))
        fs = {"time": CoordFn.time(n=3)}
    elif kind == "mc":
        s = mc_annulus(float(p["C"]))
        b = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)
        fs = {"time": CoordFn.time(n=4), "space": CoordFn.space_from_plane(1.5, b),
              "null": CoordFn.null(b, n=4)}
    elif kind == "subsphere":
        s = great_subsphere()
        fs = {"sphere": CoordFn.sphere_height(SPoint(np.array([0.0, 0.0, 0.0, 1.0])))}
    elif kind == "clifford":
        s = clifford_torus()
        fs = {"sphere": CoordFn.sphere_height(SPoint(np.array([1.0, 0.0, 0.0, 0.0])))}
    else:
        s = veronese()
        fs = {"sphere": CoordFn.sphere_height(SPoint(veronese_map(np.array([0.0, 0.0, 1.0]))))}
    if coord not in fs:
        raise ConfigError(f"coordinate {coord!r} is not available for surface {kind!r}; "
                          f"choose from {sorted(fs)}")
    return s, fs[coord]


def _weight(p: dict, f: CoordFn) -> Weight | None:
    spec = str(p["weight"])
    lo = {"time": 1.0, "sphere": 0.0}.get(f.kind, 0.0)
    h0 = lo if p["h0"] is None else float(p["h0"])
    name, _, arg = spec.partition(":")
    if name == "unweighted":
        return None
    if name == "natural":
        return Weight.natural(h0, 1.0 if p["c"] is None else float(p["c"]))
    c = 0.0 if p["c"] is None else float(p["c"])
    if name == "uniform":
        return Weight.uniform(h0, c)
    if name in ("pow_xi", "pow_xi_plus_one"):
        try:
            e = float(arg)
        except ValueError:
            raise ConfigError(f"weight {spec!r} needs an exponent, e.g. {name}:-2") from None
        return Weight.pow_xi(e, h0, c) if name == "pow_xi" else Weight.pow_xi_plus_one(e, h0, c)
    raise ConfigError(f"unknown weight {spec!r}")


def cmd_density(cfg: RunConfig) -> str:
    p = cfg.params
    s, f = _density_setup(p)
    w = _weight(p, f)
    a = p["a"]
    if a != "optimal":
        try:
            a = float(a)
        except ValueError:
            raise ConfigError(f"a must be a number or 'optimal', got {a!r}") from None
    grid = None
    if p["grid"] is not None:
        lo, hi, n = parse_grid(p["grid"])
        grid = np.linspace(lo, hi, n) if f.kind == "sphere" or lo <= 0 else np.geomspace(lo, hi, n)
    if w is None:
        curve = unweighted_curve(s, f, a, grid)
    else:
        if grid is None:
            raise ConfigError("weighted densities need --grid")
        curve = density_curve(s, f, w, grid)
    v = verdict(curve)
    meta = dict(curve.header())
    meta["surface"] = s.kind
    if curve.label:
        meta["label"] = curve.label
    if v.witness is not None:
        meta["witness"] = list(v.witness)
    return _table(curve.columns(), cfg, meta)


def cmd_renorm(cfg: RunConfig) -> str:
    C = float(cfg.params["C"])
    coord = cfg.params["coord"]
    A_R = ar_mc(C)
    b = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)
    f = {"time": CoordFn.time(n=4), "space": CoordFn.space_from_plane(1.5, b),
         "null": CoordFn.null(b, n=4)}[coord]
    rep = renorm_report(mc_annulus(C), f, A_R)
    cols = {"C": [C], "A_R": [A_R], "a": [rep.a], "boundary_length": [rep.boundary_length],
            "slack": [rep.slack]}
    return _table(cols, cfg, {"coord": coord})


def cmd_epsilon(cfg: RunConfig) -> str:
    p = cfg.params
    A, k, m = float(p["A"]), int(p["k"]), float(p["m"])
    eps = epsilon_of_area(EpsQuery(A, k, m))
    return _table({"A": [A], "k": [k], "m": [m], "epsilon": [eps]}, cfg)


def cmd_verify(cfg: RunConfig) -> tuple[str, bool]:
    from .verify import REGISTRY, SUITES, run_suite

    suite = cfg.params["suite"]
    if suite != "all" and suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {('all',) + SUITES}")
    if any(not REGISTRY[s] for s in SUITES):
        raise RuntimeError("a registered suite is empty")
    results = run_suite(suite)
    ok = all(r.passed for r in results)
    if cfg.format == "json":
        doc = {"passed": ok, "results": [
            {"suite": r.suite, "name": r.name, "passed": r.passed, "detail": r.detail} for r in results]}
        return json.dumps(doc, indent=1) + "\n", ok
    width = max(len(r.name) for r in results)
    lines = [f"{'suite':<10} {'check':<{width}} result  detail"]
    for r in results:
        lines.append(f"{r.suite:<10} {r.name:<{width}} {'PASS' if r.passed else 'FAIL':<6}  {r.detail}")
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return "\n".join(lines) + "\n", ok


HANDLERS = {
    "fig1a": cmd_fig1a, "fig1b": cmd_fig1b, "fig2": cmd_fig2, "fig3": cmd_fig3,
    "profile": cmd_profile, "density": cmd_density, "renorm": cmd_renorm, "epsilon": cmd_epsilon,
}


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def run(cfg: RunConfig) -> int:
    ok = True
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            if cfg.command == "verify":
                text, ok = cmd_verify(cfg)
            else:
                text = HANDLERS[cfg.command](cfg)
    except ConfigError as exc:
        return _fail("config", str(exc), 2)
    except (HypermonoError, ValueError, TypeError) as exc:
        return _fail(type(exc).__name__, str(exc), 2)
    _emit(text, cfg.output)
    if not ok:
        return _fail("verification", "one or more checks failed", 1)
    return 0


def main(argv=None) -> int:
    try:
        cfg = resolve(sys.argv[1:] if argv is None else argv)
    except ConfigError as exc:
        return _fail("config", str(exc), 2)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
