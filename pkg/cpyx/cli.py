# -*- coding: utf-8 -*-
"""
Command-line front end.

    cpx <command> --config <path> [--out <dir>] [--strict] [--suite <name>]

Commands: basis, fekete, leja, cheb, tau, delta, extremal, robin, validate.
Each command writes <command>.json (inputs echoed, values, diagnostics) and its
CSV tables into the output directory. Exit codes: 0 success, 1 computation
error (error.json written), 2 invalid configuration, 3 non-converged solves
under --strict, or failed acceptance checks for validate (1).

Configuration file (JSON):
{
  "body": [a, b],
  "set": {"kind": "torus", "r1": 1.0, "r2": 1.0, "m": 32}
       | {"kind": "reinhardt", "profile": [[r1, r2], ...], "m": 16}
       | {"kind": "point_cloud", "path": "cloud.csv"},
  "degrees": [1, 2, 4],
  "count": 10,                       (leja, default N_n of the largest degree)
  "alpha": [j, k], "k": 3,           (cheb; without alpha the whole family is tabulated)
  "directions": [0.25, 0.5],         (tau, default 16-node midpoint rule)
  "quadrature": 16,                  (delta)
  "family": {"kind": "chebyshev", "n_max": 6},   (extremal, robin)
  "grid": {"count": 200, "rmin": 1.1, "rmax": 4.0, "seed": 0},
  "boundary_m": 16,
  "zeta": [1.0, 1.0],
  "lambda_ladder": [1000.0, 1000000.0],
  "tol": 1e-10, "max_iter": 1000,
  "output": {"directory": "cpx_out"},
  "validate": {"m": 32, "refine": true, "tolerances": {"delta-cross": 0.1}, ...}
}
"""

import argparse
import datetime
import json
import math
import sys
import warnings
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np
import pandas as pd
from tabulate import tabulate

import cpyx
from cpyx.cpoly import evaluate_logabs
from cpyx.domain import DiscreteMeasure, build_boundary_grid, build_point_cloud, build_reinhardt, build_torus
from cpyx.extremal import (chebyshev_family, circled_identity_check, delta_zaharjuta, h_c, l2_monic_family,
                           lagrange_family, monomial_family, orthonormal_family, polydisk_reference, robin_direct,
                           robin_envelope, upper_envelope)
from cpyx.inout import basis_frame, basis_summary, node_set_dict, read_point_cloud, write_frame, write_json
from cpyx.lattice import HypotenuseDirection, MultiIndex, TriangleBody, deg_c, enumerate_basis, midpoint_rule
from cpyx.minimax import chebyshev_monic, kappa_n, tau_directions
from cpyx.nodes import delta_estimate_vdm, greedy_fekete, leja_lebesgue_profile, leja_sequence
from cpyx.testing import DEFAULT_TOLERANCES, ValidationSettings, run_acceptance, stand_off_grid, suite_names
from cpyx.utils import ConfigError, CpyxError, prefix, red_prefix, suffix, vprint, yellow_prefix

COMMANDS = ("basis", "fekete", "leja", "cheb", "tau", "delta", "extremal", "robin", "validate")
FAMILY_KINDS = ("chebyshev", "monomial", "l2-orthonormal", "l2-monic", "lagrange-difference")
SET_KINDS = ("torus", "reinhardt", "point_cloud")
DEFAULT_OUT = "cpx_out"

#%% Configuration


def locate_key(text, path):
    """
    1-based line of the config text where the key path (e.g. ['set', 'm']) appears,
    searching each component after the line of the previous one. None if not found.
    """
    if text is None:
        return None
    lines = text.splitlines()
    start, found = 0, None
    for key in path:
        for i in range(start, len(lines)):
            if f'"{key}"' in lines[i]:
                found, start = i + 1, i
                break
        else:
            return found
    return found


@dataclass
class RunConfig:
    """
    Validated run configuration. to_dict / from_dict round-trip exactly.
    """
    body: list = field(default_factory=lambda: [1, 1])
    set: dict = field(default_factory=lambda: {"kind": "torus", "r1": 1.0, "r2": 1.0, "m": 32})
    degrees: list = field(default_factory=lambda: [1, 2, 4])
    count: int = None
    alpha: list = None
    k: int = None
    directions: list = None
    quadrature: int = 16
    family: dict = None
    grid: dict = field(default_factory=lambda: {"count": 200, "rmin": 1.1, "rmax": 4.0, "seed": 0})
    boundary_m: int = 16
    zeta: list = field(default_factory=lambda: [1.0, 1.0])
    lambda_ladder: list = field(default_factory=lambda: [1e3, 1e6])
    tol: float = 1e-10
    max_iter: int = 1000
    output: dict = field(default_factory=lambda: {"directory": DEFAULT_OUT})
    validate: dict = field(default_factory=dict)
    source: str = field(default=None, repr=False, compare=False)
    base: str = field(default=None, repr=False, compare=False)

    #%% construction

    @classmethod
    def from_file(cls, path):
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"Configuration file {path} does not exist.")
        text = path.read_text()
        try:
            d = json.loads(text)
        except json.JSONDecodeError as err:
            raise ConfigError(f"Configuration file {path} is not valid JSON: {err.msg}", line=err.lineno)
        if not isinstance(d, dict):
            raise ConfigError(f"Configuration file {path} must hold a JSON object.", line=1)
        return cls.from_dict(d, text=text, base=path.parent)

    @classmethod
    def from_dict(cls, d, text=None, base=None):
        known = {f.name for f in fields(cls)} - {"source", "base"}
        for key in d:
            if key not in known:
                raise ConfigError(f"Unknown configuration key '{key}'.", key=key, line=locate_key(text, [key]))
        config = cls(**{k: v for k, v in d.items()})
        config.source = text
        config.base = None if base is None else str(base)
        config._validate()
        return config

    def to_dict(self):
        d = asdict(self)
        d.pop("source")
        d.pop("base")
        return d

    def _fail(self, message, *path):
        raise ConfigError(message, key=".".join(path), line=locate_key(self.source, list(path)))

    def _validate(self):
        for key, kind in (("set", dict), ("grid", dict), ("output", dict), ("validate", dict),
                          ("degrees", list), ("lambda_ladder", list), ("zeta", list)):
            if not isinstance(getattr(self, key), kind):
                self._fail(f"'{key}' must be a JSON {'object' if kind is dict else 'array'}.", key)
        if not (isinstance(self.body, (list, tuple)) and len(self.body) == 2
                and all(isinstance(x, int) and not isinstance(x, bool) for x in self.body)):
            self._fail("'body' must be a pair of integers [a, b].", "body")
        a, b = self.body
        if a < 1 or b < 1 or math.gcd(a, b) != 1:
            self._fail(f"'body' must hold coprime positive integers, got [{a}, {b}].", "body")
        self.body = [a, b]

        if not isinstance(self.set, dict) or self.set.get("kind") not in SET_KINDS:
            self._fail(f"'set.kind' must be one of {SET_KINDS}.", "set", "kind")
        kind = self.set["kind"]
        if kind in ("torus", "reinhardt"):
            m = self.set.get("m")
            if not isinstance(m, int) or m < 4:
                self._fail("'set.m' must be an integer >= 4.", "set", "m")
        if kind == "torus":
            for key in ("r1", "r2"):
                r = self.set.get(key, 1.0)
                if not isinstance(r, (int, float)) or not r > 0:
                    self._fail(f"'set.{key}' must be a positive radius.", "set", key)
        if kind == "reinhardt":
            profile = self.set.get("profile")
            if not profile or not all(isinstance(p, (list, tuple)) and len(p) == 2 and min(p) >= 0 for p in profile):
                self._fail("'set.profile' must be a nonempty list of nonnegative [r1, r2] pairs.", "set", "profile")
        if kind == "point_cloud":
            if not isinstance(self.set.get("path"), str):
                self._fail("'set.path' must name a CSV or JSON point cloud.", "set", "path")

        if not isinstance(self.degrees, list) or not all(isinstance(n, int) and n >= 0 for n in self.degrees):
            self._fail("'degrees' must be a list of nonnegative integers.", "degrees")
        if sorted(set(self.degrees)) != self.degrees:
            self._fail("'degrees' must be strictly ascending.", "degrees")
        for key in ("count", "k", "quadrature", "boundary_m", "max_iter"):
            v = getattr(self, key)
            if v is not None and (not isinstance(v, int) or v < (4 if key == "boundary_m" else 1)):
                self._fail(f"'{key}' must be a positive integer" + (" >= 4." if key == "boundary_m" else "."), key)
        if self.alpha is not None and not (isinstance(self.alpha, list) and len(self.alpha) == 2
                                           and all(isinstance(x, int) and x >= 0 for x in self.alpha)):
            self._fail("'alpha' must be a pair of nonnegative integers.", "alpha")
        if self.directions is not None and not all(isinstance(t, (int, float)) and 0 < t < 1 for t in self.directions):
            self._fail("'directions' must lie in the open interval (0, 1).", "directions")
        if not isinstance(self.tol, (int, float)) or not self.tol > 0:
            self._fail("'tol' must be positive.", "tol")
        if self.family is not None:
            if not isinstance(self.family, dict) or self.family.get("kind") not in FAMILY_KINDS:
                self._fail(f"'family.kind' must be one of {FAMILY_KINDS}.", "family", "kind")
            n_max = self.family.get("n_max")
            if not isinstance(n_max, int) or n_max < 0:
                self._fail("'family.n_max' must be a nonnegative integer.", "family", "n_max")
        if not all(isinstance(x, (int, float)) and x >= 10 for x in self.lambda_ladder) \
                or sorted(self.lambda_ladder) != list(self.lambda_ladder):
            self._fail("'lambda_ladder' must be ascending with entries >= 10.", "lambda_ladder")
        for key in ("count", "rmin", "rmax"):
            if key in self.grid and not (isinstance(self.grid[key], (int, float)) and self.grid[key] > 0):
                self._fail(f"'grid.{key}' must be positive.", "grid", key)

        known = {f.name for f in fields(ValidationSettings)}
        for key, v in self.validate.items():
            if key not in known:
                self._fail(f"Unknown validation setting '{key}'.", "validate", key)
        if "m" in self.validate and (not isinstance(self.validate["m"], int) or self.validate["m"] < 4):
            self._fail("'validate.m' must be an integer >= 4.", "validate", "m")
        for key, v in self.validate.get("tolerances", {}).items():
            if key not in DEFAULT_TOLERANCES:
                self._fail(f"Unknown tolerance '{key}'.", "validate", "tolerances", key)
            if not isinstance(v, (int, float)) or not v > 0:
                self._fail(f"Tolerance '{key}' must be positive.", "validate", "tolerances", key)

    #%% derived objects

    @property
    def triangle(self):
        return TriangleBody(*self.body)

    @property
    def out_directory(self):
        return Path(self.output.get("directory", DEFAULT_OUT))

    def require(self, key, command):
        value = getattr(self, key)
        if value is None or (hasattr(value, "__len__") and len(value) == 0):
            self._fail(f"Command '{command}' needs a non-empty '{key}' entry.", key)
        return value

    def build_set(self):
        """
        Returns:
        - K: DiscreteCompact
        - weights: float array or None (point clouds only)
        """
        s = self.set
        if s["kind"] == "torus":
            return build_torus(float(s.get("r1", 1.0)), float(s.get("r2", 1.0)), s["m"]), None
        if s["kind"] == "reinhardt":
            return build_reinhardt(s["profile"], s["m"]), None
        path = Path(s["path"])
        if self.base is not None and not path.is_absolute():
            path = Path(self.base) / path
        try:
            points, weights = read_point_cloud(path)
        except (OSError, ValueError) as err:
            self._fail(f"Cannot read point cloud: {err}", "set", "path")
        K = build_point_cloud(points, label=s.get("label", Path(path).name))
        if weights is not None and len(weights) != len(K):
            warnings.warn("Point cloud had repeated points; its weights are ignored.")
            weights = None
        return K, weights

    def settings(self):
        return ValidationSettings(**self.validate)


#%% Commands


def _result(command, config, **values):
    return {"command": command, "version": cpyx.__version__, "inputs": config.to_dict(),
            "timestamp": datetime.datetime.now().isoformat(timespec="seconds"), **values}


def cmd_basis(config, out):
    body = config.triangle
    summaries = []
    for n in config.require("degrees", "basis"):
        basis = enumerate_basis(body, n)
        write_frame(out / f"basis_n{n}.csv", basis_frame(basis))
        summaries.append(basis_summary(basis))
    write_json(out / "basis.json", _result("basis", config, bases=summaries))
    return True


def cmd_fekete(config, out):
    body, (K, _) = config.triangle, config.build_set()
    rows = []
    for n in config.require("degrees", "fekete"):
        fek = greedy_fekete(body, K, n)
        write_frame(out / f"fekete_n{n}.csv", fek.to_frame())
        rows.append({"n": n, "N_n": fek.basis.N_n, "l_n": fek.basis.l_n, "log_vdm": fek.log_vdm,
                     "log_vdm_recomputed": fek.recompute_log_vdm(),
                     "delta": float(np.exp(fek.log_vdm / fek.basis.l_n)) if fek.basis.l_n else None})
    write_json(out / "fekete.json", _result("fekete", config, set=K.metadata(), fekete=rows))
    return True


def cmd_leja(config, out):
    body, (K, _) = config.triangle, config.build_set()
    degrees = config.require("degrees", "leja")
    count = config.count or enumerate_basis(body, degrees[-1]).N_n
    leja = leja_sequence(body, K, count)
    write_frame(out / "leja.csv", leja.to_frame())
    covered = [d for d in degrees if enumerate_basis(body, d).N_n <= count]
    if covered:
        profile = leja_lebesgue_profile(body, K, covered)
    else:
        profile = pd.DataFrame(columns=["degree", "N", "lebesgue", "growth"])
    write_frame(out / "leja_lebesgue.csv", profile)
    write_json(out / "leja.json", _result("leja", config, set=K.metadata(), leja=node_set_dict(leja),
                                          lebesgue=profile.to_dict(orient="records")))
    return True


def cmd_cheb(config, out):
    body, (K, _) = config.triangle, config.build_set()
    if config.alpha is not None:
        alpha = MultiIndex(*config.alpha)
        k = config.k if config.k is not None else deg_c(body, alpha)
        if k < 1 or deg_c(body, alpha) > k:
            config._fail(f"'k' must be >= max(1, deg_C(alpha)) = {max(1, deg_c(body, alpha))}.", "k")
        t, value, sol = chebyshev_monic(body, k, alpha, K, config.tol, config.max_iter, True)
        write_json(out / "cheb.json", _result("cheb", config, set=K.metadata(), polynomial=t.to_dict(),
                                              value=value, root=value ** (1.0 / k), solver=sol.to_dict()))
        return sol.converged
    n = config.require("degrees", "cheb")[-1]
    fam = chebyshev_family(body, K, n, tol=config.tol, max_iter=config.max_iter)
    table = pd.DataFrame([{"j": m.polynomial.leading_index.j, "k": m.polynomial.leading_index.k,
                           "deg_c": m.degree_used, "value": m.norm_on_K,
                           "root": m.norm_on_K ** (1.0 / m.degree_used) if m.degree_used else 1.0} for m in fam])
    write_frame(out / "cheb.csv", table)
    write_json(out / "cheb.json", _result("cheb", config, set=K.metadata(), family=table.to_dict(orient="records")))
    return fam.converged


def cmd_tau(config, out):
    body, (K, _) = config.triangle, config.build_set()
    ks = [k for k in config.require("degrees", "tau") if k > 0]
    if config.directions is None:
        thetas, _ = midpoint_rule(config.quadrature)
    else:
        thetas = [HypotenuseDirection(t) for t in config.directions]
    taus = tau_directions(body, K, thetas, ks, config.tol, config.max_iter)
    rows = [{"t": th.t, "k": k, "alpha_j": al.j, "alpha_k": al.k, "value": v}
            for th, tc in zip(thetas, taus) for k, al, v in zip(tc.ks, tc.alphas, tc.values)]
    write_frame(out / "tau.csv", pd.DataFrame(rows))
    write_json(out / "tau.json", _result("tau", config, set=K.metadata(),
                                         tau=[{"t": th.t, **tc.to_dict()} for th, tc in zip(thetas, taus)]))
    return all(all(tc.converged) for tc in taus)


def cmd_delta(config, out):
    body, (K, _) = config.triangle, config.build_set()
    degrees = [n for n in config.require("degrees", "delta") if n > 0]
    vdm = delta_estimate_vdm(body, K, degrees)
    nodes, weights = midpoint_rule(config.quadrature)
    zah, taus = delta_zaharjuta(body, K, nodes, degrees, weights, config.tol, config.max_iter, full_output=True)
    write_json(out / "delta.json", _result("delta", config, set=K.metadata(),
                                           vdm=[{"n": n, "estimate": v} for n, v in vdm],
                                           zaharjuta=zah, tau=[tc.to_dict() for tc in taus]))
    return all(all(tc.converged) for tc in taus)


def _family(config, K, weights, command):
    entry = config.require("family", command)
    body, kind, n = config.triangle, entry["kind"], entry["n_max"]
    if kind == "chebyshev":
        return chebyshev_family(body, K, n, tol=config.tol, max_iter=config.max_iter)
    if kind == "monomial":
        return monomial_family(body, K, n)
    if kind == "lagrange-difference":
        return lagrange_family(body, K, enumerate_basis(body, n).N_n)
    mu = DiscreteMeasure.uniform(K) if weights is None else DiscreteMeasure(K, weights)
    builder = orthonormal_family if kind == "l2-orthonormal" else l2_monic_family
    return builder(body, mu, n)


def cmd_extremal(config, out):
    body, (K, weights) = config.triangle, config.build_set()
    fam = _family(config, K, weights, "extremal")
    g = config.grid
    grid = stand_off_grid(int(g.get("count", 200)), float(g.get("rmin", 1.1)), float(g.get("rmax", 4.0)),
                          int(g.get("seed", 0)))
    env = upper_envelope(fam, K, grid)
    df = env.to_frame()
    df["h_c"] = h_c(body, grid)
    values = {"set": K.metadata(), "family": {"provenance": fam.provenance, "size": len(fam)},
              "sup_error_h_c": env.max_abs_error(h_c(body, grid))}
    if config.set["kind"] == "torus":
        ref = polydisk_reference(body, float(config.set.get("r1", 1.0)), float(config.set.get("r2", 1.0)))
        df["reference"] = ref(grid)
        values["sup_error_reference"] = env.max_abs_error(ref)
    if K.circled:
        report = circled_identity_check(body, K, fam, grid, build_boundary_grid(config.boundary_m))
        values["circled_identity"] = report.to_dict()
        write_frame(out / "circled_identity.csv", report.to_frame())
    write_frame(out / "extremal.csv", df)
    write_json(out / "extremal.json", _result("extremal", config, **values))
    return fam.converged


def cmd_robin(config, out):
    body, (K, weights) = config.triangle, config.build_set()
    if config.family is None:
        config.family = {"kind": "chebyshev", "n_max": max(config.require("degrees", "robin"))}
    fam = _family(config, K, weights, "robin")
    converged = fam.converged
    boundary = build_boundary_grid(config.boundary_m)
    rho = robin_envelope(fam, K, boundary)
    write_frame(out / "robin.csv", rho.to_frame())
    zeta = np.array([config.zeta], dtype=np.complex128)
    values = {"set": K.metadata(), "family": {"provenance": fam.provenance, "size": len(fam)},
              "sup_abs_off_axis": float(np.max(np.abs(rho.included))) if rho.included.size else None,
              "axis_points": int(np.sum(boundary.axis)), "zeta": config.zeta}
    top = max(fam, key=lambda m: m.degree_used)
    if top.degree_used > 0:
        def V(z):
            return (evaluate_logabs(top.polynomial, z) - np.log(top.norm_on_K)) / top.degree_used

        values["direct"] = {"degree": top.degree_used, "lambda": list(config.lambda_ladder),
                            "estimates": robin_direct(body, V, zeta, config.lambda_ladder).tolist()}
    kappas = []
    for n in [n for n in config.degrees if n > 0]:
        kap, sol = kappa_n(body, K, zeta, n, config.tol, config.max_iter, full_output=True)
        kappas.append({"n": n, "kappa": kap, "robin_estimate": -np.log(kap) / n if kap > 0 else None,
                       "converged": None if sol is None else sol.converged})
        converged = converged and (sol is None or sol.converged)
    values["kappa"] = kappas
    write_json(out / "robin.json", _result("robin", config, **values))
    return converged


def cmd_validate(config, out, suite="all"):
    settings = config.settings()
    checks, runtimes, passed = run_acceptance(settings, suite=suite, verbose=False)
    table = checks[["suite", "check", "value", "refined", "tol", "kind", "passed"]]
    print(tabulate(table.values, headers=table.columns, tablefmt="simple", floatfmt=".3g"))
    for name, seconds in runtimes.items():
        vprint(f"{name}: {seconds:.1f} s", True)
    vprint(f"Acceptance {'passed' if passed else 'FAILED'} ({int(checks['passed'].sum())}/{len(checks)} checks).",
           True, prefix if passed else red_prefix)
    write_frame(out / "validate.csv", checks)
    write_json(out / "validate.json", _result("validate", config, suite=suite, passed=passed,
                                              checks=checks.to_dict(orient="records")))
    return passed


COMMAND_FUNCTIONS = {"basis": cmd_basis, "fekete": cmd_fekete, "leja": cmd_leja, "cheb": cmd_cheb,
                     "tau": cmd_tau, "delta": cmd_delta, "extremal": cmd_extremal, "robin": cmd_robin}


#%% Entry point


def parse_args(argv=None):
    parser = argparse.ArgumentParser(prog="cpx", description="C-pluripotential numerics for triangle bodies.")
    parser.add_argument("command", choices=COMMANDS, help="Computation to run.")
    parser.add_argument("--config", type=str, default=None,
                        help="JSON run configuration (optional for validate).")
    parser.add_argument("--out", type=str, default=None,
                        help="Output directory (default: output.directory of the config, else cpx_out).")
    parser.add_argument("--strict", action="store_true",
                        help="Exit with code 3 if any minimax solve did not converge.")
    parser.add_argument("--suite", type=str, default="all",
                        help="Acceptance suite or group run by validate (e.g. torus-only).")
    return parser.parse_args(argv)


def main(argv=None):
    """
    Runs one cpx command.

    Returns:
    - int, the exit code
    """
    args = parse_args(argv)
    out = Path(args.out) if args.out else None
    try:
        if args.config is None:
            if args.command != "validate":
                raise ConfigError(f"Command '{args.command}' needs --config.")
            config = RunConfig.from_dict({})
        else:
            config = RunConfig.from_file(args.config)
        if args.command == "validate":
            suite_names(args.suite)
    except ConfigError as err:
        print(f"{red_prefix}Invalid configuration: {err}{suffix}")
        return 2
    except ValueError as err:
        print(f"{red_prefix}{err}{suffix}")
        return 2
    out = config.out_directory if out is None else out
    out.mkdir(parents=True, exist_ok=True)

    try:
        if args.command == "validate":
            return 0 if cmd_validate(config, out, args.suite) else 1
        converged = COMMAND_FUNCTIONS[args.command](config, out)
    except ConfigError as err:
        print(f"{red_prefix}Invalid configuration: {err}{suffix}")
        return 2
    except (CpyxError, ValueError) as err:
        print(f"{red_prefix}{type(err).__name__}: {err}{suffix}")
        write_json(out / "error.json", {"command": args.command, "error": type(err).__name__, "message": str(err)})
        return 1
    if not converged:
        vprint("Some minimax solves did not converge (converged=false in the outputs).", True, yellow_prefix)
        if args.strict:
            return 3
    vprint(f"'{args.command}' outputs written to {out}.", True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
