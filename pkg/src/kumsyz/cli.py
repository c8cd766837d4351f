"""Batch runner: TOML run configurations in, canonical JSON reports out.

Reports are byte-deterministic for a fixed (config, seed): canonical key
order, integers/strings/booleans only, no floats.  Wall-clock timings go to
a separate timing.txt sidecar so they never perturb report bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from . import __version__
from .errors import (BudgetError, CharacteristicGuardError, ConfigError,
                     DegreeCapError)
from .exactcore import PrimeField, QQ
from .ellcurve import Curve
from .avkummer import AbelianProduct, ProductBundle
from .gradedring import (SectionSystem, generator_degrees, ideal_piece,
                         sym_dim, sym_map)
from .exactcore import field_rank
from .syzygy import betti_table, check_Npr, char_guard
from .multlab import MultLab, it0_check, reduction_linkage, sweep_alpha
from .configs import BUILTIN_CONFIGS, ACCEPTANCE_SUITE, DETERMINISM_RECHECK


@dataclass(frozen=True)
class TaskSpec:
    kind: str
    params: dict
    expect: dict | None


@dataclass(frozen=True)
class RunConfig:
    name: str
    field: object            # int prime or the string "rational"
    seed: int
    kind: str                # "ambient" | "kummer"
    power: int
    cap: int
    curves: tuple            # ((a, b), ...) per factor
    degrees: tuple           # polarization degree per factor
    tasks: tuple             # TaskSpec
    override_char_guard: bool = False

    def echo(self) -> dict:
        return {
            "name": self.name,
            "field": self.field if isinstance(self.field, int) else "rational",
            "seed": self.seed,
            "system": {
                "kind": self.kind, "power": self.power, "cap": self.cap,
                "curves": [list(c) for c in self.curves],
                "degrees": list(self.degrees),
            },
            "tasks": [
                {"kind": t.kind, "params": t.params,
                 **({"expect": t.expect} if t.expect is not None else {})}
                for t in self.tasks
            ],
        }


_TASK_KINDS = ("betti", "npr", "generators", "hnormality", "sweep", "it0")


def parse_config(text: str, name: str = "run") -> RunConfig:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"TOML parse error: {e}")

    def need(table, key, where):
        if key not in table:
            raise ConfigError(f"missing key {key!r} in {where}")
        return table[key]

    fieldv = need(doc, "field", "top level")
    if not (fieldv == "rational" or isinstance(fieldv, int)):
        raise ConfigError("field must be a prime integer or 'rational'")
    sysd = need(doc, "system", "top level")
    kind = need(sysd, "kind", "[system]")
    if kind not in ("ambient", "kummer"):
        raise ConfigError(f"unknown system kind {kind!r}")
    curves = []
    for i, cd in enumerate(need(sysd, "curves", "[system]")):
        if not ("a" in cd and "b" in cd):
            raise ConfigError(f"curve #{i} needs keys a and b")
        curves.append((int(cd["a"]), int(cd["b"])))
    degrees = [int(d) for d in need(sysd, "degrees", "[system]")]
    if len(degrees) != len(curves):
        raise ConfigError("system.degrees length must match system.curves")
    tasks = []
    for i, td in enumerate(doc.get("tasks", [])):
        tkind = need(td, "kind", f"task #{i}")
        if tkind not in _TASK_KINDS:
            raise ConfigError(f"task #{i}: unknown kind {tkind!r}")
        params = {k: v for k, v in td.items() if k not in ("kind", "expect")}
        tasks.append(TaskSpec(tkind, params, td.get("expect")))
    return RunConfig(
        name=doc.get("name", name),
        field=fieldv,
        seed=int(doc.get("seed", 0)),
        kind=kind,
        power=int(sysd.get("power", 1)),
        cap=int(sysd.get("cap", 8)),
        curves=tuple(curves),
        degrees=tuple(degrees),
        tasks=tuple(tasks),
    )


# ---------------------------------------------------------------------------
# building systems


def _field_of(spec) -> object:
    return QQ if spec == "rational" else PrimeField(spec)


def _build_product(field_spec, curves) -> AbelianProduct:
    F = _field_of(field_spec)
    return AbelianProduct.of([Curve(F, a, b) for a, b in curves])


def _build_system(cfg: RunConfig) -> SectionSystem:
    X = _build_product(cfg.field, cfg.curves)
    base = ProductBundle.from_degrees(X, cfg.degrees)
    return SectionSystem(X, base, kind=cfg.kind, power=cfg.power, cap=cfg.cap)


def _build_lab(cfg: RunConfig, field_spec=None) -> MultLab:
    X = _build_product(field_spec if field_spec is not None else cfg.field,
                       cfg.curves)
    return MultLab(X, ProductBundle.from_degrees(X, cfg.degrees))


# ---------------------------------------------------------------------------
# task runners; every result is a JSON-able dict of exact values


def _run_betti(cfg: RunConfig, t: TaskSpec) -> dict:
    system = _build_system(cfg)
    p_max = int(t.params.get("p_max", 2))
    q_max = int(t.params.get("q_max", p_max + 3))
    bt = betti_table(system, p_max, q_max)
    return {
        "system": system.label(), "p_max": p_max, "q_max": q_max,
        "dim_v": bt.dim_v,
        "hilbert": list(bt.hilbert),
        "grid": bt.rows(),
        "nonzero": {f"{p},{q}": v for (p, q), v in sorted(bt.nonzero().items())},
    }


def _run_npr(cfg: RunConfig, t: TaskSpec) -> dict:
    system = _build_system(cfg)
    p = int(t.params["p"])
    r = int(t.params.get("r", 0))
    h_max = t.params.get("h_max")
    v = check_Npr(system, p, r,
                  None if h_max is None else int(h_max),
                  override_char_guard=cfg.override_char_guard)
    return {
        "system": system.label(), "p": p, "r": r,
        "status": v.status,
        "h_range": [v.h_lo, v.h_hi],
        "stable": v.stable,
        "witness": list(v.witness) if v.witness else [],
        "cells": [list(c) for c in v.cells],
        "detail": v.detail,
    }


def _run_generators(cfg: RunConfig, t: TaskSpec) -> dict:
    system = _build_system(cfg)
    k_max = int(t.params.get("k_max", 4))
    ideal_dims = {str(k): ideal_piece(system, k).dimension
                  for k in range(1, k_max + 1)}
    gd = generator_degrees(system, k_max)
    return {
        "system": system.label(), "k_max": k_max,
        "hilbert": system.hilbert_values(k_max),
        "ideal_dims": ideal_dims,
        "generator_degrees": {str(k): v for k, v in sorted(gd.items())},
        "max_generator_degree": max(gd) if gd else 0,
    }


def _run_hnormality(cfg: RunConfig, t: TaskSpec) -> dict:
    system = _build_system(cfg)
    ks = [int(k) for k in t.params.get("k_values", [2, 3, 4, 5])]
    verdicts, ranks, sdims, rdims = {}, {}, {}, {}
    for k in ks:
        sm = sym_map(system, k)
        r = field_rank(system.field, sm.matrix)
        verdicts[str(k)] = bool(r == system.dim(k))
        ranks[str(k)] = r
        sdims[str(k)] = sym_dim(system.dim_v, k)
        rdims[str(k)] = system.dim(k)
    return {
        "system": system.label(), "k_values": ks,
        "verdicts": verdicts, "ranks": ranks,
        "sym_dims": sdims, "ring_dims": rdims,
    }


def _run_sweep(cfg: RunConfig, t: TaskSpec) -> dict:
    kind = t.params.get("probe", "mplus")
    n = int(t.params.get("n", 1))
    h = int(t.params.get("h", 2))
    mode = t.params.get("mode", "exhaustive")
    sample_size = int(t.params.get("sample_size", 0))
    seed = int(t.params.get("seed", cfg.seed))
    budget = int(t.params.get("budget", 10 ** 4))
    fields = t.params.get("fields", [cfg.field])
    sweeps = {}
    ratios = []
    csv_lines = ["field,alpha,data,target,verdict"]
    for fv in fields:
        lab = _build_lab(cfg, fv)
        rep = sweep_alpha(lab, kind, n, h, mode, sample_size, seed, budget)
        d = rep.as_dict()
        if kind == "equiv":
            d["zero_alpha_failed"] = "O;" * (lab.X.g - 1) + "O" in rep.failures
            d["violation_count"] = len(rep.violations)
        sweeps[str(fv)] = d
        failset = set(rep.failures)
        for row in rep.per_alpha:
            label = row[0]
            data = "|".join(str(x) for x in row[1:-1])
            csv_lines.append(f"{fv},{label},{data},{row[-1]},"
                             f"{'fail' if label in failset else 'ok'}")
        if isinstance(fv, int):
            ratios.append((fv, rep.failure_count))
    out = {"probe": kind, "n": n, "h": h, "mode": mode, "sweeps": sweeps,
           "_csv": "\n".join(csv_lines) + "\n"}
    if len(ratios) > 1:
        g = len(cfg.curves)
        expo = 2 * g - 1
        ok = all(c1 * (q2 ** expo) >= c2 * (q1 ** expo)
                 for (q1, c1), (q2, c2) in zip(ratios, ratios[1:]))
        out["ratio_nonincreasing"] = bool(ok)
        out["failure_counts"] = {str(q): c for q, c in ratios}
    if kind == "equiv":
        out["violation_total"] = sum(
            d.get("violation_count", 0) for d in sweeps.values())
    return out


def _run_it0(cfg: RunConfig, t: TaskSpec) -> dict:
    n = int(t.params.get("n", 1))
    p = int(t.params["p"])
    mode = t.params.get("mode", "exhaustive")
    sample_size = int(t.params.get("sample_size", 0))
    seed = int(t.params.get("seed", cfg.seed))
    budget = int(t.params.get("budget", 10 ** 4))
    lab = _build_lab(cfg)
    if t.params.get("link_koszul", False):
        h = int(t.params["h"])
        rep = reduction_linkage(lab, n, p, h, mode, sample_size, seed,
                                budget, cap=cfg.cap)
        out = rep.as_dict()
        out["all_certified"] = rep.it0.all_certified
        return out
    m = int(t.params["m"])
    rep = it0_check(lab, n, p, m, mode, sample_size, seed, budget)
    out = rep.as_dict()
    out["all_certified"] = rep.all_certified
    return out


_RUNNERS = {
    "betti": _run_betti,
    "npr": _run_npr,
    "generators": _run_generators,
    "hnormality": _run_hnormality,
    "sweep": _run_sweep,
    "it0": _run_it0,
}


# ---------------------------------------------------------------------------
# expectations: every expected entry must match the result exactly


def _matches(expect, result) -> list[str]:
    problems = []

    def walk(e, r, path):
        if isinstance(e, dict):
            if not isinstance(r, dict):
                problems.append(f"{path}: expected table, got {type(r).__name__}")
                return
            for k, v in e.items():
                if k not in r:
                    problems.append(f"{path}.{k}: missing in result")
                else:
                    walk(v, r[k], f"{path}.{k}")
        elif isinstance(e, list):
            if e != r:
                problems.append(f"{path}: expected {e}, got {r}")
        else:
            if e != r:
                problems.append(f"{path}: expected {e!r}, got {r!r}")

    walk(expect, result, "expect")
    return problems


def _auto_failures(kind: str, result: dict) -> list[str]:
    """Failures that count even without a declared expectation."""
    out = []
    if kind == "sweep" and result.get("probe") == "equiv":
        if result.get("violation_total", 0) != 0:
            out.append("THEOREM VIOLATION: m and m+ verdicts disagree")
    return out


# ---------------------------------------------------------------------------
# canonical JSON report


def canonical_json(payload) -> bytes:
    return (json.dumps(payload, sort_keys=True, separators=(",", ":"),
                       ensure_ascii=True) + "\n").encode()


def _atomic_write(path: str, data: bytes) -> None:
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


def run_config(cfg: RunConfig, out_dir: str, jobs: int = 1) -> int:
    """Execute a run configuration; returns the process exit code."""
    # characteristic guard up front, per requested syzygy indices
    for t in cfg.tasks:
        if t.kind == "npr" and isinstance(cfg.field, int):
            try:
                char_guard(_field_of(cfg.field), int(t.params["p"]),
                           cfg.override_char_guard)
            except CharacteristicGuardError as e:
                print(f"config error: {e}", file=sys.stderr)
                return 1

    t_wall = []

    def run_one(t: TaskSpec):
        t0 = time.monotonic()
        res = _RUNNERS[t.kind](cfg, t)
        return res, time.monotonic() - t0

    try:
        if jobs > 1 and len(cfg.tasks) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as ex:
                results = list(ex.map(run_one, cfg.tasks))
        else:
            results = [run_one(t) for t in cfg.tasks]
    except (ConfigError, BudgetError, DegreeCapError, ValueError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1

    tasks_out = []
    csvs = {}
    any_failed = False
    for i, (t, (res, dt)) in enumerate(zip(cfg.tasks, results)):
        t_wall.append(dt)
        csv = res.pop("_csv", None)
        if csv:
            csvs[i] = csv
        problems = _auto_failures(t.kind, res)
        if t.expect is not None:
            problems += _matches(t.expect, res)
        tasks_out.append({
            "kind": t.kind,
            "params": t.params,
            "result": res,
            "expected_ok": not problems,
            "problems": problems,
        })
        if problems:
            any_failed = True

    payload = {
        "tool": "kumsyz",
        "version": __version__,
        "config": cfg.echo(),
        "tasks": tasks_out,
    }
    payload["determinism_hash"] = hashlib.sha256(
        canonical_json(payload)).hexdigest()

    run_dir = os.path.join(out_dir, cfg.name)
    os.makedirs(run_dir, exist_ok=True)
    _atomic_write(os.path.join(run_dir, "report.json"),
                  canonical_json(payload))
    timing = "".join(f"task{i} {t.kind} {dt:.3f}s\n"
                     for i, (t, dt) in enumerate(zip(cfg.tasks, t_wall)))
    _atomic_write(os.path.join(run_dir, "timing.txt"), timing.encode())
    for i, csv in csvs.items():
        _atomic_write(os.path.join(run_dir, f"task{i}_sweep.csv"),
                      csv.encode())

    for entry in tasks_out:
        status = "ok" if entry["expected_ok"] else "FAILED"
        print(f"[{cfg.name}] {entry['kind']}: {status}")
        for pr in entry["problems"]:
            print(f"    {pr}")
    return 2 if any_failed else 0


# ---------------------------------------------------------------------------
# entry point


def _load(path_or_name: str) -> RunConfig:
    if path_or_name in BUILTIN_CONFIGS:
        return parse_config(BUILTIN_CONFIGS[path_or_name], path_or_name)
    if not os.path.exists(path_or_name):
        raise ConfigError(f"no such config file or builtin: {path_or_name}")
    with open(path_or_name, "rb") as fh:
        text = fh.read().decode()
    stem = os.path.splitext(os.path.basename(path_or_name))[0]
    return parse_config(text, stem)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="kumsyz",
        description="exact section-ring / syzygy workbench runner")
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="execute a run configuration")
    runp.add_argument("config", nargs="?", default=None,
                      help="TOML config path or builtin name")
    runp.add_argument("--jobs", type=int, default=1)
    runp.add_argument("--suite", choices=["acceptance"], default=None)
    runp.add_argument("--out", default="runs")
    runp.add_argument("--override-char-guard", action="store_true")
    runp.add_argument("--list-builtin", action="store_true",
                      help="list builtin configuration names and exit")
    args = parser.parse_args(argv)

    if args.list_builtin:
        for name in BUILTIN_CONFIGS:
            print(name)
        return 0

    if args.suite == "acceptance":
        overall = 0
        for name in ACCEPTANCE_SUITE:
            cfg = _load(name)
            if args.override_char_guard:
                cfg = RunConfig(**{**cfg.__dict__, "override_char_guard": True})
            t0 = time.monotonic()
            code = run_config(cfg, args.out, args.jobs)
            dt = time.monotonic() - t0
            print(f"== {name}: {'PASS' if code == 0 else 'FAIL'} "
                  f"({dt:.1f}s, exit {code})")
            overall = max(overall, code)
        # byte-determinism recheck on the cheap configs
        for name in DETERMINISM_RECHECK:
            cfg = _load(name)
            d1 = os.path.join(args.out, "_det1")
            d2 = os.path.join(args.out, "_det2")
            run_config(cfg, d1, args.jobs)
            run_config(cfg, d2, args.jobs)
            b1 = open(os.path.join(d1, cfg.name, "report.json"), "rb").read()
            b2 = open(os.path.join(d2, cfg.name, "report.json"), "rb").read()
            same = b1 == b2
            print(f"== determinism {name}: {'PASS' if same else 'FAIL'}")
            if not same:
                overall = max(overall, 2)
        print("note: criterion 11's randomized property suites run under "
              "pytest (tests/test_acceptance.py)")
        return overall

    if args.config is None:
        print("config error: provide a config path or --suite acceptance",
              file=sys.stderr)
        return 1
    try:
        cfg = _load(args.config)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    if args.override_char_guard:
        cfg = RunConfig(**{**cfg.__dict__, "override_char_guard": True})
    try:
        return run_config(cfg, args.out, args.jobs)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
