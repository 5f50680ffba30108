"""Parameter-grid sweeps with deterministic reports."""
from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .batyrev import FamilyParams, build_family
from .jsonio import config_hash, dumps, load_fan

__all__ = ["SweepConfig", "ConfigError", "CHECKS", "run_sweep", "family_grid"]


class ConfigError(ValueError):
    """Sweep configuration does not match the schema."""


@dataclass
class SweepConfig:
    checks: list
    n: list = field(default_factory=lambda: [2, 3])
    r: list | None = None
    b: list = field(default_factory=lambda: [0])
    c: list = field(default_factory=lambda: [0])
    fans: list = field(default_factory=list)
    m: list = field(default_factory=lambda: [2, 3])
    col2_mode: str = "eq6"
    window: int = 3
    output: str | None = None
    parallelism: int = 1

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        if "checks" not in data:
            raise ConfigError("config needs a 'checks' list")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def validate(self):
        if not isinstance(self.checks, list) or not self.checks:
            raise ConfigError("check list is empty")
        bad = [c for c in self.checks if c not in CHECKS]
        if bad:
            raise ConfigError(f"unknown checks: {bad}; known: {sorted(CHECKS)}")
        for name in ("n", "b", "c", "m"):
            val = getattr(self, name)
            if not isinstance(val, list) or not val or not all(isinstance(x, int) for x in val):
                raise ConfigError(f"'{name}' must be a nonempty list of integers")
        if self.r is not None and (not isinstance(self.r, list) or not self.r):
            raise ConfigError("'r' must be a nonempty list or omitted")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be positive")
        if "thomsen_vs_bondal" in self.checks and not self.fans:
            raise ConfigError("thomsen_vs_bondal needs a nonempty 'fans' list")

    def to_json(self):
        return {k: getattr(self, k) for k in sorted(self.__dataclass_fields__) if k != "output"}


def family_grid(cfg: SweepConfig):
    for n in cfg.n:
        rs = cfg.r if cfg.r is not None else range(1, n)
        for r in rs:
            if not 1 <= r <= n - 1:
                continue
            for b in cfg.b:
                for c in itertools.product(cfg.c, repeat=r - 1):
                    yield FamilyParams(n, r, b, c)


def _check_strongly_exceptional(p, cfg):
    from .exceptional import build_col, verify_strongly_exceptional
    var = build_family(p)
    rep = verify_strongly_exceptional(var.fan, build_col(p, cfg.col2_mode), (var.t, var.y, var.v[0]))
    return rep.passed, {"failures": len(rep.failures), "n_differences": rep.n_differences}


def _check_rank(p, cfg):
    from .exceptional import build_col, col_rank_check
    size, formula, cones = col_rank_check(p, build_col(p, cfg.col2_mode))
    return size == formula == cones, {"col": size, "formula": formula, "max_cones": cones}


def _check_diff_acyclic(p, cfg):
    from .cohomology import acyclic_family_many
    from .exceptional import build_diff
    diff = sorted(build_diff(p).all)
    ok = acyclic_family_many(p, diff)
    return bool(ok.all()), {"classes": len(diff), "non_acyclic": int((~ok).sum())}


def _check_koszul(p, cfg):
    from .exceptional import koszul_generation_check
    rep = koszul_generation_check(p, window=cfg.window)
    return rep.covered, {"generated": rep.generated_in_window, "window_size": rep.window_size}


def _check_forbidden(p, cfg):
    from .homology import forbidden_sets, forbidden_sets_picard3
    var = build_family(p)
    brute = forbidden_sets(var.fan)
    closed = forbidden_sets_picard3(var.prims, var.fan.n_rays)
    return brute == closed, {"count": len(brute)}


def _check_thomsen_vs_bondal(fan_name, cfg):
    from .frobenius import bondal_split, thomsen_split
    ctx = load_fan(fan_name)
    detail = {}
    ok = True
    zero = [0] * ctx.fan.n_rays
    for m in cfg.m:
        b = bondal_split(ctx.fan, zero, m, ctx.basis_rays)
        same = all(thomsen_split(ctx.fan, zero, m, l, ctx.basis_rays) == b
                   for l in range(len(ctx.fan.max_cones)))
        ok &= same
        detail[str(m)] = {"equal": same, "multiset": b.to_json()}
    return ok, detail


FAMILY_CHECKS = {
    "strongly_exceptional": _check_strongly_exceptional,
    "rank": _check_rank,
    "diff_acyclic": _check_diff_acyclic,
    "koszul": _check_koszul,
    "forbidden": _check_forbidden,
}
CHECKS = dict(FAMILY_CHECKS, thomsen_vs_bondal=_check_thomsen_vs_bondal)


def _run_point(args):
    check, point, cfg = args
    t0 = time.perf_counter()
    try:
        if check in FAMILY_CHECKS:
            ok, detail = FAMILY_CHECKS[check](FamilyParams.from_json(point), cfg)
        else:
            ok, detail = CHECKS[check](point, cfg)
        err = None
    except Exception as exc:  # reported per point, not raised
        ok, detail, err = False, {}, f"{type(exc).__name__}: {exc}"
    entry = {"check": check, "point": point, "pass": bool(ok), "detail": detail}
    if err:
        entry["error"] = err
    return entry, time.perf_counter() - t0


def run_sweep(cfg: SweepConfig):
    """Run every check at every point. Returns ``(report, timing)``.

    The report depends only on the configuration; wall-clock data lives in
    ``timing``.
    """
    cfg.validate()
    tasks = []
    for check in cfg.checks:
        if check in FAMILY_CHECKS:
            tasks += [(check, p.to_json(), cfg) for p in family_grid(cfg)]
        else:
            tasks += [(check, f, cfg) for f in cfg.fans]
    if cfg.parallelism > 1:
        with ProcessPoolExecutor(cfg.parallelism) as pool:
            results = list(pool.map(_run_point, tasks, chunksize=4))
    else:
        results = [_run_point(t) for t in tasks]
    entries = [e for e, _ in results]
    entries.sort(key=lambda e: (e["check"], dumps(e["point"])))
    failed = sum(not e["pass"] for e in entries)
    report = {
        "version": __version__,
        "config_hash": config_hash(cfg.to_json()),
        "config": cfg.to_json(),
        "summary": {"points": len(entries), "passed": len(entries) - failed, "failed": failed},
        "results": entries,
    }
    timing = {"total_seconds": sum(t for _, t in results),
              "per_point": [{"check": e["check"], "point": e["point"], "seconds": t}
                            for e, t in results]}
    if cfg.output:
        os.makedirs(cfg.output, exist_ok=True)
        with open(os.path.join(cfg.output, "report.json"), "w") as fh:
            fh.write(dumps(report, pretty=True) + "\n")
        with open(os.path.join(cfg.output, "timing.json"), "w") as fh:
            fh.write(dumps(timing, pretty=True) + "\n")
    return report, timing
