"""Grid verification: normal forms, scrambled congruent copies, background facts."""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field

from .classical import classical_checks
from .errors import ConfigError, FieldSyntaxError, NotPrime
from .exactmat import ExactMatrix, congruence
from .field import FieldSpec, parse_field
from .forms import FormKind, normal_gram_matrix
from .gradedalg import verify_der
from .liealg import transport
from .report import FAIL, Check, truth
from .stabilizer import stab
from .structure import verify_structure

KIND_NAMES = {"Diagonal": FormKind.DIAGONAL, "Symplectic": FormKind.SYMPLECTIC}


@dataclass
class GridConfig:
    fields: list[str] = dc_field(default_factory=lambda: ["GF(2)", "GF(3)", "QQ"])
    max_m: int = 2
    max_n: int = 2
    form_kinds: list[str] = dc_field(default_factory=lambda: ["Diagonal", "Symplectic"])
    diag_pool: list[str] = dc_field(default_factory=lambda: ["1", "2", "3", "-1"])
    seed: int = 0
    parallel: bool = False
    der_max_dim: int = 6
    scramble: bool = True
    depth: int = 3
    classical: bool = True
    invariance_trials: int = 10

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not isinstance(self.max_m, int) or not isinstance(self.max_n, int) or self.max_m < 0 or self.max_n < 0:
            raise ConfigError("max_m and max_n must be non-negative integers")
        unknown = [k for k in self.form_kinds if k not in KIND_NAMES]
        if unknown:
            raise ConfigError(f"unknown form kinds {unknown}; use Diagonal and/or Symplectic")
        if "Diagonal" in self.form_kinds and not self.diag_pool:
            raise ConfigError("diag_pool must be nonempty when Diagonal forms are enabled")
        if self.depth < 1:
            raise ConfigError("depth must be at least 1")
        for f in self.fields:
            try:
                parse_field(f)
            except (FieldSyntaxError, NotPrime) as exc:
                raise ConfigError(str(exc)) from None

    @property
    def field_specs(self) -> list[FieldSpec]:
        return [parse_field(f) for f in self.fields]

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "GridConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        allowed = set(cls.__dataclass_fields__)
        extra = set(data) - allowed
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None


@dataclass(frozen=True)
class Cell:
    field: str
    kind: str
    m: int
    n: int

    @property
    def key(self) -> str:
        return f"{self.field}|{self.kind}|m={self.m}|n={self.n}"

    def sort_key(self):
        return (self.field, self.kind, self.m, self.n)


def grid_cells(cfg: GridConfig) -> list[Cell]:
    cells = []
    if not cfg.form_kinds:
        return cells
    for f in cfg.fields:
        for m in range(1, cfg.max_m + 1):
            cells.append(Cell(f, FormKind.ZERO.value, m, 0))
        for name in cfg.form_kinds:
            kind = KIND_NAMES[name]
            for m in range(cfg.max_m + 1):
                for n in range(1, cfg.max_n + 1):
                    cells.append(Cell(f, kind.value, m, n))
    return sorted(cells, key=Cell.sort_key)


def cell_rng(seed: int, key: str) -> random.Random:
    return random.Random(f"{seed}:{key}")


def diag_entries(F: FieldSpec, pool: list[str], n: int, rng: random.Random) -> list:
    values = []
    for s in pool:
        try:
            a = F.parse_scalar(str(s))
        except FieldSyntaxError:
            continue
        if a and a not in values:
            values.append(a)
    if not values:
        values = [F.one]
    return [rng.choice(values) for _ in range(n)]


def random_invertible(F: FieldSpec, d: int, rng: random.Random, bound: int = 3) -> ExactMatrix:
    """Uniform entries in [-bound, bound]; singular draws are rejected."""
    while True:
        g = ExactMatrix(F, [[rng.randint(-bound, bound) for _ in range(d)] for _ in range(d)])
        if g.is_invertible():
            return g


def cell_matrix(cell: Cell, cfg: GridConfig) -> tuple[ExactMatrix, random.Random]:
    F = parse_field(cell.field)
    rng = cell_rng(cfg.seed, cell.key)
    kind = FormKind(cell.kind)
    diag = diag_entries(F, cfg.diag_pool, cell.n, rng) if kind is FormKind.DIAGONAL else ()
    return normal_gram_matrix(F, kind, cell.m, cell.n, diag), rng


def run_cell(cell: Cell, cfg: GridConfig) -> dict:
    t0 = time.perf_counter()
    M, rng = cell_matrix(cell, cfg)
    F = M.field
    out = {"key": cell.key, "cell": {"field": cell.field, "kind": cell.kind, "m": cell.m, "n": cell.n}}
    if cell.kind == FormKind.DIAGONAL.value:
        out["cell"]["D"] = [F.format(M.raw(i, i)) for i in range(cell.m, M.nrows)]
    reports = {"normal": verify_structure(M, cfg.depth)}
    Ms = None
    if cfg.scramble and M.nrows:
        g = random_invertible(F, M.nrows, rng)
        Ms = congruence(M, g)
        out["scramble"] = g.to_json()["rows"]
        reports["scrambled"] = verify_structure(Ms, cfg.depth)
    der_ok = not M.is_zero() and 1 <= M.nrows <= cfg.der_max_dim
    if der_ok:
        reports["der_normal"] = verify_der(M)
        if Ms is not None:
            reports["der_scrambled"] = verify_der(Ms)
    out["reports"] = {k: r.to_json() for k, r in reports.items()}
    out["pass"] = all(r.ok for r in reports.values())
    out["timings"] = {"total": round(time.perf_counter() - t0, 6)}
    return out


def invariance_trials(F: FieldSpec, trials: int, seed: int, max_d: int = 4) -> list[Check]:
    """stab(g^T M g) = g^-1 stab(M) g and stab(cM) = stab(M) for random symmetric/alternating M."""
    rng = cell_rng(seed, f"invariance|{F}")
    out = []
    for t in range(trials):
        d = rng.randint(1, max_d)
        rows = [[0] * d for _ in range(d)]
        alternating = rng.random() < 0.5
        for i in range(d):
            for j in range(i, d):
                a = rng.randint(-3, 3)
                if i == j:
                    rows[i][i] = 0 if alternating else a
                else:
                    rows[i][j] = a
                    rows[j][i] = -a if alternating else a
        M = ExactMatrix(F, rows)
        g = random_invertible(F, d, rng)
        c = F.coerce(rng.choice([x for x in range(-5, 6) if F.coerce(x)]))
        o = stab(M)
        moved = transport(o, g, g.inverse())
        ok_g = moved == stab(congruence(M, g))
        ok_c = stab(M.scale(c)) == o
        out.append(truth(f"trial {t}: congruence (d={d})", "congruence", ok_g))
        out.append(truth(f"trial {t}: scaling", "scaling", ok_c))
    return out


def _threads() -> int:
    try:
        cap = int(os.environ.get("LIESTAB_THREADS", "0"))
    except ValueError:
        cap = 0
    n = os.cpu_count() or 1
    return max(1, min(n, cap) if cap > 0 else n)


def run_verify(cfg: GridConfig) -> dict:
    t0 = time.perf_counter()
    cells = grid_cells(cfg)
    workers = _threads() if cfg.parallel else 1
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_cell, cells, [cfg] * len(cells)))
    else:
        results = [run_cell(c, cfg) for c in cells]
    results.sort(key=lambda r: next(c.sort_key() for c in cells if c.key == r["key"]))

    classical = {}
    invariance = {}
    for F in cfg.field_specs:
        if cfg.classical and cells:
            classical[str(F)] = [c.to_json() for c in classical_checks(F)]
        if cfg.invariance_trials and cells:
            invariance[str(F)] = [c.to_json() for c in invariance_trials(F, cfg.invariance_trials, cfg.seed)]

    def bad(rows):
        return sum(1 for r in rows if r["status"] == FAIL)

    failures = sum(0 if r["pass"] else 1 for r in results)
    failures += sum(bad(v) for v in classical.values()) + sum(bad(v) for v in invariance.values())
    counts = {"pass": 0, "fail": 0, "n/a": 0, "flag": 0}
    for r in results:
        for rep in r["reports"].values():
            for c in rep["checks"]:
                counts[c["status"]] += 1
    for group in (classical, invariance):
        for rows in group.values():
            for c in rows:
                counts[c["status"]] += 1
    return {
        "config": cfg.to_json(),
        "summary": {"cells": len(results), "checks": counts, "failures": failures, "pass": failures == 0},
        "cells": results,
        "classical": classical,
        "invariance": invariance,
        "timings": {"total": round(time.perf_counter() - t0, 6)},
    }


def strip_timings(obj):
    """Copy of a report without any ``timings`` entries."""
    if isinstance(obj, dict):
        return {k: strip_timings(v) for k, v in obj.items() if k != "timings"}
    if isinstance(obj, list):
        return [strip_timings(v) for v in obj]
    return obj


def dumps(report: dict, timings: bool = True) -> str:
    return json.dumps(report if timings else strip_timings(report), indent=2, sort_keys=True)
