import json

import pytest

from liestab.errors import ConfigError
from liestab.field import GF, QQ
from liestab.harness import (
    GridConfig,
    cell_matrix,
    dumps,
    grid_cells,
    invariance_trials,
    random_invertible,
    run_verify,
    strip_timings,
)

SMALL = dict(fields=["GF(2)", "QQ"], max_m=1, max_n=1, invariance_trials=3)


def test_config_validation():
    with pytest.raises(ConfigError):
        GridConfig(max_m=-1)
    with pytest.raises(ConfigError):
        GridConfig(form_kinds=["Hermitian"])
    with pytest.raises(ConfigError):
        GridConfig(diag_pool=[])
    with pytest.raises(ConfigError):
        GridConfig(fields=["GF(4)"])
    with pytest.raises(ConfigError):
        GridConfig.from_json({"nonsense": 1})
    with pytest.raises(ConfigError):
        GridConfig.from_json([1, 2])
    assert GridConfig(form_kinds=["Symplectic"], diag_pool=[]).form_kinds == ["Symplectic"]


def test_empty_grid():
    cfg = GridConfig(max_m=0, max_n=0, form_kinds=[])
    report = run_verify(cfg)
    assert report["cells"] == [] and report["summary"]["pass"]


def test_cells_sorted_and_complete():
    cfg = GridConfig(fields=["GF(3)"], max_m=2, max_n=2)
    cells = grid_cells(cfg)
    assert [c.sort_key() for c in cells] == sorted(c.sort_key() for c in cells)
    assert len(cells) == 2 + 2 * 3 * 2


def test_diag_entries_drawn_from_nonzero_pool():
    cfg = GridConfig(fields=["GF(3)"], max_m=0, max_n=3, diag_pool=["3", "1", "-1"])
    for cell in grid_cells(cfg):
        M, _ = cell_matrix(cell, cfg)
        if cell.kind == "DiagonalType":
            assert all(M.raw(i, i) in (1, 2) for i in range(M.nrows))


def test_random_invertible_is_seeded():
    import random

    a = random_invertible(QQ, 3, random.Random("s"))
    b = random_invertible(QQ, 3, random.Random("s"))
    assert a == b and a.is_invertible()


def test_small_grid_passes_and_is_deterministic():
    cfg = GridConfig(**SMALL)
    r1, r2 = run_verify(cfg), run_verify(cfg)
    assert r1["summary"]["pass"]
    assert dumps(r1, timings=False) == dumps(r2, timings=False)
    assert "timings" not in json.dumps(strip_timings(r1))


def test_parallel_matches_serial(monkeypatch):
    monkeypatch.setenv("LIESTAB_THREADS", "2")
    serial = run_verify(GridConfig(**SMALL))
    parallel = run_verify(GridConfig(**SMALL, parallel=True))
    assert dumps(serial, timings=False).replace('"parallel": false', '"parallel": true') == dumps(
        parallel, timings=False
    )


def test_invariance_trials_pass():
    for F in (GF(2), GF(5), QQ):
        rows = invariance_trials(F, 5, seed=1)
        assert len(rows) == 10 and all(c.passed for c in rows)


def test_seed_changes_scramble():
    a = run_verify(GridConfig(fields=["GF(3)"], max_m=1, max_n=1, seed=0, classical=False, invariance_trials=0))
    b = run_verify(GridConfig(fields=["GF(3)"], max_m=1, max_n=1, seed=1, classical=False, invariance_trials=0))
    assert [c["scramble"] for c in a["cells"]] != [c["scramble"] for c in b["cells"]]
