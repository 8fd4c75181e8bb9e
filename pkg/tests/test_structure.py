import random

import pytest

from liestab.errors import Unsupported
from liestab.exactmat import ExactMatrix, congruence
from liestab.field import GF, QQ
from liestab.forms import FormKind, normal_form, normal_gram_matrix
from liestab.liealg import derived_dims, is_solvable
from liestab.predictions import predict
from liestab.report import FAIL, FLAG, NA, PASS
from liestab.stabilizer import stab, stab_bar
from liestab.structure import verify_structure


def gram(F, kind, m, n, diag=None):
    if diag is None and kind is FormKind.DIAGONAL:
        diag = [1] * n
    return normal_gram_matrix(F, kind, m, n, diag or ())


def test_char2_diagonal_3_3():
    M = gram(GF(2), FormKind.DIAGONAL, 3, 3)
    pred = predict(normal_form(M))
    assert pred.derived_dims[:2] == [20, 20]
    assert pred.solvable is False
    o = stab(M)
    assert derived_dims(o, 2) == [20, 20]
    assert not is_solvable(o)


def test_char2_symplectic_3_3():
    M = gram(GF(2), FormKind.SYMPLECTIC, 3, 3)
    pred = predict(normal_form(M))
    assert pred.derived_dims == [41, 40, 40]
    report = verify_structure(M)
    assert report.ok
    assert report.summary["derived_dims"] == [41, 40, 40]
    assert report.get("o^(3) = o^(2)").status == PASS


@pytest.mark.parametrize("F", [GF(3), GF(5), QQ], ids=str)
@pytest.mark.parametrize("n", [1, 2])
def test_odd_symplectic_m1(F, n):
    M = gram(F, FormKind.SYMPLECTIC, 1, n)
    pred = predict(normal_form(M))
    assert pred.derived_dims[0] == (2 * n * n + n) + 2 * n
    assert derived_dims(stab(M), 1)[0] == pred.derived_dims[0]


@pytest.mark.parametrize("m", [0, 1, 2])
@pytest.mark.parametrize("n", [1, 2])
def test_char2_diagonal_small_is_solvable(m, n):
    M = gram(GF(2), FormKind.DIAGONAL, m, n)
    assert predict(normal_form(M)).solvable is True
    assert is_solvable(stab(M))


def test_rational_symplectic_1_1_all_pass():
    M = gram(QQ, FormKind.SYMPLECTIC, 1, 1)
    report = verify_structure(M)
    assert report.ok and report.summary["dim_o"] == 6 and report.summary["dim_obar"] == 7


def test_gf3_diagonal_2_2():
    M = gram(GF(3), FormKind.DIAGONAL, 2, 2)
    pair = stab_bar(M)
    assert (pair.o.dim, pair.obar.dim) == (9, 10)
    assert not is_solvable(pair.o)
    assert verify_structure(M).ok


def test_identity_gf2():
    M = ExactMatrix.identity(GF(2), 2)
    pair = stab_bar(M)
    assert pair.o == pair.obar and is_solvable(pair.o)


CELLS = [
    (F, kind, m, n)
    for F in (GF(2), GF(3), GF(5), QQ)
    for kind in (FormKind.DIAGONAL, FormKind.SYMPLECTIC)
    for m in range(3)
    for n in range(1, 3)
]


@pytest.mark.parametrize("F,kind,m,n", CELLS, ids=lambda x: str(getattr(x, "value", x)))
def test_verify_structure_normal_and_scrambled(F, kind, m, n):
    diag = [1, 2][:n] if F.p != 2 else [1] * n
    M = gram(F, kind, m, n, diag)
    rng = random.Random(f"{F}|{kind.value}|{m}|{n}")
    d = M.nrows
    while True:
        g = ExactMatrix(F, [[rng.randint(-3, 3) for _ in range(d)] for _ in range(d)])
        if g.is_invertible():
            break
    for A in (M, congruence(M, g)):
        report = verify_structure(A)
        assert report.ok, report.to_text()
        assert all(c.status in (PASS, NA, FLAG) for c in report.checks)


def test_zero_form_cell():
    report = verify_structure(ExactMatrix.zeros(GF(3), 2))
    assert report.ok
    assert report.summary == {"dim_o": 4, "dim_obar": 4, "codim": 0, "derived_dims": [3, 3, 3], "solvable": False}


def test_neither_matrix_is_not_applicable():
    report = verify_structure(ExactMatrix(QQ, [[1, 1], [0, 1]]))
    assert [c.status for c in report.checks] == [NA]
    assert report.ok


def test_empty_form_has_no_prediction():
    with pytest.raises(Unsupported):
        predict(normal_form(ExactMatrix.zeros(QQ, 0)))


def test_literal_radical_flag_does_not_fail():
    """OP in char != 2: the literal radical count disagrees with the constructive one."""
    report = verify_structure(gram(QQ, FormKind.SYMPLECTIC, 1, 1))
    flags = [c for c in report.checks if c.status == FLAG]
    assert flags and all(c.passed is None for c in flags)
    assert not [c for c in report.checks if c.status == FAIL]


def test_report_json_rows():
    data = verify_structure(gram(GF(5), FormKind.DIAGONAL, 1, 1)).to_json(timings=False)
    assert "timings" not in data
    for row in data["checks"]:
        assert set(row) == {"name", "paper_clause", "predicted", "computed", "pass", "status"}
