import itertools

import pytest
from hypothesis import given, settings, strategies as st

from liestab.errors import NotClassifiable
from liestab.exactmat import ExactMatrix, congruence
from liestab.field import GF, QQ
from liestab.forms import (
    BilinearForm,
    FormKind,
    Symmetry,
    classify_symmetry,
    normal_form,
    normal_gram_matrix,
    pi_matrix,
    radical_subspace,
)

from conftest import invertible, matrices, oracle_rank


def test_symmetry_examples():
    assert classify_symmetry(ExactMatrix.identity(GF(2), 3)) is Symmetry.SYMMETRIC
    assert classify_symmetry(pi_matrix(GF(2), 1)) is Symmetry.BOTH
    assert classify_symmetry(pi_matrix(QQ, 1)) is Symmetry.ANTISYMMETRIC
    assert classify_symmetry(ExactMatrix(QQ, [[1, 2], [3, 4]])) is Symmetry.NEITHER


def test_radical_examples():
    assert len(radical_subspace(ExactMatrix.zeros(QQ, 3))) == 3
    M = normal_gram_matrix(GF(3), FormKind.DIAGONAL, 1, 2, [1, 1])
    assert radical_subspace(M) == [(1, 0, 0)]
    assert radical_subspace(ExactMatrix(GF(2), [[0, 1], [1, 0]])) == []
    with pytest.raises(NotClassifiable):
        radical_subspace(ExactMatrix(QQ, [[0, 1], [0, 0]]))


def test_normal_form_examples():
    fc = normal_form(ExactMatrix.zeros(QQ, 4))
    assert fc.kind is FormKind.ZERO and fc.m == 4 and fc.transform == ExactMatrix.identity(QQ, 4)

    M = ExactMatrix(QQ, [[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    fc = normal_form(M)
    assert (fc.kind, fc.m, fc.n) == (FormKind.SYMPLECTIC, 1, 1)
    assert fc.normal_gram == normal_gram_matrix(QQ, FormKind.SYMPLECTIC, 1, 1)
    assert congruence(M, fc.transform) == fc.normal_gram

    fc = normal_form(ExactMatrix(GF(2), [[1, 1], [1, 0]]))
    assert (fc.kind, fc.m, fc.diag) == (FormKind.DIAGONAL, 0, (1, 1))

    fc = normal_form(ExactMatrix.diag(QQ, [2, 3]))
    assert fc.diag == (2, 3) and fc.transform == ExactMatrix.identity(QQ, 2)


def test_gf2_diagonalization_by_enumeration():
    """[[1,1],[1,0]] over GF(2) is congruent to I_2: search all of GL_2(GF(2))."""
    F = GF(2)
    M = ExactMatrix(F, [[1, 1], [1, 0]])
    hits = []
    for bits in itertools.product((0, 1), repeat=4):
        g = ExactMatrix(F, [bits[:2], bits[2:]])
        if g.is_invertible() and congruence(M, g) == ExactMatrix.identity(F, 2):
            hits.append(g)
    assert hits


def _check_normal_form(M):
    F = M.field
    fc = normal_form(M)
    d = M.nrows
    assert fc.transform.is_invertible()
    assert congruence(M, fc.transform) == fc.normal_gram
    assert fc.m == d - oracle_rank(F, M.rows)
    sym = classify_symmetry(M)
    if M.is_zero():
        assert fc.kind is FormKind.ZERO
    elif sym is Symmetry.SYMMETRIC:
        assert fc.kind is FormKind.DIAGONAL
        assert all(fc.diag) and len(fc.diag) == d - fc.m
    else:
        assert fc.kind is FormKind.SYMPLECTIC
        assert 2 * fc.n == d - fc.m
    return fc


@settings(max_examples=80, deadline=None)
@given(matrices(max_d=5, kind="symmetric"))
def test_symmetric_normal_form(M):
    _check_normal_form(M)


@settings(max_examples=80, deadline=None)
@given(matrices(max_d=6, kind="alternating"))
def test_alternating_normal_form(M):
    _check_normal_form(M)


@settings(max_examples=40, deadline=None)
@given(matrices(max_d=4, kind="symmetric"), st.data())
def test_normal_form_invariant_under_congruence(M, data):
    g = data.draw(invertible(M.field, M.nrows))
    a, b = normal_form(M), normal_form(congruence(M, g))
    assert (a.kind, a.m, a.n) == (b.kind, b.m, b.n)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_normalize_squares(p):
    F = GF(p)
    M = ExactMatrix.diag(F, [4, 1, 2] if p != 7 else [4, 2, 3])
    fc = normal_form(M, normalize_squares=True)
    for a in fc.diag:
        assert a == 1 or not F.is_square(a)
    assert congruence(M, fc.transform) == fc.normal_gram


def test_bilinear_form_evaluation():
    B = BilinearForm(pi_matrix(QQ, 1))
    assert B((1, 0), (0, 1)) == 1
    assert B((0, 1), (1, 0)) == -1
    assert B((1, 1), (1, 1)) == 0


def test_form_class_json():
    fc = normal_form(ExactMatrix.diag(GF(5), [0, 2, 3]))
    data = fc.to_json()
    assert data["kind"] == "DiagonalType" and data["m"] == 1 and data["D"] == ["2", "3"]
