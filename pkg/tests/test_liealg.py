from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from liestab.classical import sl_basis
from liestab.errors import NotClosed, NotIdeal
from liestab.exactmat import ExactMatrix
from liestab.field import GF, QQ
from liestab.forms import FormKind, normal_gram_matrix
from liestab.liealg import (
    LieSubalgebra,
    SubspaceOfAlgebra,
    bracket_vectors,
    center,
    derived_dims,
    derived_series,
    from_basis,
    gl,
    is_abelian,
    is_ideal,
    is_perfect,
    is_solvable,
    module_span,
    quotient,
    standard_basis,
    verify_semidirect,
)
from liestab.stabilizer import stab

from conftest import fields_st, matrices, oracle_rank


def unit(F, d, i, j):
    return ExactMatrix.unit(F, d, i, j)


def test_subalgebra_examples():
    g = from_basis([unit(QQ, 2, 0, 1)])
    assert g.dim == 1 and is_abelian(g)
    with pytest.raises(NotClosed):
        from_basis([unit(QQ, 2, 0, 1), unit(QQ, 2, 1, 0)])
    g3 = from_basis([unit(GF(5), 3, i, j) for i in range(3) for j in range(3)])
    assert g3 == gl(GF(5), 3) and g3.dim == 9


def test_derived_series_examples():
    ab = from_basis([unit(QQ, 2, 0, 1)])
    assert derived_dims(ab, 2) == [0, 0]
    series = derived_series(gl(QQ, 2), 3)
    sl2 = LieSubalgebra(QQ, 2, sl_basis(QQ, 2))
    assert [s.dim for s in series] == [3, 3, 3] and series[0] == sl2
    assert derived_dims(gl(GF(2), 2), 4) == [3, 1, 0, 0]
    assert is_solvable(gl(GF(2), 2))
    assert not is_solvable(gl(QQ, 2))


def test_center_examples():
    for F in (GF(2), GF(3), QQ):
        z = center(gl(F, 3))
        assert z.dim == 1 and z.contains(ExactMatrix.identity(F, 3).flatten())
    o = stab(ExactMatrix.identity(GF(2), 3))
    z = center(o)
    assert z.dim == 1 and z.contains(ExactMatrix.identity(GF(2), 3).flatten())
    assert center(LieSubalgebra(QQ, 2, sl_basis(QQ, 2))).dim == 0


def test_ideal_examples():
    b = from_basis([unit(QQ, 2, 0, 0), unit(QQ, 2, 1, 1), unit(QQ, 2, 0, 1)])
    assert is_ideal(b, b.subspace([unit(QQ, 2, 0, 1).flatten()]))
    g = gl(QQ, 2)
    assert is_ideal(g, center(g))
    assert not is_ideal(g, g.subspace([unit(QQ, 2, 0, 1).flatten()]))


def test_perfect_examples():
    assert is_solvable(stab(normal_gram_matrix(GF(2), FormKind.SYMPLECTIC, 0, 1)))
    sl2 = LieSubalgebra(QQ, 2, sl_basis(QQ, 2))
    assert is_perfect(sl2) and not is_solvable(sl2)


def test_module_span_examples():
    F = QQ
    assert module_span(LieSubalgebra(F, 2), standard_basis(F, 2)) == []
    sp2 = stab(normal_gram_matrix(F, FormKind.SYMPLECTIC, 0, 1))
    assert len(module_span(sp2, standard_basis(F, 2))) == 2
    n = from_basis([unit(F, 2, 0, 1)])
    assert module_span(n, standard_basis(F, 2)) == [(1, 0)]


def test_quotient_examples():
    g = gl(QQ, 2)
    assert quotient(g, g.as_subspace()).dim == 0
    q = quotient(g, center(g))
    assert q.dim == 3 and q.center() == [] and q.derived_dims(2) == [3, 3]
    F = GF(2)
    sl2 = LieSubalgebra(F, 2, sl_basis(F, 2))
    q = quotient(sl2, sl2.subspace([ExactMatrix.identity(F, 2).flatten()]))
    assert q.dim == 2 and q.is_abelian()
    with pytest.raises(NotIdeal):
        quotient(gl(QQ, 2), gl(QQ, 2).subspace([unit(QQ, 2, 0, 1).flatten()]))


@pytest.mark.parametrize("F", [GF(2), GF(3), QQ], ids=str)
def test_quotient_matches_restriction_dims(F):
    """dim Z(g / Z(g)) = 0 for g = gl_3, and quotient brackets reproduce sl_3 dimensions."""
    g = gl(F, 3)
    q = quotient(g, center(g))
    assert q.dim == 8
    if F.p != 3:
        assert q.center() == []


def test_semidirect_examples():
    F = QQ
    g = LieSubalgebra(F, 2, standard_basis(F, 4)[:1])
    assert verify_semidirect(g, g.as_subspace(), g.subspace([]))
    o = stab(normal_gram_matrix(F, FormKind.DIAGONAL, 1, 2, [1, 1]))
    rot = (unit(F, 3, 1, 2) - unit(F, 3, 2, 1)).flatten()
    h = o.subspace([unit(F, 3, 0, 0).flatten(), rot])
    v = o.subspace([unit(F, 3, 0, j).flatten() for j in (1, 2)])
    assert o.dim == 4 and verify_semidirect(o, h, v)
    assert not verify_semidirect(o, v, h)
    sl2 = LieSubalgebra(F, 2, sl_basis(F, 2))
    b = sl2.basis
    for k in range(1, 3):
        for part in combinations(range(3), k):
            hs = sl2.subspace([b[i] for i in range(3) if i not in part])
            vs = sl2.subspace([b[i] for i in part])
            assert not verify_semidirect(sl2, hs, vs)


@settings(max_examples=50, deadline=None)
@given(fields_st, st.integers(2, 3), st.data())
def test_jacobi_and_antisymmetry(F, d, data):
    draw = lambda: tuple(F.coerce(data.draw(st.integers(-3, 3))) for _ in range(d * d))
    x, y, z = draw(), draw(), draw()
    br = lambda a, b: bracket_vectors(F, d, a, b)
    s = [F.add(F.add(a, b), c) for a, b, c in zip(br(x, br(y, z)), br(y, br(z, x)), br(z, br(x, y)))]
    assert not any(s)
    assert br(x, y) == tuple(F.neg(a) for a in br(y, x))


@settings(max_examples=30, deadline=None)
@given(matrices(max_d=3))
def test_derived_ideal_is_bracket_span(M):
    """The derived subalgebra of o(M) is the rank of all pairwise brackets."""
    o = stab(M)
    got = derived_series(o, 1)[0].dim
    brackets = [o.bracket(x, y) for x, y in combinations(o.basis, 2)]
    want = oracle_rank(M.field, brackets) if brackets else 0
    assert got == want


def test_json_round_trip():
    g = stab(normal_gram_matrix(GF(3), FormKind.SYMPLECTIC, 1, 1))
    assert LieSubalgebra.from_json(g.to_json()) == g


def test_subspace_outside_parent():
    with pytest.raises(ValueError):
        SubspaceOfAlgebra(from_basis([unit(QQ, 2, 0, 1)]), [unit(QQ, 2, 1, 0).flatten()])
