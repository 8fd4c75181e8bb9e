import pytest

from liestab.classical import Family, classical_checks, build, expected_dim, parse_spec
from liestab.errors import BadSpec
from liestab.field import GF, QQ
from liestab.liealg import derived_dims, is_perfect, is_solvable
from liestab.report import FAIL

from conftest import FIELDS, FIELD_IDS


@pytest.mark.parametrize(
    "text,F,dim",
    [
        ("gl(3)", QQ, 9),
        ("gl(3)", GF(2), 9),
        ("sl(3)", GF(5), 8),
        ("o(1,1,1)", GF(2), 6),
        ("o(1,1,1)", QQ, 3),
        ("sp(6)", GF(2), 21),
        ("sp(6)^(1)", GF(2), 15),
        ("sp(6)^(2)", GF(2), 14),
        ("k(4)", GF(7), 1),
        ("W(1,3)", GF(3), 3),
        ("W(2,2)", GF(2), 8),
    ],
)
def test_constructor_dims(text, F, dim):
    spec = parse_spec(text, F)
    alg = build(spec, check=True)
    assert alg.dim == dim == expected_dim(spec)


def test_witt_structure():
    w13 = build(parse_spec("W(1,3)", GF(3)))
    assert is_perfect(w13)
    assert is_solvable(build(parse_spec("W(1,2)", GF(2))))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sp_derived_constructors_match_series(n):
    F = GF(2)
    sp = build(parse_spec(f"sp({2 * n})", F))
    d1, d2 = derived_dims(sp, 2)
    assert d1 == build(parse_spec(f"sp({2 * n})^(1)", F)).dim == 2 * n * n - n
    assert d2 == build(parse_spec(f"sp({2 * n})^(2)", F)).dim == 2 * n * n - n - 1


@pytest.mark.parametrize(
    "text,F",
    [
        ("sp(5)", QQ),
        ("sp(4)^(1)", QQ),
        ("sp(4)^(3)", GF(2)),
        ("W(1,3)", GF(5)),
        ("W(1,3)", QQ),
        ("o(1,0)", QQ),
        ("gl(x)", QQ),
        ("su(2)", QQ),
        ("gl(2)^(1)", QQ),
    ],
)
def test_bad_specs(text, F):
    with pytest.raises(BadSpec):
        parse_spec(text, F)


def test_family_parsing():
    assert parse_spec("sp(4)", QQ).family is Family.SP
    assert parse_spec(" o( 1, 2 ) ", GF(3)).diag == (1, 2)


@pytest.mark.parametrize("F", FIELDS, ids=FIELD_IDS)
def test_classical_checks_pass(F):
    rows = classical_checks(F)
    assert rows
    assert not [c.to_json() for c in rows if c.status == FAIL]
