"""Shared fixtures and independent oracles.

The oracles deliberately avoid liestab's own linear algebra: ranks and null
spaces come from sympy's DomainMatrix, and over GF(2) small cases are
enumerated outright.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st
from sympy import GF as SymGF
from sympy import QQ as SymQQ
from sympy.polys.matrices import DomainMatrix

from liestab.exactmat import ExactMatrix
from liestab.field import QQ, FieldSpec

FIELDS = [FieldSpec(2), FieldSpec(3), FieldSpec(5), FieldSpec(7), QQ]
FIELD_IDS = [str(F) for F in FIELDS]


def sym_domain(F: FieldSpec):
    return SymGF(F.p) if F.p else SymQQ


def to_domain(F: FieldSpec, rows) -> DomainMatrix:
    K = sym_domain(F)
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    if F.p:
        data = [[K(int(a) % F.p) for a in r] for r in rows]
    else:
        data = [[K(Fraction(a).numerator, Fraction(a).denominator) for a in r] for r in rows]
    return DomainMatrix(data, (len(rows), ncols), K)


def from_domain_elem(F: FieldSpec, a):
    if F.p:
        return int(a) % F.p
    return Fraction(int(a.numerator), int(a.denominator))


def oracle_rank(F: FieldSpec, rows) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return to_domain(F, rows).rank()


def oracle_rref(F: FieldSpec, rows):
    R, pivots = to_domain(F, rows).rref()
    return [[from_domain_elem(F, a) for a in r] for r in R.to_list()], list(pivots)


def _matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def _transpose(A):
    return [list(r) for r in zip(*A)]


def operator_columns(M: ExactMatrix):
    """Columns X -> X^T M + M X evaluated on units E_ab, with plain integer/Fraction arithmetic."""
    d = M.nrows
    Mr = [[M.raw(i, j) for j in range(d)] for i in range(d)]
    cols = []
    for a in range(d):
        for b in range(d):
            E = [[1 if (i, j) == (a, b) else 0 for j in range(d)] for i in range(d)]
            Y = _matmul(_transpose(E), Mr)
            Z = _matmul(Mr, E)
            cols.append([Y[i][j] + Z[i][j] for i in range(d) for j in range(d)])
    return cols


def oracle_stab_dim(M: ExactMatrix) -> int:
    d = M.nrows
    if d == 0:
        return 0
    op_rows = _transpose(operator_columns(M))
    return d * d - oracle_rank(M.field, op_rows)


def oracle_obar_dim(M: ExactMatrix) -> int:
    """dim {(X, c) : X^T M + M X = c M}; equals dim o-bar when M != 0."""
    d = M.nrows
    if d == 0:
        return 0
    flat = [M.raw(i, j) for i in range(d) for j in range(d)]
    if not any(flat):
        return d * d
    cols = operator_columns(M) + [[-a for a in flat]]
    return d * d + 1 - oracle_rank(M.field, _transpose(cols))


def gf2_matrices(d: int):
    for bits in itertools.product((0, 1), repeat=d * d):
        yield [list(bits[i * d:(i + 1) * d]) for i in range(d)]


def brute_force_gf2_stab(M: ExactMatrix) -> tuple[int, int]:
    """(|o(M)|, |o-bar(M)|) over GF(2) by enumeration."""
    d = M.nrows
    Mr = [[M.raw(i, j) for j in range(d)] for i in range(d)]
    o = obar = 0
    for X in gf2_matrices(d):
        S = _matmul(_transpose(X), Mr)
        T = _matmul(Mr, X)
        img = [[(S[i][j] + T[i][j]) % 2 for j in range(d)] for i in range(d)]
        if not any(any(r) for r in img):
            o += 1
            obar += 1
        elif img == [[a % 2 for a in r] for r in Mr]:
            obar += 1
    return o, obar


@pytest.fixture(params=FIELDS, ids=FIELD_IDS)
def field(request) -> FieldSpec:
    return request.param


fields_st = st.sampled_from(FIELDS)


@st.composite
def matrices(draw, F: FieldSpec | None = None, min_d: int = 1, max_d: int = 4, kind: str = "any"):
    """Random square matrix; kind is "any", "symmetric" or "alternating"."""
    if F is None:
        F = draw(fields_st)
    d = draw(st.integers(min_d, max_d))
    entry = st.integers(-3, 3)
    rows = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            if kind == "any":
                rows[i][j] = draw(entry)
            elif j >= i:
                a = draw(entry)
                if kind == "alternating":
                    a = 0 if i == j else a
                    rows[i][j], rows[j][i] = a, -a
                else:
                    rows[i][j] = rows[j][i] = a
    return ExactMatrix(F, rows)


@st.composite
def invertible(draw, F: FieldSpec, d: int):
    """Seeded rejection sampling keeps the Hypothesis input small."""
    rng = random.Random(draw(st.integers(0, 2**32)))
    while True:
        g = ExactMatrix(F, [[rng.randint(-3, 3) for _ in range(d)] for _ in range(d)])
        if g.is_invertible():
            return g


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
