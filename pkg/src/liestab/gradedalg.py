"""Finite-dimensional unital algebras, their derivation algebras, and the graded case 1 + dt + t^2.

Endomorphisms of an algebra with basis b_0..b_{N-1} are N x N matrices in
column convention: ``D(b_j) = sum_i D[i][j] b_i``.  Matrix commutators are
then commutators of endomorphisms, so a derivation algebra is an ordinary
:class:`~liestab.liealg.LieSubalgebra` of gl_N.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product

from .errors import NotAssociative, ShapeMismatch, ZeroMatrix
from .exactmat import ExactMatrix, kernel_of_rows
from .field import FieldSpec, Raw
from .liealg import LieSubalgebra


@dataclass
class FiniteAlgebra:
    """Structure constants ``c[i][j][k]`` with b_i b_j = sum_k c[i][j][k] b_k."""

    field: FieldSpec
    constants: list
    unit_index: int = 0
    labels: list[str] = dc_field(default_factory=list)
    check: bool = True

    def __post_init__(self):
        n = self.dim
        if any(len(row) != n or any(len(c) != n for c in row) for row in self.constants):
            raise ShapeMismatch("structure constants must be N x N x N")
        if not self.labels:
            self.labels = [f"b{i}" for i in range(n)]
        if self.check:
            self._check_unit()
            self._check_associative()

    @property
    def dim(self) -> int:
        return len(self.constants)

    def _check_unit(self):
        F = self.field
        u = self.unit_index
        for j in range(self.dim):
            for k in range(self.dim):
                want = F.one if j == k else F.zero
                if self.constants[u][j][k] != want or self.constants[j][u][k] != want:
                    raise NotAssociative(f"basis element {u} is not a two-sided unit")

    def multiply(self, x, y) -> tuple:
        F = self.field
        out = [F.zero] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = F.mul(a, b)
                for k, c in enumerate(self.constants[i][j]):
                    if c:
                        out[k] = F.add(out[k], F.mul(ab, c))
        return tuple(out)

    def basis_vector(self, i: int) -> tuple:
        F = self.field
        return tuple(F.one if k == i else F.zero for k in range(self.dim))

    def _check_associative(self):
        e = [self.basis_vector(i) for i in range(self.dim)]
        for i, j, k in product(range(self.dim), repeat=3):
            if self.multiply(self.multiply(e[i], e[j]), e[k]) != self.multiply(e[i], self.multiply(e[j], e[k])):
                raise NotAssociative(f"(b{i} b{j}) b{k} != b{i} (b{j} b{k})")

    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.constants[i][j] == self.constants[j][i] for i in range(n) for j in range(n))


def truncated_polynomial_algebra(field: FieldSpec, n: int, p: int) -> FiniteAlgebra:
    """k[t_1..t_n]/(t_1^p, ..., t_n^p) on the monomial basis (lexicographic exponents)."""
    F = field
    monos = list(product(range(p), repeat=n))
    index = {m: i for i, m in enumerate(monos)}
    N = len(monos)
    c = [[[F.zero] * N for _ in range(N)] for _ in range(N)]
    for i, a in enumerate(monos):
        for j, b in enumerate(monos):
            s = tuple(x + y for x, y in zip(a, b))
            if all(x < p for x in s):
                c[i][j][index[s]] = F.one
    labels = ["*".join(f"t{v + 1}^{e}" for v, e in enumerate(m) if e) or "1" for m in monos]
    return FiniteAlgebra(F, c, 0, labels)


def build_graded_algebra(M: ExactMatrix) -> FiniteAlgebra:
    """Basis [1, e_1..e_d, e] with e_i e_j = M_ij e and every other product of positive degree zero."""
    if not M.is_square() or M.nrows < 1:
        raise ShapeMismatch("need a nonempty square matrix")
    if M.is_zero():
        raise ZeroMatrix("M = 0 does not generate a degree-2 part")
    F = M.field
    d = M.nrows
    N = d + 2
    c = [[[F.zero] * N for _ in range(N)] for _ in range(N)]
    for j in range(N):
        c[0][j][j] = F.one
        c[j][0][j] = F.one
    for i in range(d):
        for j in range(d):
            c[1 + i][1 + j][N - 1] = M.raw(i, j)
    labels = ["1"] + [f"e{i + 1}" for i in range(d)] + ["e"]
    return FiniteAlgebra(F, c, 0, labels)


def _leibniz_rows(a: FiniteAlgebra, allowed: list[tuple[int, int]]):
    """Rows of the Leibniz system in unknowns D[r][s] for (r, s) in ``allowed``."""
    F = a.field
    N = a.dim
    col = {rs: t for t, rs in enumerate(allowed)}
    c = a.constants
    for i in range(N):
        for j in range(N):
            cij = c[i][j]
            for r in range(N):
                row = [F.zero] * len(allowed)
                # sum_k c_ijk D[r][k]
                for k in range(N):
                    if cij[k] and (r, k) in col:
                        t = col[(r, k)]
                        row[t] = F.add(row[t], cij[k])
                # - sum_l c_ljr D[l][i] - sum_l c_ilr D[l][j]
                for l in range(N):
                    x = c[l][j][r]
                    if x and (l, i) in col:
                        t = col[(l, i)]
                        row[t] = F.sub(row[t], x)
                    y = c[i][l][r]
                    if y and (l, j) in col:
                        t = col[(l, j)]
                        row[t] = F.sub(row[t], y)
                if any(row):
                    yield row


def _derivation_vectors(a: FiniteAlgebra, allowed: list[tuple[int, int]]) -> list[tuple]:
    F = a.field
    N = a.dim
    sols = kernel_of_rows(F, len(allowed), _leibniz_rows(a, allowed))
    out = []
    for s in sols:
        v = [F.zero] * (N * N)
        for (r, k), x in zip(allowed, s):
            v[r * N + k] = x
        out.append(tuple(v))
    return out


def derivations(a: FiniteAlgebra, check: bool = False) -> LieSubalgebra:
    """Der(A) as the kernel of the Leibniz system on all N^2 entries of End(A)."""
    N = a.dim
    allowed = [(r, k) for r in range(N) for k in range(N)]
    return LieSubalgebra(a.field, N, _derivation_vectors(a, allowed), check=check)


def graded_derivations(a: FiniteAlgebra, degrees: list[int], k: int) -> LieSubalgebra:
    """Derivations raising the degree by exactly ``k`` (generic system, restricted unknowns)."""
    N = a.dim
    allowed = [(r, s) for r in range(N) for s in range(N) if degrees[r] - degrees[s] == k]
    return LieSubalgebra(a.field, N, _derivation_vectors(a, allowed), check=False)


# -- the graded algebra of type (d, 1) ------------------------------------------

def is_witt_case(field: FieldSpec, fc) -> bool:
    """(char 3, d = 1) or (char 2, d = 2, M congruent to Pi_2)."""
    from .forms import FormKind

    q = field.p
    if q == 3 and fc.dim == 1:
        return True
    return q == 2 and fc.dim == 2 and fc.kind is FormKind.SYMPLECTIC and fc.n == 1


def _embed_g0(F: FieldSpec, d: int, x: tuple, lam: Raw) -> tuple:
    N = d + 2
    v = [F.zero] * (N * N)
    for i in range(d):
        for j in range(d):
            v[(1 + i) * N + 1 + j] = x[i * d + j]
    v[(N - 1) * N + N - 1] = lam
    return tuple(v)


def _embed_g1(F: FieldSpec, d: int, u) -> tuple:
    N = d + 2
    v = [F.zero] * (N * N)
    for i in range(d):
        v[(N - 1) * N + 1 + i] = u[i]
    return tuple(v)


def _embed_gm1(F: FieldSpec, d: int, vv, w) -> tuple:
    N = d + 2
    v = [F.zero] * (N * N)
    for i in range(d):
        v[0 * N + 1 + i] = vv[i]
        v[(1 + i) * N + N - 1] = w[i]
    return tuple(v)


def g0_pairs(M: ExactMatrix) -> list[tuple[tuple, Raw]]:
    """Basis of {(X, lam) : X^T M + M X = lam M}."""
    F = M.field
    d = M.nrows
    n2 = d * d

    def rows():
        for i in range(d):
            for j in range(d):
                row = [F.zero] * (n2 + 1)
                for k in range(d):
                    a = M.raw(k, j)
                    if a:
                        row[k * d + i] = F.add(row[k * d + i], a)
                    b = M.raw(i, k)
                    if b:
                        row[k * d + j] = F.add(row[k * d + j], b)
                row[n2] = F.neg(M.raw(i, j))
                yield row

    return [(s[:n2], s[n2]) for s in kernel_of_rows(F, n2 + 1, rows())]


def gm1_pairs(M: ExactMatrix) -> list[tuple[tuple, tuple]]:
    """Common solutions (v, w) of the degree -1 Leibniz equations.

    For every i, j, l:  v_i delta_jl + v_j delta_il - M_ij w_l = 0, and for
    every i:  v_i + sum_l M_il w_l = 0 and v_i + sum_l M_li w_l = 0 (the
    last two coincide for symmetric M and for char 2).
    """
    F = M.field
    d = M.nrows

    def rows():
        for i in range(d):
            for j in range(d):
                for l in range(d):
                    row = [F.zero] * (2 * d)
                    if j == l:
                        row[i] = F.add(row[i], F.one)
                    if i == l:
                        row[j] = F.add(row[j], F.one)
                    row[d + l] = F.sub(row[d + l], M.raw(i, j))
                    yield row
        for i in range(d):
            for transpose in (False, True):
                row = [F.zero] * (2 * d)
                row[i] = F.one
                for l in range(d):
                    row[d + l] = M.raw(l, i) if transpose else M.raw(i, l)
                yield row

    return [(s[:d], s[d:]) for s in kernel_of_rows(F, 2 * d, rows())]


@dataclass
class GradedDerivationAlgebra:
    field: FieldSpec
    d: int
    algebra: FiniteAlgebra
    pieces: dict[int, list[tuple]]
    lambdas: list[Raw]
    pi_kernel_dim: int
    generic_pieces: dict[int, int]
    total: LieSubalgebra

    @property
    def piece_dims(self) -> tuple[int, int, int]:
        return tuple(len(self.pieces[k]) for k in (-1, 0, 1))

    def to_json(self) -> dict:
        F = self.field
        N = self.d + 2
        mats = {str(k): [ExactMatrix.from_flat(F, N, v).to_json()["rows"] for v in vs] for k, vs in self.pieces.items()}
        return {
            "field": str(F),
            "d": self.d,
            "piece_dims": {"-1": len(self.pieces[-1]), "0": len(self.pieces[0]), "1": len(self.pieces[1])},
            "generic_piece_dims": {str(k): v for k, v in self.generic_pieces.items()},
            "total_dim": self.total.dim,
            "lambda": [F.format(x) for x in self.lambdas],
            "pi_kernel_dim": self.pi_kernel_dim,
            "pieces": mats,
        }


def degrees_of(d: int) -> list[int]:
    return [0] + [1] * d + [2]


def graded_pieces(M: ExactMatrix) -> GradedDerivationAlgebra:
    a = build_graded_algebra(M)
    F = M.field
    d = M.nrows
    g0 = g0_pairs(M)
    pieces = {
        -1: [_embed_gm1(F, d, v, w) for v, w in gm1_pairs(M)],
        0: [_embed_g0(F, d, x, lam) for x, lam in g0],
        1: [_embed_g1(F, d, tuple(F.one if k == i else F.zero for k in range(d))) for i in range(d)],
    }
    degs = degrees_of(d)
    generic = {k: graded_derivations(a, degs, k).dim for k in (-1, 0, 1)}
    pi_kernel = len(kernel_of_rows(F, len(g0), [[lam for _, lam in g0]])) if g0 else 0
    return GradedDerivationAlgebra(F, d, a, pieces, [lam for _, lam in g0], pi_kernel, generic, derivations(a))


# -- verification ------------------------------------------------------------------

def _span_contains(F: FieldSpec, N: int, vectors, candidates) -> bool:
    from .exactmat import EchelonBasis

    eb = EchelonBasis(F, N * N, vectors)
    return all(eb.contains(c) for c in candidates)


def _obar_radical(fc, pair, pred) -> list[tuple]:
    """Radical candidate of o-bar(M) in the coordinates of M."""
    from .structure import _to_original

    F = fc.field
    rad = _to_original(fc, pred.radical_basis)
    if pair.codim == 0:
        return rad
    if F.p != 2:
        d = fc.dim
        return rad + [tuple(F.one if i == j else F.zero for i in range(d) for j in range(d))]
    # characteristic 2, symplectic type: o-bar(N) = sp_2n + k(0_n + I_n) is solvable
    # for n <= 2, and then the witness is central modulo rad(o)
    if fc.n >= 3:
        return rad
    d = fc.dim
    x = [F.zero] * (d * d)
    for i in range(fc.m + fc.n, d):
        x[i * d + i] = F.one
    return rad + _to_original(fc, [tuple(x)])


def verify_der(M: ExactMatrix):
    from .forms import Symmetry, classify_symmetry, normal_form
    from .liealg import (
        bracket_vectors,
        is_abelian,
        is_ideal,
        is_perfect,
        is_solvable,
        quotient,
        verify_semidirect,
    )
    from .predictions import predict
    from .report import StructureReport, compare, not_applicable, truth
    from .stabilizer import lambda_of, stab_bar

    F = M.field
    d = M.nrows
    N = d + 2
    sym = classify_symmetry(M)
    report = StructureReport(cell={"field": str(F), "d": d, "symmetry": sym.value})
    add = report.add
    gd = graded_pieces(M)
    pair = stab_bar(M)
    dm1, d0, d1 = gd.piece_dims
    report.summary = {"piece_dims": [dm1, d0, d1], "total_dim": gd.total.dim}

    add(compare("dim g(0) = dim obar", "der(1)", pair.obar.dim, d0))
    emb = [_embed_g0(F, d, x, lam) for x, lam in zip(pair.obar.basis, pair.lambda_vector)]
    g0_ok = _span_contains(F, N, gd.pieces[0], emb) and len(emb) == d0
    hom_ok = True
    obar = pair.obar
    for i in range(len(obar.basis)):
        for j in range(i + 1, len(obar.basis)):
            z = obar.bracket(obar.basis[i], obar.basis[j])
            lam = lambda_of(M, z)
            if lam is None or bracket_vectors(F, N, emb[i], emb[j]) != _embed_g0(F, d, z, lam):
                hom_ok = False
                break
        if not hom_ok:
            break
    add(truth("X -> (X, lambda(X)) maps obar onto g(0)", "der(1)", g0_ok))
    add(truth("X -> (X, lambda(X)) preserves brackets", "der(1)", hom_ok))
    add(compare("dim ker pi = dim o", "der(2)", pair.o.dim, gd.pi_kernel_dim))
    ker_emb = [_embed_g0(F, d, x, F.zero) for x in pair.o.basis]
    add(truth("ker pi = o(M)", "der(2)", _span_contains(F, N, gd.pieces[0], ker_emb)))
    add(compare("dim g(1)", "der(4)", d, d1))
    g1 = LieSubalgebra(F, N, gd.pieces[1], check=False)
    add(truth("g(1) abelian", "der(3)", is_abelian(g1)))
    for k in (-1, 0, 1):
        add(compare(f"dim g({k}), generic restricted system", "der", len(gd.pieces[k]), gd.generic_pieces[k]))
    pieces_all = gd.pieces[-1] + gd.pieces[0] + gd.pieces[1]
    add(compare("dim Der(A) = sum of pieces", "der", dm1 + d0 + d1, gd.total.dim))
    add(truth("Der(A) spanned by the graded pieces", "der",
              _span_contains(F, N, pieces_all, gd.total.basis) and _span_contains(F, N, gd.total.basis, pieces_all)))
    spaces = {k: EchelonSpace(F, N, gd.pieces[k]) for k in (-1, 0, 1)}
    graded_ok = True
    for a in (-1, 0, 1):
        for b in (-1, 0, 1):
            target = spaces.get(a + b)
            for x in gd.pieces[a]:
                for y in gd.pieces[b]:
                    z = bracket_vectors(F, N, x, y)
                    if (target is None and any(z)) or (target is not None and not target.contains(z)):
                        graded_ok = False
    add(truth("[g(i), g(j)] in g(i+j)", "der", graded_ok))
    kills_unit = all(not any(v[r * N + 0] for r in range(N)) for v in gd.total.basis)
    add(truth("derivations annihilate 1", "der", kills_unit))

    if sym is Symmetry.NEITHER:
        add(not_applicable("case split", "der(5)"))
        return report

    fc = normal_form(M)
    witt = is_witt_case(F, fc)
    report.summary["witt"] = witt
    report.cell.update({"kind": fc.kind.value, "m": fc.m, "n": fc.n})
    if witt:
        clause = "der(5)" if F.p == 3 else "der(6)"
        add(compare("dim g(-1)", clause, d, dm1))
        add(compare("dim Der(A)", clause, d * F.p ** d, gd.total.dim))
        if F.p == 3:
            add(truth("Der(A) perfect", clause, is_perfect(gd.total)))
        twin = derivations(truncated_polynomial_algebra(F, d, F.p))
        add(compare("dim Der(A) = dim W(d)", clause, twin.dim, gd.total.dim))
        add(not_applicable("Der(A) = g(0) x g(1)", "der(7)(ii)", computed="skipped: g(-1) != 0"))
        return report

    add(compare("dim g(-1)", "der(7)(i)", 0, dm1))
    add(compare("dim Der(A) = dim obar + d", "der(7)(ii)", pair.obar.dim + d, gd.total.dim))
    total = gd.total
    h = total.subspace(gd.pieces[0])
    v = total.subspace(gd.pieces[1])
    add(truth("Der(A) = g(0) x g(1)", "der(7)(ii)", verify_semidirect(total, h, v)))

    pred = predict(fc)
    m, b = fc.m, fc.block_size
    nbar = pred.dim_obar - pred.dim_o  # the gl_1 summand, when present
    add(compare("iterated semidirect dimension count", "der(7)(v)",
                m * m + (pred.dim_o - m * m - m * b) + nbar + m * b + d, total.dim))

    rad_obar = _obar_radical(fc, pair, pred)
    rad_vecs = [_embed_g0(F, d, x, lambda_of(M, x)) for x in rad_obar] + gd.pieces[1]
    rad = total.subspace(rad_vecs)
    ideal = is_ideal(total, rad)
    solv = is_solvable(rad.as_algebra(check=False))
    add(truth("rad(obar) + g(1) is a solvable ideal", "der(7)(iii)", ideal and solv))
    if ideal:
        qt = quotient(total, rad)
        add(compare("dim Z(Der(A) / rad)", "der(7)(iv)", 0, len(qt.center())))
        add(compare("dim Der(A) / rad = dim obar / rad(obar)", "der(7)(iv)",
                    pair.obar.dim - len(rad_obar), qt.dim))
    return report


class EchelonSpace:
    """Thin membership wrapper around an echelon basis of flattened endomorphisms."""

    def __init__(self, F: FieldSpec, N: int, vectors):
        from .exactmat import EchelonBasis

        self._eb = EchelonBasis(F, N * N, vectors)

    def contains(self, v) -> bool:
        return self._eb.contains(v)
