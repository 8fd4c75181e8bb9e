"""Bilinear forms given by Gram matrices and their congruence normal forms.

Every symmetric or alternating form is brought to ``0_m + diag(D)`` or
``0_m + Pi_2n`` (zero block first) by an explicit invertible ``g`` with
``g^T M g`` equal to the normal Gram matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum

from .errors import NotClassifiable, ShapeMismatch
from .exactmat import EchelonBasis, ExactMatrix, kernel_basis
from .field import FieldSpec, Raw


class Symmetry(str, Enum):
    SYMMETRIC = "Symmetric"
    ANTISYMMETRIC = "Antisymmetric"
    BOTH = "Both"
    NEITHER = "Neither"


class FormKind(str, Enum):
    ZERO = "ZeroForm"
    DIAGONAL = "DiagonalType"
    SYMPLECTIC = "SymplecticType"


@dataclass(frozen=True)
class BilinearForm:
    gram: ExactMatrix

    def __post_init__(self):
        if not self.gram.is_square():
            raise ShapeMismatch("a Gram matrix must be square")

    @property
    def field(self) -> FieldSpec:
        return self.gram.field

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def __call__(self, v, w) -> Raw:
        F = self.field
        mw = self.gram.apply(w)
        acc = F.zero
        for a, b in zip(v, mw):
            if a and b:
                acc = F.add(acc, F.mul(a, b))
        return acc


@dataclass(frozen=True)
class FormClass:
    kind: FormKind
    m: int
    n: int
    transform: ExactMatrix
    normal_gram: ExactMatrix
    diag: tuple = dc_field(default=())

    @property
    def field(self) -> FieldSpec:
        return self.normal_gram.field

    @property
    def dim(self) -> int:
        return self.normal_gram.nrows

    @property
    def block_size(self) -> int:
        """Size of the nonsingular block N (n for diagonal, 2n for symplectic)."""
        return 2 * self.n if self.kind is FormKind.SYMPLECTIC else self.n

    def nonsingular_block(self) -> ExactMatrix:
        return self.normal_gram.block(self.m, self.dim, self.m, self.dim)

    def to_json(self) -> dict:
        F = self.field
        out = {
            "field": str(F),
            "kind": self.kind.value,
            "m": self.m,
            "n": self.n,
            "g": self.transform.to_json()["rows"],
            "normal_gram": self.normal_gram.to_json()["rows"],
        }
        if self.kind is FormKind.DIAGONAL:
            out["D"] = [F.format(a) for a in self.diag]
        return out


def classify_symmetry(f: BilinearForm | ExactMatrix) -> Symmetry:
    m = f.gram if isinstance(f, BilinearForm) else f
    if not m.is_square():
        raise ShapeMismatch("a Gram matrix must be square")
    t = m.T
    sym = t == m
    alt = t == -m and not any(m.raw(i, i) for i in range(m.nrows))
    if sym and alt:
        return Symmetry.BOTH
    if sym:
        return Symmetry.SYMMETRIC
    if alt:
        return Symmetry.ANTISYMMETRIC
    return Symmetry.NEITHER


def radical_subspace(f: BilinearForm | ExactMatrix) -> list[tuple]:
    """Basis of the radical V-perp, i.e. the kernel of the Gram matrix."""
    m = f.gram if isinstance(f, BilinearForm) else f
    if classify_symmetry(m) is Symmetry.NEITHER:
        raise NotClassifiable("form is neither symmetric nor antisymmetric")
    return kernel_basis(m)


# -- vector helpers (raw tuples) ------------------------------------------------

def _axpy(F: FieldSpec, a: Raw, x, y) -> tuple:
    """a*x + y."""
    if not a:
        return tuple(y)
    return tuple(F.add(F.mul(a, s), t) for s, t in zip(x, y))


def _scale(F: FieldSpec, a: Raw, x) -> tuple:
    return tuple(F.mul(a, s) for s in x)


def _diagonalize(F: FieldSpec, B, basis: list[tuple]) -> list[tuple[tuple, Raw]]:
    """Orthogonal anisotropic basis of a nondegenerate non-alternating symmetric form."""
    work = list(basis)
    done: list[tuple[tuple, Raw]] = []
    while work:
        idx = next((i for i, s in enumerate(work) if B(s, s)), None)
        if idx is not None:
            u = work.pop(idx)
            a = B(u, u)
            ainv = F.inv(a)
            work = [_axpy(F, F.neg(F.mul(B(s, u), ainv)), u, s) for s in work]
            done.append((u, a))
            continue
        # the remaining form is alternating
        i, j = next((i, j) for i in range(len(work)) for j in range(len(work)) if B(work[i], work[j]))
        if F.p != 2:
            work[i] = _axpy(F, F.one, work[j], work[i])
            continue
        # char 2: merge the last anisotropic vector v with a hyperbolic pair
        if not done:
            raise NotClassifiable("alternating residual without an anisotropic vector")
        v, a = done.pop()
        e1 = work[i]
        e2 = _scale(F, F.inv(B(e1, work[j])), work[j])
        rest = [s for k, s in enumerate(work) if k not in (i, j)]
        rest = [_axpy(F, B(s, e1), e2, _axpy(F, B(s, e2), e1, s)) for s in rest]
        u1 = _axpy(F, F.one, e1, v)
        u2 = _axpy(F, a, e2, v)
        w = _axpy(F, a, e2, _axpy(F, F.one, e1, v))
        done.extend((x, B(x, x)) for x in (u1, u2, w))
        work = rest
    return done


def _symplectic_basis(F: FieldSpec, B, basis: list[tuple]) -> tuple[list[tuple], list[tuple]]:
    work = list(basis)
    es, fs = [], []
    while work:
        i, j = next((i, j) for i in range(len(work)) for j in range(len(work)) if B(work[i], work[j]))
        e = work[i]
        f = _scale(F, F.inv(B(e, work[j])), work[j])
        rest = [s for k, s in enumerate(work) if k not in (i, j)]
        # s'' = s - B(s,f) e + B(s,e) f is orthogonal to e and f
        work = [_axpy(F, B(s, e), f, _axpy(F, F.neg(B(s, f)), e, s)) for s in rest]
        es.append(e)
        fs.append(f)
    return es, fs


def pi_matrix(field: FieldSpec, n: int) -> ExactMatrix:
    """Pi_2n = [[0, I_n], [-I_n, 0]]."""
    d = 2 * n
    rows = [[field.zero] * d for _ in range(d)]
    for i in range(n):
        rows[i][n + i] = field.one
        rows[n + i][i] = field.neg(field.one)
    return ExactMatrix._raw(field, rows, d)


def normal_gram_matrix(field: FieldSpec, kind: FormKind, m: int, n: int = 0, diag=()) -> ExactMatrix:
    """0_m + diag(D) or 0_m + Pi_2n (or 0_m alone)."""
    zero = ExactMatrix.zeros(field, m)
    if kind is FormKind.DIAGONAL:
        return ExactMatrix.block_diag(field, zero, ExactMatrix.diag(field, list(diag)))
    if kind is FormKind.SYMPLECTIC:
        return ExactMatrix.block_diag(field, zero, pi_matrix(field, n))
    return zero


def normal_form(f: BilinearForm | ExactMatrix, normalize_squares: bool = False) -> FormClass:
    """Congruence normal form of a symmetric or antisymmetric Gram matrix.

    With ``normalize_squares`` each diagonal entry that is a square in GF(p)
    is rescaled to 1 (the found root is applied to the basis vector).
    """
    M = f.gram if isinstance(f, BilinearForm) else f
    sym = classify_symmetry(M)
    if sym is Symmetry.NEITHER:
        raise NotClassifiable("form is neither symmetric nor antisymmetric")
    F = M.field
    d = M.nrows
    form = BilinearForm(M)
    if M.is_zero():
        return FormClass(FormKind.ZERO, d, 0, ExactMatrix.identity(F, d), M)

    radical = kernel_basis(M)
    eb = EchelonBasis(F, d, radical)
    complement = []
    for k in range(d):
        e = tuple(F.one if i == k else F.zero for i in range(d))
        if eb.add(e):
            complement.append(e)
    m = len(radical)

    if sym is Symmetry.SYMMETRIC:
        pairs = _diagonalize(F, form, complement)
        vectors = [u for u, _ in pairs]
        diag = [a for _, a in pairs]
        if normalize_squares and F.p:
            for i, a in enumerate(diag):
                r = F.sqrt(a)
                if r is not None:
                    vectors[i] = _scale(F, F.inv(r), vectors[i])
                    diag[i] = F.one
        kind, n = FormKind.DIAGONAL, len(diag)
    else:
        es, fs = _symplectic_basis(F, form, complement)
        vectors = es + fs
        diag = []
        kind, n = FormKind.SYMPLECTIC, len(es)

    cols = list(radical) + vectors
    g = ExactMatrix._raw(F, [[c[i] for c in cols] for i in range(d)], d)
    normal = g.T @ M @ g
    expected = normal_gram_matrix(F, kind, m, n, diag)
    if normal != expected:  # pragma: no cover - guarded by the construction
        raise AssertionError("normal form transport failed")
    return FormClass(kind, m, n, g, normal, tuple(diag))
