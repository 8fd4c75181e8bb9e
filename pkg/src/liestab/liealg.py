"""Lie subalgebras of gl_d given by matrix bases.

A :class:`LieSubalgebra` stores its basis as the reduced echelon form of the
flattened matrices, so two algebras are equal exactly when their bases are.
Radicals are never computed from scratch here; callers supply candidates and
this module certifies them (ideal, solvable, centreless quotient).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import FieldMismatch, NotClosed, NotIdeal, ShapeMismatch
from .exactmat import EchelonBasis, ExactMatrix, Vector, kernel_of_rows
from .field import FieldSpec


def _sparse_rows(v: Sequence, d: int) -> list[list[tuple[int, object]]]:
    rows: list[list] = [[] for _ in range(d)]
    for idx, a in enumerate(v):
        if a:
            rows[idx // d].append((idx % d, a))
    return rows


def _integral(v: Sequence) -> tuple[list, int]:
    """Integer vector w and denominator D with v = w / D (QQ entries)."""
    den = 1
    for a in v:
        if a.__class__ is Fraction and a.denominator != 1:
            den = den * a.denominator // gcd(den, a.denominator)
    if den == 1:
        return [int(a) for a in v], 1
    return [int(a * den) for a in v], den


def bracket_vectors(field: FieldSpec, d: int, x: Sequence, y: Sequence) -> Vector:
    """[X, Y] = XY - YX on row-major flattened d x d matrices."""
    p = field.p
    den = 1
    if not p:
        x, dx = _integral(x)
        y, dy = _integral(y)
        den = dx * dy
    xr = _sparse_rows(x, d)
    yr = _sparse_rows(y, d)
    out = [0] * (d * d)
    for i in range(d):
        base = i * d
        for k, a in xr[i]:
            for j, b in yr[k]:
                out[base + j] += a * b
        for k, b in yr[i]:
            for j, a in xr[k]:
                out[base + j] -= b * a
    if p:
        return tuple(t % p for t in out)
    if den == 1:
        return tuple(Fraction(t) for t in out)
    return tuple(Fraction(t, den) for t in out)


def act_on_vector(field: FieldSpec, d: int, x: Sequence, v: Sequence) -> Vector:
    """X * v for a flattened d x d matrix X and a column vector v."""
    p = field.p
    out = []
    for i in range(d):
        s = 0
        base = i * d
        for j in range(d):
            a = x[base + j]
            if a and v[j]:
                s += a * v[j]
        out.append(s % p if p else Fraction(s))
    return tuple(out)


class LieSubalgebra:
    """A subalgebra of gl_d with a canonical echelonized basis."""

    def __init__(self, field: FieldSpec, ambient_dim: int, vectors: Iterable = (), check: bool = True):
        self.field = field
        self.ambient_dim = ambient_dim
        self._eb = EchelonBasis(field, ambient_dim * ambient_dim, vectors)
        self.basis: tuple[Vector, ...] = tuple(self._eb.basis())
        self._derived: LieSubalgebra | None = None
        if check:
            self.check_closed()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"LieSubalgebra(dim={self.dim}, gl_{self.ambient_dim} over {self.field})"

    def __eq__(self, other):
        if not isinstance(other, LieSubalgebra):
            return NotImplemented
        return (self.field, self.ambient_dim, self.basis) == (other.field, other.ambient_dim, other.basis)

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        return bracket_vectors(self.field, self.ambient_dim, x, y)

    def contains(self, x) -> bool:
        if isinstance(x, ExactMatrix):
            x = x.flatten()
        return self._eb.contains(x)

    __contains__ = contains

    def contains_all(self, vectors: Iterable) -> bool:
        return all(self.contains(v) for v in vectors)

    def issubalgebra(self, other: "LieSubalgebra") -> bool:
        return other.contains_all(self.basis)

    def matrices(self) -> list[ExactMatrix]:
        return [ExactMatrix.from_flat(self.field, self.ambient_dim, v) for v in self.basis]

    def check_closed(self) -> None:
        for i, j in combinations(range(self.dim), 2):
            if not self._eb.contains(self.bracket(self.basis[i], self.basis[j])):
                raise NotClosed(i, j)

    def subspace(self, vectors: Iterable) -> "SubspaceOfAlgebra":
        return SubspaceOfAlgebra(self, vectors)

    def as_subspace(self) -> "SubspaceOfAlgebra":
        return SubspaceOfAlgebra(self, self.basis)

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": str(F),
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "basis": [m.to_json()["rows"] for m in self.matrices()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LieSubalgebra":
        from .field import parse_field

        F = parse_field(data["field"])
        d = int(data["ambient_dim"])
        mats = [ExactMatrix.from_json({"rows": rows}, F) for rows in data["basis"]]
        return cls(F, d, [m.flatten() for m in mats])


class SubspaceOfAlgebra:
    """A linear subspace of a :class:`LieSubalgebra` (ideals, complements, pieces)."""

    def __init__(self, parent: LieSubalgebra, vectors: Iterable):
        self.parent = parent
        self._eb = EchelonBasis(parent.field, parent.ambient_dim ** 2, vectors)
        self.basis: tuple[Vector, ...] = tuple(self._eb.basis())
        for v in self.basis:
            if not parent.contains(v):
                raise ValueError("subspace vector outside the parent algebra")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, x) -> bool:
        if isinstance(x, ExactMatrix):
            x = x.flatten()
        return self._eb.contains(x)

    __contains__ = contains

    def __eq__(self, other):
        if not isinstance(other, SubspaceOfAlgebra):
            return NotImplemented
        return self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def as_algebra(self, check: bool = True) -> LieSubalgebra:
        return LieSubalgebra(self.parent.field, self.parent.ambient_dim, self.basis, check=check)

    def __repr__(self) -> str:
        return f"SubspaceOfAlgebra(dim={self.dim} in {self.parent!r})"


def from_basis(mats: Sequence[ExactMatrix]) -> LieSubalgebra:
    """Echelonize a family of square matrices and verify bracket closure."""
    if not mats:
        raise ValueError("from_basis needs at least one matrix to fix the field and size")
    F = mats[0].field
    d = mats[0].nrows
    for m in mats:
        if m.field != F:
            raise FieldMismatch("matrices over different fields")
        if m.shape != (d, d):
            raise ShapeMismatch("matrices of different or non-square shapes")
    return LieSubalgebra(F, d, [m.flatten() for m in mats])


def gl(field: FieldSpec, d: int) -> LieSubalgebra:
    n = d * d
    return LieSubalgebra(
        field, d, [tuple(field.one if k == i else field.zero for k in range(n)) for i in range(n)], check=False
    )


def zero_algebra(field: FieldSpec, d: int) -> LieSubalgebra:
    return LieSubalgebra(field, d, (), check=False)


def commutator_span(field: FieldSpec, d: int, xs: Sequence, ys: Sequence, cap: int | None = None,
                    symmetric: bool = False) -> EchelonBasis:
    """Echelon basis of span{[x, y]}; stops once the span reaches ``cap``."""
    eb = EchelonBasis(field, d * d)
    if symmetric:
        pairs = combinations(range(len(xs)), 2)
        pairs = ((xs[i], xs[j]) for i, j in pairs)
    else:
        pairs = ((x, y) for x in xs for y in ys)
    for x, y in pairs:
        eb.add(bracket_vectors(field, d, x, y))
        if cap is not None and eb.dim >= cap:
            break
    return eb


def derived_subalgebra(g: LieSubalgebra) -> LieSubalgebra:
    """[g, g], cached on ``g`` since series, solvability and radical checks all ask for it."""
    if g._derived is None:
        eb = commutator_span(g.field, g.ambient_dim, g.basis, g.basis, cap=g.dim, symmetric=True)
        g._derived = g if eb.dim == g.dim else LieSubalgebra(g.field, g.ambient_dim, eb.basis(), check=False)
    return g._derived


def derived_series(g: LieSubalgebra, depth: int) -> list[LieSubalgebra]:
    """[g^(1), ..., g^(depth)]; once the series stabilizes the last term repeats."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    out: list[LieSubalgebra] = []
    cur = g
    for _ in range(depth):
        if out and (cur.dim == 0 or (len(out) > 1 and out[-1] == out[-2])):
            out.append(cur)
            continue
        nxt = derived_subalgebra(cur)
        out.append(nxt)
        cur = nxt
    return out


def derived_dims(g: LieSubalgebra, depth: int) -> list[int]:
    return [h.dim for h in derived_series(g, depth)]


def is_solvable(g: LieSubalgebra) -> bool:
    cur = g
    for _ in range(g.dim + 1):
        if cur.dim == 0:
            return True
        nxt = derived_subalgebra(cur)
        if nxt.dim == cur.dim:
            return False
        cur = nxt
    return cur.dim == 0


def is_perfect(g: LieSubalgebra) -> bool:
    return derived_subalgebra(g).dim == g.dim


def is_abelian(g: LieSubalgebra | SubspaceOfAlgebra) -> bool:
    F = g.parent.field if isinstance(g, SubspaceOfAlgebra) else g.field
    d = g.parent.ambient_dim if isinstance(g, SubspaceOfAlgebra) else g.ambient_dim
    return all(not any(bracket_vectors(F, d, x, y)) for x, y in combinations(g.basis, 2))


def centralizer_kernel(field: FieldSpec, d: int, basis: Sequence, against: Sequence) -> list[Vector]:
    """Coefficient vectors a with [sum a_i basis_i, y] = 0 for every y in ``against``."""
    k = len(basis)
    if k == 0:
        return []
    n2 = d * d

    def rows():
        for y in against:
            cols = [bracket_vectors(field, d, b, y) for b in basis]
            for t in range(n2):
                yield tuple(c[t] for c in cols)

    return kernel_of_rows(field, k, rows())


def _combine(field: FieldSpec, coeffs: Sequence, vectors: Sequence) -> Vector:
    n = len(vectors[0])
    out = [field.zero] * n
    for a, v in zip(coeffs, vectors):
        if a:
            for t, b in enumerate(v):
                if b:
                    out[t] = field.add(out[t], field.mul(a, b))
    return tuple(out)


def center(g: LieSubalgebra) -> SubspaceOfAlgebra:
    coeffs = centralizer_kernel(g.field, g.ambient_dim, g.basis, g.basis)
    return SubspaceOfAlgebra(g, [_combine(g.field, c, g.basis) for c in coeffs])


def is_ideal(g: LieSubalgebra, i: SubspaceOfAlgebra) -> bool:
    if i.parent is not g and not g.contains_all(i.basis):
        return False
    return all(i.contains(g.bracket(x, y)) for x in g.basis for y in i.basis)


def module_span(g: LieSubalgebra, vectors: Iterable) -> list[Vector]:
    """Echelon basis of span{X w : X in g, w in vectors}."""
    d = g.ambient_dim
    eb = EchelonBasis(g.field, d)
    vectors = list(vectors)
    for x in g.basis:
        for w in vectors:
            if len(w) != d:
                raise ShapeMismatch("vector length must equal the ambient dimension")
            eb.add(act_on_vector(g.field, d, x, w))
            if eb.dim == d:
                return eb.basis()
    return eb.basis()


def standard_basis(field: FieldSpec, d: int) -> list[Vector]:
    return [tuple(field.one if i == k else field.zero for i in range(d)) for k in range(d)]


class StructureConstantAlgebra:
    """An abstract Lie algebra given by structure constants on a basis."""

    def __init__(self, field: FieldSpec, constants: list[list[Vector]]):
        self.field = field
        self.constants = constants
        self.dim = len(constants)

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        F = self.field
        out = [F.zero] * self.dim
        for a, x in enumerate(u):
            if not x:
                continue
            for b, y in enumerate(v):
                if not y:
                    continue
                c = F.mul(x, y)
                for t, z in enumerate(self.constants[a][b]):
                    if z:
                        out[t] = F.add(out[t], F.mul(c, z))
        return tuple(out)

    def center(self) -> list[Vector]:
        n = self.dim
        if n == 0:
            return []

        def rows():
            # sum_a x_a c[a][b][t] = 0 for all b, t
            for b in range(n):
                for t in range(n):
                    yield tuple(self.constants[a][b][t] for a in range(n))

        return kernel_of_rows(self.field, n, rows())

    def derived_dims(self, depth: int) -> list[int]:
        F = self.field
        cur = standard_basis(F, self.dim)
        out = []
        for _ in range(depth):
            eb = EchelonBasis(F, self.dim)
            for u, v in combinations(cur, 2):
                eb.add(self.bracket(u, v))
            cur = eb.basis()
            out.append(len(cur))
        return out

    def is_abelian(self) -> bool:
        return all(not any(c) for row in self.constants for c in row)


def quotient(g: LieSubalgebra, i: SubspaceOfAlgebra, check: bool = True) -> StructureConstantAlgebra:
    """Structure constants of g/i.

    The quotient basis is the reduced echelon basis of g's own basis taken
    modulo i: residuals vanish in i's pivot columns and carry a 1 in their
    own pivot, so a bracket's coordinates are read off at those pivots.
    """
    if check and not is_ideal(g, i):
        raise NotIdeal("subspace is not an ideal")
    F = g.field
    n2 = g.ambient_dim ** 2
    ideal = i._eb
    rest = EchelonBasis(F, n2, (ideal.reduce(x) for x in g.basis))
    complement = rest.basis()
    pivots = rest.pivots
    k = len(complement)
    zero = tuple([F.zero] * k)
    consts = [[zero] * k for _ in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            r = ideal.reduce(g.bracket(complement[a], complement[b]))
            c = tuple(r[q] for q in pivots)
            consts[a][b] = c
            consts[b][a] = tuple(F.neg(x) for x in c)
    return StructureConstantAlgebra(F, consts)


def verify_semidirect(g: LieSubalgebra, h: SubspaceOfAlgebra, v: SubspaceOfAlgebra) -> bool:
    """True iff g = h + v as vector spaces, h a subalgebra, v an abelian ideal."""
    if h.dim + v.dim != g.dim:
        return False
    total = EchelonBasis(g.field, g.ambient_dim ** 2, h.basis)
    if total.extend(v.basis) != v.dim or not all(total.contains(x) for x in g.basis):
        return False
    if not all(h.contains(g.bracket(x, y)) for x, y in combinations(h.basis, 2)):
        return False
    if not all(not any(g.bracket(x, y)) for x, y in combinations(v.basis, 2)):
        return False
    return all(v.contains(g.bracket(x, y)) for x in g.basis for y in v.basis)


def transport(g: LieSubalgebra, conj: ExactMatrix, conj_inv: ExactMatrix) -> LieSubalgebra:
    """{conj_inv X conj : X in g}."""
    d = g.ambient_dim
    vecs = [(conj_inv @ ExactMatrix.from_flat(g.field, d, x) @ conj).flatten() for x in g.basis]
    return LieSubalgebra(g.field, d, vecs, check=False)
