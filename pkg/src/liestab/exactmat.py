"""Dense exact matrices, reduced row echelon forms, kernels and transports.

Vectors are plain tuples of raw field values (see :mod:`liestab.field`).
A d x d matrix flattens row-major to a d*d vector, so entry ``(i, j)`` sits at
index ``i * d + j``; every operator on gl_d in the package uses this layout.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import FieldMismatch, FieldSyntaxError, ShapeMismatch, Singular
from .field import FieldSpec, Raw, Scalar, parse_field

Vector = tuple


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis of a subspace of k^n.

    Rows are kept fully reduced (pivot 1, zero in every other pivot column),
    so the basis is canonical for the subspace and membership testing is a
    single reduction pass.  With ``track=True`` every row also records its
    expression in terms of the accepted input vectors, which gives
    coordinates with respect to an arbitrary independent family.
    """

    def __init__(self, field: FieldSpec, length: int, vectors: Iterable = (), track: bool = False):
        self.field = field
        self.length = length
        self._rows: dict[int, list] = {}
        self._nz: dict[int, list[int]] = {}
        self._track = track
        self._combo: dict[int, dict[int, Raw]] = {}
        self.inputs: list[Vector] = []
        # over QQ rows are stored as primitive integer vectors with a positive
        # pivot; Fraction arithmetic in the inner loops is an order of magnitude slower
        self._int = field.p == 0 and not track
        self._basis_cache: list[Vector] | None = None
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def basis(self) -> list[Vector]:
        if self._basis_cache is None:
            rows = self.reduced_rows()
            self._basis_cache = [tuple(rows[c]) for c in sorted(rows)]
        return list(self._basis_cache)

    def reduced_rows(self) -> dict[int, list]:
        """Rows keyed by pivot column, scaled so every pivot entry is 1."""
        if not self._int:
            return self._rows
        return {c: [Fraction(a, row[c]) for a in row] for c, row in self._rows.items()}

    def copy(self) -> "EchelonBasis":
        other = EchelonBasis(self.field, self.length, track=self._track)
        other._rows = {c: list(r) for c, r in self._rows.items()}
        other._nz = {c: list(z) for c, z in self._nz.items()}
        other._combo = {c: dict(t) for c, t in self._combo.items()}
        other.inputs = list(self.inputs)
        return other

    def _reduce_int(self, v) -> tuple[list[int], Fraction]:
        """Integer residual r and scale s with r / s the true residual of ``v``."""
        den = 1
        for a in v:
            if a.__class__ is Fraction and a.denominator != 1:
                den = den * a.denominator // gcd(den, a.denominator)
        r = [int(a * den) for a in v]
        scale = Fraction(den)
        rows, nz = self._rows, self._nz
        steps = 0
        for c, row in rows.items():
            a = r[c]
            if a:
                piv = row[c]
                g = gcd(a, piv)
                m, a = piv // g, a // g
                if m != 1:
                    r = [x * m for x in r]
                    scale *= m
                for k in nz[c]:
                    r[k] -= a * row[k]
                steps += 1
                if steps % 8 == 0:
                    g = gcd(*r)
                    if g > 1:
                        r = [x // g for x in r]
                        scale /= g
        return r, scale

    def _add_int(self, v) -> bool:
        res, _ = self._reduce_int(v)
        lead = next((k for k, a in enumerate(res) if a), None)
        if lead is None:
            return False
        g = gcd(*res)
        if res[lead] < 0:
            g = -g
        res = [a // g for a in res]
        nz = [k for k, a in enumerate(res) if a]
        piv = res[lead]
        for c, row in self._rows.items():
            a = row[lead]
            if a:
                h = gcd(a, piv)
                m, a = piv // h, a // h
                new = [x * m for x in row] if m != 1 else row
                for k in nz:
                    new[k] -= a * res[k]
                h = gcd(*new)
                if h > 1:
                    new = [x // h for x in new]
                self._rows[c] = new
                self._nz[c] = [k for k, b in enumerate(new) if b]
        self._rows[lead] = res
        self._nz[lead] = nz
        self.inputs.append(tuple(v))
        self._basis_cache = None
        return True

    def _reduce(self, v) -> tuple[list, dict[int, Raw]]:
        if len(v) != self.length:
            raise ShapeMismatch(f"vector of length {len(v)} in a space of length {self.length}")
        v = list(v)
        used: dict[int, Raw] = {}
        p = self.field.p
        rows, nz = self._rows, self._nz
        if p:
            for c, row in rows.items():
                a = v[c]
                if a:
                    for k in nz[c]:
                        v[k] = (v[k] - a * row[k]) % p
                    used[c] = a
        else:
            for c, row in rows.items():
                a = v[c]
                if a:
                    for k in nz[c]:
                        v[k] = v[k] - a * row[k]
                    used[c] = a
        return v, used

    def reduce(self, v) -> Vector:
        """Residual of ``v`` after eliminating every pivot column."""
        if self._int:
            self._check_length(v)
            r, scale = self._reduce_int(v)
            return tuple(x / scale for x in r)
        return tuple(self._reduce(v)[0])

    def contains(self, v) -> bool:
        if self._int:
            self._check_length(v)
            return not any(self._reduce_int(v)[0])
        return not any(self._reduce(v)[0])

    def _check_length(self, v) -> None:
        if len(v) != self.length:
            raise ShapeMismatch(f"vector of length {len(v)} in a space of length {self.length}")

    __contains__ = contains

    def add(self, v) -> bool:
        """Insert ``v``; return False if it already lies in the span."""
        if self._int:
            self._check_length(v)
            return self._add_int(v)
        self._basis_cache = None
        F = self.field
        res, used = self._reduce(v)
        lead = next((k for k, a in enumerate(res) if a), None)
        if lead is None:
            return False
        inv = F.inv(res[lead])
        if F.p:
            res = [a * inv % F.p for a in res]
        else:
            res = [a * inv for a in res]
        nz = [k for k, a in enumerate(res) if a]
        combo: dict[int, Raw] = {}
        if self._track:
            combo[len(self.inputs)] = inv
            for c, a in used.items():
                for t, b in self._combo[c].items():
                    combo[t] = F.sub(combo.get(t, F.zero), F.mul(F.mul(a, inv), b))
        for c, row in self._rows.items():
            a = row[lead]
            if a:
                if F.p:
                    for k in nz:
                        row[k] = (row[k] - a * res[k]) % F.p
                else:
                    for k in nz:
                        row[k] = row[k] - a * res[k]
                self._nz[c] = [k for k, b in enumerate(row) if b]
                if self._track:
                    rc = self._combo[c]
                    for t, b in combo.items():
                        rc[t] = F.sub(rc.get(t, F.zero), F.mul(a, b))
        self._rows[lead] = res
        self._nz[lead] = nz
        if self._track:
            self._combo[lead] = combo
        self.inputs.append(tuple(v))
        return True

    def extend(self, vectors: Iterable) -> int:
        return sum(1 for v in vectors if self.add(v))

    def coordinates(self, v) -> list[Raw] | None:
        """Coefficients of ``v`` over the accepted inputs, or None if outside the span."""
        if not self._track:
            raise ValueError("coordinates need track=True")
        F = self.field
        res, used = self._reduce(v)
        if any(res):
            return None
        out = [F.zero] * len(self.inputs)
        for c, a in used.items():
            for t, b in self._combo[c].items():
                out[t] = F.add(out[t], F.mul(a, b))
        return out


def kernel_from_rref(field: FieldSpec, ncols: int, rows: dict[int, Sequence]) -> list[Vector]:
    """Standard null-space basis from reduced rows keyed by pivot column."""
    F = field
    out = []
    for f in range(ncols):
        if f in rows:
            continue
        v = [F.zero] * ncols
        v[f] = F.one
        for c, row in rows.items():
            if row[f]:
                v[c] = F.neg(row[f])
        out.append(tuple(v))
    return out


def kernel_of_rows(field: FieldSpec, ncols: int, rows: Iterable) -> list[Vector]:
    """Right null space of the matrix whose rows are streamed from ``rows``."""
    eb = EchelonBasis(field, ncols)
    for r in rows:
        if any(r):
            eb.add(r)
            if eb.dim == ncols:
                break
    return kernel_from_rref(field, ncols, eb.reduced_rows())


class ExactMatrix:
    """Immutable dense matrix over a :class:`FieldSpec`."""

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field: FieldSpec, rows: Sequence[Sequence], ncols: int | None = None):
        rows = [tuple(field.coerce(x) for x in r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged rows")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self._rows = tuple(rows)

    @classmethod
    def _raw(cls, field: FieldSpec, rows, ncols: int) -> "ExactMatrix":
        m = cls.__new__(cls)
        m.field = field
        m.nrows = len(rows)
        m.ncols = ncols
        m._rows = tuple(tuple(r) for r in rows)
        return m

    # -- constructors ------------------------------------------------------
    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int | None = None) -> "ExactMatrix":
        ncols = nrows if ncols is None else ncols
        return cls._raw(field, [[field.zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "ExactMatrix":
        return cls.diag(field, [1] * n)

    @classmethod
    def diag(cls, field: FieldSpec, entries: Sequence) -> "ExactMatrix":
        n = len(entries)
        rows = [[field.zero] * n for _ in range(n)]
        for i, a in enumerate(entries):
            rows[i][i] = field.coerce(a)
        return cls._raw(field, rows, n)

    @classmethod
    def unit(cls, field: FieldSpec, n: int, i: int, j: int) -> "ExactMatrix":
        rows = [[field.zero] * n for _ in range(n)]
        rows[i][j] = field.one
        return cls._raw(field, rows, n)

    @classmethod
    def from_flat(cls, field: FieldSpec, n: int, vec: Sequence) -> "ExactMatrix":
        if len(vec) != n * n:
            raise ShapeMismatch(f"vector of length {len(vec)} is not a {n}x{n} matrix")
        return cls._raw(field, [vec[i * n:(i + 1) * n] for i in range(n)], n)

    @classmethod
    def block_diag(cls, field: FieldSpec, *blocks: "ExactMatrix") -> "ExactMatrix":
        n = sum(b.nrows for b in blocks)
        c = sum(b.ncols for b in blocks)
        rows = [[field.zero] * c for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b._rows):
                rows[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls._raw(field, rows, c)

    # -- access ------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar(self.field, self._rows[i][j])

    def raw(self, i: int, j: int) -> Raw:
        return self._rows[i][j]

    def flatten(self) -> Vector:
        return tuple(a for r in self._rows for a in r)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "ExactMatrix":
        return ExactMatrix._raw(self.field, [r[c0:c1] for r in self._rows[r0:r1]], c1 - c0)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "ExactMatrix"):
        if not isinstance(other, ExactMatrix):
            raise TypeError("expected an ExactMatrix")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _zip(self, other: "ExactMatrix", op) -> "ExactMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        return ExactMatrix._raw(
            self.field,
            [[op(a, b) for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
            self.ncols,
        )

    def __add__(self, other):
        return self._zip(other, self.field.add)

    def __sub__(self, other):
        return self._zip(other, self.field.sub)

    def __neg__(self):
        F = self.field
        return ExactMatrix._raw(F, [[F.neg(a) for a in r] for r in self._rows], self.ncols)

    def scale(self, c) -> "ExactMatrix":
        F = self.field
        c = F.coerce(c)
        return ExactMatrix._raw(F, [[F.mul(c, a) for a in r] for r in self._rows], self.ncols)

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        p = F.p
        orows = [[(j, b) for j, b in enumerate(r) if b] for r in other._rows]
        out = []
        for r in self._rows:
            acc = [0] * other.ncols
            for k, a in enumerate(r):
                if a:
                    for j, b in orows[k]:
                        acc[j] += a * b
            out.append([x % p for x in acc] if p else [Fraction(x) for x in acc])
        return ExactMatrix._raw(F, out, other.ncols)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise ShapeMismatch("vector length does not match column count")
        p = self.field.p
        out = []
        for r in self._rows:
            s = sum(a * b for a, b in zip(r, v) if a and b)
            out.append(s % p if p else Fraction(s))
        return tuple(out)

    @property
    def T(self) -> "ExactMatrix":
        if not self.nrows:
            return ExactMatrix._raw(self.field, [()] * self.ncols, 0)
        return ExactMatrix._raw(self.field, list(zip(*self._rows)), self.nrows)

    def transpose(self) -> "ExactMatrix":
        return self.T

    def rank(self) -> int:
        return EchelonBasis(self.field, self.ncols, self._rows).dim

    def inverse(self) -> "ExactMatrix":
        if not self.is_square():
            raise ShapeMismatch("only square matrices are invertible")
        n = self.nrows
        F = self.field
        aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(self._rows)]
        eb = EchelonBasis(F, 2 * n, aug)
        if eb.pivots != list(range(n)):
            raise Singular("matrix is not invertible")
        return ExactMatrix._raw(F, [r[n:] for r in eb.basis()], n)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def det(self) -> Scalar:
        if not self.is_square():
            raise ShapeMismatch("determinant of a non-square matrix")
        F = self.field
        a = [list(r) for r in self._rows]
        n = self.nrows
        d = F.one
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                return Scalar(F, 0)
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                d = F.neg(d)
            d = F.mul(d, a[c][c])
            inv = F.inv(a[c][c])
            for r in range(c + 1, n):
                if a[r][c]:
                    f = F.mul(a[r][c], inv)
                    a[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[r], a[c])]
        return Scalar(F, d)

    # -- comparison / display -------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.field, self.shape, self._rows))

    def to_strings(self) -> list[list[str]]:
        return [[self.field.format(a) for a in r] for r in self._rows]

    def __str__(self) -> str:
        cells = self.to_strings()
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.field}, {self.to_strings()})"

    # -- JSON ------------------------------------------------------------------
    def to_json(self) -> dict:
        return {"field": str(self.field), "rows": self.to_strings()}

    @classmethod
    def from_json(cls, data: dict, field: FieldSpec | None = None) -> "ExactMatrix":
        if not isinstance(data, dict) or "rows" not in data:
            raise FieldSyntaxError('matrix JSON must be an object with a "rows" list')
        if field is None:
            if "field" not in data:
                raise FieldSyntaxError('matrix JSON needs a "field" entry (or an override)')
            field = parse_field(str(data["field"]))
        rows = data["rows"]
        if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
            raise FieldSyntaxError('"rows" must be a list of lists')
        parsed = []
        for i, r in enumerate(rows):
            row = []
            for j, x in enumerate(r):
                try:
                    row.append(field.parse_scalar(str(x)))
                except FieldSyntaxError as exc:
                    raise FieldSyntaxError(f"entry ({i}, {j}): {exc}") from None
            parsed.append(row)
        ncols = len(parsed[0]) if parsed else 0
        if any(len(r) != ncols for r in parsed):
            raise ShapeMismatch("ragged rows in matrix JSON")
        return cls._raw(field, parsed, ncols)

    @classmethod
    def loads(cls, text: str, field: FieldSpec | None = None) -> "ExactMatrix":
        return cls.from_json(json.loads(text), field)


def matrix(field: FieldSpec, rows) -> ExactMatrix:
    return ExactMatrix(field, rows)


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int], int]:
    """Reduced row echelon form, pivot columns and rank.

    Zero rows are appended at the bottom so the shape is preserved.
    """
    eb = EchelonBasis(m.field, m.ncols, m.rows)
    rows = eb.basis()
    rows += [(m.field.zero,) * m.ncols] * (m.nrows - len(rows))
    return ExactMatrix._raw(m.field, rows, m.ncols), eb.pivots, eb.dim


def kernel_basis(m: ExactMatrix) -> list[Vector]:
    """Basis of the right null space; one vector per free column."""
    return kernel_of_rows(m.field, m.ncols, m.rows)


def conjugate(x: ExactMatrix, g: ExactMatrix) -> ExactMatrix:
    """g^-1 x g."""
    return g.inverse() @ x @ g


def congruence(m: ExactMatrix, g: ExactMatrix) -> ExactMatrix:
    """g^T m g."""
    return g.T @ m @ g
