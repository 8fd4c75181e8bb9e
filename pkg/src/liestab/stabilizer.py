"""o(M), o-bar(M) and the lambda functional.

o(M) is the kernel of the d^2 x d^2 operator X -> X^T M + M X on row-major
flattened matrices; o-bar(M) is the preimage of the line kM under the same
operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .errors import ShapeMismatch
from .exactmat import ExactMatrix, kernel_of_rows
from .field import FieldSpec, Raw
from .liealg import LieSubalgebra, gl


def _operator_rows(M: ExactMatrix, extra_column: bool = False):
    """Row (i, j) of X -> X^T M + M X, optionally with a -M_ij column for lambda."""
    F = M.field
    d = M.nrows
    n2 = d * d
    width = n2 + 1 if extra_column else n2
    for i in range(d):
        for j in range(d):
            row = [F.zero] * width
            for k in range(d):
                a = M.raw(k, j)
                if a:
                    row[k * d + i] = F.add(row[k * d + i], a)
                b = M.raw(i, k)
                if b:
                    row[k * d + j] = F.add(row[k * d + j], b)
            if extra_column:
                row[n2] = F.neg(M.raw(i, j))
            yield row


def stab_operator(M: ExactMatrix) -> ExactMatrix:
    """The d^2 x d^2 matrix of X -> X^T M + M X."""
    d = M.nrows
    return ExactMatrix._raw(M.field, list(_operator_rows(M)), d * d)


def apply_operator(M: ExactMatrix, x) -> tuple:
    """Flattened X^T M + M X for a flattened X."""
    X = ExactMatrix.from_flat(M.field, M.nrows, x)
    return (X.T @ M + M @ X).flatten()


def stab(M: ExactMatrix) -> LieSubalgebra:
    if not M.is_square():
        raise ShapeMismatch("o(M) needs a square matrix")
    d = M.nrows
    return LieSubalgebra(M.field, d, kernel_of_rows(M.field, d * d, _operator_rows(M)), check=False)


def lambda_of(M: ExactMatrix, x) -> Raw | None:
    """The scalar lam with X^T M + M X = lam M, or None if X is not in o-bar(M)."""
    F = M.field
    if isinstance(x, ExactMatrix):
        x = x.flatten()
    image = apply_operator(M, x)
    flat = M.flatten()
    pivot = next((t for t, a in enumerate(flat) if a), None)
    if pivot is None:
        return F.zero if not any(image) else None
    lam = F.div(image[pivot], flat[pivot])
    if all(a == F.mul(lam, b) for a, b in zip(image, flat)):
        return lam
    return None


@dataclass
class StabilizerPair:
    M: ExactMatrix
    o: LieSubalgebra
    obar: LieSubalgebra
    lambda_vector: list = dc_field(default_factory=list)

    @property
    def field(self) -> FieldSpec:
        return self.M.field

    @property
    def codim(self) -> int:
        return self.obar.dim - self.o.dim

    def lam(self, x) -> Raw | None:
        return lambda_of(self.M, x)

    def witness(self):
        """An element of o-bar outside o (with lambda = 1), or None when they agree."""
        F = self.field
        for v, lam in zip(self.obar.basis, self.lambda_vector):
            if lam:
                inv = F.inv(lam)
                return tuple(F.mul(inv, a) for a in v)
        return None

    def to_json(self) -> dict:
        F = self.field
        return {
            "o": self.o.to_json(),
            "obar": self.obar.to_json(),
            "lambda": [F.format(x) for x in self.lambda_vector],
            "codim": self.codim,
        }


def stab_bar(M: ExactMatrix) -> StabilizerPair:
    if not M.is_square():
        raise ShapeMismatch("o-bar(M) needs a square matrix")
    F = M.field
    d = M.nrows
    o = stab(M)
    if M.is_zero():
        g = gl(F, d)
        return StabilizerPair(M, g, g, [F.zero] * g.dim)
    n2 = d * d
    sols = kernel_of_rows(F, n2 + 1, _operator_rows(M, extra_column=True))
    obar = LieSubalgebra(F, d, [s[:n2] for s in sols], check=False)
    lams = [lambda_of(M, v) for v in obar.basis]
    return StabilizerPair(M, o, obar, lams)


def lambda_vanishes_on_brackets(pair: StabilizerPair, derived: LieSubalgebra | None = None) -> bool:
    """lambda([x, y]) = 0 for all x, y in o-bar.

    lambda is linear, so given the span of all brackets (``derived``) it is
    enough to test its basis.
    """
    if derived is not None:
        return all(pair.lam(v) == pair.field.zero for v in derived.basis)
    g = pair.obar
    return all(pair.lam(g.bracket(x, y)) == pair.field.zero for x, y in combinations(g.basis, 2))


def is_lambda_linear(pair: StabilizerPair) -> bool:
    """lam(x + c y) = lam(x) + c lam(y) on consecutive basis pairs, c = 2."""
    F = pair.field
    b = pair.obar.basis
    c = F.coerce(2)
    for (x, lx), (y, ly) in zip(zip(b, pair.lambda_vector), zip(b[1:], pair.lambda_vector[1:])):
        z = tuple(F.add(s, F.mul(c, t)) for s, t in zip(x, y))
        if pair.lam(z) != F.add(lx, F.mul(c, ly)):
            return False
    return True
