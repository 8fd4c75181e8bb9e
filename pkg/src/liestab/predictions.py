"""Closed-form structure predictions for o(0_m + N) with N = diag(D) or Pi_2n.

Everything here is derived from the block shape and the background facts
about gl_m, o(D) and sp_2n; nothing is read off the computed o(M).  The only
generic computations are on the *factor* algebras o(N) (for the
o(N)^(i-1) V = V hypothesis and for the sd(4) recursion when no closed form
applies), never on o(M) itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .classical import odiag_basis, scalar_line, sp_basis
from .errors import Unsupported
from .exactmat import EchelonBasis
from .field import FieldSpec
from .forms import FormClass, FormKind
from .liealg import LieSubalgebra, derived_series, gl, module_span, standard_basis


# -- factor algebras ------------------------------------------------------------

def gl_series(q: int, m: int, depth: int) -> list[int]:
    """dim gl_m^(i) for i = 0..depth."""
    if m == 0:
        head = [0]
    elif m == 1:
        head = [1, 0]
    elif q == 2 and m == 2:
        head = [4, 3, 1, 0]
    else:
        head = [m * m, m * m - 1]
    return _pad(head, depth)


def _pad(head: list[int], depth: int) -> list[int]:
    out = list(head[: depth + 1])
    while len(out) < depth + 1:
        out.append(out[-1])
    return out


def factor_series(q: int, kind: FormKind, n: int, depth: int) -> list[int | None]:
    """dim o(N)^(i) for i = 0..depth; None where no closed form is recorded."""
    two = q == 2
    if kind is FormKind.DIAGONAL:
        if not two:
            head = {0: [0], 1: [0], 2: [1, 0]}.get(n, [n * (n - 1) // 2])
        else:
            head = {0: [0], 1: [1, 0], 2: [3, 1, 0]}.get(n, [n * (n + 1) // 2, n * (n - 1) // 2])
        return _pad(head, depth)
    if kind is FormKind.SYMPLECTIC:
        full = 2 * n * n + n
        if not two:
            return _pad([full], depth)
        if n == 0:
            return _pad([0], depth)
        if n == 1:
            return _pad([3, 1, 0], depth)
        if n == 2:
            out = [10, 6, 5] + [None] * max(0, depth - 2)
            return out[: depth + 1]
        return _pad([full, 2 * n * n - n, 2 * n * n - n - 1], depth)
    return _pad([0], depth)


def factor_basis(F: FieldSpec, kind: FormKind, n: int, diag=()) -> tuple[int, list[tuple]]:
    """(size of N, basis of o(N)) in normal coordinates."""
    if kind is FormKind.DIAGONAL:
        return n, odiag_basis(F, diag)
    if kind is FormKind.SYMPLECTIC:
        return 2 * n, sp_basis(F, n)
    return 0, []


@lru_cache(maxsize=None)
def _factor_derived(F: FieldSpec, kind: FormKind, n: int, diag: tuple, depth: int) -> tuple:
    size, basis = factor_basis(F, kind, n, diag)
    g = LieSubalgebra(F, size, basis, check=False)
    return (g,) + tuple(derived_series(g, depth)) if size else tuple(LieSubalgebra(F, 0) for _ in range(depth + 1))


def factor_derived(F: FieldSpec, kind: FormKind, n: int, diag=(), depth: int = 3) -> tuple:
    """[o(N)^(0), ..., o(N)^(depth)] computed generically."""
    return _factor_derived(F, kind, n, tuple(diag), depth)


@lru_cache(maxsize=None)
def _gl_derived(F: FieldSpec, m: int, depth: int) -> tuple:
    g = gl(F, m)
    return (g,) + tuple(derived_series(g, depth)) if m else tuple(LieSubalgebra(F, 0) for _ in range(depth + 1))


def factor_spans_module(F: FieldSpec, kind: FormKind, n: int, diag, level: int) -> bool:
    """o(N)^(level) V = V for the natural module V of o(N)."""
    chain = factor_derived(F, kind, n, diag, max(level, 1))
    g = chain[level]
    size = g.ambient_dim
    if size == 0:
        return True
    return len(module_span(g, standard_basis(F, size))) == size


def gv_expected(q: int, kind: FormKind, n: int) -> tuple[str, int] | None:
    """(clause, level) of the module-spanning statement covering this factor, if any."""
    if kind is FormKind.DIAGONAL and n >= 3:
        return ("gV(a)", 1) if q == 2 else ("gV(b)", 0)
    if kind is FormKind.SYMPLECTIC and n >= 1:
        if q == 2:
            return ("gV(c)", 2) if n >= 3 else None
        return ("gV(d)", 0)
    return None


# -- the prediction record --------------------------------------------------------

@dataclass
class StructurePrediction:
    source: str
    kind: FormKind
    m: int
    n: int
    block: int
    char: int
    dim_o: int
    dim_obar: int
    codim: int
    derived_dims: list[int]
    derived_clauses: list[str]
    radical_basis: list[tuple]
    radical_dim: int
    ss_quotient_dim: int
    solvable: bool
    solvable_clause: str
    literal_radical_dim: int | None
    radical_clause: str
    weight_labels: list[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "kind": self.kind.value,
            "m": self.m,
            "n": self.n,
            "dim_o": self.dim_o,
            "dim_obar": self.dim_obar,
            "codim": self.codim,
            "derived_dims": self.derived_dims,
            "derived_clauses": self.derived_clauses,
            "radical_dim": self.radical_dim,
            "ss_quotient_dim": self.ss_quotient_dim,
            "solvable": self.solvable,
            "weight_labels": self.weight_labels,
        }


def _source(q: int, kind: FormKind) -> str:
    if kind is FormKind.ZERO:
        return "gl"
    if kind is FormKind.DIAGONAL:
        return "OI2" if q == 2 else "OI"
    return "OP2" if q == 2 else "OP"


def _prop_c_applies(source: str, m: int, n: int) -> bool:
    if source in ("OI2", "OP2"):
        return m >= 3 or n >= 3
    if source == "OI":
        return m >= 2 or n >= 3
    return m >= 1


def predicted_solvable(q: int, kind: FormKind, m: int, n: int) -> bool:
    if kind is FormKind.ZERO:
        return m <= 1 or (q == 2 and m <= 2)
    src = _source(q, kind)
    if src in ("OI2", "OP2"):
        return m <= 2 and n <= 2
    if src == "OI":
        return m <= 1 and n <= 2
    return False


def _gl_radical_is_all(q: int, m: int) -> bool:
    return m <= 1 if q != 2 else m <= 2


def _factor_radical(F: FieldSpec, kind: FormKind, n: int, diag) -> list[tuple]:
    q = F.p
    size, basis = factor_basis(F, kind, n, diag)
    if kind is FormKind.DIAGONAL:
        if n <= 2 and (q == 2 or n == 2):
            return basis
        if q == 2:
            return scalar_line(F, n)
        return []
    if kind is FormKind.SYMPLECTIC:
        if q != 2:
            return []
        return basis if n <= 2 else scalar_line(F, 2 * n)
    return []


def _embed(F: FieldSpec, d: int, offset: int, size: int, vec) -> tuple:
    v = [F.zero] * (d * d)
    for i in range(size):
        for j in range(size):
            v[(offset + i) * d + offset + j] = vec[i * size + j]
    return tuple(v)


def radical_candidate(fc: FormClass) -> list[tuple]:
    """(rad gl_m + rad o(N)) + Hom in the normal coordinates of ``fc``."""
    F = fc.field
    q = F.p
    m, b = fc.m, fc.block_size
    d = m + b
    out = []
    if m:
        if _gl_radical_is_all(q, m):
            out += [_embed(F, d, 0, m, v) for v in gl(F, m).basis]
        else:
            out += [_embed(F, d, 0, m, v) for v in scalar_line(F, m)]
    out += [_embed(F, d, m, b, v) for v in _factor_radical(F, fc.kind, fc.n, fc.diag)]
    for i in range(m):
        for j in range(m, d):
            v = [F.zero] * (d * d)
            v[i * d + j] = F.one
            out.append(tuple(v))
    return out


def literal_radical_dim(q: int, kind: FormKind, m: int, n: int, dim_o: int, dim_factor: int) -> int | None:
    """Radical dimension read literally off the case lists (None outside the mixed cells)."""
    if kind is FormKind.ZERO or m == 0 or n == 0:
        return None
    src = _source(q, kind)
    if src == "OI2":
        if m <= 2 and n <= 2:
            return dim_o
        if m >= 3 and n <= 2:
            return 1 + dim_factor + n
        if m <= 2:
            return m * m + 1 + m * n
        return 2 + m * n
    if src == "OI":
        if n == 2:
            return 1 + dim_factor + n
        return 1 + m * n
    if src == "OP2":
        if m <= 2 and n <= 2:
            return dim_o
        if m <= 2:
            return m * m + 1 + m * n
        if n <= 2:
            return 1 + dim_factor + 2 * n * m
        return 2 + m * m
    return 1 + m * n


def _weight_labels(q: int, kind: FormKind, m: int, n: int) -> list[str]:
    if kind is FormKind.ZERO:
        return ["gl_d"]
    name = "o(D)" if kind is FormKind.DIAGONAL else "sp_2n"
    labels = [f"V_{name}", "V_gl_m", f"Hom(V_{name}, V_gl_m)"]
    if m and not _gl_radical_is_all(q, m):
        labels.append(f"k_1^(+{m * (n if kind is FormKind.DIAGONAL else 2 * n)}) (restriction to kI_m)")
    return labels


def _matmul_flat(F: FieldSpec, x, y, r: int, s: int, c: int) -> list:
    """Product of an r x s and an s x c matrix, both flattened row-major."""
    out = []
    for i in range(r):
        for j in range(c):
            acc = F.zero
            for k in range(s):
                a, b = x[i * s + k], y[k * c + j]
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
    return out


def _hom_recursion(F: FieldSpec, fc: FormClass, depth: int) -> list[int]:
    """dim W_i for W_1 = Hom and W_{i+1} = h^(i) W_i, where (A, D) acts by B -> AB - BD."""
    m, b = fc.m, fc.block_size
    glc = _gl_derived(F, m, depth)
    fac = factor_derived(F, fc.kind, fc.n, fc.diag, depth)
    W = standard_basis(F, m * b)
    dims = [len(W)]
    for i in range(1, depth):
        eb = EchelonBasis(F, m * b)
        for B in W:
            for A in glc[i].basis:
                eb.add(_matmul_flat(F, A, B, m, m, b))
            for D in fac[i].basis:
                eb.add(_matmul_flat(F, B, D, m, b, b))
        W = eb.basis()
        dims.append(len(W))
    return dims


def predict(fc: FormClass, depth: int = 3) -> StructurePrediction:
    F = fc.field
    q = F.p
    kind, m, n = fc.kind, fc.m, fc.n
    b = fc.block_size
    d = m + b
    if d == 0:
        raise Unsupported("no prediction for the zero-dimensional form")
    src = _source(q, kind)

    if kind is FormKind.ZERO:
        dim_factor = 0
        fser = [0] * (depth + 1)
    else:
        fser = list(factor_series(q, kind, n, depth))
        if any(x is None for x in fser):
            chain = factor_derived(F, kind, n, fc.diag, depth)
            fser = [x if x is not None else chain[i].dim for i, x in enumerate(fser)]
        dim_factor = fser[0]
    gser = gl_series(q, m if kind is not FormKind.ZERO else d, depth)

    dim_o = gser[0] + m * b + dim_factor if kind is not FormKind.ZERO else d * d
    if kind is FormKind.ZERO:
        codim = 0
    elif q != 2:
        codim = 1
    else:
        codim = 1 if kind is FormKind.SYMPLECTIC else 0

    derived: list[int] = []
    clauses: list[str] = []
    recursion = None
    for i in range(1, depth + 1):
        if kind is FormKind.ZERO:
            derived.append(gser[i])
            clauses.append("glsl")
        elif m == 0:
            derived.append(fser[i])
            clauses.append("" + ("oD" if kind is FormKind.DIAGONAL else "sp"))
        elif i == 1:
            derived.append(gser[1] + fser[1] + m * b)
            clauses.append(f"{src}(c)" if _prop_c_applies(src, m, n) else "gen(5)")
        else:
            cond_i = q == 2 and m >= 3
            cond_ii = q != 2 and m >= 2
            cond_iii = factor_spans_module(F, kind, n, fc.diag, i - 1)
            if cond_i or cond_ii or cond_iii:
                derived.append(gser[i] + fser[i] + m * b)
                if _prop_c_applies(src, m, n):
                    clauses.append(f"{src}(c)")
                else:
                    clauses.append("gen(6)(" + ("i" if cond_i else "ii" if cond_ii else "iii") + ")")
            else:
                if recursion is None:
                    recursion = _hom_recursion(F, fc, depth)
                derived.append(gser[i] + fser[i] + recursion[i - 1])
                clauses.append("sd(4)")

    rad = radical_candidate(fc)
    if kind is FormKind.ZERO:
        lit, rclause = None, "glsl"
    else:
        lit = literal_radical_dim(q, kind, m, n, dim_o, dim_factor)
        rclause = f"{src}(a)"
    return StructurePrediction(
        source=src,
        kind=kind,
        m=m,
        n=n,
        block=b,
        char=q,
        dim_o=dim_o,
        dim_obar=dim_o + codim,
        codim=codim,
        derived_dims=derived,
        derived_clauses=clauses,
        radical_basis=rad,
        radical_dim=len(rad),
        ss_quotient_dim=dim_o - len(rad),
        solvable=predicted_solvable(q, kind, m if kind is not FormKind.ZERO else d, n),
        solvable_clause=f"{src}(d)" if kind is not FormKind.ZERO else "glsl",
        literal_radical_dim=lit,
        radical_clause=rclause,
        weight_labels=_weight_labels(q, kind, m, n),
    )
