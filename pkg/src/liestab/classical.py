"""Explicit bases for gl_n, sl_n, o(D), sp_2n (and its derived terms), scalar lines and Witt algebras.

Spec strings::

    gl(3)  sl(3)  o(1,1,2)  sp(6)  sp(6)^(1)  sp(6)^(2)  k(3)  W(1,3)

Witt algebras are not hand-coded: ``W(n,p)`` runs the generic derivation
solver on k[t_1..t_n]/(t_i^p).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import BadSpec
from .field import FieldSpec
from .liealg import (
    LieSubalgebra,
    center,
    derived_series,
    gl,
    is_abelian,
    is_ideal,
    is_perfect,
    is_solvable,
    quotient,
)
from .report import Check, compare, truth


class Family(str, Enum):
    GL = "gl"
    SL = "sl"
    ODIAG = "o"
    SP = "sp"
    SP_DERIVED = "sp_derived"
    SCALAR = "k"
    WITT = "W"


@dataclass(frozen=True)
class ClassicalSpec:
    family: Family
    field: FieldSpec
    size: int = 0
    diag: tuple = ()
    level: int = 0

    def label(self) -> str:
        F = self.field
        if self.family is Family.ODIAG:
            return "o(" + ",".join(F.format(a) for a in self.diag) + ")"
        if self.family is Family.SP_DERIVED:
            return f"sp({self.size})^({self.level})"
        if self.family is Family.WITT:
            return f"W({self.size},{F.p})"
        return f"{self.family.value}({self.size})"


_SPEC_RE = re.compile(r"^\s*(gl|sl|o|sp|k|W)\s*\(([^)]*)\)\s*(?:\^\s*\(\s*(\d+)\s*\))?\s*$")


def parse_spec(text: str, field: FieldSpec) -> ClassicalSpec:
    match = _SPEC_RE.match(text)
    if not match:
        raise BadSpec(f"cannot parse algebra spec {text!r}")
    name, args, level = match.group(1), match.group(2), match.group(3)
    parts = [a.strip() for a in args.split(",") if a.strip()]
    if level is not None and name != "sp":
        raise BadSpec("only sp(2n) accepts a derived level")
    if name == "o":
        try:
            diag = tuple(field.parse_scalar(a) for a in parts)
        except ValueError as exc:
            raise BadSpec(str(exc)) from None
        spec = ClassicalSpec(Family.ODIAG, field, len(diag), diag)
    elif name == "W":
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise BadSpec("Witt spec must be W(n,p)")
        n, p = int(parts[0]), int(parts[1])
        if field.p != p:
            raise BadSpec(f"W({n},{p}) needs characteristic {p}, got {field}")
        spec = ClassicalSpec(Family.WITT, field, n)
    else:
        if len(parts) != 1 or not parts[0].isdigit():
            raise BadSpec(f"{name}(...) takes a single size")
        size = int(parts[0])
        if name == "sp" and level:
            spec = ClassicalSpec(Family.SP_DERIVED, field, size, level=int(level))
        else:
            spec = ClassicalSpec(Family(name), field, size)
    validate(spec)
    return spec


def validate(spec: ClassicalSpec) -> None:
    F = spec.field
    fam = spec.family
    if spec.size < 0:
        raise BadSpec("size must be non-negative")
    if fam is Family.ODIAG and not all(spec.diag):
        raise BadSpec("o(D) needs nonzero diagonal entries")
    if fam in (Family.SP, Family.SP_DERIVED) and spec.size % 2:
        raise BadSpec("sp needs an even size")
    if fam is Family.SP_DERIVED:
        if F.p != 2:
            raise BadSpec("explicit sp^(1), sp^(2) constructors exist only in characteristic 2")
        if spec.level not in (1, 2):
            raise BadSpec("sp derived level must be 1 or 2")
    if fam is Family.WITT:
        if not F.p:
            raise BadSpec("Witt algebras need positive characteristic")
        if spec.size < 1:
            raise BadSpec("W(n,p) needs n >= 1")


def _unit(F: FieldSpec, d: int, entries) -> tuple:
    v = [F.zero] * (d * d)
    for (i, j), a in entries:
        v[i * d + j] = F.add(v[i * d + j], F.coerce(a))
    return tuple(v)


def gl_basis(F: FieldSpec, n: int) -> list[tuple]:
    return [_unit(F, n, [((i, j), 1)]) for i in range(n) for j in range(n)]


def sl_basis(F: FieldSpec, n: int) -> list[tuple]:
    out = [_unit(F, n, [((i, j), 1)]) for i in range(n) for j in range(n) if i != j]
    out += [_unit(F, n, [((i, i), 1), ((i + 1, i + 1), -1)]) for i in range(n - 1)]
    return out


def odiag_basis(F: FieldSpec, diag) -> list[tuple]:
    """Solutions of D_ii X_ij + D_jj X_ji = 0."""
    n = len(diag)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(_unit(F, n, [((i, j), diag[j]), ((j, i), F.neg(diag[i]))]))
    if F.p == 2:
        out += [_unit(F, n, [((i, i), 1)]) for i in range(n)]
    return out


def sp_basis(F: FieldSpec, n: int, level: int = 0) -> list[tuple]:
    """[[A, B], [C, -A^T]] with symmetric B, C (alternating for level >= 1, A in sl_n for level 2)."""
    d = 2 * n
    out = []
    a_part = sl_basis(F, n) if level == 2 else gl_basis(F, n)
    for a in a_part:
        entries = []
        for i in range(n):
            for j in range(n):
                x = a[i * n + j]
                if x:
                    entries.append(((i, j), x))
                    entries.append(((n + j, n + i), F.neg(x)))
        out.append(_unit(F, d, entries))
    for i in range(n):
        for j in range(i, n):
            if i == j and level:
                continue
            if i == j:
                out.append(_unit(F, d, [((i, n + i), 1)]))
                out.append(_unit(F, d, [((n + i, i), 1)]))
            else:
                out.append(_unit(F, d, [((i, n + j), 1), ((j, n + i), 1)]))
                out.append(_unit(F, d, [((n + i, j), 1), ((n + j, i), 1)]))
    return out


def scalar_line(F: FieldSpec, d: int) -> list[tuple]:
    return [_unit(F, d, [((i, i), 1) for i in range(d)])] if d else []


def ambient_dim(spec: ClassicalSpec) -> int:
    if spec.family is Family.WITT:
        return spec.field.p ** spec.size
    return spec.size


def build(spec: ClassicalSpec, check: bool = False) -> LieSubalgebra:
    """Subalgebra for ``spec``; ``check`` re-verifies bracket closure."""
    validate(spec)
    F = spec.field
    fam = spec.family
    if fam is Family.GL:
        return gl(F, spec.size)
    if fam is Family.SL:
        vecs = sl_basis(F, spec.size)
    elif fam is Family.ODIAG:
        vecs = odiag_basis(F, spec.diag)
    elif fam is Family.SP:
        vecs = sp_basis(F, spec.size // 2)
    elif fam is Family.SP_DERIVED:
        vecs = sp_basis(F, spec.size // 2, spec.level)
    elif fam is Family.SCALAR:
        vecs = scalar_line(F, spec.size)
    else:
        from .gradedalg import derivations, truncated_polynomial_algebra

        return derivations(truncated_polynomial_algebra(F, spec.size, F.p))
    return LieSubalgebra(F, spec.size, vecs, check=check)


def expected_dim(spec: ClassicalSpec) -> int:
    n = spec.size
    fam = spec.family
    q = spec.field.p
    if fam is Family.GL:
        return n * n
    if fam is Family.SL:
        return max(n * n - 1, 0)
    if fam is Family.ODIAG:
        return n * (n + 1) // 2 if q == 2 else n * (n - 1) // 2
    if fam is Family.SCALAR:
        return 1 if n else 0
    if fam is Family.WITT:
        return n * q ** n
    h = n // 2
    if fam is Family.SP:
        return 2 * h * h + h
    return 2 * h * h - h - (spec.level - 1)


# -- generic recomputation of the background facts ---------------------------

def _same_space(a: LieSubalgebra, b: LieSubalgebra) -> bool:
    return a.basis == b.basis


def classical_checks(field: FieldSpec, max_n: int = 3) -> list[Check]:
    """Recompute the classical background facts for one field."""
    F = field
    q = F.p
    two = q == 2
    out: list[Check] = []

    for n in range(1, max_n + 1):
        g = build(ClassicalSpec(Family.GL, F, n))
        s = build(ClassicalSpec(Family.SL, F, n), check=True)
        out.append(compare(f"gl({n}) dim", "glsl", n * n, g.dim))
        out.append(compare(f"sl({n}) dim", "glsl", n * n - 1, s.dim))
        if n >= 2:
            out.append(truth(f"gl({n})^(1) = sl({n})", "glsl", _same_space(derived_series(g, 1)[0], s)))
        z = center(g)
        out.append(compare(f"Z(gl({n})) dim", "glsl", 1, z.dim))
        if two and n == 2:
            out.append(truth("gl(2), sl(2) solvable", "char2glsl", is_solvable(g) and is_solvable(s)))
        if n >= 3 or (not two and n >= 2):
            out.append(truth(f"sl({n}) perfect", "glsl", is_perfect(s)))

    for n in range(1, max_n + 1):
        ones = tuple(F.one for _ in range(n))
        o = build(ClassicalSpec(Family.ODIAG, F, n, ones), check=True)
        out.append(compare(f"o(I_{n}) dim", "oD", n * (n + 1) // 2 if two else n * (n - 1) // 2, o.dim))
        if two:
            d1 = derived_series(o, 1)[0]
            zero_diag = [v for v in o.basis if not any(v[i * n + i] for i in range(n))]
            target = LieSubalgebra(F, n, zero_diag, check=False)
            out.append(truth(f"o(I_{n})^(1) = zero-diagonal part", "char2oD", _same_space(d1, target)))
            if n <= 2:
                out.append(truth(f"o(I_{n})^(1) solvable", "char2oD", is_solvable(d1)))
            if n >= 3:
                z = center(o)
                line = LieSubalgebra(F, n, scalar_line(F, n), check=False)
                out.append(truth(f"Z(o(I_{n})) = kI", "rad(a)", z.basis == line.basis, computed=z.dim))
                sub = o.subspace(line.basis)
                ok = is_ideal(o, sub) and is_solvable(line) and not quotient(o, sub).center()
                out.append(truth(f"o(I_{n})/kI centreless, kI solvable ideal", "rad(a)", ok))
                out.append(truth(f"o(I_{n})^(1) perfect", "char2oD", is_perfect(d1)))
        else:
            if n == 1:
                out.append(compare("o(D), n=1, is zero", "charn2oD", 0, o.dim))
            elif n == 2:
                out.append(truth("o(D), n=2, 1-dim abelian", "charn2oD", o.dim == 1 and is_abelian(o)))
            else:
                ok = is_perfect(o) and center(o).dim == 0
                out.append(truth(f"o(I_{n}) perfect and centreless", "charn2oD", ok))

    for n in range(1, max_n + 1):
        sp = build(ClassicalSpec(Family.SP, F, 2 * n), check=True)
        out.append(compare(f"sp({2 * n}) dim", "sp", 2 * n * n + n, sp.dim))
        if two:
            series = derived_series(sp, 2)
            for lvl in (1, 2):
                c = build(ClassicalSpec(Family.SP_DERIVED, F, 2 * n, level=lvl), check=True)
                out.append(compare(f"sp({2 * n})^({lvl}) dim", "char2spl", 2 * n * n - n - (lvl - 1), c.dim))
                out.append(truth(f"sp({2 * n})^({lvl}) = explicit form", "char2spl", _same_space(series[lvl - 1], c)))
            if n <= 2:
                out.append(truth(f"sp({2 * n}) solvable", "char2spl", is_solvable(sp)))
            else:
                out.append(truth(f"sp({2 * n})^(2) perfect", "char2spl", is_perfect(series[1])))
                z = center(sp)
                line = scalar_line(F, 2 * n)
                out.append(truth(f"Z(sp({2 * n})) = kI", "rad(b)", list(z.basis) == line, computed=z.dim))
                sub = sp.subspace(line)
                ok = is_ideal(sp, sub) and not quotient(sp, sub).center()
                out.append(truth(f"sp({2 * n})/kI centreless, kI solvable ideal", "rad(b)", ok))
        else:
            ok = is_perfect(sp) and center(sp).dim == 0
            out.append(truth(f"sp({2 * n}) perfect and centreless", "charn2spl", ok))

    if q == 3:
        w = build(ClassicalSpec(Family.WITT, F, 1))
        out.append(compare("W(1,3) dim", "witt", 3, w.dim))
        out.append(truth("W(1,3) perfect", "witt", is_perfect(w)))
    if q == 2:
        w = build(ClassicalSpec(Family.WITT, F, 1))
        out.append(compare("W(1,2) dim", "witt", 2, w.dim))
        out.append(truth("W(1,2) solvable", "witt", is_solvable(w)))
        w2 = build(ClassicalSpec(Family.WITT, F, 2))
        out.append(compare("W(2,2) dim", "witt", 8, w2.dim))
    return out
