"""Compare computed o(M), o-bar(M) against the closed-form predictions."""

from __future__ import annotations

import time
from contextlib import contextmanager

from .exactmat import ExactMatrix
from .forms import FormClass, FormKind, Symmetry, classify_symmetry, normal_form
from .liealg import (
    LieSubalgebra,
    derived_series,
    derived_subalgebra,
    is_ideal,
    is_solvable,
    quotient,
    verify_semidirect,
)
from .predictions import factor_derived, factor_spans_module, gv_expected, predict
from .report import NA, Check, StructureReport, compare, flag, not_applicable, truth
from .stabilizer import StabilizerPair, lambda_vanishes_on_brackets, stab, stab_bar


@contextmanager
def _timed(report: StructureReport, key: str):
    t0 = time.perf_counter()
    try:
        yield
    finally:
        report.timings[key] = report.timings.get(key, 0.0) + time.perf_counter() - t0


def cell_of(fc: FormClass) -> dict:
    F = fc.field
    cell = {"field": str(F), "kind": fc.kind.value, "m": fc.m, "n": fc.n}
    if fc.kind is FormKind.DIAGONAL:
        cell["D"] = [F.format(a) for a in fc.diag]
    return cell


def block_algebra(fc: FormClass) -> tuple[list[tuple], list[tuple], list[tuple]]:
    """(gl_m part, o(N) part, Hom part) of the block description, normal coordinates."""
    from .predictions import _embed, factor_basis
    from .liealg import gl

    F = fc.field
    m, b = fc.m, fc.block_size
    d = m + b
    top = [_embed(F, d, 0, m, v) for v in gl(F, m).basis] if m else []
    _, fb = factor_basis(F, fc.kind, fc.n, fc.diag)
    bottom = [_embed(F, d, m, b, v) for v in fb]
    hom = []
    for i in range(m):
        for j in range(m, d):
            v = [F.zero] * (d * d)
            v[i * d + j] = F.one
            hom.append(tuple(v))
    return top, bottom, hom


def lower_left_zero(g: LieSubalgebra, m: int) -> bool:
    d = g.ambient_dim
    return all(not v[i * d + j] for v in g.basis for i in range(m, d) for j in range(m))


def _to_original(fc: FormClass, vectors) -> list[tuple]:
    """Y in o(g^T M g) maps to g Y g^-1 in o(M)."""
    g = fc.transform
    ginv = g.inverse()
    d = g.nrows
    return [(g @ ExactMatrix.from_flat(g.field, d, y) @ ginv).flatten() for y in vectors]


def _lambda_witness_checks(fc: FormClass, pair: StabilizerPair) -> list[Check]:
    F = fc.field
    q = F.p
    d = fc.dim
    out = []
    if fc.kind is FormKind.ZERO:
        return out
    if q != 2:
        ident = ExactMatrix.identity(F, d).flatten()
        lam = pair.lam(ident)
        out.append(compare("lambda(I_d)", "barses(1)", F.format(F.coerce(2)), None if lam is None else F.format(lam)))
    elif fc.kind is FormKind.SYMPLECTIC:
        x = [F.zero] * (d * d)
        for i in range(fc.m + fc.n, d):
            x[i * d + i] = F.one
        (xo,) = _to_original(fc, [tuple(x)])
        lam = pair.lam(xo)
        out.append(compare("lambda(0_(m+n) + I_n)", "table", "1", None if lam is None else F.format(lam)))
    return out


def verify_structure(M: ExactMatrix, depth: int = 3) -> StructureReport:
    F = M.field
    q = F.p
    sym = classify_symmetry(M)
    report = StructureReport(cell={"field": str(F), "d": M.nrows, "symmetry": sym.value})
    add = report.add

    with _timed(report, "stab"):
        pair = stab_bar(M)
    o = pair.o
    report.summary = {"dim_o": o.dim, "dim_obar": pair.obar.dim, "codim": pair.codim}
    if sym is Symmetry.NEITHER:
        add(not_applicable("structural checks", "table", computed=o.dim))
        return report

    with _timed(report, "normal_form"):
        fc = normal_form(M)
    report.cell.update(cell_of(fc))
    pred = predict(fc, depth)
    m = fc.m
    d = fc.dim

    # dimensions and the o / o-bar dichotomy
    add(compare("dim o", "gen(2)", pred.dim_o, o.dim))
    add(compare("dim obar", "table", pred.dim_obar, pair.obar.dim))
    add(compare("codim(o in obar)", "barses", pred.codim, pair.codim))
    report.extend(_lambda_witness_checks(fc, pair))
    with _timed(report, "lambda"):
        d_obar = derived_subalgebra(pair.obar)
        add(truth("lambda vanishes on [obar, obar]", "barses", lambda_vanishes_on_brackets(pair, d_obar)))
        if fc.kind is not FormKind.ZERO:
            if q != 2:
                d_o = derived_subalgebra(o)
                add(truth("obar^(1) = o^(1)", "barses(1)", d_obar == d_o))
            else:
                ok = o.contains_all(d_obar.basis) and is_ideal(pair.obar, pair.obar.subspace(o.basis))
                add(truth("o is an ideal of obar containing obar^(1)", "barses(2)", ok))

    # block shape in normal coordinates
    with _timed(report, "block"):
        on = stab(fc.normal_gram)
        top, bottom, hom = block_algebra(fc)
        add(truth("lower-left block of o(normal M) is zero", "gen(1)", lower_left_zero(on, m)))
        explicit = LieSubalgebra(F, d, top + bottom + hom, check=False)
        add(truth("o(normal M) = block description", "gen(1)", explicit == on))
        h = on.subspace(top + bottom)
        v = on.subspace(hom)
        add(truth("o(normal M) = (gl_m + o(N)) x Hom", "gen(2)", verify_semidirect(on, h, v)))
        transported = LieSubalgebra(F, d, _to_original(fc, on.basis), check=False)
        add(truth("o(M) = g o(g^T M g) g^-1", "gen(1)", transported == o))

    # derived series
    with _timed(report, "derived"):
        series = derived_series(o, depth)
    for i, (want, got, clause) in enumerate(zip(pred.derived_dims, series, pred.derived_clauses), start=1):
        add(compare(f"dim o^({i})", clause, want, got.dim))
    report.summary["derived_dims"] = [s.dim for s in series]
    if depth >= 3 and pred.derived_dims[2] == pred.derived_dims[1]:
        add(truth("o^(3) = o^(2)", pred.derived_clauses[2], series[2] == series[1]))

    # radical candidate
    with _timed(report, "radical"):
        rad_vecs = _to_original(fc, pred.radical_basis)
        inside = o.contains_all(rad_vecs)
        add(truth("radical candidate lies in o(M)", pred.radical_clause, inside))
        if inside:
            rad = o.subspace(rad_vecs)
            ideal = is_ideal(o, rad)
            add(truth("radical candidate is an ideal", "gen(3)", ideal))
            add(truth("radical candidate is solvable", "gen(3)", is_solvable(rad.as_algebra(check=False))))
            add(compare("dim radical candidate", "gen(3)", pred.radical_dim, rad.dim))
            if ideal:
                qt = quotient(o, rad, check=False)
                add(compare("dim o / rad", "gen(4)", pred.ss_quotient_dim, qt.dim))
                add(compare("dim Z(o / rad)", "gen(4)", 0, len(qt.center())))
        if pred.literal_radical_dim is not None:
            add(flag("radical dim, literal case formula", pred.radical_clause, pred.literal_radical_dim, pred.radical_dim))
    with _timed(report, "solvable"):
        solv = is_solvable(o)
    add(compare("o(M) solvable", pred.solvable_clause, pred.solvable, solv))
    report.summary["solvable"] = solv

    # module spans of the factor
    if fc.kind is not FormKind.ZERO:
        report.extend(module_span_checks(fc, depth))
    return report


def expected_span(q: int, kind: FormKind, n: int, level: int, level_dim: int) -> bool | None:
    if level_dim == 0:
        return False
    return True if gv_expected(q, kind, n) is not None else None


def module_span_checks(fc: FormClass, depth: int = 3) -> list[Check]:
    F = fc.field
    q = F.p
    out = []
    gv = gv_expected(q, fc.kind, fc.n)
    if gv is not None:
        clause, level = gv
        out.append(truth(f"o(N)^({level}) V = V", clause, factor_spans_module(F, fc.kind, fc.n, fc.diag, level)))
    if fc.m == 0:
        return out
    chain = factor_derived(F, fc.kind, fc.n, fc.diag, depth)
    for i in range(2, depth + 1):
        got = factor_spans_module(F, fc.kind, fc.n, fc.diag, i - 1)
        want = expected_span(q, fc.kind, fc.n, i - 1, chain[i - 1].dim)
        name = f"hypothesis o(N)^({i - 1}) V = V"
        if want is None:
            out.append(Check(name, "gen(6)(iii)", None, got, NA))
        else:
            out.append(compare(name, "gen(6)(iii)", want, got))
    return out
