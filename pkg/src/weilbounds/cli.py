"""Batch command-line front end.

    weilbounds count    VARIETY.json [--rmax R]
    weilbounds bounds   VARIETY.json [--rmax R] [--katz-eight]
    weilbounds zeta     VARIETY.json [--rmax R] [--tmax T] [--genus G] [--rh-tol TOL]
    weilbounds singular VARIETY.json [--rmax R]
    weilbounds betti    --ambient N --multidegree d1,d2,...

Exit status: 0 when no non-conjectural check fails, 1 when one does, 2 on
any input or runtime error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bounds as B
from .counter import (
    AFFINE,
    DEFAULT_POINT_CAP,
    PROJECTIVE,
    CountTable,
    Flags,
    VarietySpec,
    count_points,
    count_table,
    resolve_partitions,
    singular_census,
)
from .errors import NonHomogeneousForm, SchemaError, WeilBoundsError
from .ffield import DEFAULT_FIELD_CAP, make_field
from .invariants import Multidegree, betti_bound, matching_closed_forms, plane_arith_genus, primitive_betti
from .mpoly import is_homogeneous, parse_poly
from .zeta import (
    check_functional_equation,
    check_riemann_hypothesis,
    cone_counts,
    cone_factorization_check,
    counts_from_curve_zeta,
    fit_curve_numerator,
)

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

# tuples, not sets: the first missing key reported must not depend on hashing
_REQUIRED_TOP = ("field", "ambient", "forms", "declared")
_TOP_KEYS = _REQUIRED_TOP + ("cone_of",)
_FLAG_KEYS = ("irreducible", "nonsingular", "normal", "isolated_singularities",
              "complete_intersection")
_DECLARED_KEYS = ("dim", "sing_dim") + _FLAG_KEYS


# -- input files --------------------------------------------------------------

def _expect_keys(path, obj, allowed, required, where):
    if not isinstance(obj, dict):
        raise SchemaError(path, where, "expected an object")
    for key in obj:
        if key not in allowed:
            raise SchemaError(path, f"{where}.{key}" if where else key, "unknown key")
    for key in required:
        if key not in obj:
            raise SchemaError(path, f"{where}.{key}" if where else key, "missing")


def _expect_type(path, value, typ, where):
    # bool is an int subclass; keep them apart
    if typ is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise SchemaError(path, where, "expected an integer")
    if typ is bool and not isinstance(value, bool):
        raise SchemaError(path, where, "expected a boolean")
    if typ is str and not isinstance(value, str):
        raise SchemaError(path, where, "expected a string")


def load_variety(path, *, field_cap: int = DEFAULT_FIELD_CAP) -> VarietySpec:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(str(path), "<document>", str(exc)) from None
    where = str(path)
    _expect_keys(where, doc, _TOP_KEYS, _REQUIRED_TOP, "")

    fld = doc["field"]
    _expect_keys(where, fld, ("p", "k"), ("p", "k"), "field")
    _expect_type(where, fld["p"], int, "field.p")
    _expect_type(where, fld["k"], int, "field.k")

    amb = doc["ambient"]
    _expect_keys(where, amb, ("type", "dim"), ("type", "dim"), "ambient")
    if amb["type"] not in (PROJECTIVE, AFFINE):
        raise SchemaError(where, "ambient.type", "expected 'projective' or 'affine'")
    _expect_type(where, amb["dim"], int, "ambient.dim")
    if amb["dim"] < 0:
        raise SchemaError(where, "ambient.dim", "must be nonnegative")

    forms = doc["forms"]
    if not isinstance(forms, list):
        raise SchemaError(where, "forms", "expected a list of strings")
    for i, src in enumerate(forms):
        _expect_type(where, src, str, f"forms[{i}]")

    decl = doc["declared"]
    _expect_keys(where, decl, _DECLARED_KEYS, _DECLARED_KEYS, "declared")
    _expect_type(where, decl["dim"], int, "declared.dim")
    _expect_type(where, decl["sing_dim"], int, "declared.sing_dim")
    for key in _FLAG_KEYS:
        _expect_type(where, decl[key], bool, f"declared.{key}")

    cone_of = doc.get("cone_of")
    if cone_of is not None:
        _expect_type(where, cone_of, str, "cone_of")
        cone_of = str((path.parent / cone_of).resolve())

    field_spec = make_field(fld["p"], fld["k"], field_cap=field_cap)
    N = amb["dim"]
    nvars = N + 1 if amb["type"] == PROJECTIVE else N
    polys = [parse_poly(src, nvars, fld["p"]) for src in forms]
    if amb["type"] == PROJECTIVE:
        for i, f in enumerate(polys):
            if not is_homogeneous(f):
                raise NonHomogeneousForm(i)
    flags = Flags(**{key: decl[key] for key in _FLAG_KEYS})
    return VarietySpec(field_spec, amb["type"], N, polys, decl["dim"], decl["sing_dim"],
                       flags, path.stem, cone_of)


# -- commands -----------------------------------------------------------------

def _count_kwargs(cfg):
    partitions = resolve_partitions(cfg.partitions)
    workers = min(partitions, os.cpu_count() or 1)
    return dict(partitions=partitions, workers=workers,
                point_cap=cfg.point_cap, field_cap=cfg.field_cap)


def _counts_payload(counts: CountTable):
    return [{"r": r, "N": counts.entries[r]} for r in sorted(counts.entries)]


def _fmt_point(pt) -> str:
    return "(" + ":".join(repr(x) for x in pt) + ")"


def cmd_count(cfg):
    v = load_variety(cfg.input, field_cap=cfg.field_cap)
    counts = count_table(v, cfg.rmax, **_count_kwargs(cfg))
    return EXIT_OK, {"command": "count", "variety": v.name, "q": v.q,
                     "counts": _counts_payload(counts)}


def cmd_bounds(cfg):
    v = load_variety(cfg.input, field_cap=cfg.field_cap)
    counts = count_table(v, cfg.rmax, **_count_kwargs(cfg))
    report = B.evaluate_all(v, counts, katz_eight=cfg.katz_eight)
    payload = {"command": "bounds", **report.to_dict(), "counts": _counts_payload(counts)}
    return (EXIT_FAIL if report.failures() else EXIT_OK), payload


def _resolve_genus(cfg, curve: VarietySpec) -> int:
    if cfg.genus is not None:
        return cfg.genus
    if (curve.ambient == PROJECTIVE and curve.N == 2 and curve.m == 1
            and curve.flags.nonsingular):
        return plane_arith_genus(curve.degree)
    raise WeilBoundsError("--genus is required unless the curve is a nonsingular plane curve")


def _curve_zeta_block(cfg, curve: VarietySpec, kw):
    g = _resolve_genus(cfg, curve)
    rmax = max(cfg.rmax, 2 * g)
    counts = count_table(curve, rmax, **kw)
    cz = fit_curve_numerator(counts, curve.q, g)
    fe = check_functional_equation(cz)
    rh = check_riemann_hypothesis(cz, cfg.rh_tol)
    predictions = []
    for r in range(2 * g + 1, rmax + 1):
        predicted = counts_from_curve_zeta(cz, r)
        predictions.append({"r": r, "predicted": predicted, "counted": counts.entries[r],
                            "match": predicted == counts.entries[r]})
    block = {
        "curve": curve.name, "q": curve.q, "genus": g, "a": list(cz.a),
        "counts": _counts_payload(counts),
        "functional_equation": fe,
        "rh_exact": rh.exact_pass, "rh_numeric": rh.numeric_pass,
        "rh_worst_deviation": float(f"{rh.worst_deviation:.3e}"),
        "predictions": predictions,
    }
    ok = fe and rh.passed and all(p["match"] for p in predictions)
    return ok, cz, counts, block


def cmd_zeta(cfg):
    v = load_variety(cfg.input, field_cap=cfg.field_cap)
    kw = _count_kwargs(cfg)
    curve = load_variety(v.cone_of, field_cap=cfg.field_cap) if v.cone_of else v
    ok, cz, curve_counts, block = _curve_zeta_block(cfg, curve, kw)
    payload = {"command": "zeta", "variety": v.name, **block}
    if v.cone_of:
        tmax = cfg.tmax
        if curve_counts.r_max < tmax:
            curve_counts = count_table(curve, tmax, **kw)
        counted = CountTable(v.q, {m: count_points(v, m, **kw) for m in range(1, tmax + 1)})
        expected = cone_counts(curve_counts, v.q, tmax)
        counts_ok = counted.entries == expected.entries
        factor_ok = cone_factorization_check(cz, counted, tmax)
        payload["cone"] = {
            "counts": _counts_payload(counted),
            "expected_counts": _counts_payload(expected),
            "counts_match": counts_ok,
            "factorization_holds": factor_ok,
            "tmax": tmax,
        }
        ok = ok and counts_ok and factor_ok
    return (EXIT_OK if ok else EXIT_FAIL), payload


def cmd_singular(cfg):
    v = load_variety(cfg.input, field_cap=cfg.field_cap)
    census = []
    for r in range(1, cfg.rmax + 1):
        pts = singular_census(v, r, point_cap=cfg.point_cap, field_cap=cfg.field_cap)
        census.append({"r": r, "points": [_fmt_point(pt) for pt in pts]})
    nonempty = any(entry["points"] for entry in census)
    contradiction = nonempty and v.sing_dim == -1
    notes = ["an empty census only covers rational points of the fields searched; "
             "it does not certify nonsingularity"]
    if not v.flags.complete_intersection:
        notes.append("Jacobian rank < #forms detects singular points only for complete intersections")
    if contradiction:
        notes.append("singular points found although the variety is declared nonsingular")
    payload = {"command": "singular", "variety": v.name, "q": v.q, "census": census,
               "contradicts_declaration": contradiction, "notes": notes}
    return (EXIT_FAIL if contradiction else EXIT_OK), payload


def cmd_betti(cfg):
    if cfg.ambient is None or cfg.multidegree is None:
        raise WeilBoundsError("betti needs --ambient and --multidegree")
    try:
        md = Multidegree(tuple(int(x) for x in cfg.multidegree.split(",")))
    except ValueError as exc:
        raise WeilBoundsError(f"bad --multidegree: {exc}") from None
    b = primitive_betti(cfg.ambient, md)
    first, second = betti_bound(cfg.ambient, md)
    closed = matching_closed_forms(cfg.ambient, md)
    payload = {
        "command": "betti", "N": cfg.ambient, "n": b.n, "multidegree": list(md.degrees),
        "primitive_betti": b.value, "bound_first": first, "bound_second": second,
        "closed_forms": [{"shape": k, "value": closed[k]} for k in sorted(closed)],
    }
    ok = b.value <= first <= second and all(val == b.value for val in closed.values())
    return (EXIT_OK if ok else EXIT_FAIL), payload


COMMANDS = {
    "count": cmd_count,
    "bounds": cmd_bounds,
    "zeta": cmd_zeta,
    "singular": cmd_singular,
    "betti": cmd_betti,
}


# -- rendering ----------------------------------------------------------------

def _table(headers, rows) -> list[str]:
    cells = [[str(h) for h in headers]] + [["" if c is None else str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return lines


def render_table(payload: dict) -> str:
    """Human-readable view; depends only on the JSON payload."""
    cmd = payload["command"]
    out = []
    if cmd == "count":
        out.append(f"{payload['variety']} over F_{payload['q']}")
        out += _table(["r", "N_r"], [(c["r"], c["N"]) for c in payload["counts"]])
    elif cmd == "bounds":
        out.append(f"{payload['variety']} over F_{payload['q']}")
        rows = []
        for rec in payload["records"]:
            if not rec["applicable"]:
                continue
            rows.append((rec["name"] + (" (conjecture)" if rec["is_conjecture"] else ""),
                         rec["r"], rec["kind"], rec["center"], rec["lo"], rec["hi"],
                         rec["actual"], rec["verdict"]))
        out += _table(["check", "r", "kind", "center", "floor", "ceil", "actual", "verdict"], rows)
        skipped = [rec for rec in payload["records"] if not rec["applicable"] and rec["r"] == 1]
        if skipped:
            out.append("")
            out.append("not applicable:")
            out += [f"  {rec['name']}: {rec['reason']}" for rec in skipped]
        tagged = sorted({(rec["name"], tag) for rec in payload["records"] for tag in rec["tags"]})
        if tagged:
            out.append("")
            out.append("notes:")
            out += [f"  {name}: {tag}" for name, tag in tagged]
        for w in payload["warnings"]:
            out.append(f"warning: {w}")
    elif cmd == "zeta":
        out.append(f"{payload['curve']} over F_{payload['q']}, genus {payload['genus']}")
        out += _table(["r", "N_r"], [(c["r"], c["N"]) for c in payload["counts"]])
        out.append(f"P_1 coefficients: {payload['a']}")
        out.append(f"functional equation: {payload['functional_equation']}")
        out.append(f"RH exact: {payload['rh_exact']}  numeric: {payload['rh_numeric']}"
                   f"  worst deviation: {payload['rh_worst_deviation']}")
        for p in payload["predictions"]:
            out.append(f"predicted N_{p['r']} = {p['predicted']}, counted {p['counted']}")
        if "cone" in payload:
            cone = payload["cone"]
            out.append(f"cone {payload['variety']}:")
            out += _table(["m", "counted", "q^m N_m + 1"],
                          [(c["r"], c["N"], e["N"]) for c, e in zip(cone["counts"], cone["expected_counts"])])
            out.append(f"counts match: {cone['counts_match']}")
            out.append(f"Z(X,T) = P_1(C,qT)/((1-q^2T)(1-qT)(1-T)) through T^{cone['tmax']}: "
                       f"{cone['factorization_holds']}")
    elif cmd == "singular":
        out.append(f"{payload['variety']} over F_{payload['q']}")
        for entry in payload["census"]:
            pts = ", ".join(entry["points"]) if entry["points"] else "none"
            out.append(f"r={entry['r']}: {pts}")
        out += [f"note: {n}" for n in payload["notes"]]
    elif cmd == "betti":
        out.append(f"N={payload['N']} n={payload['n']} multidegree={payload['multidegree']}")
        out.append(f"primitive Betti number: {payload['primitive_betti']}")
        out.append(f"bounds: {payload['bound_first']} <= {payload['bound_second']}")
        for cf in payload["closed_forms"]:
            out.append(f"closed form ({cf['shape']}): {cf['value']}")
    else:
        raise ValueError(f"unknown command {cmd!r}")
    return "\n".join(out) + "\n"


def render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weilbounds", description=__doc__.split("\n")[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("input", nargs="?", help="variety definition (JSON)")
    parser.add_argument("--rmax", type=int, default=1, help="count over F_{q^r} for r = 1..RMAX")
    parser.add_argument("--tmax", type=int, default=2, help="cone extensions checked by zeta")
    parser.add_argument("--genus", type=int, help="curve genus for zeta (derived for smooth plane curves)")
    parser.add_argument("--partitions", type=int, default=1,
                        help="work partitions for counting (WEILBOUNDS_THREADS overrides)")
    parser.add_argument("--point-cap", type=int, default=DEFAULT_POINT_CAP,
                        help="refuse to enumerate more points than this")
    parser.add_argument("--field-cap", type=int, default=DEFAULT_FIELD_CAP,
                        help="refuse fields larger than this")
    parser.add_argument("--format", choices=("table", "json"), default="table")
    parser.add_argument("--rh-tol", type=float, default=1e-6,
                        help="relative tolerance for root moduli")
    parser.add_argument("--katz-eight", action="store_true",
                        help="use the constant 8 in place of 9 in the tau bound")
    parser.add_argument("--ambient", type=int, help="betti: ambient dimension N")
    parser.add_argument("--multidegree", help="betti: comma-separated degrees, e.g. 2,3")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    cfg = parser.parse_args(argv)
    if cfg.command != "betti" and not cfg.input:
        parser.error(f"{cfg.command} needs an input file")
    if cfg.rmax < 1 or cfg.tmax < 1 or cfg.point_cap < 1 or cfg.field_cap < 1:
        parser.error("--rmax, --tmax and caps must be positive")
    try:
        code, payload = COMMANDS[cfg.command](cfg)
    except (WeilBoundsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(render_json(payload) if cfg.format == "json" else render_table(payload))
    warnings = [w for w in payload.get("warnings", []) if "conjecture" in w]
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
