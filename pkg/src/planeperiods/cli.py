"""Command line entry point.

Exit codes: 0 success (verify: Accept), 1 domain failure (verify:
Reject), 2 usage or input errors.  JSON mode prints exactly one
document per invocation and is byte-stable for a fixed seed and
config.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from .config import Config
from .cover import (
    ColumnSet,
    column_set,
    cover_check,
    distinguished_columns,
    min_cover_search,
    redundancy_stats,
)
from .curves import Verdict, ensure_smooth, load_curve
from .homology import canonical_homology
from .monodromy import cycles_str, monodromy
from .monomials import adjoint_basis, format_monomial, genus, parse_monomial
from .paths import BranchPointError
from .periods import PeriodError, period_matrix, prepare_projection, riemann_validate
from .protocol import (
    ProtocolError,
    compress,
    deserialize,
    fmt_c,
    payload_ratio,
    serialize,
    verify,
)
from .quadspace import quad_dim, select_basis_pairs

FORMAT_VERSION = 1


class StageError(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(message)
        self.stage = stage


def _emit(doc: dict, cfg: Config, text_lines) -> None:
    if cfg.output_format == "json":
        doc = {"format_version": FORMAT_VERSION, **doc}
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")
    else:
        for line in text_lines:
            sys.stdout.write(line + "\n")


def _matrix_doc(M: np.ndarray):
    return [[fmt_c(z) for z in row] for row in np.asarray(M, dtype=complex)]


def _parse_columns(d: int, text: str) -> ColumnSet:
    labels = [parse_monomial(tok) for tok in text.split(",") if tok.strip()]
    return column_set(d, labels)


def _load(path, cfg: Config):
    try:
        curve = load_curve(path)
    except (OSError, ValueError) as exc:
        raise StageError("curve-load", str(exc)) from exc
    return curve


def _require_smooth(curve, cfg: Config):
    report = ensure_smooth(curve, retries=cfg.shear_retries, seed=cfg.seed)
    if report.verdict is not Verdict.SMOOTH:
        raise StageError(
            "smoothness",
            f"curve verdict {report.verdict.value}: {report.detail}",
        )
    return report


# ---------------------------------------------------------------------------
# subcommands


def cmd_genus(args, cfg: Config) -> int:
    g = genus(args.d)
    _emit({"command": "genus", "d": args.d, "genus": g}, cfg, [str(g)])
    return 0


def cmd_adjoint_basis(args, cfg: Config) -> int:
    basis = adjoint_basis(args.d)
    names = [format_monomial(m) for m in basis]
    _emit(
        {"command": "adjoint-basis", "d": args.d, "genus": len(names), "monomials": names},
        cfg,
        [" ".join(names)],
    )
    return 0


def cmd_cover(args, cfg: Config) -> int:
    d = args.d
    cols = _parse_columns(d, args.columns) if args.columns else distinguished_columns(d)
    report = cover_check(d, cols)
    missing = sorted(report.missing)
    doc = {
        "command": "cover",
        "d": d,
        "columns": [format_monomial(m) for m in cols.labels],
        "fallback": cols.fallback,
        "covers": not missing,
        "missing": [format_monomial(m) for m in missing],
        "distinct_count": report.distinct_count,
        "duplicate_count": report.duplicate_count,
    }
    lines = [
        f"d = {d}",
        "columns: " + ", ".join(format_monomial(m) for m in cols.labels),
    ]
    if cols.fallback:
        lines.append("note: fallback column set (x^2*y^2 unavailable at this degree)")
    if cols.note and not cols.covers:
        lines.append(f"note: {cols.note}")
    lines.append(
        "missing: none"
        if not missing
        else "missing: " + ", ".join(format_monomial(m) for m in missing)
    )
    lines.append(f"distinct products: {report.distinct_count}")
    lines.append(f"duplicate products: {report.duplicate_count}")
    if not missing:
        stats = redundancy_stats(d, cols)
        doc["quad_dim"] = stats.quad_dim
        doc["excess"] = stats.excess
        lines.append(f"quadratic dimension 3g-3: {stats.quad_dim}")
        lines.append(f"excess: {stats.excess}")
    _emit(doc, cfg, lines)
    return 0


def cmd_min_cover(args, cfg: Config) -> int:
    covers = min_cover_search(args.d, args.max_size)
    doc = {
        "command": "min-cover",
        "d": args.d,
        "max_size": args.max_size,
        "minimum_size": len(covers[0].labels) if covers else None,
        "covers": [[format_monomial(m) for m in c.labels] for c in covers],
    }
    if covers:
        lines = [f"minimum covering size: {len(covers[0].labels)}"]
        for c in covers:
            lines.append("  " + ", ".join(format_monomial(m) for m in c.labels))
    else:
        lines = [f"no cover of size <= {args.max_size} exists at d = {args.d}"]
    _emit(doc, cfg, lines)
    return 0


def cmd_quad_basis(args, cfg: Config) -> int:
    curve = _load(args.curve, cfg)
    _require_smooth(curve, cfg)
    cols = (
        _parse_columns(curve.d, args.columns)
        if args.columns
        else distinguished_columns(curve.d)
    )
    info = quad_dim(curve)
    pairs = select_basis_pairs(curve, cols)
    doc = {
        "command": "quad-basis",
        "d": curve.d,
        "dim": info.dim,
        "columns": [format_monomial(m) for m in cols.labels],
        "pairs": [list(p) for p in pairs.pairs],
    }
    lines = [f"d = {curve.d}", f"quadratic dimension: {info.dim}"]
    lines.append("pairs (row index, column basis index):")
    lines.append("  " + " ".join(f"({i},{j})" for i, j in pairs.pairs))
    _emit(doc, cfg, lines)
    return 0


def cmd_monodromy(args, cfg: Config) -> int:
    curve = _load(args.curve, cfg)
    _require_smooth(curve, cfg)
    try:
        work, t, bset = prepare_projection(curve, seed=cfg.seed, retries=cfg.shear_retries)
        rep = monodromy(work, tracking_tol=cfg.tracking_tol)
    except (BranchPointError, PeriodError, RuntimeError) as exc:
        raise StageError("monodromy", str(exc)) from exc
    doc = {
        "command": "monodromy",
        "d": curve.d,
        "shear": str(t),
        "n_branch_points": rep.branch.n,
        "branch_points": [fmt_c(z) for z in rep.branch.points],
        "basepoint": fmt_c(rep.branch.basepoint),
        "permutations": [cycles_str(p) for p in rep.perms],
        "sigma_infinity": cycles_str(rep.sigma_box),
        "total_branching": rep.total_branching,
        "rh_genus": rep.rh_genus,
    }
    lines = [
        f"d = {curve.d} (shear t = {t})",
        f"branch points: {rep.branch.n}",
        "permutations: " + " ".join(cycles_str(p) for p in rep.perms),
        f"branching total: {rep.total_branching}",
        f"genus (Riemann-Hurwitz): {rep.rh_genus}",
    ]
    _emit(doc, cfg, lines)
    return 0


def _word_doc(word):
    return [[k, i, s] for (k, i, s) in word.steps]


def cmd_homology(args, cfg: Config) -> int:
    curve = _load(args.curve, cfg)
    _require_smooth(curve, cfg)
    try:
        work, t, bset = prepare_projection(curve, seed=cfg.seed, retries=cfg.shear_retries)
        rep = monodromy(work, tracking_tol=cfg.tracking_tol)
        hom = canonical_homology(rep)
    except (BranchPointError, PeriodError, RuntimeError) as exc:
        raise StageError("homology", str(exc)) from exc
    doc = {
        "command": "homology",
        "d": curve.d,
        "genus": hom.genus,
        "alpha": [_word_doc(w) for w in hom.alpha],
        "beta": [_word_doc(w) for w in hom.beta],
        "pairing": hom.pairing.tolist(),
    }
    lines = [
        f"genus: {hom.genus}",
        f"alpha cycles: {len(hom.alpha)} (steps: {[len(w) for w in hom.alpha]})",
        f"beta cycles: {len(hom.beta)} (steps: {[len(w) for w in hom.beta]})",
        "pairing: standard symplectic form (verified exactly)",
    ]
    _emit(doc, cfg, lines)
    return 0


def _run_engine(curve, cfg: Config, quad_tol=None):
    try:
        return period_matrix(
            curve,
            tracking_tol=cfg.tracking_tol,
            quad_tol=quad_tol if quad_tol is not None else cfg.quad_tol,
            seed=cfg.seed,
            retries=cfg.shear_retries,
            degree_cap=cfg.degree_cap,
        )
    except (PeriodError, BranchPointError, RuntimeError) as exc:
        raise StageError("periods", str(exc)) from exc


def cmd_periods(args, cfg: Config) -> int:
    curve = _load(args.curve, cfg)
    _require_smooth(curve, cfg)
    pm = _run_engine(curve, cfg)
    doc = {
        "command": "periods",
        "d": pm.d,
        "g": pm.Omega.shape[0],
        "shear": str(pm.shear_t),
        "A": _matrix_doc(pm.A),
        "B": _matrix_doc(pm.B),
        "omega": _matrix_doc(pm.Omega),
        "diagnostics": {k: f"{v:.17g}" for k, v in pm.diagnostics.items()},
    }
    lines = [
        f"g = {pm.Omega.shape[0]} (shear t = {pm.shear_t})",
        f"sym residual: {pm.diagnostics['sym_residual']:.3e}"
        f" (relative {pm.diagnostics['sym_residual_rel']:.3e})",
        f"min eigenvalue of Im: {pm.diagnostics['min_im_eigenvalue']:.6f}",
        f"condition of A: {pm.diagnostics['A_condition_estimate']:.3e}",
    ]
    _emit(doc, cfg, lines)
    return 0


def cmd_compress(args, cfg: Config) -> int:
    curve = _load(args.curve, cfg)
    _require_smooth(curve, cfg)
    pm = _run_engine(curve, cfg)
    cols = (
        _parse_columns(curve.d, args.columns)
        if args.columns
        else distinguished_columns(curve.d)
    )
    tol = args.tol if args.tol is not None else cfg.verify_tol
    try:
        payload = compress(pm.Omega, curve.d, cols, tol)
        blob = serialize(payload)
    except ProtocolError as exc:
        raise StageError("compress", str(exc)) from exc
    with open(args.out, "wb") as fh:
        fh.write(blob)
    ratio = payload_ratio(payload)
    g = payload.g
    full = g * (g + 1) // 2
    doc = {
        "command": "compress",
        "d": curve.d,
        "g": g,
        "columns": [format_monomial(m) for m in payload.column_labels],
        "entries": payload.entry_count,
        "full_entries": full,
        "ratio": f"{payload.entry_count}/{full}",
        "out": str(args.out),
    }
    lines = [
        f"wrote {args.out}: {payload.entry_count} entries vs {full} "
        f"for the full symmetric matrix (ratio {payload.entry_count}/{full}"
        f" = {ratio.numerator}/{ratio.denominator})",
    ]
    _emit(doc, cfg, lines)
    return 0


def _read_omega_file(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    key = "omega" if "omega" in doc else "Omega"
    if key not in doc:
        raise StageError("verify", f"no omega matrix found in {path}")
    rows = doc[key]
    return np.array(
        [[complex(float(re), float(im)) for re, im in row] for row in rows]
    )


def cmd_verify(args, cfg: Config) -> int:
    try:
        with open(args.payload, "rb") as fh:
            payload = deserialize(fh.read())
        candidate = _read_omega_file(args.omega)
        outcome = verify(payload, candidate)
    except ProtocolError as exc:
        raise StageError("verify", str(exc)) from exc
    doc = {
        "command": "verify",
        "accepted": outcome.accepted,
        "max_deviation": f"{outcome.max_deviation:.17g}",
        "worst_entry": list(outcome.worst_entry) if outcome.worst_entry else None,
        "tolerance": f"{payload.tolerance:.17g}",
        "note": outcome.note,
    }
    lines = [
        ("Accept" if outcome.accepted else "Reject")
        + f" (max deviation {outcome.max_deviation:.3e},"
        + f" tolerance {payload.tolerance:.3e})",
        f"note: {outcome.note}",
    ]
    if not outcome.accepted and outcome.worst_entry:
        lines.insert(1, f"worst entry: row {outcome.worst_entry[0]}, "
                        f"column {outcome.worst_entry[1]}")
    _emit(doc, cfg, lines)
    return 0 if outcome.accepted else 1


def cmd_demo(args, cfg: Config) -> int:
    curve = _load(args.curve, cfg)
    _require_smooth(curve, cfg)
    d = curve.d
    info = quad_dim(curve)
    cols = distinguished_columns(d)
    pairs = select_basis_pairs(curve, cols)
    pm = _run_engine(curve, cfg)
    rv = riemann_validate(pm.Omega, tol=1e-6 * max(1.0, pm.diagnostics["max_entry"]))
    payload = compress(pm.Omega, d, cols, cfg.verify_tol)
    blob = serialize(payload)
    outcome = verify(deserialize(blob), pm.Omega)
    ratio = payload_ratio(payload)
    g = payload.g
    full = g * (g + 1) // 2
    doc = {
        "command": "demo",
        "d": d,
        "g": g,
        "quad_dim": info.dim,
        "columns": [format_monomial(m) for m in cols.labels],
        "n_pairs": len(pairs.pairs),
        "sym_residual_rel": f"{pm.diagnostics['sym_residual_rel']:.17g}",
        "min_im_eigenvalue": f"{pm.diagnostics['min_im_eigenvalue']:.17g}",
        "riemann_ok": rv.passed,
        "payload_bytes": len(blob),
        "entries": payload.entry_count,
        "full_entries": full,
        "ratio": f"{payload.entry_count}/{full}",
        "accepted": outcome.accepted,
    }
    lines = [
        f"degree {d}, genus {g}",
        f"quadratic dimension: {info.dim}; independent pairs: {len(pairs.pairs)}",
        "columns: " + ", ".join(format_monomial(m) for m in cols.labels),
        f"period matrix: sym residual {pm.diagnostics['sym_residual_rel']:.3e} "
        f"(relative), min Im eigenvalue {pm.diagnostics['min_im_eigenvalue']:.6f}",
        f"payload: {payload.entry_count} entries vs {full} "
        f"(ratio {payload.entry_count}/{full} = {ratio.numerator}/{ratio.denominator}),"
        f" {len(blob)} bytes",
        "round trip: " + ("Accept" if outcome.accepted else "Reject"),
    ]
    _emit(doc, cfg, lines)
    return 0 if outcome.accepted else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="planeperiods",
        description="Period matrices of smooth plane curves and their "
        "four-column compression",
    )
    ap.add_argument("--config", help="JSON config file")
    ap.add_argument("--format", choices=["text", "json"], help="output format")
    ap.add_argument("--seed", type=int, help="seed for shear choices")
    ap.add_argument(
        "--show-config", action="store_true", help="print the effective config"
    )
    sub = ap.add_subparsers(dest="command")

    p = sub.add_parser("genus", help="genus of a degree-d smooth plane curve")
    p.add_argument("d", type=int)
    p.set_defaults(fn=cmd_genus)

    p = sub.add_parser("adjoint-basis", help="ordered adjoint monomials")
    p.add_argument("d", type=int)
    p.set_defaults(fn=cmd_adjoint_basis)

    p = sub.add_parser("cover", help="check a column cover")
    p.add_argument("d", type=int)
    p.add_argument("--columns", help="comma-separated labels, e.g. '1,x^4,y^4,x^2*y^2'")
    p.set_defaults(fn=cmd_cover)

    p = sub.add_parser("min-cover", help="all minimum covering column sets")
    p.add_argument("d", type=int)
    p.add_argument("--max-size", type=int, default=4)
    p.set_defaults(fn=cmd_min_cover)

    p = sub.add_parser("quad-basis", help="independent product pairs (exact)")
    p.add_argument("--curve", required=True)
    p.add_argument("--columns")
    p.set_defaults(fn=cmd_quad_basis)

    p = sub.add_parser("monodromy", help="branch points and sheet permutations")
    p.add_argument("--curve", required=True)
    p.set_defaults(fn=cmd_monodromy)

    p = sub.add_parser("homology", help="canonical symplectic cycle basis")
    p.add_argument("--curve", required=True)
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser("periods", help="period matrix and diagnostics")
    p.add_argument("--curve", required=True)
    p.set_defaults(fn=cmd_periods)

    p = sub.add_parser("compress", help="write the column payload")
    p.add_argument("--curve", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--columns")
    p.add_argument("--tol", type=float)
    p.set_defaults(fn=cmd_compress)

    p = sub.add_parser("verify", help="check a candidate matrix against a payload")
    p.add_argument("--payload", required=True)
    p.add_argument("--omega", required=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("demo", help="full round trip on a curve file")
    p.add_argument("--curve", required=True)
    p.set_defaults(fn=cmd_demo)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = Config.from_file(args.config) if args.config else Config()
        cfg = cfg.with_overrides(output_format=args.format, seed=args.seed)
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    if args.show_config:
        sys.stdout.write(cfg.to_json() + "\n")
        return 0
    if not getattr(args, "fn", None):
        ap.print_usage(sys.stderr)
        return 2
    try:
        return args.fn(args, cfg)
    except StageError as exc:
        sys.stderr.write(f"error [{exc.stage}]: {exc}\n")
        return 1
    except (ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
