"""Command-line interface.

Every subcommand reads its input documents, runs one computation and prints
either a plain table or a single JSON report holding the input digests, the
effective configuration and the result.  Reports contain no timings or host
details, so identical inputs and configuration give identical bytes.

Exit codes: 0 on success, 1 when a verification fails, 2 on malformed input
or a violated precondition.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .config import RunConfig
from .errors import (
    ContractError,
    DocumentError,
    EngineInconsistencyError,
    ExhaustionError,
    ParameterError,
    PreconditionError,
    SymplecticError,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Failure(Exception):
    """A verification failed; carries the report that is still printed."""

    def __init__(self, message: str, report: dict, inputs: dict | None = None):
        super().__init__(message)
        self.report = report
        self.inputs = inputs or {}


# ---------------------------------------------------------------------------
# input helpers


def _read(source: str, where: str):
    """Load a document from a file, ``-`` (stdin), inline JSON or ``bundled:NAME``."""
    if source == "-":
        return io.load_json(sys.stdin.read(), where)
    if source.startswith("bundled:"):
        return io.bundled(source.split(":", 1)[1])
    return io.load_json(source, where)


def _matrix_input(args):
    if args.factors:
        doc = {"factors": [f.strip() for f in args.factors.split(";") if f.strip()]}
    elif args.input:
        doc = _read(args.input, "matrix")
    else:
        raise DocumentError("give an input document or --factors", "matrix")
    return doc, io.parse_matrix(doc)


def _omega(value: str):
    theta, frac = io.angle_arg(value)
    return theta, frac


def _angle_out(theta: float, frac):
    return {"radians": theta, "over_pi": None if frac is None else str(frac)}


# ---------------------------------------------------------------------------
# subcommands; each returns (inputs, result, table_lines)


def cmd_index(args, cfg):
    from .paths import index_omega, unit

    doc = _read(args.input, "path")
    path = io.parse_path(doc)
    theta, frac = _omega(args.omega)
    r = index_omega(path, unit(theta), cfg, full=True)
    res = {"omega": _angle_out(theta, frac), "index": r.value, "nullity": r.nullity, "n": path.n}
    lines = [f"omega = {_angle_text(theta, frac)}", f"i_omega = {r.value}", f"nu_omega = {r.nullity}"]
    return {"path": doc}, res, lines


def cmd_iterate(args, cfg):
    from .iteration import index_iterates, iteration_gap_check, omega_profile

    doc = _read(args.input, "path")
    path = io.parse_path(doc)
    prof = omega_profile(path, cfg)
    try:
        table = index_iterates(path, args.m_max, cfg, profile=prof, cross_check=not args.no_cross_check)
    except EngineInconsistencyError as exc:
        raise Failure(str(exc), {"error": str(exc)}, {"path": doc}) from exc
    res = table.to_dict()
    res["profile"] = prof.to_dict()
    if args.m_max >= 2:
        res["gap"] = iteration_gap_check(prof, args.m_max, cfg).to_dict()
    lines = [f"{'m':>4} {'i':>6} {'nu':>4}"] + [f"{m:>4} {i:>6} {nu:>4}" for m, i, nu in table.rows]
    lines.append(f"mean index = {res['mean_index']}")
    return {"path": doc}, res, lines


def cmd_split(args, cfg):
    from .splitting import splitting_numbers

    doc, M = _matrix_input(args)
    theta, frac = _omega(args.omega)
    from .paths import unit

    sp = splitting_numbers(M, unit(theta), config=cfg)
    res = {"omega": _angle_out(theta, frac), "s_plus": sp.s_plus, "s_minus": sp.s_minus}
    lines = [f"omega = {_angle_text(theta, frac)}", f"S+ = {sp.s_plus}", f"S- = {sp.s_minus}"]
    return {"matrix": doc}, res, lines


def cmd_decompose(args, cfg):
    from .normal_form import decompose, invariant_report

    doc, M = _matrix_input(args)
    dec = decompose(M, cfg)
    rep = invariant_report(M, dec, cfg)
    res = {"decomposition": dec.to_dict(), "invariants": rep}
    lines = ["factors: " + (" ⋄ ".join(dec.labels()) or "(none)")]
    if dec.remainder_G is not None:
        lines.append(f"remainder: {dec.remainder_G.shape[0]}x{dec.remainder_G.shape[1]} hyperbolic block")
    lines.append(f"invariants preserved: {rep['ok']}")
    if not rep["ok"]:
        raise Failure("decomposition does not preserve the invariants", res, {"matrix": doc})
    return {"matrix": doc}, res, lines


def _jump_paths(doc):
    if isinstance(doc, dict) and "models" in doc:
        ens = io.parse_ensemble(doc)
        return ens, [m.path if m.profile is None else m.profile for m in ens.models], ens.n, ens.bumpy
    if isinstance(doc, dict) and "paths" in doc:
        paths = [io.parse_path(p, f"paths[{i}]") for i, p in enumerate(doc["paths"])]
        return None, paths, doc.get("n"), bool(doc.get("bumpy", False))
    raise DocumentError("expected an ensemble or {'paths': [...]}", "jump")


def cmd_jump(args, cfg):
    from .index_jump import JumpCertificate, SearchStats, find_jump, verify_jump

    doc = _read(args.input, "jump")
    ens, paths, n, bumpy = _jump_paths(doc)
    bumpy = bumpy or args.bumpy
    profiles = ens.profiles(cfg) if ens is not None else None
    inputs = {"paths": doc}
    if args.verify:
        cdoc = _read(args.verify, "certificates")
        items = cdoc.get("certificates", cdoc) if isinstance(cdoc, dict) else cdoc
        if not isinstance(items, list):
            raise DocumentError("expected a list of certificates", "certificates")
        certs = []
        for i, d in enumerate(items):
            try:
                c = JumpCertificate.from_dict(d)
            except (KeyError, TypeError, ValueError) as exc:
                raise DocumentError(f"bad certificate: {exc}", f"certificates[{i}]") from exc
            c.verification = verify_jump(c, paths, n, bumpy, cfg, profiles=profiles)
            certs.append(c)
        inputs["certificates"] = cdoc
        res = {"mode": "verify", "certificates": [c.to_dict() for c in certs]}
        lines = [_cert_line(c) for c in certs]
        if not all(c.verification.ok for c in certs):
            raise Failure("a certificate failed verification", res, inputs)
        return inputs, res, lines
    stats = SearchStats()
    try:
        certs = find_jump(profiles if profiles is not None else paths, args.count, args.eps, args.n_max,
                          n, bumpy, cfg, stats)
    except ExhaustionError as exc:
        raise Failure(str(exc), {"mode": "search", "stats": exc.stats}, inputs) from exc
    res = {"mode": "search", "bumpy": bumpy, "stats": stats.to_dict(), "certificates": [c.to_dict() for c in certs]}
    return inputs, res, [_cert_line(c) for c in certs]


def cmd_audit(args, cfg):
    from .index_jump import SearchStats, find_jump
    from .ledger import hypothesis_check, kappa_sequence, rational_average_audit, visible_map

    doc = _read(args.input, "ensemble")
    ens = io.parse_ensemble(doc)
    hyp = hypothesis_check(ens, cfg)
    stats = SearchStats()
    try:
        certs = find_jump(ens.profiles(cfg), args.count, args.eps, args.n_max, ens.n, ens.bumpy, cfg, stats)
    except ExhaustionError as exc:
        raise Failure(str(exc), {"hypotheses": hyp, "stats": exc.stats}, {"ensemble": doc}) from exc
    audit = rational_average_audit(ens, certs, cfg)
    maps = [visible_map(ens, c, cfg).to_dict() for c in certs]
    res = {
        "hypotheses": hyp,
        "stats": stats.to_dict(),
        "certificates": [c.to_dict() for c in certs],
        "assignments": maps,
        "audit": audit,
        "kappa": kappa_sequence(ens, args.horizon),
    }
    lines = [f"hypotheses satisfied: {hyp['ok']}"]
    for c, row in zip(certs, audit["certificates"]):
        lines.append(f"N = {c.N}: visible {', '.join(row['visible']) or '-'}; "
                     f"assignment feasible: {row['assignment_feasible']}")
    lines += [f"forced irrational = {audit['forced_irrational']} (bound {audit['bound']})",
              f"contradiction found: {audit['contradiction_found']}"]
    if args.strict and not (audit["ok"] and hyp["ok"]):
        raise Failure("audit did not meet the bound or the hypotheses fail", res, {"ensemble": doc})
    return {"ensemble": doc}, res, lines


def cmd_table_export(args, cfg):
    from .splitting import build_table, table_rows

    build_table(cfg)
    rows = table_rows()
    lines = [f"{'factor':<14} {'omega/pi':>10} {'S+':>3} {'S-':>3}"]
    for r in rows:
        lines.append(f"{r['factor']:<14} {str(r['omega_angle_over_pi']):>10} {r['s_plus']:>3} {r['s_minus']:>3}")
    return {}, {"rows": rows}, lines


def _angle_text(theta, frac):
    return f"exp(i·{frac}π)" if frac is not None else f"exp(i·{theta:.12g})"


def _cert_line(c):
    v = c.verification
    status = "-" if v is None else ("ok" if v.ok else "FAILED")
    slack = "-" if v is None else v.min_slack
    return f"N = {c.N}  M = {c.M_common}  m = {list(c.m)}  chi = {list(c.chi)}  {status}  min slack {slack}"


COMMANDS = {
    "index": cmd_index,
    "iterate": cmd_iterate,
    "split": cmd_split,
    "decompose": cmd_decompose,
    "jump": cmd_jump,
    "audit": cmd_audit,
    "table-export": cmd_table_export,
}


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    # global options are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="JSON file with RunConfig fields; SYMPINDEX_* variables override it")
    common.add_argument("--output", choices=["table", "json"], default=argparse.SUPPRESS,
                        help="report format (default from config)")
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS,
                        help="worker threads (results do not depend on it)")
    p = argparse.ArgumentParser(prog="sympindex", description="Symplectic index computations.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    src = "document: file, '-' for stdin, inline JSON or bundled:NAME"
    s = sub.add_parser("index", parents=[common], help="ω-index and nullity of a path")
    s.add_argument("input", help="path " + src)
    s.add_argument("--omega", default="0/1", help="angle of ω: 'p/q' is a multiple of π, a number is radians")

    s = sub.add_parser("iterate", parents=[common], help="index and nullity of the iterates")
    s.add_argument("input", help="path " + src)
    s.add_argument("--m-max", type=int, default=8)
    s.add_argument("--no-cross-check", action="store_true", help="skip recomputing each row on the iterated path")

    for name, text in (("split", "splitting numbers at ω"), ("decompose", "normal-form decomposition")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("input", nargs="?", help="matrix " + src)
        s.add_argument("--factors", help="';'-separated factor labels, e.g. 'N1(1,1);R(2/5π)'")
        if name == "split":
            s.add_argument("--omega", default="0/1", help="angle of ω: 'p/q' is a multiple of π, a number is radians")

    s = sub.add_parser("jump", parents=[common], help="search for or verify common index jump certificates")
    s.add_argument("input", help="ensemble or {'paths': [...]} " + src)
    s.add_argument("--count", type=int)
    s.add_argument("--eps", type=float)
    s.add_argument("--n-max", type=int)
    s.add_argument("--bumpy", action="store_true")
    s.add_argument("--verify", help="certificates document to re-verify instead of searching")

    s = sub.add_parser("audit", parents=[common], help="critical-degree ledger and rational-average audit of an ensemble")
    s.add_argument("input", help="ensemble " + src)
    s.add_argument("--count", type=int)
    s.add_argument("--eps", type=float)
    s.add_argument("--n-max", type=int)
    s.add_argument("--horizon", type=int, default=6, help="iterates listed in the energy sequence")
    s.add_argument("--strict", action="store_true", help="exit 1 unless the hypotheses hold and the bound is met")

    sub.add_parser("table-export", parents=[common], help="splitting numbers of the basic normal forms")
    return p


def _config(args) -> RunConfig:
    try:
        cfg = RunConfig.load(getattr(args, "config", None))
    except OSError as exc:
        raise DocumentError(f"cannot read: {exc}", "config") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", "config") from exc
    except (KeyError, ValueError, TypeError) as exc:
        raise DocumentError(str(exc), "config") from exc
    kw = {}
    if getattr(args, "output", None):
        kw["output"] = args.output
    if getattr(args, "workers", None) is not None:
        kw["workers"] = args.workers
    try:
        return cfg.replace(**kw) if kw else cfg
    except (ValueError, TypeError) as exc:
        raise DocumentError(str(exc), "arguments") from exc


def report(command: str, inputs: dict, cfg: RunConfig, result: dict, status: str) -> dict:
    """The machine-readable document for one run; ``workers`` is left out so it cannot change the bytes."""
    conf = cfg.as_dict()
    conf.pop("workers", None)
    conf.pop("output", None)
    return {
        "command": command,
        "status": status,
        "inputs": {k: io.digest(v) for k, v in sorted(inputs.items())},
        "config": conf,
        "result": result,
    }


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        inputs, result, lines = COMMANDS[args.command](args, cfg)
        code, status = EXIT_OK, "ok"
    except Failure as exc:
        inputs, result, lines = exc.inputs, exc.report, [f"verification failed: {exc}"]
        code, status = EXIT_FAIL, "failed"
        stderr.write(f"sympindex: {exc}\n")
    except (DocumentError, ParameterError, ContractError, PreconditionError, SymplecticError) as exc:
        stderr.write(f"sympindex: {exc}\n")
        return EXIT_INPUT
    if cfg.output == "json":
        stdout.write(io.dumps(report(args.command, inputs, cfg, result, status)))
    else:
        stdout.write("\n".join(lines) + "\n")
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
