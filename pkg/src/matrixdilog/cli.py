"""The ``dilog`` command line tool.

Exit codes: 0 when everything checked passes, 1 when an identity or a
decoration condition fails, 2 for unusable input (bad file, bad flags,
missing data for the request).
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import metadata

import numpy as np

from . import fileio, moves, statesum, suite
from .scalars import DomainError
from .tensors import R1, RN_entries
from .tetra import DecoratedTetra, flattening_sum
from .triangulation import branching_offenders, idealize_cocycle

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def _env(args) -> dict:
    return {"version": _version(), "numpy": np.__version__, "tol": args.tol, "seed": args.seed}


def _parse_Ns(text: str | None, default=(3,)) -> tuple:
    if text is None:
        return tuple(default)
    try:
        Ns = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputError(f"--n expects odd integers separated by commas, got {text!r}") from None
    for N in Ns:
        if N < 1 or N % 2 == 0:
            raise InputError(f"N must be odd and positive, got {N}")
    return Ns


def _ints(text: str, count: int, flag: str) -> tuple:
    try:
        vals = tuple(int(x) for x in text.replace(":", ",").split(","))
    except ValueError:
        raise InputError(f"{flag} expects {count} integers, got {text!r}") from None
    if len(vals) != count:
        raise InputError(f"{flag} expects {count} integers, got {text!r}")
    return vals


def _load(path):
    if path is None:
        raise InputError("no input file given")
    try:
        return fileio.load(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except DomainError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(args, payload: dict, human_lines: list) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        print("\n".join(human_lines))


# --------------------------------------------------------------------------
# commands


def check_file(tf: fileio.TriangulationFile, Ns, tol: float) -> list:
    """List of (name, passed, detail) for every condition the file can be tested on."""
    if any(N > 1 for N in Ns) and (tf.c is None or tf.f is None):
        raise InputError("N > 1 needs [flattening] and [charge] blocks")
    if 1 in Ns and tf.f is None:
        raise InputError("N = 1 needs a [flattening] block")
    out = [("pairings", True, f"{tf.tri.n} tetrahedra, {len(tf.tri.boundary_faces())} free faces, "
                              f"v={tf.tri.interior_vertex_count()}")]
    if tf.orders is None:
        raise InputError("file has no [branching] block")
    bad = branching_offenders(tf.tri, tf.orders)
    out.append(("branching", not bad, "global" if not bad else f"edges {sorted({e for e, _ in bad})} disagree"))
    if bad:
        return out
    dt = tf.decorated()
    edge = max(dt.edge_residuals(), default=0.0)
    out.append(("edge_compatibility", edge < tol, f"max residual {edge:.3e}"))
    if dt.f is not None:
        flat = max(dt.flattening_residuals(), default=0.0)
        out.append(("flattening", flat < tol, f"max residual {flat:.3e}"))
    if dt.c is not None:
        defects = dt.charge_defects()
        worst = max((abs(x) for x in defects), default=0)
        out.append(("charge", worst == 0, f"max defect {worst}"))
    if dt.H:
        out.append(("hamiltonian", dt.hamiltonian_ok(), f"{len(dt.H)} edges"))
    if tf.cocycle is not None:
        ideal = idealize_cocycle(tf.tri, tf.orders, tf.cocycle)
        diff = max(abs(a - b) for a, b in zip(ideal, dt.w0))
        out.append(("cocycle_idealization", diff < tol, f"max modulus difference {diff:.3e}"))
    return out


def cmd_check(args) -> int:
    tf = _load(args.path)
    Ns = _parse_Ns(args.n, default=())
    rows = check_file(tf, Ns, args.tol)
    ok = all(p for _, p, _ in rows)
    payload = {"command": "check", "file": args.path, "passed": ok, **_env(args),
               "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in rows]}
    lines = [f"{'PASS' if p else 'FAIL'}  {n:<22} {d}" for n, p, d in rows]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def invariant_records(dt, Ns, tol: float) -> list:
    recs = []
    for N in Ns:
        r = statesum.quantum_invariant(dt, N)
        rec = r.as_dict()
        if N == 1:
            cv = statesum.complex_volume(dt)
            rec["volume"] = cv.imag
            rec["chern_simons"] = cv.real
        recs.append(rec)
    return recs


def cmd_invariant(args) -> int:
    tf = _load(args.path)
    Ns = _parse_Ns(args.n, default=(tf.N or 1,))
    rows = check_file(tf, Ns, args.tol)
    if not all(p for _, p, _ in rows):
        bad = ", ".join(n for n, p, _ in rows if not p)
        raise InputError(f"decoration is not valid ({bad}); run 'dilog check'")
    dt = tf.decorated()
    if not dt.tri.closed:
        raise InputError("the invariant needs a triangulation without free faces")
    recs = invariant_records(dt, Ns, args.tol)
    lines = []
    for rec in recs:
        val = complex(rec["value_re"], rec["value_im"])
        line = (f"N={rec['N']}  H={val.real:.12g}{val.imag:+.12g}i  |H|={abs(val):.12g}  "
                f"phase=({rec['sign']:+d}) zeta^{rec['phase_class_k']}  v={rec['v']}")
        if rec["N"] == 1:
            line += f"  volume={rec['volume']:.12g}  cs={rec['chern_simons']:.12g}"
        lines.append(line)
    _emit(args, {"command": "invariant", "file": args.path, **_env(args), "results": recs}, lines)
    return EXIT_OK


def cmd_transit(args) -> int:
    tf = _load(args.path)
    dt = tf.decorated()
    rng = np.random.default_rng(args.seed)
    kind = args.move
    if kind in ("2-3", "bubble"):
        if args.face is None:
            raise InputError(f"--move {kind} needs --face t:f")
        t, f = _ints(args.face, 2, "--face")
    try:
        if kind == "2-3":
            res = moves.two_three(dt, t, f, args.fchoice, args.cchoice, rng)
        elif kind == "3-2":
            if args.edge is None:
                raise InputError("--move 3-2 needs --edge (edge class index)")
            res = moves.three_two(dt, _ints(args.edge, 1, "--edge")[0], args.fchoice, args.cchoice, rng)
        elif kind == "bubble":
            res = moves.bubble(dt, t, f, f_choice=args.fchoice, c_choice=args.cchoice)
        elif kind == "0-2":
            if args.face is None or args.face2 is None or args.edge is None:
                raise InputError("--move 0-2 needs --face t:f, --face2 t:f and --edge a:b")
            t, f = _ints(args.face, 2, "--face")
            t2, f2 = _ints(args.face2, 2, "--face2")
            res = moves.zero_two(dt, t, f, t2, f2, _ints(args.edge, 2, "--edge"),
                                 f_choice=args.fchoice, c_choice=args.cchoice)
        else:  # 2-0
            if args.pair is None:
                raise InputError("--move 2-0 needs --pair t:u")
            res = moves.two_zero(dt, *_ints(args.pair, 2, "--pair"))
    except (IndexError, KeyError):
        raise InputError("face, edge or tetrahedron index out of range") from None
    new = res.after
    Ns = _parse_Ns(args.n, default=())
    report = {"move": kind, "tetrahedra": [dt.n, new.n], "new_tetrahedra": res.new_tetrahedra,
              "valid": new.is_valid(args.tol), "residuals": new.check()}
    for N in Ns:
        a = statesum.quantum_invariant(dt, N)
        b = statesum.quantum_invariant(new, N)
        report[f"invariant_N{N}_agrees"] = statesum.invariants_agree(a, b)
    if args.out:
        fileio.save(args.out, new, N=tf.N, name=tf.name)
    ok = report["valid"] and all(v for k, v in report.items() if k.startswith("invariant_"))
    lines = [f"{kind}: {dt.n} -> {new.n} tetrahedra, new {res.new_tetrahedra}",
             f"decoration valid: {report['valid']}  residuals {report['residuals']}"]
    lines += [f"{k}: {v}" for k, v in report.items() if k.startswith("invariant_")]
    if args.out:
        lines.append(f"written to {args.out}")
    _emit(args, {"command": "transit", **_env(args), **report}, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _tetra_from_args(args) -> DecoratedTetra:
    if args.path is not None:
        tf = _load(args.path)
        dt = tf.decorated()
        if dt.f is None or dt.c is None:
            raise InputError("dump-tensor needs [flattening] and [charge]")
        if not 0 <= args.tet < dt.n:
            raise InputError(f"--tet {args.tet} out of range")
        return dt.tetra(args.tet)
    if args.w0 is None:
        raise InputError("give a file or --w0 re,im")
    try:
        re_, im_ = (float(x) for x in args.w0.split(","))
    except ValueError:
        raise InputError("--w0 expects re,im") from None
    w0 = complex(re_, im_)
    f = _ints(args.f, 3, "--f") if args.f else (0, 0, flattening_sum(w0))
    c = _ints(args.c, 3, "--c") if args.c else (0, 0, 1)
    tet = DecoratedTetra(w0, f, c, args.b)
    tet.validate()
    return tet


def cmd_dump_tensor(args) -> int:
    Ns = _parse_Ns(args.n)
    tet = _tetra_from_args(args)
    out = []
    lines = [f"# w0={tet.w0} f={tet.f} c={tet.c} b={tet.b}", "# i j k l re im"]
    for N in Ns:
        E = RN_entries(tet, N) if N > 1 else np.full((1, 1, 1, 1), R1(tet))
        rows = fileio.tensor_rows(E, 0.0)
        out.append({"N": N, "entries": rows})
        lines.append(f"# N={N}")
        lines += [f"{i} {j} {k} {l} {re:.17g} {im:.17g}" for i, j, k, l, re, im in rows]
    _emit(args, {"command": "dump-tensor", **_env(args),
                 "tetrahedron": {"w0": [tet.w0.real, tet.w0.imag], "f": tet.f, "c": tet.c, "b": tet.b},
                 "tensors": out}, lines)
    return EXIT_OK


def cmd_suite(args) -> int:
    Ns = _parse_Ns(args.n, default=(3, 5))
    seed = suite.DEFAULT_SEED if args.seed is None else args.seed
    families = tuple(args.family) if args.family else suite.FAMILIES
    if args.inject == "t-sign":
        with suite.injected_t_sign_bug():
            report = suite.run_suite(seed, Ns, families, args.quick)
    else:
        report = suite.run_suite(seed, Ns, families, args.quick)
    env = _env(args)
    env["seed"] = seed
    payload = {"command": "suite", **env, "injected": args.inject, **report.as_dict()}
    _emit(args, payload, report.to_text().splitlines())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_probe(args) -> int:
    tf = _load(args.path)
    Ns = _parse_Ns(args.n, default=(3, 5, 7))
    dt = tf.decorated()
    if any(N > 1 for N in Ns) and dt.c is None:
        raise InputError("N > 1 needs a [charge] block")
    table = statesum.asymptotics_probe(dt, Ns)
    lines = [f"volume={table['volume']:.12g}  volume/2pi={table['volume_over_2pi']:.12g}",
             "N  |H_N|  log|H_N|/N"]
    lines += [f"{r['N']}  {r['abs']:.12g}  {r['log_abs_over_N']:.12g}" for r in table["rows"]]
    lines.append("(exploratory table; no limit is asserted)")
    _emit(args, {"command": "probe-asymptotics", **_env(args), **table}, lines)
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", help="odd N, or a comma separated list")
    common.add_argument("--tol", type=float, default=1e-9, help="numerical tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=None, help="random seed")
    common.add_argument("--format", choices=("human", "json"), default="human")

    p = argparse.ArgumentParser(prog="dilog", description="Matrix dilogarithms and state sums.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_path(sp, required=True):
        sp.add_argument("path", nargs=None if required else "?", help="triangulation file")
        return sp

    sp = with_path(sub.add_parser("check", parents=[common], help="validate a decorated triangulation"))
    sp.set_defaults(func=cmd_check)
    sp = with_path(sub.add_parser("invariant", parents=[common], help="compute H_1 or H_N"))
    sp.set_defaults(func=cmd_invariant)

    sp = sub.add_parser("transit", parents=[common], help="apply a decorated move")
    sp.add_argument("path", nargs="?")
    sp.add_argument("--in", dest="in_path")
    sp.add_argument("--move", choices=("2-3", "3-2", "0-2", "2-0", "bubble"), required=True)
    sp.add_argument("--face", help="t:f, face f of tetrahedron t")
    sp.add_argument("--face2", help="second face t:f (0-2 move)")
    sp.add_argument("--edge", help="edge class index (3-2) or local edge a:b (0-2)")
    sp.add_argument("--pair", help="mirror pair t:u (2-0 move)")
    sp.add_argument("--fchoice", type=int, default=0, help="free flattening parameter")
    sp.add_argument("--cchoice", type=int, default=0, help="free charge parameter")
    sp.add_argument("--out", help="write the new triangulation here")
    sp.set_defaults(func=cmd_transit)

    sp = sub.add_parser("dump-tensor", parents=[common], help="print the entries of a matrix dilogarithm")
    sp.add_argument("path", nargs="?")
    sp.add_argument("--tet", type=int, default=0, help="tetrahedron of the file")
    sp.add_argument("--w0", help="modulus re,im (instead of a file)")
    sp.add_argument("--f", help="flattening f0,f1,f2")
    sp.add_argument("--c", help="charge c0,c1,c2")
    sp.add_argument("--b", type=int, choices=(1, -1), default=1, help="branching sign")
    sp.set_defaults(func=cmd_dump_tensor)

    sp = sub.add_parser("suite", parents=[common], help="run the identity suite")
    sp.add_argument("--family", action="append", choices=suite.FAMILIES)
    sp.add_argument("--quick", action="store_true", help="one tenth of the samples")
    sp.add_argument("--inject", choices=("t-sign",), help="mutation control: plant a bug first")
    sp.set_defaults(func=cmd_suite)

    sp = with_path(sub.add_parser("probe-asymptotics", parents=[common],
                                  help="table of |H_N| for growing N (exploratory)"))
    sp.set_defaults(func=cmd_probe)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "in_path", None):
        args.path = args.in_path
    if args.tol <= 0:
        print("dilog: error: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"dilog: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except moves.BlockedMove as exc:
        print(f"dilog: move blocked: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DomainError as exc:
        print(f"dilog: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
