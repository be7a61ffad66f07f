"""Command-line front end.

    python -m twistinv factors 3D4 --json
    python -m twistinv regular 2F4
    python -m twistinv verify "G(4,2,2;zeta=1)" --identity twistpw
    python -m twistinv table --family imprimitive --max-order 5000

Exit codes: 0 success, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .cache import CacheError, cached_build
from .catalog import CatalogCheckFailed, UnknownKey, catalog_listing, table_keys
from .cyclo import RootOfUnity
from .groups import DEFAULT_CAP, GroupTooLarge, NotEigenvector, ReflectionCoset, general_vector
from .molien import VDUAL, FactorMismatch, ModuleRep, V, codegree_factors, module_factors, n_of_module, v_factors
from . import coinv, harmonics, regularity, table

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Output:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def emit(self, obj, text: str) -> None:
        if self.as_json:
            self.stream.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")
        else:
            self.stream.write(text.rstrip("\n") + "\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="group enumeration cap (elements)")
    p.add_argument("--threads", type=int, default=None, help="worker count (results do not depend on it)")
    p.add_argument("--conductor", type=int, default=None, help="working conductor override")
    p.add_argument("--cache", default=None, help="directory for cached group element lists")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twistinv", description="Invariants of finite complex reflection cosets")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("catalog", help="list catalog keys")
    _common(p)
    p.add_argument("--table-keys", action="store_true", help="list the keys of the coset table")

    p = sub.add_parser("factors", help="M-factors (m, eps) of a coset")
    _common(p)
    p.add_argument("key")
    p.add_argument("--module", default="V", help="V, Vdual, ext<p>, galois:<k>, galois-dual:<k>")

    p = sub.add_parser("regular", help="regular eigenvalues")
    _common(p)
    p.add_argument("key")
    p.add_argument("--zeta", default=None, help="k/n or z<n>^<k>")
    p.add_argument("--oracle", action="store_true", help="print the eigenvector witness")
    p.add_argument("--ideal", action="store_true", help="also run the ideal criterion")

    p = sub.add_parser("verify", help="identity and regularity checks")
    _common(p)
    p.add_argument("key")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--identity", choices=regularity.IDENTITIES)
    g.add_argument("--all", action="store_true")
    p.add_argument("--sigma", type=int, default=1, help="Galois exponent k for sigma-type identities")
    p.add_argument("--module", default=None, help="module for OS2")

    p = sub.add_parser("table", help="the table of cosets")
    _common(p)
    p.add_argument("--family", choices=("imprimitive", "exceptional", "all"), default="all")
    p.add_argument("--max-order", type=int, default=5000)
    p.add_argument("--max-de", type=int, default=6)

    p = sub.add_parser("harmonics", help="checks built on explicit harmonic polynomials")
    _common(p)
    p.add_argument("key")
    p.add_argument("--check", choices=("gutkin", "discriminant", "wellgen"), required=True)
    p.add_argument("--module", default=None)

    p = sub.add_parser("coinv", help="coinvariant algebra characters")
    _common(p)
    p.add_argument("key")
    p.add_argument("--induction", action="store_true")
    p.add_argument("--gamma", type=int, default=None, help="conjugacy class index of gamma")
    p.add_argument("--eigenvalue", default=None, help="eigenvalue of gamma (default: largest order)")
    p.add_argument("--k", type=int, default=None, help="twist exponent (default: every k mod d)")
    p.add_argument("--eqdims", type=int, default=None, help="check the residue sums modulo d")
    return parser


# ----------------------------------------------------------------------------
# helpers


def _coset(args) -> ReflectionCoset:
    C = cached_build(args.key, args.cache, args.cap)
    if args.conductor is not None:
        if args.conductor % C.N:
            raise UsageError(f"--conductor must be a multiple of {C.N}")
        if args.conductor != C.N:
            label = C.label
            C = ReflectionCoset(C.group, C.gamma, C.gamma_order, args.conductor)
            C.label = label
    return C


def _module(text: Optional[str], default: ModuleRep) -> ModuleRep:
    if text is None:
        return default
    try:
        return ModuleRep.parse(text)
    except ValueError as e:
        raise UsageError(str(e))


def _root(text: str) -> RootOfUnity:
    try:
        return RootOfUnity.parse(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read root of unity {text!r}")


# ----------------------------------------------------------------------------
# commands


def cmd_catalog(args, out: Output) -> int:
    fams = catalog_listing()
    keys = [str(k) for k in table_keys()] if args.table_keys else []
    text = "\n".join(fams + ([""] + keys if keys else []))
    out.emit({"families": fams, "table_keys": keys}, text)
    return EXIT_OK


def cmd_factors(args, out: Output) -> int:
    C = _coset(args)
    M = _module(args.module, V)
    if str(M) == str(V):
        fs = v_factors(C)
    elif str(M) == str(VDUAL):
        fs = codegree_factors(C)
    else:
        fs = module_factors(C, M)
    obj = {"key": C.label, "module": str(M), "factors": fs.to_json(),
           "d": fs.degrees, "eps": [e.to_json() for e in fs.eps]}
    out.emit(obj, f"{C.label} {M}: {fs}")
    return EXIT_OK


def cmd_regular(args, out: Output) -> int:
    C = _coset(args)
    if args.zeta is None:
        regs = regularity.regular_set(C)
        orders = sorted({z.order for z in regs})
        obj = {"key": C.label, "bound": regularity.candidate_bound(C), "orders": orders,
               "regular_set": [z.to_json() for z in regs]}
        out.emit(obj, "orders: " + " ".join(str(o) for o in orders))
        return EXIT_OK
    z = _root(args.zeta)
    rep = regularity.regularity_report(C, z, ideal=args.ideal)
    lines = [f"{z}: {'regular' if rep.regular else 'not regular'}"]
    if args.oracle and rep.oracle_result is not None:
        w = rep.oracle_result
        lines.append(f"  witness g = {w.index}, v = ({', '.join(str(x) for x in w.vector)})")
    if rep.ideal_result is not None:
        lines.append(f"  ideal criterion: {rep.ideal_result}")
    out.emit({"key": C.label, **rep.to_json()}, "\n".join(lines))
    return EXIT_OK


def _three_way(C: ReflectionCoset, ideal: bool) -> tuple[bool, str]:
    L = regularity.candidate_bound(C)
    n = 0
    for k in range(L):
        regularity.regularity_report(C, RootOfUnity.make(L, k), ideal=ideal)
        n += 1
    return True, f"regularity: pass ({n} candidates{', ideal route included' if ideal else ''})"


def cmd_verify(args, out: Output) -> int:
    C = _coset(args)
    if args.identity:
        M = _module(args.module, V) if args.identity == "OS2" else None
        rep = regularity.verify_identity(C, args.identity, k=args.sigma, M=M)
        out.emit({"key": C.label, "name": rep.name, "ok": rep.ok, "lhs": str(rep.lhs), "rhs": str(rep.rhs)},
                 str(rep))
        return EXIT_OK if rep.ok else EXIT_FAIL
    reports = regularity.identity_suite(C)
    lines = [str(r) for r in reports]
    ok = all(r.ok for r in reports)
    try:
        _, line = _three_way(C, ideal=C.r <= 3)
    except regularity.RegularityDisagreement as e:
        ok, line = False, f"regularity: FAIL ({e})"
    lines.append(line)
    ineq = regularity.inegalite_check(C)
    lines.append(f"inequalities: {'pass' if ineq else 'FAIL'}")
    ex = regularity.existence_check(C)
    lines.append(f"existence: {ex}")
    ok = ok and ineq
    obj = {"key": C.label, "ok": ok,
           "identities": [{"name": r.name, "ok": r.ok} for r in reports],
           "regularity": line, "inequalities": ineq, "existence": str(ex)}
    out.emit(obj, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_table(args, out: Output) -> int:
    fam = None if args.family == "all" else args.family
    rows = table.table(max_order=args.max_order, max_de=args.max_de, family=fam)
    out.emit([r.to_json() for r in rows], table.render(rows))
    return EXIT_OK if all(r.ok for r in rows) else EXIT_FAIL


def cmd_harmonics(args, out: Output) -> int:
    C = _coset(args)
    if args.check == "wellgen":
        rep = harmonics.wellgen_structure(C)
        obj = {"key": C.label, "well_generated": rep.well_generated, "degree_condition": rep.degree_condition,
               "min_generators": rep.min_generators, "generators": rep.generators, "matching": rep.matching,
               "regular_top": rep.regular_top, "monic": rep.monic, "notes": rep.notes, "ok": rep.ok()}
        text = (f"well-generated: {rep.well_generated} (minimal reflection generators: {rep.min_generators})\n"
                f"degree condition: {rep.degree_condition}\n"
                f"matching: {rep.matching}  regular top: {rep.regular_top}  monic: {rep.monic}"
                + "".join(f"\nnote: {n}" for n in rep.notes))
        out.emit(obj, text)
        return EXIT_OK if rep.ok() else EXIT_FAIL
    mods = [_module(args.module, V)] if args.module else [V, VDUAL]
    results, lines = [], []
    for M in mods:
        if args.check == "gutkin":
            lam = harmonics.gutkin_check(C, M)
            N = n_of_module(C.group, M)
            results.append({"module": str(M), "lambda": lam.to_json(), "N": N})
            lines.append(f"{M}: wedge = ({lam}) * Psi, N = {N}")
        else:
            rep = harmonics.disc_matrix(C, M)
            results.append({"module": str(M), "scalar": rep.scalar.to_json()})
            lines.append(f"{M}: det = ({rep.scalar}) * Psi_M Psi_M*")
    out.emit({"key": C.label, "check": args.check, "ok": True, "results": results}, "\n".join(lines))
    return EXIT_OK


def cmd_coinv(args, out: Output) -> int:
    C = _coset(args)
    G = C.group
    gc = coinv.coinvariant_character(C)
    dims = gc.dims()
    if args.induction:
        if args.gamma is None:
            suite = coinv.induction_suite(C)
            ok = all(r for _, _, r in suite)
            text = "\n".join(f"{s.label}, k = {k}: {'pass' if r else 'FAIL'}" for s, k, r in suite)
            out.emit({"key": C.label, "results": [{"sample": s.label, "gamma": s.gamma_index, "d": s.d,
                                                   "k": k, "ok": r} for s, k, r in suite], "ok": ok}, text)
            return EXIT_OK if ok else EXIT_FAIL
        if not 0 <= args.gamma < len(G.classes):
            raise UsageError(f"--gamma must be a class index below {len(G.classes)}")
        idx = G.classes[args.gamma].rep
        h = G.element(idx)
        o = h.element_order()
        eig = sorted(h.eigen_multiset(o))
        lam = _root(args.eigenvalue) if args.eigenvalue else max(eig, key=RootOfUnity.sort_key)
        if lam not in eig:
            raise UsageError(f"{lam} is not an eigenvalue of the class representative")
        from .cyclo import lcm
        W = lcm(G.N, o)
        v = general_vector(regularity.eigenspace(h, lam, W), G.arrangement, W)
        ks = [args.k] if args.k is not None else list(range(lam.order))
        res = []
        for k in ks:
            lhs, rhs = coinv.induction_sides(C, idx, v, k)
            res.append({"k": k, "ok": lhs == rhs, "lhs": [x.to_json() for x in lhs.values],
                        "rhs": [x.to_json() for x in rhs.values]})
        ok = all(r["ok"] for r in res)
        text = "\n".join(f"gamma class {args.gamma}, eigenvalue {lam}, k = {r['k']}: "
                         f"{'pass' if r['ok'] else 'FAIL'}" for r in res)
        out.emit({"key": C.label, "gamma_class": args.gamma, "eigenvalue": lam.to_json(), "results": res,
                  "ok": ok}, text)
        return EXIT_OK if ok else EXIT_FAIL
    lines = ["dims: " + " ".join(str(x) for x in dims), "regular character: pass"]
    obj = {"key": C.label, "dims": dims, "regular_character": True}
    ok = True
    if args.eqdims is not None:
        d = args.eqdims
        if d < 1:
            raise UsageError("--eqdims must be positive")
        try:
            eq = all(coinv.eqdims_check(C, d, k, 0) for k in range(d))
        except ValueError as e:
            raise UsageError(str(e))
        sums = [coinv.residue_sum(dims, d, k) for k in range(d)]
        lines.append(f"residue sums mod {d}: {' '.join(map(str, sums))} ({'pass' if eq else 'FAIL'})")
        obj["eqdims"] = {"d": d, "sums": sums, "ok": eq}
        ok = eq
    out.emit(obj, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"catalog": cmd_catalog, "factors": cmd_factors, "regular": cmd_regular, "verify": cmd_verify,
            "table": cmd_table, "harmonics": cmd_harmonics, "coinv": cmd_coinv}

_CHECK_ERRORS = (AssertionError, ArithmeticError, regularity.SearchExhausted, harmonics.HarmonicsError,
                 NotEigenvector, FactorMismatch, CatalogCheckFailed)


def run(argv: Optional[Sequence[str]] = None, stream=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    out = Output(as_json, stream)
    err = sys.stderr if stream is None else stream

    def fail(code: int, kind: str, message: str) -> int:
        if as_json:
            out.emit({"error": kind, "message": message, "exit": code}, "")
        else:
            err.write(f"error: {message}\n")
        return code

    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be positive")
        if args.cap < 1:
            raise UsageError("--cap must be positive")
        if args.threads is None:
            args.threads = os.cpu_count() or 1
        return COMMANDS[args.command](args, out)
    except (UsageError, UnknownKey, GroupTooLarge, CacheError) as e:
        return fail(EXIT_USAGE, "usage", str(e))
    except _CHECK_ERRORS as e:
        return fail(EXIT_FAIL, "check", f"{type(e).__name__}: {e}")


def main() -> None:
    sys.exit(run())
