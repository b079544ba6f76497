"""Command-line front end."""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import cache
from .errors import KGrothError, MalformedInputError
from .grothendieck.permutations import Permutation, grassmannian_perm, parse_sequence
from .residue import debug_mode
from .serialize import render

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _csv(text: str) -> tuple[int, ...]:
    try:
        return parse_sequence(text)
    except MalformedInputError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["text", "json", "latex"], default="text")
    fmt.add_argument("--debug", action="store_true", help="extra internal consistency checks")

    p = _Parser(prog="kgroth", description="Grothendieck polynomials and K-theoretic Thom polynomials.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("groth", parents=[fmt], help="a Grothendieck polynomial")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--perm", help="permutation in one-line notation, e.g. 132 or 1,3,2")
    src.add_argument("--partition", type=_csv, help="partition, e.g. 2,1")
    g.add_argument("--k", type=_nonneg)
    g.add_argument("--l", type=_nonneg)

    s = sub.add_parser("straighten", parents=[fmt], help="straighten G_I into partitions")
    s.add_argument("--seq", type=_csv, required=True)

    pr = sub.add_parser("product", parents=[fmt], help="expand g_I * g_J in the G basis")
    pr.add_argument("--left", type=_csv, required=True)
    pr.add_argument("--right", type=_csv, required=True)
    pr.add_argument("--k", type=_nonneg, required=True)
    pr.add_argument("--l", type=_nonneg, required=True)

    k = sub.add_parser("ktp", parents=[fmt], help="K-theoretic Thom polynomials")
    k.add_argument("locus", choices=["a2", "a3", "sigma"])
    k.add_argument("--r", type=_nonneg)
    k.add_argument("--a", type=_nonneg, required=True)
    k.add_argument("--b", type=_nonneg, required=True)
    k.add_argument("--expand", choices=["stable", "minimal"])
    k.add_argument("--N", type=_nonneg)

    c = sub.add_parser("coeff", parents=[fmt], help="coefficient tables")
    c.add_argument("table", choices=["d", "D", "d3"])
    c.add_argument("--rmax", type=_nonneg, required=True)
    c.add_argument("--l", type=_nonneg)
    c.add_argument("--smax", type=int, help="largest s in the d3 table (default rmax)")

    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("suite", choices=["fast", "full"])
    return p


def _request(ns: argparse.Namespace) -> dict:
    """Validated, canonical parameters (also the cache key)."""
    cmd = ns.command
    if cmd == "groth":
        if ns.perm is not None:
            w = Permutation.parse(ns.perm)
            if (ns.k is None) != (ns.l is None):
                raise MalformedInputError("give both --k and --l, or neither")
            images = list(w.images)
            while images and images[-1] == len(images):
                images.pop()
            return {"command": cmd, "perm": images or [1], "k": ns.k, "l": ns.l}
        if ns.k is None or ns.l is None:
            raise MalformedInputError("--partition needs --k and --l")
        return {"command": cmd, "partition": list(ns.partition), "k": ns.k, "l": ns.l}
    if cmd == "straighten":
        return {"command": cmd, "seq": list(ns.seq)}
    if cmd == "product":
        return {"command": cmd, "left": list(ns.left), "right": list(ns.right), "k": ns.k, "l": ns.l}
    if cmd == "ktp":
        if ns.b < ns.a or ns.a < 1:
            raise MalformedInputError("need 1 <= a <= b")
        if ns.locus == "sigma" and ns.r is None:
            raise MalformedInputError("ktp sigma needs --r")
        if ns.locus != "sigma" and ns.r is not None:
            raise MalformedInputError("--r only applies to ktp sigma")
        if ns.expand is not None and ns.locus == "a3":
            raise MalformedInputError("no finite G expansion is available for a3")
        if ns.N is not None and ns.expand != "stable":
            raise MalformedInputError("--N only applies to --expand stable")
        l = ns.b - ns.a
        N = ns.N if ns.N is not None else (2 * l + 3 if ns.expand == "stable" else None)
        return {"command": cmd, "locus": ns.locus, "r": ns.r, "a": ns.a, "b": ns.b,
                "expand": ns.expand, "N": N}
    if cmd == "coeff":
        if ns.table == "D" and ns.l is None:
            raise MalformedInputError("coeff D needs --l")
        if ns.table != "D" and ns.l is not None:
            raise MalformedInputError("--l only applies to coeff D")
        if ns.smax is not None and ns.table != "d3":
            raise MalformedInputError("--smax only applies to coeff d3")
        smax = ns.smax if ns.smax is not None else ns.rmax
        return {"command": cmd, "table": ns.table, "rmax": ns.rmax, "l": ns.l,
                "smax": smax if ns.table == "d3" else None}
    raise MalformedInputError(f"unknown command {cmd}")


def compute(req: dict):
    """Evaluate a validated request."""
    cmd = req["command"]
    if cmd == "groth":
        from .grothendieck.divided import groth_recursive, truncated_stable
        from .grothendieck.gpoly import g_residue

        if "perm" in req:
            w = Permutation(req["perm"])
            if req["k"] is None:
                return groth_recursive(w)
            return truncated_stable(w, req["k"], req["l"])
        return g_residue(req["partition"], req["k"], req["l"])
    if cmd == "straighten":
        from .grothendieck.straighten import straighten

        return straighten(req["seq"])
    if cmd == "product":
        from .grothendieck.expansion import multiply_G

        return multiply_G(req["left"], req["right"], req["k"], req["l"])
    if cmd == "ktp":
        from .grothendieck.expansion import GExpansion
        from .thom import a2, a3, sigma
        from .thom.common import ThomInstance

        inst = ThomInstance(req["a"], req["b"])
        if req["locus"] == "a2":
            if req["expand"] == "minimal":
                return a2.ktp_a2_minimal(inst.l)
            if req["expand"] == "stable":
                return a2.ktp_a2_stable(inst.l, req["N"])
            return a2.ktp_a2(inst)
        if req["locus"] == "a3":
            return a3.ktp_a3(inst)
        r = req["r"]
        if req["expand"] is not None:
            if r > inst.a:
                raise MalformedInputError(f"need r <= a = {inst.a}")
            return GExpansion({(r + inst.l,) * r: 1})
        return sigma.ktp_sigma_r(r, inst)
    if cmd == "coeff":
        from .thom import a2, a3

        rmax = req["rmax"]
        if req["table"] == "d":
            return a2.d_table(rmax)
        if req["table"] == "D":
            t = a2.D_table(req["l"])
            from .thom.common import CoeffTable

            return CoeffTable({k: v for k, v in t.items() if k[0] <= rmax}, t.names)
        return a3.d3_table((rmax, (-rmax - 1, req["smax"]), None))
    raise MalformedInputError(f"unknown command {cmd}")


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as e:
        parser.print_usage(err)
        print(f"kgroth: error: {e}", file=err)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return int(e.code or 0)
    if ns.command == "verify":
        from .verify import run_suite

        ok = run_suite(ns.suite, emit=lambda line: print(line, file=out, flush=True))
        return EXIT_OK if ok else EXIT_COMPUTE
    try:
        req = _request(ns)
    except MalformedInputError as e:
        print(f"MalformedInputError: {e}", file=err)
        return EXIT_USAGE
    token = debug_mode.set(bool(ns.debug))
    try:
        value = cache.load(req)
        if value is None:
            value = compute(req)
            cache.store(req, value)
        print(render(value, ns.format), file=out)
    except MalformedInputError as e:
        print(f"MalformedInputError: {e}", file=err)
        return EXIT_USAGE
    except KGrothError as e:
        print(f"{type(e).__name__}: {e}", file=err)
        return EXIT_COMPUTE
    finally:
        debug_mode.reset(token)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
