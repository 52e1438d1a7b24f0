"""Command-line interface: JSON in, JSON out.

Every command prints one CommandResult object {status, payload, diagnostics}.
Exit codes: 0 ok, 1 domain error, 2 input or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any

from . import families, matring, twoprime
from .cyclring import RPoly, factor_cyclotomic
from .errors import LinPermError
from .fields import FFElem, TowerCtx, make_tower
from .iso import phi, psi
from .linpoly import LinPoly, is_permutation, is_permutation_bruteforce
from .matring import RMatrix, decompose_elementary, det
from .nbasis import NormalPair, dual_basis, normal_pair


class InputError(Exception):
    """Malformed command-line input or input file (exit code 2)."""


class DomainFailure(Exception):
    """A well-formed request whose mathematical outcome is a failure (exit code 1)."""

    def __init__(self, message: str, payload: Any = None):
        super().__init__(message)
        self.payload = payload


@dataclass
class CommandResult:
    status: str
    payload: Any = None
    diagnostics: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


# loading and rendering


def _read_json(path: str):
    """Load a JSON file; a CommandResult envelope is unwrapped to its payload."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    if isinstance(doc, dict) and "status" in doc and "payload" in doc:
        doc = doc["payload"]
    return doc


def load_context(path: str) -> tuple[TowerCtx, NormalPair]:
    """A tower file as written by ``linperm tower`` (or a bare tower object)."""
    doc = _read_json(path)
    try:
        tower = doc.get("tower", doc)
        ctx = TowerCtx.from_json(tower)
        pair_doc = doc.get("pair")
        pair = NormalPair.from_json(ctx, pair_doc) if pair_doc else normal_pair(ctx)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid tower file {path}: {exc}") from None
    return ctx, pair


def load_matrix(ctx: TowerCtx, path: str) -> RMatrix:
    doc = _read_json(path)
    try:
        return RMatrix.from_json(ctx, doc.get("matrix", doc) if isinstance(doc, dict) else doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid matrix file {path}: {exc}") from None


def load_poly(ctx: TowerCtx, path: str) -> LinPoly:
    doc = _read_json(path)
    try:
        if isinstance(doc, dict):
            doc = doc.get("linpoly", doc.get("poly", doc))
        return LinPoly.from_json(ctx, doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid polynomial file {path}: {exc}") from None


def render_elem(ctx: TowerCtx, a: FFElem) -> dict:
    """Coefficient vector plus, for nonzero elements, the power of the registered primitive."""
    out = {"coeffs": list(a.c)}
    if a:
        out["power"] = ctx.log(a)
    return out


def render_poly(f: LinPoly) -> dict:
    doc = f.to_json()
    doc["terms"] = [dict(render_elem(f.ctx, a), q_exp=i) for i, a in enumerate(f.coeffs) if a]
    return doc


def render_matrix(M: RMatrix) -> dict:
    return {"matrix": M.to_json(), "display": [[str(a) for a in r] for r in M.rows]}


def _parse_modulus(items) -> dict:
    moduli = {}
    for item in items or []:
        level, _, coeffs = item.partition("=")
        if not coeffs:
            raise InputError(f"--modulus expects LEVEL=c0,c1,...; got {item!r}")
        try:
            moduli[level] = [int(x) for x in coeffs.split(",")]
        except ValueError:
            raise InputError(f"non-integer coefficient in {item!r}") from None
    return moduli


# commands


def cmd_tower(args) -> dict:
    moduli = _parse_modulus(args.modulus)
    ctx = make_tower(args.p, args.e, args.m, args.s, seed=args.seed, moduli=moduli)
    prim = {lvl: list(ctx.field(lvl).primitive_raw) for lvl in ("base_q", "mid_qm")}
    ctx = TowerCtx.from_json(dict(ctx.to_json(), primitive=prim))
    pair = normal_pair(ctx, seed=args.seed, prefer_self_dual=not args.no_self_dual)
    return {"tower": ctx.to_json(), "ctx_id": ctx.ctx_id, "pair": pair.to_json()}


def cmd_factor(args) -> dict:
    p, e = families.prime_power(args.q)
    ctx = make_tower(p, e, 1, args.s)
    fac = factor_cyclotomic(ctx)
    return {"q": args.q, "s": args.s, "base_modulus": list(ctx.base.modulus),
            "factors": fac.to_json(), "units": families.size_units(fac)}


def cmd_sizes(args) -> dict:
    families.prime_power(args.q)
    return families.sizes(args.q, args.m, args.s)


def cmd_psi(args) -> dict:
    ctx, pair = load_context(args.ctx)
    return {"linpoly": render_poly(psi(load_matrix(ctx, args.matrix), pair))}


def cmd_phi(args) -> dict:
    ctx, pair = load_context(args.ctx)
    return render_matrix(phi(load_poly(ctx, args.poly), pair))


def cmd_gen(args) -> dict:
    ctx, pair = load_context(args.ctx)
    member = families.generate(args.family, pair, seed=args.seed, t=args.t)
    return {"family": member.family, "tags": sorted(member.tags),
            "poly": render_poly(member.poly), "certificate": render_matrix(member.matrix)}


def cmd_verify(args) -> dict:
    ctx, pair = load_context(args.ctx)
    f = load_poly(ctx, args.poly)
    out = {}
    if args.method in ("kernel", "both"):
        out["kernel"] = is_permutation(f)
    if args.method in ("brute", "both"):
        out["brute"] = is_permutation_bruteforce(f)
    verdicts = set(out.values())
    if len(verdicts) > 1:
        raise DomainFailure("kernel and brute-force methods disagree", out)
    out["is_pp"] = verdicts.pop()
    out["tags"] = sorted(families.classify_family(f, pair))
    return out


def cmd_decompose(args) -> dict:
    ctx, _ = load_context(args.ctx)
    A = load_matrix(ctx, args.matrix)
    factors = decompose_elementary(A)
    return {"order": "left-to-right product equals the input",
            "factors": [f.to_json() for f in factors]}


def cmd_twoprime(args) -> dict:
    mid = [int(x) for x in args.mid_modulus.split(",")] if args.mid_modulus else None
    ctx = twoprime.twoprime_tower(args.q, args.p, seed=args.seed, mid_modulus=mid)
    doc = _read_json(args.coeffs)
    if args.criterion == "corgusta":
        f = doc.get("f") if isinstance(doc, dict) else doc
        if not isinstance(f, list):
            raise InputError("corgusta input must be a list or {\"f\": [...]}")
        ok = twoprime.corgusta_check(f, args.p, ctx)
        return {"criterion": "corgusta", "verdict": "PP" if ok else "inconclusive"}
    try:
        c = twoprime.PrescribedCoeffs.from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid coefficient file: {exc}") from None
    if c.p != args.p:
        raise InputError(f"coefficient file has p = {c.p}, command line has p = {args.p}")
    D = twoprime.det_poly(c, ctx)
    out = {"criterion": args.criterion, "det": D.to_json(), "det_display": str(D)}
    if args.criterion == "exact":
        out["verdict"] = "PP" if twoprime.is_pp_exact(c, ctx) else "not PP"
    else:
        D1, excl = twoprime.excluded_set(c, ctx, sound=args.sound)
        out["D1"] = list(D1.c)
        out["excluded"] = sorted(list(x.c) for x in excl)
        out["verdict"] = twoprime.is_pp_sufficient(c, ctx, sound=args.sound).value
    return out


def _check(report: list, name: str, got, expected) -> None:
    report.append({"check": name, "pass": got == expected, "got": got, "expected": expected})


def golden_ex1() -> list:
    ctx = make_tower(2, 1, 3, 2, moduli={"mid_qm": [1, 0, 1, 1]})
    a = ctx.mid.gen
    pair = dual_basis(ctx, a)
    G0 = [[0, 0, 1], [1, 0, 0], [0, 0, 0]]
    G = RMatrix(ctx, [[[G0[i][j], int(i == j)] for j in range(3)] for i in range(3)])
    g = psi(G, pair)
    expected = LinPoly(ctx, [a ** 6, a ** 5, a ** 5, 1, 0, 0])
    report = []
    _check(report, "basis is self-dual", pair.self_dual, True)
    _check(report, "det(G) = x", det(G).to_json(), RPoly.x_power(ctx, 1).to_json())
    _check(report, "psi(G) = x^8 + a^5 x^4 + a^5 x^2 + a^6 x", g.to_json()["coeffs"], expected.to_json()["coeffs"])
    _check(report, "brute-force permutation of F_64", is_permutation_bruteforce(g), True)
    return report


BPP3_EXPECTED = {14: 13, 13: 18, 12: 23, 8: 22, 7: 1, 6: 6, 5: 7, 4: 12, 3: 17, 2: 10, 1: 15, 0: 20}


def bpp3_setup():
    ctx = make_tower(3, 1, 3, 6, moduli={"mid_qm": [1, 2, 0, 1]}, primitives={"mid_qm": [0, 1, 0]})
    gamma = ctx.mid.gen
    pair = dual_basis(ctx, gamma ** 2)
    diag = {1: [2, 1, 1], 2: [1, 0, 1], 3: [1, 0, 0, 0, 1]}
    rows = [[[0] for _ in range(3)] for _ in range(3)]
    for label, poly in diag.items():
        a = matring.label_to_index(ctx, label)
        rows[a][a] = poly
    return ctx, pair, RMatrix(ctx, rows)


def golden_bpp3() -> list:
    ctx, pair, G = bpp3_setup()
    g = psi(G, pair)
    got = {i: ctx.log(a) for i, a in enumerate(g.coeffs) if a}
    report = []
    _check(report, "u = gamma^21", ctx.log(pair.u), 21)
    _check(report, "det(G) is a unit of R_(3,6)", det(G).is_unit(), True)
    _check(report, "diagonal part coefficients (gamma powers by q-exponent)",
           {str(k): v for k, v in sorted(got.items())}, {str(k): v for k, v in sorted(BPP3_EXPECTED.items())})
    _check(report, "kernel test certifies a permutation of F_(3^18)", is_permutation(g), True)
    return report


FINALEX = twoprime.PrescribedCoeffs(3, (3, 3, 1), (3, 1, 4), (1, 1, 2), (1, 1, 4))


def golden_finalex() -> list:
    ctx = twoprime.twoprime_tower(5, 3, mid_modulus=[2, 4, 1])
    a = ctx.mid.gen
    pair = dual_basis(ctx, a)
    D1, excl = twoprime.excluded_set(FINALEX, ctx)
    g = twoprime.assemble_g(FINALEX, pair)
    report = []
    _check(report, "u = alpha^4", pair.u == a ** 4, True)
    _check(report, "D(1) = 4", int(D1.c[0]), 4)
    _check(report, "excluded set = {0, 3}", sorted(int(x.c[0]) for x in excl), [0, 3])
    _check(report, "sufficient criterion fires", twoprime.is_pp_sufficient(FINALEX, ctx).value, "PP")
    _check(report, "brute-force permutation of F_(5^6)", is_permutation_bruteforce(g), True)
    return report


GOLDENS = {"ex1": golden_ex1, "bpp3": golden_bpp3, "finalex": golden_finalex}


def cmd_golden(args) -> dict:
    report = GOLDENS[args.example]()
    payload = {"example": args.example, "pass": all(r["pass"] for r in report), "checks": report}
    if not payload["pass"]:
        failed = [r["check"] for r in report if not r["pass"]]
        raise DomainFailure("golden checks failed: " + "; ".join(failed), payload)
    return payload


# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linperm", description="Linear permutation polynomials via matrices over F_q[x]/(x^s - 1).")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tower", help="build a field tower and a normal basis pair")
    for name in ("p", "e", "m", "s"):
        p.add_argument(name, type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--modulus", action="append", metavar="LEVEL=c0,c1,...",
                   help="pin a defining polynomial (low degree first); repeatable")
    p.add_argument("--no-self-dual", action="store_true", help="do not prefer a self-dual basis")
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("factor", help="factor x^s - 1 over F_q")
    p.add_argument("q", type=int)
    p.add_argument("s", type=int)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("sizes", help="orders of GL, SL, Borel, diagonal and unit groups")
    for name in ("q", "m", "s"):
        p.add_argument(name, type=int)
    p.set_defaults(func=cmd_sizes)

    p = sub.add_parser("psi", help="matrix to linearized polynomial")
    p.add_argument("ctx")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("phi", help="linearized polynomial to matrix")
    p.add_argument("ctx")
    p.add_argument("poly")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("gen", help="generate a family member")
    p.add_argument("family", choices=[f.lower() for f in families.FAMILIES])
    p.add_argument("ctx")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t", type=int, default=3, help="number of transvections for spp/pp")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="test whether a polynomial permutes the top field")
    p.add_argument("ctx")
    p.add_argument("poly")
    p.add_argument("--method", choices=("kernel", "brute", "both"), default="kernel")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="factor an invertible matrix into elementary matrices")
    p.add_argument("ctx")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("twoprime", help="criteria for prescribed coefficients over F_(q^2p)")
    p.add_argument("q", type=int)
    p.add_argument("p", type=int)
    p.add_argument("coeffs")
    p.add_argument("--criterion", choices=("exact", "sufficient", "corgusta"), default="exact")
    p.add_argument("--sound", action="store_true", help="use the full constant coefficient in the excluded set")
    p.add_argument("--mid-modulus", help="defining polynomial of F_(q^2), e.g. 2,4,1")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_twoprime)

    p = sub.add_parser("golden", help="rebuild a worked example and compare")
    p.add_argument("example", choices=sorted(GOLDENS))
    p.set_defaults(func=cmd_golden)
    return ap


def run(argv=None) -> tuple[CommandResult, int]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            raise
        return CommandResult("error", None, ["could not parse arguments"]), 2
    try:
        return CommandResult("ok", args.func(args)), 0
    except InputError as exc:
        return CommandResult("error", None, [str(exc)]), 2
    except DomainFailure as exc:
        return CommandResult("error", exc.payload, [str(exc)]), 1
    except (LinPermError, ZeroDivisionError) as exc:
        return CommandResult("error", None, [f"{type(exc).__name__}: {exc}"]), 1
    except ValueError as exc:
        return CommandResult("error", None, [f"invalid parameters: {exc}"]), 2


def main(argv=None) -> int:
    result, code = run(argv)
    json.dump(result.to_json(), sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
