"""Command-line front end: ``drinfeldkit <command> <action> [options]``.

Exit codes: 0 success, 1 a golden check failed, 2 usage, 3 mathematical
precondition, 4 depth or precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from sympy import factorint

from . import __version__
from .analytic import (
    LatticeRank1,
    carlitz_period_power,
    exp_coeffs_from_eisenstein,
    exp_coeffs_from_phi,
    functional_equation_check,
)
from .cuspidal import cuspidal_order_rank_r, eisenstein_index
from .drinfeld import (
    AField,
    DrinfeldModule,
    InsufficientExtension,
    factor_isogeny,
    rational_torsion_search,
    torsion_module,
)
from .fields import GF, DomainError
from .golden import run_golden
from .harmonic import (
    HarmonicError,
    eisenstein_cochain,
    fourier_coeffs,
    harmonic_basis,
    hecke_matrix,
    l_polynomial,
    petersson_pairing,
    self_adjointness_report,
)
from .laurent import PrecisionError
from .polys import Poly, RationalFunc, enumerate_monic_irreducibles, factor, is_irreducible
from .skew import SkewPoly
from .tree import DepthError, quotient_graph

EXIT_FAIL, EXIT_USAGE, EXIT_MATH, EXIT_DEPTH = 1, 2, 3, 4


class UsageError(ValueError):
    pass


# -- parsing helpers ----------------------------------------------------------------------


def constants_field(args):
    fac = factorint(args.q)
    if len(fac) != 1:
        raise UsageError(f"--q {args.q} is not a prime power")
    (p, e), = fac.items()
    modulus = None
    if args.modulus:
        modulus = tuple(int(c) for c in args.modulus.split(","))
    try:
        return GF(p, e, modulus)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def poly(F, s: str, what: str = "polynomial") -> Poly:
    try:
        return Poly.parse(F, s)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot parse {what} {s!r}: {exc}") from None


def ratfunc(F, s: str) -> RationalFunc:
    num, _, den = s.partition("/")
    n = poly(F, num.strip().strip("()"))
    d = poly(F, den.strip().strip("()")) if den else Poly.const(F, 1)
    if d.is_zero():
        raise DomainError("zero denominator")
    return RationalFunc(n, d)


def coefficient_list(s: str) -> list[str]:
    return [c.strip() for c in s.split(";") if c.strip()]


def prime_arg(F, args) -> Poly:
    if getattr(args, "prime", None):
        p = poly(F, args.prime, "prime")
    elif getattr(args, "prime_degree", None):
        p = enumerate_monic_irreducibles(F, args.prime_degree)[0]
    else:
        raise UsageError("give --prime or --prime-degree")
    if not is_irreducible(p):
        raise DomainError(f"{p.format()} is not irreducible")
    return p


def fr(x) -> dict:
    x = Fraction(x)
    return {"exact": str(x), "float": float(x)}


# -- subcommands ---------------------------------------------------------------------


def cmd_field(args, F):
    if args.action == "irreducibles":
        ps = enumerate_monic_irreducibles(F, args.degree)
        return {"degree": args.degree, "count": len(ps), "irreducibles": [p.format() for p in ps]}
    a = poly(F, args.a)
    if args.action == "factor":
        return {"poly": a.format(), "factors": [[f.format(), e] for f, e in factor(a)],
                "irreducible": is_irreducible(a)}
    b = poly(F, args.b)
    if args.action == "mul":
        return {"product": (a * b).format()}
    if args.action == "add":
        return {"sum": (a + b).format()}
    if args.action == "gcd":
        return {"gcd": a.gcd(b).format()}
    if args.action == "divmod":
        if b.is_zero():
            raise DomainError("division by zero polynomial")
        qt, r = divmod(a, b)
        return {"quotient": qt.format(), "remainder": r.format()}
    raise UsageError(args.action)


def _module_over_F(F, args):
    g = [ratfunc(F, c) for c in coefficient_list(args.g)]
    return DrinfeldModule(AField.function_field(F), g)


def cmd_analytic(args, F):
    if args.action == "period":
        s = carlitz_period_power(args.D, F)
        return {"D": args.D, "pi_C^(q-1)": s.to_json(), "certified": True}
    if args.action == "exp":
        if args.route == "eisenstein":
            e = exp_coeffs_from_eisenstein(LatticeRank1.carlitz(F, args.D), args.N, args.D)
            return {"route": "eisenstein", "lattice": "carlitz", "N": args.N, "D": args.D,
                    "exp": e.to_json(), "exactness": "truncated-with-certificate"}
        phi = _module_over_F(F, args) if args.g else DrinfeldModule.carlitz(AField.function_field(F))
        e = exp_coeffs_from_phi(phi, args.N)
        return {"route": "phi", "N": args.N, "exp": [repr(c) for c in e.coeffs],
                "exactness": "exact"}
    if args.action == "check":
        phi = _module_over_F(F, args) if args.g else DrinfeldModule.carlitz(AField.function_field(F))
        e = exp_coeffs_from_phi(phi, args.N)
        if args.mutate is not None:
            one = RationalFunc.from_poly(Poly.const(F, 1))
            e = e.replace(args.mutate, e[args.mutate] + one)
        return {"N": args.N, "mutated": args.mutate,
                "report": functional_equation_check(phi, e, args.N).to_json()}
    raise UsageError(args.action)


def cmd_drinfeld(args, F):
    if args.action == "torsion":
        p = prime_arg(F, args)
        base = AField.residue(p)
        g = [base.gamma(poly(F, c)) for c in coefficient_list(args.g)]
        phi = DrinfeldModule(base, g)
        a = poly(F, args.a)
        st = torsion_module(phi, a)
        return {"char": p.format(), "a": a.format(), "height": phi.height(),
                "structure": st.to_json()}
    phi = _module_over_F(F, args)
    if args.action == "phi-a":
        a = poly(F, args.a)
        return {"a": a.format(), "phi_a": repr(phi.phi(a))}
    if args.action == "j":
        return {"j": repr(phi.j_invariant())}
    if args.action == "reduce":
        ell = poly(F, args.at)
        red = phi.reduce_at(ell)
        out = {"at": ell.format(), "reduction": [repr(c) for c in red.g], "height": red.height()}
        if args.a:
            out["torsion"] = torsion_module(red, poly(F, args.a)).to_json()
        return out
    if args.action == "rational-torsion":
        return rational_torsion_search(phi, args.B).to_json()
    if args.action == "isogeny":
        ks = [ratfunc(F, c) for c in coefficient_list(args.kernel)]
        psi, w = factor_isogeny(phi, SkewPoly(ks))
        return {"target": [repr(c) for c in psi.g], "verified": w.verify()}
    raise UsageError(args.action)


def _graph(F, args):
    n = poly(F, args.level, "level")
    if n.is_zero() or n.deg < 1:
        raise DomainError("level must have positive degree")
    return quotient_graph(n.monic(), args.depth)


def cmd_tree(args, F):
    G = _graph(F, args)
    if args.format == "dot":
        return G.to_dot(full=args.full)
    return G.to_json()


def cmd_hecke(args, F):
    G = _graph(F, args)
    cusp = not args.full
    if args.action == "basis":
        B = harmonic_basis(G, cusp)
        return {"cuspidal": cusp, "rank": len(B), "genus": G.genus, "cusps": G.cusps,
                "basis": [b.to_json() for b in B]}
    if args.action == "matrix":
        B = harmonic_basis(G, cusp)
        m = poly(F, args.m)
        return hecke_matrix(m, B, cusp, args.jobs).to_json()
    if args.action == "eisenstein":
        return eisenstein_cochain(G).to_json()
    if args.action == "fourier":
        f = eisenstein_cochain(G) if args.eisenstein else harmonic_basis(G, cusp)[args.index]
        table = fourier_coeffs(f, args.K)
        if args.format == "csv":
            return table.to_csv()
        return {"K": args.K, "coefficients": table.to_json()}
    if args.action == "lseries":
        B = harmonic_basis(G, True)
        if not B:
            raise DomainError("cuspidal space is zero")
        return l_polynomial(B[args.index]).to_json()
    if args.action == "pairing":
        B = harmonic_basis(G, True)
        gram = [[fr(petersson_pairing(a, b)) for b in B] for a in B]
        out = {"gram": gram}
        if args.m:
            out["self_adjoint"] = self_adjointness_report(poly(F, args.m), B).to_json()
        return out
    raise UsageError(args.action)


def cmd_cuspidal(args, F):
    if args.action == "order":
        p = prime_arg(F, args)
        return {"prime": p.format(), "rank": args.rank,
                "order": cuspidal_order_rank_r(p, args.rank)}
    if args.action == "index":
        n = poly(F, args.level, "level")
        return eisenstein_index(n, args.bmax, args.jobs).to_json()
    raise UsageError(args.action)


def cmd_golden(args, F):
    res = run_golden(F.order, index=not args.skip_index)
    return {"checks": [r.to_json() for r in res], "all_pass": all(r.ok for r in res)}


# -- argument grammar -------------------------------------------------------------------


def _common(p):
    p.add_argument("--q", type=int, default=2, help="order of the constants field")
    p.add_argument("--modulus", help="comma-separated modulus for F_q over F_p (low degree first)")
    p.add_argument("--format", choices=["json", "csv", "dot", "text"], default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="drinfeldkit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="polynomial arithmetic over F_q")
    p.add_argument("action", choices=["irreducibles", "factor", "add", "mul", "gcd", "divmod"])
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--a", default="T")
    p.add_argument("--b", default="1")
    _common(p)

    p = sub.add_parser("analytic", help="Carlitz period and exponential coefficients")
    p.add_argument("action", choices=["period", "exp", "check"])
    p.add_argument("--D", type=int, default=6, help="monic degree bound of lattice sums")
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--route", choices=["phi", "eisenstein"], default="phi")
    p.add_argument("--g", help="g_1;...;g_r as rational functions in T")
    p.add_argument("--mutate", type=int, help="perturb e_n before checking")
    _common(p)

    p = sub.add_parser("drinfeld", help="Drinfeld modules over F_q(T) and A/p")
    p.add_argument("action", choices=["phi-a", "torsion", "j", "reduce", "rational-torsion",
                                      "isogeny"])
    p.add_argument("--g", default="1", help="g_1;...;g_r")
    p.add_argument("--a", default="T")
    p.add_argument("--prime")
    p.add_argument("--prime-degree", type=int)
    p.add_argument("--at", default="T")
    p.add_argument("--B", type=int)
    p.add_argument("--kernel", default="1", help="c_0;c_1;... of the kernel polynomial")
    _common(p)

    p = sub.add_parser("tree", help="quotient graphs Gamma_0(n)\\T")
    p.add_argument("action", choices=["quotient"])
    p.add_argument("--level", required=True)
    p.add_argument("--depth", type=int)
    p.add_argument("--full", action="store_true", help="DOT: draw every truncated class")
    _common(p)

    p = sub.add_parser("hecke", help="harmonic cochains and Hecke operators")
    p.add_argument("action", choices=["basis", "matrix", "eisenstein", "fourier", "lseries",
                                      "pairing"])
    p.add_argument("--level", required=True)
    p.add_argument("--depth", type=int)
    p.add_argument("--full", action="store_true", help="use all harmonic cochains")
    p.add_argument("--m", default="T", help="Hecke index")
    p.add_argument("--K", type=int, default=4)
    p.add_argument("--index", type=int, default=0, help="basis vector")
    p.add_argument("--eisenstein", action="store_true")
    _common(p)

    p = sub.add_parser("cuspidal", help="cuspidal orders and Eisenstein index")
    p.add_argument("action", choices=["order", "index"])
    p.add_argument("--prime")
    p.add_argument("--prime-degree", type=int)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--level")
    p.add_argument("--bmax", type=int, default=6)
    _common(p)

    p = sub.add_parser("paper-examples", aliases=["golden"],
                       help="recompute the golden worked examples")
    p.add_argument("--skip-index", action="store_true")
    _common(p)
    return ap


HANDLERS = {
    "field": cmd_field,
    "analytic": cmd_analytic,
    "drinfeld": cmd_drinfeld,
    "tree": cmd_tree,
    "hecke": cmd_hecke,
    "cuspidal": cmd_cuspidal,
    "paper-examples": cmd_golden,
}


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items())}


def _text(result, indent=0) -> str:
    pad = "  " * indent
    if isinstance(result, dict):
        lines = []
        for k, v in result.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(result, list):
        lines = []
        for v in result:
            if isinstance(v, list) and not any(isinstance(x, (dict, list)) for x in v):
                lines.append(f"{pad}- [{', '.join(map(str, v))}]")
            elif isinstance(v, (dict, list)):
                lines.append(_text(v, indent))
            else:
                lines.append(f"{pad}- {v}")
        return "\n".join(lines)
    return f"{pad}{result}"


def _golden_table(result) -> str:
    rows = result["checks"]
    w = max(len(r["name"]) for r in rows)
    out = [f"{'check':<{w}}  expected  got  status"]
    for r in rows:
        out.append(f"{r['name']:<{w}}  {r['expected']}  {r['got']}  {'PASS' if r['ok'] else 'FAIL'}")
    out.append(f"all pass: {result['all_pass']}")
    return "\n".join(out)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "golden":
        args.command = "paper-examples"
    try:
        F = constants_field(args)
        result = HANDLERS[args.command](args, F)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DepthError, PrecisionError, InsufficientExtension) as exc:
        snap = getattr(exc, "snapshot", None)
        print(f"depth/precision exhausted: {exc}" + (f" {snap}" if snap else ""), file=sys.stderr)
        return EXIT_DEPTH
    except (DomainError, HarmonicError, ArithmeticError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_MATH
    if isinstance(result, str):
        out.write(result if result.endswith("\n") else result + "\n")
    elif args.command == "paper-examples" and args.format == "text":
        out.write(_golden_table(result) + "\n")
    elif args.format == "text":
        out.write(_text(result) + "\n")
    else:
        doc = {
            "config": _config(args),
            "result": result,
            "provenance": {"package": "drinfeldkit", "version": __version__,
                           "arithmetic": "exact"},
        }
        out.write(json.dumps(doc, indent=2, sort_keys=False, default=str) + "\n")
    if args.command == "paper-examples" and not result["all_pass"]:
        return EXIT_FAIL
    return 0


def main():
    sys.exit(run())
