"""``zetalg`` command-line front end.

Exit status: 0 on success, 1 on bad or unsupported input, 2 when two
computations that must agree do not (a verification mismatch).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import AlgebraAnalysis, analyze
from .errors import CrossCheckFailure, DomainError, ZetalgError
from .formulas import reference_locals
from .inputs import builtin, load_algebra
from .padic import format_p_adic, is_prime
from .plattice import conductor
from .zeta import (
    DEFAULT_BUDGET,
    LocalOrder,
    count_ideals,
    expand_dirichlet,
    format_polynomial,
    genus_decomposition,
    global_zeta,
    local_zeta,
)

VERIFY_ALL = ("kn:2", "kn:3", "kn:4", "kn:6", "kn:8", "kn:9", "petersen", "square", "gq21", "crown:3")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _frac(x) -> str:
    return str(Fraction(x))


def _emit(args, payload: dict, lines: Sequence[str]):
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _load(args) -> tuple[str, AlgebraAnalysis]:
    if args.builtin and args.input:
        raise DomainError("give either --builtin or --input, not both")
    if args.builtin:
        return args.builtin, analyze(builtin(args.builtin))
    if args.input:
        return args.input, analyze(load_algebra(args.input))
    raise DomainError("no algebra given: use --builtin NAME or --input FILE")


def _prime(args) -> int:
    if args.prime is None or not is_prime(args.prime):
        raise DomainError(f"--prime must be a prime, got {args.prime}")
    return args.prime


def _threads(args) -> Optional[int]:
    if args.threads is not None:
        if args.threads < 1:
            raise DomainError("--threads must be positive")
        return args.threads
    env = os.environ.get("ZETALG_THREADS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise DomainError(f"ZETALG_THREADS must be an integer, got {env!r}") from None
        if value < 1:
            raise DomainError("ZETALG_THREADS must be positive")
        return value
    return None


def _budget(args) -> int:
    if args.budget <= 0:
        raise DomainError("--budget must be positive")
    return args.budget


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    name, a = _load(args)
    T, C, E = a.algebra, a.characters, a.idempotents
    payload = {
        "source": name,
        "rank": T.rank,
        "order": T.order,
        "degrees": list(T.degrees),
        "involution": list(T.involution),
        "characters": [[_frac(x) for x in row] for row in C.values],
        "multiplicities": [_frac(m) for m in C.multiplicities],
        "idempotents": [[_frac(x) for x in row] for row in E.matrix],
        "frame_number": a.frame,
        "f": a.relevant.f,
        "relevant_primes": list(a.relevant.primes),
    }
    lines = [
        f"algebra: {name} (axioms verified)",
        f"rank {T.rank}, order {T.order}, degrees {list(T.degrees)}",
        "character table (rows chi_i, columns b_j):",
        *("  " + "  ".join(_frac(x) for x in row) for row in C.values),
        f"multiplicities: {', '.join(_frac(m) for m in C.multiplicities)}",
        "idempotents e_i in the standard basis:",
        *(f"  e_{i} = [" + ", ".join(_frac(x) for x in row) + "]" for i, row in enumerate(E.matrix)),
        f"Frame number: {a.frame}",
        f"f = {a.relevant.f}; relevant primes: {list(a.relevant.primes)}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_local_zeta(args) -> int:
    name, a = _load(args)
    p = _prime(args)
    z = local_zeta(LocalOrder(a, p), p, args.engine, kmax=args.kmax, budget=_budget(args), threads=_threads(args))
    payload = {"source": name, "engine": args.engine, **z.to_json()}
    _emit(args, payload, [f"{name} at p={p} ({args.engine}):", f"  zeta = {z}", f"  numerator {list(z.numerator)}"])
    return 0


def cmd_global_zeta(args) -> int:
    name, a = _load(args)
    if args.terms < 1:
        raise DomainError("--terms must be positive")
    Z = global_zeta(a, args.engine, budget=_budget(args), threads=_threads(args))
    coeffs = expand_dirichlet(Z, args.terms)
    payload = {"source": name, **Z.to_json(), "dirichlet": coeffs}
    lines = [f"{name}: zeta = zeta_Z(s)^{Z.rank} x local numerators"]
    for p, z in sorted(Z.locals.items()):
        lines.append(f"  p={p}: {format_polynomial(z.numerator)}  (t = {p}^-s)")
    lines.append(f"  a_1..a_{args.terms}: {' '.join(map(str, coeffs))}")
    _emit(args, payload, lines)
    return 0


def cmd_count(args) -> int:
    name, a = _load(args)
    p = _prime(args)
    if args.kmax is None or args.kmax < 0:
        raise DomainError("--kmax must be a non-negative integer")
    s = count_ideals(LocalOrder(a, p), p, args.kmax, _budget(args), _threads(args))
    payload = {"source": name, "p": p, "kmax": args.kmax, "counts": list(s.coeffs)}
    _emit(args, payload, [",".join(str(c) for c in s.coeffs)])
    return 0


def cmd_genus(args) -> int:
    name, a = _load(args)
    p = _prime(args)
    ctx = LocalOrder(a, p)
    K = args.kmax if args.kmax is not None else 8
    dec = genus_decomposition(ctx, p, K, args.engine_genus, budget=_budget(args), threads=_threads(args))
    rows = []
    lines = [f"{name} at p={p}: {len(dec.classes)} genus classes, Lambda = {ctx.lam}"]
    for c, s in zip(dec.classes, dec.series):
        entry = {
            "representative": c.representative.to_json(),
            "index_over_lambda": p**c.index_exponent if c.index_exponent >= 0 else _frac(Fraction(p) ** c.index_exponent),
            "unit_measure": _frac(c.measure),
            "is_order": c.is_order,
            "contains_lambda": c.contains_lambda,
            "series": list(s.coeffs),
        }
        if args.dump_lattices:
            entry["conductor"] = conductor(c.representative, ctx.lam).to_json()
        rows.append(entry)
        kind = "order" if c.is_order else "lattice"
        lines.append(
            f"  {c.representative}  [M:Lambda]={entry['index_over_lambda']}  mu={entry['unit_measure']}  {kind}"
            + ("" if c.contains_lambda else "  (no representative contains Lambda)")
        )
        lines.append(f"    series: {' '.join(map(str, s.coeffs))}")
        if args.dump_lattices:
            lines.append(f"    conductor {{M:Lambda}} = {conductor(c.representative, ctx.lam)}")
    payload = {"source": name, "p": p, "kmax": K, "engine": args.engine_genus, "lambda": ctx.lam.to_json(), "classes": rows}
    _emit(args, payload, lines)
    return 0


def verify_builtin(name: str, budget: int = DEFAULT_BUDGET, threads: Optional[int] = None) -> list[dict]:
    """Compare both engines with the published factors for one built-in."""
    a = analyze(builtin(name))
    refs = reference_locals(name)
    checks = []
    primes = sorted(set(refs) | set(a.relevant.primes))
    for p in primes:
        ref = refs.get(p)
        entry = {"builtin": name, "p": p, "expected": list(ref.numerator) if ref else [1]}
        try:
            z = local_zeta(LocalOrder(a, p), p, "both", budget=budget, threads=threads)
            entry["computed"] = list(z.numerator)
            entry["ok"] = entry["computed"] == entry["expected"] and (ref is None or ref.r == z.r)
        except CrossCheckFailure as exc:
            entry["computed"] = None
            entry["ok"] = False
            entry["error"] = str(exc)
        checks.append(entry)
    return checks


def cmd_verify(args) -> int:
    if args.input:
        raise DomainError("verify compares built-ins with published formulas; use --builtin")
    target = args.builtin or "all"
    names = VERIFY_ALL if target == "all" else (target,)
    checks = []
    for name in names:
        checks.extend(verify_builtin(name, _budget(args), _threads(args)))
    ok = all(c["ok"] for c in checks)
    lines = []
    for c in checks:
        status = "PASS" if c["ok"] else "FAIL"
        line = f"{status} {c['builtin']} p={c['p']}: expected {c['expected']} computed {c['computed']}"
        if "error" in c:
            line += f" ({c['error']})"
        lines.append(line)
    lines.append("all checks passed" if ok else "verification mismatch")
    _emit(args, {"checks": checks, "ok": ok}, lines)
    return 0 if ok else 2


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("--builtin", metavar="NAME", help="kn:<n>, petersen, square, gq21, crown:<n>")
    src.add_argument("--input", metavar="FILE", help="JSON algebra description")
    opts = common.add_argument_group("options")
    opts.add_argument("--json", action="store_true", help="machine-readable output")
    opts.add_argument("--threads", type=int, default=None, help="worker cap (fallback: ZETALG_THREADS)")
    opts.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum HNF cells to visit")

    parser = _Parser(prog="zetalg", description="Solomon zeta functions of table-algebra orders.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="axioms, characters, idempotents, relevant primes")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("local-zeta", parents=[common], help="local factor at one prime")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--engine", choices=("counting", "genus", "both"), default="genus")
    p.add_argument("--kmax", type=int, default=None, help="initial truncation")
    p.set_defaults(func=cmd_local_zeta)

    p = sub.add_parser("global-zeta", parents=[common], help="Euler product and Dirichlet coefficients")
    p.add_argument("--terms", type=int, default=20)
    p.add_argument("--engine", choices=("counting", "genus", "both"), default="genus")
    p.set_defaults(func=cmd_global_zeta)

    p = sub.add_parser("count", parents=[common], help="count ideals of each index p^k")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("genus", parents=[common], help="genus decomposition table")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--kmax", type=int, default=None, help="series truncation (default 8)")
    p.add_argument("--engine", dest="engine_genus", choices=("integral", "counting", "both"), default="both")
    p.add_argument("--dump-lattices", action="store_true", help="include conductors and JSON lattices")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("verify", parents=[common], help="engines against published formulas")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CrossCheckFailure as exc:
        print(f"zetalg: cross-check failed: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ZetalgError) as exc:
        print(f"zetalg: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
