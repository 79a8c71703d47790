"""Command-line entry point.

Exit codes: 0 pass, 1 fail or witness, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from . import higher, symbolic
from .exactmath import format_rat
from .serialize import (SchemaError, dumps, load_algebra, load_charseq, load_system,
                        system_to_json)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class Report:
    command: str
    status: str  # "pass" | "fail" | "witness"
    summary: str
    details: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT_PASS if self.status == "pass" else EXIT_FAIL

    def to_json(self) -> dict:
        return {"command": self.command, "status": self.status,
                "summary": self.summary, "details": self.details}

    def render(self, as_json: bool = False) -> str:
        if as_json:
            return dumps(self.to_json())
        return f"{self.status}: {self.summary}"


def _nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {n}")
    return n


def _pos_int(text: str) -> int:
    n = _nonneg_int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {n}")
    return n


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None


# -- commands ---------------------------------------------------------------------

def cmd_expand(n: int, fmt: str = "text") -> str:
    p = symbolic.expand_f(n)
    if fmt == "json":
        return dumps(symbolic.render_json(p))
    return symbolic.render_text(p)


def cmd_coeffs(n: int) -> str:
    lines = [f"{','.join(map(str, c))} -> {format_rat(symbolic.coefficient(c))}"
             for c in symbolic.compositions(n)]
    return "\n".join(lines)


def cmd_demo() -> str:
    return "\n".join(f"f_{n} = {symbolic.render_text(symbolic.expand_f(n))}" for n in range(5))


def cmd_check(system_path: str, algebra: str, jordan: bool = False) -> Report:
    sys_ = load_system(system_path)
    alg = load_algebra(algebra)
    if sys_.dim != alg.dim:
        raise SchemaError("$", f"system dimension {sys_.dim} does not match "
                               f"algebra {alg.name} of dimension {alg.dim}", source=system_path)
    name = "check --jordan" if jordan else "check"
    kind = "Jordan higher" if jordan else "higher"
    v = (higher.jordan_higher_violation if jordan else higher.higher_violation)(sys_, alg)
    if v is None:
        return Report(name, "pass",
                      f"{kind} {{g_n,h_n}}-derivation identities hold on {alg.name} for n = 0..{sys_.N}",
                      {"algebra": alg.name, "N": sys_.N})
    return Report(name, "fail", v.describe(alg.basis),
                  {"algebra": alg.name, "N": sys_.N, "violation": v.to_json(alg.basis)})


def cmd_roundtrip(charseq_path: str, algebra: str, N: int) -> Report:
    cs = load_charseq(charseq_path)
    alg = load_algebra(algebra)
    if cs.dim != alg.dim:
        raise SchemaError("$", f"sequence dimension {cs.dim} does not match "
                               f"algebra {alg.name} of dimension {alg.dim}", source=charseq_path)
    if N > cs.N:
        raise SchemaError("$.N", f"file holds {cs.N} generators, {N} requested",
                          source=charseq_path)
    cs = cs.truncate(N)
    base = {"algebra": alg.name, "N": N}
    try:
        sys_ = higher.build_from_char(cs, alg)
    except higher.PreconditionError as exc:
        details = dict(base, error="precondition", index=exc.index)
        if exc.violation is not None:
            details["violation"] = exc.violation.to_json(alg.basis)
        return Report("roundtrip", "fail", str(exc), details)

    checks = []

    def record(name: str, ok: bool):
        checks.append({"check": name, "ok": ok})

    record("build_from_char is a higher derivation", higher.is_higher_derivation(sys_, alg))
    back = higher.extract_char(sys_, alg, check=False)
    record("extract(build(cs)) == cs", back == cs)
    record("build(extract(sys)) == sys", higher.build_from_char(back, alg, check=False) == sys_)
    for n in range(N + 1):
        closed = higher.closed_form_from_char(cs, n)
        record(f"closed form == recursion at n={n}", closed == (sys_.f[n], sys_.g[n], sys_.h[n]))
    failed = [c["check"] for c in checks if not c["ok"]]
    if failed:
        return Report("roundtrip", "fail", f"{failed[0]} does not hold", dict(base, checks=checks))
    return Report("roundtrip", "pass", f"{len(checks)} exact checks hold for N = {N} on {alg.name}",
                  dict(base, checks=checks))


def cmd_search(algebra: str, N: int, trials: int, seed: int) -> Report:
    alg = load_algebra(algebra)
    found = higher.search_jordan_counterexample(alg, N, trials, seed)
    base = {"algebra": alg.name, "semiprime": alg.semiprime, "N": N,
            "trials": trials, "seed": seed}
    if found is None:
        return Report("search", "pass", f"no witness in {trials} trials", base)
    v = higher.higher_violation(found, alg)
    details = dict(base, system=system_to_json(found))
    if v is not None:
        details["violation"] = v.to_json(alg.basis)
    summary = "Jordan higher but not higher"
    if v is not None:
        summary += f"; {v.describe(alg.basis)}"
    return Report("search", "witness", summary, details)


# -- argument parsing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="higherderiv",
        description="Construct, expand and verify higher {g_n,h_n}-derivations exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="closed-form expansion of f_n in F1, F2, ...")
    p.add_argument("n", type=_nonneg_int)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("coeffs", help="coefficient of every composition of n")
    p.add_argument("n", type=_pos_int)

    p = sub.add_parser("check", help="check a higher system against an algebra")
    p.add_argument("system")
    p.add_argument("algebra", help="algebra JSON file or builtin name (M2, M3, T2, dual)")
    p.add_argument("--jordan", action="store_true", help="check the Jordan identities instead")
    p.add_argument("--json", action="store_true", help="print the report as JSON")

    p = sub.add_parser("roundtrip", help="build/extract/closed-form consistency for a sequence")
    p.add_argument("charseq")
    p.add_argument("algebra")
    p.add_argument("N", type=_nonneg_int)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("search", help="randomized search for a Jordan-only higher system")
    p.add_argument("algebra")
    p.add_argument("N", type=_nonneg_int)
    p.add_argument("trials", type=_nonneg_int)
    p.add_argument("seed", type=_int)
    p.add_argument("--json", action="store_true")

    sub.add_parser("demo", help="print f_0 .. f_4 in terms of F1, F2, ...")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out: Any
    try:
        if args.command == "expand":
            print(cmd_expand(args.n, args.format))
            return EXIT_PASS
        if args.command == "coeffs":
            print(cmd_coeffs(args.n))
            return EXIT_PASS
        if args.command == "demo":
            print(cmd_demo())
            return EXIT_PASS
        if args.command == "check":
            out = cmd_check(args.system, args.algebra, args.jordan)
        elif args.command == "roundtrip":
            out = cmd_roundtrip(args.charseq, args.algebra, args.N)
        else:
            out = cmd_search(args.algebra, args.N, args.trials, args.seed)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(out.render(args.json))
    return out.exit_code


if __name__ == "__main__":
    sys.exit(main())
