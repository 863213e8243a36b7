"""Command-line entry point.

Exit codes: 0 = an answer was computed (a "not transitive" answer is a
success), 1 = bad input, 2 = a cap or work budget was exhausted, 3 = the
two transitivity methods disagreed (a bug; a report is dumped).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import constructions, scheme
from .errors import CapExceeded, ParseError
from .partitions import (
    Partition,
    format_partition,
    parse_partition,
    partitions_of,
)
from .perm import PermSet, closure, dump_permset, read_permset
from .transitivity import (
    DEFAULT_ORACLE_BUDGET,
    CharacterWitness,
    OracleWitness,
    TransitivityVerdict,
    check_character,
    check_group_orbit,
    check_oracle,
    divisibility_check,
    dual_distribution,
    inner_distribution,
    orbit_count,
    profile,
)

DEFAULT_CLOSURE_CAP = 10**6


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace
    json_out: bool = False
    seed: int = 0
    max_n: int = scheme.DEFAULT_MATRIX_CAP
    closure_cap: int = DEFAULT_CLOSURE_CAP
    oracle_budget: int = DEFAULT_ORACLE_BUDGET
    out: list[str] = field(default_factory=list)

    def emit(self, text: str) -> None:
        self.out.append(text)


def _frac_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _witness_json(w):
    if w is None:
        return None
    if isinstance(w, OracleWitness):
        return {"P": str(w.P), "Q": str(w.Q), "count": w.count}
    if isinstance(w, CharacterWitness):
        return {"mu": list(w.mu), "b": _frac_str(w.b)}
    raise TypeError(w)


def _witness_text(w) -> str:
    if isinstance(w, OracleWitness):
        return f"pair P={w.P}, Q={w.Q} connected by {w.count} element(s)"
    if isinstance(w, CharacterWitness):
        return f"b_{format_partition(w.mu)} = {_frac_str(w.b)} != 0"
    return "none"


def _verdict_json(v: TransitivityVerdict, method: str | None = None) -> dict:
    return {
        "lambda": list(v.lam),
        "transitive": v.transitive,
        "r": _frac_str(v.r),
        "method": method or v.method,
        "witness": _witness_json(v.witness),
    }


def _load_perms(cfg: RunConfig, path: str) -> PermSet:
    return read_permset(path)


def _check_lambda_degree(la: Partition, degree: int) -> None:
    if sum(la) != degree:
        raise ValueError(
            f"partition {format_partition(la)} has weight {sum(la)}, "
            f"but the permutation file has degree {degree}"
        )


def _cmd_check(cfg: RunConfig) -> int:
    a = cfg.args
    D = _load_perms(cfg, a.perms)
    la = parse_partition(a.lam)
    _check_lambda_degree(la, D.degree)
    if a.method == "both":
        vo = check_oracle(D, la, cfg.oracle_budget)
        vc = check_character(D, la)
        if vo.transitive != vc.transitive or (vo.transitive and vo.r != vc.r):
            sys.stderr.write("METHOD DISAGREEMENT (this is a bug)\n")
            sys.stderr.write(f"lambda = {format_partition(la)}\n")
            sys.stderr.write(f"oracle: transitive={vo.transitive} r={vo.r} "
                             f"witness={_witness_text(vo.witness)}\n")
            sys.stderr.write(f"character: transitive={vc.transitive} r={vc.r} "
                             f"witness={_witness_text(vc.witness)}\n")
            sys.stderr.write(dump_permset(D))
            return 3
        if cfg.json_out:
            payload = _verdict_json(vc, method="both")
            payload["agree"] = True
            cfg.emit(json.dumps(payload))
        elif vc.transitive:
            cfg.emit(f"transitive, r={_frac_str(vc.r)}, methods agree")
        else:
            cfg.emit(
                "not transitive, methods agree; "
                f"oracle witness: {_witness_text(vo.witness)}; "
                f"character witness: {_witness_text(vc.witness)}"
            )
        return 0
    if a.method == "oracle":
        v = check_oracle(D, la, cfg.oracle_budget)
    elif a.method == "orbit":
        v = check_group_orbit(D, la)
    else:
        v = check_character(D, la)
    if cfg.json_out:
        cfg.emit(json.dumps(_verdict_json(v)))
    elif v.transitive:
        cfg.emit(f"transitive, r={_frac_str(v.r)} ({v.method})")
    else:
        cfg.emit(f"not transitive ({v.method}); witness: {_witness_text(v.witness)}")
    return 0


def _cmd_profile(cfg: RunConfig) -> int:
    a = cfg.args
    D = _load_perms(cfg, a.perms)
    minimal = profile(D, a.method, cfg.oracle_budget)
    if cfg.json_out:
        cfg.emit(json.dumps({
            "degree": D.degree,
            "size": len(D),
            "minimal": [list(la) for la in minimal],
        }))
    else:
        cfg.emit("minimal transitive shapes: "
                 + "; ".join(format_partition(la) for la in minimal))
    return 0


def _cmd_dist(cfg: RunConfig) -> int:
    a = cfg.args
    D = _load_perms(cfg, a.perms)
    inner = inner_distribution(D)
    dual = dual_distribution(D)
    if cfg.json_out:
        cfg.emit(json.dumps({
            "degree": D.degree,
            "size": len(D),
            "inner": {format_partition(p): _frac_str(v) for p, v in zip(inner.index, inner.values)},
            "dual": {format_partition(p): _frac_str(v) for p, v in zip(dual.index, dual.values)},
        }))
    else:
        width = max(len(format_partition(p)) for p in inner.index)
        cfg.emit(f"{'shape':<{width}}  {'inner':>12}  {'dual':>12}")
        for p, av, bv in zip(inner.index, inner.values, dual.values):
            cfg.emit(f"{format_partition(p):<{width}}  {_frac_str(av):>12}  {_frac_str(bv):>12}")
    return 0


def _cmd_chartable(cfg: RunConfig) -> int:
    from .characters import character_table

    a = cfg.args
    table = character_table(a.n, max_n=max(cfg.max_n, 12))
    if cfg.json_out:
        cfg.emit(json.dumps({
            "n": table.n,
            "partitions": [list(p) for p in table.partitions],
            "values": [list(row) for row in table.values],
        }))
    else:
        labels = [format_partition(p) for p in table.partitions]
        width = max(max(len(s) for s in labels),
                    max(len(str(v)) for row in table.values for v in row))
        cfg.emit(" " * (width + 2) + "  ".join(f"{s:>{width}}" for s in labels))
        for lab, row in zip(labels, table.values):
            cfg.emit(f"{lab:>{width}}  " + "  ".join(f"{v:>{width}}" for v in row))
    return 0


def _cmd_closure(cfg: RunConfig) -> int:
    a = cfg.args
    gens = read_permset(a.gens)
    G = closure(list(gens), cfg.closure_cap)
    text = dump_permset(G, comment=f"closure of {len(gens)} generator(s), order {len(G)}")
    _write_output(cfg, a.out, text)
    return 0


def _cmd_orbits(cfg: RunConfig) -> int:
    a = cfg.args
    gens = read_permset(a.gens)
    la = parse_partition(a.lam)
    _check_lambda_degree(la, gens.degree)
    G = closure(list(gens), cfg.closure_cap)
    k = orbit_count(G, la)
    if cfg.json_out:
        cfg.emit(json.dumps({"lambda": list(la), "group_order": len(G), "orbits": k}))
    else:
        cfg.emit(f"group order {len(G)}; orbits on shape-{format_partition(la)} tabloids: {k}")
    return 0


def _cmd_divisibility(cfg: RunConfig) -> int:
    a = cfg.args
    la = parse_partition(a.lam)
    if sum(la) != a.n:
        raise ValueError(f"partition {a.lam} has weight {sum(la)}, but --n is {a.n}")
    res = divisibility_check(a.size, la)
    if cfg.json_out:
        cfg.emit(json.dumps({
            "n": a.n,
            "size": a.size,
            "lambda": list(la),
            "possible": res.ok,
            "failures": [
                {"mu": list(mu), "multinomial": m} for mu, m in res.failures
            ],
        }))
    elif res.ok:
        cfg.emit(f"passes: {a.size} is divisible by the multinomial of every shape "
                 f"dominating {format_partition(la)}")
    else:
        mu, m = res.failures[0]
        cfg.emit(f"impossible: {m} does not divide {a.size}")
    return 0


def _component_set(spec: str) -> PermSet:
    if spec.startswith("sym:"):
        return constructions.classical_group("sym", n=int(spec[4:]))
    if spec.startswith("alt:"):
        return constructions.classical_group("alt", n=int(spec[4:]))
    if spec.startswith("file:"):
        return read_permset(spec[5:])
    raise ValueError(f"bad component spec {spec!r}; expected sym:K, alt:K or file:PATH")


def _cmd_construct(cfg: RunConfig) -> int:
    a = cfg.args
    if a.what == "design":
        design = constructions.load_design(Path(a.design).read_text(encoding="utf-8"))
        d1 = _component_set(a.d1)
        d2 = _component_set(a.d2)
        bij = None
        if a.bij:
            bij = constructions.BijectionAssignment.parse(
                Path(a.bij).read_text(encoding="utf-8"), design
            )
        D = constructions.product_construct(design, d1, d2, bij)
        comment = (f"product of a strength-{design.t} design ({len(design.blocks)} blocks) "
                   f"with components of sizes {len(d1)} and {len(d2)}")
    elif a.what == "agl-halved":
        S = None
        if a.half_set:
            S = [int(tok) for tok in a.half_set.split(",")]
        D = constructions.agl_halved(a.q, S)
        comment = f"halved affine maps on GF({a.q}), size {len(D)}"
    else:  # group
        kwargs = {}
        if a.q is not None:
            kwargs["q"] = a.q
        if a.n is not None:
            kwargs["n"] = a.n
        D = constructions.classical_group(a.kind, cap=cfg.closure_cap, **kwargs)
        comment = f"{a.kind} ({'q=' + str(a.q) if a.q else 'n=' + str(a.n)}), order {len(D)}"
    _write_output(cfg, a.out, dump_permset(D, comment=comment))
    return 0


def _cmd_scheme(cfg: RunConfig) -> int:
    a = cfg.args
    n = a.n
    parts = partitions_of(n)
    if a.krein:
        rows = []
        for i, la in enumerate(parts):
            for mu in parts[i:]:
                q = scheme.krein(n, la, mu, max_n=cfg.max_n)
                rows.append((la, mu, q))
        if cfg.json_out:
            cfg.emit(json.dumps({
                "n": n,
                "krein": [
                    {
                        "lambda": format_partition(la),
                        "mu": format_partition(mu),
                        "q": {format_partition(nu): _frac_str(v) for nu, v in q.items()},
                    }
                    for la, mu, q in rows
                ],
            }))
        else:
            for la, mu, q in rows:
                vals = ", ".join(f"{format_partition(nu)}: {_frac_str(v)}"
                                 for nu, v in q.items() if v != 0)
                cfg.emit(f"q[{format_partition(la)} * {format_partition(mu)}] = {{{vals}}}")
    elif a.idempotents:
        # verify the family, then report the defining class values
        scheme.idempotent(n, (n,), max_n=cfg.max_n)
        from math import factorial

        from .characters import _mn
        from .partitions import hook_degree

        rows = {
            mu: {
                al: Fraction(hook_degree(mu) * _mn(mu, al), factorial(n))
                for al in parts
            }
            for mu in parts
        }
        if cfg.json_out:
            cfg.emit(json.dumps({
                "n": n,
                "idempotents": {
                    format_partition(mu): {
                        format_partition(al): _frac_str(v) for al, v in row.items()
                    }
                    for mu, row in rows.items()
                },
            }))
        else:
            for mu, row in rows.items():
                vals = "; ".join(f"{format_partition(al)}: {_frac_str(v)}"
                                 for al, v in row.items())
                cfg.emit(f"E[{format_partition(mu)}] class values: {vals}")
    else:  # split basis (default)
        if cfg.json_out:
            cfg.emit(json.dumps({
                "n": n,
                "m": {
                    format_partition(la): {
                        format_partition(al): v for al, v in scheme.coeffs_m(n, la).items()
                    }
                    for la in parts
                },
                "n_coeffs": {
                    format_partition(la): {
                        format_partition(mu): _frac_str(v)
                        for mu, v in scheme.coeffs_n(n, la).items()
                    }
                    for la in parts
                },
            }))
        else:
            for la in parts:
                m = scheme.coeffs_m(n, la)
                nz = ", ".join(f"{format_partition(al)}: {v}" for al, v in m.items() if v)
                cfg.emit(f"C[{format_partition(la)}] over class matrices: {{{nz}}}")
            for la in parts:
                nn = scheme.coeffs_n(n, la)
                nz = ", ".join(f"{format_partition(mu)}: {_frac_str(v)}"
                               for mu, v in nn.items() if v != 0)
                cfg.emit(f"C[{format_partition(la)}] over idempotents: {{{nz}}}")
    return 0


def _cmd_report(cfg: RunConfig) -> int:
    from .report import write_report

    a = cfg.args
    D = _load_perms(cfg, a.perms)
    paths = write_report(D, Path(a.out))
    for p in paths:
        cfg.emit(str(p))
    return 0


def _write_output(cfg: RunConfig, out: str | None, text: str) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        cfg.emit(f"wrote {out}")
    else:
        cfg.emit(text.rstrip("\n"))


_COMMANDS = {
    "check": _cmd_check,
    "profile": _cmd_profile,
    "dist": _cmd_dist,
    "chartable": _cmd_chartable,
    "closure": _cmd_closure,
    "orbits": _cmd_orbits,
    "divisibility": _cmd_divisibility,
    "construct": _cmd_construct,
    "scheme": _cmd_scheme,
    "report": _cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for sampling commands (reserved)")
    common.add_argument("--max-n", type=int, default=scheme.DEFAULT_MATRIX_CAP,
                        help="cap on n for dense matrix commands")
    common.add_argument("--closure-cap", type=int, default=DEFAULT_CLOSURE_CAP,
                        help="cap on generated group size")
    common.add_argument("--oracle-budget", type=int, default=DEFAULT_ORACLE_BUDGET,
                        help="work budget for the oracle method")

    p = argparse.ArgumentParser(prog="lamtrans",
                                description="exact transitivity tests for sets of permutations")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", parents=[common], help="decide transitivity for one shape")
    sp.add_argument("--lambda", dest="lam", required=True, help="shape, e.g. 5,1,1")
    sp.add_argument("--perms", required=True, help="permutation set file")
    sp.add_argument("--method", choices=["oracle", "character", "orbit", "both"],
                    default="character")

    sp = sub.add_parser("profile", parents=[common],
                        help="dominance-minimal transitive shapes")
    sp.add_argument("--perms", required=True)
    sp.add_argument("--method", choices=["oracle", "character"], default="character")

    sp = sub.add_parser("dist", parents=[common], help="inner and dual distributions")
    sp.add_argument("--perms", required=True)

    sp = sub.add_parser("chartable", parents=[common], help="character table of S_n")
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("closure", parents=[common], help="subgroup generated by a file of permutations")
    sp.add_argument("--gens", required=True)
    sp.add_argument("--out", help="write the permutation set file here instead of stdout")

    sp = sub.add_parser("orbits", parents=[common], help="orbit count on tabloids of one shape")
    sp.add_argument("--gens", required=True)
    sp.add_argument("--lambda", dest="lam", required=True)

    sp = sub.add_parser("divisibility", parents=[common],
                        help="counting bound: can a set of this size be transitive?")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", required=True)

    sp = sub.add_parser("construct", parents=[common], help="build a transitive set")
    spc = sp.add_subparsers(dest="what", required=True)
    d = spc.add_parser("design", parents=[common], help="design product construction")
    d.add_argument("--design", required=True, help="design file")
    d.add_argument("--d1", required=True, help="sym:K, alt:K or file:PATH")
    d.add_argument("--d2", required=True, help="sym:K, alt:K or file:PATH")
    d.add_argument("--bij", help="bijection assignment file")
    d.add_argument("--out")
    g = spc.add_parser("agl-halved", parents=[common], help="halved affine maps on GF(q)")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--set", dest="half_set", help="comma-separated half-set labels")
    g.add_argument("--out")
    g = spc.add_parser("group", parents=[common], help="classical group action")
    g.add_argument("--kind", required=True, choices=list(constructions.GROUP_KINDS))
    g.add_argument("--q", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--out")

    sp = sub.add_parser("scheme", parents=[common], help="split basis and Krein parameters")
    sp.add_argument("--n", type=int, required=True)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--split-basis", action="store_true", default=False)
    mode.add_argument("--krein", action="store_true", default=False)
    mode.add_argument("--idempotents", action="store_true", default=False)

    sp = sub.add_parser("report", parents=[common],
                        help="CSV tables plus figures for one permutation set")
    sp.add_argument("--perms", required=True)
    sp.add_argument("--out", required=True, help="output directory")
    return p


def run(cfg: RunConfig) -> int:
    return _COMMANDS[cfg.command](cfg)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors; that slot is ours
        return 0 if exc.code == 0 else 1
    cfg = RunConfig(
        command=args.command,
        args=args,
        json_out=args.json,
        seed=args.seed,
        max_n=args.max_n,
        closure_cap=args.closure_cap,
        oracle_budget=args.oracle_budget,
    )
    try:
        code = run(cfg)
    except CapExceeded as exc:
        sys.stderr.write(f"budget exhausted: {exc}\n")
        return 2
    except (ParseError, OSError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 1
    for line in cfg.out:
        print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
