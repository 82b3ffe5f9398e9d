"""Command-line entry point.

Exit status: 0 definitive positive (packed, constructed, certified, condition
holds), 1 definitive negative, 2 unknown or budget exhausted, 64 usage
error, 65 malformed input or parameter mismatch.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import conditions, designs, extremal, solver
from .hypergraph import Bijection, HypergraphError, conflicts
from .io import FormatError, format_hypergraph, parse_hypergraph, read_hypergraph

EXIT_OK, EXIT_NEGATIVE, EXIT_UNKNOWN, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class Report:
    """Collects text lines and a parallel structured document."""

    def __init__(self, command: str):
        self.lines: list[str] = []
        self.doc: dict = {"command": command}

    def line(self, text: str):
        self.lines.append(text)

    def emit(self, fmt: str, out):
        if fmt == "structured":
            out.write(json.dumps(self.doc, indent=2, sort_keys=True) + "\n")
        else:
            for line in self.lines:
                out.write(line + "\n")


def _pair(args):
    h1 = read_hypergraph(args.h1)
    h2 = read_hypergraph(args.h2)
    if (h1.n, h1.k) != (h2.n, h2.k):
        raise HypergraphError(
            f"parameter mismatch: {args.h1} has (n={h1.n}, k={h1.k}), {args.h2} has (n={h2.n}, k={h2.k})"
        )
    return h1, h2


def cmd_check(args, rep: Report) -> int:
    h1, h2 = _pair(args)
    reports = conditions.check_all(h1, h2)
    for r in reports:
        rep.line(r.to_line())
    rep.doc["reports"] = [r.to_dict() for r in reports]
    rep.doc["n"], rep.doc["k"] = h1.n, h1.k
    return EXIT_OK if any(r.guarantees_packing for r in reports) else EXIT_NEGATIVE


def _permutation_lines(f: Bijection) -> list[str]:
    return [f"{v} -> {f(v)}" for v in range(1, f.n + 1)]


def cmd_pack(args, rep: Report) -> int:
    h1, h2 = _pair(args)
    if args.brute:
        res = solver.brute_force_pack(h1, h2, node_budget=args.budget)
        method = "brute-force"
    elif args.beta is not None:
        res = solver.switching_pack(h1, h2, args.beta, seed=args.seed, max_restarts=args.restarts)
        method = f"switching beta={args.beta}"
    else:
        res = solver.switching_pack_auto(h1, h2, seed=args.seed, max_restarts=args.restarts)
        method = "switching auto"
    st = res.stats
    rep.line(f"outcome={res.outcome.value} method={method}")
    rep.line(f"examined={st.examined} switches={st.switches} restarts={st.restarts}")
    rep.doc.update(outcome=res.outcome.value, method=method, stats={
        "examined": st.examined, "switches": st.switches, "restarts": st.restarts,
        "initial_conflicts": st.initial_conflicts,
    })
    if args.trace and not args.quiet:
        for s in res.trace:
            rep.line(
                f"switch beta={s.beta} u={','.join(map(str, s.u_set))} v={','.join(map(str, s.v_set))} "
                f"conflicts={s.conflicts_before}->{s.conflicts_after} restart={s.restart}"
            )
        rep.doc["trace"] = [
            {"beta": s.beta, "u": list(s.u_set), "v": list(s.v_set), "before": s.conflicts_before,
             "after": s.conflicts_after, "restart": s.restart}
            for s in res.trace
        ]
    if res.bijection is not None:
        rep.lines.extend(_permutation_lines(res.bijection))
        rep.doc["bijection"] = list(res.bijection.images)
    return {solver.Outcome.PACKED: EXIT_OK, solver.Outcome.NO_PACKING: EXIT_NEGATIVE}.get(
        res.outcome, EXIT_UNKNOWN)


_MAP_LINE = re.compile(r"\s*(\d+)\s*->\s*(\d+)\s*")


def parse_permutation(text: str, n: int, source: str = "") -> Bijection:
    """Read ``v -> f(v)`` lines, as printed by ``pack``; other lines are ignored."""
    mapping = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        m = _MAP_LINE.fullmatch(raw)
        if not m:
            continue
        v = int(m.group(1))
        if v in mapping:
            raise FormatError(f"vertex {v} mapped twice", lineno, source)
        mapping[v] = int(m.group(2))
    if sorted(mapping) != list(range(1, n + 1)):
        raise FormatError(f"permutation must map each of 1..{n}", None, source)
    try:
        return Bijection.from_mapping(mapping, n)
    except HypergraphError as exc:
        raise FormatError(str(exc), None, source) from None


def cmd_verify(args, rep: Report) -> int:
    h1, h2 = _pair(args)
    f = parse_permutation(Path(args.bijection).read_text(), h1.n, args.bijection)
    bad = conflicts(h1, h2, f)
    rep.line(f"packing={str(not bad).lower()} conflicts={len(bad)}")
    for c in bad:
        rep.line("conflict " + " ".join(map(str, c)))
    rep.doc.update(packing=not bad, conflicts=[list(c) for c in bad])
    return EXIT_OK if not bad else EXIT_NEGATIVE


def _design_comment(spec: designs.DesignSpec) -> str:
    return f"design t={spec.t} lambda={spec.lam}"


def cmd_design(args, rep: Report) -> int:
    spec = designs.DesignSpec(args.t, args.n, args.k, args.lam)
    div = designs.divisibility_check(spec)
    rep.doc["spec"] = {"t": spec.t, "n": spec.n, "k": spec.k, "lambda": spec.lam}
    rep.doc["divisibility"] = [
        {"i": d.i, "divisor": d.divisor, "dividend": d.dividend, "ok": d.ok} for d in div.terms
    ]
    for d in div.terms:
        rep.line(f"divisibility i={d.i} {d.divisor} | {d.dividend} {'ok' if d.ok else 'fails'}")

    if args.verify:
        text = Path(args.verify).read_text()
        h, _ = parse_hypergraph(text, source=args.verify)
        if (h.n, h.k) != (spec.n, spec.k):
            raise HypergraphError(f"{args.verify} has (n={h.n}, k={h.k}), expected (n={spec.n}, k={spec.k})")
        check = designs.verify_design(designs.Design(spec, h.edges))
        rep.line(f"verified={str(check.ok).lower()} blocks={h.size}")
        rep.doc.update(verified=check.ok, blocks=h.size)
        if not check:
            rep.line(f"violation {' '.join(map(str, check.subset))} coverage={check.coverage}")
            rep.doc["violation"] = {"subset": list(check.subset), "coverage": check.coverage}
        return EXIT_OK if check else EXIT_NEGATIVE

    try:
        d = designs.construct_design(spec, budget=args.budget)
    except designs.DesignNotFound as exc:
        rep.line(f"result=not-found reason={exc.reason!r} exhausted={str(exc.exhausted).lower()}")
        rep.doc.update(result="not-found", reason=exc.reason, exhausted=exc.exhausted)
        return EXIT_NEGATIVE
    except designs.BudgetExceeded as exc:
        rep.line(f"result=budget-exceeded nodes={exc.nodes}")
        rep.doc.update(result="budget-exceeded", nodes=exc.nodes)
        return EXIT_UNKNOWN
    h = designs.design_to_hypergraph(d)
    text = format_hypergraph(h, [_design_comment(spec)])
    rep.doc.update(result="constructed", blocks=[list(b) for b in d.sorted_blocks()])
    rep.line(f"result=constructed blocks={len(d.blocks)}")
    if args.out:
        Path(args.out).write_text(text)
        rep.doc["out"] = args.out
    elif not args.quiet:
        rep.lines.extend(text.rstrip("\n").split("\n"))
    return EXIT_OK


def cmd_extremal(args, rep: Report) -> int:
    n, k = args.n, args.k
    if k % 2 == 0:
        if args.odd_t is not None:
            raise UsageError("--odd-t applies to odd k only")
        p = (extremal.build_even_pair_padded(n, k, args.pad, budget=args.budget) if args.pad
             else extremal.build_even_pair(n, k, budget=args.budget))
    else:
        if args.pad:
            raise UsageError("--pad applies to even k only")
        p = extremal.build_odd_pair(n, k, t=args.odd_t, budget=args.budget)
    cert = extremal.verify_nonpacking(p)
    prefix = args.out_prefix
    params = f"kind={p.kind.value} n={n} k={k}"
    if p.alpha is not None:
        params += f" alpha={p.alpha} kernels={len(p.kernels)} isolated={p.isolated}"
    if p.t is not None:
        params += f" t={p.t} clique={p.clique_size}"
    Path(f"{prefix}.h1.hyp").write_text(format_hypergraph(p.h1, [f"extremal H1 {params}"]))
    Path(f"{prefix}.h2.hyp").write_text(format_hypergraph(p.h2, [f"extremal H2 {params}"]))
    cert_text = f"c {params}\ntotal={p.claimed_total} h1={p.h1.size} h2={p.h2.size}\n" + cert.to_text()
    Path(f"{prefix}.cert.txt").write_text(cert_text)

    rep.line(params)
    rep.line(f"h1={p.h1.size} h2={p.h2.size} total={p.claimed_total}")
    rep.line(f"certified={str(cert.ok).lower()}")
    if cert.failure:
        rep.line(f"failure: {cert.failure}")
    rep.line(f"wrote {prefix}.h1.hyp {prefix}.h2.hyp {prefix}.cert.txt")
    rep.doc.update(
        kind=p.kind.value, n=n, k=k, h1=p.h1.size, h2=p.h2.size, total=p.claimed_total,
        certified=cert.ok, verified=list(cert.verified), failure=cert.failure or None,
        files=[f"{prefix}.h1.hyp", f"{prefix}.h2.hyp", f"{prefix}.cert.txt"],
    )
    return EXIT_OK if cert.ok else EXIT_NEGATIVE


def cmd_bounds(args, rep: Report) -> int:
    n, k = args.n, args.k
    if not 1 <= k <= n:
        raise UsageError(f"need 1 <= k <= n, got n={n}, k={k}")
    thr = conditions.packing_threshold(n, k)
    rep.line(f"packing_threshold={thr}")
    rep.line(f"lower_bound={thr + 1}")
    rep.doc.update(n=n, k=k, packing_threshold=thr, lower_bound=thr + 1)
    if k == 2:
        m = conditions.m_graph(n)
        rep.line(f"m({n},2)={m}")
        rep.doc["m_exact"] = m
    upper = None
    if k % 2 == 0:
        if extremal.even_divisibility(n, k):
            upper = extremal.even_bound(n, k)
    elif k >= 3:
        t = extremal.default_t(n, k)
        if t >= 1 and n % t == 0 and (k - 2) * t + 1 <= n and n // t >= k and designs.divisibility_check(
                designs.DesignSpec(k - 1, n // t, k, 1)):
            upper = sum(extremal.odd_sizes(n, k, t))
            rep.doc["t"] = t
        exp = extremal.odd_exponent(k)
        rep.line(f"odd_exponent={exp.numerator}/{exp.denominator}")
        rep.doc["odd_exponent"] = str(exp)
    if upper is not None:
        rep.line(f"upper_bound={upper}")
    else:
        rep.line("upper_bound=unavailable (divisibility conditions fail)")
    rep.doc["upper_bound"] = upper
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperpack", description="Packing of k-uniform hypergraphs.")
    p.add_argument("--format", choices=["text", "structured"], default="text")
    p.add_argument("--quiet", action="store_true", help="suppress traces and block listings")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="evaluate the sufficient packing conditions")
    c.add_argument("h1")
    c.add_argument("h2")
    c.set_defaults(func=cmd_check)

    pk = sub.add_parser("pack", help="search for a packing")
    pk.add_argument("h1")
    pk.add_argument("h2")
    mode = pk.add_mutually_exclusive_group()
    mode.add_argument("--beta", type=int)
    mode.add_argument("--auto", action="store_true")
    mode.add_argument("--brute", action="store_true")
    pk.add_argument("--seed", type=int, default=0)
    pk.add_argument("--budget", type=int, default=solver.DEFAULT_NODE_BUDGET)
    pk.add_argument("--restarts", type=int, default=solver.MAX_RESTARTS)
    pk.add_argument("--trace", action="store_true")
    pk.set_defaults(func=cmd_pack)

    v = sub.add_parser("verify", help="check that a permutation file is a packing")
    v.add_argument("h1")
    v.add_argument("h2")
    v.add_argument("bijection")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("design", help="construct or verify a t-(n,k,lambda) design")
    d.add_argument("--t", type=int, required=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--lambda", dest="lam", type=int, default=1)
    d.add_argument("--budget", type=int, default=designs.DEFAULT_BUDGET)
    d.add_argument("--verify", metavar="FILE")
    d.add_argument("--out", metavar="FILE")
    d.set_defaults(func=cmd_design)

    e = sub.add_parser("extremal", help="build and certify a non-packing pair")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--odd-t", type=int)
    e.add_argument("--pad", type=int, default=0)
    e.add_argument("--budget", type=int, default=designs.DEFAULT_BUDGET)
    e.add_argument("--out-prefix", required=True)
    e.set_defaults(func=cmd_extremal)

    b = sub.add_parser("bounds", help="report bounds on m(n,k)")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    rep = Report(args.command)
    try:
        status = args.func(args, rep)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except FormatError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DATA
    except designs.BudgetExceeded as exc:
        err.write(f"error: search budget exhausted after {exc.nodes} nodes\n")
        return EXIT_UNKNOWN
    except designs.DesignNotFound as exc:
        err.write(f"error: {exc}\n")
        return EXIT_NEGATIVE
    except (HypergraphError, designs.DesignError, extremal.ExtremalError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DATA
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    rep.doc["exit_status"] = status
    rep.emit(args.format, out)
    return status


if __name__ == "__main__":
    sys.exit(main())
