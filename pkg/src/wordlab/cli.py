"""``wordlab`` command line.

Exit status: 0 on success, 1 on a domain or capacity error (or a failed
``verify``), 2 on a usage error.  ``--json`` wraps results in an envelope
``{command, params, result, schema_version}``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import product
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .complexity import check_profile_theorems, complexity_sequence, special_subwords_by_length, valence_table
from .debruijn import build_graph, de_bruijn_word, is_de_bruijn
from .enumeration import (
    DEFAULT_BUDGET,
    CensusCache,
    census_table,
    conjecture_report,
    count_sequences,
    difference_table,
    to_csv,
)
from .errors import CapacityError, DomainError
from .sturmian import (
    SlopeIntercept,
    fibonacci_prefix,
    is_balanced,
    is_finite_sturmian,
    mechanical_word,
    peak_word,
    unbalanced_witness,
)
from .words import Word, read_words

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _envelope(command: str, params: dict, result) -> str:
    payload = {"command": command, "params": params, "result": result, "schema_version": SCHEMA_VERSION}
    return json.dumps(payload, sort_keys=True)


def _params(args: argparse.Namespace, *names: str) -> dict:
    return {name: getattr(args, name) for name in names}


def _word_arg(text: str, k: int | None) -> Word:
    w = Word.from_str(text, k)
    if len(w) == 0:
        raise DomainError("word must be nonempty")
    return w


def _profile_payload(w: Word) -> dict:
    prof = complexity_sequence(w)
    return {"word": str(w), "k": w.k, "sequence": list(prof.sequence), "R": prof.r_param, "K": prof.k_param}


# complexity ------------------------------------------------------------------


def cmd_complexity(args: argparse.Namespace) -> str:
    w = _word_arg(args.word, args.k)
    prof = complexity_sequence(w, engine=args.engine)
    if args.plot_csv:
        return to_csv(["n", "p"], [[n, p] for n, p in enumerate(prof.sequence, 1)])
    if args.csv:
        table = valence_table(w)
        header = ["n", "p"] + [f"s{i}" for i in range(w.k + 1)]
        rows = [[n, p] + [table.s(n, i) for i in range(w.k + 1)] for n, p in enumerate(prof.sequence, 1)]
        return to_csv(header, rows)
    special = special_subwords_by_length(w)
    if args.json:
        result = {
            "word": str(w),
            "k": w.k,
            "sequence": list(prof.sequence),
            "R": prof.r_param,
            "K": prof.k_param,
            "special_subwords_by_length": {str(n): [str(u) for u in us] for n, us in sorted(special.items())},
        }
        return _envelope("complexity", _params(args, "word", "k", "engine"), result)
    lines = [
        f"word: {w}",
        f"sequence: {' '.join(map(str, prof.sequence))}",
        f"R: {prof.r_param}",
        f"K: {prof.k_param}",
    ]
    for n, us in sorted(special.items()):
        lines.append(f"special {n}: {' '.join(str(u) for u in us)}")
    return "\n".join(lines) + "\n"


# debruijn --------------------------------------------------------------------


def cmd_debruijn(args: argparse.Namespace) -> str:
    if args.k is None or args.len is None:
        raise UsageError("debruijn: --k and --len are required")
    w = de_bruijn_word(args.k, args.len)
    if args.emit == "word":
        return f"{w}\n"
    prof = complexity_sequence(w)
    if args.emit == "profile":
        return " ".join(map(str, prof.sequence)) + "\n"
    result = {"word": str(w), "k": w.k, "length": len(w), "sequence": list(prof.sequence), "de_bruijn": is_de_bruijn(w)}
    return _envelope("debruijn", _params(args, "k", "len"), result)


def cmd_debruijn_graph(args: argparse.Namespace) -> str:
    g = build_graph(args.k, args.order)
    if args.json:
        result = {
            "k": g.k,
            "order": g.n,
            "vertices": [str(v) for v in g.vertices()],
            "edges": [[str(g.vertex(g.source(e))), str(g.vertex(g.target(e))), str(g.edge(e))] for e in range(g.num_edges)],
        }
        return _envelope("debruijn graph", _params(args, "k", "order"), result)
    return g.to_dot()


# sturmian --------------------------------------------------------------------


def _emit_word(command: str, params: dict, w: Word, as_json: bool) -> str:
    if as_json:
        return _envelope(command, params, _profile_payload(w))
    return f"{w}\n"


def cmd_sturmian_fib(args: argparse.Namespace) -> str:
    return _emit_word("sturmian fib", _params(args, "len"), fibonacci_prefix(args.len), args.json)


def cmd_sturmian_mech(args: argparse.Namespace) -> str:
    s = SlopeIntercept.parse(args.alpha, args.rho)
    w = mechanical_word(s, args.variant, args.len)
    return _emit_word("sturmian mech", _params(args, "alpha", "rho", "variant", "len"), w, args.json)


def cmd_sturmian_peak(args: argparse.Namespace) -> str:
    return _emit_word("sturmian peak", _params(args, "len"), peak_word(args.len), args.json)


def cmd_sturmian_check(args: argparse.Namespace) -> str:
    w = _word_arg(args.word, 2)
    prof = complexity_sequence(w)
    witness = unbalanced_witness(w)
    sturmian = is_finite_sturmian(w)
    result = {
        "word": str(w),
        "balanced": is_balanced(w),
        "finite_sturmian": sturmian,
        "unbalanced_witness": None if witness is None else str(witness),
        "R": prof.r_param,
        "K": prof.k_param,
        "length": len(w),
        "length_is_r_plus_k": len(w) == prof.r_param + prof.k_param,
        "sequence": list(prof.sequence),
    }
    if args.json:
        return _envelope("sturmian check", _params(args, "word"), result)
    yes = {True: "yes", False: "no"}
    lines = [
        f"word: {w}",
        f"balanced: {yes[result['balanced']]}",
        f"finite sturmian: {yes[sturmian]}",
    ]
    if witness is not None:
        lines.append(f"unbalanced witness: {witness or 'ε'} (0u0 and 1u1 both occur)")
    lines += [
        f"R: {prof.r_param}",
        f"K: {prof.k_param}",
        f"N = R + K: {yes[result['length_is_r_plus_k']]} ({len(w)} vs {prof.r_param + prof.k_param})",
    ]
    return "\n".join(lines) + "\n"


# census ----------------------------------------------------------------------


def _cache(args: argparse.Namespace) -> CensusCache:
    return CensusCache(budget=args.budget, jobs=args.jobs)


def _table_text(header: list[str], rows: list[list]) -> str:
    cells = [header] + [["-" if x is None else str(x) for x in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells) + "\n"


def cmd_census(args: argparse.Namespace) -> str:
    if args.k is None or args.n is None:
        raise UsageError("census: --k and --n are required")
    census = count_sequences(args.k, args.n, retain=args.list, jobs=args.jobs, budget=args.budget)
    out = _envelope("census", _params(args, "k", "n", "list"), census.to_json(include_sequences=args.list))
    if args.out:
        Path(args.out).write_text(out + "\n", encoding="utf-8")
    return out


def cmd_census_table(args: argparse.Namespace) -> str:
    table = census_table(args.kmax, args.nmax, _cache(args))
    header = ["n"] + [f"a_{k}" for k in range(2, args.kmax + 1)]
    rows = [[n] + [table[n][k] for k in range(2, args.kmax + 1)] for n in sorted(table)]
    if args.json:
        result = {"header": header, "rows": rows}
        return _envelope("census table", _params(args, "kmax", "nmax", "budget"), result)
    return to_csv(header, rows) if args.csv else _table_text(header, rows)


def cmd_census_diff(args: argparse.Namespace) -> str:
    table = difference_table(args.klo, args.khi, args.nmax, _cache(args))
    header = ["n"] + [f"a_{k + 1}-a_{k}" for k in table.ks]
    rows = [[n] + row for n, row in zip(table.ns, table.values)]
    if args.json:
        result = {"header": header, "rows": rows}
        return _envelope("census diff", _params(args, "klo", "khi", "nmax", "budget"), result)
    return to_csv(header, rows) if args.csv else _table_text(header, rows)


def cmd_census_conjectures(args: argparse.Namespace) -> str:
    report = conjecture_report(args.nmax, args.kmax, _cache(args), args.diff_nmax)
    if args.json:
        result = {
            "ratios": report.ratios,
            "shift_checks": report.shift_checks,
            "first_failure": {str(k): v for k, v in report.first_failure.items()},
            "holds_through": {str(k): v for k, v in report.holds_through.items()},
            "small_differences": report.observations,
        }
        return _envelope("census conjectures", _params(args, "kmax", "nmax", "diff_nmax", "budget"), result)
    shift = {(c["k"], c["n"]): c for c in report.shift_checks}
    header = ["k", "n", "a", "a_over_2^(n/2)", "a_over_log2k_2^(n/2)", "shift_lhs", "shift_rhs", "shift_holds"]
    rows = []
    for r in report.ratios:
        c = shift.get((r["k"], r["n"]))
        rows.append(
            [r["k"], r["n"], r["a"], f"{r['ratio']:.6f}", f"{r['log_ratio']:.6f}"]
            + ([c["lhs"], c["rhs"], int(c["holds"])] if c else [None, None, None])
        )
    return to_csv(header, rows)


# verify ----------------------------------------------------------------------


def _all_words(k: int, n: int) -> Iterator[Word]:
    for letters in product(range(k), repeat=n):
        yield Word._trusted(letters, k)


def _random_words(count: int, k: int, max_len: int, seed: int) -> Iterator[Word]:
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_len)
        yield Word._trusted(tuple(rng.randrange(k) for _ in range(n)), k)


def _verify_source(args: argparse.Namespace) -> Iterable[Word]:
    chosen = [x is not None for x in (args.file, args.all, args.random, args.fib, args.debruijn)]
    if sum(chosen) != 1:
        raise UsageError("verify: give exactly one of FILE, --all, --random, --fib, --debruijn")
    if args.file is not None:
        if args.file == "-":
            return list(read_words(sys.stdin, args.k))
        try:
            text = Path(args.file).read_text(encoding="utf-8")
        except OSError as exc:
            raise DomainError(f"cannot read {args.file}: {exc.strerror}") from None
        return list(read_words(text.splitlines(), args.k))
    if args.all is not None:
        k, n = args.all
        if k ** n > 10**7:
            raise CapacityError(f"{k}^{n} words is over the verify bound 10^7")
        return _all_words(k, n)
    if args.random is not None:
        return _random_words(args.random, args.k or 2, args.max_len, args.seed)
    if args.fib is not None:
        return [fibonacci_prefix(args.fib)]
    k, n = args.debruijn
    return [de_bruijn_word(k, n)]


def cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    checked = 0
    failures = []
    for w in _verify_source(args):
        if len(w) == 0:
            continue
        checked += 1
        report = check_profile_theorems(w)
        if not report.passed:
            failures.append((w, report))
    if args.json:
        result = {
            "checked": checked,
            "violations": [{"word": str(w), "failed": [c.name for c in r.failures]} for w, r in failures],
        }
        out = _envelope("verify", {}, result)
    else:
        lines = [f"checked {checked} words, {len(failures)} with violations"]
        for w, r in failures[:50]:
            lines.append(f"{w}: " + ", ".join(f"{c.name} ({c.detail})" if c.detail else c.name for c in r.failures))
        out = "\n".join(lines) + "\n"
    return out, 1 if failures else 0


# parser ----------------------------------------------------------------------


def _budget(text: str) -> int:
    try:
        value = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid budget {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("budget must be non-negative")
    return value


def _census_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--jobs", type=int, default=None, help="worker threads (default: $WORDLAB_JOBS or 1)")
    p.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET, help="max window operations per census")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wordlab", description="Subword complexity, de Bruijn and Sturmian words, census tables.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("complexity", help="complexity profile of a word")
    p.add_argument("word")
    p.add_argument("--k", type=int, default=None, help="alphabet size (default: from the letters)")
    p.add_argument("--engine", choices=("fast", "naive"), default="fast")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true", help="rows n,p,s0..sk")
    fmt.add_argument("--plot-csv", action="store_true", help="rows n,p")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("debruijn", help="de Bruijn word of any length")
    p.add_argument("--k", type=int)
    p.add_argument("--len", type=int)
    p.add_argument("--emit", choices=("word", "profile", "json"), default="word")
    p.set_defaults(func=cmd_debruijn)
    dsub = p.add_subparsers(dest="graph_command", parser_class=_Parser)
    g = dsub.add_parser("graph", help="the de Bruijn graph B_k(n)")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--order", type=int, required=True)
    gfmt = g.add_mutually_exclusive_group()
    gfmt.add_argument("--dot", action="store_true", help="DOT output (default)")
    gfmt.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_debruijn_graph)

    p = sub.add_parser("sturmian", help="Sturmian and balanced words")
    ssub = p.add_subparsers(dest="sturmian_command", parser_class=_Parser)
    ssub.required = True
    s = ssub.add_parser("fib", help="prefix of the Fibonacci word")
    s.add_argument("--len", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sturmian_fib)
    s = ssub.add_parser("mech", help="mechanical word with exact slope and intercept")
    s.add_argument("--alpha", required=True, help="P/Q or surd:a,b,c,d for (a+b*sqrt(d))/c")
    s.add_argument("--rho", required=True)
    s.add_argument("--variant", choices=("lower", "upper"), default="lower")
    s.add_argument("--len", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sturmian_mech)
    s = ssub.add_parser("check", help="balance, finite-Sturmian verdict, R and K")
    s.add_argument("word")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sturmian_check)
    s = ssub.add_parser("peak", help="binary word with the largest possible complexity peak")
    s.add_argument("--len", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sturmian_peak)

    p = sub.add_parser("census", help="count distinct complexity sequences a_k(n)")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--list", action="store_true", help="include the sequences")
    p.add_argument("--out", help="also write the JSON result to this file")
    _census_opts(p)
    p.set_defaults(func=cmd_census)
    csub = p.add_subparsers(dest="census_command", parser_class=_Parser)
    c = csub.add_parser("table", help="a_k(n) for 2 <= k <= kmax, 1 <= n <= nmax")
    c.add_argument("--kmax", type=int, default=8)
    c.add_argument("--nmax", type=int, default=12)
    cfmt = c.add_mutually_exclusive_group()
    cfmt.add_argument("--csv", action="store_true")
    cfmt.add_argument("--json", action="store_true")
    _census_opts(c)
    c.set_defaults(func=cmd_census_table)
    c = csub.add_parser("diff", help="a_(k+1)(n) - a_k(n)")
    c.add_argument("--klo", type=int, default=2)
    c.add_argument("--khi", type=int, default=6)
    c.add_argument("--nmax", type=int, default=12)
    cfmt = c.add_mutually_exclusive_group()
    cfmt.add_argument("--csv", action="store_true")
    cfmt.add_argument("--json", action="store_true")
    _census_opts(c)
    c.set_defaults(func=cmd_census_diff)
    c = csub.add_parser("conjectures", help="growth ratios and the shifted-difference identity (CSV)")
    c.add_argument("--kmax", type=int, default=4)
    c.add_argument("--nmax", type=int, default=14)
    c.add_argument("--diff-nmax", type=int, default=10, help="last n for the near k = n differences")
    c.add_argument("--json", action="store_true")
    _census_opts(c)
    c.set_defaults(func=cmd_census_conjectures)

    p = sub.add_parser("verify", help="run the profile theorem checks over words")
    p.add_argument("file", nargs="?", help="word file, one per line ('-' for stdin)")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--all", nargs=2, type=int, metavar=("K", "N"), help="every word of length N on K letters")
    p.add_argument("--random", type=int, metavar="COUNT", help="random words")
    p.add_argument("--max-len", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fib", type=int, metavar="LEN", help="a Fibonacci prefix")
    p.add_argument("--debruijn", nargs=2, type=int, metavar=("K", "N"), help="a de Bruijn word")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        out = args.func(args)
    except UsageError as exc:
        print(exc, file=stderr)
        return 2
    except (DomainError, CapacityError) as exc:
        print(f"wordlab: error: {exc}", file=stderr)
        return 1
    code = 0
    if isinstance(out, tuple):
        out, code = out
    stdout.write(out if out.endswith("\n") else out + "\n")
    return code


def main() -> None:
    sys.exit(run())
