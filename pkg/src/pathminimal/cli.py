"""Command-line frontend.

Exit codes: 0 all checks pass, 1 some check fails, 2 some check inconclusive
(and none fails), 64 usage error, 65 malformed window or graph file.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import verify
from .constructions import WindowSpecError, read_window_spec
from .graphs import EmbeddingSearch, LabelledGraph, count_embeddings
from .words import WordSpecError, factor_set, parse_word_spec, recurrence_bound

EPILOG = """exit codes:
  0   every check passed
  1   at least one check failed
  2   at least one check inconclusive, none failed
  64  usage error (bad flags, unknown claim, invalid word spec)
  65  malformed window spec or graph file
"""


class UsageError(Exception):
    pass


class SpecError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(verify.EXIT_USAGE, f"{self.prog}: error: {message}\n")


# flag -> parameter name, per check
_PARAM_MAP = {
    "gk-diameter": {"k": "k", "rows": "rows", "cols": "cols"},
    "gk-locality": {"k": "k", "rows": "rows", "cols": "cols", "length": "length"},
    "longenough": {"word": "u", "star": "star", "rows": "rows", "cols": "cols"},
    "two-row-bounds": {"word": "u", "star": "star", "rows": "rows", "cols": "cols"},
    "gk-incomparability": {"k": "k1", "k2": "k2", "rows": "rows", "cols": "cols"},
    "age-incomparability": {"word": "u1", "word2": "u2", "star": "star",
                            "max_pattern": "max_pattern", "rows": "rows", "cols": "cols"},
    "primality": {"rows": "rows", "word": "word"},
    "wqo-evidence": {"word": "u", "star": "star", "max_size": "max_size", "rows": "rows", "cols": "cols"},
    "experimental-stars": {"word": "u", "rows": "rows", "cols": "cols"},
}


def _emit(obj, as_json: bool, text: str) -> None:
    print(json.dumps(obj, sort_keys=True) if as_json else text)


def cmd_word(args) -> int:
    try:
        u = parse_word_spec(args.spec, args.len, extend=args.extend)
    except WordSpecError as exc:
        raise UsageError(str(exc)) from None
    out = {"spec": args.spec, "prefix": str(u)}
    lines = [str(u)]
    if args.factors:
        counts = factor_set(u, args.factors).counts()
        out["factor_counts"] = counts
        lines.append("factors: " + " ".join(f"{n}:{c}" for n, c in enumerate(counts, 1)))
    if args.recurrence:
        table = {}
        for n in range(1, args.recurrence + 1):
            try:
                table[n] = recurrence_bound(u, n)
            except ValueError:
                table[n] = None
        out["recurrence"] = table
        lines.append("recurrence:")
        lines += [f"  n={n}: {'n/a' if m is None else m}" for n, m in table.items()]
    _emit(out, args.json, "\n".join(lines))
    return 0


def _read_json_arg(text: str):
    if text == "-":
        return json.load(sys.stdin)
    p = Path(text)
    if p.exists():
        return json.loads(p.read_text())
    return json.loads(text)


def cmd_build(args) -> int:
    try:
        w = read_window_spec(_read_json_arg(args.spec))
    except (WindowSpecError, WordSpecError, json.JSONDecodeError, OSError) as exc:
        raise SpecError(str(exc)) from None
    g = w.graph
    if args.json:
        Path(args.json).write_text(g.to_json())
    if args.dot:
        Path(args.dot).write_text(g.to_dot())
    sizes = [hi - lo for lo, hi in w.row_intervals]
    _emit({"vertices": g.n, "edges": g.edge_count(), "row_sizes": sizes}, args.print_json,
          f"vertices: {g.n}\nedges: {g.edge_count()}\nrow sizes: {' '.join(map(str, sizes))}")
    return 0


def _claim_params(claim: str, args) -> dict:
    base = next((dict(p) for cid, p in verify.PRESETS["desk"] if cid == claim), {})
    for flag, name in _PARAM_MAP[claim].items():
        val = getattr(args, flag, None)
        if val is not None:
            base[name] = val
    return base


def _write_reports(reports, args) -> None:
    if args.output_dir:
        out = Path(args.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "reports.jsonl", "w") as fh:
            for r in reports:
                fh.write(r.to_json() + "\n")
        config = {"command": "verify", "claim": args.claim, "preset": args.preset,
                  "params": {k: v for k, v in vars(args).items() if k not in ("func",)},
                  "seed": args.seed}
        (out / "run_config.json").write_text(json.dumps(config, sort_keys=True, indent=1) + "\n")
    if args.jsonl:
        for r in reports:
            print(r.to_json())
    else:
        for r in reports:
            print(r.summary_line())
        counts = {}
        for r in reports:
            counts[r.verdict] = counts.get(r.verdict, 0) + 1
        print("; ".join(f"{v}: {n}" for v, n in sorted(counts.items())))


def cmd_verify(args) -> int:
    try:
        if args.claim == "all":
            reports = verify.run_preset(args.preset, seed=args.seed, jobs=args.jobs)
        elif args.claim in verify.CLAIMS:
            reports = verify.run_claim(args.claim, _claim_params(args.claim, args), seed=args.seed)
        else:
            raise UsageError(f"unknown claim {args.claim!r}; known: all, {', '.join(verify.CLAIMS)}")
    except (WordSpecError, WindowSpecError, ValueError, KeyError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(str(exc)) from None
    _write_reports(reports, args)
    return verify.exit_code(reports)


def _load_graph(path: str) -> LabelledGraph:
    try:
        return LabelledGraph.from_dict(_read_json_arg(path))
    except (KeyError, TypeError, ValueError, OSError) as exc:
        raise SpecError(f"{path}: {exc}") from None


def cmd_embed(args) -> int:
    pattern, host = _load_graph(args.pattern), _load_graph(args.host)
    search = EmbeddingSearch(pattern, host, respect_labels=args.labels)
    emb = search.first()
    out = {"found": emb is not None, "embedding": list(emb.map) if emb else None, "nodes": search.nodes}
    if args.count:
        out["count"] = count_embeddings(pattern, host, respect_labels=args.labels)
    text = "absent" if emb is None else "embedding: " + " ".join(
        f"{a}->{b}" for a, b in enumerate(emb.map))
    if args.count:
        text += f"\ncount: {out['count']}"
    _emit(out, args.json, text)
    return 0


def cmd_report(args) -> int:
    reports = []
    for name in args.files:
        try:
            for line in Path(name).read_text().splitlines():
                if line.strip():
                    reports.append(verify.ClaimReport.from_dict(json.loads(line)))
        except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
            raise SpecError(f"{name}: {exc}") from None
    reports.sort(key=lambda r: r.claim_id)
    if args.output:
        Path(args.output).write_text("".join(r.to_json() + "\n" for r in reports))
    for r in reports:
        print(r.summary_line())
    return verify.exit_code(reports)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pathminimal", description=__doc__.splitlines()[0], epilog=EPILOG,
                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seed", type=int, default=0, help="recorded in every report")
    ap.add_argument("--jobs", type=int, default=1, help="parallel checks for 'verify all'")
    ap.add_argument("--output-dir", help="write reports.jsonl and run_config.json here")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("word", help="print a word prefix, factor counts, recurrence")
    p.add_argument("spec", help="periodic:k=K | sturmian:cf=a,b,...[,...] | explicit:0110")
    p.add_argument("--len", type=int)
    p.add_argument("--factors", type=int, metavar="N", help="factor counts for lengths 1..N")
    p.add_argument("--recurrence", type=int, metavar="n", help="recurrence bounds for lengths 1..n")
    p.add_argument("--extend", action="store_true", help="repeat the last partial quotient as needed")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("build", help="build a window from a JSON spec (file, inline or -)")
    p.add_argument("spec")
    p.add_argument("--dot", metavar="PATH")
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--print-json", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run a named check or a preset",
                       epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("claim", help="all, " + ", ".join(verify.CLAIMS))
    p.add_argument("--preset", default="desk", choices=sorted(verify.PRESETS))
    p.add_argument("--k", type=int)
    p.add_argument("--k2", type=int)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--length", type=int)
    p.add_argument("--word")
    p.add_argument("--word2")
    p.add_argument("--star")
    p.add_argument("--max-pattern", type=int)
    p.add_argument("--max-size", type=int)
    p.add_argument("--jsonl", action="store_true", help="print reports as JSON lines")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    p.add_argument("--output-dir", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("embed", help="search an induced embedding of a pattern graph in a host graph")
    p.add_argument("pattern")
    p.add_argument("host")
    p.add_argument("--labels", action="store_true", help="require matching vertex labels")
    p.add_argument("--count", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("report", help="merge report files and summarize")
    p.add_argument("files", nargs="+")
    p.add_argument("--output", help="merged JSONL file")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pathminimal: error: {exc}", file=sys.stderr)
        return verify.EXIT_USAGE
    except SpecError as exc:
        print(f"pathminimal: spec error: {exc}", file=sys.stderr)
        return verify.EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
