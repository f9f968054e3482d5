"""Command-line front end: ``latspec <command> ...``.

Exit status: 0 when nothing failed, 1 when a check failed, 2 for usage,
schema or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks as chk
from . import topology as top
from .corpus import FAMILIES, generate, run_corpus, write_corpus
from .documents import analysis_report, any_failed, canonical, lattice_stats, load_text, parse_selector, resolve
from .errors import LatspecError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    src = load_text(read_input(args.file))
    emit(canonical({"valid": True, "kind": src.kind, "lattice": lattice_stats(src.lattice)}), args.out)
    return EXIT_OK


def cmd_gen(args) -> int:
    emit(canonical(generate(args.family, args.params)), args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    src = load_text(read_input(args.file))
    report, results = analysis_report(
        src, parse_selector(args.x), args.dual, args.seed, timings=args.timings
    )
    emit(canonical(report), args.out)
    return EXIT_FAIL if any_failed(results) else EXIT_OK


def cmd_check(args) -> int:
    src = load_text(read_input(args.file))
    ctx = resolve(src, parse_selector(args.x), args.dual)
    only = [s.strip() for s in args.only.split(",") if s.strip()] if args.only else None
    results = chk.run_all(ctx, args.seed, only)
    emit(canonical([r.to_json(timings=not args.no_timings) for r in results]), args.out)
    return EXIT_FAIL if any_failed(results) else EXIT_OK


def cmd_export_dot(args) -> int:
    src = load_text(read_input(args.file))
    if args.specialization:
        ctx = resolve(src, parse_selector(args.x), args.dual)
        T = ctx.tau_fp if args.topology == "finer_patch" else ctx.tau_cl
        emit(top.to_dot(T), args.out)
    else:
        emit(src.lattice.to_dot(), args.out)
    return EXIT_OK


def cmd_corpus_run(args) -> int:
    if not Path(args.dir).is_dir():
        print(f"error: corpus directory {args.dir!r} does not exist", file=sys.stderr)
        return EXIT_USAGE
    report = run_corpus(args.dir, args.jobs, args.seed)
    emit(canonical(report), args.out)
    return EXIT_FAIL if report["summary"]["totals"][chk.FAIL] else EXIT_OK


def cmd_corpus_init(args) -> int:
    names = write_corpus(args.dir)
    emit(canonical({"written": names}), None)
    return EXIT_OK


def cmd_list_checks(args) -> int:
    emit(canonical({cid: summary for cid, (_, summary) in chk.REGISTRY.items()}), None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latspec", description="Zariski-like topologies on finite lattices.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_out(sp):
        sp.add_argument("--out", help="write to this file instead of stdout")
        return sp

    def with_x(sp, required=True):
        sp.add_argument("--x", required=required, default="max",
                        help="selector (max, min, si, sh, spec_p, spec_c, spec_s, spec_f, normal, center, "
                             "finite_center) or comma-separated / JSON list of element labels")
        sp.add_argument("--dual", action="store_true", help="read the selector on the dual lattice")
        sp.add_argument("--seed", type=int, default=0)
        return sp

    sp = with_out(sub.add_parser("validate", help="validate a document"))
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = with_out(sub.add_parser("gen", help="generate a document for a built-in family"))
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("params", nargs="*")
    sp.set_defaults(func=cmd_gen)

    sp = with_x(with_out(sub.add_parser("analyze", help="full analysis report")))
    sp.add_argument("file")
    sp.add_argument("--timings", action="store_true", help="include per-check timings")
    sp.set_defaults(func=cmd_analyze)

    sp = with_x(with_out(sub.add_parser("check", help="run theorem checks")))
    sp.add_argument("file")
    sp.add_argument("--only", help="comma-separated check ids")
    sp.add_argument("--no-timings", action="store_true")
    sp.set_defaults(func=cmd_check)

    sp = with_x(with_out(sub.add_parser("export-dot", help="DOT Hasse diagram or specialization order")),
                required=False)
    sp.add_argument("file")
    sp.add_argument("--specialization", action="store_true")
    sp.add_argument("--topology", choices=("classical", "finer_patch"), default="classical")
    sp.set_defaults(func=cmd_export_dot)

    sp = sub.add_parser("list-checks", help="list registered checks")
    sp.set_defaults(func=cmd_list_checks)

    corpus = sub.add_parser("corpus", help="corpus operations")
    csub = corpus.add_subparsers(dest="corpus_command", required=True)
    sp = with_out(csub.add_parser("run", help="run every check on every corpus file"))
    sp.add_argument("dir")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_corpus_run)
    sp = csub.add_parser("init", help="write the standard corpus")
    sp.add_argument("dir")
    sp.set_defaults(func=cmd_corpus_init)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except LatspecError as exc:
        print(json.dumps(exc.to_dict(), sort_keys=True, default=str), file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(json.dumps({"error": "io_error", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
