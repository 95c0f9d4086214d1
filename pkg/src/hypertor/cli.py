"""Command-line entry point: run scripts, evaluate one-liners, check the corpus."""

import argparse
import json
import random
import sys

from . import __version__
from .corpus import corpus_run
from .errors import HypertorError
from .field import field_from_spec
from .poly import ParseError
from .runner import Session, format_text

EXIT_OK, EXIT_ENGINE, EXIT_SYNTAX, EXIT_MISMATCH = 0, 1, 2, 3


def _global_options(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true", default=default or False,
                        help="emit JSON documents instead of text")
    parser.add_argument("--field", default=default or "F(32003)",
                        help="coefficient field for rings declared without one (Q or F(p))")
    parser.add_argument("--order", default=default or "grevlex", choices=["grevlex", "lex"],
                        help="monomial order for declared rings")
    parser.add_argument("--max-steps", type=int, default=default,
                        help="resolution window for resolve/mf/periodicity")
    parser.add_argument("--seed", type=int, default=default,
                        help="seed for anything randomized (corpus execution order)")


def build_parser():
    p = argparse.ArgumentParser(prog="hypertor", description=__doc__)
    p.add_argument("--version", action="version", version=f"hypertor {__version__}")
    _global_options(p, suppress=False)
    sub = p.add_subparsers(dest="cmd", required=True)
    run = sub.add_parser("run", help="run a .hsl script")
    run.add_argument("file")
    ev = sub.add_parser("eval", help="run a script given on the command line")
    ev.add_argument("source")
    cor = sub.add_parser("corpus", help="run the bundled regression corpus")
    cor.add_argument("--tag", default=None)
    for sp in (run, ev, cor):
        _global_options(sp, suppress=True)
    return p


def _field_name(spec):
    return repr(field_from_spec(spec))


def _run_source(text, args, out):
    session = Session(_field_name(args.field), args.order, args.max_steps)
    try:
        script = session.parse(text)
    except ParseError as err:
        print(f"syntax error: {err}", file=sys.stderr)
        return EXIT_SYNTAX
    docs = session.run(script, record_errors=True)
    for d in docs:
        print(d.to_json() if args.json else format_text(d), file=out)
    return EXIT_ENGINE if any(d.failed for d in docs) else EXIT_OK


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.seed is not None:
        random.seed(args.seed)
    try:
        if args.cmd == "run":
            with open(args.file, encoding="utf-8") as fh:
                return _run_source(fh.read(), args, out)
        if args.cmd == "eval":
            return _run_source(args.source, args, out)
        summary = corpus_run(
            args.tag,
            seed=args.seed,
            default_field=_field_name(args.field),
            default_order=args.order,
            max_steps=args.max_steps,
        )
        if args.json:
            print(json.dumps(summary.to_dict(), indent=2, sort_keys=True), file=out)
        else:
            for r in summary.results:
                print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}", file=out)
                for d in r.diffs:
                    print(f"      {d}", file=out)
            print(f"{summary.passed} passed, {summary.failed} failed", file=out)
        return EXIT_OK if summary.ok else EXIT_MISMATCH
    except (HypertorError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ENGINE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
