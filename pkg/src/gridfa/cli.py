"""Command-line front end: ``gridfa validate|run|trace|construct|check|enum|fixtures``.

Payloads (machines, words, verdicts) go to stdout; diagnostics go to stderr.
Exit status is 0 for accept/equal/ok, 1 for reject/counterexample/violations
and 2 for I/O, parse or precondition errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from . import constructions as C
from .fixtures import FIXTURES, PREDICATES, build_fixture
from .grid import WordError, parse_word
from .machines import Machine, MachineFormatError, format_machine, load_machine, parse_machine, save_machine, validate
from .oracle import BudgetExceeded, Bounds, equivalence, expected_sample, language_sample
from .simulate import AlphabetMismatch, run, trace


class UsageError(Exception):
    pass


def load_spec_machine(ref: str) -> Machine:
    """A machine file path, or the name of a built-in fixture."""
    if os.path.exists(ref):
        return load_machine(ref)
    if ref in FIXTURES:
        return build_fixture(ref)
    raise UsageError(f"no such machine file or fixture: {ref}")


def load_word(path: str, alphabet=None):
    with open(path, encoding="ascii") as fh:
        return parse_word(fh.read(), alphabet)


OPS = ("banf", "union", "complement", "rowcat", "reverse", "to-rfa", "to-tfa")
BINARY_OPS = {"union", "rowcat"}


def construct(op: str, a: Machine, b: Machine | None = None) -> Machine:
    if (op in BINARY_OPS) != (b is not None):
        raise UsageError(f"--op {op} takes {'two machines' if op in BINARY_OPS else 'one machine'}")
    if op == "banf":
        return C.to_bottom_accepting(a).machine
    if op == "union":
        return C.union_tfa(a, b)
    if op == "complement":
        return C.complement_tdfa(a)
    if op == "rowcat":
        return C.row_concat_tfa(a, b)
    if op == "reverse":
        return C.reverse_tfa(a)
    if op == "to-rfa":
        return C.tfa_to_rfa(a)
    if op == "to-tfa":
        return C.rfa_to_tfa(a)
    raise UsageError(f"unknown operation {op!r}")


_EXPECT_OPS = {"union": "union", "complement": "complement", "rowcat": "row_concat",
               "row_concat": "row_concat", "reverse": "reversal", "reversal": "reversal"}


def resolve_language(spec: str, bounds: Bounds):
    """Turn a check operand into something :func:`equivalence` accepts."""
    if spec.startswith("pred:"):
        name = spec[5:]
        if name not in PREDICATES:
            raise UsageError(f"unknown predicate {name!r}")
        return PREDICATES[name]
    if spec.startswith("expect:"):
        _, op, files = spec.split(":", 2)
        if op not in _EXPECT_OPS:
            raise UsageError(f"unknown expected-sample operation {op!r}")
        op = _EXPECT_OPS[op]
        machines = [load_spec_machine(f) for f in files.split(",") if f]
        inner = Bounds(bounds.max_rows - 1, bounds.max_cols) if op == "row_concat" else bounds
        if op == "row_concat" and inner.max_rows < 1:
            raise UsageError("row concatenation needs --max-rows of at least 2")
        samples = [language_sample(m, inner) for m in machines]
        return expected_sample(op, *samples, bounds=bounds)
    return load_spec_machine(spec)


def _alphabet_of(*langs):
    for lang in langs:
        if hasattr(lang, "alphabet"):
            return lang.alphabet
    return ("0", "1")


def cmd_validate(args) -> int:
    with open(args.machine, encoding="ascii") as fh:
        m = parse_machine(fh.read(), strict=False)
    report = validate(m)
    print(report)
    return 0 if report.ok else 1


def cmd_run(args) -> int:
    m = load_spec_machine(args.machine)
    outcome = run(m, load_word(args.word, m.alphabet))
    print(outcome)
    return 0 if outcome.accepted else 1


def cmd_trace(args) -> int:
    m = load_spec_machine(args.machine)
    tr = trace(m, load_word(args.word, m.alphabet))
    if tr is None:
        print("no accepting run")
        return 1
    print(tr.render())
    return 0


def cmd_construct(args) -> int:
    a = load_spec_machine(args.a)
    b = load_spec_machine(args.b) if args.b else None
    out = construct(args.op, a, b)
    sources = " ".join(x for x in (args.a, args.b) if x)
    out = replace(out, notes=out.notes + (f"constructed: --op {args.op} {sources}",))
    if args.output:
        save_machine(out, args.output)
        print(f"{out.state_count} states")
    else:
        sys.stdout.write(format_machine(out))
        print(f"{out.state_count} states", file=sys.stderr)
    return 0


def cmd_check(args) -> int:
    bounds = Bounds(args.max_rows, args.max_cols)
    left = resolve_language(args.left, bounds)
    right = resolve_language(args.right, bounds)
    result = equivalence(left, right, bounds, alphabet=_alphabet_of(left, right))
    if result:
        print("equal")
        return 0
    print(f"counterexample (left={'accept' if result.left else 'reject'}, "
          f"right={'accept' if result.right else 'reject'}):")
    print("\n".join(result.word.rows))
    return 1


def cmd_enum(args) -> int:
    m = load_spec_machine(args.machine)
    sample = language_sample(m, Bounds(args.max_rows, args.max_cols))
    sys.stdout.write(sample.export())
    return 0


def cmd_fixtures(args) -> int:
    os.makedirs(args.dir, exist_ok=True)
    for name in FIXTURES:
        path = os.path.join(args.dir, f"{name}.m")
        save_machine(build_fixture(name), path)
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gridfa", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a machine file's structural constraints")
    s.add_argument("machine")
    s.set_defaults(func=cmd_validate)

    for name, func, helptext in (("run", cmd_run, "decide membership"),
                                 ("trace", cmd_trace, "print an accepting run")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("machine")
        s.add_argument("word")
        s.set_defaults(func=func)

    s = sub.add_parser("construct", help="build a machine from one or two inputs")
    s.add_argument("--op", required=True, choices=OPS)
    s.add_argument("a")
    s.add_argument("b", nargs="?")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("check", help="bounded language equivalence")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--max-rows", type=int, default=3)
    s.add_argument("--max-cols", type=int, default=3)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("enum", help="list accepted words within bounds")
    s.add_argument("machine")
    s.add_argument("--max-rows", type=int, default=3)
    s.add_argument("--max-cols", type=int, default=3)
    s.set_defaults(func=cmd_enum)

    s = sub.add_parser("fixtures", help="fixture corpus utilities")
    fs = s.add_subparsers(dest="action", required=True)
    e = fs.add_parser("export", help="write every fixture machine into DIR")
    e.add_argument("dir")
    e.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, UsageError, MachineFormatError, WordError, AlphabetMismatch,
            C.ConstructionError, BudgetExceeded, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"gridfa: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
