"""Command-line front end.

Exit codes: 0 yes/equivalent/success, 1 no/inequivalent/blocked,
2 usage or input errors, 3 mixed experiment outcomes.
"""
from __future__ import annotations

import argparse
import sys
from importlib.metadata import PackageNotFoundError, version

from . import compose, core, encode, equiv, regex
from .core import AutomataError, MooreMachine, OutputKind, OutputKindMismatchError, Recognizer
from .format import parse, serialize_machine, to_dot

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_MIXED = 0, 1, 2, 3


class UsageError(AutomataError):
    pass


def _version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0.1.0"


def load_document(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse(text)
    except AutomataError as exc:
        raise UsageError(f"{path}:{exc}") from None


def load_machine(ref: str):
    """Resolve ``FILE#NAME`` (or ``FILE`` holding a single machine)."""
    path, _, name = ref.rpartition("#") if "#" in ref else (ref, "", "")
    doc = load_document(path)
    if not name:
        if len(doc) != 1:
            raise UsageError(f"{path} holds {len(doc)} machines; select one with {path}#NAME")
        name = doc.names()[0]
    if name not in doc.machines:
        raise UsageError(f"no machine named {name!r} in {path}")
    return name, doc[name]


def parse_word(text: str) -> tuple:
    if text in ("", "ε"):
        return ()
    if "," in text:
        return tuple(x.strip() for x in text.split(","))
    return tuple(text)


def as_recognizer(m) -> Recognizer:
    if isinstance(m, Recognizer):
        return m
    if m.kind is OutputKind.BOOL:
        return Recognizer(m.ts, {s for s, v in m.outputs.items() if v})
    raise OutputKindMismatchError(f"expected a recognizer, got {m.kind.value}-valued outputs")


def as_process(m) -> MooreMachine:
    return encode.lts_to_moore(m.ts) if isinstance(m, Recognizer) else m


def _emit(name, m):
    sys.stdout.write(serialize_machine(name, m))


def cmd_show(args):
    _emit(*load_machine(args.machine))
    return EXIT_YES


def cmd_dot(args):
    name, m = load_machine(args.machine)
    sys.stdout.write(to_dot(m, name))
    return EXIT_YES


def cmd_accepts(args):
    _, m = load_machine(args.machine)
    ok = core.accepts(as_recognizer(m), parse_word(args.word))
    print("accept" if ok else "reject")
    return EXIT_YES if ok else EXIT_NO


def cmd_construct(args):
    name, m = load_machine(args.machine)
    op = {"determinize": core.determinize, "minimize": core.minimize, "complete": core.complete}
    _emit(name, op[args.command](as_recognizer(m)))
    return EXIT_YES


def cmd_encode(args):
    name, m = load_machine(args.machine)
    if args.output == "enabled":
        _emit(name, encode.lts_to_moore(m.ts))
    else:
        _emit(name, encode.recognizer_to_moore(as_recognizer(m)))
    return EXIT_YES


def _describe_block(partition, tagged):
    i = partition.block_of(tagged)
    members = ", ".join(f"{'AB'[side]}.{s}" for side, s in sorted(partition.blocks[i]))
    return f"block {i} {{{members}}}"


def cmd_equiv(args):
    (n1, m1), (n2, m2) = load_machine(args.first), load_machine(args.second)
    if args.kind == "language":
        verdict = core.language_equivalent(as_recognizer(m1), as_recognizer(m2))
        if verdict:
            print("equivalent")
            return EXIT_YES
        word = ",".join(verdict.counterexample) if verdict.counterexample else "ε"
        print(f"inequivalent: counterexample {word}")
        return EXIT_NO
    if args.kind == "covering":
        fails = []
        for (bn, b), (an, a) in (((n1, m1), (n2, m2)), ((n2, m2), (n1, m1))):
            v = equiv.covers(b, a)
            if not v:
                fails.append(f"{bn} does not cover {an}: stuck state {v.stuck_state}")
        if not fails:
            print("equivalent")
            return EXIT_YES
        print("inequivalent")
        for line in fails:
            print(line)
        return EXIT_NO
    verdict = equiv.bisimilar(m1, m2)
    print("bisimilar" if verdict else "not bisimilar")
    p = verdict.partition
    print(f"{n1}.{m1.ts.initial}: {_describe_block(p, (0, m1.ts.initial))}")
    print(f"{n2}.{m2.ts.initial}: {_describe_block(p, (1, m2.ts.initial))}")
    return EXIT_YES if verdict else EXIT_NO


def cmd_covers(args):
    (bn, b), (an, a) = load_machine(args.coverer), load_machine(args.covered)
    v = equiv.covers(b, a)
    if v:
        print(f"{bn} covers {an}")
        return EXIT_YES
    print(f"{bn} does not cover {an}: stuck state {v.stuck_state}")
    return EXIT_NO


def cmd_experiment(args):
    _, m = load_machine(args.machine)
    outcomes = sorted(compose.experiment(as_process(m), parse_word(args.word)))
    for o in outcomes:
        print(o)
    success = any(o.success for o in outcomes)
    blocked = any(not o.success for o in outcomes)
    if success and not blocked:
        return EXIT_YES
    return EXIT_MIXED if success else EXIT_NO


def cmd_product(args):
    wiring = args.wiring
    if wiring == "sync":
        if "#" in args.file:
            raise UsageError("sync wiring composes every machine in FILE; drop the #NAME")
        doc = load_document(args.file)
        spec = compose.sync_spec([as_process(m) for _, m in doc])
    elif wiring.startswith("experimenter:"):
        if "#" in args.file:
            _, m = load_machine(args.file)
        else:
            _, m = next(iter(load_document(args.file)))
        spec = compose.experimenter_spec(as_process(m), parse_word(wiring.split(":", 1)[1]))
    else:
        raise UsageError(f"unknown wiring {wiring!r}; use experimenter:WORD or sync")
    _emit("product", compose.general_product(spec))
    return EXIT_YES


def cmd_regex2nfa(args):
    alphabet = [x.strip() for x in args.alphabet.split(",") if x.strip()]
    _emit("nfa", regex.regex_to_nfa(regex.parse_regex(args.expr), alphabet))
    return EXIT_YES


def cmd_nfa2regex(args):
    _, m = load_machine(args.machine)
    print(regex.nfa_to_regex(as_recognizer(m)))
    return EXIT_YES


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="statekit", description="Automata, covering, bisimulation and Moore products.")
    p.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, *machines):
        sp = sub.add_parser(name, help=help)
        for m in machines:
            sp.add_argument(m, metavar="FILE#NAME")
        sp.set_defaults(func=func)
        return sp

    add("show", cmd_show, "print the canonical form", "machine")
    add("dot", cmd_dot, "print a Graphviz DOT rendering", "machine")
    add("accepts", cmd_accepts, "run a word; exit 0 on accept, 1 on reject",
        "machine").add_argument("word", help="abc or comma-separated a,b,c")
    for name in ("determinize", "minimize", "complete"):
        add(name, cmd_construct, f"{name} a recognizer", "machine")
    add("encode-moore", cmd_encode, "attach enabled-action or accept-bit outputs",
        "machine").add_argument("--output", choices=["enabled", "accept"], default="enabled")
    add("equiv", cmd_equiv, "compare two machines", "first", "second").add_argument(
        "--kind", choices=["language", "covering", "bisim"], required=True)
    add("covers", cmd_covers, "does the first machine cover the second", "coverer", "covered")
    add("experiment", cmd_experiment, "press buttons in order over every branch",
        "machine").add_argument("word")
    sp = sub.add_parser("product", help="compose machines with a fixed wiring")
    sp.add_argument("file", metavar="FILE")
    sp.add_argument("--wiring", required=True, help="experimenter:WORD or sync")
    sp.set_defaults(func=cmd_product)
    sp = sub.add_parser("regex2nfa", help="build an NFA from a regular expression")
    sp.add_argument("expr")
    sp.add_argument("--alphabet", required=True, help="comma-separated symbols")
    sp.set_defaults(func=cmd_regex2nfa)
    add("nfa2regex", cmd_nfa2regex, "state-eliminate a recognizer into a regex", "machine")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AutomataError as exc:
        print(f"statekit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
