"""Command-line interface.

Map operands are JSON map files, or ``word:TEXT`` for a word in the
generators; every ``--word TEXT`` option appends one more operand after the
positional ones.  Exit status is 0 on success or a standard verdict, 1 on a
negative verdict or unmet precondition, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import List, Optional, Sequence

from . import jsonio
from .classify import (
    Decision, PreconditionError, WitnessNotFound, decide_oracle, decide_structural,
    ubiquity_witness,
)
from .construct import DecompositionError, build_nice_pair, decompose, perturb, replay
from .counterexample import format_demo, run_demo
from .orbitals import orbitals_of
from .plmap import PLMap, compose, format_rational, invert
from .words import eval_word

log = logging.getLogger("plthompson")

EXIT_OK, EXIT_NEGATIVE, EXIT_MALFORMED, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _load_operand(text: str, normalize: bool) -> PLMap:
    if text.startswith("word:"):
        return eval_word(text[len("word:"):])
    return jsonio.read_map(text, normalize)


def _operands(args, n: int) -> List[PLMap]:
    texts = list(getattr(args, "maps", []) or []) + [f"word:{w}" for w in args.word or []]
    if len(texts) != n:
        raise UsageError(f"expected {n} map operand(s), got {len(texts)}")
    return [_load_operand(t, args.normalize) for t in texts]


def _emit(args, doc) -> None:
    text = jsonio.dumps(doc)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------

def cmd_eval(args) -> int:
    texts = ([args.map] if args.map else []) + [f"word:{w}" for w in args.word or []]
    if len(texts) != 1:
        raise UsageError("eval needs exactly one map (--map or --word)")
    f = _load_operand(texts[0], args.normalize)
    x = jsonio.decode_rational(args.at, not args.normalize)
    print(format_rational(f(x)))
    return EXIT_OK


def cmd_compose(args) -> int:
    f, g = _operands(args, 2)
    _emit(args, jsonio.encode_map(compose(f, g)))
    return EXIT_OK


def cmd_inverse(args) -> int:
    (f,) = _operands(args, 1)
    _emit(args, jsonio.encode_map(invert(f)))
    return EXIT_OK


def cmd_word(args) -> int:
    _emit(args, jsonio.encode_map(eval_word(args.text)))
    return EXIT_OK


def cmd_orbitals(args) -> int:
    (f,) = _operands(args, 1)
    _emit(args, jsonio.orbital_report(orbitals_of(f)))
    return EXIT_OK


def _label(standard: bool) -> str:
    return "standard" if standard else "not standard"


def cmd_check_pair(args) -> int:
    f0, f1 = _operands(args, 2)
    reason = None
    if args.method == "oracle":
        ok = decide_oracle(f0, f1)
        line = f"{_label(ok)} (oracle)"
    else:
        v = decide_structural(f0, f1)
        reason = v.reason
        if v.decision is Decision.INDETERMINATE:
            ok = decide_oracle(f0, f1)
            log.warning("structural verdict indeterminate (%s); resolved by the oracle",
                        v.reason.detail)
            line = f"{_label(ok)} (structural indeterminate, resolved by oracle)"
        elif args.method == "structural":
            ok = v.standard
            line = f"{_label(ok)} (structural)"
        else:
            ok = decide_oracle(f0, f1)
            if ok == v.standard:
                line = f"{_label(ok)} (both methods agree)"
            else:
                line = (f"methods disagree: structural {v.decision.value}, "
                        f"oracle {_label(ok)}")
                print(line)
                return EXIT_INTERNAL
    print(line)
    if not ok and reason is not None:
        print(f"reason: {reason.rule}: {reason.detail}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_classify(args) -> int:
    f0, f1 = _operands(args, 2)
    v = decide_structural(f0, f1)
    oracle = decide_oracle(f0, f1)
    if v.decision is Decision.INDETERMINATE:
        log.warning("structural verdict indeterminate; oracle says %s", _label(oracle))
    _emit(args, jsonio.classification_report(v, oracle))
    return EXIT_OK


def cmd_make_nice(args) -> int:
    spec = jsonio.decode_nice_spec(jsonio.load_json(args.spec), args.normalize)
    f0, f1 = build_nice_pair(spec)
    os.makedirs(args.output, exist_ok=True)
    jsonio.write_json(os.path.join(args.output, "f0.json"), jsonio.encode_map(f0))
    jsonio.write_json(os.path.join(args.output, "f1.json"), jsonio.encode_map(f1))
    print(f"wrote f0.json and f1.json to {args.output}")
    return EXIT_OK


def cmd_perturb(args) -> int:
    f0, f1 = _operands(args, 2)
    step = jsonio.decode_step(jsonio.load_json(args.step), args.normalize)
    _emit(args, jsonio.encode_map(perturb(f0, f1, step)))
    return EXIT_OK


def cmd_decompose(args) -> int:
    f0, g1 = _operands(args, 2)
    _emit(args, jsonio.encode_trace(decompose(f0, g1)))
    return EXIT_OK


def cmd_replay(args) -> int:
    (f0,) = _operands(args, 1)
    nice_f1, steps = jsonio.decode_trace(jsonio.load_json(args.trace), args.normalize)
    _emit(args, jsonio.encode_map(replay(f0, nice_f1, steps)))
    return EXIT_OK


def cmd_witness(args) -> int:
    f0, f1 = _operands(args, 2)
    _emit(args, jsonio.witness_report(ubiquity_witness(f0, f1)))
    return EXIT_OK


def cmd_demo(args) -> int:
    report = run_demo(args.words, args.seed)
    sys.stdout.write(format_demo(report))
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_corpus(args) -> int:
    from .corpus import random_pair
    agree = indeterminate = 0
    for i in range(args.count):
        cp = random_pair(args.seed + i, mode=args.mode)
        v = decide_structural(cp.f0, cp.f1)
        oracle = decide_oracle(cp.f0, cp.f1)
        if v.decision is Decision.INDETERMINATE:
            indeterminate += 1
            verdict = "indeterminate"
        else:
            verdict = v.decision.value
            agree += v.standard == oracle
        print(f"seed {cp.seed} {cp.mode}: structural {verdict}, oracle {_label(oracle)}")
        if args.output:
            os.makedirs(args.output, exist_ok=True)
            for name, f in (("f0", cp.f0), ("f1", cp.f1)):
                jsonio.write_json(os.path.join(args.output, f"{cp.seed}-{name}.json"),
                                  jsonio.encode_map(f))
    definite = args.count - indeterminate
    print(f"agreement {agree}/{definite} on definite verdicts, "
          f"{indeterminate} indeterminate (all resolved by oracle)")
    return EXIT_OK if agree == definite else EXIT_INTERNAL


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--normalize", action="store_true",
                        help="accept non-canonical map files and normalize them")
    common.add_argument("--word", action="append", metavar="TEXT",
                        help="map operand given as a word, e.g. 'x1^2 x2^-1'")
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("-o", "--output", help="output file (default: stdout)")

    ap = argparse.ArgumentParser(prog="plf", description="Exact PL maps and Thompson's group F.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help, parents=(common,)):
        p = sub.add_parser(name, help=help, parents=list(parents))
        p.set_defaults(func=func)
        return p

    p = add("eval", cmd_eval, "evaluate a map at a rational point")
    p.add_argument("--map", help="map file or word:TEXT")
    p.add_argument("--at", required=True, help="point as num/den")

    for name, func, n, help in (
        ("compose", cmd_compose, 2, "word-order product A B (apply A, then B)"),
        ("inverse", cmd_inverse, 1, "inverse map"),
        ("orbitals", cmd_orbitals, 1, "orbital report"),
        ("classify", cmd_classify, 2, "full classification report"),
        ("perturb", cmd_perturb, 2, "apply a perturbation step to a pair"),
        ("decompose", cmd_decompose, 2, "decompose a standard pair into a trace"),
        ("replay", cmd_replay, 1, "replay a trace against f0"),
        ("witness", cmd_witness, 2, "ubiquity witness for a standard pair"),
    ):
        p = add(name, func, help, (common, out))
        p.add_argument("maps", nargs="*", metavar="MAP")
    sub.choices["perturb"].add_argument("--step", required=True, help="step JSON file")
    sub.choices["replay"].add_argument("trace", help="trace JSON file")

    p = add("word", cmd_word, "evaluate a word to a map", (common, out))
    p.add_argument("text")

    p = add("check-pair", cmd_check_pair, "decide whether (A, B) is a standard pair")
    p.add_argument("maps", nargs="*", metavar="MAP")
    p.add_argument("--method", choices=("structural", "oracle", "both"), default="both")

    p = add("make-nice", cmd_make_nice, "build a nice pair from a spec file")
    p.add_argument("--spec", required=True)
    p.add_argument("-o", "--output", required=True, help="output directory")

    p = add("demo", cmd_demo, "narrated demonstrations")
    p.add_argument("name", choices=("counterexample",))
    p.add_argument("--words", type=int, default=1000, help="number of sampled words")
    p.add_argument("--seed", type=int, default=0)

    p = add("corpus", cmd_corpus, "differential run over generated pairs")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", default=None)
    p.add_argument("-o", "--output", help="directory for the generated map files")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except WitnessNotFound as exc:
        print(f"anomaly: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (DecompositionError, RuntimeError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, OSError, TypeError) as exc:
        # FormatError, WordSyntaxError, PLMapError, ConstructionError, UsageError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
