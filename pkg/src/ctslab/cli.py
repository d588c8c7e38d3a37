# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

"""Command line interface for ctslab.

Exit codes: 0 accepted or success, 1 rejected (or a crosscheck
disagreement), 2 usage, parse or validation error, 3 inconclusive.
"""

import argparse
import dataclasses
import functools
import itertools
import json
import logging
import sys
import time
from dataclasses import dataclass
from typing import (Callable, Dict, Iterator, List, Optional, Sequence,
                    Tuple)

from .counter import (build_state_diagram, counter_member, diagram_to_dot,
                      diagram_to_json)
from .cts_format import load_system
from .errors import CtsError, UnproducibleTerminal
from .one_state import (classify_psi, detect_case, fast_member,
                        segment_profile, terminal_partition)
from .oracle import (OracleVerdict, default_limits, enumerate_language,
                     oracle_member, sort_words)
from .parikh import recognize_rt_0s
from .petri import Semantics, cts_to_pn, pn_member
from .pn_format import dump_net, load_net, render_net
from .systems import (COUNTER_FAMILIES, CtsSystem, Family,
                      ONE_STATE_FAMILIES, SystemKind, Verdict, Word,
                      classify_shape, format_word, parse_word,
                      validate_system)
from .threaded import map_words

__all__ = ["RunReport", "applicable_algorithms", "auto_algorithm",
           "run_cli", "main"]

logger = logging.getLogger(__name__)

EXIT_ACCEPTED = 0
EXIT_REJECTED = 1
EXIT_ERROR = 2
EXIT_INCONCLUSIVE = 3

ALGORITHMS = ("oracle", "parikh", "counter", "fast")

_EXIT_CODES = {
    Verdict.ACCEPTED: EXIT_ACCEPTED,
    Verdict.REJECTED: EXIT_REJECTED,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


@dataclass
class RunReport:
    command: str
    verdict: str
    algorithm: Optional[str] = None
    word: Optional[str] = None
    witness: Optional[List[str]] = None
    timing_ms: float = 0.0
    limits_hit: Optional[str] = None

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self))


def applicable_algorithms(system: CtsSystem) -> List[str]:
    """Membership algorithms that accept this system, oracle first."""
    shape = classify_shape(system)
    algorithms = ["oracle"]
    if shape.family is Family.RL_0S and shape.real_time:
        algorithms.append("parikh")
    if shape.family in COUNTER_FAMILIES:
        algorithms.append("counter")
    if shape.family in ONE_STATE_FAMILIES:
        algorithms.append("fast")
    return algorithms


def auto_algorithm(system: CtsSystem) -> str:
    shape = classify_shape(system)
    if shape.family in ONE_STATE_FAMILIES:
        return "fast"
    if shape.family is Family.RL_0S and shape.real_time:
        return "parikh"
    if shape.family in COUNTER_FAMILIES:
        return "counter"
    return "oracle"


def _decide(system: CtsSystem, word: Word, algorithm: str,
            max_frontier: Optional[int] = None,
            counter_cap: Optional[int] = None) -> OracleVerdict:
    if algorithm == "oracle":
        limits = default_limits(len(word), system)
        if max_frontier is not None:
            limits = dataclasses.replace(limits, max_frontier=max_frontier)
        return oracle_member(system, word, limits)
    if algorithm == "parikh":
        return OracleVerdict(recognize_rt_0s(system, word))
    if algorithm == "counter":
        return OracleVerdict(counter_member(system, word, counter_cap))
    if algorithm == "fast":
        return OracleVerdict(fast_member(system, word).verdict)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _all_words(terminals: Sequence[str], max_len: int) -> Iterator[Word]:
    alphabet = sorted(terminals)
    for length in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


def _read_word(args: argparse.Namespace, terminals: Sequence[str]) -> Word:
    if args.word_file is not None:
        with open(args.word_file, "rt", encoding="utf-8") as handle:
            text = handle.read()
    else:
        text = args.word
    return parse_word(text, terminals)


def _validate(args: argparse.Namespace) -> int:
    system = load_system(args.file)
    violations = validate_system(system)
    if not violations:
        print(f"{system.name}: valid")
        return EXIT_ACCEPTED
    for violation in violations:
        print(f"ctslab: error: {violation}", file=sys.stderr)
    return EXIT_ERROR


def _classify(args: argparse.Namespace) -> int:
    system = load_system(args.file)
    shape = classify_shape(system)
    info: Dict[str, object] = {
        "system": system.name,
        "type": system.kind.value,
        "family": shape.family.value,
        "real_time": shape.real_time,
        "l1": shape.g1_nt_count,
        "l2": shape.g2_nt_count,
        "algorithms": applicable_algorithms(system),
    }
    if shape.family in ONE_STATE_FAMILIES:
        profile = classify_psi(system)
        partition = terminal_partition(profile)
        info["psi_profile"] = {rewrite_id: str(psi) for rewrite_id, psi
                               in profile.per_rewrite}
        info["partition"] = {"I": sorted(partition.only_psi3),
                             "H": sorted(partition.only_psi5),
                             "L": sorted(partition.both)}
        if args.word is not None:
            word = parse_word(args.word, system.g1.terminals)
            info["word"] = format_word(word)
            info["case"] = detect_case(profile, word).value
            try:
                segments = segment_profile(profile, word)
            except UnproducibleTerminal as error:
                logger.info("no segment profile: %s", error)
                info["segments"] = None
            else:
                info["segments"] = {
                    "decomposition": [format_word(s)
                                      for s in segments.decomposition],
                    "eta3": list(segments.eta3),
                    "eta5": list(segments.eta5),
                    "eta_l": list(segments.eta_l),
                    "trailing_psi4": segments.trailing_psi4,
                }
    print(json.dumps(info, indent=2))
    return EXIT_ACCEPTED


def _member(args: argparse.Namespace) -> int:
    system = load_system(args.file)
    word = _read_word(args, system.g1.terminals)
    algorithm = args.algo
    if algorithm == "auto":
        algorithm = auto_algorithm(system)
    start = time.perf_counter()
    outcome = _decide(system, word, algorithm, args.max_frontier,
                      args.counter_cap)
    elapsed = (time.perf_counter() - start) * 1000
    witness = outcome.witness
    if args.witness and outcome.status is Verdict.ACCEPTED and \
            witness is None:
        witness = _decide(system, word, "oracle", args.max_frontier).witness
    report = RunReport(
        command="member",
        verdict=outcome.status.name,
        algorithm=algorithm,
        word=format_word(word),
        witness=list(witness) if args.witness and witness is not None
        else None,
        timing_ms=round(elapsed, 3),
        limits_hit=outcome.limit_hit)
    if args.json:
        print(report.to_json())
    else:
        print(report.verdict)
        if report.witness is not None:
            print("witness: " + " ".join(report.witness))
        if report.limits_hit is not None:
            print(f"limit hit: {report.limits_hit}")
    return _EXIT_CODES[outcome.status]


def _enumerate(args: argparse.Namespace) -> int:
    system = load_system(args.file)
    if args.max_len < 0:
        raise ValueError(f"--max-len must be non-negative, got {args.max_len}")
    algorithm = args.algo
    if algorithm == "auto":
        algorithm = auto_algorithm(system)
    limit_hit = None
    if algorithm == "oracle":
        result = enumerate_language(system, args.max_len)
        words = sort_words(result.words)
        limit_hit = result.limit_hit
    else:
        candidates = list(_all_words(system.g1.terminals, args.max_len))
        decide = functools.partial(_decide, system, algorithm=algorithm)
        outcomes = map_words(decide, candidates, args.threads)
        words = [word for word, outcome in zip(candidates, outcomes)
                 if outcome.status is Verdict.ACCEPTED]
    if args.json:
        print(json.dumps({"system": system.name,
                          "max_len": args.max_len,
                          "algorithm": algorithm,
                          "complete": limit_hit is None,
                          "limits_hit": limit_hit,
                          "words": [format_word(w) for w in words]}))
    else:
        for word in words:
            print(format_word(word))
    if limit_hit is not None:
        print(f"ctslab: enumeration incomplete, limit {limit_hit} hit",
              file=sys.stderr)
        return EXIT_INCONCLUSIVE
    return EXIT_ACCEPTED


def _diagram(args: argparse.Namespace) -> int:
    system = load_system(args.file)
    diagram = build_state_diagram(system)
    dot = diagram_to_dot(diagram)
    if args.dot is not None:
        with open(args.dot, "wt", encoding="utf-8") as handle:
            handle.write(dot)
    if args.json is not None:
        with open(args.json, "wt", encoding="utf-8") as handle:
            json.dump(diagram_to_json(diagram), handle, indent=2)
    if args.dot is None and args.json is None:
        print(dot, end="")
    return EXIT_ACCEPTED


def _to_pn(args: argparse.Namespace) -> int:
    net = cts_to_pn(load_system(args.file))
    if args.output is not None:
        dump_net(net, args.output)
    else:
        print(render_net(net), end="")
    return EXIT_ACCEPTED


def _pn_member(args: argparse.Namespace) -> int:
    net = load_net(args.file)
    word = _read_word(args, net.alphabet)
    verdict = pn_member(net, word, Semantics(args.semantics))
    print(verdict.name)
    return _EXIT_CODES[verdict]


def _crosscheck_algorithms(
        system: CtsSystem) -> List[Tuple[str, Callable[[Word], Verdict]]]:
    checks: List[Tuple[str, Callable[[Word], Verdict]]] = [
        (name, functools.partial(_verdict_of, system, name))
        for name in applicable_algorithms(system)]
    if system.kind is SystemKind.ZERO_SEQUENTIAL and \
            all(step.emit is not None for step in system.steps):
        net = cts_to_pn(system)
        checks.append(("petri", functools.partial(
            pn_member, net, semantics=Semantics.FINAL_MARKINGS)))
    return checks


def _verdict_of(system: CtsSystem, algorithm: str, word: Word) -> Verdict:
    return _decide(system, word, algorithm).status


def _crosscheck(args: argparse.Namespace) -> int:
    system = load_system(args.file)
    if args.max_len < 0:
        raise ValueError(f"--max-len must be non-negative, got {args.max_len}")
    checks = _crosscheck_algorithms(system)

    def verdicts(word: Word) -> Tuple[Verdict, ...]:
        return tuple(check(word) for _, check in checks)

    words = list(_all_words(system.g1.terminals, args.max_len))
    inconclusive = 0
    for word, row in zip(words, map_words(verdicts, words, args.threads)):
        decided = {v for v in row if v is not Verdict.INCONCLUSIVE}
        if len(decided) < len(row):
            inconclusive += 1
        if len(decided) > 1:
            details = " ".join(f"{name}={verdict.name}" for (name, _),
                               verdict in zip(checks, row))
            print(f"DISAGREE {format_word(word)}: {details}")
            return EXIT_REJECTED
    names = ", ".join(name for name, _ in checks)
    summary = f"ALL-AGREE: {len(words)} words, {names}"
    if inconclusive:
        summary += f" ({inconclusive} inconclusive)"
    print(summary)
    return EXIT_ACCEPTED


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {number}")
    return number


def _add_word_arguments(parser: argparse.ArgumentParser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("-w", "--word",
                       help="The word. Use '~' or '' for the empty word.")
    group.add_argument("--word-file",
                       help="Read the word from this file, symbols "
                            "separated by whitespace.")


def _argument_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ctslab")
    parser.description = (
        "Define two-component cts systems and decide word membership with "
        "a derivation oracle, Parikh, counter and case-scan recognizers.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="Log search statistics to stderr. Repeat for "
                             "debug output.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    validate = subparsers.add_parser(
        "validate", help="Check a .cts file for well-formedness.")
    validate.add_argument("file")
    validate.set_defaults(func=_validate)

    classify = subparsers.add_parser(
        "classify", help="Print the family and rewrite types as JSON.")
    classify.add_argument("file")
    classify.add_argument("-w", "--word",
                          help="Also report the case and segments of this "
                               "word.")
    classify.set_defaults(func=_classify)

    member = subparsers.add_parser("member", help="Decide word membership.")
    member.add_argument("file")
    _add_word_arguments(member)
    member.add_argument("--algo", choices=("auto",) + ALGORITHMS,
                        default="auto",
                        help="Recognizer to use (default: %(default)s).")
    member.add_argument("--witness", action="store_true",
                        help="Print the rewrites of an accepting "
                             "derivation.")
    member.add_argument("--json", action="store_true",
                        help="Print a JSON report.")
    member.add_argument("--max-frontier", type=_positive_int,
                        help="Oracle snapshot cap.")
    member.add_argument("--counter-cap", type=_positive_int,
                        help="Largest counter value the counter recognizer "
                             "explores.")
    member.set_defaults(func=_member)

    enumerate_ = subparsers.add_parser(
        "enumerate", help="List the language up to a length.")
    enumerate_.add_argument("file")
    enumerate_.add_argument("-n", "--max-len", type=int, required=True)
    enumerate_.add_argument("--algo", choices=("auto",) + ALGORITHMS,
                            default="oracle",
                            help="Recognizer to use (default: %(default)s).")
    enumerate_.add_argument("--json", action="store_true")
    enumerate_.add_argument("-t", "--threads", type=int, default=0,
                            help="Worker threads. 0 evaluates in the main "
                                 "thread, a negative number uses every "
                                 "cpu.")
    enumerate_.set_defaults(func=_enumerate)

    diagram = subparsers.add_parser(
        "diagram", help="Export the state diagram of an (RL;RB_c) system.")
    diagram.add_argument("file")
    diagram.add_argument("--dot", help="Write DOT source to this file.")
    diagram.add_argument("--json", help="Write the diagram as JSON to this "
                                        "file.")
    diagram.set_defaults(func=_diagram)

    to_pn = subparsers.add_parser(
        "to-pn", help="Translate an (RL;0S) system to a .pn net.")
    to_pn.add_argument("file")
    to_pn.add_argument("-o", "--output",
                       help="Write to this file instead of stdout.")
    to_pn.set_defaults(func=_to_pn)

    pn = subparsers.add_parser("pn-member",
                               help="Decide membership for a .pn net.")
    pn.add_argument("file")
    _add_word_arguments(pn)
    pn.add_argument("--semantics", choices=[s.value for s in Semantics],
                    default=Semantics.ANY_MARKING.value)
    pn.set_defaults(func=_pn_member)

    crosscheck = subparsers.add_parser(
        "crosscheck",
        help="Run every applicable recognizer on every short word.")
    crosscheck.add_argument("file")
    crosscheck.add_argument("-n", "--max-len", type=int, required=True)
    crosscheck.add_argument("-t", "--threads", type=int, default=0)
    crosscheck.set_defaults(func=_crosscheck)
    return parser


def _configure_logging(verbosity: int):
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level,
                        format="%(levelname)s %(name)s: %(message)s")


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = _argument_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else EXIT_ERROR
    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except (CtsError, OSError, ValueError) as error:
        print(f"ctslab: error: {error}", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(run_cli())


if __name__ == "__main__":  # pragma: no cover
    main()
