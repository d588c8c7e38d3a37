import argparse
import itertools  # noqa: F401 used in timeit strings
import timeit
from pathlib import Path
from typing import Dict, Mapping

from ctslab import load_system
from ctslab.counter import counter_member  # noqa: F401 used in timeit strings
from ctslab.one_state import fast_member  # noqa: F401
from ctslab.oracle import enumerate_language, oracle_member  # noqa: F401
from ctslab.parikh import recognize_rt_0s  # noqa: F401
from ctslab.petri import Semantics, cts_to_pn, pn_member  # noqa: F401

DATA_DIR = Path(__file__).parent.parent / "tests" / "data"
ex51 = load_system(DATA_DIR / "ex51.cts")
ex53 = load_system(DATA_DIR / "ex53.cts")
ex6 = load_system(DATA_DIR / "ex6.cts")
ex6_net = cts_to_pn(ex6)

anbn: Dict[str, str] = {
    str(n * 2): "a" * n + "b" * n for n in (1, 4, 16, 64)
}
dyck: Dict[str, str] = {
    str(n * 4): "ab" * n + "a" * n + "b" * n for n in (1, 4, 8, 16)
}
abc: Dict[str, str] = {
    str(n * 3): "a" * n + "b" * n + "c" * n
    for n in (1, 2, 4, 8)
}
lengths: Dict[str, int] = {str(n): n for n in (2, 4, 6, 8)}


def benchmark(name: str,
              names_and_data: Mapping[str, object],
              fast_string: str,
              oracle_string: str,
              number: int = 100,
              **kwargs):
    print(name)
    print("length\trecognizer\toracle\tratio")
    for name, word in names_and_data.items():
        timeit_kwargs = dict(globals=dict(**globals(), **locals()),
                             number=number, **kwargs)
        fast_time = timeit.timeit(fast_string, **timeit_kwargs)
        oracle_time = timeit.timeit(oracle_string, **timeit_kwargs)
        fast_microsecs = round(fast_time * (1_000_000 / number), 2)
        oracle_microsecs = round(oracle_time * (1_000_000 / number), 2)
        ratio = round(fast_time / oracle_time, 2)
        print("{0}\t{1}\t{2}\t{3}".format(name,
                                          fast_microsecs,
                                          oracle_microsecs,
                                          ratio))


def argument_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser()
    parser.add_argument("--all", action="store_true")
    parser.add_argument("--recognizers", action="store_true")
    parser.add_argument("--enumeration", action="store_true")
    return parser


if __name__ == "__main__":
    args = argument_parser().parse_args()
    if args.recognizers or args.all:
        benchmark("counter recognizer, ex51", anbn,
                  "counter_member(ex51, word)",
                  "oracle_member(ex51, word)")
        benchmark("case scan, ex53", dyck,
                  "fast_member(ex53, word)",
                  "oracle_member(ex53, word)")
        benchmark("Parikh recognizer, ex6", abc,
                  "recognize_rt_0s(ex6, word)",
                  "oracle_member(ex6, word)", number=10)
        benchmark("Petri net, ex6", abc,
                  "pn_member(ex6_net, word, Semantics.FINAL_MARKINGS)",
                  "oracle_member(ex6, word)", number=10)
    if args.enumeration or args.all:
        benchmark("enumeration, ex53", lengths,
                  "enumerate_language(ex53, word)",
                  "[oracle_member(ex53, w) for n in range(word + 1) "
                  "for w in itertools.product('ab', repeat=n)]", number=10)
