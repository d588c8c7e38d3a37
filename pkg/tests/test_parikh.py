# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

import dataclasses
from pathlib import Path

from ctslab.cts_format import load_system
from ctslab.errors import NotRealTime, NotZeroSequential, WordAlphabetError
from ctslab.oracle import enumerate_language
from ctslab.parikh import (ParikhConfig, max_growth, parikh_layers,
                           recognize_rt_0s)
from ctslab.systems import SystemKind, Verdict, classify_shape

from hypothesis import given, settings

import pytest

from .strategies import all_words, zero_sequential_systems

DATA = Path(__file__).parent / "data"
EX6 = load_system(DATA / "ex6.cts")
EX4 = load_system(DATA / "ex4.cts")
EX53_0S = load_system(DATA / "ex53_0s.cts")
EX51 = load_system(DATA / "ex51.cts")


@pytest.mark.parametrize(["system", "word", "verdict"], [
    (EX6, "aabbc", Verdict.ACCEPTED),
    (EX6, "ababc", Verdict.ACCEPTED),
    (EX6, "bac", Verdict.REJECTED),
    (EX6, "aabc", Verdict.REJECTED),
    (EX6, "c", Verdict.ACCEPTED),
    (EX4, "abb", Verdict.ACCEPTED),
    (EX4, "ab", Verdict.REJECTED),
    (EX53_0S, "ab", Verdict.ACCEPTED),
    (EX53_0S, "", Verdict.ACCEPTED),
    (EX53_0S, "ba", Verdict.REJECTED),
])
def test_recognize_rt_0s(system, word, verdict):
    assert recognize_rt_0s(system, word) is verdict


def test_layers_of_example_6():
    layers = parikh_layers(EX6, "ab").layers
    assert layers == (
        frozenset({ParikhConfig("S1", (1, 0))}),
        frozenset({ParikhConfig("S1", (1, 1))}),
        frozenset({ParikhConfig("S1", (1, 0))}),
    )


def test_layers_of_empty_word():
    result = parikh_layers(EX6, "")
    assert len(result.layers) == 1
    assert not result.accepted


def test_trailing_closing_rewrite():
    # ex53_0s ends with S1 -> ~, which may follow the last symbol.
    result = parikh_layers(EX53_0S, "ab")
    assert ParikhConfig("S1", (1,)) in result.layers[-1]
    assert ParikhConfig(None, (0,)) in result.layers[-1]
    assert result.accepted


def test_single_symbol_closing():
    result = parikh_layers(EX6, "c")
    assert result.layers[1] == frozenset({ParikhConfig(None, (0, 0))})


def test_requires_zero_sequential():
    with pytest.raises(NotZeroSequential) as error:
        recognize_rt_0s(load_system(DATA / "ex53.cts"), "ab")
    error.match("RL01_RBc")


def test_requires_real_time():
    chain_0s = dataclasses.replace(EX51, g2=dataclasses.replace(
        EX51.g2, kind=SystemKind.ZERO_SEQUENTIAL))
    with pytest.raises(NotRealTime) as error:
        recognize_rt_0s(chain_0s, "ab")
    error.match("chain rules")


def test_alphabet():
    with pytest.raises(WordAlphabetError):
        recognize_rt_0s(EX6, "abd")


def test_max_growth():
    assert max_growth(EX6) == 1
    assert max_growth(EX51) == 1


@settings(max_examples=50, deadline=None)
@given(system=zero_sequential_systems())
def test_agrees_with_oracle(system):
    assert classify_shape(system).real_time
    language = enumerate_language(system, 8)
    assert language.complete
    for word in all_words(system.g1.terminals, 8):
        expected = Verdict.ACCEPTED if word in language.words \
            else Verdict.REJECTED
        assert recognize_rt_0s(system, word) is expected


@settings(max_examples=50, deadline=None)
@given(system=zero_sequential_systems())
def test_entries_stay_small(system):
    bound = max(max_growth(system), 0) * 9 + 1
    for word in all_words(system.g1.terminals, 8):
        layers = parikh_layers(system, word)
        assert layers.max_entry() <= bound
