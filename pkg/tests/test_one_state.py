# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

import dataclasses
import itertools
from pathlib import Path

from ctslab.cts_format import load_system
from ctslab.errors import UnproducibleTerminal, WrongFamily
from ctslab.one_state import (CaseId, PsiKind, SegmentProfile, classify_psi,
                              detect_case, fast_member, p8_sequence_check,
                              segment_profile, terminal_partition)
from ctslab.oracle import enumerate_language, oracle_member
from ctslab.systems import SystemKind, Verdict

import hypothesis.strategies as st
from hypothesis import given, settings

import pytest

from .strategies import TERMINALS, all_words, build_system, counter_systems

DATA = Path(__file__).parent / "data"
EX52 = load_system(DATA / "ex52.cts")
EX53 = load_system(DATA / "ex53.cts")
EX53_VARIANT = load_system(DATA / "ex53_variant.cts")
P1 = load_system(DATA / "p1.cts")
P9 = load_system(DATA / "p9.cts")


def psi_names(system):
    return [str(psi) for _, psi in classify_psi(system).per_rewrite]


def one_state(pairs, name="case"):
    return build_system(name, SystemKind.RIGHT_BOUNDARY, ["S1"],
                        ["S2", "Z2"], pairs)


def test_classify_example_53():
    profile = classify_psi(EX53)
    assert not profile.has_bottom
    assert psi_names(EX53) == ["psi3(a)", "psi5(b)", "psi10z"]


def test_classify_example_53_variant():
    profile = classify_psi(EX53_VARIANT)
    assert profile.has_bottom
    assert psi_names(EX53_VARIANT) == [
        "psi3(a)", "psi5(b)", "psi2(a)", "psi10"]
    assert profile.producers == {
        "a": frozenset({PsiKind.PSI2, PsiKind.PSI3}),
        "b": frozenset({PsiKind.PSI5})}
    assert profile.psi_type("r4").kind is PsiKind.PSI10


def test_classify_p9():
    profile = classify_psi(P9)
    assert profile.kinds == frozenset({
        PsiKind.PSI7, PsiKind.PSI3, PsiKind.PSI5, PsiKind.PSI10})
    assert profile.produced_by(PsiKind.PSI3) == frozenset({"a"})


def test_classify_inert_rewrite():
    # S1 -> a with S2 -> S2 leaves the bottom marker behind for good.
    system = one_state([
        (("S1", ("a", "S1")), ("S2", ("S2",))),
        (("S1", ("a",)), ("S2", ("S2",))),
        (("S1", ("b",)), ("S2", ())),
    ])
    profile = classify_psi(system)
    assert psi_names(system) == ["psi1(a)", "inert", "psi6(b)"]
    assert profile.kinds == frozenset({PsiKind.PSI1, PsiKind.PSI6})


def test_classify_psi_wrong_family():
    with pytest.raises(WrongFamily) as error:
        classify_psi(EX52)
    error.match("single G1 nonterminal")


def test_terminal_partition():
    partition = terminal_partition(classify_psi(EX53))
    assert partition.only_psi3 == frozenset({"a"})
    assert partition.only_psi5 == frozenset({"b"})
    assert partition.both == frozenset()


def test_terminal_partition_shared_symbol():
    system = one_state([
        (("S1", ("a", "S1")), ("Z2", ("Z2", "Z2"))),
        (("S1", ("a", "S1")), ("Z2", ())),
        (("S1", ("b", "S1")), ("Z2", ())),
        (("S1", ("S1",)), ("S2", ("S2", "Z2"))),
        (("S1", ()), ("S2", ())),
    ])
    partition = terminal_partition(classify_psi(system))
    assert partition.both == frozenset({"a"})
    assert partition.only_psi5 == frozenset({"b"})
    assert partition.only_psi3 == frozenset()


@pytest.mark.parametrize(["system", "word", "case"], [
    (P1, "aab", CaseId.P1),
    (P9, "aabbb", CaseId.P9),
    (EX53_VARIANT, "ab", CaseId.P11_I),
    (EX53, "ab", CaseId.FALLBACK),
])
def test_detect_case(system, word, case):
    assert detect_case(classify_psi(system), word) is case


def test_detect_case_with_shared_symbols():
    system = one_state([
        (("S1", ("a", "S1")), ("Z2", ("Z2", "Z2"))),
        (("S1", ("a", "S1")), ("Z2", ())),
        (("S1", ("b", "S1")), ("Z2", ())),
        (("S1", ("S1",)), ("S2", ("S2", "Z2"))),
        (("S1", ()), ("S2", ())),
    ])
    profile = classify_psi(system)
    assert detect_case(profile, "aaa") is CaseId.P3
    assert detect_case(profile, "ab") is CaseId.P10


def test_segment_profile():
    profile = segment_profile(classify_psi(P9), "aabbb")
    assert profile == SegmentProfile(
        decomposition=((), ("a", "a"), ("b", "b", "b")),
        eta3=(2,), eta5=(0, 3), eta_l=(0, 0, 0), trailing_psi4=False)


def test_segment_profile_ending_in_beta():
    profile = segment_profile(classify_psi(P9), "ba")
    assert profile.decomposition == (("b",), ("a",), ())
    assert profile.eta3 == (1,)
    assert profile.eta5 == (1, 0)


def test_segment_profile_unproducible():
    with pytest.raises(UnproducibleTerminal):
        segment_profile(classify_psi(P9), "abc")


@pytest.mark.parametrize(["word", "leftover"], [
    ("", 0),
    ("b", 0),
    ("aabbb", 0),
    ("abb", 0),
    ("abbabb", 0),
    ("ab", 1),
    ("abab", 2),
    ("aab", 2),
])
def test_p8_sequence_check(word, leftover):
    profile = segment_profile(classify_psi(P9), word)
    assert p8_sequence_check(profile) == leftover


def test_p8_sequence_check_trailing_psi4():
    assert p8_sequence_check(SegmentProfile(
        ((), ("a",), ("b", "b", "n")), (1,), (0, 2), (), True)) == 1
    assert p8_sequence_check(SegmentProfile(
        (("n",),), (), (0,), (), True)) == 1


def test_p8_agrees_with_oracle_on_all_short_words():
    language = enumerate_language(P9, 12)
    assert language.complete
    profile = classify_psi(P9)
    checked = 0
    for length in range(1, 13):
        for word in itertools.product("ab", repeat=length):
            leftover = p8_sequence_check(segment_profile(profile, word))
            assert (leftover == 0) == (word in language.words), word
            checked += 1
    assert checked == 8190


@pytest.mark.parametrize(["system", "word", "verdict", "delegated"], [
    (P1, "aab", Verdict.ACCEPTED, False),
    (P1, "b", Verdict.ACCEPTED, False),
    (P1, "aba", Verdict.REJECTED, False),
    (P1, "", Verdict.REJECTED, False),
    (P9, "aabbb", Verdict.ACCEPTED, False),
    (P9, "abab", Verdict.REJECTED, False),
    (EX53_VARIANT, "ab", Verdict.ACCEPTED, True),
    (EX53, "aabb", Verdict.ACCEPTED, True),
])
def test_fast_member(system, word, verdict, delegated):
    result = fast_member(system, word)
    assert result.verdict is verdict
    assert result.delegated is delegated


def test_fast_member_reports_case():
    assert fast_member(P9, "ab").case is CaseId.P9


@pytest.mark.parametrize("bottom", [True, False])
def test_fast_member_agrees_with_oracle(bottom):
    @settings(max_examples=50, deadline=None)
    @given(system=counter_systems(bottom, one_state=True))
    def check(system):
        language = enumerate_language(system, 8)
        for word in all_words(system.g1.terminals, 8):
            verdict = fast_member(system, word).verdict
            if word in language.words:
                assert verdict is Verdict.ACCEPTED
            elif language.complete:
                assert verdict is Verdict.REJECTED
            elif verdict is Verdict.ACCEPTED:
                status = oracle_member(system, word).status
                assert status is not Verdict.REJECTED

    check()


def reordered(system, data):
    """The same system with rewrites and productions declared in another
    order."""
    rewrites = data.draw(st.permutations(system.rewrites))
    g1_productions = data.draw(st.permutations(system.g1.productions))
    order = data.draw(st.permutations(range(len(system.g2.productions))))
    position = {old: new for new, old in enumerate(order)}
    return dataclasses.replace(
        system,
        g1=dataclasses.replace(system.g1, productions=tuple(g1_productions)),
        g2=dataclasses.replace(
            system.g2,
            productions=tuple(system.g2.productions[i] for i in order)),
        rewrites=tuple(dataclasses.replace(r, g2=position[r.g2])
                       for r in rewrites))


@pytest.mark.parametrize("bottom", [True, False])
def test_detect_case_ignores_declaration_order(bottom):
    @settings(max_examples=50, deadline=None)
    @given(system=counter_systems(bottom, one_state=True), data=st.data())
    def check(system, data):
        shuffled = reordered(system, data)
        profile = classify_psi(system)
        shuffled_profile = classify_psi(shuffled)
        assert shuffled_profile.kinds == profile.kinds
        assert shuffled_profile.producers == profile.producers
        for word in all_words(TERMINALS, 4):
            assert detect_case(shuffled_profile, word) is \
                detect_case(profile, word)
            assert fast_member(shuffled, word).verdict is \
                fast_member(system, word).verdict

    check()


# psi7, psi3(a), psi3(c), psi5(b), psi5(d), psi10
P9_WIDE = build_system(
    "wide", SystemKind.RIGHT_BOUNDARY, ["S1"], ["S2", "Z2"],
    [(("S1", ("S1",)), ("S2", ("S2", "Z2"))),
     (("S1", ("a", "S1")), ("Z2", ("Z2", "Z2"))),
     (("S1", ("c", "S1")), ("Z2", ("Z2", "Z2"))),
     (("S1", ("b", "S1")), ("Z2", ())),
     (("S1", ("d", "S1")), ("Z2", ())),
     (("S1", ()), ("S2", ()))],
    terminals=("a", "b", "c", "d"))


@settings(max_examples=100, deadline=None)
@given(word=st.lists(st.sampled_from("abcd"), max_size=8), data=st.data())
def test_p8_verdict_survives_permutation_within_segments(word, data):
    profile = classify_psi(P9_WIDE)
    segments = segment_profile(profile, word)
    permuted = tuple(
        x for segment in segments.decomposition
        for x in data.draw(st.permutations(segment)))
    permuted_segments = segment_profile(profile, permuted)
    assert [len(s) for s in permuted_segments.decomposition] == \
        [len(s) for s in segments.decomposition]
    assert (permuted_segments.eta3, permuted_segments.eta5) == \
        (segments.eta3, segments.eta5)
    leftover = p8_sequence_check(permuted_segments)
    assert leftover == p8_sequence_check(segments)
    assert detect_case(profile, permuted) is CaseId.P9
    expected = oracle_member(P9_WIDE, permuted).status
    assert (leftover == 0) == (expected is Verdict.ACCEPTED)
    assert oracle_member(P9_WIDE, word).status is expected


@pytest.mark.parametrize(["word", "decomposition", "leftover"], [
    ("aabbb", ((), ("a", "a"), ("b", "b", "b")), 0),
    ("ababbb", ((), ("a",), ("b",), ("a",), ("b", "b", "b")), 0),
    ("abbab", ((), ("a",), ("b", "b"), ("a",), ("b",)), 1),
    ("abab", ((), ("a",), ("b",), ("a",), ("b",)), 2),
    ("aabb", ((), ("a", "a"), ("b", "b")), 1),
])
def test_moving_a_symbol_across_segments(word, decomposition, leftover):
    profile = segment_profile(classify_psi(P9), word)
    assert profile.decomposition == decomposition
    assert sum(len(s) for s in profile.decomposition) == len(word)
    assert p8_sequence_check(profile) == leftover
    status = oracle_member(P9, word).status
    assert (leftover == 0) == (status is Verdict.ACCEPTED)
