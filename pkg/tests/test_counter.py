# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

from pathlib import Path

from ctslab.counter import (CounterConfig, CounterOp, DiagramNode,
                            FINAL_NODE, Mode, build_state_diagram,
                            counter_cap, counter_layers, counter_member,
                            diagram_to_dot, diagram_to_json)
from ctslab.cts_format import load_system
from ctslab.errors import WrongFamily
from ctslab.oracle import enumerate_language, oracle_member
from ctslab.systems import Family, Verdict, classify_shape

import hypothesis.strategies as st
from hypothesis import given, settings

from lark import Lark

import pytest

from .strategies import TERMINALS, all_words, counter_systems

DATA = Path(__file__).parent / "data"
EX51 = load_system(DATA / "ex51.cts")
EX52 = load_system(DATA / "ex52.cts")
EX53 = load_system(DATA / "ex53.cts")
EX53_VARIANT = load_system(DATA / "ex53_variant.cts")
EX6 = load_system(DATA / "ex6.cts")

DOT_GRAMMAR = r"""
    start: "digraph" ID "{" stmt* "}"
    stmt: ID attrs?                    -> node
        | ID "->" ID attrs?            -> edge
        | ("graph" | "node" | "edge") attrs -> defaults
    attrs: "[" attr* "]"
    attr: ID "=" (ID | STRING)
    ID: /[A-Za-z_][A-Za-z0-9_]*/
    STRING: /"([^"\\]|\\.)*"/
    %ignore /\s+/
"""

DOT_PARSER = Lark(DOT_GRAMMAR, parser="lalr")


def node(nonterminal, mode):
    return DiagramNode(nonterminal, mode)


def test_diagram_of_example_52():
    diagram = build_state_diagram(EX52)
    assert [n.id for n in diagram.nodes] == [
        "S1__S2", "S1__Z2", "X__S2", "X__Z2", "F"]
    assert diagram.initial == node("S1", Mode.BOTTOM)
    edges = {(e.source.id, e.target.id, e.label) for e in diagram.edges}
    assert len(diagram.edges) == 7
    assert edges == {
        ("S1__S2", "S1__Z2", "~/+"),
        ("S1__Z2", "S1__Z2", "a/+"),
        ("S1__Z2", "X__Z2", "~/-"),
        ("S1__Z2", "X__S2", "~/-"),
        ("X__Z2", "X__Z2", "b/-"),
        ("X__Z2", "X__S2", "b/-"),
        ("X__S2", "F", "~"),
    }


def test_diagram_node_labels():
    diagram = build_state_diagram(EX52)
    assert diagram.node_label(node("X", Mode.COUNTER)) == "(X,Z2)"
    assert diagram.node_label(FINAL_NODE) == "F"


def test_diagram_keep_edge():
    diagram = build_state_diagram(EX53_VARIANT)
    ops = {e.rewrite_id: e.op for e in diagram.edges}
    assert ops["r1"] is CounterOp.PLUS
    assert ops["r2"] is CounterOp.MINUS
    assert ops["r4"] is CounterOp.NONE


@pytest.mark.parametrize("system", [EX51, EX53, EX6])
def test_diagram_wrong_family(system):
    with pytest.raises(WrongFamily) as error:
        build_state_diagram(system)
    error.match("state diagram")


def test_dot_output_parses():
    source = diagram_to_dot(build_state_diagram(EX52))
    tree = DOT_PARSER.parse(source)
    assert str(tree.children[0]) == "ex52"
    edges = list(tree.find_data("edge"))
    nodes = list(tree.find_data("node"))
    assert len(edges) == 7
    assert len(nodes) == 5
    assert '"~/+"' in source
    assert "doublecircle" in source


def dot_node_attributes(source):
    attributes = {}
    for node in DOT_PARSER.parse(source).find_data("node"):
        name = str(node.children[0])
        attributes[name] = {}
        for attr in node.find_data("attr"):
            key, value = attr.children
            attributes[name][str(key)] = str(value).strip('"')
    return attributes


def test_dot_marks_initial_and_final_nodes():
    attributes = dot_node_attributes(
        diagram_to_dot(build_state_diagram(EX52)))
    assert attributes["S1__S2"]["shape"] == "doublecircle"
    assert attributes["S1__S2"]["xlabel"] == "start"
    assert attributes["F"]["shape"] == "doublecircle"
    assert "xlabel" not in attributes["F"]
    assert "shape" not in attributes["X__Z2"]


def test_diagram_to_json():
    data = diagram_to_json(build_state_diagram(EX52))
    assert data["name"] == "ex52"
    assert data["initial"] == "S1__S2"
    assert [n["id"] for n in data["nodes"] if n["final"]] == ["F"]
    push = [e for e in data["edges"] if e["rewrite"] == "r2"]
    assert push == [{"source": "S1__Z2", "target": "S1__Z2",
                     "label": "a/+", "read": "a", "op": "plus",
                     "rewrite": "r2"}]
    assert {e["op"] for e in data["edges"]} == {"plus", "minus", "none"}


def test_counter_cap():
    assert counter_cap(EX52, 4) == 5 * 5 + 1
    assert counter_cap(EX53, 0) == 4


@pytest.mark.parametrize(["system", "word", "verdict"], [
    (EX52, "", Verdict.ACCEPTED),
    (EX52, "aabb", Verdict.ACCEPTED),
    (EX52, "aab", Verdict.REJECTED),
    (EX52, "ba", Verdict.REJECTED),
    (EX51, "aabb", Verdict.ACCEPTED),
    (EX51, "ba", Verdict.REJECTED),
    (EX51, "", Verdict.REJECTED),
    (EX53, "aabbab", Verdict.ACCEPTED),
    (EX53, "abba", Verdict.REJECTED),
    (EX53_VARIANT, "ab", Verdict.ACCEPTED),
    (EX53_VARIANT, "abb", Verdict.REJECTED),
])
def test_counter_member(system, word, verdict):
    assert counter_member(system, word) is verdict


@pytest.mark.timeout(120)
@pytest.mark.parametrize(["system", "low"], [(EX51, 1), (EX52, 0)])
def test_counter_enumerates_anbn(system, low):
    expected = {("a",) * n + ("b",) * n for n in range(low, 7)}
    accepted = {word for word in all_words(("a", "b"), 12)
                if counter_member(system, word) is Verdict.ACCEPTED}
    assert accepted == expected


def test_counter_layers_example_51():
    layers = counter_layers(EX51, "ab")
    start = DiagramNode("S1", Mode.COUNTER)
    # r2 may already hand over to X, emptying the counter.
    assert layers.layers[0] == frozenset({
        CounterConfig(start, 1),
        CounterConfig(DiagramNode("X", Mode.COUNTER), 0)})
    assert CounterConfig(FINAL_NODE, 0) in layers.layers[-1]
    assert layers.max_counter() == 2
    assert layers.cap == counter_cap(EX51, 2)


def test_bottom_mode_needs_empty_counter():
    # After "a" the counter is 1, so no (X, S2) configuration can exist.
    layers = counter_layers(EX52, "a")
    assert CounterConfig(DiagramNode("X", Mode.BOTTOM), 1) \
        not in layers.layers[1]
    assert CounterConfig(DiagramNode("X", Mode.COUNTER), 1) \
        in layers.layers[1]


def test_counter_member_wrong_family():
    with pytest.raises(WrongFamily):
        counter_member(EX6, "abc")


@pytest.mark.parametrize(["bottom", "one_state", "family"], [
    (True, False, Family.RL_RBC),
    (False, False, Family.RL0_RBC),
    (True, True, Family.RL1_RBC),
    (False, True, Family.RL01_RBC),
])
def test_agrees_with_oracle(bottom, one_state, family):
    @settings(max_examples=50, deadline=None)
    @given(system=counter_systems(bottom, one_state))
    def check(system):
        assert classify_shape(system).family is family
        language = enumerate_language(system, 8)
        for word in all_words(system.g1.terminals, 8):
            verdict = counter_member(system, word)
            if word in language.words:
                assert verdict is Verdict.ACCEPTED
            elif language.complete:
                assert verdict is Verdict.REJECTED
            elif verdict is Verdict.ACCEPTED:
                status = oracle_member(system, word).status
                assert status is not Verdict.REJECTED

    check()


@pytest.mark.parametrize(["bottom", "one_state"], [
    (True, False), (False, False), (True, True), (False, True),
])
def test_chain_free_counter_bound(bottom, one_state):
    @settings(max_examples=50, deadline=None)
    @given(system=counter_systems(bottom, one_state, real_time=True),
           word=st.lists(st.sampled_from(TERMINALS), max_size=12))
    def check(system, word):
        layers = counter_layers(system, word)
        assert layers.max_counter() <= len(word) + 1

    check()
