# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

"""Counter systems: right-boundary systems over a bottom marker and a
counter symbol.

The right-boundary sentential form of such a system is always the bottom
marker followed by a run of counter symbols, so it is described by a mode
(which symbol is rightmost) and the length of the run. The state diagram
pairs each G1 nonterminal with a mode; membership walks it with an explicit
counter. Systems without a bottom marker are simulated on (nonterminal,
counter) pairs directly.
"""

import enum
import functools
import logging
from dataclasses import dataclass
from typing import (Callable, Dict, FrozenSet, Iterable, Iterator, List,
                    Optional, Set, Tuple)

from graphviz import Digraph

from .errors import WrongFamily
from .systems import (BOTTOMLESS_FAMILIES, CtsSystem, DIAGRAM_FAMILIES,
                      LAMBDA, Verdict, check_word, classify_shape,
                      counter_roles)

__all__ = [
    "Mode",
    "CounterOp",
    "DiagramNode",
    "DiagramEdge",
    "StateDiagram",
    "CounterConfig",
    "CounterLayers",
    "FINAL_NODE",
    "build_state_diagram",
    "diagram_to_dot",
    "diagram_to_json",
    "counter_cap",
    "counter_layers",
    "counter_member",
]

logger = logging.getLogger(__name__)


class Mode(enum.Enum):
    BOTTOM = "S2"
    COUNTER = "Z2"


class CounterOp(enum.Enum):
    PLUS = "+"
    MINUS = "-"
    ZERO = "0"
    NONE = ""


@dataclass(frozen=True)
class DiagramNode:
    """A (nonterminal, mode) pair; the node without either is final."""
    nonterminal: Optional[str] = None
    mode: Optional[Mode] = None

    @property
    def is_final(self) -> bool:
        return self.nonterminal is None

    @property
    def id(self) -> str:
        if self.is_final:
            return "F"
        mode = self.mode.value if self.mode is not None else "Z2"
        return f"{self.nonterminal}__{mode}"


FINAL_NODE = DiagramNode()


@dataclass(frozen=True)
class DiagramEdge:
    source: DiagramNode
    target: DiagramNode
    read: Optional[str]
    op: CounterOp
    rewrite_id: str

    @property
    def label(self) -> str:
        symbol = LAMBDA if self.read is None else self.read
        if self.op is CounterOp.NONE:
            return symbol
        return f"{symbol}/{self.op.value}"


@dataclass(frozen=True)
class StateDiagram:
    name: str
    nodes: Tuple[DiagramNode, ...]
    edges: Tuple[DiagramEdge, ...]
    initial: DiagramNode
    bottom: str
    counter: str

    def node_label(self, node: DiagramNode) -> str:
        if node.is_final:
            return "F"
        symbol = self.bottom if node.mode is Mode.BOTTOM else self.counter
        return f"({node.nonterminal},{symbol})"

    @functools.cached_property
    def outgoing(self) -> Dict[DiagramNode, Tuple[DiagramEdge, ...]]:
        table: Dict[DiagramNode, List[DiagramEdge]] = {
            node: [] for node in self.nodes}
        for edge in self.edges:
            table[edge.source].append(edge)
        return {node: tuple(edges) for node, edges in table.items()}


@dataclass(frozen=True)
class CounterConfig:
    node: DiagramNode
    counter: int


@dataclass(frozen=True)
class CounterLayers:
    layers: Tuple[FrozenSet[CounterConfig], ...]
    cap: int

    @property
    def accepted(self) -> bool:
        return CounterConfig(FINAL_NODE, 0) in self.layers[-1]

    def max_counter(self) -> int:
        return max((c.counter for layer in self.layers for c in layer),
                   default=0)


def build_state_diagram(system: CtsSystem) -> StateDiagram:
    """Construct the state diagram of an (RL;RB_c) system.

    A rewrite that keeps the rightmost symbol gives an x/0 edge, one that
    pushes a counter symbol an x/+ edge, and one that pops a counter symbol
    two x/- edges, one for each mode the pop may leave behind. Deleting the
    bottom marker while G1 finishes leads to the final node.
    """
    family = classify_shape(system).family
    if family not in DIAGRAM_FAMILIES:
        raise WrongFamily(
            f"system {system.name!r} is {family.value}, a state diagram "
            f"needs an (RL;RB_c) system")
    bottom, counter = counter_roles(system)
    assert bottom is not None
    mode_of = {bottom: Mode.BOTTOM, counter: Mode.COUNTER}

    nodes = [DiagramNode(x, mode) for x in system.g1.nonterminals
             for mode in (Mode.BOTTOM, Mode.COUNTER)]
    nodes.append(FINAL_NODE)
    edges = []
    for step in system.steps:
        mode = mode_of[step.lhs2]
        source = DiagramNode(step.lhs1, mode)
        if step.next1 is None:
            if step.lhs2 == bottom and not step.rhs2:
                edges.append(DiagramEdge(source, FINAL_NODE, step.emit,
                                         CounterOp.NONE, step.rewrite_id))
            continue
        if step.rhs2 == (step.lhs2,):
            edges.append(DiagramEdge(source, DiagramNode(step.next1, mode),
                                     step.emit, CounterOp.ZERO,
                                     step.rewrite_id))
        elif step.rhs2 == (step.lhs2, counter):
            edges.append(DiagramEdge(
                source, DiagramNode(step.next1, Mode.COUNTER), step.emit,
                CounterOp.PLUS, step.rewrite_id))
        elif step.lhs2 == counter and not step.rhs2:
            for target_mode in (Mode.COUNTER, Mode.BOTTOM):
                edges.append(DiagramEdge(
                    source, DiagramNode(step.next1, target_mode), step.emit,
                    CounterOp.MINUS, step.rewrite_id))
    logger.debug("state diagram of %s: %d nodes, %d edges", system.name,
                 len(nodes), len(edges))
    return StateDiagram(system.name, tuple(nodes), tuple(edges),
                        DiagramNode(system.g1.axiom, Mode.BOTTOM),
                        bottom, counter)


def diagram_to_dot(diagram: StateDiagram) -> str:
    graph = Digraph(name=diagram.name, graph_attr={"rankdir": "LR"},
                    node_attr={"shape": "circle"})
    for node in diagram.nodes:
        attributes = {}
        if node.is_final or node == diagram.initial:
            attributes["shape"] = "doublecircle"
        if node == diagram.initial:
            attributes["xlabel"] = "start"
        graph.node(node.id, label=diagram.node_label(node), **attributes)
    for edge in diagram.edges:
        graph.edge(edge.source.id, edge.target.id, label=edge.label)
    return graph.source


def diagram_to_json(diagram: StateDiagram) -> dict:
    return {
        "name": diagram.name,
        "initial": diagram.initial.id,
        "nodes": [{"id": node.id,
                   "label": diagram.node_label(node),
                   "final": node.is_final} for node in diagram.nodes],
        "edges": [{"source": edge.source.id,
                   "target": edge.target.id,
                   "label": edge.label,
                   "read": edge.read,
                   "op": edge.op.name.lower(),
                   "rewrite": edge.rewrite_id} for edge in diagram.edges],
    }


def counter_cap(system: CtsSystem, length: int) -> int:
    return (length + 1) * (2 * len(system.g1.nonterminals) + 1) + 1


_Successors = Callable[[CounterConfig],
                       Iterator[Tuple[Optional[str], CounterConfig]]]


def _diagram_successors(diagram: StateDiagram, cap: int) -> _Successors:
    outgoing = diagram.outgoing

    def successors(config: CounterConfig):
        for edge in outgoing[config.node]:
            value = config.counter
            if edge.op is CounterOp.PLUS:
                value += 1
            elif edge.op is CounterOp.MINUS:
                if value == 0:
                    continue
                value -= 1
            target = edge.target
            # Bottom mode holds exactly when the counter is empty.
            if not target.is_final and \
                    (target.mode is Mode.BOTTOM) != (value == 0):
                continue
            if value > cap:
                continue
            yield edge.read, CounterConfig(target, value)

    return successors


def _bottomless_successors(system: CtsSystem, cap: int) -> _Successors:
    by_state: Dict[str, list] = {}
    for step in system.steps:
        by_state.setdefault(step.lhs1, []).append(step)

    def successors(config: CounterConfig):
        state = config.node.nonterminal
        if state is None or config.counter == 0:
            return
        for step in by_state.get(state, ()):
            value = config.counter + len(step.rhs2) - 1
            if value > cap:
                continue
            if step.next1 is None:
                # G2 symbols left after G1 finished never go away.
                if value:
                    continue
                target = FINAL_NODE
            else:
                target = DiagramNode(step.next1, Mode.COUNTER)
            yield step.emit, CounterConfig(target, value)

    return successors


def _close(configs: Iterable[CounterConfig],
           successors: _Successors) -> FrozenSet[CounterConfig]:
    seen: Set[CounterConfig] = set(configs)
    pending = list(seen)
    while pending:
        config = pending.pop()
        for read, successor in successors(config):
            if read is None and successor not in seen:
                seen.add(successor)
                pending.append(successor)
    return frozenset(seen)


def counter_layers(system: CtsSystem, word: Iterable[str],
                   cap: Optional[int] = None) -> CounterLayers:
    """Configurations reachable after each prefix of ``word``."""
    family = classify_shape(system).family
    symbols = check_word(system, word)
    if cap is None:
        cap = counter_cap(system, len(symbols))
    if family in DIAGRAM_FAMILIES:
        diagram = build_state_diagram(system)
        successors = _diagram_successors(diagram, cap)
        start = CounterConfig(diagram.initial, 0)
    elif family in BOTTOMLESS_FAMILIES:
        successors = _bottomless_successors(system, cap)
        start = CounterConfig(DiagramNode(system.g1.axiom, Mode.COUNTER), 1)
    else:
        raise WrongFamily(
            f"system {system.name!r} is {family.value}, the counter "
            f"recognizer needs an (RL;RB_c) or (RL0;RB_c) system")

    layer = _close([start], successors)
    layers = [layer]
    for symbol in symbols:
        following = set()
        for config in layer:
            for read, successor in successors(config):
                if read == symbol:
                    following.add(successor)
        layer = _close(following, successors)
        layers.append(layer)
    logger.debug("counter search on %s: cap %d, layer sizes %s",
                 system.name, cap, [len(layer) for layer in layers])
    return CounterLayers(tuple(layers), cap)


def counter_member(system: CtsSystem, word: Iterable[str],
                   cap: Optional[int] = None) -> Verdict:
    if counter_layers(system, word, cap).accepted:
        return Verdict.ACCEPTED
    return Verdict.REJECTED
