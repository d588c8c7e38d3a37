# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

"""Labeled marked Petri nets and their translation to and from cts systems.

Arcs carry multiplicities. A net without final markings accepts the label
sequence of every firing sequence from the initial marking; with final
markings only sequences ending in one of them count. Silent (λ-labeled)
transitions are only supported under final-marking semantics.
"""

import enum
import functools
import logging
from dataclasses import dataclass
from typing import (Dict, FrozenSet, Iterable, List, Mapping, Optional, Set,
                    Tuple)

from .errors import (LambdaTransition, MultiInputTransition, MultiTokenStart,
                     NonEmittingRule, NotEnabled, SemanticsMismatch,
                     UnknownTransition, WordAlphabetError, WrongFamily)
from .systems import (CtsSystem, G2Production, Rewrite, RlGrammar,
                      RlProduction, SecondGrammar, SystemKind, Verdict)

__all__ = [
    "Semantics",
    "Transition",
    "PetriNet",
    "make_marking",
    "fire",
    "pn_member",
    "cts_to_pn",
    "pn_to_cts",
]

logger = logging.getLogger(__name__)

Marking = Tuple[int, ...]
Arcs = Tuple[Tuple[str, int], ...]


class Semantics(enum.Enum):
    ANY_MARKING = "any"
    FINAL_MARKINGS = "final"


@dataclass(frozen=True)
class Transition:
    id: str
    label: Optional[str]  # None is λ
    inputs: Arcs = ()
    outputs: Arcs = ()


@dataclass(frozen=True)
class PetriNet:
    name: str
    places: Tuple[str, ...]
    transitions: Tuple[Transition, ...]
    initial_marking: Marking
    final_markings: Optional[FrozenSet[Marking]] = None
    alphabet: Tuple[str, ...] = ()

    def __post_init__(self):
        labels = {t.label for t in self.transitions if t.label is not None}
        if not self.alphabet:
            object.__setattr__(self, "alphabet", tuple(sorted(labels)))
        elif not labels <= set(self.alphabet):
            missing = ", ".join(sorted(labels - set(self.alphabet)))
            raise ValueError(
                f"net {self.name!r} labels transitions with {missing}, "
                f"which is not in its alphabet")

    @functools.cached_property
    def place_index(self) -> Dict[str, int]:
        return {p: i for i, p in enumerate(self.places)}

    @functools.cached_property
    def _transition_index(self) -> Dict[str, Transition]:
        return {t.id: t for t in self.transitions}

    @functools.cached_property
    def _vectors(self) -> Dict[str, Tuple[Marking, Marking]]:
        return {t.id: (self.vector(t.inputs), self.vector(t.outputs))
                for t in self.transitions}

    @property
    def is_lambda_free(self) -> bool:
        return all(t.label is not None for t in self.transitions)

    def vector(self, arcs: Iterable[Tuple[str, int]]) -> Marking:
        values = [0] * len(self.places)
        for place, count in arcs:
            values[self.place_index[place]] += count
        return tuple(values)

    def transition(self, transition_id: str) -> Transition:
        try:
            return self._transition_index[transition_id]
        except KeyError:
            raise UnknownTransition(
                f"net {self.name!r} has no transition {transition_id!r}"
            ) from None

    def arc_vectors(self, transition_id: str) -> Tuple[Marking, Marking]:
        self.transition(transition_id)
        return self._vectors[transition_id]


def make_marking(net: PetriNet, tokens: Mapping[str, int]) -> Marking:
    """Build a marking from a place -> token count mapping."""
    return net.vector(tokens.items())


def _fire(marking: Marking, inputs: Marking,
          outputs: Marking) -> Optional[Marking]:
    result = []
    for have, need, add in zip(marking, inputs, outputs):
        if have < need:
            return None
        result.append(have - need + add)
    return tuple(result)


def fire(net: PetriNet, marking: Marking, transition_id: str) -> Marking:
    inputs, outputs = net.arc_vectors(transition_id)
    successor = _fire(tuple(marking), inputs, outputs)
    if successor is None:
        raise NotEnabled(
            f"transition {transition_id!r} is not enabled at {marking}")
    return successor


def _silent_cap(net: PetriNet, length: int) -> int:
    most = max((sum(c for _, c in t.outputs) for t in net.transitions),
               default=0)
    return (sum(net.initial_marking) + length * most + 1) * 4


def pn_member(net: PetriNet, word: Iterable[str],
              semantics: Semantics = Semantics.ANY_MARKING,
              max_silent_tokens: Optional[int] = None) -> Verdict:
    """Decide whether ``word`` labels a firing sequence of ``net``.

    For λ-free nets the answer is exact. Silent transitions are closed after
    every symbol, dropping markings with more than ``max_silent_tokens``
    tokens; a negative answer after such a drop is INCONCLUSIVE.
    """
    symbols = tuple(word)
    alphabet = set(net.alphabet)
    for symbol in symbols:
        if symbol not in alphabet:
            raise WordAlphabetError(
                f"{symbol!r} is not in the alphabet of net {net.name!r}")
    if semantics is Semantics.FINAL_MARKINGS and net.final_markings is None:
        raise SemanticsMismatch(
            f"net {net.name!r} declares no final markings")
    if semantics is Semantics.ANY_MARKING and not net.is_lambda_free:
        raise SemanticsMismatch(
            f"net {net.name!r} has λ-transitions, which are only supported "
            f"with final-marking semantics")
    if max_silent_tokens is None:
        max_silent_tokens = _silent_cap(net, len(symbols))

    labeled: Dict[str, List[Tuple[Marking, Marking]]] = {}
    silent: List[Tuple[Marking, Marking]] = []
    for t in net.transitions:
        vectors = net.arc_vectors(t.id)
        if t.label is None:
            silent.append(vectors)
        else:
            labeled.setdefault(t.label, []).append(vectors)

    capped = False

    def close(markings: Set[Marking]) -> Set[Marking]:
        nonlocal capped
        if not silent:
            return markings
        seen = set(markings)
        pending = list(markings)
        while pending:
            marking = pending.pop()
            for inputs, outputs in silent:
                successor = _fire(marking, inputs, outputs)
                if successor is None or successor in seen:
                    continue
                if sum(successor) > max_silent_tokens:
                    capped = True
                    continue
                seen.add(successor)
                pending.append(successor)
        return seen

    layer = close({tuple(net.initial_marking)})
    for symbol in symbols:
        following = set()
        for marking in layer:
            for inputs, outputs in labeled.get(symbol, ()):
                successor = _fire(marking, inputs, outputs)
                if successor is not None:
                    following.add(successor)
        layer = close(following)
        if not layer:
            break
    logger.debug("pn_member %s: %d markings in the final layer", net.name,
                 len(layer))

    if semantics is Semantics.ANY_MARKING:
        return Verdict.ACCEPTED if layer else Verdict.REJECTED
    assert net.final_markings is not None
    if layer & net.final_markings:
        return Verdict.ACCEPTED
    if capped:
        logger.warning("pn_member %s: λ-closure cut at %d tokens", net.name,
                       max_silent_tokens)
        return Verdict.INCONCLUSIVE
    return Verdict.REJECTED


def _arcs(counts: Dict[str, int]) -> Arcs:
    return tuple((p, c) for p, c in counts.items() if c)


def cts_to_pn(system: CtsSystem) -> PetriNet:
    """Encode an (RL;0S) system whose rewrites all emit as a net.

    Places are the G1 and G2 nonterminals; the zero marking is the only
    final marking.
    """
    if system.kind is not SystemKind.ZERO_SEQUENTIAL:
        raise WrongFamily(
            f"system {system.name!r} is right-boundary, only (RL;0S) "
            f"systems translate to nets")
    for step in system.steps:
        if step.emit is None:
            raise NonEmittingRule(
                f"rewrite {step.rewrite_id!r} emits no terminal")

    g1_places = system.g1.nonterminals
    g2_places = {}
    taken = set(g1_places)
    for symbol in system.g2.nonterminals:
        place = symbol
        while place in taken:
            place = f"g2_{place}"
        taken.add(place)
        g2_places[symbol] = place
    places = g1_places + tuple(g2_places[b] for b in system.g2.nonterminals)

    transitions = []
    for step in system.steps:
        inputs = {step.lhs1: 1}
        inputs[g2_places[step.lhs2]] = 1
        outputs: Dict[str, int] = {}
        if step.next1 is not None:
            outputs[step.next1] = 1
        for symbol in step.rhs2:
            place = g2_places[symbol]
            outputs[place] = outputs.get(place, 0) + 1
        transitions.append(Transition(step.rewrite_id, step.emit,
                                      _arcs(inputs), _arcs(outputs)))

    initial = tuple(
        1 if p in (system.g1.axiom, g2_places[system.g2.axiom]) else 0
        for p in places)
    return PetriNet(name=system.name, places=places,
                    transitions=tuple(transitions),
                    initial_marking=initial,
                    final_markings=frozenset({(0,) * len(places)}),
                    alphabet=system.g1.terminals)


def pn_to_cts(net: PetriNet) -> CtsSystem:
    """Encode a net with single-input transitions as an (RL;0S) system.

    Each transition ``t`` labeled ``a`` consuming one token from ``p`` gives
    the rewrites ``t_go`` = (S1 -> a S1, p -> β) and ``t_end`` =
    (S1 -> a, p -> β), β listing the output tokens.
    """
    zero = (0,) * len(net.places)
    if sorted(net.initial_marking) != [0] * (len(net.places) - 1) + [1]:
        raise MultiTokenStart(
            f"net {net.name!r} must start with a single token")
    for t in net.transitions:
        if t.label is None:
            raise LambdaTransition(f"transition {t.id!r} is λ-labeled")
        if len(t.inputs) != 1 or t.inputs[0][1] != 1:
            raise MultiInputTransition(
                f"transition {t.id!r} must consume exactly one token from "
                f"one place")
    if net.final_markings != frozenset({zero}):
        raise SemanticsMismatch(
            f"net {net.name!r} must have the zero marking as its only final "
            f"marking")
    if not net.transitions:
        raise SemanticsMismatch(f"net {net.name!r} has no transitions")

    terminals = net.alphabet
    state = "S1"
    while state in terminals:
        state += "_"
    start = net.places[net.initial_marking.index(1)]

    g1_productions: Dict[RlProduction, None] = {}
    g2_productions: Dict[G2Production, int] = {}
    rewrites = []
    for t in net.transitions:
        assert t.label is not None
        outputs = net.vector(t.outputs)
        beta = tuple(p for p, c in zip(net.places, outputs) for _ in range(c))
        g2 = G2Production(t.inputs[0][0], beta)
        index = g2_productions.setdefault(g2, len(g2_productions))
        for suffix, rhs in (("go", (t.label, state)), ("end", (t.label,))):
            g1 = RlProduction(state, rhs)
            g1_productions.setdefault(g1)
            rewrites.append(Rewrite(f"{t.id}_{suffix}", g1, index))
    return CtsSystem(
        name=net.name,
        g1=RlGrammar(terminals, (state,), state, tuple(g1_productions)),
        g2=SecondGrammar(SystemKind.ZERO_SEQUENTIAL, net.places, start,
                         tuple(g2_productions)),
        rewrites=tuple(rewrites))
