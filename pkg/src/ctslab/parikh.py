# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

"""Membership for real-time (RL;0S) systems by Parikh vector simulation.

A 0-sequential G2 may rewrite any occurrence of a nonterminal, so only the
occurrence counts of its sentential form matter. A configuration is the
active G1 nonterminal and that count vector; every input symbol moves the
whole set of configurations one layer forward.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .errors import NotRealTime, NotZeroSequential
from .systems import (CtsSystem, Family, Step, Verdict, check_word,
                      classify_shape)

__all__ = ["ParikhConfig", "ParikhLayers", "parikh_layers",
           "recognize_rt_0s", "max_growth"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParikhConfig:
    state: Optional[str]
    parikh: Tuple[int, ...]


@dataclass(frozen=True)
class ParikhLayers:
    layers: Tuple[FrozenSet[ParikhConfig], ...]
    accepting: ParikhConfig

    @property
    def accepted(self) -> bool:
        return self.accepting in self.layers[-1]

    def max_entry(self) -> int:
        return max((max(c.parikh, default=0) for layer in self.layers
                    for c in layer), default=0)


def max_growth(system: CtsSystem) -> int:
    """Largest positive net-effect entry over the rewrites of a system."""
    return max((e for step in system.steps for e in step.effect),
               default=0)


def _require_real_time_0s(system: CtsSystem):
    shape = classify_shape(system)
    if shape.family is not Family.RL_0S:
        raise NotZeroSequential(
            f"system {system.name!r} is {shape.family.value}, the Parikh "
            f"recognizer needs an (RL;0S) system")
    if not shape.real_time:
        raise NotRealTime(
            f"system {system.name!r} has chain rules, the Parikh recognizer "
            f"needs a real-time system")


def _fire(config: ParikhConfig, step: Step,
          index: Dict[str, int]) -> Optional[ParikhConfig]:
    position = index[step.lhs2]
    if config.parikh[position] == 0:
        return None
    vector = tuple(c + e for c, e in zip(config.parikh, step.effect))
    return ParikhConfig(step.next1, vector)


def parikh_layers(system: CtsSystem, word: Iterable[str]) -> ParikhLayers:
    """Every configuration reachable after each prefix of ``word``.

    The last layer also holds the configurations reached by one trailing
    X -> λ rewrite.
    """
    _require_real_time_0s(system)
    symbols = check_word(system, word)
    index = system.g2_order
    reading: Dict[Tuple[str, str], List[Step]] = {}
    closing: Dict[str, List[Step]] = {}
    for step in system.steps:
        if step.emit is None:
            closing.setdefault(step.lhs1, []).append(step)
        else:
            reading.setdefault((step.lhs1, step.emit), []).append(step)

    start = tuple(1 if b == system.g2.axiom else 0
                  for b in system.g2.nonterminals)
    layer: Set[ParikhConfig] = {ParikhConfig(system.g1.axiom, start)}
    layers = []
    for symbol in symbols:
        layers.append(frozenset(layer))
        following = set()
        for config in layer:
            if config.state is None:
                continue
            for step in reading.get((config.state, symbol), ()):
                successor = _fire(config, step, index)
                if successor is not None:
                    following.add(successor)
        layer = following
        logger.debug("parikh %s: %d configurations after %r", system.name,
                     len(layer), symbol)
    closed = set(layer)
    for config in layer:
        if config.state is None:
            continue
        for step in closing.get(config.state, ()):
            successor = _fire(config, step, index)
            if successor is not None:
                closed.add(successor)
    layers.append(frozenset(closed))
    accepting = ParikhConfig(None, (0,) * len(system.g2.nonterminals))
    return ParikhLayers(tuple(layers), accepting)


def recognize_rt_0s(system: CtsSystem, word: Iterable[str]) -> Verdict:
    if parikh_layers(system, word).accepted:
        return Verdict.ACCEPTED
    return Verdict.REJECTED
