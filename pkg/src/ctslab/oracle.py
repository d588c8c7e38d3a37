# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

"""Exhaustive derivation search.

The oracle explores snapshots layer by layer, one layer per emitted
terminal. Inside a layer, rewrites that emit nothing are closed in order of
derivation length so each stored snapshot carries its shortest step count.
Three limits keep the search finite; when one of them cuts the search, a
negative answer becomes INCONCLUSIVE.
"""

import heapq
import itertools
import logging
import os
from dataclasses import dataclass
from typing import (Callable, Dict, FrozenSet, Iterable, List, Optional,
                    Tuple)

from .systems import (CtsSystem, Snapshot, Step, Verdict, Word, apply_g2,
                      check_word, classify_shape, derive_step,
                      initial_snapshot)

__all__ = [
    "DEFAULT_MAX_FRONTIER",
    "FORM2_SIZE_FACTOR",
    "STEP_FACTOR",
    "OracleLimits",
    "OracleVerdict",
    "LanguageResult",
    "default_limits",
    "oracle_member",
    "enumerate_language",
    "replay_witness",
    "sort_words",
]

logger = logging.getLogger(__name__)

DEFAULT_MAX_FRONTIER = 10 ** 6
FORM2_SIZE_FACTOR = 4
STEP_FACTOR = 64
MAX_FRONTIER_ENV = "CTSLAB_MAX_FRONTIER"

LIMIT_FORM2_SIZE = "max_form2_size"
LIMIT_STEPS = "max_steps"
LIMIT_FRONTIER = "max_frontier"


@dataclass(frozen=True)
class OracleLimits:
    max_form2_size: int
    max_steps: int
    max_frontier: int

    def __post_init__(self):
        for name in ("max_form2_size", "max_steps", "max_frontier"):
            value = getattr(self, name)
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class OracleVerdict:
    status: Verdict
    witness: Optional[Tuple[str, ...]] = None
    limit_hit: Optional[str] = None


@dataclass(frozen=True)
class LanguageResult:
    words: FrozenSet[Word]
    complete: bool
    limit_hit: Optional[str] = None


def _max_frontier() -> int:
    value = os.environ.get(MAX_FRONTIER_ENV)
    if value is None:
        return DEFAULT_MAX_FRONTIER
    try:
        frontier = int(value)
    except ValueError:
        raise ValueError(f"{MAX_FRONTIER_ENV} should be an integer, "
                         f"got {value!r}") from None
    if frontier <= 0:
        raise ValueError(f"{MAX_FRONTIER_ENV} should be positive, "
                         f"got {frontier}")
    return frontier


def _max_growth(system: CtsSystem) -> int:
    return max((len(s.rhs2) - 1 for s in system.steps), default=0)


def default_limits(word_length: int,
                   system: Optional[CtsSystem] = None) -> OracleLimits:
    """Limits for a word (or all words) of the given length.

    For a real-time system the form2 cap is raised so that it can never cut
    a derivation: each of the at most n + 1 steps grows form2 by at most the
    largest right-hand side minus one.
    """
    size = FORM2_SIZE_FACTOR * (word_length + 2)
    if system is not None and classify_shape(system).real_time:
        size = max(size, 1 + max(_max_growth(system), 0) * (word_length + 1))
    return OracleLimits(max_form2_size=size,
                        max_steps=STEP_FACTOR * (word_length + 2),
                        max_frontier=_max_frontier())


_Key = Tuple[Word, Optional[str], Tuple[str, ...]]


class _FrontierExceeded(Exception):
    pass


class _DerivationSearch:
    """Layered snapshot search shared by membership and enumeration."""

    def __init__(self, system: CtsSystem, limits: OracleLimits,
                 keep_parents: bool):
        self.system = system
        self.limits = limits
        self.keep_parents = keep_parents
        self.parents: Dict[_Key, Tuple[_Key, str]] = {}
        self.limit_hit: Optional[str] = None
        self.emitting: Dict[str, List[Step]] = {}
        self.silent: Dict[str, List[Step]] = {}
        for step in system.steps:
            table = self.silent if step.emit is None else self.emitting
            table.setdefault(step.lhs1, []).append(step)

    def _hit(self, limit: str):
        if self.limit_hit is None:
            logger.debug("oracle limit %s reached", limit)
            self.limit_hit = limit

    def _successor(self, key: _Key, step: Step) -> Optional[_Key]:
        form2 = apply_g2(self.system, key[2], step)
        if form2 is None:
            return None
        if len(form2) > self.limits.max_form2_size:
            self._hit(LIMIT_FORM2_SIZE)
            return None
        emitted = key[0] if step.emit is None else key[0] + (step.emit,)
        return emitted, step.next1, form2

    def close(self, seeds: Dict[_Key, int]) -> Dict[_Key, int]:
        """Close a layer under rewrites that emit nothing."""
        best = dict(seeds)
        counter = itertools.count()
        heap = [(steps, next(counter), key) for key, steps in seeds.items()]
        heapq.heapify(heap)
        while heap:
            steps, _, key = heapq.heappop(heap)
            if steps > best[key]:
                continue
            active = key[1]
            if active is None or not key[2]:
                continue
            for step in self.silent.get(active, ()):
                if steps >= self.limits.max_steps:
                    self._hit(LIMIT_STEPS)
                    break
                successor = self._successor(key, step)
                if successor is None:
                    continue
                if steps + 1 < best.get(successor, self.limits.max_steps + 1):
                    best[successor] = steps + 1
                    if self.keep_parents:
                        self.parents[successor] = (key, step.rewrite_id)
                    heapq.heappush(heap, (steps + 1, next(counter), successor))
                    if len(best) > self.limits.max_frontier:
                        self._hit(LIMIT_FRONTIER)
                        raise _FrontierExceeded()
        return best

    def advance(self, layer: Dict[_Key, int],
                allowed: Callable[[Word, str], bool]) -> Dict[_Key, int]:
        """Fire every emitting rewrite allowed at the layer's prefixes."""
        seeds: Dict[_Key, int] = {}
        for key, steps in layer.items():
            active = key[1]
            if active is None or not key[2]:
                continue
            for step in self.emitting.get(active, ()):
                if not allowed(key[0], step.emit):
                    continue
                if steps >= self.limits.max_steps:
                    self._hit(LIMIT_STEPS)
                    break
                successor = self._successor(key, step)
                if successor is None:
                    continue
                if steps + 1 < seeds.get(successor, self.limits.max_steps + 1):
                    seeds[successor] = steps + 1
                    if self.keep_parents:
                        self.parents[successor] = (key, step.rewrite_id)
        if len(seeds) > self.limits.max_frontier:
            self._hit(LIMIT_FRONTIER)
            raise _FrontierExceeded()
        return self.close(seeds)

    def witness(self, key: _Key) -> Tuple[str, ...]:
        path = []
        while key in self.parents:
            key, rewrite_id = self.parents[key]
            path.append(rewrite_id)
        return tuple(reversed(path))


def _initial_key(system: CtsSystem) -> _Key:
    snapshot = initial_snapshot(system)
    return snapshot.emitted, snapshot.active, snapshot.form2


def oracle_member(system: CtsSystem, word: Iterable[str],
                  limits: Optional[OracleLimits] = None) -> OracleVerdict:
    """Decide ``word`` ∈ L(system) by exhaustive derivation search."""
    symbols = check_word(system, word)
    if limits is None:
        limits = default_limits(len(symbols), system)
    search = _DerivationSearch(system, limits, keep_parents=True)

    def allowed(prefix: Word, symbol: str) -> bool:
        return symbol == symbols[len(prefix)]

    try:
        layer = search.close({_initial_key(system): 0})
        for _ in range(len(symbols)):
            if not layer:
                break
            layer = search.advance(layer, allowed)
    except _FrontierExceeded:
        logger.warning("oracle frontier exceeded %d snapshots",
                       limits.max_frontier)
        return OracleVerdict(Verdict.INCONCLUSIVE,
                             limit_hit=search.limit_hit)
    final = (symbols, None, ())
    if final in layer:
        return OracleVerdict(Verdict.ACCEPTED, witness=search.witness(final))
    if search.limit_hit is not None:
        return OracleVerdict(Verdict.INCONCLUSIVE,
                             limit_hit=search.limit_hit)
    return OracleVerdict(Verdict.REJECTED)


def enumerate_language(system: CtsSystem, max_len: int,
                       limits: Optional[OracleLimits] = None
                       ) -> LanguageResult:
    """All words of length at most ``max_len`` in L(system).

    One search shares derivation prefixes between words. ``complete`` is
    False when a limit cut the search; words found are still members.
    """
    if max_len < 0:
        raise ValueError(f"max_len must be non-negative, got {max_len}")
    if limits is None:
        limits = default_limits(max_len, system)
    search = _DerivationSearch(system, limits, keep_parents=False)
    words = set()

    def allowed(prefix: Word, symbol: str) -> bool:
        return True

    def collect(layer):
        for emitted, active, form2 in layer:
            if active is None and not form2:
                words.add(emitted)

    try:
        layer = search.close({_initial_key(system): 0})
        collect(layer)
        for length in range(max_len):
            if not layer:
                break
            layer = search.advance(layer, allowed)
            logger.debug("enumerate %s: %d snapshots at length %d",
                         system.name, len(layer), length + 1)
            collect(layer)
    except _FrontierExceeded:
        logger.warning("enumeration of %s stopped: frontier exceeded %d "
                       "snapshots", system.name, limits.max_frontier)
    return LanguageResult(frozenset(words), search.limit_hit is None,
                          search.limit_hit)


def replay_witness(system: CtsSystem,
                   witness: Iterable[str]) -> Snapshot:
    """Apply the rewrites of a witness to the initial snapshot."""
    snapshot = initial_snapshot(system)
    for rewrite_id in witness:
        snapshot = derive_step(system, snapshot, rewrite_id)
    return snapshot


def sort_words(words: Iterable[Word]) -> List[Word]:
    """Length-lexicographic order."""
    return sorted(words, key=lambda w: (len(w), w))
