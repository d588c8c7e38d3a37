# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

"""Fast membership for counter systems whose G1 has a single nonterminal.

With one G1 nonterminal every rewrite is determined by what it emits and how
it changes the counter, so a system is a set of rewrite types (psi1 to
psi10). For many combinations of types, membership reduces to a scan of the
word. Combinations without such a scan are delegated to the counter
recognizer.

Rewrite types, with S1 the G1 nonterminal, S2 the bottom marker and Z2 the
counter symbol:

========  ===========================
psi1(x)   (S1 -> x S1, S2 -> S2)
psi2(x)   (S1 -> x S1, S2 -> S2 Z2)
psi3(x)   (S1 -> x S1, Z2 -> Z2 Z2)
psi4(x)   (S1 -> x S1, Z2 -> Z2)
psi5(x)   (S1 -> x S1, Z2 -> ~)
psi6(x)   (S1 -> x, S2 -> ~)
psi7      (S1 -> S1, S2 -> S2 Z2)
psi8      (S1 -> S1, Z2 -> Z2 Z2)
psi9      (S1 -> S1, Z2 -> ~)
psi10     (S1 -> ~, S2 -> ~)
psi6z(x)  (S1 -> x, Z2 -> ~), no bottom marker
psi10z    (S1 -> ~, Z2 -> ~), no bottom marker
========  ===========================

Rewrites that can never take part in a successful derivation, or that leave
the configuration unchanged, are ``inert``.
"""

import enum
import functools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .counter import counter_member
from .errors import (UnclassifiableRewrite, UnproducibleTerminal,
                     WrongFamily)
from .systems import (CtsSystem, ONE_STATE_FAMILIES, Step, Verdict, Word,
                      check_word, classify_shape, counter_roles)

__all__ = [
    "PsiKind",
    "PsiType",
    "PsiProfile",
    "TerminalPartition",
    "SegmentProfile",
    "CaseId",
    "FastResult",
    "classify_psi",
    "terminal_partition",
    "detect_case",
    "segment_profile",
    "p8_sequence_check",
    "fast_member",
]

logger = logging.getLogger(__name__)


class PsiKind(enum.Enum):
    PSI1 = "psi1"
    PSI2 = "psi2"
    PSI3 = "psi3"
    PSI4 = "psi4"
    PSI5 = "psi5"
    PSI6 = "psi6"
    PSI7 = "psi7"
    PSI8 = "psi8"
    PSI9 = "psi9"
    PSI10 = "psi10"
    PSI6Z = "psi6z"
    PSI10Z = "psi10z"
    INERT = "inert"


_WITH_BOTTOM = {
    ("xS", ("S", "S")): PsiKind.PSI1,
    ("xS", ("S", "SZ")): PsiKind.PSI2,
    ("xS", ("Z", "ZZ")): PsiKind.PSI3,
    ("xS", ("Z", "Z")): PsiKind.PSI4,
    ("xS", ("Z", "")): PsiKind.PSI5,
    ("x", ("S", "")): PsiKind.PSI6,
    ("S", ("S", "SZ")): PsiKind.PSI7,
    ("S", ("Z", "ZZ")): PsiKind.PSI8,
    ("S", ("Z", "")): PsiKind.PSI9,
    ("", ("S", "")): PsiKind.PSI10,
}
_WITHOUT_BOTTOM = {
    ("xS", ("Z", "ZZ")): PsiKind.PSI3,
    ("xS", ("Z", "Z")): PsiKind.PSI4,
    ("xS", ("Z", "")): PsiKind.PSI5,
    ("x", ("Z", "")): PsiKind.PSI6Z,
    ("S", ("Z", "ZZ")): PsiKind.PSI8,
    ("S", ("Z", "")): PsiKind.PSI9,
    ("", ("Z", "")): PsiKind.PSI10Z,
}
_G2_FORMS = frozenset({("S", "S"), ("S", "SZ"), ("S", ""),
                       ("Z", "Z"), ("Z", "ZZ"), ("Z", "")})


@dataclass(frozen=True)
class PsiType:
    kind: PsiKind
    terminal: Optional[str] = None

    def __str__(self):
        if self.terminal is None:
            return self.kind.value
        return f"{self.kind.value}({self.terminal})"


@dataclass(frozen=True)
class PsiProfile:
    per_rewrite: Tuple[Tuple[str, PsiType], ...]
    has_bottom: bool

    @functools.cached_property
    def kinds(self) -> FrozenSet[PsiKind]:
        """Rewrite types present, inert rewrites left out."""
        return frozenset(t.kind for _, t in self.per_rewrite
                         if t.kind is not PsiKind.INERT)

    @functools.cached_property
    def producers(self) -> Dict[str, FrozenSet[PsiKind]]:
        table: Dict[str, set] = {}
        for _, psi in self.per_rewrite:
            if psi.terminal is not None and psi.kind is not PsiKind.INERT:
                table.setdefault(psi.terminal, set()).add(psi.kind)
        return {x: frozenset(kinds) for x, kinds in table.items()}

    def produced_by(self, kind: PsiKind) -> FrozenSet[str]:
        return frozenset(x for x, kinds in self.producers.items()
                         if kind in kinds)

    def psi_type(self, rewrite_id: str) -> PsiType:
        return dict(self.per_rewrite)[rewrite_id]


@dataclass(frozen=True)
class TerminalPartition:
    """Terminals produced only by psi3 (I), only by psi5 (H) or by both (L)."""
    only_psi3: FrozenSet[str]
    only_psi5: FrozenSet[str]
    both: FrozenSet[str]


@dataclass(frozen=True)
class SegmentProfile:
    decomposition: Tuple[Word, ...]
    eta3: Tuple[int, ...]
    eta5: Tuple[int, ...]
    eta_l: Tuple[int, ...] = ()
    trailing_psi4: bool = False


class CaseId(enum.Enum):
    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5_I = "P5_I"
    P5_II = "P5_II"
    P5_III = "P5_III"
    P6 = "P6"
    P7 = "P7"
    P8_I = "P8_I"
    P8_II = "P8_II"
    P9 = "P9"
    P10 = "P10"
    P11_I = "P11_I"
    P11_II = "P11_II"
    FALLBACK = "Fallback"


@dataclass(frozen=True)
class FastResult:
    case: CaseId
    verdict: Verdict
    delegated: bool


def _g1_form(step: Step) -> str:
    return ("x" if step.emit is not None else "") + \
        ("S" if step.next1 is not None else "")


def classify_psi(system: CtsSystem) -> PsiProfile:
    family = classify_shape(system).family
    if family not in ONE_STATE_FAMILIES:
        raise WrongFamily(
            f"system {system.name!r} is {family.value}, rewrite types need "
            f"a single G1 nonterminal and a counter G2")
    bottom, counter = counter_roles(system)
    roles = {counter: "Z"}
    if bottom is not None:
        roles[bottom] = "S"
    table = _WITH_BOTTOM if bottom is not None else _WITHOUT_BOTTOM
    per_rewrite = []
    for step in system.steps:
        g2_form = (roles.get(step.lhs2, "?"),
                   "".join(roles.get(s, "?") for s in step.rhs2))
        if g2_form not in _G2_FORMS:
            raise UnclassifiableRewrite(
                f"rewrite {step.rewrite_id!r} has no rewrite type")
        kind = table.get((_g1_form(step), g2_form), PsiKind.INERT)
        terminal = step.emit if kind is not PsiKind.INERT else None
        per_rewrite.append((step.rewrite_id, PsiType(kind, terminal)))
    return PsiProfile(tuple(per_rewrite), bottom is not None)


def terminal_partition(profile: PsiProfile) -> TerminalPartition:
    up = profile.produced_by(PsiKind.PSI3)
    down = profile.produced_by(PsiKind.PSI5)
    return TerminalPartition(up - down, down - up, up & down)


def _kinds(*numbers: int) -> FrozenSet[PsiKind]:
    return frozenset(PsiKind(f"psi{n}") for n in numbers)


_P4_SHAPES = frozenset({
    _kinds(7, 5, 10), _kinds(7, 5, 8, 10), _kinds(7, 2, 5, 10),
    _kinds(7, 3, 10), _kinds(2, 3, 10),
})


def detect_case(profile: PsiProfile, word: Iterable[str]) -> CaseId:
    """Match the rewrite types of a profile, and the word where the
    producer sets of its symbols matter, against the known cases."""
    if not profile.has_bottom:
        return CaseId.FALLBACK
    kinds = profile.kinds
    sequence = tuple(word)
    symbols = frozenset(sequence)
    p2 = profile.produced_by(PsiKind.PSI2)
    p3 = profile.produced_by(PsiKind.PSI3)
    p4 = profile.produced_by(PsiKind.PSI4)
    p5 = profile.produced_by(PsiKind.PSI5)
    both = p3 & p5

    if PsiKind.PSI6 in kinds and kinds <= _kinds(1, 6):
        return CaseId.P1
    if PsiKind.PSI10 in kinds and kinds <= _kinds(1, 6, 10):
        return CaseId.P2
    if kinds in _P4_SHAPES:
        return CaseId.P4
    if kinds == _kinds(2, 5, 10):
        if symbols <= p2 & p5:
            return CaseId.P5_I
        if symbols <= p2 ^ p5:
            return CaseId.P5_II
        return CaseId.P5_III
    if kinds == _kinds(7, 3, 9, 10):
        return CaseId.P6
    if kinds == _kinds(7, 3, 5, 6, 9):
        if set(sequence[:-1]) <= both:
            return CaseId.P7
        return CaseId.FALLBACK
    if kinds == _kinds(7, 3, 4, 5, 10):
        if symbols <= both | (p4 - p3 - p5):
            return CaseId.P8_I
        if all(sum(x in p for p in (p3, p4, p5)) == 1 for x in symbols):
            return CaseId.P8_II
        return CaseId.FALLBACK
    if kinds == _kinds(7, 3, 5, 10):
        if not both:
            return CaseId.P9 if symbols <= p3 | p5 else CaseId.FALLBACK
        if symbols <= both:
            return CaseId.P3
        if symbols <= p3 ^ p5:
            return CaseId.P9
        if symbols <= p3 | p5:
            return CaseId.P10
        return CaseId.FALLBACK
    if kinds == _kinds(2, 3, 5, 10):
        return CaseId.P11_I if p2 <= p3 else CaseId.P11_II
    return CaseId.FALLBACK


def segment_profile(profile: PsiProfile,
                    word: Iterable[str]) -> SegmentProfile:
    """Split a word into alternating runs alpha_1 beta_1 ... alpha_(k+1).

    Alpha runs are driven by psi5-only symbols, beta runs by psi3-only
    symbols. Symbols produced by both, and psi4-only symbols, stay in the
    current run.
    """
    symbols = tuple(word)
    if not symbols:
        return SegmentProfile((), (), ())
    up = profile.produced_by(PsiKind.PSI3)
    down = profile.produced_by(PsiKind.PSI5)
    neutral = profile.produced_by(PsiKind.PSI4) - up - down

    segments: List[List[str]] = [[]]
    in_alpha = True
    for x in symbols:
        if x in up and x not in down:
            if in_alpha:
                segments.append([])
                in_alpha = False
        elif x in down and x not in up:
            if not in_alpha:
                segments.append([])
                in_alpha = True
        elif x not in up and x not in neutral:
            raise UnproducibleTerminal(
                f"{x!r} is produced by neither psi3, psi4 nor psi5")
        segments[-1].append(x)
    if not in_alpha:
        segments.append([])

    eta3 = tuple(sum(1 for x in segment if x in up and x not in down)
                 for segment in segments[1::2])
    eta5 = tuple(sum(1 for x in segment if x in down and x not in up)
                 for segment in segments[0::2])
    eta_l = tuple(sum(1 for x in segment if x in up and x in down)
                  for segment in segments)
    trailing = False
    for x in segments[-1]:
        if x in down and x not in up:
            trailing = False
        elif x in neutral:
            trailing = True
    return SegmentProfile(tuple(tuple(s) for s in segments), eta3, eta5,
                          eta_l, trailing)


def p8_sequence_check(profile: SegmentProfile) -> int:
    """Counter symbols left after the last alpha run; 0 means derivable.

    The result is a leftover count rather than the final S, so on rejected
    words it can exceed S (2 for "aab", where S ends at 1).

    S starts as eta3_1. For i = 2..k, if S + 1 <= eta5_i the counter runs
    empty inside alpha_i and S becomes eta3_i, otherwise S becomes
    S - eta5_i + eta3_i. The final alpha run leaves S + 1 - eta5_(k+1)
    symbols when it cannot empty the counter, else one symbol when a psi4
    symbol follows its last psi5 symbol.
    """
    eta3, eta5 = profile.eta3, profile.eta5
    k = len(eta3)
    if not eta5:
        return 0
    if k == 0:
        return 1 if profile.trailing_psi4 else 0
    s = eta3[0]
    for i in range(1, k):
        if s + 1 <= eta5[i]:
            s = eta3[i]
        else:
            s = s - eta5[i] + eta3[i]
    if s + 1 <= eta5[k]:
        return 1 if profile.trailing_psi4 else 0
    return s + 1 - eta5[k]


def _alternates(symbols: Word, odd: FrozenSet[str],
                even: FrozenSet[str]) -> bool:
    if len(symbols) % 2:
        return False
    return all(x in (odd if i % 2 == 0 else even)
               for i, x in enumerate(symbols))


def _two_state_scan(symbols: Word, push: FrozenSet[str],
                    pop: FrozenSet[str]) -> bool:
    # Counter is 0 or 1; at 0 a pop symbol is read after recharging.
    states = {0}
    for x in symbols:
        following = set()
        if 0 in states:
            if x in push:
                following.add(1)
            if x in pop:
                following.add(0)
        if 1 in states and x in pop:
            following.add(0)
        states = following
        if not states:
            return False
    return 0 in states


def _decide(case: CaseId, profile: PsiProfile,
            symbols: Word) -> Optional[bool]:
    kinds = profile.kinds
    p1 = profile.produced_by(PsiKind.PSI1)
    p2 = profile.produced_by(PsiKind.PSI2)
    p3 = profile.produced_by(PsiKind.PSI3)
    p5 = profile.produced_by(PsiKind.PSI5)
    p6 = profile.produced_by(PsiKind.PSI6)
    n = len(symbols)

    def finished_by_psi6():
        return n >= 1 and symbols[-1] in p6 and set(symbols[:-1]) <= p1

    if case is CaseId.P1:
        return finished_by_psi6()
    if case is CaseId.P2:
        return set(symbols) <= p1 or finished_by_psi6()
    if case is CaseId.P3:
        return set(symbols) <= p3 & p5
    if case is CaseId.P4:
        if kinds in (_kinds(7, 5, 10), _kinds(7, 5, 8, 10)):
            return set(symbols) <= p5
        if kinds == _kinds(7, 2, 5, 10):
            return _two_state_scan(symbols, p2, p5)
        return n == 0
    if case in (CaseId.P5_I, CaseId.P5_II, CaseId.P5_III):
        if case is CaseId.P5_III:
            only2, only5 = p2 - p5, p5 - p2
            for left, right in zip(symbols, symbols[1:]):
                if {left, right} <= only2 or {left, right} <= only5:
                    return False
        return _alternates(symbols, p2, p5)
    if case is CaseId.P6:
        return set(symbols) <= p3
    if case is CaseId.P7:
        return n >= 1 and symbols[-1] in p6
    if case is CaseId.P8_I:
        return n == 0 or symbols[-1] in p3 & p5
    if case in (CaseId.P8_II, CaseId.P9):
        return p8_sequence_check(segment_profile(profile, symbols)) == 0
    return None


def fast_member(system: CtsSystem, word: Iterable[str]) -> FastResult:
    """Decide membership by case scan, delegating when no scan exists."""
    profile = classify_psi(system)
    symbols = check_word(system, word)
    case = detect_case(profile, symbols)
    decision = _decide(case, profile, symbols)
    if decision is None:
        logger.debug("%s: case %s delegated to the counter recognizer",
                     system.name, case.value)
        return FastResult(case, counter_member(system, symbols), True)
    verdict = Verdict.ACCEPTED if decision else Verdict.REJECTED
    return FastResult(case, verdict, False)
