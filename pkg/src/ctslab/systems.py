# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

"""Data model of two-component cts systems.

A system couples a right-linear grammar G1 with a second grammar G2 that is
either 0-sequential (any occurrence of the left-hand side may be rewritten)
or right-boundary (only the rightmost symbol may be rewritten). Rewrites pair
one production of each grammar and are applied in lockstep.

Words are tuples of terminal symbols. The empty word is the empty tuple and
is written ``~`` in text.
"""

import collections
import enum
import functools
import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import (G1Blocked, G2Empty, G2RightmostMismatch, G2SymbolAbsent,
                     InvalidSystem, UnknownRewrite, WordAlphabetError,
                     WrongFamily)

__all__ = [
    "LAMBDA",
    "Word",
    "Verdict",
    "SystemKind",
    "Family",
    "RlProduction",
    "G2Production",
    "RlGrammar",
    "SecondGrammar",
    "Rewrite",
    "Step",
    "CtsSystem",
    "NetEffect",
    "Snapshot",
    "SystemShape",
    "Violation",
    "ViolationCode",
    "validate_system",
    "net_effect",
    "classify_shape",
    "counter_roles",
    "initial_snapshot",
    "apply_g2",
    "derive_step",
    "parikh",
    "check_word",
    "parse_word",
    "format_word",
]

logger = logging.getLogger(__name__)

LAMBDA = "~"
SYMBOL_PATTERN = re.compile(r"[A-Za-z0-9_]+")

Word = Tuple[str, ...]


class Verdict(enum.Enum):
    ACCEPTED = "ACCEPTED"
    REJECTED = "REJECTED"
    INCONCLUSIVE = "INCONCLUSIVE"


class SystemKind(enum.Enum):
    ZERO_SEQUENTIAL = "rl-0s"
    RIGHT_BOUNDARY = "rl-rb"


class Family(enum.Enum):
    RL_0S = "RL_0S"
    RL_RB = "RL_RB"
    RL_RBC = "RL_RBc"
    RL0_RBC = "RL0_RBc"
    RL1_RBC = "RL1_RBc"
    RL01_RBC = "RL01_RBc"


# Families that carry a bottom marker S2 and are walked on the state diagram.
DIAGRAM_FAMILIES = frozenset({Family.RL_RBC, Family.RL1_RBC})
BOTTOMLESS_FAMILIES = frozenset({Family.RL0_RBC, Family.RL01_RBC})
COUNTER_FAMILIES = DIAGRAM_FAMILIES | BOTTOMLESS_FAMILIES
ONE_STATE_FAMILIES = frozenset({Family.RL1_RBC, Family.RL01_RBC})


def _render_rhs(rhs: Tuple[str, ...]) -> str:
    return " ".join(rhs) if rhs else LAMBDA


@dataclass(frozen=True)
class RlProduction:
    """A right-linear production; ``rhs`` is kept as written."""
    lhs: str
    rhs: Tuple[str, ...] = ()

    def __str__(self):
        return f"{self.lhs} -> {_render_rhs(self.rhs)}"


@dataclass(frozen=True)
class G2Production:
    lhs: str
    rhs: Tuple[str, ...] = ()

    def __str__(self):
        return f"{self.lhs} -> {_render_rhs(self.rhs)}"


@dataclass(frozen=True)
class RlGrammar:
    terminals: Tuple[str, ...]
    nonterminals: Tuple[str, ...]
    axiom: str
    productions: Tuple[RlProduction, ...]

    def split(self, production: RlProduction
              ) -> Optional[Tuple[Optional[str], Optional[str]]]:
        """Return ``(emit, next)`` of a production, None for a bad shape.

        ``emit`` is None for productions that emit nothing and ``next`` is
        None when the production ends the G1 derivation.
        """
        rhs = production.rhs
        if not rhs:
            return None, None
        if len(rhs) == 1:
            if rhs[0] in self.terminals:
                return rhs[0], None
            if rhs[0] in self.nonterminals:
                return None, rhs[0]
            return None
        if (len(rhs) == 2 and rhs[0] in self.terminals
                and rhs[1] in self.nonterminals):
            return rhs[0], rhs[1]
        return None


@dataclass(frozen=True)
class SecondGrammar:
    kind: SystemKind
    nonterminals: Tuple[str, ...]
    axiom: str
    productions: Tuple[G2Production, ...]


@dataclass(frozen=True)
class Rewrite:
    id: str
    g1: RlProduction
    g2: int  # index into SecondGrammar.productions


@dataclass(frozen=True)
class Step:
    """A rewrite compiled for derivation: both productions in split form."""
    rewrite_id: str
    lhs1: str
    emit: Optional[str]
    next1: Optional[str]
    lhs2: str
    rhs2: Tuple[str, ...]
    effect: Tuple[int, ...]

    @property
    def is_chain(self) -> bool:
        return self.emit is None and self.next1 is not None

    @property
    def is_closing(self) -> bool:
        """True for X -> λ, which ends G1 without emitting."""
        return self.emit is None and self.next1 is None


@dataclass(frozen=True)
class NetEffect:
    vector: Tuple[int, ...]


@dataclass(frozen=True)
class Snapshot:
    emitted: Word
    active: Optional[str]
    form2: Tuple[str, ...]

    @property
    def is_final(self) -> bool:
        return self.active is None and not self.form2


@dataclass(frozen=True)
class SystemShape:
    family: Family
    real_time: bool
    g1_nt_count: int
    g2_nt_count: int


class ViolationCode(enum.Enum):
    BAD_SYMBOL = "BadSymbol"
    DUPLICATE_SYMBOL = "DuplicateSymbol"
    SYMBOL_OVERLAP = "SymbolOverlap"
    AXIOM_NOT_DECLARED = "AxiomNotDeclared"
    UNKNOWN_SYMBOL = "UnknownSymbol"
    BAD_RL_SHAPE = "BadRlShape"
    EMPTY_REWRITES = "EmptyRewrites"
    DUPLICATE_REWRITE_ID = "DuplicateRewriteId"
    UNKNOWN_PRODUCTION = "UnknownProduction"


@dataclass(frozen=True)
class Violation:
    code: ViolationCode
    element: str
    message: str

    def __str__(self):
        return f"{self.code.value} ({self.element}): {self.message}"


@dataclass(frozen=True)
class CtsSystem:
    name: str
    g1: RlGrammar
    g2: SecondGrammar
    rewrites: Tuple[Rewrite, ...]

    @property
    def kind(self) -> SystemKind:
        return self.g2.kind

    @functools.cached_property
    def _rewrite_index(self) -> Dict[str, int]:
        index: Dict[str, int] = {}
        for i, rewrite in enumerate(self.rewrites):
            index.setdefault(rewrite.id, i)
        return index

    @functools.cached_property
    def g2_order(self) -> Dict[str, int]:
        return {b: i for i, b in enumerate(self.g2.nonterminals)}

    @functools.cached_property
    def steps(self) -> Tuple[Step, ...]:
        """The compiled rewrite table. Raises InvalidSystem when invalid."""
        violations = validate_system(self)
        if violations:
            raise InvalidSystem(violations)
        steps = []
        for rewrite in self.rewrites:
            split = self.g1.split(rewrite.g1)
            assert split is not None
            production = self.g2.productions[rewrite.g2]
            steps.append(Step(
                rewrite_id=rewrite.id,
                lhs1=rewrite.g1.lhs,
                emit=split[0],
                next1=split[1],
                lhs2=production.lhs,
                rhs2=production.rhs,
                effect=_effect(self, production)))
        return tuple(steps)

    def rewrite(self, rewrite_id: str) -> Rewrite:
        try:
            return self.rewrites[self._rewrite_index[rewrite_id]]
        except KeyError:
            raise UnknownRewrite(
                f"system {self.name!r} has no rewrite {rewrite_id!r}"
            ) from None

    def step(self, rewrite_id: str) -> Step:
        index = self._rewrite_index.get(rewrite_id)
        if index is None:
            raise UnknownRewrite(
                f"system {self.name!r} has no rewrite {rewrite_id!r}")
        return self.steps[index]

    def g2_production(self, rewrite: Rewrite) -> G2Production:
        return self.g2.productions[rewrite.g2]


def _effect(system: CtsSystem, production: G2Production) -> Tuple[int, ...]:
    counts = collections.Counter(production.rhs)
    counts[production.lhs] -= 1
    return tuple(counts[b] for b in system.g2.nonterminals)


def _duplicates(symbols: Iterable[str]) -> List[str]:
    counts = collections.Counter(symbols)
    return [s for s, c in counts.items() if c > 1]


def validate_system(system: CtsSystem) -> List[Violation]:
    """Check every structural invariant; an empty list means valid."""
    violations: List[Violation] = []

    def report(code, element, message):
        violations.append(Violation(code, element, message))

    g1, g2 = system.g1, system.g2
    declared = (("g1.terminals", g1.terminals),
                ("g1.nonterminals", g1.nonterminals),
                ("g2.nonterminals", g2.nonterminals))
    for section, symbols in declared:
        for symbol in symbols:
            if symbol == LAMBDA or not SYMBOL_PATTERN.fullmatch(symbol):
                report(ViolationCode.BAD_SYMBOL, section,
                       f"{symbol!r} is not a valid symbol name")
        for symbol in _duplicates(symbols):
            report(ViolationCode.DUPLICATE_SYMBOL, section,
                   f"{symbol!r} is declared more than once")
    for symbol in sorted(set(g1.terminals) & set(g1.nonterminals)):
        report(ViolationCode.SYMBOL_OVERLAP, symbol,
               f"{symbol!r} is both a terminal and a nonterminal of G1")
    if g1.axiom not in g1.nonterminals:
        report(ViolationCode.AXIOM_NOT_DECLARED, "g1.axiom",
               f"G1 axiom {g1.axiom!r} is not a G1 nonterminal")
    if g2.axiom not in g2.nonterminals:
        report(ViolationCode.AXIOM_NOT_DECLARED, "g2.axiom",
               f"G2 axiom {g2.axiom!r} is not a G2 nonterminal")

    g1_symbols = set(g1.terminals) | set(g1.nonterminals)
    for production in g1.productions:
        element = f"G1 {production}"
        if production.lhs not in g1.nonterminals:
            report(ViolationCode.UNKNOWN_SYMBOL, element,
                   f"left side {production.lhs!r} is not a G1 nonterminal")
        unknown = [s for s in production.rhs if s not in g1_symbols]
        for symbol in unknown:
            report(ViolationCode.UNKNOWN_SYMBOL, element,
                   f"{symbol!r} is not a G1 symbol")
        if not unknown and g1.split(production) is None:
            report(ViolationCode.BAD_RL_SHAPE, element,
                   "right side must be λ, one symbol, or a terminal "
                   "followed by a nonterminal")
    for production in g2.productions:
        for symbol in (production.lhs,) + production.rhs:
            if symbol not in g2.nonterminals:
                report(ViolationCode.UNKNOWN_SYMBOL, f"G2 {production}",
                       f"{symbol!r} is not a G2 nonterminal")

    if not system.rewrites:
        report(ViolationCode.EMPTY_REWRITES, "rewrites",
               "a system needs at least one rewrite")
    for rewrite_id in _duplicates(r.id for r in system.rewrites):
        report(ViolationCode.DUPLICATE_REWRITE_ID, rewrite_id,
               f"rewrite id {rewrite_id!r} is used more than once")
    for rewrite in system.rewrites:
        if rewrite.g1 not in g1.productions:
            report(ViolationCode.UNKNOWN_PRODUCTION, rewrite.id,
                   f"G1 production {rewrite.g1} is not in prod(G1)")
        if not 0 <= rewrite.g2 < len(g2.productions):
            report(ViolationCode.UNKNOWN_PRODUCTION, rewrite.id,
                   f"G2 production index {rewrite.g2} is out of range")
    return violations


def net_effect(system: CtsSystem, rewrite_id: str) -> NetEffect:
    rewrite = system.rewrite(rewrite_id)
    return NetEffect(_effect(system, system.g2_production(rewrite)))


def parikh(system: CtsSystem, form2: Iterable[str]) -> Tuple[int, ...]:
    counts = collections.Counter(form2)
    return tuple(counts[b] for b in system.g2.nonterminals)


_COUNTER_FORMS = frozenset({
    ("S", ("S",)), ("S", ("S", "Z")), ("S", ()),
    ("Z", ("Z",)), ("Z", ("Z", "Z")), ("Z", ()),
})
_BOTTOMLESS_FORMS = frozenset({("Z", ("Z",)), ("Z", ("Z", "Z")), ("Z", ())})


def counter_roles(system: CtsSystem) -> Tuple[Optional[str], str]:
    """Return ``(bottom, counter)``: the symbols playing S2 and Z2.

    With two G2 nonterminals the axiom is the bottom marker S2. A single G2
    nonterminal plays Z2 and there is no bottom marker.
    """
    nonterminals = system.g2.nonterminals
    if len(nonterminals) == 1:
        return None, nonterminals[0]
    if len(nonterminals) == 2:
        bottom = system.g2.axiom
        counter = nonterminals[1] if nonterminals[0] == bottom \
            else nonterminals[0]
        return bottom, counter
    raise WrongFamily(
        f"system {system.name!r} has {len(nonterminals)} G2 nonterminals, "
        f"counter systems have one or two")


def _role_forms(system: CtsSystem, bottom: Optional[str], counter: str):
    roles = {counter: "Z"}
    if bottom is not None:
        roles[bottom] = "S"
    for production in system.g2.productions:
        yield (roles[production.lhs],
               tuple(roles[s] for s in production.rhs))


def classify_shape(system: CtsSystem) -> SystemShape:
    steps = system.steps
    real_time = not any(step.is_chain for step in steps)
    l1 = len(system.g1.nonterminals)
    l2 = len(system.g2.nonterminals)
    if system.kind is SystemKind.ZERO_SEQUENTIAL:
        family = Family.RL_0S
    else:
        family = Family.RL_RB
        if l2 in (1, 2):
            bottom, counter = counter_roles(system)
            forms = set(_role_forms(system, bottom, counter))
            if bottom is not None and forms <= _COUNTER_FORMS:
                family = Family.RL1_RBC if l1 == 1 else Family.RL_RBC
            elif bottom is None and forms <= _BOTTOMLESS_FORMS:
                family = Family.RL01_RBC if l1 == 1 else Family.RL0_RBC
    return SystemShape(family, real_time, l1, l2)


def initial_snapshot(system: CtsSystem) -> Snapshot:
    return Snapshot((), system.g1.axiom, (system.g2.axiom,))


def apply_g2(system: CtsSystem, form2: Tuple[str, ...], step: Step
             ) -> Optional[Tuple[str, ...]]:
    """Return form2 after the G2 part of ``step``, None when it is blocked.

    Right-boundary forms are sequences rewritten at the rightmost symbol.
    0-sequential forms are multisets kept as tuples sorted by ntal(G2).
    """
    if not form2:
        return None
    if system.kind is SystemKind.RIGHT_BOUNDARY:
        if form2[-1] != step.lhs2:
            return None
        return form2[:-1] + step.rhs2
    if step.lhs2 not in form2:
        return None
    symbols = list(form2)
    symbols.remove(step.lhs2)
    symbols.extend(step.rhs2)
    symbols.sort(key=system.g2_order.__getitem__)
    return tuple(symbols)


def derive_step(system: CtsSystem, snapshot: Snapshot,
                rewrite_id: str) -> Snapshot:
    """Apply one rewrite to a snapshot."""
    step = system.step(rewrite_id)
    if snapshot.active is None:
        raise G1Blocked(
            f"rewrite {rewrite_id!r}: the G1 derivation has finished")
    if snapshot.active != step.lhs1:
        raise G1Blocked(
            f"rewrite {rewrite_id!r} rewrites {step.lhs1!r} but the active "
            f"nonterminal is {snapshot.active!r}")
    form2 = apply_g2(system, snapshot.form2, step)
    if form2 is None:
        if not snapshot.form2:
            raise G2Empty(
                f"rewrite {rewrite_id!r}: the G2 sentential form is empty")
        if system.kind is SystemKind.RIGHT_BOUNDARY:
            raise G2RightmostMismatch(
                f"rewrite {rewrite_id!r} rewrites {step.lhs2!r} but the "
                f"rightmost G2 symbol is {snapshot.form2[-1]!r}")
        raise G2SymbolAbsent(
            f"rewrite {rewrite_id!r}: {step.lhs2!r} does not occur in the "
            f"G2 sentential form")
    emitted = snapshot.emitted
    if step.emit is not None:
        emitted = emitted + (step.emit,)
    return Snapshot(emitted, step.next1, form2)


def check_word(system: CtsSystem, word: Iterable[str]) -> Word:
    symbols = tuple(word)
    terminals = set(system.g1.terminals)
    for symbol in symbols:
        if symbol not in terminals:
            raise WordAlphabetError(
                f"{symbol!r} is not a terminal of system {system.name!r}")
    return symbols


def parse_word(text: str, terminals: Iterable[str]) -> Word:
    """Split a word given on the command line.

    ``~`` and the empty string denote λ. Words over single-character
    terminals may be written without separators; otherwise symbols are
    separated by whitespace.
    """
    text = text.strip()
    if text in ("", LAMBDA):
        return ()
    if all(len(t) == 1 for t in terminals) and not any(
            c.isspace() for c in text):
        return tuple(text)
    return tuple(text.split())


def format_word(word: Word) -> str:
    if not word:
        return LAMBDA
    if all(len(symbol) == 1 for symbol in word):
        return "".join(word)
    return " ".join(word)
