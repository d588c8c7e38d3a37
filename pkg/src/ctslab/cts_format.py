# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

"""Reading and writing the line-based ``.cts`` system format.

Example::

    system ex51
    type rl-rb
    g1.terminals a b
    g1.nonterminals S1 X
    g2.nonterminals Z2
    g2.axiom Z2
    rewrite r1 : S1 -> a S1 ; Z2 -> Z2 Z2
    rewrite r2 : S1 -> X ; Z2 -> ~

``#`` starts a comment and ``~`` is the empty right-hand side. The words
``system``, ``type`` and ``rewrite`` are reserved.
"""

import os
from typing import Dict, List, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import (UnexpectedCharacters, UnexpectedEOF,
                             UnexpectedInput, UnexpectedToken)

from .errors import (CtsSyntaxError, DuplicateRewriteId, MissingSection,
                     UnknownSymbol)
from .systems import (CtsSystem, G2Production, LAMBDA, Rewrite, RlGrammar,
                      RlProduction, SecondGrammar, SystemKind)

__all__ = ["parse_system", "render_system", "load_system", "dump_system",
           "describe_lark_error"]

CTS_GRAMMAR = r"""
    start: (_item? _NL)* _item?

    _item: system | kind | g1_terminals | g1_nonterminals | g1_axiom
         | g2_nonterminals | g2_axiom | rewrite

    system: "system" NAME
    kind: "type" KIND
    g1_terminals: "g1.terminals" NAME*
    g1_nonterminals: "g1.nonterminals" NAME+
    g1_axiom: "g1.axiom" NAME
    g2_nonterminals: "g2.nonterminals" NAME+
    g2_axiom: "g2.axiom" NAME
    rewrite: "rewrite" NAME ":" production ";" production

    production: NAME "->" rhs
    rhs: LAMBDA     -> empty
       | NAME+      -> symbols

    KIND: "rl-0s" | "rl-rb"
    LAMBDA: "~"
    NAME: /[A-Za-z0-9_]+/
    COMMENT: /#[^\n]*/
    _NL: /\n/

    %ignore COMMENT
    %ignore /[ \t\f\r]+/
"""

_PARSER = Lark(CTS_GRAMMAR, parser="lalr")

_SECTION_NAMES = {
    "system": "system",
    "kind": "type",
    "g1_terminals": "g1.terminals",
    "g1_nonterminals": "g1.nonterminals",
    "g1_axiom": "g1.axiom",
    "g2_nonterminals": "g2.nonterminals",
    "g2_axiom": "g2.axiom",
}


def describe_lark_error(error: UnexpectedInput) -> str:
    if isinstance(error, UnexpectedEOF):
        return "unexpected end of input"
    if isinstance(error, UnexpectedToken):
        if error.token.type == "$END":
            return "unexpected end of input"
        return f"unexpected token {str(error.token)!r}"
    if isinstance(error, UnexpectedCharacters):
        return f"unexpected character {error.char!r}"
    return str(error)


def _line_of(error: UnexpectedInput):
    line = getattr(error, "line", None)
    return line if isinstance(line, int) and line > 0 else None


class _Line:
    __slots__ = ("section", "line", "value")

    def __init__(self, section, line, value):
        self.section = section
        self.line = line
        self.value = value


class _CtsTransformer(Transformer):
    def _section(self, name, items):
        line = items[0].line if items else None
        return _Line(name, line, [str(t) for t in items])

    def system(self, items):
        return self._section("system", items)

    def kind(self, items):
        return self._section("kind", items)

    def g1_terminals(self, items):
        return self._section("g1_terminals", items)

    def g1_nonterminals(self, items):
        return self._section("g1_nonterminals", items)

    def g1_axiom(self, items):
        return self._section("g1_axiom", items)

    def g2_nonterminals(self, items):
        return self._section("g2_nonterminals", items)

    def g2_axiom(self, items):
        return self._section("g2_axiom", items)

    def empty(self, items):
        return ()

    def symbols(self, items):
        return tuple(str(t) for t in items)

    def production(self, items):
        lhs, rhs = items
        return str(lhs), rhs

    def rewrite(self, items):
        name, first, second = items
        return _Line("rewrite", name.line, (str(name), first, second))

    def start(self, items):
        return items


def parse_system(text: str) -> CtsSystem:
    """Parse ``.cts`` text into a system with every symbol resolved."""
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as error:
        raise CtsSyntaxError(describe_lark_error(error),
                             _line_of(error)) from None
    lines: List[_Line] = _CtsTransformer().transform(tree)

    sections: Dict[str, _Line] = {}
    rewrite_lines = []
    for item in lines:
        if item.section == "rewrite":
            rewrite_lines.append(item)
            continue
        if item.section in sections:
            raise CtsSyntaxError(
                f"{_SECTION_NAMES[item.section]!r} given more than once",
                item.line)
        sections[item.section] = item
    for section in ("system", "kind", "g1_terminals", "g1_nonterminals",
                    "g2_nonterminals"):
        if section not in sections:
            raise MissingSection(_SECTION_NAMES[section])
    if not rewrite_lines:
        raise MissingSection("rewrites")

    terminals = tuple(sections["g1_terminals"].value)
    nonterminals = tuple(sections["g1_nonterminals"].value)
    g2_nonterminals = tuple(sections["g2_nonterminals"].value)
    g1_axiom = _axiom(sections, "g1_axiom", nonterminals)
    g2_axiom = _axiom(sections, "g2_axiom", g2_nonterminals)
    g1_symbols = set(terminals) | set(nonterminals)

    g1_productions: Dict[RlProduction, None] = {}
    g2_productions: Dict[G2Production, int] = {}
    rewrites = []
    seen_ids = set()
    for item in rewrite_lines:
        rewrite_id, (lhs1, rhs1), (lhs2, rhs2) = item.value
        if rewrite_id in seen_ids:
            raise DuplicateRewriteId(
                f"line {item.line}: rewrite id {rewrite_id!r} is already "
                f"used")
        seen_ids.add(rewrite_id)
        if lhs1 not in nonterminals:
            raise UnknownSymbol(lhs1, item.line)
        for symbol in rhs1:
            if symbol not in g1_symbols:
                raise UnknownSymbol(symbol, item.line)
        for symbol in (lhs2,) + rhs2:
            if symbol not in g2_nonterminals:
                raise UnknownSymbol(symbol, item.line)
        g1_production = RlProduction(lhs1, rhs1)
        g1_productions.setdefault(g1_production)
        g2_production = G2Production(lhs2, rhs2)
        index = g2_productions.setdefault(g2_production, len(g2_productions))
        rewrites.append(Rewrite(rewrite_id, g1_production, index))

    kind = SystemKind(sections["kind"].value[0])
    return CtsSystem(
        name=sections["system"].value[0],
        g1=RlGrammar(terminals, nonterminals, g1_axiom,
                     tuple(g1_productions)),
        g2=SecondGrammar(kind, g2_nonterminals, g2_axiom,
                         tuple(g2_productions)),
        rewrites=tuple(rewrites))


def _axiom(sections: Dict[str, _Line], section: str,
           nonterminals: Tuple[str, ...]) -> str:
    # The first declared nonterminal is the axiom unless one is named.
    item = sections.get(section)
    if item is None:
        return nonterminals[0]
    axiom = item.value[0]
    if axiom not in nonterminals:
        raise UnknownSymbol(axiom, item.line)
    return axiom


def _rhs(symbols: Tuple[str, ...]) -> str:
    return " ".join(symbols) if symbols else LAMBDA


def render_system(system: CtsSystem) -> str:
    """Return the canonical ``.cts`` text of a system."""
    g1, g2 = system.g1, system.g2
    lines = [
        f"system {system.name}",
        f"type {system.kind.value}",
        " ".join(("g1.terminals",) + g1.terminals),
        " ".join(("g1.nonterminals",) + g1.nonterminals),
        f"g1.axiom {g1.axiom}",
        " ".join(("g2.nonterminals",) + g2.nonterminals),
        f"g2.axiom {g2.axiom}",
    ]
    for rewrite in system.rewrites:
        production = g2.productions[rewrite.g2]
        lines.append(
            f"rewrite {rewrite.id} : {rewrite.g1.lhs} -> "
            f"{_rhs(rewrite.g1.rhs)} ; {production.lhs} -> "
            f"{_rhs(production.rhs)}")
    return "\n".join(lines) + "\n"


def load_system(filename: Union[str, bytes, os.PathLike]) -> CtsSystem:
    with open(filename, "rt", encoding="utf-8") as handle:
        return parse_system(handle.read())


def dump_system(system: CtsSystem,
                filename: Union[str, bytes, os.PathLike]) -> None:
    with open(filename, "wt", encoding="utf-8") as handle:
        handle.write(render_system(system))

