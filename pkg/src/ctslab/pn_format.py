# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

"""Reading and writing the line-based ``.pn`` net format.

Example::

    pn an_b
    places p
    transition t1 label a in p:1 out p:1
    transition t2 label b in p:1 out
    marking p:1
    final

An optional ``alphabet`` line declares terminals that label no transition;
it defaults to the labels in use. Places missing from a ``marking`` or
``final`` line hold no tokens. Without ``final`` lines the net has no final
markings.
"""

import os
from typing import Any, Dict, List, Set, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from .cts_format import describe_lark_error
from .errors import CtsSyntaxError, MissingSection, UnknownSymbol
from .petri import Arcs, PetriNet, Transition
from .systems import LAMBDA

__all__ = ["parse_net", "render_net", "load_net", "dump_net"]

PN_GRAMMAR = r"""
    start: (_item? _NL)* _item?

    _item: name | places | alphabet | transition | marking | final

    name: "pn" NAME
    places: "places" NAME+
    alphabet: "alphabet" NAME+
    transition: "transition" NAME "label" label "in" arcs "out" arcs
    marking: "marking" arcs
    final: "final" arcs

    label: NAME     -> named
         | LAMBDA   -> silent
    arcs: arc*
    arc: NAME ":" COUNT

    LAMBDA: "~"
    COUNT: /[0-9]+/
    NAME: /[A-Za-z0-9_]+/
    COMMENT: /#[^\n]*/
    _NL: /\n/

    %ignore COMMENT
    %ignore /[ \t\f\r]+/
"""

_PARSER = Lark(PN_GRAMMAR, parser="lalr")


class _PnTransformer(Transformer):
    def name(self, items):
        return "pn", items[0].line, str(items[0])

    def places(self, items):
        return "places", items[0].line, [(str(t), t.line) for t in items]

    def alphabet(self, items):
        return "alphabet", items[0].line, [(str(t), t.line) for t in items]

    def named(self, items):
        return str(items[0])

    def silent(self, items):
        return None

    def arc(self, items):
        place, count = items
        return str(place), int(count), place.line

    def arcs(self, items):
        return items

    def transition(self, items):
        name, label, inputs, outputs = items
        return "transition", name.line, (str(name), label, inputs, outputs)

    def marking(self, items):
        return "marking", None, items[0]

    def final(self, items):
        return "final", None, items[0]

    def start(self, items):
        return items


def _arcs(arcs, places: Set[str], positive: bool) -> Arcs:
    seen: Dict[str, int] = {}
    for place, count, line in arcs:
        if place not in places:
            raise UnknownSymbol(place, line)
        if place in seen:
            raise CtsSyntaxError(f"place {place!r} listed twice", line)
        if positive and count < 1:
            raise CtsSyntaxError(
                f"arc multiplicity for {place!r} must be at least 1", line)
        seen[place] = count
    return tuple(seen.items())


def parse_net(text: str) -> PetriNet:
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as error:
        line = getattr(error, "line", None)
        raise CtsSyntaxError(describe_lark_error(error),
                             line if isinstance(line, int) and line > 0
                             else None) from None
    items = _PnTransformer().transform(tree)

    singles: Dict[str, Tuple[int, Any]] = {}
    transitions_raw: List[Tuple[int, tuple]] = []
    finals = []
    for section, line, value in items:
        if section == "transition":
            transitions_raw.append((line, value))
        elif section == "final":
            finals.append(value)
        elif section in singles:
            raise CtsSyntaxError(f"{section!r} given more than once", line)
        else:
            singles[section] = (line, value)
    for section in ("pn", "places"):
        if section not in singles:
            raise MissingSection(section)

    place_list = []
    for place, line in singles["places"][1]:
        if place in place_list:
            raise CtsSyntaxError(f"place {place!r} declared twice", line)
        place_list.append(place)
    places = set(place_list)

    alphabet: List[str] = []
    for symbol, line in singles.get("alphabet", (None, []))[1]:
        if symbol in alphabet:
            raise CtsSyntaxError(f"label {symbol!r} declared twice", line)
        alphabet.append(symbol)

    transitions = []
    seen_ids = set()
    for line, (transition_id, label, inputs, outputs) in transitions_raw:
        if transition_id in seen_ids:
            raise CtsSyntaxError(
                f"transition id {transition_id!r} is already used", line)
        seen_ids.add(transition_id)
        if alphabet and label is not None and label not in alphabet:
            raise UnknownSymbol(label, line)
        transitions.append(Transition(transition_id, label,
                                      _arcs(inputs, places, True),
                                      _arcs(outputs, places, True)))

    net = PetriNet(name=singles["pn"][1],
                   places=tuple(place_list),
                   transitions=tuple(transitions),
                   initial_marking=(0,) * len(place_list))
    initial = net.initial_marking
    if "marking" in singles:
        initial = net.vector(_arcs(singles["marking"][1], places, False))
    final_markings = None
    if finals:
        final_markings = frozenset(
            net.vector(_arcs(arcs, places, False)) for arcs in finals)
    return PetriNet(net.name, net.places, net.transitions, initial,
                    final_markings, tuple(alphabet))


def _render_arcs(places: Tuple[str, ...], marking) -> str:
    return " ".join(f"{p}:{c}" for p, c in zip(places, marking) if c)


def render_net(net: PetriNet) -> str:
    lines = [f"pn {net.name}", " ".join(("places",) + net.places)]
    used = sorted({t.label for t in net.transitions if t.label is not None})
    if list(net.alphabet) != used:
        lines.append(" ".join(("alphabet",) + net.alphabet))
    for t in net.transitions:
        label = LAMBDA if t.label is None else t.label
        parts = ["transition", t.id, "label", label, "in"]
        parts.extend(f"{p}:{c}" for p, c in t.inputs)
        parts.append("out")
        parts.extend(f"{p}:{c}" for p, c in t.outputs)
        lines.append(" ".join(parts))
    lines.append(f"marking {_render_arcs(net.places, net.initial_marking)}"
                 .rstrip())
    for marking in sorted(net.final_markings or ()):
        lines.append(f"final {_render_arcs(net.places, marking)}".rstrip())
    return "\n".join(lines) + "\n"


def load_net(filename: Union[str, bytes, os.PathLike]) -> PetriNet:
    with open(filename, "rt", encoding="utf-8") as handle:
        return parse_net(handle.read())


def dump_net(net: PetriNet, filename: Union[str, bytes, os.PathLike]) -> None:
    with open(filename, "wt", encoding="utf-8") as handle:
        handle.write(render_net(net))
