# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

from .counter import (build_state_diagram, counter_member, diagram_to_dot,
                      diagram_to_json)
from .cts_format import dump_system, load_system, parse_system, render_system
from .errors import CtsError
from .one_state import classify_psi, detect_case, fast_member
from .oracle import enumerate_language, oracle_member
from .parikh import recognize_rt_0s
from .petri import PetriNet, Semantics, cts_to_pn, pn_member, pn_to_cts
from .pn_format import dump_net, load_net, parse_net, render_net
from .systems import (CtsSystem, Family, Verdict, classify_shape,
                      derive_step, validate_system)

try:
    from ._version import __version__
except ImportError:  # pragma: no cover
    __version__ = "0.0.0"

__all__ = [
    "CtsError",
    "CtsSystem",
    "Family",
    "PetriNet",
    "Semantics",
    "Verdict",
    "build_state_diagram",
    "classify_psi",
    "classify_shape",
    "counter_member",
    "cts_to_pn",
    "derive_step",
    "detect_case",
    "diagram_to_dot",
    "diagram_to_json",
    "dump_net",
    "dump_system",
    "enumerate_language",
    "fast_member",
    "load_net",
    "load_system",
    "oracle_member",
    "parse_net",
    "parse_system",
    "pn_member",
    "pn_to_cts",
    "recognize_rt_0s",
    "render_net",
    "render_system",
    "validate_system",
    "__version__",
]
