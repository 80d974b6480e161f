"""Finite workbench for Heyting-valued models over formal topologies.

Frames of stable lower sets, forcing names, the forcing-language evaluator
(base, Booleanized and relativized), finite inductive definitions and a
hereditarily-finite laboratory for regularity and Fullness.
"""

from .config import DEFAULT_CEILINGS, Ceilings
from .errors import BoundError, HeytingLabError, InputError, ParseError, ResolutionError, ScopeError
from .evaluator import (
    AtomicCache,
    Environment,
    Evaluator,
    eval,
    eval_boolean,
    eval_eq,
    eval_mem,
    eval_relativized,
    tilde,
)
from .formulas import dn_translate, is_bounded, parse, parse_program, relativize, show
from .frames import (
    FormalTopology,
    Frame,
    FrameElement,
    booleanize,
    class_J,
    dn_close,
    enumerate_frame,
    frame_implies,
    load_topology,
    nucleus_close,
    parse_topology,
    relativized_J,
    validate_topology,
)
from .hfsets import HFSet, kpair, ordinal, parse_hf
from .inductive import InductiveDefinition, gamma, iteration_class, least_fixed_point, parse_rules
from .largesets import (
    MVRelation,
    adjust,
    census,
    check_pairing_closure,
    full_subsets,
    is_bcst_regular,
    is_mvf,
    is_mvf_both,
    is_regular,
    mv_enumerate,
    set_mv_refine,
)
from .names import Name, NameUniverse, canonical_name, check_name, enumerate_names, op_pair, up

__version__ = "0.1.0"
