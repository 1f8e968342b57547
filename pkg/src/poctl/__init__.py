"""Model checking for possibilistic computation tree logic (PoCTL)."""

from .algebra import (
    DimensionError,
    FuzzyMatrix,
    PossibilityVector,
    apply,
    bounded_closure,
    compose,
    join,
    possibility,
    reflexive_transitive_closure,
    transitive_closure,
)
from .checker import (
    CheckResult,
    UntilPartition,
    check_bound,
    ctl_sat,
    default_partition,
    po_always,
    po_bounded_until,
    po_next,
    po_until,
    sat,
)
from .formula import Interval, formula_size, to_text
from .model import (
    Lasso,
    ModelError,
    PossibilisticKripkeStructure,
    TransitionSystem,
    alpha_cut_ts,
    cylinder_possibility,
    lasso_possibility,
    make_model,
    plus_structure,
    rebase_initial,
    underlying_ts,
    validate,
)
from .modelfile import format_model, load_model, parse_model
from .oracle import OracleBudget, oracle_check, oracle_po, oracle_repeated, oracle_sat
from .parser import FormulaSyntaxError, parse_ctl, parse_formula, parse_poctl
from .translate import embed_ctl, embed_ctl_alpha, to_enf

__version__ = "0.1.0"
