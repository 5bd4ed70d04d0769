"""Exact coherence, conjunctions and iterated conditionals of conditional events."""

from .coherence import (
    AssessmentProblem,
    CoherenceVerdict,
    Interval,
    Item,
    check_coherence,
    event_extension_interval,
    extension_interval,
    is_coherent,
    ratio_interval,
)
from .compound import (
    ConjunctionTable,
    Family,
    PrevisionAssessment,
    assessment_problem,
    autofill,
    build_conjunction,
    conjoin_families,
    conjunction_prevision_interval,
    constituent_classes,
    frechet_bounds,
    is_constant_zero,
    prevision_interval,
)
from .dsl import ProblemFile, format_problem, parse_problem, parse_rational
from .entailment import (
    RULES,
    EntailmentQuery,
    EntailmentReport,
    forcing_interval,
    full_report,
    is_p_consistent,
    p_entails,
    p_entails_by_conjunction,
    p_entails_by_forcing,
    p_entails_by_iterated,
    verification_set,
    rule,
)
from .errors import (
    BudgetExceeded,
    CCError,
    ConstantZeroAntecedent,
    ContextMismatch,
    EmptyAntecedent,
    IncoherentAssessment,
    InternalDisagreement,
    MissingPrevision,
    ParseError,
    PInconsistentPremises,
    UnknownAtom,
)
from .events import (
    AtomContext,
    ConditionalEvent,
    Constituent,
    EventExpr,
    Outcome,
    declare_atoms,
    eval_event,
    event_from_mask,
    indicator_table,
    negate_table,
    outcome,
)
from .iterated import (
    IteratedConditional,
    build_iterated,
    product_rule_check,
    self_iterate_is_one,
    solve_mu,
    verify_caniter,
)
from .lp import linprog, lp_feasible
from .tables import MU, Affine, ValueTable

__version__ = "0.1.0"

__all__ = [
    "Affine",
    "assessment_problem",
    "AssessmentProblem",
    "AtomContext",
    "autofill",
    "BudgetExceeded",
    "build_conjunction",
    "build_iterated",
    "CCError",
    "check_coherence",
    "CoherenceVerdict",
    "ConditionalEvent",
    "conjoin_families",
    "conjunction_prevision_interval",
    "ConjunctionTable",
    "ConstantZeroAntecedent",
    "Constituent",
    "constituent_classes",
    "ContextMismatch",
    "declare_atoms",
    "EmptyAntecedent",
    "EntailmentQuery",
    "EntailmentReport",
    "eval_event",
    "event_extension_interval",
    "event_from_mask",
    "EventExpr",
    "extension_interval",
    "Family",
    "forcing_interval",
    "format_problem",
    "frechet_bounds",
    "full_report",
    "IncoherentAssessment",
    "indicator_table",
    "InternalDisagreement",
    "Interval",
    "is_coherent",
    "is_constant_zero",
    "is_p_consistent",
    "Item",
    "IteratedConditional",
    "linprog",
    "lp_feasible",
    "MissingPrevision",
    "MU",
    "negate_table",
    "outcome",
    "Outcome",
    "p_entails",
    "p_entails_by_conjunction",
    "p_entails_by_forcing",
    "p_entails_by_iterated",
    "parse_problem",
    "parse_rational",
    "ParseError",
    "PInconsistentPremises",
    "prevision_interval",
    "PrevisionAssessment",
    "ProblemFile",
    "product_rule_check",
    "ratio_interval",
    "rule",
    "RULES",
    "self_iterate_is_one",
    "solve_mu",
    "UnknownAtom",
    "ValueTable",
    "verification_set",
    "verify_caniter",
]
