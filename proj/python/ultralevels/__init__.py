"""Levels of the multiplicative semigroup of naturals.

Prime-factor counts, signature classes, symbolic set descriptors,
filter-base ultrafilter approximations, divisibility evidence, and the
property suites, backed by the C++ core.
"""

from ._core import (
    Error,
    FilterBase,
    LevelEvidence,
    SetDesc,
    SuiteParams,
    SuiteResult,
    Verdict,
    add_alpha,
    apply_map,
    chain,
    contains,
    f_alpha,
    factorize,
    is_prime,
    is_upward_closed,
    level_evidence,
    nth_prime,
    omega,
    parse_filter,
    parse_set,
    principal,
    product,
    pushforward,
    quotient_level,
    render_machine,
    render_markdown,
    restrict,
    run_all,
    run_suite,
    scale,
    sigma,
    signature,
    signature_classes,
    smallest_factor_in_level,
    smallest_multiple_in_level,
    suite_names,
    tails_base,
    tilde_divides,
)

__all__ = [
    "Error",
    "FilterBase",
    "LevelEvidence",
    "SetDesc",
    "SuiteParams",
    "SuiteResult",
    "Verdict",
    "add_alpha",
    "apply_map",
    "chain",
    "contains",
    "f_alpha",
    "factorize",
    "is_prime",
    "is_upward_closed",
    "level_evidence",
    "nth_prime",
    "omega",
    "parse_filter",
    "parse_set",
    "principal",
    "product",
    "pushforward",
    "quotient_level",
    "render_machine",
    "render_markdown",
    "restrict",
    "run_all",
    "run_suite",
    "scale",
    "sigma",
    "signature",
    "signature_classes",
    "smallest_factor_in_level",
    "smallest_multiple_in_level",
    "suite_names",
    "tails_base",
    "tilde_divides",
]
