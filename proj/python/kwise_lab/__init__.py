"""Exact tools for k-wise intersecting families of r-sets.

Sets are lists of 1-based elements; families are lists of sets. Reports
mirror the ``kwise-lab`` command line tool.
"""

import json

from ._kwise import (
    SCHEMA,
    InvalidParameter,
    KwiseError,
    LemmaViolation,
    NumericFailure,
    PreconditionViolation,
    ResourceGuard,
    apply_adjacent_transposition,
    binomial,
    canonical_order,
    cayley_expansion,
    check_matching_lemmas,
    embed_as_interval,
    frankl_bound,
    good_order_count,
    good_orders,
    hfamily,
    hfamily_star,
    interval_count_per_set,
    is_k_wise_intersecting,
    max_family_search,
    max_interval_family,
    order_intervals,
    regime,
    saturation_census,
    spectral_gap,
    stability_audit,
    star,
    theorem2_bound,
    verify_frankl,
    verify_matching_bound,
)
from ._kwise import run as _run

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_INVALID = 2
EXIT_REFUSED = 3


def run(command, **settings):
    """Run a CLI command in-process; returns (exit_status, report_dict).

    Keyword names are the long flag names with dashes or underscores.
    """
    args = {k.replace("_", "-"): _text(v) for k, v in settings.items()}
    args.setdefault("format", "json")
    status, out, _ = _run(command, args)
    if args["format"] != "json":
        return status, out
    return status, json.loads(out)


def _text(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


__all__ = [name for name in dir() if not name.startswith("_")]
