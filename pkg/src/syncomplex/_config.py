"""Resource guards. Budgets may be overridden through the environment."""

import os


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


# largest degree for which all n**n transformations are enumerated
ENUMERATION_MAX_DEGREE = _env_int("SYNCOMPLEX_ENUMERATION_MAX_DEGREE", 8)

# largest degree for which canonical forms try all n! relabelings
CANONICAL_MAX_DEGREE = _env_int("SYNCOMPLEX_CANONICAL_MAX_DEGREE", 7)

# maximum number of elements a single closure may produce
CLOSURE_BUDGET = _env_int("SYNCOMPLEX_CLOSURE_BUDGET", 10**6)

# ceiling for verify_bounds
VERIFY_MAX_DEGREE = _env_int("SYNCOMPLEX_VERIFY_MAX_DEGREE", 6)

# search budgets; 0 means unlimited
SEARCH_BUDGET_NODES = _env_int("SYNCOMPLEX_BUDGET_NODES", 0)
SEARCH_BUDGET_SECONDS = _env_int("SYNCOMPLEX_BUDGET_SECONDS", 0)
