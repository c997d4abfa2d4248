"""Exhaustive search for the largest non-permutational transformation semigroups.

The non-permutational maps of degree n are numbered in lexicographic order
and every product is tabulated once, so a semigroup is a bitmask and a
closure step is a table lookup.  Closed sets are enumerated with the
Close-by-One scheme: a closed set ``S`` is extended by a candidate ``t``
only if ``t`` is above the previous anchor and the closure of ``S + t``
adds nothing below ``t``.  Each closed set is thereby produced once.

Pruning on top of that:

* a closure that meets a permutational product is dropped, since every
  superset would contain it as well;
* candidates that pairwise conflict with a member are never tried;
* a branch whose size plus remaining compatible candidates falls short
  of the best size found is cut.  The cut is strict so that every
  maximum is still reported;
* at the root only maps that are least in their conjugacy class are
  used as the first anchor.  Every closed set has a conjugate whose
  least element is such a map, so all maxima survive up to relabeling.

The space searched is all subsemigroups of the full transformation
monoid made of non-permutational maps.  The transition semigroup of
every definite language is one of these, so the maximum is an upper
bound on its syntactic complexity.
"""

from __future__ import annotations

import itertools
import logging
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import _config
from .semigroups import (
    NotIndecomposableGenerated,
    TransformationSemigroup,
    canonical_form,
    extend,
    minimal_generating_set,
)
from .transforms import (
    Transformation,
    compose,
    is_permutational,
    non_permutational,
    permutations,
    relabel,
)
from .witnesses import build, floor_e_factorial

log = logging.getLogger(__name__)

SEARCH_SPACE_NOTE = (
    "searched all non-permutational subsemigroups of the full transformation "
    "monoid; this bounds the syntactic complexity of definite languages from above"
)


class SearchTable:
    """Non-permutational maps of degree ``n`` with their product and conflict tables."""

    def __init__(self, n: int):
        self.n = n
        self.elements = non_permutational(n)
        self.index = {t: i for i, t in enumerate(self.elements)}
        size = len(self.elements)
        # mul[i][j] is the index of elements[i] * elements[j], or -1 when permutational
        self.mul = [[self.index.get(compose(s, t), -1) for t in self.elements] for s in self.elements]
        self.conflicts = [0] * size
        for i in range(size):
            for j in range(i, size):
                if self.extend(1 << i, [i], j) is None:
                    self.conflicts[i] |= 1 << j
                    self.conflicts[j] |= 1 << i

    def __len__(self):
        return len(self.elements)

    def extend(self, mask: int, members: list[int], t: int) -> Optional[tuple[int, list[int]]]:
        """Close the closed set ``members`` together with ``t``; None if it turns permutational."""
        if mask >> t & 1:
            return mask, members
        mul = self.mul
        mask |= 1 << t
        members = members + [t]
        queue = [t]
        while queue:
            x = queue.pop()
            row = mul[x]
            for y in members[:]:
                for z in (row[y], mul[y][x]):
                    if z < 0:
                        return None
                    if not mask >> z & 1:
                        mask |= 1 << z
                        members.append(z)
                        queue.append(z)
        return mask, members

    def semigroup(self, members) -> TransformationSemigroup:
        return TransformationSemigroup((self.elements[i] for i in members), n=self.n, check=False)

    def orbit_minima(self) -> list[int]:
        """Indices of maps that are lexicographically least among their conjugates."""
        perms = list(permutations(self.n))
        return [i for i, t in enumerate(self.elements) if all(relabel(t, p) >= t for p in perms)]


@dataclass
class SearchReport:
    n: int
    max_size: int
    conjectured: int
    maxima_count_up_to_relabeling: int
    example_maximum: TransformationSemigroup
    min_generator_sizes: tuple[int, ...]
    nodes_explored: int
    elapsed: float
    complete: bool
    maxima: tuple[TransformationSemigroup, ...] = ()
    generator_failures: tuple[str, ...] = ()
    b_among_maxima: bool = False
    pruned: bool = True
    visited: Optional[set] = field(default=None, repr=False)
    note: str = SEARCH_SPACE_NOTE

    @property
    def matches_conjecture(self) -> bool:
        return self.max_size == self.conjectured

    @property
    def conjectured_generators(self) -> int:
        return floor_e_factorial(self.n - 1) - floor_e_factorial(self.n - 2)

    def to_text(self) -> str:
        """Structured text; timing is left out so reruns are byte-identical."""
        verdict = "OK" if self.matches_conjecture else "MISMATCH"
        if not self.complete:
            verdict += " (incomplete)"
        lines = [
            f"max={self.max_size} conjectured={self.conjectured} {verdict}",
            f"n: {self.n}",
            f"complete: {str(self.complete).lower()}",
            f"max_size: {self.max_size}",
            f"conjectured: {self.conjectured}",
            f"maxima_count_up_to_relabeling: {self.maxima_count_up_to_relabeling}",
            f"B_n_among_maxima: {str(self.b_among_maxima).lower()}",
            f"min_generator_sizes: {list(self.min_generator_sizes)}",
            f"generator_failures: {list(self.generator_failures)}",
            f"nodes_explored: {self.nodes_explored}",
            f"note: {self.note}",
            "example_maximum:",
        ]
        lines += [f"  {t}" for t in self.example_maximum]
        return "\n".join(lines) + "\n"


class _Budget(Exception):
    pass


def max_non_permutational(
    n: int,
    budget_nodes: Optional[int] = None,
    budget_seconds: Optional[float] = None,
    prune: bool = True,
    collect: bool = False,
    best_effort: bool = False,
) -> SearchReport:
    """Find the largest non-permutational semigroups of degree ``n``.

    ``prune=False`` turns off the size bound and the root symmetry
    reduction, so every non-permutational closed set is visited.  With
    ``collect=True`` the masks of all visited closed sets are kept in
    ``report.visited``.  Degree 5 runs only with ``best_effort=True`` and is
    then reported as incomplete if a budget stops it.
    """
    if not 2 <= n <= 4 and not (n == 5 and best_effort):
        raise ValueError("exhaustive search supports 2 <= n <= 4 (n = 5 in best-effort mode)")
    if budget_nodes is None:
        budget_nodes = _config.SEARCH_BUDGET_NODES or None
    if budget_seconds is None:
        budget_seconds = _config.SEARCH_BUDGET_SECONDS or None

    started = time.monotonic()
    table = SearchTable(n)
    size = len(table)
    conflicts = table.conflicts
    full = (1 << size) - 1

    b_members = [table.index[t] for t in build("B", n)]
    best = len(b_members) if prune else 0
    maxima_masks: list[tuple[int, list[int]]] = []
    visited: Optional[set] = set() if collect else None
    nodes = 0
    complete = True

    def record(mask, members):
        nonlocal best, maxima_masks
        if visited is not None:
            visited.add(mask)
        k = len(members)
        if k > best:
            best = k
            maxima_masks = [(mask, members)]
        elif k == best:
            maxima_masks.append((mask, members))

    def expand(mask, members, forbidden, start):
        nonlocal nodes
        nodes += 1
        if budget_nodes is not None and nodes > budget_nodes:
            raise _Budget
        if budget_seconds is not None and nodes % 256 == 0 and time.monotonic() - started > budget_seconds:
            raise _Budget
        record(mask, members)
        for t in range(start, size):
            if mask >> t & 1 or forbidden >> t & 1:
                continue
            res = table.extend(mask, members, t)
            if res is None:
                continue
            new_mask, new_members = res
            added = new_mask & ~mask
            if added & ((1 << t) - 1):
                continue
            new_forbidden = forbidden
            for x in new_members[len(members):]:
                new_forbidden |= conflicts[x]
            if prune:
                above = full & ~((1 << (t + 1)) - 1)
                room = bin(above & ~new_mask & ~new_forbidden).count("1")
                if len(new_members) + room < best:
                    continue
            expand(new_mask, new_members, new_forbidden, t + 1)

    roots = table.orbit_minima() if prune else range(size)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10 * size + 100))
    try:
        for t in roots:
            res = table.extend(0, [], t)
            if res is None:
                continue
            mask, members = res
            if mask & ((1 << t) - 1):
                continue
            forbidden = 0
            for x in members:
                forbidden |= conflicts[x]
            expand(mask, members, forbidden, t + 1)
    except _Budget:
        complete = False
    finally:
        sys.setrecursionlimit(limit)

    if not maxima_masks:
        # only reachable when pruning cut every branch short of the seeded size
        maxima_masks = [(sum(1 << i for i in b_members), b_members)]

    canon: dict = {}
    for _, members in maxima_masks:
        S = table.semigroup(members)
        key = canonical_form(S)
        canon.setdefault(key.elements, key)
    maxima = tuple(canon[k] for k in sorted(canon))
    b_canon = canonical_form(TransformationSemigroup(build("B", n), check=False))

    gen_sizes = set()
    failures = []
    for S in maxima:
        try:
            gen_sizes.add(len(minimal_generating_set(S)))
        except NotIndecomposableGenerated as exc:
            failures.append(f"{S}: {exc}")

    elapsed = time.monotonic() - started
    log.info("search n=%d finished in %.2fs after %d nodes", n, elapsed, nodes)
    return SearchReport(
        n=n,
        max_size=best,
        conjectured=floor_e_factorial(n - 1),
        maxima_count_up_to_relabeling=len(maxima),
        example_maximum=maxima[0],
        min_generator_sizes=tuple(sorted(gen_sizes)),
        nodes_explored=nodes,
        elapsed=elapsed,
        complete=complete,
        maxima=maxima,
        generator_failures=tuple(failures),
        b_among_maxima=b_canon in maxima,
        pruned=prune,
        visited=visited,
    )


def closed_subsets_oracle(n: int) -> list[frozenset[Transformation]]:
    """Every non-empty closed set of non-permutational maps, by checking all subsets.

    Feasible only for n <= 3 (2**9 subsets).
    """
    if n > 3:
        raise ValueError("the subset oracle enumerates 2**(n**(n-1)) subsets; use n <= 3")
    elems = non_permutational(n)
    out = []
    for r in range(1, len(elems) + 1):
        for subset in itertools.combinations(elems, r):
            members = set(subset)
            if all(compose(s, t) in members for s in subset for t in subset):
                out.append(frozenset(subset))
    return out


def oracle_max_size(n: int) -> int:
    return max(len(s) for s in closed_subsets_oracle(n))


@dataclass(frozen=True)
class MaximalityReport:
    n: int
    maximal: bool
    candidates_checked: int
    counterexample: Optional[Transformation]

    def __bool__(self):
        return self.maximal


def verify_B_maximality(n: int) -> MaximalityReport:
    """Check that every non-permutational map outside ``B_n`` conflicts with ``B_n``."""
    if not 2 <= n <= 5:
        raise ValueError("verify_B_maximality supports 2 <= n <= 5")
    B = build("B", n)
    members = set(B)
    checked = 0
    for t in non_permutational(n):
        if t in members:
            continue
        checked += 1
        _, hit = extend(B, (t,), stop=is_permutational)
        if hit is None:
            return MaximalityReport(n, False, checked, t)
    return MaximalityReport(n, True, checked, None)
