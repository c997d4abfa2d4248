"""Finite transformation semigroups.

Semigroups are stored as a sorted tuple of their elements.  Closures are
computed by a worklist over products, and every set-valued result comes
back in lexicographic order so that printed output is stable.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from . import _config
from .transforms import (
    DegreeMismatchError,
    ResourceLimitError,
    Transformation,
    is_permutational,
    non_permutational,
    parse,
    permutations,
    relabel,
)


class ClosureBudgetExceeded(ResourceLimitError):
    """A closure grew past the configured element budget."""

    def __init__(self, partial_size: int, budget: int):
        super().__init__(f"closure exceeded budget of {budget} elements (reached {partial_size})")
        self.partial_size = partial_size
        self.budget = budget


class NotIndecomposableGenerated(ValueError):
    """The indecomposable elements of a semigroup do not generate it."""

    def __init__(self, closure_size: int, size: int):
        super().__init__(
            f"not indecomposable-generated: indecomposables generate {closure_size} "
            f"of {size} elements"
        )
        self.closure_size = closure_size
        self.size = size


@dataclass(frozen=True)
class TransformationSemigroup:
    """A composition-closed set of transformations of a common degree."""

    n: int
    elements: tuple[Transformation, ...]

    def __init__(self, elements: Iterable[Transformation], n: Optional[int] = None, check: bool = True):
        elems = tuple(sorted(set(elements)))
        if n is None:
            if not elems:
                raise ValueError("degree is required for an empty semigroup")
            n = elems[0].n
        if any(t.n != n for t in elems):
            raise DegreeMismatchError("semigroup elements must share one degree")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "elements", elems)
        if check:
            members = set(elems)
            for s in elems:
                for t in elems:
                    if s * t not in members:
                        raise ValueError(f"not closed: {s} * {t} = {s * t} is missing")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, t):
        return t in self._members

    @property
    def _members(self) -> frozenset[Transformation]:
        cached = self.__dict__.get("_member_cache")
        if cached is None:
            cached = frozenset(self.elements)
            object.__setattr__(self, "_member_cache", cached)
        return cached

    def __str__(self):
        return "{" + ", ".join(map(str, self.elements)) + "}"

    def dumps(self) -> str:
        """Render in the text file format: ``n=<degree>`` then one map per line."""
        lines = [f"n={self.n}"] + [str(t) for t in self.elements]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps([list(t.targets) for t in self.elements])


def loads(text: str) -> TransformationSemigroup:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("semigroup document must start with an 'n=<degree>' line")
    n = int(lines[0][2:])
    return TransformationSemigroup((parse(ln) for ln in lines[1:]), n=n)


def from_json(text: str) -> TransformationSemigroup:
    rows = json.loads(text)
    return TransformationSemigroup(Transformation(r) for r in rows)


@dataclass(frozen=True)
class IdempotentReport:
    idempotents: tuple[Transformation, ...]
    unique_zero: Optional[Transformation]
    all_right_zero: bool
    all_left_zero: bool

    @property
    def nilpotent(self) -> bool:
        """A single idempotent, and that idempotent is a zero."""
        return len(self.idempotents) == 1 and self.unique_zero == self.idempotents[0]


def _check_budget(size, budget):
    if budget is not None and size > budget:
        raise ClosureBudgetExceeded(size, budget)


def closure(generators: Iterable[Transformation], budget: Optional[int] = None) -> TransformationSemigroup:
    """The subsemigroup generated by ``generators``.

    Breadth-first: each new element is multiplied on both sides by every
    generator.
    """
    gens = sorted(set(generators))
    if not gens:
        raise ValueError("closure needs at least one generator")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise DegreeMismatchError("generators must share one degree")
    if budget is None:
        budget = _config.CLOSURE_BUDGET
    seen = set(gens)
    queue = deque(gens)
    while queue:
        x = queue.popleft()
        for g in gens:
            for y in (x * g, g * x):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        _check_budget(len(seen), budget)
    return TransformationSemigroup(seen, n=n, check=False)


def extend(
    elements: Iterable[Transformation],
    extra: Iterable[Transformation],
    stop: Optional[Callable[[Transformation], bool]] = None,
    budget: Optional[int] = None,
) -> tuple[set[Transformation], Optional[Transformation]]:
    """Close ``elements`` (already closed) together with ``extra``.

    Returns ``(elements, hit)``.  When ``stop`` is given, the computation
    aborts at the first element satisfying it and returns that element as
    ``hit`` alongside the partial set.
    """
    if budget is None:
        budget = _config.CLOSURE_BUDGET
    seen = set(elements)
    members = list(seen)
    queue = deque()
    for t in extra:
        if t not in seen:
            if stop is not None and stop(t):
                return seen | {t}, t
            seen.add(t)
            members.append(t)
            queue.append(t)
    while queue:
        x = queue.popleft()
        # members grows while iterating; new entries are queued and handled later
        for y in list(members):
            for z in (x * y, y * x):
                if z not in seen:
                    if stop is not None and stop(z):
                        seen.add(z)
                        return seen, z
                    seen.add(z)
                    members.append(z)
                    queue.append(z)
        _check_budget(len(seen), budget)
    return seen, None


def idempotents(S: Iterable[Transformation]) -> tuple[Transformation, ...]:
    return tuple(sorted(e for e in S if e * e == e))


def idempotent_report(S: TransformationSemigroup) -> IdempotentReport:
    if not len(S):
        raise ValueError("idempotent report of an empty semigroup")
    idem = idempotents(S)
    elems = S.elements

    def left_zero(e):
        return all(e * s == e for s in elems)

    def right_zero(e):
        return all(s * e == e for s in elems)

    zero = next((e for e in idem if left_zero(e) and right_zero(e)), None)
    return IdempotentReport(
        idempotents=idem,
        unique_zero=zero,
        all_right_zero=all(right_zero(e) for e in idem),
        all_left_zero=all(left_zero(e) for e in idem),
    )


def products(S: Iterable[Transformation]) -> set[Transformation]:
    elems = list(S)
    return {s * t for s in elems for t in elems}


def indecomposables(S: TransformationSemigroup) -> tuple[Transformation, ...]:
    """Elements of ``S`` that are not a product of two *other* elements.

    ``t`` lies in every generating set exactly when no ``s, u != t`` give
    ``s * u = t``: a shortest product of elements other than ``t`` would
    otherwise split into two such factors.  Idempotents are not excluded
    merely because ``t * t = t``.
    """
    elems = S.elements
    reachable = set()
    for s in elems:
        for u in elems:
            p = s * u
            if p != s and p != u:
                reachable.add(p)
    return tuple(t for t in elems if t not in reachable)


def minimal_generating_set(S: TransformationSemigroup) -> tuple[Transformation, ...]:
    """The indecomposable elements, provided they generate ``S``.

    Every generating set contains the indecomposables, so when they generate
    ``S`` they form the unique minimum generating set.  Otherwise
    :class:`NotIndecomposableGenerated` is raised; no exact search is tried.
    """
    gens = indecomposables(S)
    if not gens:
        raise NotIndecomposableGenerated(0, len(S))
    generated = closure(gens)
    if len(generated) != len(S):
        raise NotIndecomposableGenerated(len(generated), len(S))
    return gens


def _require_non_permutational(*ts):
    for t in ts:
        if is_permutational(t):
            raise ValueError(f"{t} is permutational; conflict is defined for non-permutational maps")


def conflict(s: Transformation, t: Transformation) -> bool:
    """True if the semigroup generated by ``s`` and ``t`` has a permutational element."""
    if s.n != t.n:
        raise DegreeMismatchError(f"degrees {s.n} and {t.n} differ")
    _require_non_permutational(s, t)
    _, hit = extend((), (s, t), stop=is_permutational)
    return hit is not None


def is_non_permutational(S: Iterable[Transformation]) -> bool:
    return not any(is_permutational(t) for t in S)


def is_maximal_non_permutational(S: TransformationSemigroup) -> bool:
    """True if adding any outside non-permutational map forces a permutational one."""
    return first_non_conflicting(S) is None


def first_non_conflicting(S: TransformationSemigroup) -> Optional[Transformation]:
    """The least non-permutational ``t`` outside ``S`` that extends ``S`` cleanly."""
    if not is_non_permutational(S):
        raise ValueError("semigroup contains permutational elements")
    for t in non_permutational(S.n):
        if t in S:
            continue
        _, hit = extend(S.elements, (t,), stop=is_permutational)
        if hit is None:
            return t
    return None


def relabel_semigroup(S: TransformationSemigroup, p: Transformation) -> TransformationSemigroup:
    return TransformationSemigroup((relabel(t, p) for t in S), n=S.n, check=False)


def canonical_form(S: TransformationSemigroup) -> TransformationSemigroup:
    """The lexicographically least relabeling of ``S`` over all n! permutations."""
    if S.n > _config.CANONICAL_MAX_DEGREE:
        raise ResourceLimitError(
            f"canonical form over {S.n}! relabelings exceeds the guard ({_config.CANONICAL_MAX_DEGREE})"
        )
    best = None
    for p in permutations(S.n):
        candidate = tuple(sorted(relabel(t, p) for t in S))
        if best is None or candidate < best:
            best = candidate
    return TransformationSemigroup(best, n=S.n, check=False)
