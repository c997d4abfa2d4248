"""Transformations of the finite set {1, ..., n}.

A transformation is written by its list of images, ``t = [i_1, ..., i_n]``
meaning ``k t = i_k``.  Composition acts left to right: ``i (s * t) = (i s) t``.
All public input and output is 1-based.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import _config


class DegreeMismatchError(ValueError):
    """Raised when transformations of different degrees are combined."""


class ResourceLimitError(RuntimeError):
    """Raised when a computation would exceed a configured resource guard."""


@dataclass(frozen=True, order=True)
class Transformation:
    """A total self-map of {1, ..., n}, stored as its 1-based image list."""

    targets: tuple[int, ...]

    def __init__(self, targets: Sequence[int]):
        targets = tuple(int(x) for x in targets)
        n = len(targets)
        if n < 1:
            raise ValueError("a transformation needs degree n >= 1")
        for x in targets:
            if not 1 <= x <= n:
                raise ValueError(f"image {x} outside 1..{n} in {list(targets)}")
        object.__setattr__(self, "targets", targets)

    @classmethod
    def _unchecked(cls, targets: tuple[int, ...]) -> Transformation:
        obj = object.__new__(cls)
        object.__setattr__(obj, "targets", targets)
        return obj

    @property
    def n(self) -> int:
        return len(self.targets)

    def __call__(self, i: int) -> int:
        return self.targets[i - 1]

    def __mul__(self, other: Transformation) -> Transformation:
        return compose(self, other)

    def __len__(self):
        return len(self.targets)

    def __iter__(self):
        return iter(self.targets)

    def __str__(self):
        return "[" + ",".join(map(str, self.targets)) + "]"

    def __repr__(self):
        return f"Transformation({str(self)})"

    def image(self) -> frozenset[int]:
        return frozenset(self.targets)


@dataclass(frozen=True)
class ForestEdgeList:
    """Labeled forest obtained from a non-permutational transformation.

    ``edges`` holds ``(child, parent)`` pairs sorted by child; the root is
    the unique fixed point and does not appear as a child.
    """

    n: int
    root: int
    edges: tuple[tuple[int, int], ...]


_TEXT_RE = re.compile(r"^\s*\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]\s*$")


def parse(text: str) -> Transformation:
    """Parse the ``[2,3,4,4]`` text form; whitespace is allowed."""
    m = _TEXT_RE.match(text)
    if not m:
        raise ValueError(f"malformed transformation: {text!r}")
    return Transformation(int(x) for x in m.group(1).split(","))


def identity(n: int) -> Transformation:
    return Transformation(range(1, n + 1))


def constant(n: int, j: int) -> Transformation:
    """The constant map sending every state to ``j``."""
    if n < 1 or not 1 <= j <= n:
        raise ValueError(f"constant({n}, {j}): state must lie in 1..n")
    return Transformation([j] * n)


def shift(n: int) -> Transformation:
    """The successor map ``[2, 3, ..., n, n]``."""
    return Transformation([min(i + 1, n) for i in range(1, n + 1)])


def compose(s: Transformation, t: Transformation) -> Transformation:
    """Return ``st``, the map ``i -> (i s) t``."""
    if s.n != t.n:
        raise DegreeMismatchError(f"cannot compose degree {s.n} with degree {t.n}")
    tt = t.targets
    return Transformation._unchecked(tuple([tt[x - 1] for x in s.targets]))


def power(t: Transformation, k: int) -> Transformation:
    if k < 0:
        raise ValueError("power requires k >= 0")
    result = identity(t.n)
    for _ in range(k):
        result = compose(result, t)
    return result


def is_constant(t: Transformation) -> bool:
    return len(set(t.targets)) == 1


def eventual_image(t: Transformation) -> frozenset[int]:
    """The set of periodic points of ``t``, i.e. the image of ``t**n``."""
    points = set(range(1, t.n + 1))
    for _ in range(t.n):
        points = {t(i) for i in points}
    return frozenset(points)


def is_permutational(t: Transformation) -> bool:
    """True if ``t`` permutes some subset of at least two states.

    This holds exactly when ``t`` has at least two periodic points, either on
    a cycle of length >= 2 or as two distinct fixed points.
    """
    return len(eventual_image(t)) >= 2


def fixed_points(t: Transformation) -> list[int]:
    return [i for i in range(1, t.n + 1) if t(i) == i]


def all_transformations(n: int) -> Iterator[Transformation]:
    """Every transformation of degree ``n`` in lexicographic order."""
    if n > _config.ENUMERATION_MAX_DEGREE:
        raise ResourceLimitError(
            f"enumerating {n}**{n} transformations exceeds the degree guard "
            f"({_config.ENUMERATION_MAX_DEGREE})"
        )
    for targets in itertools.product(range(1, n + 1), repeat=n):
        yield Transformation(targets)


def non_permutational(n: int) -> list[Transformation]:
    """All non-permutational transformations of degree ``n``, sorted."""
    return [t for t in all_transformations(n) if not is_permutational(t)]


def count_non_permutational(n: int) -> int:
    """Count non-permutational maps by exhaustive enumeration of all n**n."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    return sum(1 for t in all_transformations(n) if not is_permutational(t))


def to_forest(t: Transformation) -> ForestEdgeList:
    if is_permutational(t):
        raise ValueError(f"{t} is permutational and has no forest encoding")
    (root,) = fixed_points(t)
    edges = tuple((c, t(c)) for c in range(1, t.n + 1) if c != root)
    return ForestEdgeList(t.n, root, edges)


def from_forest(forest: ForestEdgeList) -> Transformation:
    targets = [0] * forest.n
    targets[forest.root - 1] = forest.root
    for child, parent in forest.edges:
        if targets[child - 1]:
            raise ValueError(f"node {child} has two parents")
        targets[child - 1] = parent
    if 0 in targets:
        raise ValueError("forest does not cover every node")
    return Transformation(targets)


def check_permutation(p: Transformation) -> None:
    if len(set(p.targets)) != p.n:
        raise ValueError(f"{p} is not a bijection")


def relabel(t: Transformation, p: Transformation) -> Transformation:
    """Rename states of ``t`` by the bijection ``p``.

    The result ``r`` satisfies ``r(p(i)) = p(t(i))`` for every state ``i``,
    i.e. ``r`` is ``p^-1 t p`` in left-to-right composition.
    """
    if p.n != t.n:
        raise DegreeMismatchError(f"relabeling degree {t.n} by degree {p.n}")
    check_permutation(p)
    targets = [0] * t.n
    for i in range(1, t.n + 1):
        targets[p(i) - 1] = p(t(i))
    return Transformation(targets)


def permutations(n: int) -> Iterator[Transformation]:
    for perm in itertools.permutations(range(1, n + 1)):
        yield Transformation(perm)
