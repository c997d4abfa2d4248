"""Deterministic finite automata with 1-based states.

Besides the usual minimality check this module extracts the transition
semigroup of a DFA and classifies the accepted language as finite,
cofinite, reverse definite or definite.  Each class is decided twice, once
from the shape of the state graph and once from the idempotents of the
semigroup, and the two answers must agree.
"""

from __future__ import annotations

import heapq
import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .semigroups import (
    IdempotentReport,
    TransformationSemigroup,
    closure,
    idempotent_report,
    is_non_permutational,
)
from .transforms import Transformation, compose


class NotMinimalError(ValueError):
    pass


class ClassificationDisagreement(RuntimeError):
    """Structural and algebraic classification gave different answers."""


@dataclass(frozen=True)
class Dfa:
    n: int
    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    start: int
    finals: frozenset[int]

    def __init__(self, n, alphabet, delta, start, finals):
        alphabet = tuple(str(a) for a in alphabet)
        delta = tuple(tuple(int(x) for x in row) for row in delta)
        finals = frozenset(int(f) for f in finals)
        if n < 1:
            raise ValueError("a DFA needs at least one state")
        if not alphabet:
            raise ValueError("alphabet must be non-empty")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet has duplicate symbols")
        if len(delta) != n or any(len(row) != len(alphabet) for row in delta):
            raise ValueError("delta must have n rows of one entry per symbol")
        for row in delta:
            for q in row:
                if not 1 <= q <= n:
                    raise ValueError(f"transition target {q} outside 1..{n}")
        if not 1 <= start <= n:
            raise ValueError(f"start state {start} outside 1..{n}")
        if not finals <= set(range(1, n + 1)):
            raise ValueError("final states outside 1..n")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "start", int(start))
        object.__setattr__(self, "finals", finals)

    @classmethod
    def from_letters(cls, letters: Sequence[Transformation], start=1, finals=(), names=None):
        """Build a DFA with one letter acting as each given transformation."""
        n = letters[0].n
        if names is None:
            names = [f"a{i}" for i in range(1, len(letters) + 1)]
        delta = [[t(q) for t in letters] for q in range(1, n + 1)]
        return cls(n, names, delta, start, finals)

    def step(self, q: int, symbol: str) -> int:
        return self.delta[q - 1][self.alphabet.index(symbol)]

    def run(self, q: int, word: Sequence[str]) -> int:
        for a in word:
            q = self.step(q, a)
        return q

    def accepts(self, word: Sequence[str]) -> bool:
        return self.run(self.start, word) in self.finals

    def letter(self, symbol: str) -> Transformation:
        """The transformation performed by a single symbol."""
        if symbol not in self.alphabet:
            raise ValueError(f"unknown symbol {symbol!r}")
        j = self.alphabet.index(symbol)
        return Transformation(row[j] for row in self.delta)

    def letters(self) -> list[Transformation]:
        return [self.letter(a) for a in self.alphabet]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "alphabet": list(self.alphabet),
            "delta": [list(row) for row in self.delta],
            "start": self.start,
            "finals": sorted(self.finals),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_dot(self) -> str:
        lines = ["digraph dfa {", "  rankdir=LR;", '  __start [shape=point, label=""];']
        for q in range(1, self.n + 1):
            shape = "doublecircle" if q in self.finals else "circle"
            lines.append(f"  {q} [shape={shape}];")
        lines.append(f"  __start -> {self.start};")
        # merge parallel edges into one labeled arrow
        for q in range(1, self.n + 1):
            targets: dict[int, list[str]] = {}
            for a, r in zip(self.alphabet, self.delta[q - 1]):
                targets.setdefault(r, []).append(a)
            for r, syms in targets.items():
                lines.append(f'  {q} -> {r} [label="{",".join(syms)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def loads(text: str) -> Dfa:
    doc = json.loads(text)
    try:
        return Dfa(doc["n"], doc["alphabet"], doc["delta"], doc["start"], doc["finals"])
    except KeyError as exc:
        raise ValueError(f"DFA document is missing field {exc}") from None


def transformation_of_word(D: Dfa, word: Sequence[str]) -> Transformation:
    """The transformation of the states performed by a non-empty word."""
    if not word:
        raise ValueError("the empty word is not in the semigroup")
    t = D.letter(word[0])
    for a in word[1:]:
        t = compose(t, D.letter(a))
    return t


def reachable(D: Dfa) -> set[int]:
    seen = {D.start}
    queue = deque([D.start])
    while queue:
        q = queue.popleft()
        for r in D.delta[q - 1]:
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return seen


def equivalence_classes(D: Dfa) -> list[int]:
    """Moore partition refinement; returns a block id for every state."""
    block = [1 if q in D.finals else 0 for q in range(1, D.n + 1)]
    while True:
        signatures = [
            (block[q - 1], tuple(block[r - 1] for r in D.delta[q - 1])) for q in range(1, D.n + 1)
        ]
        ids: dict = {}
        refined = [ids.setdefault(sig, len(ids)) for sig in signatures]
        if len(ids) == len(set(block)):
            return refined
        block = refined


@dataclass(frozen=True)
class MinimalityResult:
    minimal: bool
    unreachable: Optional[int] = None
    equivalent_pair: Optional[tuple[int, int]] = None

    def __bool__(self):
        return self.minimal


def is_minimal(D: Dfa) -> MinimalityResult:
    missing = set(range(1, D.n + 1)) - reachable(D)
    if missing:
        return MinimalityResult(False, unreachable=min(missing))
    blocks = equivalence_classes(D)
    first: dict[int, int] = {}
    for q, b in enumerate(blocks, start=1):
        if b in first:
            return MinimalityResult(False, equivalent_pair=(first[b], q))
        first[b] = q
    return MinimalityResult(True)


def distinguishing_word(D: Dfa, p: int, q: int) -> Optional[tuple[str, ...]]:
    """A shortest word accepted from exactly one of ``p`` and ``q``, or None."""
    start = (p, q)
    parent = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        a, b = pair
        if (a in D.finals) != (b in D.finals):
            word = []
            while parent[pair] is not None:
                pair, sym = parent[pair]
                word.append(sym)
            return tuple(reversed(word))
        for j, sym in enumerate(D.alphabet):
            nxt = (D.delta[a - 1][j], D.delta[b - 1][j])
            if nxt not in parent:
                parent[nxt] = (pair, sym)
                queue.append(nxt)
    return None


def syntactic_semigroup(D: Dfa) -> TransformationSemigroup:
    """Transition semigroup of a minimal DFA; its size is the syntactic complexity."""
    result = is_minimal(D)
    if not result:
        raise NotMinimalError(f"DFA is not minimal: {result}")
    return closure(D.letters())


def complement(D: Dfa) -> Dfa:
    finals = set(range(1, D.n + 1)) - D.finals
    return Dfa(D.n, D.alphabet, D.delta, D.start, finals)


FINITE = "finite"
REVERSE_DEFINITE = "reverse_definite"


def _numbering(D: Dfa, mode: str) -> tuple[Optional[tuple[int, ...]], str]:
    if mode not in (FINITE, REVERSE_DEFINITE):
        raise ValueError(f"unknown numbering mode {mode!r}")
    states = range(1, D.n + 1)
    sinks = [q for q in states if all(r == q for r in D.delta[q - 1])]
    for q in states:
        if q not in sinks and q in D.delta[q - 1]:
            return None, f"state {q} has a self-loop but is not a sink"
    if not sinks:
        return None, "no sink state"
    if mode == FINITE and len(sinks) > 1:
        return None, f"{len(sinks)} sink states"
    if mode == REVERSE_DEFINITE:
        if len(sinks) > 2:
            return None, f"{len(sinks)} sink states"
        if len(sinks) == 2 and (sinks[0] in D.finals) == (sinks[1] in D.finals):
            return None, "two sinks of equal finality"

    inner = [q for q in states if q not in sinks]
    indegree = {q: 0 for q in inner}
    for q in inner:
        for r in D.delta[q - 1]:
            if r in indegree:
                indegree[r] += 1
    ready = [q for q in inner if indegree[q] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        q = heapq.heappop(ready)
        order.append(q)
        for r in D.delta[q - 1]:
            if r in indegree:
                indegree[r] -= 1
                if indegree[r] == 0:
                    heapq.heappush(ready, r)
    if len(order) != len(inner):
        return None, "cycle among non-sink states"

    # non-final sink before final sink: labels n-1 (empty quotient) and n
    order += sorted(sinks, key=lambda q: q in D.finals)
    labels = [0] * D.n
    for new, q in enumerate(order, start=1):
        labels[q - 1] = new
    return tuple(labels), "ok"


def acyclic_numbering(D: Dfa, mode: str = FINITE) -> Optional[tuple[int, ...]]:
    """Relabel states so that letters strictly increase labels outside the sinks.

    Returns a tuple whose entry ``q - 1`` is the new label of state ``q``, or
    None.  In ``finite`` mode exactly one sink is allowed and it gets label n.
    In ``reverse_definite`` mode a second sink is allowed; the non-final sink
    becomes n - 1 and the final one n.
    """
    return _numbering(D, mode)[0]


@dataclass(frozen=True)
class ClassificationReport:
    is_finite: bool
    is_cofinite: bool
    is_reverse_definite: bool
    is_definite: bool
    sigma: int
    structural_evidence: str
    algebraic_evidence: IdempotentReport = field(repr=False)

    @property
    def label(self) -> str:
        """The narrowest class the language belongs to."""
        if self.is_finite:
            return "finite"
        if self.is_cofinite:
            return "cofinite"
        if self.is_reverse_definite:
            return "reverse-definite"
        if self.is_definite:
            return "definite"
        return "none"

    def summary(self) -> str:
        flags = ", ".join(
            name
            for name, on in [
                ("finite", self.is_finite),
                ("cofinite", self.is_cofinite),
                ("reverse-definite", self.is_reverse_definite),
                ("definite", self.is_definite),
            ]
            if on
        )
        return f"{self.label}, σ={self.sigma} [{flags or 'no class'}]"


def classify(D: Dfa) -> ClassificationReport:
    S = syntactic_semigroup(D)
    idem = idempotent_report(S)

    finite_labels, finite_reason = _numbering(D, FINITE)
    if finite_labels is not None:
        sink = finite_labels.index(D.n) + 1
        is_finite = sink not in D.finals
        is_cofinite = not is_finite
    else:
        is_finite = is_cofinite = False
    rd_labels, rd_reason = _numbering(D, REVERSE_DEFINITE)
    is_rd = rd_labels is not None
    is_def = is_non_permutational(S)

    checks = [
        ("finite/cofinite", is_finite or is_cofinite, idem.nilpotent),
        ("definite", is_def, idem.all_right_zero),
        ("reverse definite", is_rd, idem.all_left_zero),
    ]
    for name, structural, algebraic in checks:
        if structural != algebraic:
            raise ClassificationDisagreement(
                f"{name}: structural={structural} algebraic={algebraic} for {D.to_dict()}"
            )

    if finite_labels is not None:
        evidence = f"numbering {list(finite_labels)}"
    elif rd_labels is not None:
        evidence = f"numbering {list(rd_labels)} (two sinks)"
    else:
        reasons = dict.fromkeys([finite_reason, rd_reason])
        evidence = "no acyclic numbering: " + "; ".join(reasons)
    return ClassificationReport(
        is_finite=is_finite,
        is_cofinite=is_cofinite,
        is_reverse_definite=is_rd,
        is_definite=is_def,
        sigma=len(S),
        structural_evidence=evidence,
        algebraic_evidence=idem,
    )


def random_dfa(rng: random.Random, n: int, k: int) -> Dfa:
    """A DFA with uniform random transitions and finals, started in state 1."""
    delta = [[rng.randint(1, n) for _ in range(k)] for _ in range(n)]
    finals = [q for q in range(1, n + 1) if rng.random() < 0.5]
    return Dfa(n, [f"a{j}" for j in range(1, k + 1)], delta, 1, finals)
