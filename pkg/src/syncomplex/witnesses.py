"""Named transformation families, their witness DFAs and generator decompositions.

Families (all on {1..n}):

``A``       maps with ``i t > i`` for ``i < n`` and ``n t = n``
``G``       members of ``A`` with ``i t = i + 1`` for some ``i <= n - 2``
``Aprime``  maps with ``i t > i`` for ``i <= n - 2`` fixing ``n - 1`` and ``n``
``Gprime``  members of ``Aprime`` with ``i t = i + 1`` for some ``i <= n - 3``
``Bk``      maps with ``i t > i`` for ``i < k`` and ``i t = k`` for ``i >= k``
``B``       union of ``Bk`` over ``k = 1..n``
``C``       members of ``B`` whose images are all below ``n``
``alphaC``  ``C`` with every image raised by one
``H``       ``B`` minus ``alphaC``

Every family is built by direct enumeration of admissible image lists,
never through a closure, so closures can be checked against them.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Optional

from .automata import Dfa, classify, complement, is_minimal, random_dfa, syntactic_semigroup
from .semigroups import (
    closure,
    idempotent_report,
    indecomposables,
    products,
)
from . import _config
from .transforms import Transformation, compose, permutations, power, relabel, shift

FAMILIES = ("A", "G", "Aprime", "Gprime", "Bk", "B", "C", "alphaC", "H")

_MIN_DEGREE = {"G": 3, "Gprime": 4, "H": 3}


class FamilyError(ValueError):
    pass


def _check(tag: str, n: int, k: Optional[int] = None) -> None:
    if tag not in FAMILIES:
        raise FamilyError(f"unknown family {tag!r}")
    lo = _MIN_DEGREE.get(tag, 2)
    if n < lo:
        raise FamilyError(f"family {tag} needs n >= {lo}, got {n}")
    if tag == "Bk":
        if k is None or not 1 <= k <= n:
            raise FamilyError(f"family Bk needs 1 <= k <= n, got k={k}")


def _enumerate(choices) -> list[Transformation]:
    return [Transformation(ts) for ts in itertools.product(*choices)]


def _band(n: int, k: int) -> list[Transformation]:
    choices = [range(i + 1, n + 1) for i in range(1, k)] + [(k,)] * (n - k + 1)
    return _enumerate(choices)


def _a_family(n: int) -> list[Transformation]:
    return _enumerate([range(i + 1, n + 1) for i in range(1, n)] + [(n,)])


def _aprime_family(n: int) -> list[Transformation]:
    return _enumerate([range(i + 1, n + 1) for i in range(1, n - 1)] + [(n - 1,), (n,)])


def _has_unit_step(t: Transformation, upto: int) -> bool:
    return any(t(i) == i + 1 for i in range(1, upto + 1))


def alpha(t: Transformation) -> Transformation:
    """Raise every image by one; defined on ``C``."""
    if band_of(t) is None or max(t.targets) >= t.n:
        raise FamilyError(f"{t} is not in C_{t.n}")
    return Transformation(x + 1 for x in t.targets)


def alpha_inverse(t: Transformation) -> Transformation:
    if not in_alpha_c(t):
        raise FamilyError(f"{t} is not in alpha(C_{t.n})")
    return Transformation(x - 1 for x in t.targets)


def build(tag: str, n: int, k: Optional[int] = None) -> tuple[Transformation, ...]:
    """The members of a family, sorted lexicographically."""
    _check(tag, n, k)
    if tag == "A":
        out = _a_family(n)
    elif tag == "G":
        out = [t for t in _a_family(n) if _has_unit_step(t, n - 2)]
    elif tag == "Aprime":
        out = _aprime_family(n)
    elif tag == "Gprime":
        out = [t for t in _aprime_family(n) if _has_unit_step(t, n - 3)]
    elif tag == "Bk":
        out = _band(n, k)
    elif tag == "B":
        out = [t for j in range(1, n + 1) for t in _band(n, j)]
    elif tag == "C":
        out = [t for t in build("B", n) if max(t.targets) < n]
    elif tag == "alphaC":
        out = [alpha(t) for t in build("C", n)]
    else:
        image = set(build("alphaC", n))
        out = [t for t in build("B", n) if t not in image]
    return tuple(sorted(out))


def in_a(t: Transformation) -> bool:
    n = t.n
    return t(n) == n and all(t(i) > i for i in range(1, n))


def in_aprime(t: Transformation) -> bool:
    n = t.n
    return n >= 2 and t(n) == n and t(n - 1) == n - 1 and all(t(i) > i for i in range(1, n - 1))


def band_of(t: Transformation) -> Optional[int]:
    """The ``k`` with ``t`` in ``B_{n,k}``, or None if ``t`` is not in ``B_n``."""
    fixed = [i for i in range(1, t.n + 1) if t(i) == i]
    if len(fixed) != 1:
        return None
    k = fixed[0]
    if all(t(i) > i for i in range(1, k)) and all(t(i) == k for i in range(k, t.n + 1)):
        return k
    return None


def in_alpha_c(t: Transformation) -> bool:
    if min(t.targets) < 2:
        return False
    lowered = Transformation._unchecked(tuple(x - 1 for x in t.targets))
    return band_of(lowered) is not None


# -- closed forms -----------------------------------------------------------


def floor_e_factorial(m: int) -> int:
    """``floor(e * m!)`` in exact integer arithmetic.

    ``e * m! = sum_{l<=m} m!/l! + sum_{l>m} m!/l!``; the first sum is an
    integer and the tail lies in (0, 1) for ``m >= 1`` and equals ``e - 1``
    for ``m = 0``.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    head = sum(math.factorial(m) // math.factorial(m - j) for j in range(m + 1))
    return head + (1 if m == 0 else 0)


def expected_size(tag: str, n: int, k: Optional[int] = None) -> int:
    """Size of a family from its closed form."""
    _check(tag, n, k)
    f = math.factorial
    if tag in ("A", "Aprime"):
        return f(n - 1)
    if tag == "G":
        return f(n - 1) - f(n - 2)
    if tag == "Gprime":
        return f(n - 1) - 2 * f(n - 2)
    if tag == "Bk":
        return f(n - 1) // f(n - k)
    if tag == "B":
        return floor_e_factorial(n - 1)
    if tag in ("C", "alphaC"):
        return sum(f(n - 2) // f(n - 1 - k) for k in range(1, n))
    return floor_e_factorial(n - 1) - floor_e_factorial(n - 2)


# -- decompositions ---------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """``base * shift**shift_power`` reproduces the decomposed map."""

    base: Transformation
    shift_power: int
    shift: Transformation

    def recompose(self) -> Transformation:
        return compose(self.base, power(self.shift, self.shift_power))


def decompose(t: Transformation, family: str) -> Decomposition:
    """Factor ``t`` as a generator times a power of the successor map."""
    n = t.n
    if family == "A":
        if n < 3 or not in_a(t):
            raise FamilyError(f"{t} is not in A_{n} (n >= 3)")
        k = min(t(i) - i for i in range(1, n - 1)) - 1
        base = Transformation([t(i) - k for i in range(1, n - 1)] + [n, n])
        return Decomposition(base, k, shift(n))
    if family == "B":
        if band_of(t) is None:
            raise FamilyError(f"{t} is not in B_{n}")
        k = 0
        while in_alpha_c(t):
            t = alpha_inverse(t)
            k += 1
        return Decomposition(t, k, shift(n))
    raise FamilyError(f"decompose supports families A and B, not {family!r}")


# -- witness DFAs -----------------------------------------------------------

WITNESS_CLASSES = ("finite", "cofinite", "reverse_definite", "definite")


def _normalize_class(name: str) -> str:
    name = name.replace("-", "_")
    if name not in WITNESS_CLASSES:
        raise FamilyError(f"unknown language class {name!r}")
    return name


def witness_dfa(cls: str, n: int) -> Dfa:
    """A minimal DFA meeting the syntactic complexity bound of its class.

    The alphabet has one letter per generator, named ``a1, a2, ...`` in the
    lexicographic order of the generators.
    """
    cls = _normalize_class(cls)
    if cls in ("finite", "cofinite"):
        if n < 3:
            raise FamilyError("finite/cofinite witnesses need n >= 3")
        dfa = Dfa.from_letters(build("G", n), start=1, finals={n - 1})
        return complement(dfa) if cls == "cofinite" else dfa
    if cls == "reverse_definite":
        if n < 4:
            raise FamilyError("reverse definite witnesses need n >= 4")
        return Dfa.from_letters(build("Gprime", n), start=1, finals={n})
    if n < 3:
        raise FamilyError("definite witnesses need n >= 3")
    return Dfa.from_letters(build("H", n), start=1, finals={n})


WITNESS_FAMILY = {"finite": "A", "cofinite": "A", "reverse_definite": "Aprime", "definite": "B"}


# -- verification table -----------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    observed: object
    status: str  # "pass", "fail" or "skip"


@dataclass
class VerifyReport:
    n: int
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def table(self) -> str:
        width = max(len(c.name) for c in self.checks)
        lines = [f"verify n={self.n}"]
        for c in self.checks:
            lines.append(f"{c.status.upper():4}  {c.name:<{width}}  expected={c.expected}  observed={c.observed}")
        lines.append("ALL PASS" if self.ok else "FAILURES PRESENT")
        return "\n".join(lines) + "\n"


def verify_bounds(n: int, ceiling: Optional[int] = None) -> VerifyReport:
    """Recompute every size formula, generator claim and witness property for ``n``.

    Failures are recorded in the report rather than raised.
    """
    if ceiling is None:
        ceiling = _config.VERIFY_MAX_DEGREE
    if not 3 <= n <= ceiling:
        raise FamilyError(f"verify_bounds needs 3 <= n <= {ceiling}")
    checks: list[Check] = []

    def add(name, expected, observed):
        checks.append(Check(name, expected, observed, "pass" if expected == observed else "fail"))

    def skip(name, why):
        checks.append(Check(name, "-", why, "skip"))

    fam = {tag: build(tag, n) for tag in ("A", "G", "B", "C", "H")}
    for tag in ("A", "G"):
        add(f"|{tag}_{n}|", expected_size(tag, n), len(fam[tag]))
    if n >= 4:
        fam["Aprime"] = build("Aprime", n)
        fam["Gprime"] = build("Gprime", n)
        for tag in ("Aprime", "Gprime"):
            add(f"|{tag}_{n}|", expected_size(tag, n), len(fam[tag]))
    else:
        skip(f"|Aprime_{n}|, |Gprime_{n}|", "alphabet bound needs n >= 4")
    for tag in ("B", "H", "C"):
        add(f"|{tag}_{n}|", expected_size(tag, n), len(fam[tag]))
    for k in range(1, n + 1):
        add(f"|B_{n},{k}|", expected_size("Bk", n, k), len(build("Bk", n, k)))
    add(f"A_{n} == B_{n},{n}", True, fam["A"] == build("Bk", n, n))

    A, B = fam["A"], fam["B"]
    add(f"closure(G_{n}) == A_{n}", True, closure(fam["G"]).elements == A)
    add(f"G_{n} disjoint from A_{n}A_{n}", True, not (set(fam["G"]) & products(A)))
    add(f"closure(H_{n}) == B_{n}", True, closure(fam["H"]).elements == B)
    add(f"H_{n} == indecomposables(B_{n})", True, fam["H"] == indecomposables(closure(B)))
    if n >= 4:
        Ap = fam["Aprime"]
        add(f"closure(Gprime_{n}) == Aprime_{n}", True, closure(fam["Gprime"]).elements == Ap)
        add(f"Gprime_{n} disjoint from Aprime_{n}Aprime_{n}", True, not (set(fam["Gprime"]) & products(Ap)))

    rep_a = idempotent_report(closure(A))
    add(f"A_{n} nilpotent (single idempotent zero)", True, rep_a.nilpotent)
    rep_b = idempotent_report(closure(B))
    add(f"B_{n} idempotents all right zeros", True, rep_b.all_right_zero)
    if n >= 4:
        rep_ap = idempotent_report(closure(fam["Aprime"]))
        add(f"Aprime_{n} idempotents all left zeros", True, rep_ap.all_left_zero)

    for cls in WITNESS_CLASSES:
        if cls == "reverse_definite" and n < 4:
            skip(f"witness {cls}", "needs n >= 4")
            continue
        dfa = witness_dfa(cls, n)
        add(f"witness {cls} minimal", True, bool(is_minimal(dfa)))
        report = classify(dfa)
        expected_label = cls.replace("_", "-")
        add(f"witness {cls} class", expected_label, report.label)
        family = fam.get(WITNESS_FAMILY[cls])
        if family is None:
            family = build(WITNESS_FAMILY[cls], n)
        add(f"witness {cls} semigroup == {WITNESS_FAMILY[cls]}_{n}", True, syntactic_semigroup(dfa).elements == family)
        add(f"witness {cls} sigma", len(family), report.sigma)
    return VerifyReport(n, checks)


# -- classification corpus ---------------------------------------------------


def classification_corpus(seed: int, count: int, max_states: int = 4, max_letters: int = 3) -> list[Dfa]:
    """Seeded random minimal DFAs for cross-checking classification.

    Half of the draws use uniform random transitions; the rest take letters
    from a randomly relabeled ``A``, ``Aprime`` or ``B`` family, so that every
    language class is well represented.
    """
    rng = random.Random(seed)
    pools = {}
    for n in range(2, max_states + 1):
        pools[n] = [build("A", n), build("B", n)] + ([build("Aprime", n)] if n >= 3 else [])
    out: list[Dfa] = []
    while len(out) < count:
        n = rng.randint(1, max_states)
        k = rng.randint(1, max_letters)
        if n == 1 or rng.random() < 0.5:
            dfa = random_dfa(rng, n, k)
        else:
            pool = rng.choice(pools[n])
            p = rng.choice(list(permutations(n)))
            letters = [relabel(rng.choice(pool), p) for _ in range(k)]
            finals = [q for q in range(1, n + 1) if rng.random() < 0.5]
            dfa = Dfa.from_letters(letters, start=p(1), finals=finals)
        if is_minimal(dfa):
            out.append(dfa)
    return out


# -- example listings ---------------------------------------------------------


def marked_listing(elements, generators) -> list[str]:
    """Render elements in order, marking generators with a trailing ``*``."""
    gens = set(generators)
    return [f"{t}*" if t in gens else str(t) for t in sorted(elements)]


def examples(n: int = 4) -> dict[str, list[str]]:
    """The three example semigroups for degree ``n`` with their generators marked."""
    out = {
        f"A_{n}": marked_listing(build("A", n), indecomposables(closure(build("A", n)))),
        f"Aprime_{n}": marked_listing(build("Aprime", n), indecomposables(closure(build("Aprime", n)))),
    }
    B = closure(build("B", n))
    gens = indecomposables(B)
    for k in range(1, n + 1):
        out[f"B_{n},{k}"] = marked_listing(build("Bk", n, k), gens)
    return out
