"""Acceptance criteria 1-9, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line (repeated in the
terminal summary) with its wall time; time limits are part of the check.
"""

import contextlib
import itertools
import math
import random
import time

import pytest
from conftest import LISTING_A4, LISTING_APRIME4, LISTING_B4, marked, record_acceptance

from syncomplex.automata import (
    FINITE,
    REVERSE_DEFINITE,
    acyclic_numbering,
    classify,
    complement,
    is_minimal,
    random_dfa,
    syntactic_semigroup,
)
from syncomplex.search import max_non_permutational, oracle_max_size, verify_B_maximality
from syncomplex.semigroups import closure, idempotent_report, minimal_generating_set
from syncomplex.transforms import (
    Transformation,
    constant,
    count_non_permutational,
    from_forest,
    is_constant,
    non_permutational,
    to_forest,
)
from syncomplex.witnesses import band_of, build, classification_corpus, decompose, examples, witness_dfa

T = Transformation


@contextlib.contextmanager
def criterion(number, title, limit=None):
    started = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - started
        record_acceptance(f"[FAIL] {number}. {title} ({elapsed:.2f}s): {type(exc).__name__}: {exc}")
        raise
    elapsed = time.perf_counter() - started
    if limit is not None and elapsed >= limit:
        record_acceptance(f"[FAIL] {number}. {title} ({elapsed:.2f}s, limit {limit}s)")
        pytest.fail(f"criterion {number} took {elapsed:.2f}s, limit {limit}s")
    record_acceptance(f"[PASS] {number}. {title} ({elapsed:.2f}s)")


def test_1_finite_cofinite_bound():
    with criterion(1, "finite/cofinite bound (n-1)!, n = 3..6", limit=5):
        for n, a, g in [(3, 2, 1), (4, 6, 4), (5, 24, 18), (6, 120, 96)]:
            G = build("G", n)
            assert len(G) == g
            assert len(closure(G)) == len(build("A", n)) == a == math.factorial(n - 1)
            d = witness_dfa("finite", n)
            assert is_minimal(d)
            r = classify(d)
            assert r.is_finite and r.label == "finite"
            assert r.sigma == math.factorial(n - 1)


def test_2_reverse_definite():
    with criterion(2, "reverse definite bound, n = 4..6", limit=5):
        for n, a, g in [(4, 6, 2), (5, 24, 12), (6, 120, 72)]:
            A, G = build("Aprime", n), build("Gprime", n)
            assert (len(A), len(G)) == (a, g)
            assert closure(G).elements == A
            d = witness_dfa("reverse-definite", n)
            assert is_minimal(d)
            r = classify(d)
            assert r.is_reverse_definite and r.label == "reverse-definite"
            assert not r.is_finite and not r.is_cofinite
            assert r.sigma == a


def test_3_definite_families():
    with criterion(3, "definite families B_n, H_n, B_{n,k}", limit=10):
        assert [len(build("B", n)) for n in range(2, 7)] == [2, 5, 16, 65, 326]
        assert [len(build("H", n)) for n in range(3, 7)] == [3, 11, 49, 261]
        for n in range(3, 7):
            assert closure(build("H", n)).elements == build("B", n)
        for n in range(2, 7):
            for k in range(1, n + 1):
                assert len(build("Bk", n, k)) == math.factorial(n - 1) // math.factorial(n - k)


def test_4_examples_exact():
    with criterion(4, "example listings for n = 4 reproduced verbatim"):
        got = examples(4)
        expected = {
            "A_4": marked(LISTING_A4),
            "Aprime_4": marked(LISTING_APRIME4),
            **{f"B_4,{k}": marked(LISTING_B4[k]) for k in range(1, 5)},
        }
        assert got == expected
        b4 = sorted(x for k in range(1, 5) for x in got[f"B_4,{k}"])
        assert b4 == marked(" ".join(LISTING_B4.values()))


def test_5_largest_non_permutational():
    with criterion(5, "largest non-permutational semigroups, n = 2, 3, 4"):
        for n, size in [(2, 2), (3, 5)]:
            started = time.perf_counter()
            r = max_non_permutational(n)
            assert time.perf_counter() - started < 1
            assert r.complete and r.max_size == size
        assert oracle_max_size(3) == 5
        started = time.perf_counter()
        r = max_non_permutational(4)
        assert time.perf_counter() - started < 600
        assert r.complete and r.max_size == 16
        assert r.maxima and not r.generator_failures
        assert all(len(minimal_generating_set(S)) == 11 for S in r.maxima)
        with pytest.raises(ValueError):
            max_non_permutational(5)
        r5 = max_non_permutational(5, budget_nodes=100, best_effort=True)
        assert not r5.complete


def test_6_b_maximality():
    with criterion(6, "B_n maximal for n = 3, 4, 5", limit=60):
        for n in (3, 4, 5):
            r = verify_B_maximality(n)
            assert r.maximal
            assert r.candidates_checked + len(build("B", n)) == n ** (n - 1)
        assert r.candidates_checked + len(build("B", 5)) == 625


def test_7_cayley_count():
    with criterion(7, "n^(n-1) non-permutational maps, forest round trip"):
        assert [count_non_permutational(n) for n in range(1, 7)] == [1, 2, 9, 64, 625, 7776]
        maps = non_permutational(4)
        assert len(maps) == 64
        assert all(from_forest(to_forest(t)) == t for t in maps)


def _words(alphabet, length):
    return itertools.product(alphabet, repeat=length)


def _language_oracle(d):
    """Language-level classes by word enumeration on a minimal DFA."""
    n = d.n
    accepted_long = any(d.accepts(w) for m in range(n, 2 * n) for w in _words(d.alphabet, m))
    rejected_long = any(not d.accepts(w) for m in range(n, 2 * n) for w in _words(d.alphabet, m))
    sinks = {q for q in range(1, n + 1) if all(r == q for r in d.delta[q - 1])}
    rd = all(d.run(d.start, w) in sinks for w in _words(d.alphabet, n))
    definite = all(len({d.run(q, w) for q in range(1, n + 1)}) == 1 for w in _words(d.alphabet, n))
    return {"finite": not accepted_long, "cofinite": not rejected_long, "reverse_definite": rd, "definite": definite}


def test_8_algebraic_characterizations():
    with criterion(8, "structural vs idempotent classification agree on corpus"):
        rng = random.Random(20240601)
        uniform = []
        while len(uniform) < 1000:
            d = random_dfa(rng, rng.randint(1, 4), rng.randint(1, 3))
            if is_minimal(d):
                uniform.append(d)
        corpus = uniform + classification_corpus(11, 500)
        corpus += [witness_dfa(c, n) for c in ("finite", "cofinite", "definite") for n in (3, 4)]
        corpus.append(witness_dfa("reverse-definite", 4))

        agree = 0
        seen = set()
        for d in corpus:
            idem = idempotent_report(syntactic_semigroup(d))
            fin = acyclic_numbering(d, FINITE) is not None
            rd = acyclic_numbering(d, REVERSE_DEFINITE) is not None
            r = classify(d)
            oracle = _language_oracle(d)
            ok = (
                fin == idem.nilpotent == (oracle["finite"] or oracle["cofinite"]) == (r.is_finite or r.is_cofinite)
                and r.is_finite == oracle["finite"]
                and rd == idem.all_left_zero == oracle["reverse_definite"] == r.is_reverse_definite
                and r.is_definite == idem.all_right_zero == oracle["definite"]
            )
            agree += ok
            seen.add(r.label)
        assert len(uniform) >= 1000
        assert agree == len(corpus), f"{agree}/{len(corpus)} agree"
        assert seen == {"finite", "cofinite", "reverse-definite", "definite", "none"}

        for n in range(2, 7):
            rep = idempotent_report(closure(build("A", n)))
            assert rep.idempotents == (constant(n, n),) and rep.unique_zero == constant(n, n)
            assert idempotent_report(closure(build("B", n))).all_right_zero
        for n in range(3, 7):
            assert idempotent_report(closure(build("Aprime", n))).all_left_zero


def test_9_property_suites():
    with criterion(9, "closure laws, decompositions, band lemma, complement invariance"):
        rng = random.Random(9)
        for _ in range(300):
            n = rng.randint(1, 4)
            X = [T([rng.randint(1, n) for _ in range(n)]) for _ in range(rng.randint(1, 3))]
            Y = [T([rng.randint(1, n) for _ in range(n)]) for _ in range(rng.randint(1, 2))]
            cX = closure(X)
            assert set(X) <= set(cX)
            assert closure(cX.elements) == cX
            assert set(cX) <= set(closure(X + Y))
            assert all(s * t in cX for s in cX for t in cX)

        for n in range(3, 6):
            G, H = set(build("G", n)), set(build("H", n))
            for t in build("A", n):
                d = decompose(t, "A")
                assert d.base in G and d.recompose() == t
            for t in build("B", n):
                d = decompose(t, "B")
                assert d.base in H and d.recompose() == t

        for n in (4, 5):
            bands = {k: build("Bk", n, k) for k in range(1, n + 1)}
            for i, j in itertools.combinations(range(1, n + 1), 2):
                for ti in bands[i]:
                    for tj in bands[j]:
                        assert band_of(ti * tj) == tj(i)

        for n in (3, 4, 5):
            for cls in ("finite", "definite") + (("reverse-definite",) if n >= 4 else ()):
                d = witness_dfa(cls, n)
                assert syntactic_semigroup(complement(d)) == syntactic_semigroup(d)
        for d in classification_corpus(13, 200):
            assert syntactic_semigroup(complement(d)) == syntactic_semigroup(d)
            if classify(d).is_definite:
                assert all(is_constant(e) for e in idempotent_report(syntactic_semigroup(d)).idempotents)
