"""Brute-force enumeration of exact antecedents on quantized small instances."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzyabduce.core import FuzzySet, Universe, UniverseMismatchError, make_universe
from fuzzyabduce.inference import Relation, Rule, build_relation, gmp
from fuzzyabduce.oracle import (
    QuantizedSearch,
    enumerate_solutions,
    greatest_enumerated,
    snap_to_levels,
)

U2 = Universe("u", np.array([0.0, 1.0]))
V2 = Universe("v", np.array([0.0, 1.0]))


def goedel_rule():
    return Rule(FuzzySet(U2, [1, 0.4]), FuzzySet(V2, [0.8, 0.2]),
                "variation", "goedel", "minimum")


def test_enumeration_finds_the_known_solution_set():
    relation = build_relation(goedel_rule())
    target = FuzzySet(V2, [0.8, 0.2])
    solutions = enumerate_solutions(relation, target, "minimum")
    assert len(solutions) == 35
    top = greatest_enumerated(solutions)
    assert np.allclose(top.mu, [1.0, 0.8])
    # the pointwise maximum is itself a solution for this residuated relation
    assert np.allclose(gmp(relation, top, "minimum").mu, target.mu)


def test_solutions_come_back_in_lexicographic_order():
    relation = build_relation(goedel_rule())
    solutions = enumerate_solutions(relation, FuzzySet(V2, [0.8, 0.2]), "minimum")
    vectors = [tuple(s.mu) for s in solutions]
    assert vectors == sorted(vectors)


def test_every_enumerated_solution_reproduces_the_target():
    relation = build_relation(goedel_rule())
    target = FuzzySet(V2, [0.8, 0.2])
    for s in enumerate_solutions(relation, target, "minimum"):
        assert np.max(np.abs(gmp(relation, s, "minimum").mu - target.mu)) <= 1e-9


def test_unreachable_target_has_no_solutions():
    rule = Rule(FuzzySet(U2, [0.5, 0.5]), FuzzySet(V2, [0.3, 0.3]),
                "variation", "goedel", "minimum")
    assert enumerate_solutions(build_relation(rule), FuzzySet(V2, [0.9, 0.2]), "minimum") == []


def test_zero_target_forces_zero_antecedent():
    # every relation entry is positive, so only the empty antecedent maps to zero
    relation = build_relation(goedel_rule())
    solutions = enumerate_solutions(relation, FuzzySet(V2, [0, 0]), "minimum")
    assert len(solutions) == 1
    assert np.array_equal(solutions[0].mu, [0, 0])


def test_off_grid_observation_is_snapped_first():
    snapped, shift = snap_to_levels(np.array([0.83, 0.21]), 11)
    assert np.allclose(snapped, [0.8, 0.2])
    assert shift == pytest.approx(0.03)
    relation = build_relation(goedel_rule())
    near = enumerate_solutions(relation, FuzzySet(V2, [0.83, 0.21]), "minimum")
    exact = enumerate_solutions(relation, FuzzySet(V2, [0.8, 0.2]), "minimum")
    assert len(near) == len(exact) == 35


def test_snap_of_empty_vector():
    snapped, shift = snap_to_levels(np.array([]), 11)
    assert snapped.size == 0 and shift == 0.0


def test_search_bounds_are_enforced():
    with pytest.raises(ValueError, match="at least 2 levels"):
        QuantizedSearch(levels=1)
    with pytest.raises(ValueError, match="positive"):
        QuantizedSearch(max_points=0)

    wide = make_universe("u", 0, 1, 6)
    relation = Relation(wide, V2, np.ones((6, 2)))
    with pytest.raises(ValueError, match="exceeds the limit"):
        enumerate_solutions(relation, FuzzySet(V2, [1, 1]), "minimum")

    four = make_universe("u", 0, 1, 4)
    relation = Relation(four, V2, np.ones((4, 2)))
    big = QuantizedSearch(levels=101, max_points=5)  # 101**4 > 10^7
    with pytest.raises(ValueError, match="candidates"):
        enumerate_solutions(relation, FuzzySet(V2, [1, 1]), "minimum", big)


def test_enumeration_checks_observation_universe():
    relation = build_relation(goedel_rule())
    with pytest.raises(UniverseMismatchError):
        enumerate_solutions(relation, FuzzySet(make_universe("w", 0, 1, 2), [0, 0]), "minimum")


def test_greatest_of_nothing_is_none():
    assert greatest_enumerated([]) is None


def test_greatest_of_single_solution_is_itself():
    s = FuzzySet(U2, [0.3, 0.7])
    assert np.array_equal(greatest_enumerated([s]).mu, s.mu)


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_enumeration_agrees_with_a_naive_filter(data):
    """Cross-check the chunked vectorized scan against a plain python filter
    on very small instances."""
    import itertools

    m = data.draw(st.integers(1, 3))
    n = data.draw(st.integers(1, 3))
    levels = data.draw(st.sampled_from([3, 5]))
    t_kind = data.draw(st.sampled_from(["minimum", "product", "lukasiewicz"]))
    q = st.sampled_from([i / (levels - 1) for i in range(levels)])
    r = np.array(data.draw(st.lists(st.lists(q, min_size=n, max_size=n),
                                    min_size=m, max_size=m)))
    bp = np.array(data.draw(st.lists(q, min_size=n, max_size=n)))
    u = Universe("u", np.arange(m, dtype=float))
    v = Universe("v", np.arange(n, dtype=float))
    relation = Relation(u, v, r)
    target = FuzzySet(v, bp)

    got = enumerate_solutions(relation, target, t_kind, QuantizedSearch(levels=levels))
    got_vectors = [tuple(s.mu) for s in got]

    grid = np.linspace(0, 1, levels)
    expected = []
    for cand in itertools.product(grid, repeat=m):
        image = gmp(relation, FuzzySet(u, list(cand)), t_kind)
        if np.all(np.abs(image.mu - bp) <= 1e-9):
            expected.append(tuple(FuzzySet(u, list(cand)).mu))
    assert got_vectors == expected
