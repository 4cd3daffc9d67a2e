"""Sign pattern parsing, families, transforms, and irreducibility."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from refined_inertia.patterns import (
    PatternParseError,
    Permutation,
    PermSim,
    Sign,
    Signature,
    SignPattern,
    SigSim,
    Transpose,
    are_equivalent,
    family_pattern,
    find_equivalence,
    is_irreducible,
    parse_pattern,
    render_pattern,
    sgn_of_matrix,
    transform,
)

P, M, Z = Sign.PLUS, Sign.MINUS, Sign.ZERO


def rows_of(text):
    return parse_pattern(text)


# -- parsing -----------------------------------------------------------------


def test_parse_basic():
    pattern = parse_pattern("+ +\n- 0")
    assert pattern.rows == ((P, P), (M, Z))


def test_parse_empty_is_error():
    with pytest.raises(PatternParseError, match="empty"):
        parse_pattern("")


def test_parse_reports_row_and_column():
    with pytest.raises(PatternParseError, match="row 2, column 3"):
        parse_pattern("+ + +\n+ + x\n+ + +")


def test_parse_rejects_non_square():
    with pytest.raises(PatternParseError, match="square"):
        parse_pattern("+ +\n- 0\n0 0")
    with pytest.raises(PatternParseError, match="row 2"):
        parse_pattern("+ +\n- 0 +")


def test_parse_tolerates_extra_whitespace():
    assert parse_pattern("  +   +  \n\n -  0 \n") == parse_pattern("+ +\n- 0")


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.randoms(use_true_random=False))
def test_render_parse_roundtrip(n, rng):
    tokens = [[rng.choice("+-0") for _ in range(n)] for _ in range(n)]
    # noisy but legal text: random extra spaces
    text = "\n".join(" " * rng.randint(0, 2) + ("  ".join(row)) for row in tokens)
    normalized = "\n".join(" ".join(row) for row in tokens)
    assert render_pattern(parse_pattern(text)) == normalized


def test_json_roundtrip():
    pattern = family_pattern(2, 5)
    assert SignPattern.from_json(pattern.to_json()) == pattern


# -- the three families -------------------------------------------------------


def test_family_1_order_4_display():
    expected = rows_of("+ + + +\n- 0 0 0\n- 0 - 0\n- 0 0 -")
    assert family_pattern(1, 4) == expected


def test_family_3_order_5_display():
    got = family_pattern(3, 5)
    assert [row[0] for row in got.rows] == [M, P, P, P, M]
    assert list(got.rows[0]) == [M, P, P, P, P]
    assert [got.rows[k][k] for k in range(5)] == [M, Z, M, M, P]
    nonzero = {(r, c) for r in range(5) for c in range(5) if got.rows[r][c] != Z}
    expected_support = {(0, c) for c in range(5)} | {(r, 0) for r in range(5)} | {(2, 2), (3, 3), (4, 4)}
    assert nonzero == expected_support


def test_family_2_order_4_display():
    expected = rows_of("- + + +\n- 0 0 0\n+ 0 - 0\n+ 0 0 -")
    assert family_pattern(2, 4) == expected


def test_family_rejects_small_orders():
    with pytest.raises(ValueError):
        family_pattern(1, 3)
    with pytest.raises(ValueError):
        family_pattern(4, 5)


@pytest.mark.parametrize("i", [1, 2, 3])
@pytest.mark.parametrize("n", range(4, 13))
def test_family_entry_census(i, n):
    pattern = family_pattern(i, n)
    off_diag = sum(
        1
        for r in range(n)
        for c in range(n)
        if r != c and pattern.rows[r][c] != Z
    )
    assert off_diag == 2 * (n - 1)
    # nonzero off-diagonals only in the first row and column
    for r in range(1, n):
        for c in range(1, n):
            if r != c:
                assert pattern.rows[r][c] == Z
    diag = [pattern.rows[k][k] for k in range(n)]
    assert diag[1] == Z
    assert all(s == M for s in diag[2 : n - 1])
    assert diag[n - 1] == (P if i == 3 else M)


# -- irreducibility ------------------------------------------------------------


def closure_irreducible(pattern):
    """Brute-force oracle: boolean transitive closure, all pairs reachable."""
    n = pattern.n
    reach = [[pattern.rows[r][c] != Z or r == c for c in range(n)] for r in range(n)]
    for k in range(n):
        for r in range(n):
            if reach[r][k]:
                for c in range(n):
                    if reach[k][c]:
                        reach[r][c] = True
    return all(all(row) for row in reach)


@pytest.mark.parametrize("i", [1, 2, 3])
@pytest.mark.parametrize("n", range(4, 13))
def test_families_irreducible(i, n):
    pattern = family_pattern(i, n)
    assert is_irreducible(pattern)
    assert closure_irreducible(pattern)


def test_irreducible_matches_closure_oracle_on_random_patterns():
    rng = random.Random(2024)
    for _ in range(150):
        n = rng.randint(1, 6)
        pattern = SignPattern(
            [[rng.choice([P, M, Z, Z]) for _ in range(n)] for _ in range(n)]
        )
        assert is_irreducible(pattern) == closure_irreducible(pattern)


def test_diagonal_pattern_reducible():
    assert not is_irreducible(rows_of("+ 0\n0 +"))


def test_single_vertex_convention():
    assert is_irreducible(rows_of("0"))


# -- transforms ----------------------------------------------------------------


def test_identity_signature_is_noop():
    pattern = family_pattern(1, 5)
    assert transform(pattern, SigSim(Signature([1] * 5))) == pattern


def test_transpose_involution():
    pattern = family_pattern(2, 6)
    assert transform(transform(pattern, Transpose()), Transpose()) == pattern


def test_perm_sim_composition_law():
    rng = random.Random(7)
    pattern = family_pattern(3, 5)
    for _ in range(25):
        sigma = Permutation(rng.sample(range(5), 5))
        tau = Permutation(rng.sample(range(5), 5))
        via_two = transform(transform(pattern, PermSim(sigma)), PermSim(tau))
        via_one = transform(pattern, PermSim(tau.compose(sigma)))
        assert via_two == via_one


def test_transforms_preserve_irreducibility():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(2, 5)
        pattern = SignPattern(
            [[rng.choice([P, M, Z, Z]) for _ in range(n)] for _ in range(n)]
        )
        ops = [
            Transpose(),
            PermSim(Permutation(rng.sample(range(n), n))),
            SigSim(Signature([rng.choice([1, -1]) for _ in range(n)])),
        ]
        for op in ops:
            assert is_irreducible(transform(pattern, op)) == is_irreducible(pattern)


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        transform(family_pattern(1, 5), PermSim(Permutation([0, 1, 2])))
    with pytest.raises(ValueError):
        transform(family_pattern(1, 5), SigSim(Signature([1, -1])))


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
    with pytest.raises(ValueError):
        Signature([1, 0])


# -- equivalence search ----------------------------------------------------------


def test_equivalence_to_flipped_arrow():
    """The order-4 family-1 pattern is equivalent to its row/column sign flip."""
    start = family_pattern(1, 4)
    target_found = None
    # search the group for an image with first column all + below the head
    # and first row all - right of the head
    witness = None
    goal = None
    n = 4
    for sig in [Signature([-1, 1, 1, 1])]:
        goal = transform(start, SigSim(sig))
    assert [row[0] for row in goal.rows][1:] == [P, P, P]
    assert list(goal.rows[0])[1:] == [M, M, M]
    witness = find_equivalence(start, goal)
    assert witness is not None
    assert witness.apply(start) == goal


def test_equivalence_of_inequivalent_patterns():
    assert not are_equivalent(family_pattern(1, 4), family_pattern(2, 4))


def test_equivalence_respects_order_limit():
    with pytest.raises(ValueError):
        find_equivalence(family_pattern(1, 6), family_pattern(1, 6))


def test_equivalence_different_orders():
    assert not are_equivalent(family_pattern(1, 4), family_pattern(1, 5))


# -- sgn of matrix ---------------------------------------------------------------


def test_sgn_of_matrix_basic():
    assert sgn_of_matrix([[1.5, -2], [0, 3]]) == rows_of("+ -\n0 +")


def test_sgn_of_zero_matrix():
    assert sgn_of_matrix([[0, 0], [0, 0]]) == rows_of("0 0\n0 0")
