import pytest

from markedlin.profiles import (
    LOWER,
    UPPER,
    ControlMatrix,
    Profile,
    TrivialProfileError,
    catalan,
    control_matrix,
    entry_weight,
    enumerate_profiles,
    matrix_from_support,
    minimal_entries,
    outweighs,
    pivotal_entries,
    profile,
)


def M(entries, N):
    return matrix_from_support(entries, N)


@pytest.mark.parametrize("N", [1, 2, 3, 5])
def test_main_stair_profile_hugs_diagonal(N):
    p = profile(M([(1, 1)] + [(i, j) for i in range(1, N + 2) for j in range(i, N + 2)], N))
    assert p == Profile("DR" * (N + 1), LOWER)
    assert pivotal_entries(p) == tuple((i, i) for i in range(1, N + 2))


def test_identity_profile():
    assert profile(((1, 0), (0, 1))).word == "DRDR"


def test_single_upper_entry_n1():
    p = profile(M([(1, 2)], 1))
    assert p == Profile("RDRD", UPPER)
    assert pivotal_entries(p) == ((1, 2),)


def test_single_lower_entry_n1():
    p = profile(M([(2, 1)], 1))
    assert p == Profile("DDRR", LOWER)
    assert pivotal_entries(p) == ((2, 1),)


def test_zero_matrix_has_no_profile():
    with pytest.raises(TrivialProfileError):
        profile(((0, 0), (0, 0)))
    with pytest.raises(TrivialProfileError):
        minimal_entries(((0, 0), (0, 0)))


def test_profile_rejects_bad_words():
    with pytest.raises(ValueError):
        Profile("RRDD", UPPER)  # trivial upper path
    with pytest.raises(ValueError):
        Profile("DRRD", LOWER)
    with pytest.raises(ValueError):
        Profile("DDR", LOWER)


def test_profile_contains_its_matrix():
    A = M([(3, 1), (1, 2), (2, 3)], 2)
    p = profile(A)
    assert all(p.contains((i + 1, j + 1)) for i, r in enumerate(A) for j, x in enumerate(r) if x)


def test_outweighs_examples():
    assert outweighs((4, 2), (4, 3), 3)
    assert not outweighs((2, 2), (2, 2), 3)
    # Same-side entries compare by weight domination: (3,4) has weight
    # (0,0,1) and (2,4) has (0,1,1), so (3,4) is the lighter one.
    assert outweighs((3, 4), (2, 4), 3)
    assert not outweighs((2, 4), (3, 4), 3)
    assert outweighs((2, 4), (1, 4), 3)


def test_outweighs_matches_weight_domination():
    N = 3
    entries = [(i, j) for i in range(1, N + 2) for j in range(1, N + 2) if i != j]
    for a in entries:
        for b in entries:
            wa, wb = entry_weight(*a, N), entry_weight(*b, N)
            dominated = a != b and all(x <= y for x, y in zip(wa, wb))
            assert outweighs(a, b, N) == dominated


def test_lower_entries_outweigh_the_diagonal_and_above():
    assert outweighs((4, 2), (1, 1), 3)
    assert outweighs((4, 2), (1, 4), 3)
    assert outweighs((3, 3), (1, 2), 3)
    assert not outweighs((1, 2), (3, 3), 3)


def test_minimal_entries_examples():
    assert minimal_entries(((1, 1, 0), (0, 1, 1), (0, 0, 1))) == {(1, 1), (2, 2), (3, 3)}
    assert minimal_entries(M([(2, 1), (3, 2)], 2)) == {(2, 1), (3, 2)}
    assert minimal_entries(M([(1, 2)], 1)) == {(1, 2)}


def test_entry_weight_examples():
    assert entry_weight(2, 2, 2) == (0, 0)
    assert entry_weight(2, 1, 2) == (-1, 0)
    assert entry_weight(1, 3, 2) == (1, 1)


def test_control_matrix_examples():
    assert control_matrix(M([(2, 1), (3, 2)], 2)).columns == ((-1, 0), (0, -1))
    assert control_matrix(M([(1, 3), (2, 4)], 4)).columns == ((1, 1, 0, 0), (0, 1, 1, 0))
    assert control_matrix(M([(1, 1), (1, 2)], 1)).columns == ((0,),)


def test_control_matrix_validation():
    with pytest.raises(ValueError):
        ControlMatrix(2, ((0, 1), (1, 0)))  # not canonical order
    with pytest.raises(ValueError):
        ControlMatrix(3, ((1, 0, 1),))  # not contiguous
    with pytest.raises(ValueError):
        ControlMatrix(2, ((1, 0), (0, -1)))  # mixed signs


@pytest.mark.parametrize("N,count", [(1, 3), (2, 9), (3, 27), (4, 83)])
def test_profile_census(N, count):
    ps = enumerate_profiles(N)
    assert len(ps) == count == 2 * catalan(N + 1) - 1
    assert len(set(ps)) == count
    assert [p.word for p in ps] == sorted(p.word for p in ps)


def test_every_profile_is_realized_by_its_pivots():
    for N in (1, 2, 3):
        for p in enumerate_profiles(N):
            piv = pivotal_entries(p)
            assert profile(M(piv, N)) == p
