import random
from fractions import Fraction

import pytest

from markedlin.algebra import QQ, PrimeField, span
from markedlin.flags import BudgetExceeded, Flag, FlagType
from markedlin.maps import MarkedMap, ProjectiveMatrix, Sheaf, ZeroMatrixError
from markedlin.stability import (
    ExactModeUnavailable,
    Mode,
    NotATestFlag,
    NotGenericError,
    NotStableError,
    StabilityVerdict,
    Status,
    charpoly,
    check_stability,
    companion_form,
    eta,
    flag_bound,
    hilbert_mumford_oracle,
    moduli_coordinates,
    mumford_config,
    omega,
    omega_by_coordinates,
    stable_witness,
    verify_witness,
)

SS = (Status.STABLE, Status.STRICTLY_SEMISTABLE)


def line(v):
    return Flag(len(v), (span([v], len(v)),))


def test_eta_examples():
    assert eta([(1, 0, 0)], [1], 2) == (Fraction(2, 3), Fraction(1, 3))
    assert eta([(0, 0, 1)], [1], 2) == (Fraction(-1, 3), Fraction(-2, 3))
    assert eta([(0, 1), (0, 1)], [1, 1], 1) == (-1,)


def test_omega_examples():
    pts = [(1, 1), (1, 1)]
    assert omega(pts, [1, 1], line((1, 0))) == -1
    assert omega(pts, [1, 1], line((1, 1))) == 1
    f = Flag(3, (span([(1, 0, 0)], 3), span([(1, 0, 0), (0, 1, 0)], 3)))
    assert omega([(1, 1, 1)], [2], f) == -Fraction(2 * 3, 3)


def test_omega_two_routes_agree():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 3)
        pts = [tuple(rng.choice((0, 0, 1, 2)) for _ in range(3)) for _ in range(n)]
        pts = [p if any(p) else (1, 0, 0) for p in pts]
        v = tuple(rng.randint(-2, 2) for _ in range(3))
        v = v if any(v) else (0, 1, 0)
        f = line(v)
        m = [rng.randint(1, 3) for _ in pts]
        assert omega(pts, m, f) == omega_by_coordinates(pts, m, f)


def test_flag_bound_examples():
    T = ((1, 0), (0, 2))
    assert flag_bound(T, line((1, 0)), 5) == 0
    assert flag_bound(T, line((1, 1)), 3) == 3
    assert flag_bound(((0, 1), (0, 0)), line((1, 0)), 3) == -3
    N3 = ((0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (1, 0, 0, 0))
    f = Flag(4, (span([(1, 0, 0, 0)], 4), span([(1, 0, 0, 0), (0, 1, 0, 0)], 4)))
    with pytest.raises(NotATestFlag):
        flag_bound(N3, f, 1)


def test_two_points_at_a_fixed_point_is_unstable():
    mm = MarkedMap.build(((1, 0), (0, 2)), [(1, 0), (1, 0)])
    v = check_stability(mm, Sheaf(1, (1, 1)))
    assert v.status is Status.UNSTABLE and v.mode is Mode.EXACT
    assert v.witness.flag_type is FlagType.TYPE_I
    assert verify_witness(mm, Sheaf(1, (1, 1)), v.witness)


def test_single_cyclic_point_n1_is_stable():
    mm = MarkedMap.build(((1, 0), (0, 2)), [(1, 1)])
    assert check_stability(mm, Sheaf(1, (1,))).status is Status.STABLE


def test_single_point_threshold_depends_on_q():
    # For one cyclic point and invertible T the cyclic flag has Omega = m N / 2.
    T = ((1, 0, 0), (0, 2, 0), (0, 0, 3))
    mm = MarkedMap.build(T, [(1, 1, 1)])
    assert check_stability(mm, Sheaf(1, (1,))).status is Status.STRICTLY_SEMISTABLE
    assert check_stability(mm, Sheaf(2, (1,))).status is Status.STABLE
    assert check_stability(mm, Sheaf(1, (3,))).status is Status.UNSTABLE


def test_single_point_rule_matches_enumeration():
    rng = random.Random(11)
    for p, N in ((3, 1), (3, 2), (5, 2)):
        F = PrimeField(p)
        for _ in range(40):
            T = [[rng.randrange(p) for _ in range(N + 1)] for _ in range(N + 1)]
            v = [rng.randrange(p) for _ in range(N + 1)]
            if not any(map(any, T)) or not any(v):
                continue
            sh = Sheaf(rng.randint(1, 3), (rng.randint(1, 2),))
            mm = MarkedMap.build(T, [v], F)
            from markedlin.stability import _single_point

            assert _single_point(mm, sh).status is check_stability(mm, sh, "exact").status


def test_coincident_points_are_merged():
    T = ((1, 0, 0), (0, 2, 0), (0, 0, 3))
    one = check_stability(MarkedMap.build(T, [(1, 1, 1)]), Sheaf(2, (2,)))
    two = check_stability(MarkedMap.build(T, [(1, 1, 1), (2, 2, 2)]), Sheaf(2, (1, 1)))
    assert one.status is two.status and two.mode is Mode.EXACT


def test_search_mode_labels():
    T = ((1, 1, 0), (0, 1, 1), (1, 0, 2))
    mm = MarkedMap.build(T, [(1, 0, 0), (0, 1, 0)])
    v = check_stability(mm, Sheaf(5, (1, 1)))
    assert v.mode is Mode.SEARCH
    assert v.status in (Status.NO_VIOLATION_IN_FAMILY, Status.UNSTABLE_CERTIFIED)
    with pytest.raises(ExactModeUnavailable):
        check_stability(mm, Sheaf(5, (1, 1)), "exact")
    bad = check_stability(MarkedMap.build(T, [(1, 0, 0), (1, 0, 0)]), Sheaf(1, (1, 1)), "search")
    assert bad.status in (Status.UNSTABLE_CERTIFIED, Status.NO_VIOLATION_IN_FAMILY)


def test_verdict_invariants():
    with pytest.raises(ValueError):
        StabilityVerdict(Status.STABLE, Mode.SEARCH)
    with pytest.raises(ValueError):
        StabilityVerdict(Status.UNSTABLE, Mode.EXACT)


def test_mumford_examples():
    assert mumford_config([(1, 0), (1, 0)], [1, 1], 1).status is Status.UNSTABLE
    assert mumford_config([(1, 0), (0, 1)], [1, 1], 1).status is Status.STRICTLY_SEMISTABLE
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert mumford_config(pts, [1, 1, 1], 2).status is Status.STRICTLY_SEMISTABLE
    pts4 = pts + [(1, 1, 1)]
    assert mumford_config(pts4, [1, 1, 1, 1], 2).status is Status.STABLE


def test_oracle_examples():
    F = PrimeField(2)
    mm = MarkedMap.build(((1, 0), (0, 1)), [(1, 0)], F)
    assert hilbert_mumford_oracle(mm, Sheaf(1, (1,))).status is Status.UNSTABLE
    swap = MarkedMap.build(((0, 1), (1, 0)), [(1, 1)], F)
    assert hilbert_mumford_oracle(swap, Sheaf(1, (1,))).status is check_stability(swap, Sheaf(1, (1,))).status


def test_oracle_budget():
    mm = MarkedMap.build(((1, 0, 0), (0, 2, 0), (0, 0, 3)), [(1, 1, 1)], PrimeField(5))
    with pytest.raises(BudgetExceeded):
        hilbert_mumford_oracle(mm, Sheaf(1, (1,)), budget=10)


def test_stable_witness_shape_and_errors():
    mm = stable_witness(1, 1, 1)
    assert mm.T.rows == ((1, 0), (0, 2)) and mm.points == ((1, 1),)
    mm = stable_witness(2, 2, 2)
    assert mm.T.rows == ((1, 0, 0), (0, 2, 0), (0, 0, 3)) and mm.points == ((1, 1, 1),) * 2
    with pytest.raises(ValueError):
        stable_witness(2, 3, 2)
    with pytest.raises(ValueError):
        stable_witness(3, 1, 1, PrimeField(3))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_stable_witness_is_stable_on_the_line(n):
    assert check_stability(stable_witness(1, n, n), Sheaf.uniform(n, n)).status is Status.STABLE


def test_companion_examples():
    assert companion_form(MarkedMap.build(((1, 0), (0, 2)), [(1, 1)])) == (-2, 3)
    assert companion_form(MarkedMap.build(((0, 1), (1, 0)), [(1, 0)])) == (1, 0)
    with pytest.raises(NotStableError):
        companion_form(MarkedMap.build(((0, 1), (0, 0)), [(0, 1)]))
    with pytest.raises(NotStableError):
        companion_form(MarkedMap.build(((1, 0), (0, 2)), [(1, 0)]))


def test_companion_scaling_weights():
    T = ((1, 2), (3, 4))
    a = companion_form(MarkedMap.build(T, [(1, 0)]))
    b = companion_form(MarkedMap.build(tuple(tuple(2 * x for x in r) for r in T), [(3, 0)]))
    assert b == (a[0] * 4, a[1] * 2)
    assert ProjectiveMatrix(T) == ProjectiveMatrix(tuple(tuple(2 * x for x in r) for r in T))


def test_charpoly_small():
    assert charpoly(((1, 0), (0, 2))) == (2, -3, 1)
    assert charpoly(((0, 1), (1, 0)), PrimeField(5)) == (4, 0, 1)


def test_moduli_coordinates_conjugation_invariant():
    T = ((1, 0, 0), (0, 2, 0), (0, 0, 3))
    pts = [(1, 1, 1), (1, 2, 3)]
    A = ((1, 1, 0), (0, 1, 1), (1, 0, 1))
    from markedlin.algebra import inverse, mat_mul, mat_vec

    TA = mat_mul(mat_mul(A, T), inverse(A))
    a = moduli_coordinates(MarkedMap.build(T, pts))
    b = moduli_coordinates(MarkedMap.build(TA, [mat_vec(A, v) for v in pts]))
    assert a == b
    assert a[0] == (1, 2, 3)


def test_moduli_coordinates_needs_generic_input():
    with pytest.raises(NotGenericError):
        moduli_coordinates(MarkedMap.build(((0, 1), (-1, 0)), [(1, 1), (1, 0)]))
    with pytest.raises(NotGenericError):
        moduli_coordinates(MarkedMap.build(((1, 0), (0, 2)), [(1, 0), (1, 1)]))


def test_map_validation():
    with pytest.raises(ZeroMatrixError):
        ProjectiveMatrix(((0, 0), (0, 0)))
    with pytest.raises(ValueError):
        MarkedMap.build(((1, 0), (0, 1)), [(0, 0)])
    with pytest.raises(ValueError):
        Sheaf(0)
    with pytest.raises(ValueError):
        check_stability(MarkedMap.build(((1, 0), (0, 2)), [(1, 1)]), Sheaf(1, (1, 1)))


def test_gf_verdicts_are_for_rational_flags():
    F = PrimeField(3)
    mm = MarkedMap.build(((0, 1), (-1, 0)), [(1, 0)], F)
    v = check_stability(mm, Sheaf(1, (1,)))
    assert v.meta["rational_flags_only"] is True
    assert QQ != F
