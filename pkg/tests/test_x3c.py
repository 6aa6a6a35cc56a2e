import pytest

from divpop import DomainError, X3CInstance, is_exact_cover, x3c_solve


def test_single_set_cover():
    inst = X3CInstance.build(3, [{1, 2, 3}])
    assert x3c_solve(inst) == (1,)


def test_three_sets_cover():
    inst = X3CInstance.build(6, [{1, 2, 3}, {4, 5, 6}, {1, 4, 5}])
    solution = x3c_solve(inst)
    assert solution == (1, 2)
    assert is_exact_cover(inst, solution)


def test_uncoverable_element():
    inst = X3CInstance.build(6, [{1, 2, 3}, {1, 4, 5}])
    assert x3c_solve(inst) is None


def test_overlapping_sets_need_backtracking():
    inst = X3CInstance.build(
        9,
        [{1, 2, 4}, {3, 5, 6}, {1, 2, 3}, {4, 5, 6}, {7, 8, 9}],
    )
    solution = x3c_solve(inst)
    assert solution is not None and is_exact_cover(inst, solution)


def test_invalid_instances_rejected():
    with pytest.raises(DomainError):
        X3CInstance.build(4, [{1, 2, 3}])  # m not a multiple of 3
    with pytest.raises(DomainError):
        X3CInstance.build(3, [{1, 2}])  # not a 3-set
    with pytest.raises(DomainError):
        X3CInstance.build(3, [{1, 2, 9}])  # element outside ground set


def test_incidence_lists():
    inst = X3CInstance.build(6, [{1, 2, 3}, {1, 4, 5}])
    assert inst.incidence(1) == (1, 2)
    assert inst.incidence(6) == ()


def test_is_exact_cover_rejects_overlap():
    inst = X3CInstance.build(6, [{1, 2, 3}, {1, 4, 5}, {4, 5, 6}])
    assert not is_exact_cover(inst, (1, 2))
    assert is_exact_cover(inst, (1, 3))
