import pytest

from divpop import X3CInstance, build_mixed_reduction, build_popularity_reduction, build_strict_reduction, counterexample_game


@pytest.fixture(scope="session")
def nine_agent_game():
    return counterexample_game()


@pytest.fixture(scope="session")
def solvable_instance():
    return X3CInstance.build(3, [{1, 2, 3}])


@pytest.fixture(scope="session")
def unsolvable_instance():
    # element 6 is uncoverable
    return X3CInstance.build(6, [{1, 2, 3}, {1, 4, 5}])


@pytest.fixture(scope="session")
def solvable_instance_q2():
    return X3CInstance.build(6, [{1, 2, 3}, {4, 5, 6}])


@pytest.fixture(scope="session")
def strict_bundle(solvable_instance):
    return build_strict_reduction(solvable_instance)


@pytest.fixture(scope="session")
def mixed_bundle(solvable_instance):
    return build_mixed_reduction(solvable_instance)


@pytest.fixture(scope="session")
def popularity_bundle(solvable_instance):
    return build_popularity_reduction(solvable_instance)
