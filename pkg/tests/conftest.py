import pytest
from hypothesis import HealthCheck, settings

from finite_localization.category import FiniteCategory
from finite_localization.fixtures.abelian import gen_ab_skeleton, tensor_monad
from finite_localization.fixtures.groups import abelianization_monad, gen_fingroup_skeleton

settings.register_profile(
    "finloc", derandomize=True, max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("finloc")


def make_chain3() -> FiniteCategory:
    return FiniteCategory.from_table(
        "chain3",
        ["0", "1", "2"],
        [("a", "0", "1"), ("b", "1", "2"), ("c", "0", "2")],
        {("b", "a"): "c"},
    )


@pytest.fixture
def chain3():
    return make_chain3()


@pytest.fixture(scope="module")
def abelian4():
    return gen_ab_skeleton(4)


@pytest.fixture(scope="module")
def tensor2(abelian4):
    return tensor_monad(abelian4, "Z/2")


@pytest.fixture(scope="module")
def groups6():
    return gen_fingroup_skeleton(6)


@pytest.fixture(scope="module")
def abelianization6(groups6):
    return abelianization_monad(groups6)
