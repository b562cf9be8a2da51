import pytest

from finite_localization.config import Budget, EngineConfig
from finite_localization.errors import BudgetExceededError, ConfigError


def test_budget_check():
    budget = Budget(max_objects=3, max_morphisms=10, max_composable_pairs=20)
    budget.check(3, 10, 20)
    with pytest.raises(BudgetExceededError) as info:
        budget.check(4, 1)
    assert info.value.what == "objects"
    assert info.value.limit == 3
    with pytest.raises(BudgetExceededError):
        budget.check(1, 11)
    with pytest.raises(BudgetExceededError):
        budget.check(1, 1, 21)


def test_defaults():
    config = EngineConfig()
    assert config.budget == Budget()
    assert config.workers == 1
    assert config.output_format == "text"


def test_from_env(monkeypatch):
    monkeypatch.setenv("FINLOC_MAX_OBJECTS", "12")
    monkeypatch.setenv("FINLOC_MAX_MORPHISMS", "")
    config = EngineConfig.from_env()
    assert config.max_objects == 12
    assert config.max_morphisms == Budget().max_morphisms


@pytest.mark.parametrize("value", ["many", "0", "-3"])
def test_bad_env_values(monkeypatch, value):
    monkeypatch.setenv("FINLOC_MAX_MORPHISMS", value)
    with pytest.raises(ConfigError):
        EngineConfig.from_env()


def test_overrides_ignore_none():
    config = EngineConfig().with_overrides(workers=4, max_objects=None, output_format="structured")
    assert config.workers == 4
    assert config.max_objects == Budget().max_objects
    assert config.output_format == "structured"


def test_invalid_config():
    with pytest.raises(ValueError):
        EngineConfig(output_format="yaml")
    with pytest.raises(ConfigError):
        EngineConfig(workers=0)
