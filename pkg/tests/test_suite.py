import pytest

from finite_localization.config import EngineConfig
from finite_localization.suite import AcceptanceSuite, SweepSizes, run_suite


def test_quick_subset_passes():
    report = run_suite(EngineConfig(), quick=True, only=["dsl", "colimits"])
    assert [c.name for c in report.checks] == ["dsl", "colimits"]
    assert report.passed, [c.detail for c in report.checks]
    assert report.to_dict()["mode"] == "quick"


def test_unknown_check_is_rejected():
    with pytest.raises(ValueError):
        AcceptanceSuite.from_config(EngineConfig(), quick=True).run(["everything"])


def test_quick_mode_shrinks_sweeps():
    quick, full = SweepSizes.for_mode(True), SweepSizes.for_mode(False)
    assert quick.poset_size < full.poset_size
    assert max(quick.abelian_orders) <= max(full.abelian_orders)


def test_check_names():
    names = list(AcceptanceSuite(EngineConfig()).checks)
    assert names[0] == "laws"
    assert {"thm3.2", "thm4.2", "eq9", "duality", "dsl"} <= set(names)
