import numpy as np
import pytest
from hypothesis import given, strategies as st

from finite_localization.category import FiniteCategory
from finite_localization.errors import ShapeMismatchError, TheoremViolation
from finite_localization.fixtures.posets import enumerate_posets
from finite_localization.fixtures.sweeps import enumerate_test_morphisms, localization_sweep
from finite_localization.localization import (
    build_localization,
    check_localization,
    identity_localization,
    is_iso_closed,
    lift_through_unit,
    local_objects,
    localization_from_locals,
    two_out_of_three_violations,
    orthogonal,
    reflect,
    restrict_localization,
)


def test_chain3_localization(chain3):
    assert local_objects(chain3, "b") == ("0", "2")
    loc = build_localization(chain3, "b")
    assert loc is not None
    assert loc.local_objects == ("0", "2")
    assert loc.table() == {
        "0": {"object": "0", "unit": "id_0"},
        "1": {"object": "2", "unit": "b"},
        "2": {"object": "2", "unit": "id_2"},
    }
    assert loc.mor("a") == "c"
    assert loc.is_equivalence("b")
    assert not loc.is_equivalence("a")
    assert check_localization(loc) == []


def test_orthogonality_table(chain3):
    report = orthogonal(chain3, "b", "2")
    assert report.table == {"id_2": "b"}
    assert report.is_bijection
    assert not orthogonal(chain3, "b", "1").is_bijection


def test_no_localization_for_parallel_pair():
    cat = FiniteCategory.from_table("parallel", ["x", "y"], [("u", "x", "y"), ("v", "x", "y")], {})
    assert local_objects(cat, "u") == ()
    assert build_localization(cat, "u") is None


def test_identity_localization(chain3):
    loc = identity_localization(chain3)
    assert loc.local_objects == chain3.objects
    assert all(loc.ob(x) == x for x in chain3.objects)


def test_surjection_in_abelian_skeleton(abelian4):
    cat = abelian4.category
    f = "Z4->Z2[1]"
    assert cat.source(f) == "Z4" and cat.target(f) == "Z2"
    loc = build_localization(cat, f)
    assert loc is not None
    assert set(loc.local_objects) == {"0", "Z2", "Z3", "Z2xZ2"}
    assert loc.ob("Z4") == "Z2"
    assert check_localization(loc) == []


def test_parallel_sweep_matches_serial(abelian4):
    cat = abelian4.category
    serial = localization_sweep(cat, workers=1)
    parallel = localization_sweep(cat, workers=4)
    assert list(serial) == list(parallel)
    for f in serial:
        first, second = serial[f], parallel[f]
        assert (first is None) == (second is None)
        if first is not None:
            assert first.table() == second.table()


def test_restriction(chain3):
    loc = build_localization(chain3, "b")
    restricted = restrict_localization(loc, ["1", "2"])
    assert restricted is not None
    assert restricted.local_objects == ("2",)
    assert restrict_localization(loc, ["0", "1"]) is None


def test_reflect_returns_none_without_locals(chain3):
    assert reflect(chain3, [], "0") is None


@given(st.integers(min_value=1, max_value=3))
def test_poset_localizations_satisfy_invariants(n):
    for poset in enumerate_posets(n):
        cat = poset.category
        for f in enumerate_test_morphisms(cat):
            loc = build_localization(cat, f)
            if loc is None:
                continue
            assert check_localization(loc) == []
            assert loc.local_objects == local_objects(cat, f)
            for x in cat.objects:
                assert loc.ob(loc.ob(x)) == loc.ob(x)
                assert loc.is_equivalence(loc.unit.at(x))


def test_two_out_of_three(chain3):
    # id_0, id_1, id_2, a, b, c with b left out
    mask = np.array([True, True, True, True, False, True])
    (violation,) = two_out_of_three_violations(chain3, mask)
    assert violation.witness == ("b", "a")
    loc = build_localization(chain3, "b")
    assert two_out_of_three_violations(chain3, loc.equivalence_mask) == []


def test_iso_closure():
    cat = FiniteCategory.from_table(
        "iso",
        ["x", "y"],
        [("u", "x", "y"), ("v", "y", "x")],
        {("v", "u"): "id_x", ("u", "v"): "id_y"},
    )
    assert not is_iso_closed(cat, ["x"])
    assert is_iso_closed(cat, ["x", "y"])
    assert is_iso_closed(cat, [])


def test_lift_through_unit(chain3):
    assert lift_through_unit(chain3, "b", "b") == "id_2"
    assert lift_through_unit(chain3, "id_0", "c") == "c"
    with pytest.raises(TheoremViolation):
        lift_through_unit(chain3, "b", "id_1")
    with pytest.raises(ShapeMismatchError):
        lift_through_unit(chain3, "b", "a")


def test_local_classes_given_as_generators(chain3):
    loc = localization_from_locals(chain3, (x for x in ["0", "2"]))
    assert loc is not None
    assert loc.local_objects == ("0", "2")
    restricted = restrict_localization(loc, (x for x in ["1", "2"]))
    assert restricted is not None
    assert restricted.local_objects == ("2",)
