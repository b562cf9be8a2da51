import pytest
from hypothesis import given, strategies as st

from finite_localization.category import check_category
from finite_localization.config import Budget
from finite_localization.errors import (
    BudgetExceededError,
    DslError,
    ShapeMismatchError,
    UnknownIdError,
    UnsupportedCategoryError,
)
from finite_localization.fixtures import Fixture, build_fixture
from finite_localization.fixtures.abelian import (
    brute_force_hom_count,
    gen_ab_skeleton,
    group_name,
    hom_count_formula,
    invariant_factor_forms,
    is_module_carrier,
    parse_group,
    parse_ring,
    tensor_order_oracle,
)
from finite_localization.fixtures.groups import check_abelianization_universal, gen_fingroup_skeleton
from finite_localization.fixtures.posets import (
    antichain,
    chain,
    closure_operators,
    enumerate_posets,
    galois_connections,
    gen_poset,
    lattice,
    lattices,
    parse_relation,
)
from finite_localization.fixtures.sweeps import closure_pairs, enumerate_test_morphisms

SMALL_FORMS = invariant_factor_forms(4)


# -- abelian groups ---------------------------------------------------------------


def test_invariant_factor_forms():
    assert SMALL_FORMS == [(), (2,), (3,), (4,), (2, 2)]
    assert [group_name(f) for f in SMALL_FORMS] == ["0", "Z2", "Z3", "Z4", "Z2xZ2"]
    assert len(invariant_factor_forms(8)) == 11


def test_parse_group():
    assert parse_group("Z/2xZ/4") == (2, 4)
    assert parse_group("Z2xZ4") == (2, 4)
    assert parse_group("0") == ()
    with pytest.raises(UnknownIdError):
        parse_group("Q8")


@given(st.sampled_from(SMALL_FORMS), st.sampled_from(SMALL_FORMS))
def test_hom_counts_match_brute_force(source, target):
    assert hom_count_formula(source, target) == brute_force_hom_count(source, target)


def test_skeleton(abelian4):
    cat = abelian4.category
    assert cat.objects == ("0", "Z2", "Z3", "Z4", "Z2xZ2")
    assert check_category(cat) == []
    for a in cat.objects:
        for b in cat.objects:
            assert len(cat.hom(a, b)) == hom_count_formula(parse_group(a), parse_group(b))
    assert abelian4.morphism("Z4", "Z2", [[1]]) == "Z4->Z2[1]"
    assert abelian4.zero("0", "Z2") == "0->Z2[]"


def test_skeleton_budget():
    with pytest.raises(BudgetExceededError):
        gen_ab_skeleton(8, budget=Budget(max_objects=5))


def test_tensor_monad(abelian4, tensor2):
    t = tensor2.functor
    assert t.ob("Z4") == "Z2"
    assert t.ob("Z3") == "0"
    assert t.ob("Z2xZ2") == "Z2xZ2"
    for x in abelian4.category.objects:
        order = tensor_order_oracle((2,), parse_group(x))
        assert abelian4.order(t.ob(x)) == order


def test_tensor_order_oracle():
    assert tensor_order_oracle((2,), (4,)) == 2
    assert tensor_order_oracle((3,), (2,)) == 1
    assert tensor_order_oracle((4,), (4,)) == 4


def test_rings():
    assert parse_ring("Z/2") == 2
    assert parse_ring("Z3") == 3
    assert parse_ring(4) == 4
    with pytest.raises(UnsupportedCategoryError):
        parse_ring("Z")
    with pytest.raises(UnsupportedCategoryError):
        parse_ring("Z/1")
    assert is_module_carrier((2, 2), 2)
    assert not is_module_carrier((4,), 2)


# -- groups -----------------------------------------------------------------------


def test_group_skeleton(groups6, abelianization6):
    cat = groups6.category
    assert cat.objects == ("1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3")
    assert abelianization6.functor.ob("S3") == "Z2"
    assert abelianization6.functor.ob("Z6") == "Z6"
    assert check_abelianization_universal(groups6, abelianization6) == []
    assert len(cat.hom("S3", "Z2")) == 2


def test_group_table_limit():
    with pytest.raises(UnsupportedCategoryError):
        gen_fingroup_skeleton(9)


# -- posets -----------------------------------------------------------------------


def test_poset_counts():
    assert [len(enumerate_posets(n)) for n in range(1, 5)] == [1, 2, 5, 16]
    assert len(closure_operators(chain(2))) == 2
    assert len(closure_operators(chain(3))) == 4
    assert closure_operators(chain(3))[0] == ("0", "1", "2")


def test_relations():
    vee = parse_relation("a<b, a<c")
    assert vee.elements == ("a", "b", "c")
    assert vee.leq("a", "c") and not vee.leq("b", "c")
    assert not vee.is_lattice
    assert vee.covers == [("a", "b"), ("a", "c")]
    assert vee.down("b") == ["a", "b"] and vee.up("b") == ["b"]
    assert lattice("diamond").is_lattice
    assert parse_relation("x<y, y<z").leq("x", "z")
    assert gen_poset("x<y, y<z").hom("x", "z") == ("x->z",)
    with pytest.raises(ShapeMismatchError):
        parse_relation("a<b, b<a")
    with pytest.raises(DslError):
        parse_relation("a<=b")
    with pytest.raises(ValueError):
        lattice("cube")


def test_small_shapes():
    assert chain(3).category.hom("0", "2") == ("0->2",)
    assert antichain(3).category.hom("0", "1") == ()
    assert [p.name for p in lattices(2)] == ["p1_0", "p2_1"]


def test_galois_connection_count():
    assert len(galois_connections(chain(2), chain(2))) == 2


def test_closure_pairs():
    pairs = closure_pairs(chain(3))
    assert len(pairs) == 16


def test_test_morphisms(abelian4):
    assert enumerate_test_morphisms(chain(3).category) == ["0->1", "0->2", "1->2"]
    cat = abelian4.category
    everything = enumerate_test_morphisms(cat)
    reduced = enumerate_test_morphisms(cat, up_to_iso=True)
    assert set(reduced) <= set(everything)
    assert len(reduced) < len(everything)


# -- named fixtures ---------------------------------------------------------------


def test_build_fixture_names():
    assert build_fixture("poset", {"chain": 3}).name == "chain3"
    assert build_fixture("poset", {"lattice": "diamond"}).name == "diamond"
    assert build_fixture("abelian", {}).name == "abelian4"
    assert build_fixture("poset", {"relation": "a<b"}, name="ab").category.name == "ab"


def test_build_fixture_errors():
    with pytest.raises(ValueError):
        build_fixture("rings", {})
    with pytest.raises(ValueError):
        build_fixture("poset", {"chain": 2, "antichain": 2})


def test_fixture_monads():
    fixture = build_fixture("poset", {"chain": 3})
    assert isinstance(fixture, Fixture)
    assert fixture.monad("closure", 0).functor.ob("1") == "1"
    with pytest.raises(ShapeMismatchError):
        fixture.monad("tensor", "Z/2")
    with pytest.raises(UnknownIdError):
        fixture.monad("closure", 9)
    with pytest.raises(ValueError):
        fixture.monad("free", None)
