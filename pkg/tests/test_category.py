import itertools

import pytest
from hypothesis import given, strategies as st

from finite_localization.category import (
    FiniteCategory,
    Functor,
    NatTransform,
    check_category,
    check_functor,
    check_interchange,
    check_nat,
    compose_functors,
    full_subcategory,
    hom_set,
    horizontal_compose,
    identity_functor,
    identity_transformation,
    is_epimorphism,
    is_fully_faithful,
    is_isomorphism,
    is_monomorphism,
    opposite,
    product_category,
)
from finite_localization.config import Budget
from finite_localization.errors import BudgetExceededError, ShapeMismatchError, UnknownIdError
from finite_localization.fixtures.posets import chain, enumerate_posets


def test_chain3_is_a_category(chain3):
    assert check_category(chain3) == []
    assert chain3.morphisms == ("id_0", "id_1", "id_2", "a", "b", "c")
    assert chain3.compose("b", "a") == "c"
    assert chain3.compose("id_2", "b", "a", "id_0") == "c"


def test_missing_composite_is_reported():
    cat = FiniteCategory.from_table("broken", ["0", "1", "2"], [("a", "0", "1"), ("b", "1", "2"), ("c", "0", "2")], {})
    laws = {v.law for v in check_category(cat)}
    assert "composition defined" in laws


def test_ill_typed_composite_is_reported():
    cat = FiniteCategory.from_table(
        "bad", ["0", "1", "2"], [("a", "0", "1"), ("b", "1", "2"), ("c", "0", "2")], {("b", "a"): "b"}
    )
    assert "composition typing" in {v.law for v in check_category(cat)}


def test_unknown_endpoint():
    with pytest.raises(UnknownIdError):
        FiniteCategory.from_table("bad", ["0"], [("a", "0", "9")], {})


def test_budget_is_enforced():
    with pytest.raises(BudgetExceededError):
        FiniteCategory.from_table("big", ["0", "1", "2"], [], {}, budget=Budget(max_objects=2))


def test_lookups(chain3):
    assert chain3.hom("0", "2") == ("c",)
    assert chain3.hom("2", "0") == ()
    assert chain3.source("b") == "1" and chain3.target("b") == "2"
    assert chain3.identity("1") == "id_1"
    assert chain3.is_identity("id_1") and not chain3.is_identity("a")
    assert chain3.is_thin()
    with pytest.raises(ShapeMismatchError):
        chain3.compose("a", "b")
    with pytest.raises(UnknownIdError):
        chain3.object_index("7")


def test_isomorphisms_and_epis(chain3):
    assert is_isomorphism(chain3, "id_0") == (True, "id_0")
    assert is_isomorphism(chain3, "a") == (False, None)
    # every morphism of a poset is both epi and mono
    assert all(is_epimorphism(chain3, f) and is_monomorphism(chain3, f) for f in chain3.morphisms)


def test_opposite(chain3):
    op = opposite(chain3)
    assert op.hom("2", "0") == ("c",)
    assert op.compose("a", "b") == "c"
    assert op.opposite() is chain3
    assert check_category(op) == []


def test_functor_laws(chain3):
    ident = identity_functor(chain3)
    assert check_functor(ident) == []
    collapse = Functor(
        chain3, chain3, {"0": "2", "1": "2", "2": "2"}, {f: "id_2" for f in chain3.morphisms}, name="top"
    )
    assert check_functor(collapse) == []
    broken = Functor(chain3, chain3, {"0": "0", "1": "1", "2": "2"}, {**{f: f for f in chain3.morphisms}, "a": "b"})
    assert "preserves sources" in {v.law for v in check_functor(broken)}
    partial = Functor(chain3, chain3, {"0": "0"}, {})
    assert "object map total" in {v.law for v in check_functor(partial)}


def test_naturality(chain3):
    top = Functor(chain3, chain3, {"0": "2", "1": "2", "2": "2"}, {f: "id_2" for f in chain3.morphisms}, name="top")
    eta = NatTransform(identity_functor(chain3), top, {"0": "c", "1": "b", "2": "id_2"})
    assert check_nat(eta) == []
    assert check_nat(identity_transformation(top)) == []
    twice = compose_functors(top, top)
    assert twice.ob("0") == "2"


def test_full_subcategory(chain3):
    sub, inclusion = full_subcategory(chain3, ["2", "0"])
    assert sub.objects == ("0", "2")
    assert sub.morphisms == ("id_0", "id_2", "c")
    assert check_category(sub) == []
    assert is_fully_faithful(inclusion)


def test_product_category():
    square = product_category(chain(2).category, chain(2).category)
    assert len(square.category.objects) == 4
    assert check_category(square.category) == []
    assert check_functor(square.projection(0)) == []


@given(st.integers(min_value=1, max_value=4))
def test_enumerated_posets_are_categories(n):
    for poset in enumerate_posets(n):
        cat = poset.category
        assert check_category(cat) == []
        assert cat.is_thin()


@given(st.integers(min_value=1, max_value=5))
def test_chain_composition_is_associative(n):
    cat = chain(n).category
    for f, g, h in itertools.product(cat.morphisms, repeat=3):
        if cat.target(f) == cat.source(g) and cat.target(g) == cat.source(h):
            assert cat.compose(h, cat.compose(g, f)) == cat.compose(cat.compose(h, g), f)


def test_hom_sets_partition_morphisms(abelian4):
    cat = abelian4.category
    seen = [m for a, b in itertools.product(cat.objects, repeat=2) for m in hom_set(cat, a, b)]
    assert sorted(seen) == sorted(cat.morphisms)
    assert hom_set(cat, "Z2", "Z4") == list(cat.hom("Z2", "Z4"))


def test_interchange_on_chain(chain3):
    ident = identity_functor(chain3)
    top = Functor(chain3, chain3, {"0": "2", "1": "2", "2": "2"}, {f: "id_2" for f in chain3.morphisms}, name="top")
    eta = NatTransform(ident, top, {"0": "c", "1": "b", "2": "id_2"})
    assert check_interchange(identity_transformation(top), eta, eta, identity_transformation(ident)) == []
    first = horizontal_compose(eta, eta, "first")
    second = horizontal_compose(eta, eta, "second")
    assert all(first.at(x) == second.at(x) for x in chain3.objects)
    with pytest.raises(ValueError):
        horizontal_compose(eta, eta, "diagonal")
