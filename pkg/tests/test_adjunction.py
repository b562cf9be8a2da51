import pytest

from finite_localization.adjunction import (
    Adjunction,
    algebra_id,
    check_adjunction,
    check_monad,
    eilenberg_moore,
    find_monad_isomorphism,
    find_natural_isomorphism,
    identity_monad,
    is_idempotent,
    monad_of,
    restricted_equivalence,
    transpose,
    untranspose,
)
from finite_localization.category import (
    FiniteCategory,
    Functor,
    NatTransform,
    check_category,
    compose_functors,
    identity_functor,
)
from finite_localization.fixtures.posets import chain, closure_monad, closure_monads


def reflection(chain3):
    two = FiniteCategory.from_table("two", ["0", "2"], [("d", "0", "2")], {})
    left = Functor(
        chain3,
        two,
        {"0": "0", "1": "2", "2": "2"},
        {"id_0": "id_0", "id_1": "id_2", "id_2": "id_2", "a": "d", "b": "id_2", "c": "d"},
        name="R",
    )
    right = Functor(two, chain3, {"0": "0", "2": "2"}, {"id_0": "id_0", "id_2": "id_2", "d": "c"}, name="I")
    unit = NatTransform(identity_functor(chain3), compose_functors(right, left), {"0": "id_0", "1": "b", "2": "id_2"})
    counit = NatTransform(compose_functors(left, right), identity_functor(two), {"0": "id_0", "2": "id_2"})
    return Adjunction(left, right, unit, counit, name="reflection")


def test_reflection_is_an_adjunction(chain3):
    adj = reflection(chain3)
    assert check_adjunction(adj) == []
    assert check_monad(monad_of(adj)) == []


def test_broken_triangle_is_reported(chain3):
    adj = reflection(chain3)
    bad_unit = NatTransform(adj.unit.source_functor, adj.unit.target_functor, {"0": "c", "1": "b", "2": "id_2"})
    broken = Adjunction(adj.left, adj.right, bad_unit, adj.counit)
    assert check_adjunction(broken) != []


def test_transpose_round_trip(chain3):
    adj = reflection(chain3)
    for x in chain3.objects:
        for y in adj.codomain.objects:
            for phi in adj.codomain.hom(adj.left.ob(x), y):
                psi = transpose(adj, x, phi)
                assert untranspose(adj, y, psi) == phi


def test_restricted_equivalence(chain3):
    restricted = restricted_equivalence(reflection(chain3))
    assert restricted.unit_local.objects == ("0", "2")
    assert restricted.counit_local.objects == ("0", "2")


def test_closure_monads_are_idempotent():
    for monad in closure_monads(chain(3)):
        assert check_monad(monad) == []
        assert is_idempotent(monad)


def test_em_of_top_closure():
    poset = chain(3)
    monad = closure_monad(poset, ("2", "2", "2"))
    em = eilenberg_moore(monad)
    assert [a.ident for a in em.algebras] == [algebra_id("2", "id_2")]
    assert check_category(em.category) == []
    assert check_adjunction(em.adjunction) == []


def test_em_of_tensor_monad(tensor2):
    em = eilenberg_moore(tensor2)
    assert [a.carrier for a in em.algebras] == ["0", "Z2", "Z2xZ2"]
    assert len(em.algebras_on("Z2")) == 1 and em.algebras_on("Z4") == []
    assert check_category(em.category) == []
    assert check_adjunction(em.adjunction) == []
    assert em.free_algebra("Z4") == algebra_id("Z2", tensor2.mult.at("Z4"))


def test_identity_monad(chain3):
    monad = identity_monad(chain3)
    assert check_monad(monad) == []
    assert len(eilenberg_moore(monad).algebras) == 3
    assert find_monad_isomorphism(monad, monad) is not None


def test_natural_isomorphism_search(chain3):
    ident = identity_functor(chain3)
    top = Functor(chain3, chain3, {"0": "2", "1": "2", "2": "2"}, {f: "id_2" for f in chain3.morphisms})
    assert find_natural_isomorphism(ident, ident) is not None
    assert find_natural_isomorphism(ident, top) is None
