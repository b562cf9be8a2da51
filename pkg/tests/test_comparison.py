import pytest

from finite_localization.adjunction import check_adjunction, identity_adjunction
from finite_localization.category import check_functor, compose_functors, identity_functor, product_category
from finite_localization.comparison import (
    adjoint_criterion,
    adjoint_localization,
    colimit_comparison,
    commutation_criterion,
    compare,
    diagonal_functor,
    join_alpha_agreement,
    join_functor,
    join,
    limit_comparison,
    meet,
    meet_functor,
    preserves_equivalences,
    preserves_local_objects,
)
from finite_localization.errors import UnsupportedCategoryError
from finite_localization.fixtures.posets import (
    chain,
    closure_functor,
    closure_localization,
    closure_operators,
    galois_connections,
    lattice,
    lattices,
    parse_relation,
)
from finite_localization.fixtures.sweeps import enumerate_test_morphisms
from finite_localization.localization import build_localization, identity_localization


def test_identity_functor_commutes_with_any_localization(chain3):
    loc = build_localization(chain3, "b")
    result = compare(identity_functor(chain3), loc, loc)
    assert result.preserves_locals and result.preserves_equivalences
    assert result.alpha_is_iso and result.beta_is_iso
    assert result.mutually_inverse
    report = commutation_criterion(identity_functor(chain3), loc, loc)
    assert report.isomorphism is not None


def test_equivalences_not_preserved(chain3):
    loc = build_localization(chain3, "b")
    plain = identity_localization(chain3)
    functor = identity_functor(chain3)
    assert preserves_local_objects(functor, loc, plain).holds
    check = preserves_equivalences(functor, loc, plain)
    assert not check.holds
    assert check.witness == "b"
    report = commutation_criterion(functor, loc, plain)
    assert report.isomorphism is None
    assert report.to_dict()["naturally_isomorphic"] is False


def test_closure_functor_criterion_on_chain():
    poset = chain(3)
    closures = closure_operators(poset)
    assert len(closures) == 4
    for closure in closures:
        functor = closure_functor(poset, closure)
        for first in closures:
            for second in closures:
                # raises if the isomorphism search and the predicates disagree
                report = commutation_criterion(
                    functor, closure_localization(poset, first), closure_localization(poset, second)
                )
                both = report.preserves_locals.holds and report.preserves_equivalences.holds
                assert (report.isomorphism is not None) == both


def test_galois_connections_on_two_chains():
    connections = galois_connections(chain(2), chain(2))
    assert len(connections) == 2
    assert all(check_adjunction(adj) == [] for adj in connections)


@pytest.mark.parametrize("target", [2, 3])
def test_adjoint_localization_on_galois_connections(target):
    for adj in galois_connections(chain(3), chain(target)):
        for f in enumerate_test_morphisms(adj.domain):
            report = adjoint_localization(adj, f)
            assert report.locals_correspond.holds
            assert report.equivalences_sent.holds
            if not report.notes:
                assert report.mates_agree


def test_adjoint_localization_on_identity(chain3):
    report = adjoint_localization(identity_adjunction(chain3), "b")
    assert report.image == "b"
    assert report.alpha_is_iso and report.beta_is_iso
    assert report.mates_agree
    assert report.to_dict()["notes"] == []


def test_joins_and_meets():
    diamond = lattice("diamond").category
    assert join(diamond, ["a", "b"]) == "1"
    assert meet(diamond, ["a", "b"]) == "0"
    assert join(chain(2).category, ["0", "1"]) == "1"
    with pytest.raises(UnsupportedCategoryError):
        join(parse_relation("a<b, a<c").category, ["b", "c"])


def test_colimit_comparison_on_small_lattices():
    for poset in lattices(4):
        cat = poset.category
        for closure in closure_operators(poset):
            loc = closure_localization(poset, closure)
            for x in cat.objects:
                for y in cat.objects:
                    result = colimit_comparison(cat, loc, [x, y])
                    assert result.is_equivalence
                    limit_comparison(cat, loc, [x, y])


def test_colimit_comparison_needs_a_diagram():
    poset = lattice("diamond")
    loc = closure_localization(poset, closure_operators(poset)[0])
    with pytest.raises(ValueError):
        colimit_comparison(poset.category, loc, [])


def test_diagram_functors_on_diamond():
    cat = lattice("diamond").category
    square = product_category(cat, cat)
    diagonal = diagonal_functor(cat, square)
    joins, meets = join_functor(cat, square), meet_functor(cat, square)
    assert check_functor(diagonal) == [] and check_functor(joins) == [] and check_functor(meets) == []
    assert joins.ob("(a,b)") == "1"
    assert meets.ob("(a,b)") == "0"
    assert all(compose_functors(joins, diagonal).ob(x) == x for x in cat.objects)


@pytest.mark.parametrize("shape", ["diamond", "pentagon"])
def test_join_alpha_matches_colimit_comparison(shape):
    poset = lattice(shape)
    for closure in closure_operators(poset):
        alpha = join_alpha_agreement(poset.category, closure_localization(poset, closure))
        assert len(alpha.components) == len(poset.elements) ** 2


def test_adjoint_criterion_on_unrelated_localizations():
    source, target = chain(3), chain(2)
    firsts = [identity_localization(source.category)]
    firsts += [build_localization(source.category, f) for f in enumerate_test_morphisms(source.category)]
    seconds = [identity_localization(target.category)]
    seconds += [build_localization(target.category, f) for f in enumerate_test_morphisms(target.category)]
    outcomes = set()
    for adj in galois_connections(source, target):
        for first in filter(None, firsts):
            for second in filter(None, seconds):
                right_locals, left_equivalences = adjoint_criterion(adj, first, second)
                assert right_locals.holds == left_equivalences.holds
                outcomes.add(right_locals.holds)
    assert outcomes == {True, False}
