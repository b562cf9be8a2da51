import pytest

from finite_localization.adjunction import eilenberg_moore
from finite_localization.category import identity_functor
from finite_localization.duality import (
    adjoint_cellularization,
    build_cellularization,
    cellular_forgetful_commutation,
    cellular_module_readings,
    check_colocalization,
    colocalization_from_colocals,
    co_compare,
    co_orthogonal,
    dual_transport,
    duality_suite,
    induce_colocalization,
    to_opposite,
    transport_coherence,
)
from finite_localization.errors import TheoremViolation
from finite_localization.fixtures.posets import chain, closure_monad, lattice, parse_relation
from finite_localization.localization import build_localization


def test_cellularization_by_two_groups(abelian4):
    cat = abelian4.category
    col = build_cellularization(cat, "Z2")
    assert col is not None
    assert col.colocal_objects == ("0", "Z2", "Z2xZ2")
    assert col.ob("Z4") == "Z2"
    assert col.ob("Z3") == "0"
    assert check_colocalization(col) == []


def test_transport_agrees_with_direct_search(abelian4):
    cat = abelian4.category
    for a in cat.objects:
        col = transport_coherence(cat, a)
        if col is not None:
            assert check_colocalization(col) == []


@pytest.mark.parametrize("poset", [chain(3), lattice("diamond"), parse_relation("a<b, a<c")], ids=lambda p: p.name)
def test_transport_on_posets(poset):
    cat = poset.category
    for a in cat.objects:
        col = transport_coherence(cat, a)
        assert col is None or a in col.colocal_objects


def test_co_orthogonality(abelian4):
    cat = abelian4.category
    report = co_orthogonal(cat, "Z2", "Z2->Z4[2]")
    assert report.is_bijection
    assert not co_orthogonal(cat, "Z2", cat.hom("Z2", "0")[0]).is_bijection


def test_dual_transport_round_trip(chain3):
    loc = build_localization(chain3, "b")
    col = dual_transport(loc)
    assert col.category is chain3.opposite()
    back = to_opposite(col)
    assert back.category is chain3
    assert back.local_objects == loc.local_objects
    assert back.table() == loc.table()


def test_identity_co_comparison(abelian4):
    col = build_cellularization(abelian4.category, "Z2")
    result = co_compare(identity_functor(abelian4.category), col, col)
    assert result.alpha_is_iso and result.beta_is_iso
    assert result.mutually_inverse


def test_induced_colocalization_under_tensor(abelian4, tensor2):
    col = build_cellularization(abelian4.category, "Z2")
    report = induce_colocalization(tensor2, col)
    assert report.agree
    assert report.notes


def test_adjoint_cellularization_along_free_forgetful(tensor2):
    em = eilenberg_moore(tensor2)
    report = adjoint_cellularization(em.adjunction, "Z2")
    assert report.clauses["FA-equivalences are G-preimages of A-equivalences"].holds
    assert report.clauses["F sends A-cellular objects to FA-cellular objects"].holds


def test_cellular_forgetful_commutation(tensor2):
    report = cellular_forgetful_commutation(tensor2, "Z2")
    assert report.clauses["C_A U ~ U C_FA"].holds == report.clauses["T preserves A-cellular objects"].holds
    assert report.details["TA"] == "Z2"


def test_cellular_module_readings(tensor2):
    em = eilenberg_moore(tensor2)
    for algebra in em.algebras:
        report = cellular_module_readings(tensor2, "Z2", algebra.ident, em)
        assert report.untestable or all(clause.holds for clause in report.clauses.values())


def test_duality_suite_sections(tensor2):
    sections = duality_suite(tensor2, "Z2").to_dict()
    assert set(sections) == {"transport", "compare", "induce", "adjunction", "forgetful", "modules"}
    assert sections["transport"] == {"object": "Z2", "exists": True}


def test_colocal_class_given_as_generator(chain3):
    col = colocalization_from_colocals(chain3, (x for x in ["0", "1"]))
    assert col is not None
    assert col.colocal_objects == ("0", "1")


def test_ta_refinement_fails_on_chain_closure():
    # T = (0, 2, 2), A = 1: A-cellular {0, 1}, TA-cellular {0, 2}, C_A U(2) = 1 but C_TA U(2) = 2
    monad = closure_monad(chain(3), ("0", "2", "2"))
    with pytest.raises(TheoremViolation, match="TA refinement") as info:
        cellular_forgetful_commutation(monad, "1")
    witness = info.value.witness
    holds = {name: clause["holds"] for name, clause in witness["clauses"].items()}
    assert holds["T preserves A-equivalences"] is True
    assert holds["T preserves TA-cellular objects"] is True
    assert holds["C_A U ~ C_TA U"] is False
    assert holds["C_TA ~ C_TTA"] is True
    assert witness["details"]["TA"] == "2"


def test_ta_refinement_agrees_when_ta_is_a():
    monad = closure_monad(chain(3), ("0", "2", "2"))
    report = cellular_forgetful_commutation(monad, "0")
    assert report.complete
    assert report.clauses["C_A U ~ C_TA U"].holds
    assert report.clauses["C_TA ~ C_TTA"].holds
