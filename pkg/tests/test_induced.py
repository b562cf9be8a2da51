import pytest

from finite_localization.adjunction import eilenberg_moore
from finite_localization import induced as induced_module
from finite_localization.errors import ShapeMismatchError, TheoremViolation
from finite_localization.fixtures.posets import chain, closure_localization, closure_monad
from finite_localization.fixtures.sweeps import closure_pairs, enumerate_test_morphisms
from finite_localization.induced import (
    abelianization_comparison,
    forgetful_commutation,
    idempotent_case,
    idempotent_criterion,
    induce_localization,
    lift_algebra_structure,
    monad_preserves_equivalences,
    module_readings,
)
from finite_localization.localization import build_localization


def test_conditions_agree_on_every_chain_pair():
    for monad, loc in closure_pairs(chain(3)):
        report = induce_localization(monad, loc)
        assert report.agree
        if report.cond_a.holds:
            assert report.induced is not None
            assert report.forgetful_inverse_pair


def test_all_conditions_can_fail_together():
    poset = chain(3)
    monad = closure_monad(poset, ("0", "2", "2"))
    loc = closure_localization(poset, ("1", "1", "2"))
    report = induce_localization(monad, loc)
    assert report.conditions == {"a": False, "b": False, "c": False, "d": False}
    assert report.induced is None


def test_identity_closure_induces():
    poset = chain(3)
    monad = closure_monad(poset, ("0", "1", "2"))
    loc = closure_localization(poset, ("0", "2", "2"))
    report = induce_localization(monad, loc)
    assert all(report.conditions.values())
    assert report.to_dict()["induced"] is not None


def test_idempotent_criterion_on_chains():
    for monad, loc in closure_pairs(chain(3)):
        idempotent_criterion(monad, loc)


def test_shape_mismatch(tensor2):
    poset = chain(2)
    loc = closure_localization(poset, ("0", "1"))
    with pytest.raises(ShapeMismatchError):
        induce_localization(tensor2, loc)


def test_tensor_monad_induces(abelian4, tensor2):
    loc = build_localization(abelian4.category, "Z4->Z2[1]")
    report = induce_localization(tensor2, loc)
    assert report.agree
    assert all(report.conditions.values())
    assert report.induced is not None


def test_forgetful_commutation_clauses(tensor2):
    report = forgetful_commutation(tensor2, "Z4->Z2[1]")
    assert report.clauses["retract T of TT"].holds
    assert report.clauses["L_f U ~ U L_Ff"].holds == report.clauses["T preserves f-equivalences"].holds
    assert report.details["Tf"] == tensor2.functor.mor("Z4->Z2[1]")


def test_forgetful_commutation_on_closures():
    poset = chain(3)
    for monad, _ in closure_pairs(poset):
        for f in enumerate_test_morphisms(poset.category):
            report = forgetful_commutation(monad, f)
            assert "Ff is an FTf-equivalence" in report.clauses or report.untestable


def test_module_readings(tensor2):
    em = eilenberg_moore(tensor2)
    for algebra in em.algebras:
        report = module_readings(tensor2, "0->Z2[]", algebra.ident, em)
        assert report.agree or report.untestable
        assert report.to_dict()["algebra"] == algebra.ident


def test_idempotent_case_for_abelianization(groups6, abelianization6):
    cat = groups6.category
    for f in enumerate_test_morphisms(cat, up_to_iso=True):
        report = idempotent_case(abelianization6, f)
        if report.complete and report.clauses.get("L_f preserves S") and report.clauses["L_f preserves S"].holds:
            assert report.clauses["L_f I ~ L_Tf I"].holds


def test_abelianization_comparison(groups6, abelianization6):
    cat = groups6.category
    for f in cat.hom("S3", "Z2"):
        loc = build_localization(cat, f)
        if loc is None:
            continue
        report = abelianization_comparison(abelianization6, loc)
        assert all(report.localized_agree.values())


def test_monad_preserves_equivalences_witness():
    poset = chain(3)
    loc = closure_localization(poset, ("1", "1", "2"))
    check = monad_preserves_equivalences(closure_monad(poset, ("0", "2", "2")), loc)
    assert not check
    assert check.witness == "0->1"
    assert monad_preserves_equivalences(closure_monad(poset, ("1", "1", "2")), loc)


def test_lift_on_local_carrier(abelian4, tensor2):
    cat = abelian4.category
    loc = build_localization(cat, "Z4->Z2[1]")
    identity = cat.identity("Z2")
    assert lift_algebra_structure(tensor2, loc, "Z2", identity) == identity
    with pytest.raises(ShapeMismatchError):
        lift_algebra_structure(closure_monad(chain(2), ("0", "1")), loc, "Z2", identity)


def test_missing_induced_localization_sets_c_and_d_apart(abelian4, tensor2, monkeypatch):
    loc = build_localization(abelian4.category, "Z4->Z2[1]")
    monkeypatch.setattr(induced_module, "localization_from_locals", lambda *args, **kwargs: None)
    monkeypatch.setattr(induced_module, "reflect", lambda *args: None)
    with pytest.raises(TheoremViolation) as info:
        induce_localization(tensor2, loc)
    conditions = info.value.witness["conditions"]
    assert conditions["a"]["holds"] and conditions["b"]["holds"]
    assert not conditions["c"]["holds"] and not conditions["d"]["holds"]
    assert conditions["c"]["witness"].startswith("LU ~ UL' fails")
    assert conditions["d"]["witness"].startswith("U cannot preserve and reflect locals")
