"""Localizations induced on algebras over a monad.

Every condition is computed on its own before the conditions are compared,
so a disagreement surfaces as a ``TheoremViolation`` carrying the report.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .adjunction import (
    EMCategory,
    Monad,
    algebra_id,
    eilenberg_moore,
    find_natural_isomorphism,
    is_algebra,
    is_idempotent,
)
from .category import Functor, NatTransform, compose_functors, full_subcategory
from .comparison import (
    PreservationCheck,
    build_alpha,
    compare,
    is_natural_isomorphism,
    preserves_equivalences,
    preserves_local_objects,
    reflects_equivalences,
    reflects_local_objects,
)
from .errors import ShapeMismatchError, TheoremViolation
from .localization import (
    Localization,
    build_localization,
    is_equivalence,
    local_objects,
    localization_from_locals,
    reflect,
    reflection_isomorphism,
)

logger = logging.getLogger(__name__)


def _check_same_category(monad: Monad, loc: Localization) -> None:
    if monad.category is not loc.category:
        raise ShapeMismatchError(f"{monad.name} and {loc.name} live on different categories")


def monad_preserves_equivalences(monad: Monad, loc: Localization) -> PreservationCheck:
    _check_same_category(monad, loc)
    return preserves_equivalences(monad.functor, loc, loc)


def lift_candidates(monad: Monad, loc: Localization, carrier: str, structure: str) -> List[str]:
    """Every algebra structure on ``L carrier`` making the unit an algebra map"""
    cat, t = monad.category, monad.functor
    lx, unit = loc.reflect(carrier)
    wanted = cat.compose(unit, structure)
    t_unit = t.mor(unit)
    return [
        candidate
        for candidate in cat.hom(t.ob(lx), lx)
        if cat.compose(candidate, t_unit) == wanted and is_algebra(monad, lx, candidate)
    ]


def lift_algebra_structure(monad: Monad, loc: Localization, carrier: str, structure: str) -> Optional[str]:
    """The unique lifted structure ``TLX -> LX``, or ``None`` when it is missing or not unique"""
    _check_same_category(monad, loc)
    candidates = lift_candidates(monad, loc, carrier, structure)
    return candidates[0] if len(candidates) == 1 else None


@dataclass
class InducedLocalizationReport:
    monad: Monad
    base_localization: Localization
    cond_a: PreservationCheck
    cond_b: PreservationCheck
    cond_c: PreservationCheck
    cond_d: PreservationCheck
    induced: Optional[Localization] = None
    algebra_structures: Dict[str, str] = field(default_factory=dict)
    isomorphism: Optional[NatTransform] = None
    alpha_under_free: Optional[NatTransform] = None
    forgetful_inverse_pair: Optional[bool] = None

    @property
    def conditions(self) -> Dict[str, bool]:
        return {
            "a": self.cond_a.holds,
            "b": self.cond_b.holds,
            "c": self.cond_c.holds,
            "d": self.cond_d.holds,
        }

    @property
    def agree(self) -> bool:
        return len(set(self.conditions.values())) == 1

    def to_dict(self) -> Dict[str, object]:
        return {
            "monad": self.monad.name,
            "localization": self.base_localization.name,
            "conditions": {
                key: check.to_dict()
                for key, check in (("a", self.cond_a), ("b", self.cond_b), ("c", self.cond_c), ("d", self.cond_d))
            },
            "agree": self.agree,
            "induced": self.induced.table() if self.induced else None,
            "algebra_structures": dict(self.algebra_structures),
            "isomorphism": dict(self.isomorphism.components) if self.isomorphism else None,
            "alpha_under_free": dict(self.alpha_under_free.components) if self.alpha_under_free else None,
            "forgetful_inverse_pair": self.forgetful_inverse_pair,
        }


def induce_localization(monad: Monad, loc: Localization, em: Optional[EMCategory] = None) -> InducedLocalizationReport:
    """Evaluate the four induced-localization conditions and cross-check them"""
    _check_same_category(monad, loc)
    em = em or eilenberg_moore(monad)
    cond_a = monad_preserves_equivalences(monad, loc)

    structures: Dict[str, str] = {}
    cond_b = PreservationCheck(True)
    for algebra in em.algebras:
        candidates = lift_candidates(monad, loc, algebra.carrier, algebra.structure)
        if len(candidates) == 1:
            structures[algebra.ident] = candidates[0]
        elif cond_b.holds:
            cond_b = PreservationCheck(False, algebra.ident)

    # any L' with LU ~ UL' or with U preserving and reflecting locals has exactly these locals
    forced = [a.ident for a in em.algebras if loc.is_local(a.carrier)]
    induced = localization_from_locals(em.category, forced, name=f"{loc.name}'")
    forgetful = em.forgetful
    iso = None
    if induced is None:
        stranded = next((a.ident for a in em.algebras if reflect(em.category, forced, a.ident) is None), None)
        # LU ~ UL' makes every UL'X local
        cond_c = PreservationCheck(False, f"LU ~ UL' fails: {stranded} has no reflection onto local carriers")
        # U preserving and reflecting locals pins the L'-locals to the local carriers
        cond_d = PreservationCheck(False, f"U cannot preserve and reflect locals: {stranded} has no reflection")
    else:
        iso = find_natural_isomorphism(
            compose_functors(loc.functor, forgetful), compose_functors(forgetful, induced.functor), name="LU~UL'"
        )
        cond_c = PreservationCheck(True) if iso is not None else PreservationCheck(False, "LU and UL' not isomorphic")
        cond_d = PreservationCheck(True)
        for check in (
            preserves_local_objects(forgetful, induced, loc),
            reflects_local_objects(forgetful, induced, loc),
            preserves_equivalences(forgetful, induced, loc),
            reflects_equivalences(forgetful, induced, loc),
        ):
            if not check:
                cond_d = check
                break

    report = InducedLocalizationReport(monad, loc, cond_a, cond_b, cond_c, cond_d, None, structures, iso)
    if cond_c.holds:
        report.induced = induced
    if not report.agree:
        raise TheoremViolation(f"induced-localization conditions disagree: {report.conditions}", report.to_dict())

    if report.induced is not None:
        for algebra in em.algebras:
            lx, _ = loc.reflect(algebra.carrier)
            lifted = algebra_id(lx, structures[algebra.ident])
            if not report.induced.is_local(lifted):
                raise TheoremViolation(f"lifted algebra {lifted} is not local for the induced localization", lifted)
        report.alpha_under_free = build_alpha(em.free, loc, report.induced)
        if report.alpha_under_free is None:
            raise TheoremViolation("no comparison F L => L' F although L' is induced")
        report.forgetful_inverse_pair = compare(forgetful, report.induced, loc).mutually_inverse
        if not report.forgetful_inverse_pair:
            raise TheoremViolation("alpha and beta along the forgetful functor are not mutually inverse")
    logger.info(f"[induce:{monad.name}/{loc.name}] conditions {report.conditions}")
    return report


# -- inverting one morphism -----------------------------------------------------


@dataclass
class Clause:
    holds: Optional[bool]
    witness: Optional[object] = None

    def to_dict(self) -> Dict[str, object]:
        return {"holds": self.holds, "witness": self.witness}


@dataclass
class ClauseReport:
    clauses: Dict[str, Clause] = field(default_factory=dict)
    untestable: List[str] = field(default_factory=list)
    details: Dict[str, object] = field(default_factory=dict)

    def set(self, name: str, holds: Optional[bool], witness: Optional[object] = None) -> None:
        self.clauses[name] = Clause(holds, witness)

    @property
    def complete(self) -> bool:
        return not self.untestable

    def to_dict(self) -> Dict[str, object]:
        return {
            "clauses": {name: clause.to_dict() for name, clause in self.clauses.items()},
            "untestable": list(self.untestable),
            "details": dict(self.details),
        }


def _iso_or_none(first: Functor, second: Functor) -> Optional[NatTransform]:
    return find_natural_isomorphism(first, second)


def forgetful_commutation(monad: Monad, f: str, em: Optional[EMCategory] = None) -> ClauseReport:
    """``L_f U ~ U L_Ff`` iff T preserves f-equivalences, and the Tf / TTf refinement"""
    cat, t = monad.category, monad.functor
    em = em or eilenberg_moore(monad)
    free, forgetful = em.free, em.forgetful
    report = ClauseReport()
    report.set("retract T of TT", all(
        cat.compose(monad.mult.at(x), monad.unit.at(t.ob(x))) == cat.identity(t.ob(x)) for x in cat.objects
    ))

    lf = build_localization(cat, f)
    if lf is None:
        report.untestable.append("L_f does not exist")
        logger.warning(f"[forgetful:{f}] L_f does not exist, nothing to test")
        return report
    tf, ff = t.mor(f), free.mor(f)
    ttf, ftf = t.mor(tf), free.mor(tf)
    report.details.update({"Tf": tf, "TTf": ttf, "Ff": ff, "FTf": ftf})

    preserves = monad_preserves_equivalences(monad, lf)
    l_ff = build_localization(em.category, ff)
    iso_i = _iso_or_none(compose_functors(lf.functor, forgetful), compose_functors(forgetful, l_ff.functor)) if l_ff else None
    report.set("T preserves f-equivalences", preserves.holds, preserves.witness)
    report.set("L_f U ~ U L_Ff", iso_i is not None)
    if preserves.holds != (iso_i is not None):
        raise TheoremViolation("L_f U ~ U L_Ff disagrees with T preserving f-equivalences", report.to_dict())

    report.set("Ff is an FTf-equivalence", is_equivalence(em.category, ff, local_objects(em.category, ftf)))
    if not report.clauses["Ff is an FTf-equivalence"].holds:
        raise TheoremViolation("Ff is not an FTf-equivalence although F is a retract of FUF", ff)
    if not preserves.holds:
        report.untestable.append("T does not preserve f-equivalences: second part does not apply")
        return report
    report.set("Tf is an f-equivalence", lf.is_equivalence(tf))
    if not report.clauses["Tf is an f-equivalence"].holds:
        raise TheoremViolation("Tf is not an f-equivalence although T preserves f-equivalences", tf)

    l_tf = build_localization(cat, tf)
    if l_tf is None:
        report.untestable.append("L_Tf does not exist")
        logger.warning(f"[forgetful:{f}] L_Tf does not exist, second part untestable")
        return report
    cond_a = monad_preserves_equivalences(monad, l_tf)
    cond_b = _iso_or_none(compose_functors(lf.functor, forgetful), compose_functors(l_tf.functor, forgetful))
    l_ttf = build_localization(cat, ttf)
    cond_c = _iso_or_none(l_tf.functor, l_ttf.functor) if l_ttf else None
    report.set("T preserves Tf-equivalences", cond_a.holds, cond_a.witness)
    report.set("L_f U ~ L_Tf U", cond_b is not None)
    report.set("L_Tf ~ L_TTf", cond_c is not None)
    if len({cond_a.holds, cond_b is not None, cond_c is not None}) != 1:
        raise TheoremViolation("Tf refinement conditions disagree", report.to_dict())
    if cond_a.holds:
        l_ftf = build_localization(em.category, ftf)
        same = l_ftf is not None and _iso_or_none(l_ff.functor, l_ftf.functor) is not None
        report.set("L_Ff ~ L_FTf", same)
        if not same:
            raise TheoremViolation("L_Ff and L_FTf differ although T preserves Tf-equivalences", report.to_dict())
    return report


@dataclass
class ModuleReadingsReport:
    algebra: str
    readings: Dict[str, Optional[str]]
    isomorphisms: Dict[str, Optional[str]]
    untestable: List[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.untestable and all(v is not None for v in self.isomorphisms.values())

    def to_dict(self) -> Dict[str, object]:
        return {
            "algebra": self.algebra,
            "readings": dict(self.readings),
            "isomorphisms": dict(self.isomorphisms),
            "untestable": list(self.untestable),
            "agree": self.agree,
        }


def module_readings(monad: Monad, f: str, algebra: str, em: Optional[EMCategory] = None) -> ModuleReadingsReport:
    """Compare ``L_f UM``, ``U(L_Ff M)`` and ``L_U(Ff) UM`` for an algebra ``M``.

    Each reading is a reflection of ``UM`` in the base category; they agree
    when a unit-compatible isomorphism connects them.
    """
    cat = monad.category
    em = em or eilenberg_moore(monad)
    carrier = em.algebra(algebra).carrier
    report = ModuleReadingsReport(algebra, {}, {})
    lf = build_localization(cat, f)
    l_ff = build_localization(em.category, em.free.mor(f))
    underlying_ff = em.forgetful.mor(em.free.mor(f))
    l_uff = build_localization(cat, underlying_ff)
    for label, loc in (("L_f", lf), ("L_Ff", l_ff), ("L_U(Ff)", l_uff)):
        if loc is None:
            report.untestable.append(f"{label} does not exist")
    if report.untestable:
        logger.warning(f"[modules:{f}] untestable: {report.untestable}")
        return report

    first = lf.reflect(carrier)
    lifted_object, lifted_unit = l_ff.reflect(algebra)
    second = (em.forgetful.ob(lifted_object), em.forgetful.mor(lifted_unit))
    third = l_uff.reflect(carrier)
    report.readings = {"L_f UM": first[0], "U(L_Ff M)": second[0], "L_U(Ff) UM": third[0]}
    report.isomorphisms = {
        "L_f UM ~ U(L_Ff M)": reflection_isomorphism(cat, first, second),
        "L_f UM ~ L_U(Ff) UM": reflection_isomorphism(cat, first, third),
    }
    if not report.agree:
        raise TheoremViolation(f"readings of the localized module {algebra} disagree", report.to_dict())
    return report


# -- idempotent monads ----------------------------------------------------------


def local_subcategory_functor(monad: Monad):
    """The full subcategory S of T-local objects, its inclusion I and the reflection K"""
    if not is_idempotent(monad):
        raise ShapeMismatchError(f"{monad.name} is not idempotent")
    cat, t = monad.category, monad.functor
    members = [x for x in cat.objects if cat.inverse_indices[cat.morphism_index(monad.unit.at(x))] >= 0]
    sub, inclusion = full_subcategory(cat, members, name=f"{cat.name}^{monad.name}")
    reflection = Functor(
        cat, sub, {x: t.ob(x) for x in cat.objects}, {g: t.mor(g) for g in cat.morphisms}, name="K"
    )
    return sub, inclusion, reflection


def idempotent_case(monad: Monad, f: str) -> ClauseReport:
    """``L_f I ~ I L_Kf`` and ``L_f I ~ L_Tf I`` when the localizations preserve S"""
    cat = monad.category
    sub, inclusion, reflection = local_subcategory_functor(monad)
    members = set(sub.objects)
    report = ClauseReport()
    lf = build_localization(cat, f)
    if lf is None:
        report.untestable.append("L_f does not exist")
        return report
    preserves = all(lf.ob(x) in members for x in members)
    report.set("L_f preserves S", preserves)
    if not preserves:
        report.untestable.append("L_f does not preserve S")
        return report

    kf = reflection.mor(f)
    l_kf = build_localization(sub, kf)
    if l_kf is None:
        raise TheoremViolation(f"L_Kf does not exist on {sub.name} although L_f preserves it", kf)
    first = _iso_or_none(compose_functors(lf.functor, inclusion), compose_functors(inclusion, l_kf.functor))
    report.set("L_f I ~ I L_Kf", first is not None)
    if first is None:
        raise TheoremViolation("L_f I and I L_Kf are not isomorphic", report.to_dict())

    tf = monad.functor.mor(f)
    l_tf = build_localization(cat, tf)
    table = {a: {"L_f": lf.ob(a), "L_Kf": l_kf.ob(a)} for a in sub.objects}
    report.details["table"] = table
    if l_tf is None:
        report.untestable.append("L_Tf does not exist")
        return report
    if not all(l_tf.ob(x) in members for x in members):
        report.untestable.append("L_Tf does not preserve S")
        return report
    for a in sub.objects:
        table[a]["L_Tf"] = l_tf.ob(a)
    second = _iso_or_none(compose_functors(lf.functor, inclusion), compose_functors(l_tf.functor, inclusion))
    report.set("L_f I ~ L_Tf I", second is not None)
    if second is None:
        raise TheoremViolation("L_f I and L_Tf I are not isomorphic", report.to_dict())
    return report


def idempotent_criterion(monad: Monad, loc: Localization, em: Optional[EMCategory] = None) -> InducedLocalizationReport:
    """For idempotent T the induced conditions reduce to L preserving T-local objects"""
    if not is_idempotent(monad):
        raise ShapeMismatchError(f"{monad.name} is not idempotent")
    report = induce_localization(monad, loc, em)
    cat = monad.category
    t_local = [x for x in cat.objects if cat.inverse_indices[cat.morphism_index(monad.unit.at(x))] >= 0]
    preserves = all(t_local_member in t_local for t_local_member in (loc.ob(x) for x in t_local))
    if preserves != report.cond_a.holds:
        raise TheoremViolation(
            "for an idempotent monad, L preserving T-local objects must match the induced conditions",
            report.to_dict(),
        )
    return report


@dataclass
class AbelianizationReport:
    alpha: Optional[NatTransform]
    is_iso: Dict[str, bool]
    localized_agree: Dict[str, bool]

    def to_dict(self) -> Dict[str, object]:
        return {
            "alpha": dict(self.alpha.components) if self.alpha else None,
            "is_iso": dict(self.is_iso),
            "localized_agree": dict(self.localized_agree),
        }


def abelianization_comparison(monad: Monad, loc: Localization) -> AbelianizationReport:
    """``alpha_G: T(LG) -> L(TG)`` and the isomorphism ``L(T L G) ~ L(T G)``"""
    _check_same_category(monad, loc)
    cat, t = monad.category, monad.functor
    alpha = build_alpha(t, loc, loc)
    if alpha is None:
        return AbelianizationReport(None, {}, {})
    is_iso = {g: bool(cat.inverse_indices[cat.morphism_index(alpha.at(g))] >= 0) for g in cat.objects}
    agree = {}
    for g in cat.objects:
        left, right = loc.ob(t.ob(loc.ob(g))), loc.ob(t.ob(g))
        agree[g] = left == right or any(cat.inverse_indices[cat.morphism_index(m)] >= 0 for m in cat.hom(left, right))
        if not agree[g]:
            raise TheoremViolation(f"L(T L {g}) and L(T {g}) are not isomorphic", g)
    if is_natural_isomorphism(alpha) != preserves_local_objects(t, loc, loc).holds:
        raise TheoremViolation("alpha invertibility disagrees with T preserving local objects")
    return AbelianizationReport(alpha, is_iso, agree)
