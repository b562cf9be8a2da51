"""Adjunctions, monads and the Eilenberg-Moore construction"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .category import (
    FiniteCategory,
    Functor,
    LawViolation,
    NatTransform,
    check_functor,
    check_nat,
    compose_functors,
    full_subcategory,
    identity_functor,
    identity_transformation,
    whisker,
)
from .errors import ShapeMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Adjunction:
    """``left -| right`` with unit ``Id => right.left`` and counit ``left.right => Id``"""

    left: Functor
    right: Functor
    unit: NatTransform
    counit: NatTransform
    name: str = field(default="adj", compare=False)

    @property
    def domain(self) -> FiniteCategory:
        return self.left.source

    @property
    def codomain(self) -> FiniteCategory:
        return self.left.target


@dataclass(frozen=True)
class Monad:
    functor: Functor
    unit: NatTransform
    mult: NatTransform
    name: str = field(default="T", compare=False)

    @property
    def category(self) -> FiniteCategory:
        return self.functor.source


@dataclass(frozen=True)
class Algebra:
    ident: str
    carrier: str
    structure: str


@dataclass(frozen=True, eq=False)
class EMCategory:
    """Category of algebras of ``monad`` with its free/forgetful adjunction"""

    monad: Monad
    algebras: Tuple[Algebra, ...]
    category: FiniteCategory
    underlying: Mapping[str, str]
    free: Functor
    forgetful: Functor
    adjunction: Adjunction

    def algebra(self, ident: str) -> Algebra:
        for algebra in self.algebras:
            if algebra.ident == ident:
                return algebra
        raise KeyError(ident)

    def algebras_on(self, carrier: str) -> List[Algebra]:
        return [a for a in self.algebras if a.carrier == carrier]

    def free_algebra(self, x: str) -> str:
        return self.free.ob(x)


@dataclass(frozen=True, eq=False)
class RestrictedEquivalence:
    unit_local: FiniteCategory
    counit_local: FiniteCategory
    left: Functor
    right: Functor
    unit: NatTransform
    counit: NatTransform


def algebra_id(carrier: str, structure: str) -> str:
    return f"({carrier},{structure})"


def em_morphism_id(morphism: str, source: str, target: str) -> str:
    return f"<{morphism}:{source}->{target}>"


def transpose(adj: Adjunction, x: str, phi: str) -> str:
    """``phi: F x -> Y`` to its transpose ``G(phi) . eta_x: x -> G Y``"""
    c2 = adj.codomain
    if c2.source(phi) != adj.left.ob(x):
        raise ShapeMismatchError(f"{phi} does not start at {adj.left.ob(x)}")
    return adj.domain.compose(adj.right.mor(phi), adj.unit.at(x))


def untranspose(adj: Adjunction, y: str, psi: str) -> str:
    """``psi: X -> G y`` to its transpose ``eps_y . F(psi): F X -> y``"""
    c1 = adj.domain
    if c1.target(psi) != adj.right.ob(y):
        raise ShapeMismatchError(f"{psi} does not end at {adj.right.ob(y)}")
    return adj.codomain.compose(adj.counit.at(y), adj.left.mor(psi))


def check_adjunction(adj: Adjunction) -> List[LawViolation]:
    report: List[LawViolation] = []
    for label, part in (("left functor", adj.left), ("right functor", adj.right)):
        report.extend(LawViolation(f"{label}: {v.law}", v.detail, v.witness) for v in check_functor(part))
    if report:
        return report
    if adj.left.target is not adj.right.source or adj.right.target is not adj.left.source:
        return [LawViolation("shape", "left and right functors do not form a round trip")]
    c1, c2 = adj.domain, adj.codomain
    gf = compose_functors(adj.right, adj.left)
    fg = compose_functors(adj.left, adj.right)
    if adj.unit.source_functor != identity_functor(c1) or adj.unit.target_functor != gf:
        report.append(LawViolation("shape", "unit is not Id => GF"))
    if adj.counit.source_functor != fg or adj.counit.target_functor != identity_functor(c2):
        report.append(LawViolation("shape", "counit is not FG => Id"))
    if report:
        return report
    for label, part in (("unit", adj.unit), ("counit", adj.counit)):
        report.extend(LawViolation(f"{label}: {v.law}", v.detail, v.witness) for v in check_nat(part))
    if report:
        return report
    for x in c1.objects:
        fx = adj.left.ob(x)
        if c2.compose(adj.counit.at(fx), adj.left.mor(adj.unit.at(x))) != c2.identity(fx):
            report.append(LawViolation("triangle identity 1", f"eps_F{x} . F(eta_{x}) != id", (x,)))
    for y in c2.objects:
        gy = adj.right.ob(y)
        if c1.compose(adj.right.mor(adj.counit.at(y)), adj.unit.at(gy)) != c1.identity(gy):
            report.append(LawViolation("triangle identity 2", f"G(eps_{y}) . eta_G{y} != id", (y,)))
    return report


def check_monad(monad: Monad) -> List[LawViolation]:
    report = [LawViolation(f"functor: {v.law}", v.detail, v.witness) for v in check_functor(monad.functor)]
    if report:
        return report
    cat = monad.category
    t = monad.functor
    if t.target is not cat:
        return [LawViolation("shape", "monad functor is not an endofunctor")]
    if monad.unit.source_functor != identity_functor(cat) or monad.unit.target_functor != t:
        report.append(LawViolation("shape", "unit is not Id => T"))
    if monad.mult.source_functor != compose_functors(t, t) or monad.mult.target_functor != t:
        report.append(LawViolation("shape", "multiplication is not TT => T"))
    if report:
        return report
    for label, part in (("unit", monad.unit), ("mult", monad.mult)):
        report.extend(LawViolation(f"{label}: {v.law}", v.detail, v.witness) for v in check_nat(part))
    if report:
        return report
    mu, eta = monad.mult, monad.unit
    for x in cat.objects:
        tx = t.ob(x)
        if cat.compose(mu.at(x), t.mor(mu.at(x))) != cat.compose(mu.at(x), mu.at(tx)):
            report.append(LawViolation("associativity", f"mu . T(mu) != mu . mu_T at {x}", (x,)))
        identity = cat.identity(tx)
        if cat.compose(mu.at(x), t.mor(eta.at(x))) != identity:
            report.append(LawViolation("left unit", f"mu . T(eta) != id at {x}", (x,)))
        if cat.compose(mu.at(x), eta.at(tx)) != identity:
            report.append(LawViolation("right unit", f"mu . eta_T != id at {x}", (x,)))
    return report


def identity_adjunction(cat: FiniteCategory) -> Adjunction:
    ident = identity_functor(cat)
    one = identity_transformation(ident)
    return Adjunction(ident, ident, one, one, name=f"Id-adj({cat.name})")


def identity_monad(cat: FiniteCategory) -> Monad:
    ident = identity_functor(cat)
    one = identity_transformation(ident)
    return Monad(ident, one, one, name=f"Id({cat.name})")


def monad_of(adj: Adjunction, name: Optional[str] = None) -> Monad:
    """The monad ``(GF, eta, G eps F)``"""
    gf = compose_functors(adj.right, adj.left)
    mult = whisker(whisker(adj.counit, adj.left, "right"), adj.right, "left")
    return Monad(gf, adj.unit, NatTransform(mult.source_functor, gf, mult.components, name="mu"), name=name or "GF")


def is_algebra(monad: Monad, carrier: str, structure: str) -> bool:
    cat, t = monad.category, monad.functor
    if cat.source(structure) != t.ob(carrier) or cat.target(structure) != carrier:
        return False
    if cat.compose(structure, monad.unit.at(carrier)) != cat.identity(carrier):
        return False
    return cat.compose(structure, t.mor(structure)) == cat.compose(structure, monad.mult.at(carrier))


def eilenberg_moore(monad: Monad, name: Optional[str] = None) -> EMCategory:
    """Materialize the Eilenberg-Moore category by exhaustive search.

    Algebras are ordered by carrier, then by structure morphism. Algebra
    morphisms are the ``phi`` of the base category with
    ``phi . a = b . T(phi)``.
    """
    cat, t = monad.category, monad.functor
    local = cat.local_positions
    algebras: List[Algebra] = []
    for x in cat.objects:
        for a in cat.hom(t.ob(x), x):
            if is_algebra(monad, x, a):
                algebras.append(Algebra(algebra_id(x, a), x, a))
    logger.debug(f"[em:{monad.name}] {len(algebras)} algebras found")

    homs: Dict[Tuple[str, str], List[str]] = {}
    underlying: Dict[str, str] = {}
    endpoints: Dict[str, Tuple[str, str]] = {}
    for first in algebras:
        x = cat.object_index(first.carrier)
        tx = cat.object_index(t.ob(first.carrier))
        for second in algebras:
            y = cat.object_index(second.carrier)
            ty = cat.object_index(t.ob(second.carrier))
            candidates = cat.hom_indices(x, y)
            if len(candidates) == 0:
                continue
            a, b = cat.morphism_index(first.structure), cat.morphism_index(second.structure)
            t_phi = t.morphism_array[candidates]
            # phi . a versus b . T(phi), for all phi at once
            lhs = cat.block(tx, x, y)[local[candidates], local[a]]
            rhs = cat.block(tx, ty, y)[local[b], local[t_phi]]
            members = []
            for phi in candidates[lhs == rhs]:
                ident = em_morphism_id(cat.morphisms[phi], first.ident, second.ident)
                underlying[ident] = cat.morphisms[phi]
                endpoints[ident] = (first.ident, second.ident)
                members.append(ident)
            if members:
                homs[(first.ident, second.ident)] = members

    lookup = {(m, *endpoints[ident]): ident for ident, m in underlying.items()}

    def compose(g: str, f: str) -> str:
        source = endpoints[f][0]
        target = endpoints[g][1]
        return lookup[(cat.compose(underlying[g], underlying[f]), source, target)]

    em_name = name or f"EM({monad.name})"
    em = FiniteCategory.from_composition(
        em_name,
        [a.ident for a in algebras],
        homs,
        {a.ident: em_morphism_id(cat.identity(a.carrier), a.ident, a.ident) for a in algebras},
        compose=compose,
    )

    by_id = {a.ident: a for a in algebras}
    forgetful = Functor(
        em,
        cat,
        {a.ident: a.carrier for a in algebras},
        {m: underlying[m] for m in em.morphisms},
        name="U",
    )
    free_objects = {x: algebra_id(t.ob(x), monad.mult.at(x)) for x in cat.objects}
    free_morphisms = {}
    for f in cat.morphisms:
        source, target = free_objects[cat.source(f)], free_objects[cat.target(f)]
        free_morphisms[f] = em_morphism_id(t.mor(f), source, target)
    free = Functor(cat, em, free_objects, free_morphisms, name="F")

    unit = NatTransform(identity_functor(cat), compose_functors(forgetful, free), dict(monad.unit.components), name="eta")
    counit_components = {}
    for ident, algebra in by_id.items():
        counit_components[ident] = em_morphism_id(algebra.structure, free_objects[algebra.carrier], ident)
    counit = NatTransform(compose_functors(free, forgetful), identity_functor(em), counit_components, name="eps")
    adjunction = Adjunction(free, forgetful, unit, counit, name=f"F-|U({monad.name})")
    return EMCategory(monad, tuple(algebras), em, underlying, free, forgetful, adjunction)


def is_idempotent(monad: Monad) -> bool:
    cat = monad.category
    return bool(np.all(cat.inverse_indices[monad.mult.component_array] >= 0))


def restricted_equivalence(adj: Adjunction) -> RestrictedEquivalence:
    """Restrict ``F -| G`` to ``{X : eta_X iso}`` and ``{Y : eps_Y iso}``"""
    c1, c2 = adj.domain, adj.codomain
    unit_local = [x for x in c1.objects if c1.inverse_indices[c1.morphism_index(adj.unit.at(x))] >= 0]
    counit_local = [y for y in c2.objects if c2.inverse_indices[c2.morphism_index(adj.counit.at(y))] >= 0]
    sub1, _ = full_subcategory(c1, unit_local, name=f"{c1.name}_eta")
    sub2, _ = full_subcategory(c2, counit_local, name=f"{c2.name}_eps")
    counit_set = set(counit_local)
    unit_set = set(unit_local)
    for x in unit_local:
        if adj.left.ob(x) not in counit_set:
            raise ShapeMismatchError(f"F({x}) is not counit-local although eta_{x} is invertible")
    for y in counit_local:
        if adj.right.ob(y) not in unit_set:
            raise ShapeMismatchError(f"G({y}) is not unit-local although eps_{y} is invertible")
    left = Functor(
        sub1, sub2, {x: adj.left.ob(x) for x in sub1.objects}, {f: adj.left.mor(f) for f in sub1.morphisms}, name="F|"
    )
    right = Functor(
        sub2, sub1, {y: adj.right.ob(y) for y in sub2.objects}, {g: adj.right.mor(g) for g in sub2.morphisms}, name="G|"
    )
    unit = NatTransform(
        identity_functor(sub1), compose_functors(right, left), {x: adj.unit.at(x) for x in sub1.objects}, name="eta|"
    )
    counit = NatTransform(
        compose_functors(left, right), identity_functor(sub2), {y: adj.counit.at(y) for y in sub2.objects}, name="eps|"
    )
    return RestrictedEquivalence(sub1, sub2, left, right, unit, counit)


# -- isomorphism search ---------------------------------------------------------


def _isomorphism_assignments(
    first: Functor, second: Functor, fixed: Optional[Mapping[str, Sequence[int]]] = None
) -> Iterator[Dict[int, int]]:
    """Yield every natural isomorphism ``first => second`` as index maps.

    Objects are assigned in canonical order, each candidate checked against
    the naturality squares whose endpoints are already assigned.
    """
    source, target = first.source, first.target
    n = len(source.objects)
    fo, fm = first.object_array, first.morphism_array
    go, gm = second.object_array, second.morphism_array
    inverses = target.inverse_indices
    local = target.local_positions
    candidates: List[np.ndarray] = []
    for x in range(n):
        options = target.hom_indices(fo[x], go[x])
        options = options[inverses[options] >= 0]
        if fixed is not None and source.objects[x] in fixed:
            allowed = set(fixed[source.objects[x]])
            options = np.asarray([o for o in options if o in allowed], dtype=np.int64)
        candidates.append(options)
        if len(options) == 0:
            return

    assignment: Dict[int, int] = {}

    def consistent(x: int, theta: int) -> bool:
        for y, theta_y in list(assignment.items()) + [(x, theta)]:
            for a, b, ta, tb in ((y, x, theta_y, theta), (x, y, theta, theta_y)):
                morphisms = source.hom_indices(a, b)
                if len(morphisms) == 0:
                    continue
                lhs = target.block(fo[a], fo[b], go[b])[local[tb], local[fm[morphisms]]]
                rhs = target.block(fo[a], go[a], go[b])[local[gm[morphisms]], local[ta]]
                if np.any(lhs != rhs):
                    return False
        return True

    def extend(x: int) -> Iterator[Dict[int, int]]:
        if x == n:
            yield dict(assignment)
            return
        for theta in candidates[x]:
            theta = int(theta)
            if consistent(x, theta):
                assignment[x] = theta
                yield from extend(x + 1)
                del assignment[x]

    yield from extend(0)


def find_natural_isomorphism(first: Functor, second: Functor, name: str = "iso") -> Optional[NatTransform]:
    """Canonical (first found) natural isomorphism ``first => second``, if any"""
    if first.source is not second.source or first.target is not second.target:
        raise ShapeMismatchError(f"{first.name} and {second.name} do not share source and target")
    for assignment in _isomorphism_assignments(first, second):
        names = first.target.morphisms
        components = {x: names[assignment[i]] for i, x in enumerate(first.source.objects)}
        return NatTransform(first, second, components, name=name)
    return None


def find_monad_isomorphism(first: Monad, second: Monad) -> Optional[NatTransform]:
    """Natural iso ``theta: T1 => T2`` with ``theta . eta1 = eta2`` and
    ``theta . mu1 = mu2 . theta_T2 . T1(theta)``"""
    if first.category is not second.category:
        raise ShapeMismatchError("monads live on different categories")
    cat = first.category
    t1, t2 = first.functor, second.functor
    # unit compatibility fixes the admissible components up front
    fixed = {}
    for x in cat.objects:
        eta1, eta2 = first.unit.at(x), second.unit.at(x)
        fixed[x] = [
            cat.morphism_index(theta)
            for theta in cat.hom(t1.ob(x), t2.ob(x))
            if cat.compose(theta, eta1) == eta2
        ]
    for assignment in _isomorphism_assignments(t1, t2, fixed):
        theta = {x: cat.morphisms[assignment[i]] for i, x in enumerate(cat.objects)}
        if all(
            cat.compose(theta[x], first.mult.at(x))
            == cat.compose(second.mult.at(x), theta[t2.ob(x)], t1.mor(theta[x]))
            for x in cat.objects
        ):
            return NatTransform(t1, t2, theta, name="theta")
    return None
