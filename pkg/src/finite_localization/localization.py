"""Orthogonality, f-local objects and reflections built by search.

A localization here is always a reflection onto an isomorphism-closed
class of objects. ``build_localization`` derives that class from a single
morphism ``f``; ``localization_from_locals`` accepts any class, which is
what closure operators and induced localizations need.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .category import (
    FiniteCategory,
    Functor,
    LawViolation,
    NatTransform,
    check_functor,
    check_nat,
    full_subcategory,
    identity_functor,
)
from .errors import ShapeMismatchError, TheoremViolation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrthoReport:
    morphism: str
    obj: str
    table: Mapping[str, str]
    is_bijection: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "morphism": self.morphism,
            "object": self.obj,
            "table": dict(self.table),
            "is_bijection": self.is_bijection,
        }


@dataclass(frozen=True, eq=False)
class Localization:
    category: FiniteCategory
    functor: Functor
    unit: NatTransform
    local_objects: Tuple[str, ...]
    generator: Optional[str] = None
    name: str = field(default="L")

    @cached_property
    def local_set(self) -> FrozenSet[str]:
        return frozenset(self.local_objects)

    def ob(self, x: str) -> str:
        return self.functor.ob(x)

    def mor(self, g: str) -> str:
        return self.functor.mor(g)

    def reflect(self, x: str) -> Tuple[str, str]:
        return self.functor.ob(x), self.unit.at(x)

    def is_local(self, x: str) -> bool:
        return x in self.local_set

    def is_equivalence(self, g: str) -> bool:
        """An L-equivalence is a morphism that L inverts"""
        cat = self.category
        return bool(cat.inverse_indices[cat.morphism_index(self.functor.mor(g))] >= 0)

    @cached_property
    def equivalence_mask(self) -> np.ndarray:
        return self.category.inverse_indices[self.functor.morphism_array] >= 0

    def equivalences(self) -> List[str]:
        return [m for m, flag in zip(self.category.morphisms, self.equivalence_mask) if flag]

    def table(self) -> Dict[str, Dict[str, str]]:
        return {x: {"object": self.ob(x), "unit": self.unit.at(x)} for x in self.category.objects}


def _orthogonal_index(cat: FiniteCategory, f: int, x: int) -> bool:
    a, b = int(cat.source_indices[f]), int(cat.target_indices[f])
    if cat.hom_size(b, x) != cat.hom_size(a, x):
        return False
    column = cat.block(a, b, x)[:, cat.local_positions[f]]
    return len(np.unique(column)) == len(column)


def orthogonal(cat: FiniteCategory, f: str, x: str) -> OrthoReport:
    """Precomposition ``hom(B, X) -> hom(A, X)`` with ``f: A -> B``"""
    fi, xi = cat.morphism_index(f), cat.object_index(x)
    a, b = int(cat.source_indices[fi]), int(cat.target_indices[fi])
    column = cat.block(a, b, xi)[:, cat.local_positions[fi]]
    names = cat.morphisms
    table = {names[g]: names[h] for g, h in zip(cat.hom_indices(b, xi), column)}
    return OrthoReport(f, x, table, _orthogonal_index(cat, fi, xi))


def local_objects(cat: FiniteCategory, f: str) -> Tuple[str, ...]:
    fi = cat.morphism_index(f)
    return tuple(x for i, x in enumerate(cat.objects) if _orthogonal_index(cat, fi, i))


def is_equivalence(cat: FiniteCategory, g: str, locals_: Iterable[str]) -> bool:
    gi = cat.morphism_index(g)
    return all(_orthogonal_index(cat, gi, cat.object_index(x)) for x in locals_)


def equivalences_for(cat: FiniteCategory, locals_: Iterable[str]) -> Tuple[str, ...]:
    """Every morphism orthogonal to all of ``locals_``"""
    targets = [cat.object_index(x) for x in locals_]
    return tuple(
        m for i, m in enumerate(cat.morphisms) if all(_orthogonal_index(cat, i, x) for x in targets)
    )


def locals_for(cat: FiniteCategory, morphisms: Iterable[str]) -> Tuple[str, ...]:
    """Every object orthogonal to all of ``morphisms``"""
    indices = [cat.morphism_index(m) for m in morphisms]
    return tuple(x for xi, x in enumerate(cat.objects) if all(_orthogonal_index(cat, m, xi) for m in indices))


def object_local_class(cat: FiniteCategory, a: str) -> Tuple[str, ...]:
    """Objects orthogonal to every morphism that ``a`` is orthogonal to"""
    return locals_for(cat, equivalences_for(cat, [a]))


def is_iso_closed(cat: FiniteCategory, objects: Iterable[str]) -> bool:
    members = {cat.object_index(x) for x in objects}
    inverses = cat.inverse_indices
    for m in np.flatnonzero(inverses >= 0):
        if (int(cat.source_indices[m]) in members) != (int(cat.target_indices[m]) in members):
            return False
    return True


def _satisfies_universal_property(cat: FiniteCategory, unit: int, local_indices: Sequence[int]) -> bool:
    return all(_orthogonal_index(cat, unit, y) for y in local_indices)


def reflections(cat: FiniteCategory, locals_: Iterable[str], x: str) -> List[Tuple[str, str]]:
    """Every pair ``(LX, l_X)`` with the universal property, in canonical order"""
    xi = cat.object_index(x)
    local_indices = sorted(cat.object_index(y) for y in locals_)
    sizes = [cat.hom_size(xi, y) for y in local_indices]
    found = []
    for c in local_indices:
        # hom(LX, Y) and hom(X, Y) must have equal size for every local Y
        if any(cat.hom_size(c, y) != size for y, size in zip(local_indices, sizes)):
            continue
        for unit in cat.hom_indices(xi, c):
            if _satisfies_universal_property(cat, int(unit), local_indices):
                found.append((cat.objects[c], cat.morphisms[unit]))
    return found


def reflect(cat: FiniteCategory, locals_: Iterable[str], x: str) -> Optional[Tuple[str, str]]:
    """Canonical reflection of ``x`` onto ``locals_``, or ``None`` if there is none"""
    local_list = list(locals_)
    if x in set(local_list):
        return x, cat.identity(x)
    xi = cat.object_index(x)
    local_indices = sorted(cat.object_index(y) for y in local_list)
    sizes = [cat.hom_size(xi, y) for y in local_indices]
    for c in local_indices:
        if any(cat.hom_size(c, y) != size for y, size in zip(local_indices, sizes)):
            continue
        for unit in cat.hom_indices(xi, c):
            if _satisfies_universal_property(cat, int(unit), local_indices):
                logger.debug(f"[category:{cat.name}] reflection of {x}: {cat.morphisms[unit]}")
                return cat.objects[c], cat.morphisms[unit]
    logger.debug(f"[category:{cat.name}] no reflection of {x}")
    return None


def reflection_isomorphism(cat: FiniteCategory, first: Tuple[str, str], second: Tuple[str, str]) -> Optional[str]:
    """The isomorphism ``theta`` with ``theta . l = l'`` between two reflections, if unique"""
    (c1, l1), (c2, l2) = first, second
    solutions = [
        theta
        for theta in cat.hom(c1, c2)
        if cat.inverse_indices[cat.morphism_index(theta)] >= 0 and cat.compose(theta, l1) == l2
    ]
    if len(solutions) > 1:
        raise TheoremViolation(f"reflections {l1} and {l2} are related by several isomorphisms", solutions)
    return solutions[0] if solutions else None


def lift_through_unit(cat: FiniteCategory, unit_x: str, target: str) -> str:
    """Unique ``m`` with ``m . unit_x = target``; raises when not unique"""
    ui, ti = cat.morphism_index(unit_x), cat.morphism_index(target)
    x, lx = int(cat.source_indices[ui]), int(cat.target_indices[ui])
    y = int(cat.target_indices[ti])
    if int(cat.source_indices[ti]) != x:
        raise ShapeMismatchError(f"{target} does not start where {unit_x} does")
    column = cat.block(x, lx, y)[:, cat.local_positions[ui]]
    matches = cat.hom_indices(lx, y)[column == ti]
    if len(matches) != 1:
        raise TheoremViolation(
            f"{len(matches)} lifts of {target} through {unit_x}", [cat.morphisms[m] for m in matches]
        )
    return cat.morphisms[matches[0]]


def localization_from_locals(
    cat: FiniteCategory,
    locals_: Iterable[str],
    generator: Optional[str] = None,
    name: Optional[str] = None,
    workers: int = 1,
) -> Optional[Localization]:
    """Reflect every object onto ``locals_`` and assemble ``L`` on morphisms.

    Returns ``None`` when some object has no reflection. Ambiguous lifts and
    failed invariants raise ``TheoremViolation``.
    """
    wanted = set(locals_)
    local_list = [x for x in cat.objects if x in wanted]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reflected = list(pool.map(lambda x: reflect(cat, local_list, x), cat.objects))
    else:
        reflected = [reflect(cat, local_list, x) for x in cat.objects]
    missing = [x for x, r in zip(cat.objects, reflected) if r is None]
    if missing:
        logger.warning(f"[category:{cat.name}] no localization: {missing[0]} has no reflection")
        return None

    object_map = {x: r[0] for x, r in zip(cat.objects, reflected)}
    unit_map = {x: r[1] for x, r in zip(cat.objects, reflected)}
    local = cat.local_positions
    morphism_map: Dict[str, str] = {}
    for xi, x in enumerate(cat.objects):
        lx = cat.object_index(object_map[x])
        ux = cat.morphism_index(unit_map[x])
        for yi, y in enumerate(cat.objects):
            hxy = cat.hom_indices(xi, yi)
            if len(hxy) == 0:
                continue
            ly = cat.object_index(object_map[y])
            uy = cat.morphism_index(unit_map[y])
            wanted = cat.block(xi, yi, ly)[local[uy], local[hxy]]
            column = cat.block(xi, lx, ly)[:, local[ux]]
            hits = column[:, None] == wanted[None, :]
            counts = hits.sum(axis=0)
            if np.any(counts != 1):
                g = cat.morphisms[hxy[int(np.flatnonzero(counts != 1)[0])]]
                raise TheoremViolation(f"localized image of {g} is not unique", g)
            lifts = cat.hom_indices(lx, ly)[hits.argmax(axis=0)]
            for g, m in zip(hxy, lifts):
                morphism_map[cat.morphisms[g]] = cat.morphisms[m]

    label = name or (f"L_{generator}" if generator else "L")
    functor = Functor(cat, cat, object_map, morphism_map, name=label)
    unit = NatTransform(identity_functor(cat), functor, unit_map, name=f"l[{label}]")
    loc = Localization(cat, functor, unit, tuple(local_list), generator, label)
    violations = check_localization(loc, class_laws=False)
    if violations:
        raise TheoremViolation(f"{label} on {cat.name} fails the localization invariants", violations[:5])
    return loc


def build_localization(cat: FiniteCategory, f: str, workers: int = 1) -> Optional[Localization]:
    return localization_from_locals(cat, local_objects(cat, f), generator=f, workers=workers)


def identity_localization(cat: FiniteCategory) -> Localization:
    loc = localization_from_locals(cat, cat.objects, name="Id")
    assert loc is not None
    return loc


def check_localization(loc: Localization, class_laws: bool = True) -> List[LawViolation]:
    """Functor, unit and reflection laws; ``class_laws`` adds 2-out-of-3 and orthogonality of the equivalences"""
    cat = loc.category
    report = [LawViolation(f"functor: {v.law}", v.detail, v.witness) for v in check_functor(loc.functor)]
    report.extend(LawViolation(f"unit: {v.law}", v.detail, v.witness) for v in check_nat(loc.unit))
    if report:
        return report
    inverses = cat.inverse_indices
    for x in cat.objects:
        lx, unit = loc.reflect(x)
        unit_is_iso = inverses[cat.morphism_index(unit)] >= 0
        if inverses[cat.morphism_index(loc.unit.at(lx))] < 0:
            report.append(LawViolation("idempotence", f"l at L({x}) = {lx} is not invertible", (x,)))
        if inverses[cat.morphism_index(loc.mor(unit))] < 0:
            report.append(LawViolation("idempotence", f"L(l_{x}) is not invertible", (x,)))
        # for local x this is also the counit of the reflection onto the locals
        if loc.is_local(x) != bool(unit_is_iso):
            report.append(LawViolation("local iff unit invertible", f"{x}: local={loc.is_local(x)}", (x,)))
        if not loc.is_local(lx):
            report.append(LawViolation("reflection lands in locals", f"L({x}) = {lx} is not local", (x,)))
    if not class_laws:
        return report
    report.extend(two_out_of_three_violations(cat, loc.equivalence_mask))
    orthogonal_class = set(equivalences_for(cat, loc.local_objects))
    for m in loc.equivalences():
        if m not in orthogonal_class:
            report.append(LawViolation("equivalences are orthogonal to locals", m, (m,)))
    return report


def restrict_localization(loc: Localization, objects: Iterable[str], name: Optional[str] = None) -> Optional[Localization]:
    """Restrict ``loc`` to the full subcategory on ``objects`` if it maps it into itself"""
    cat = loc.category
    wanted = set(objects)
    members = [x for x in cat.objects if x in wanted]
    member_set = set(members)
    outside = [x for x in members if loc.ob(x) not in member_set]
    if outside:
        logger.info(f"[category:{cat.name}] {loc.name} leaves the subcategory at {outside[0]}")
        return None
    sub, _ = full_subcategory(cat, members, name=f"{cat.name}|{len(members)}")
    label = name or f"{loc.name}|"
    functor = Functor(
        sub, sub, {x: loc.ob(x) for x in sub.objects}, {g: loc.mor(g) for g in sub.morphisms}, name=label
    )
    unit = NatTransform(identity_functor(sub), functor, {x: loc.unit.at(x) for x in sub.objects}, name=f"l[{label}]")
    restricted = Localization(
        sub, functor, unit, tuple(x for x in members if loc.is_local(x)), loc.generator, label
    )
    violations = check_localization(restricted)
    if violations:
        raise TheoremViolation(f"restriction of {loc.name} fails the localization invariants", violations[:5])

    # S(LX, Y) = C(LX, Y) and S(X, Y) = C(X, Y), so locals and equivalences transfer
    local_indices = [sub.object_index(y) for y in restricted.local_objects]
    for x in sub.objects:
        if not _satisfies_universal_property(sub, sub.morphism_index(loc.unit.at(x)), local_indices):
            raise TheoremViolation(f"restricted unit at {x} is not a reflection in the subcategory", x)
    for g in sub.morphisms:
        if restricted.is_equivalence(g) != loc.is_equivalence(g):
            raise TheoremViolation(f"inclusion does not preserve and reflect the equivalence {g}", g)
    return restricted


def two_out_of_three_violations(cat: FiniteCategory, equivalence_mask: np.ndarray) -> List[LawViolation]:
    """Composable pairs where exactly two of ``f``, ``g``, ``g.f`` are equivalences"""
    report: List[LawViolation] = []
    names = cat.morphisms
    mask = np.asarray(equivalence_mask, dtype=bool)
    for (a, b, c), blk in cat.blocks():
        hab, hbc = cat.hom_indices(a, b), cat.hom_indices(b, c)
        count = mask[hbc][:, None].astype(int) + mask[hab][None, :].astype(int) + mask[blk].astype(int)
        for i, j in np.argwhere(count == 2):
            report.append(
                LawViolation("two out of three", f"({names[hbc[i]]}, {names[hab[j]]})", (names[hbc[i]], names[hab[j]]))
            )
    return report
