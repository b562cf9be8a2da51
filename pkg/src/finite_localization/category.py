"""Finite categories, functors and natural transformations.

A ``FiniteCategory`` keeps string ids for objects and morphisms in their
canonical (insertion) order and materializes composition as numpy blocks:
``block(a, b, c)[i, j]`` is the global index of ``g_i . f_j`` for
``f_j`` in ``hom(a, b)`` and ``g_i`` in ``hom(b, c)``, or ``-1`` when the
table has no entry. All law checks run directly on these blocks.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property, singledispatch
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_BUDGET, Budget
from .errors import ShapeMismatchError, TheoremViolation, UnknownIdError

logger = logging.getLogger(__name__)

MAX_REPORTED = 50

Triple = Tuple[int, int, int]


@dataclass(frozen=True)
class LawViolation:
    """One failed law, with the ids that witness it"""

    law: str
    detail: str
    witness: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, object]:
        return {"law": self.law, "detail": self.detail, "witness": list(self.witness)}


def _empty_block(rows: int, cols: int) -> np.ndarray:
    return np.full((rows, cols), -1, dtype=np.int64)


class FiniteCategory:
    """A finite category with a fully materialized composition table.

    Instances are built through the ``from_table`` / ``from_composition``
    constructors or derived with ``full_subcategory``, ``opposite`` and
    ``product_category``. They are never mutated after construction.
    """

    def __init__(
        self,
        name: str,
        objects: Sequence[str],
        morphisms: Sequence[str],
        sources: Sequence[int],
        targets: Sequence[int],
        identities: Sequence[int],
        blocks: Dict[Triple, np.ndarray],
    ):
        self.name = name
        self._objects = tuple(objects)
        self._object_index = {x: i for i, x in enumerate(self._objects)}
        if len(self._object_index) != len(self._objects):
            raise ShapeMismatchError(f"duplicate object ids in category {name}")
        self._morphisms = tuple(morphisms)
        self._morphism_index = {m: i for i, m in enumerate(self._morphisms)}
        if len(self._morphism_index) != len(self._morphisms):
            raise ShapeMismatchError(f"duplicate morphism ids in category {name}")
        self._src = np.asarray(sources, dtype=np.int64)
        self._tgt = np.asarray(targets, dtype=np.int64)
        self._identity = np.asarray(identities, dtype=np.int64)

        grouped: Dict[Tuple[int, int], List[int]] = {}
        for m in range(len(self._morphisms)):
            grouped.setdefault((int(self._src[m]), int(self._tgt[m])), []).append(m)
        self._homs = {key: np.asarray(members, dtype=np.int64) for key, members in grouped.items()}
        self._hom_ids = {key: tuple(self._morphisms[m] for m in members) for key, members in grouped.items()}
        self._local = np.zeros(len(self._morphisms), dtype=np.int64)
        for members in self._homs.values():
            self._local[members] = np.arange(len(members))
        self._blocks = blocks
        self._opposite: Optional["FiniteCategory"] = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_table(
        cls,
        name: str,
        objects: Sequence[str],
        arrows: Sequence[Tuple[str, str, str]],
        composites: Mapping[Tuple[str, str], str],
        identity_prefix: str = "id_",
        budget: Budget = DEFAULT_BUDGET,
    ) -> "FiniteCategory":
        """Build a category from declared arrows and a composite table.

        Identities ``id_<object>`` are added implicitly and compose
        trivially unless ``composites`` says otherwise. Pairs absent from
        the table are stored as missing and reported by ``check_category``.

        Args:
            name: Category name
            objects: Object ids in canonical order
            arrows: ``(id, source, target)`` for every non-identity morphism
            composites: ``(g, f) -> g.f`` for composable non-identity pairs
        """
        object_index = {x: i for i, x in enumerate(objects)}
        morphisms = [f"{identity_prefix}{x}" for x in objects]
        sources = list(range(len(objects)))
        targets = list(range(len(objects)))
        for ident, source, target in arrows:
            for endpoint in (source, target):
                if endpoint not in object_index:
                    raise UnknownIdError("object", endpoint, f"morphism {ident} of {name}")
            morphisms.append(ident)
            sources.append(object_index[source])
            targets.append(object_index[target])
        morphism_index = {m: i for i, m in enumerate(morphisms)}
        if len(morphism_index) != len(morphisms):
            raise ShapeMismatchError(f"duplicate morphism ids in category {name}")
        budget.check(len(objects), len(morphisms))

        identity_set = set(range(len(objects)))
        homs: Dict[Tuple[int, int], List[int]] = {}
        for m in range(len(morphisms)):
            homs.setdefault((sources[m], targets[m]), []).append(m)

        def composite(g: int, f: int) -> int:
            key = (morphisms[g], morphisms[f])
            if key in composites:
                h = composites[key]
                if h not in morphism_index:
                    raise UnknownIdError("morphism", h, f"composite {key[0]}.{key[1]} of {name}")
                return morphism_index[h]
            if g in identity_set:
                return f
            if f in identity_set:
                return g
            return -1

        blocks = cls._materialize(len(objects), homs, composite)
        return cls(name, objects, morphisms, sources, targets, list(range(len(objects))), blocks)

    @classmethod
    def from_composition(
        cls,
        name: str,
        objects: Sequence[str],
        homs: Mapping[Tuple[str, str], Sequence[str]],
        identities: Mapping[str, str],
        compose: Optional[Callable[[str, str], str]] = None,
        compose_block: Optional[Callable[[str, str, str], np.ndarray]] = None,
        budget: Budget = DEFAULT_BUDGET,
    ) -> "FiniteCategory":
        """Build a generated category whose composition is computed.

        Exactly one of ``compose`` (``(g, f) -> id``) or ``compose_block``
        must be given. ``compose_block(a, b, c)`` returns, for every
        ``(g, f)`` in ``hom(b, c) x hom(a, b)``, the position of ``g.f``
        inside ``hom(a, c)``.
        """
        if (compose is None) == (compose_block is None):
            raise ValueError("pass exactly one of compose or compose_block")
        object_index = {x: i for i, x in enumerate(objects)}
        morphisms: List[str] = []
        sources: List[int] = []
        targets: List[int] = []
        for a in objects:
            for b in objects:
                for m in homs.get((a, b), ()):
                    morphisms.append(m)
                    sources.append(object_index[a])
                    targets.append(object_index[b])
        grouped: Dict[Tuple[int, int], List[int]] = {}
        for m in range(len(morphisms)):
            grouped.setdefault((sources[m], targets[m]), []).append(m)
        budget.check(len(objects), len(morphisms), _composable_pairs(len(objects), grouped))

        morphism_index = {m: i for i, m in enumerate(morphisms)}
        if len(morphism_index) != len(morphisms):
            raise ShapeMismatchError(f"duplicate morphism ids in category {name}")
        identity_indices = []
        for x in objects:
            ident = identities[x]
            if ident not in morphism_index:
                raise UnknownIdError("morphism", ident, f"identity of {x} in {name}")
            identity_indices.append(morphism_index[ident])

        if compose is not None:

            def composite(g: int, f: int) -> int:
                h = compose(morphisms[g], morphisms[f])
                if h not in morphism_index:
                    raise UnknownIdError("morphism", h, f"composite {morphisms[g]}.{morphisms[f]} of {name}")
                return morphism_index[h]

            blocks = cls._materialize(len(objects), grouped, composite)
        else:
            blocks = {}
            for (a, b), hab in grouped.items():
                for c in range(len(objects)):
                    hbc = grouped.get((b, c))
                    if hbc is None:
                        continue
                    hac = np.asarray(grouped.get((a, c), []), dtype=np.int64)
                    positions = np.asarray(compose_block(objects[a], objects[b], objects[c]), dtype=np.int64)
                    if positions.shape != (len(hbc), len(hab)):
                        raise ShapeMismatchError(
                            f"composition block ({objects[a]}, {objects[b]}, {objects[c]}) has shape {positions.shape}"
                        )
                    blocks[(a, b, c)] = hac[positions]
        logger.debug(f"[category:{name}] built {len(objects)} objects, {len(morphisms)} morphisms")
        return cls(name, objects, morphisms, sources, targets, identity_indices, blocks)

    @staticmethod
    def _materialize(
        n_objects: int, homs: Mapping[Tuple[int, int], Sequence[int]], composite: Callable[[int, int], int]
    ) -> Dict[Triple, np.ndarray]:
        blocks: Dict[Triple, np.ndarray] = {}
        for (a, b), hab in homs.items():
            for c in range(n_objects):
                hbc = homs.get((b, c))
                if not hbc:
                    continue
                blk = np.empty((len(hbc), len(hab)), dtype=np.int64)
                for i, g in enumerate(hbc):
                    for j, f in enumerate(hab):
                        blk[i, j] = composite(g, f)
                blocks[(a, b, c)] = blk
        return blocks

    # -- lookups ------------------------------------------------------

    @property
    def objects(self) -> Tuple[str, ...]:
        return self._objects

    @property
    def morphisms(self) -> Tuple[str, ...]:
        return self._morphisms

    @property
    def source_indices(self) -> np.ndarray:
        return self._src

    @property
    def target_indices(self) -> np.ndarray:
        return self._tgt

    @property
    def identity_indices(self) -> np.ndarray:
        return self._identity

    @property
    def local_positions(self) -> np.ndarray:
        """Position of every morphism inside its own hom-set"""
        return self._local

    def has_object(self, x: str) -> bool:
        return x in self._object_index

    def has_morphism(self, f: str) -> bool:
        return f in self._morphism_index

    def object_index(self, x: str) -> int:
        try:
            return self._object_index[x]
        except KeyError:
            raise UnknownIdError("object", x, self.name) from None

    def morphism_index(self, f: str) -> int:
        try:
            return self._morphism_index[f]
        except KeyError:
            raise UnknownIdError("morphism", f, self.name) from None

    def source(self, f: str) -> str:
        return self._objects[self._src[self.morphism_index(f)]]

    def target(self, f: str) -> str:
        return self._objects[self._tgt[self.morphism_index(f)]]

    def identity(self, x: str) -> str:
        return self._morphisms[self._identity[self.object_index(x)]]

    def is_identity(self, f: str) -> bool:
        i = self.morphism_index(f)
        return bool(self._identity[self._src[i]] == i)

    def hom(self, a: str, b: str) -> Tuple[str, ...]:
        return self._hom_ids.get((self.object_index(a), self.object_index(b)), ())

    def hom_indices(self, a: int, b: int) -> np.ndarray:
        members = self._homs.get((a, b))
        return members if members is not None else np.empty(0, dtype=np.int64)

    def hom_size(self, a: int, b: int) -> int:
        members = self._homs.get((a, b))
        return 0 if members is None else len(members)

    def block(self, a: int, b: int, c: int) -> np.ndarray:
        blk = self._blocks.get((a, b, c))
        if blk is None:
            return _empty_block(self.hom_size(b, c), self.hom_size(a, b))
        return blk

    def blocks(self) -> Iterator[Tuple[Triple, np.ndarray]]:
        return iter(self._blocks.items())

    def compose_index(self, g: int, f: int) -> int:
        if self._tgt[f] != self._src[g]:
            raise ShapeMismatchError(
                f"{self._morphisms[g]} . {self._morphisms[f]} is not composable in {self.name}"
            )
        a, b, c = int(self._src[f]), int(self._src[g]), int(self._tgt[g])
        h = int(self.block(a, b, c)[self._local[g], self._local[f]])
        if h < 0:
            raise ShapeMismatchError(f"no composite recorded for ({self._morphisms[g]}, {self._morphisms[f]})")
        return h

    def compose(self, *path: str) -> str:
        """Compose right to left: ``compose(h, g, f) == h . g . f``"""
        if not path:
            raise ShapeMismatchError("empty composition")
        current = self.morphism_index(path[-1])
        for g in reversed(path[:-1]):
            current = self.compose_index(self.morphism_index(g), current)
        return self._morphisms[current]

    def composable_pairs(self) -> int:
        return _composable_pairs(len(self._objects), self._homs)

    def is_thin(self) -> bool:
        return all(len(members) <= 1 for members in self._homs.values())

    @cached_property
    def inverse_indices(self) -> np.ndarray:
        """Global index of the inverse of every morphism, ``-1`` if none"""
        inverses = np.full(len(self._morphisms), -1, dtype=np.int64)
        for (a, b), hab in self._homs.items():
            hba = self._homs.get((b, a))
            if hba is None:
                continue
            back = self.block(a, b, a) == self._identity[a]
            forth = self.block(b, a, b).T == self._identity[b]
            both = back & forth
            has_inverse = both.any(axis=0)
            first = both.argmax(axis=0)
            inverses[hab[has_inverse]] = hba[first[has_inverse]]
        return inverses

    def opposite(self) -> "FiniteCategory":
        if self._opposite is None:
            name = self.name[:-3] if self.name.endswith("^op") else f"{self.name}^op"
            blocks = {(c, b, a): blk.T for (a, b, c), blk in self._blocks.items()}
            op = FiniteCategory(name, self._objects, self._morphisms, self._tgt, self._src, self._identity, blocks)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def __repr__(self) -> str:
        return f"FiniteCategory({self.name!r}, objects={len(self._objects)}, morphisms={len(self._morphisms)})"


def _composable_pairs(n_objects: int, homs: Mapping[Tuple[int, int], Sequence[int]]) -> int:
    incoming = [0] * n_objects
    outgoing = [0] * n_objects
    for (a, b), members in homs.items():
        outgoing[a] += len(members)
        incoming[b] += len(members)
    return sum(i * o for i, o in zip(incoming, outgoing))


# -- functors and natural transformations ----------------------------------


@dataclass(frozen=True)
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    object_map: Mapping[str, str]
    morphism_map: Mapping[str, str]
    name: str = field(default="F", compare=False)

    def ob(self, x: str) -> str:
        try:
            return self.object_map[x]
        except KeyError:
            raise UnknownIdError("object", x, f"functor {self.name}") from None

    def mor(self, f: str) -> str:
        try:
            return self.morphism_map[f]
        except KeyError:
            raise UnknownIdError("morphism", f, f"functor {self.name}") from None

    @cached_property
    def object_array(self) -> np.ndarray:
        return np.asarray([self.target.object_index(self.ob(x)) for x in self.source.objects], dtype=np.int64)

    @cached_property
    def morphism_array(self) -> np.ndarray:
        return np.asarray([self.target.morphism_index(self.mor(f)) for f in self.source.morphisms], dtype=np.int64)


@dataclass(frozen=True)
class NatTransform:
    source_functor: Functor
    target_functor: Functor
    components: Mapping[str, str]
    name: str = field(default="t", compare=False)

    @property
    def source_category(self) -> FiniteCategory:
        return self.source_functor.source

    @property
    def target_category(self) -> FiniteCategory:
        return self.source_functor.target

    def at(self, x: str) -> str:
        try:
            return self.components[x]
        except KeyError:
            raise UnknownIdError("object", x, f"transformation {self.name}") from None

    @cached_property
    def component_array(self) -> np.ndarray:
        return np.asarray(
            [self.target_category.morphism_index(self.at(x)) for x in self.source_category.objects], dtype=np.int64
        )


def _record(report: List[LawViolation], law: str, items: Iterable[Tuple[str, Tuple[str, ...]]]) -> None:
    count = 0
    for detail, witness in items:
        if count < MAX_REPORTED:
            report.append(LawViolation(law, detail, witness))
        count += 1
    if count > MAX_REPORTED:
        report.append(LawViolation(law, f"{count - MAX_REPORTED} further violations not listed"))


def check_category(cat: FiniteCategory) -> List[LawViolation]:
    """Return every violated category law; empty iff ``cat`` is a category"""
    report: List[LawViolation] = []
    names = cat.morphisms
    objects = cat.objects
    src, tgt, local = cat.source_indices, cat.target_indices, cat.local_positions

    _record(
        report,
        "identity typing",
        (
            (f"identity {names[i]} of {x} is not an endomorphism of {x}", (x, names[i]))
            for a, (x, i) in enumerate(zip(objects, cat.identity_indices))
            if src[i] != a or tgt[i] != a
        ),
    )

    for (a, b, c), blk in cat.blocks():
        hab, hbc = cat.hom_indices(a, b), cat.hom_indices(b, c)
        missing = np.argwhere(blk < 0)
        _record(
            report,
            "composition defined",
            ((f"missing composite ({names[hbc[i]]},{names[hab[j]]})", (names[hbc[i]], names[hab[j]])) for i, j in missing),
        )
        safe = np.where(blk < 0, 0, blk)
        wrong = np.argwhere((blk >= 0) & ((src[safe] != a) | (tgt[safe] != c)))
        _record(
            report,
            "composition typing",
            (
                (
                    f"composite ({names[hbc[i]]},{names[hab[j]]}) = {names[blk[i, j]]} "
                    f"does not lie in hom({objects[a]},{objects[c]})",
                    (names[hbc[i]], names[hab[j]]),
                )
                for i, j in wrong
            ),
        )
    if report:
        # unit and associativity laws are meaningless on an ill-typed table
        return report

    for (a, b), hab in cat._homs.items():
        left = cat.block(a, b, b)[local[cat.identity_indices[b]], :]
        right = cat.block(a, a, b)[:, local[cat.identity_indices[a]]]
        _record(
            report,
            "left identity",
            ((f"id . {names[hab[j]]} != {names[hab[j]]}", (names[cat.identity_indices[b]], names[hab[j]])) for j in np.flatnonzero(left != hab)),
        )
        _record(
            report,
            "right identity",
            ((f"{names[hab[j]]} . id != {names[hab[j]]}", (names[hab[j]], names[cat.identity_indices[a]])) for j in np.flatnonzero(right != hab)),
        )

    n = len(objects)
    for (a, b, c), b_abc in cat.blocks():
        loc_abc = local[b_abc]
        hab, hbc = cat.hom_indices(a, b), cat.hom_indices(b, c)
        for d in range(n):
            hcd = cat.hom_indices(c, d)
            if len(hcd) == 0:
                continue
            b_acd = cat.block(a, c, d)
            b_bcd_local = local[cat.block(b, c, d)]
            b_abd = cat.block(a, b, d)
            chunk = max(1, 2_000_000 // max(1, b_abc.size))
            for start in range(0, len(hcd), chunk):
                stop = min(len(hcd), start + chunk)
                lhs = b_acd[start:stop][:, loc_abc]
                rhs = b_abd[b_bcd_local[start:stop], :]
                bad = np.argwhere(lhs != rhs)
                _record(
                    report,
                    "associativity",
                    (
                        (
                            f"{names[hcd[start + h]]} . ({names[hbc[g]]} . {names[hab[f]]}) != "
                            f"({names[hcd[start + h]]} . {names[hbc[g]]}) . {names[hab[f]]}",
                            (names[hcd[start + h]], names[hbc[g]], names[hab[f]]),
                        )
                        for h, g, f in bad
                    ),
                )
    return report


def hom_set(cat: FiniteCategory, a: str, b: str) -> List[str]:
    return list(cat.hom(a, b))


def is_isomorphism(cat: FiniteCategory, f: str) -> Tuple[bool, Optional[str]]:
    """Return ``(True, inverse)`` when ``f`` is invertible, else ``(False, None)``"""
    inverse = cat.inverse_indices[cat.morphism_index(f)]
    if inverse < 0:
        return False, None
    return True, cat.morphisms[inverse]


def is_epimorphism(cat: FiniteCategory, f: str) -> bool:
    i = cat.morphism_index(f)
    a, b = int(cat.source_indices[i]), int(cat.target_indices[i])
    for c in range(len(cat.objects)):
        column = cat.block(a, b, c)[:, cat.local_positions[i]]
        if len(np.unique(column)) != len(column):
            return False
    return True


def is_monomorphism(cat: FiniteCategory, f: str) -> bool:
    return is_epimorphism(cat.opposite(), f)


def check_functor(functor: Functor) -> List[LawViolation]:
    report: List[LawViolation] = []
    source, target = functor.source, functor.target
    for label, ids, mapping, exists in (
        ("object map", source.objects, functor.object_map, target.has_object),
        ("morphism map", source.morphisms, functor.morphism_map, target.has_morphism),
    ):
        _record(report, f"{label} total", ((f"{x} has no image", (x,)) for x in ids if x not in mapping))
        _record(
            report,
            f"{label} values",
            ((f"{x} maps to unknown id {mapping[x]}", (x, mapping[x])) for x in ids if x in mapping and not exists(mapping[x])),
        )
    if report:
        return report

    fo, fm = functor.object_array, functor.morphism_array
    names = source.morphisms
    _record(
        report,
        "preserves sources",
        ((f"source of F({names[m]}) is not F(source)", (names[m],)) for m in np.flatnonzero(target.source_indices[fm] != fo[source.source_indices])),
    )
    _record(
        report,
        "preserves targets",
        ((f"target of F({names[m]}) is not F(target)", (names[m],)) for m in np.flatnonzero(target.target_indices[fm] != fo[source.target_indices])),
    )
    _record(
        report,
        "preserves identities",
        (
            (f"F(id_{source.objects[a]}) is not an identity", (source.objects[a],))
            for a in np.flatnonzero(fm[source.identity_indices] != target.identity_indices[fo])
        ),
    )
    if report:
        return report

    tlocal = target.local_positions
    for (a, b, c), blk in source.blocks():
        hab, hbc = source.hom_indices(a, b), source.hom_indices(b, c)
        lhs = np.where(blk < 0, -1, fm[np.where(blk < 0, 0, blk)])
        rhs = target.block(fo[a], fo[b], fo[c])[np.ix_(tlocal[fm[hbc]], tlocal[fm[hab]])]
        bad = np.argwhere((blk >= 0) & (lhs != rhs))
        _record(
            report,
            "preserves composition",
            ((f"F({names[hbc[i]]} . {names[hab[j]]}) != F({names[hbc[i]]}) . F({names[hab[j]]})", (names[hbc[i]], names[hab[j]])) for i, j in bad),
        )
    return report


def check_nat(transformation: NatTransform) -> List[LawViolation]:
    report: List[LawViolation] = []
    first, second = transformation.source_functor, transformation.target_functor
    if first.source is not second.source or first.target is not second.target:
        return [LawViolation("shape", f"{first.name} and {second.name} do not share source and target")]
    source, target = first.source, first.target
    components = transformation.components
    _record(report, "components total", ((f"no component at {x}", (x,)) for x in source.objects if x not in components))
    _record(
        report,
        "component values",
        ((f"component at {x} is unknown id {components[x]}", (x,)) for x in source.objects if x in components and not target.has_morphism(components[x])),
    )
    if report:
        return report
    for x in source.objects:
        comp = components[x]
        if target.source(comp) != first.ob(x) or target.target(comp) != second.ob(x):
            report.append(
                LawViolation("component typing", f"component {comp} at {x} is not {first.ob(x)} -> {second.ob(x)}", (x, comp))
            )
    if report:
        return report

    fo, fm = first.object_array, first.morphism_array
    go, gm = second.object_array, second.morphism_array
    comp = transformation.component_array
    tlocal = target.local_positions
    names = source.morphisms
    for (x, y), hxy in source._homs.items():
        # t_Y . F(f) against G(f) . t_X for every f: X -> Y
        lhs = target.block(fo[x], fo[y], go[y])[tlocal[comp[y]], tlocal[fm[hxy]]]
        rhs = target.block(fo[x], go[x], go[y])[tlocal[gm[hxy]], tlocal[comp[x]]]
        _record(
            report,
            "naturality",
            ((f"square for {names[hxy[j]]} does not commute", (names[hxy[j]],)) for j in np.flatnonzero(lhs != rhs)),
        )
    return report


def identity_functor(cat: FiniteCategory, name: Optional[str] = None) -> Functor:
    return Functor(
        cat,
        cat,
        {x: x for x in cat.objects},
        {f: f for f in cat.morphisms},
        name=name or f"Id({cat.name})",
    )


def identity_transformation(functor: Functor, name: Optional[str] = None) -> NatTransform:
    target = functor.target
    components = {x: target.identity(functor.ob(x)) for x in functor.source.objects}
    return NatTransform(functor, functor, components, name=name or f"1_{functor.name}")


def compose_functors(second: Functor, first: Functor, name: Optional[str] = None) -> Functor:
    """Return ``second . first`` (``first`` applied first)"""
    if first.target is not second.source:
        raise ShapeMismatchError(
            f"cannot compose {second.name} after {first.name}: {first.target.name} != {second.source.name}"
        )
    return Functor(
        first.source,
        second.target,
        {x: second.ob(first.ob(x)) for x in first.source.objects},
        {f: second.mor(first.mor(f)) for f in first.source.morphisms},
        name=name or f"{second.name}.{first.name}",
    )


def _verified(transformation: NatTransform) -> NatTransform:
    violations = check_nat(transformation)
    if violations:
        raise TheoremViolation(f"composite transformation {transformation.name} is not natural", violations[:5])
    return transformation


def whisker(transformation: NatTransform, functor: Functor, side: str) -> NatTransform:
    """Whisker a transformation by a functor.

    ``side="left"`` gives ``functor . t`` (apply ``functor`` to every
    component); ``side="right"`` gives ``t . functor`` (components at the
    images of ``functor``).
    """
    if side == "left":
        if functor.source is not transformation.target_category:
            raise ShapeMismatchError(f"cannot whisker {transformation.name} by {functor.name} on the left")
        return _verified(
            NatTransform(
                compose_functors(functor, transformation.source_functor),
                compose_functors(functor, transformation.target_functor),
                {x: functor.mor(c) for x, c in transformation.components.items()},
                name=f"{functor.name}{transformation.name}",
            )
        )
    if side == "right":
        if functor.target is not transformation.source_category:
            raise ShapeMismatchError(f"cannot whisker {transformation.name} by {functor.name} on the right")
        return _verified(
            NatTransform(
                compose_functors(transformation.source_functor, functor),
                compose_functors(transformation.target_functor, functor),
                {x: transformation.at(functor.ob(x)) for x in functor.source.objects},
                name=f"{transformation.name}{functor.name}",
            )
        )
    raise ValueError(f"Unsupported whisker side: {side}. Supported sides: 'left', 'right'")


def vertical_compose(second: NatTransform, first: NatTransform, name: Optional[str] = None) -> NatTransform:
    """Return ``second . first`` for ``first: F => G`` and ``second: G => H``"""
    if first.target_functor != second.source_functor:
        raise ShapeMismatchError(f"cannot stack {second.name} on {first.name}: middle functors differ")
    target = first.target_category
    return _verified(
        NatTransform(
            first.source_functor,
            second.target_functor,
            {x: target.compose(second.at(x), first.at(x)) for x in first.source_category.objects},
            name=name or f"{second.name}.{first.name}",
        )
    )


def horizontal_compose(outer: NatTransform, inner: NatTransform, route: str = "first") -> NatTransform:
    """Horizontal composite of ``inner: F => F'`` and ``outer: G => G'``.

    ``route="first"`` computes ``outer F' . G inner``; ``route="second"``
    computes ``G' inner . outer F``. Both must agree on valid input.
    """
    if route == "first":
        return vertical_compose(
            whisker(outer, inner.target_functor, "right"), whisker(inner, outer.source_functor, "left")
        )
    if route == "second":
        return vertical_compose(
            whisker(inner, outer.target_functor, "left"), whisker(outer, inner.source_functor, "right")
        )
    raise ValueError(f"Unsupported route: {route}. Supported routes: 'first', 'second'")


def check_interchange(
    outer_second: NatTransform, outer_first: NatTransform, inner_second: NatTransform, inner_first: NatTransform
) -> List[LawViolation]:
    """Compare ``(s'.s) * (t'.t)`` with ``(s' * t') . (s * t)`` componentwise"""
    lhs = horizontal_compose(vertical_compose(outer_second, outer_first), vertical_compose(inner_second, inner_first))
    rhs = vertical_compose(horizontal_compose(outer_second, inner_second), horizontal_compose(outer_first, inner_first))
    return [
        LawViolation("interchange", f"components differ at {x}: {lhs.at(x)} != {rhs.at(x)}", (x,))
        for x in lhs.source_category.objects
        if lhs.at(x) != rhs.at(x)
    ]


@singledispatch
def opposite(value):
    """Opposite of a category, functor or natural transformation"""
    raise TypeError(f"no opposite for {type(value).__name__}")


@opposite.register
def _(cat: FiniteCategory) -> FiniteCategory:
    return cat.opposite()


def _op_name(name: str) -> str:
    return name[:-3] if name.endswith("^op") else f"{name}^op"


@opposite.register
def _(functor: Functor) -> Functor:
    return Functor(
        functor.source.opposite(),
        functor.target.opposite(),
        functor.object_map,
        functor.morphism_map,
        name=_op_name(functor.name),
    )


@opposite.register
def _(transformation: NatTransform) -> NatTransform:
    return NatTransform(
        opposite(transformation.target_functor),
        opposite(transformation.source_functor),
        transformation.components,
        name=_op_name(transformation.name),
    )


def is_fully_faithful(functor: Functor) -> bool:
    """True iff every hom-set map ``hom(X, Y) -> hom(FX, FY)`` is bijective"""
    source, target = functor.source, functor.target
    fo, fm = functor.object_array, functor.morphism_array
    for x in range(len(source.objects)):
        for y in range(len(source.objects)):
            images = fm[source.hom_indices(x, y)]
            if len(images) != target.hom_size(fo[x], fo[y]) or len(np.unique(images)) != len(images):
                return False
    return True


def full_subcategory(
    cat: FiniteCategory, objects: Iterable[str], name: Optional[str] = None
) -> Tuple[FiniteCategory, Functor]:
    """Full subcategory on ``objects`` (kept in ``cat`` order) with its inclusion"""
    wanted = {cat.object_index(x) for x in objects}
    kept_objects = [a for a in range(len(cat.objects)) if a in wanted]
    new_object = {a: i for i, a in enumerate(kept_objects)}
    src, tgt = cat.source_indices, cat.target_indices
    kept = [m for m in range(len(cat.morphisms)) if src[m] in wanted and tgt[m] in wanted]
    renumber = np.full(len(cat.morphisms), -1, dtype=np.int64)
    renumber[kept] = np.arange(len(kept))
    blocks = {}
    for (a, b, c), blk in cat.blocks():
        if a in wanted and b in wanted and c in wanted:
            blocks[(new_object[a], new_object[b], new_object[c])] = np.where(blk < 0, -1, renumber[np.where(blk < 0, 0, blk)])
    sub = FiniteCategory(
        name or f"{cat.name}|sub",
        [cat.objects[a] for a in kept_objects],
        [cat.morphisms[m] for m in kept],
        [new_object[int(src[m])] for m in kept],
        [new_object[int(tgt[m])] for m in kept],
        [int(renumber[cat.identity_indices[a]]) for a in kept_objects],
        blocks,
    )
    inclusion = Functor(
        sub,
        cat,
        {x: x for x in sub.objects},
        {f: f for f in sub.morphisms},
        name=f"I({sub.name})",
    )
    return sub, inclusion


def pair_id(first: str, second: str) -> str:
    return f"({first},{second})"


@dataclass(frozen=True, eq=False)
class ProductCategory:
    """A product category together with the factor bookkeeping"""

    category: FiniteCategory
    first: FiniteCategory
    second: FiniteCategory
    object_pairs: Mapping[str, Tuple[str, str]]
    morphism_pairs: Mapping[str, Tuple[str, str]]

    def projection(self, which: int) -> Functor:
        factor = self.first if which == 0 else self.second
        return Functor(
            self.category,
            factor,
            {x: pair[which] for x, pair in self.object_pairs.items()},
            {f: pair[which] for f, pair in self.morphism_pairs.items()},
            name=f"pr{which + 1}",
        )


def product_category(
    first: FiniteCategory, second: FiniteCategory, name: Optional[str] = None, budget: Budget = DEFAULT_BUDGET
) -> ProductCategory:
    object_pairs = {pair_id(x, y): (x, y) for x in first.objects for y in second.objects}
    morphism_pairs: Dict[str, Tuple[str, str]] = {}
    homs: Dict[Tuple[str, str], List[str]] = {}
    for (x1, y1), (x2, y2) in ((p, q) for p in object_pairs.values() for q in object_pairs.values()):
        members = []
        for f in first.hom(x1, x2):
            for g in second.hom(y1, y2):
                ident = pair_id(f, g)
                morphism_pairs[ident] = (f, g)
                members.append(ident)
        if members:
            homs[(pair_id(x1, y1), pair_id(x2, y2))] = members

    def compose_block(a: str, b: str, c: str) -> np.ndarray:
        (a1, a2), (b1, b2), (c1, c2) = object_pairs[a], object_pairs[b], object_pairs[c]
        i, j = first.object_index, second.object_index
        left = first.local_positions[first.block(i(a1), i(b1), i(c1))]
        right = second.local_positions[second.block(j(a2), j(b2), j(c2))]
        width = second.hom_size(j(a2), j(c2))
        combined = left[:, None, :, None] * width + right[None, :, None, :]
        rows = combined.shape[0] * combined.shape[1]
        return combined.reshape(rows, -1)

    category = FiniteCategory.from_composition(
        name or f"{first.name}x{second.name}",
        list(object_pairs),
        homs,
        {pair_id(x, y): pair_id(first.identity(x), second.identity(y)) for x, y in object_pairs.values()},
        compose_block=compose_block,
        budget=budget,
    )
    return ProductCategory(category, first, second, object_pairs, morphism_pairs)
