"""Finite posets as thin categories, their closure operators and Galois connections.

Closure operators (monotone, inflationary, idempotent) are exactly the
idempotent monads and the localizations on a poset, so every closure yields
both a ``Monad`` and a ``Localization``.
"""

import itertools
import logging
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..adjunction import Adjunction, Monad
from ..category import FiniteCategory, Functor, NatTransform, compose_functors, identity_functor
from ..errors import DslError, ShapeMismatchError
from ..localization import Localization, localization_from_locals

logger = logging.getLogger(__name__)

Closure = Tuple[str, ...]

_COVER = re.compile(r"^\s*([A-Za-z0-9_']+)\s*<\s*([A-Za-z0-9_']+)\s*$")

LATTICES = ("diamond", "pentagon")


def arrow_id(a: str, b: str) -> str:
    return f"id_{a}" if a == b else f"{a}->{b}"


@dataclass(frozen=True, eq=False)
class Poset:
    name: str
    elements: Tuple[str, ...]
    order: FrozenSet[Tuple[str, str]]

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.order

    def up(self, a: str) -> List[str]:
        return [b for b in self.elements if self.leq(a, b)]

    def down(self, a: str) -> List[str]:
        return [b for b in self.elements if self.leq(b, a)]

    @property
    def covers(self) -> List[Tuple[str, str]]:
        """Strict relations with nothing in between, in element order"""
        strict = [(a, b) for a in self.elements for b in self.elements if a != b and self.leq(a, b)]
        return [
            (a, b) for a, b in strict if not any(c not in (a, b) and self.leq(a, c) and self.leq(c, b) for c in self.elements)
        ]

    @cached_property
    def category(self) -> FiniteCategory:
        homs = {(a, b): [arrow_id(a, b)] for a, b in self.order}
        return FiniteCategory.from_composition(
            self.name,
            self.elements,
            homs,
            {a: arrow_id(a, a) for a in self.elements},
            compose=lambda g, f: arrow_id(self._ends[f][0], self._ends[g][1]),
        )

    @cached_property
    def _ends(self) -> Dict[str, Tuple[str, str]]:
        return {arrow_id(a, b): (a, b) for a, b in self.order}

    def join(self, items: Iterable[str]) -> Optional[str]:
        items = list(items)
        uppers = [c for c in self.elements if all(self.leq(x, c) for x in items)]
        least = [c for c in uppers if all(self.leq(c, u) for u in uppers)]
        return least[0] if least else None

    def meet(self, items: Iterable[str]) -> Optional[str]:
        items = list(items)
        lowers = [c for c in self.elements if all(self.leq(c, x) for x in items)]
        greatest = [c for c in lowers if all(self.leq(u, c) for u in lowers)]
        return greatest[0] if greatest else None

    @property
    def is_lattice(self) -> bool:
        return all(
            self.join([a, b]) is not None and self.meet([a, b]) is not None
            for a in self.elements
            for b in self.elements
        )


def poset_from_relation(name: str, elements: Sequence[str], pairs: Iterable[Tuple[str, str]]) -> Poset:
    """Reflexive-transitive closure of ``pairs``; raises if the result is not antisymmetric"""
    known = set(elements)
    order = {(a, a) for a in elements}
    for a, b in pairs:
        if a not in known or b not in known:
            raise ShapeMismatchError(f"relation {a}<{b} mentions an element outside {name}")
        order.add((a, b))
    changed = True
    while changed:
        extra = {(a, d) for a, b in order for c, d in order if b == c} - order
        changed = bool(extra)
        order |= extra
    cycle = next(((a, b) for a, b in order if a != b and (b, a) in order), None)
    if cycle:
        raise ShapeMismatchError(f"relation for {name} has the cycle {cycle[0]} <-> {cycle[1]}")
    return Poset(name, tuple(elements), frozenset(order))


def parse_relation(text: str, name: str = "poset") -> Poset:
    """``"a<b, b<c"`` with elements in order of first appearance"""
    elements: List[str] = []
    pairs = []
    for clause in filter(None, (part.strip() for part in text.split(","))):
        match = _COVER.match(clause)
        if not match:
            raise DslError(f"cannot read order relation {clause!r}")
        a, b = match.groups()
        for x in (a, b):
            if x not in elements:
                elements.append(x)
        pairs.append((a, b))
    return poset_from_relation(name, elements, pairs)


def chain(n: int) -> Poset:
    names = [str(i) for i in range(n)]
    return poset_from_relation(f"chain{n}", names, zip(names, names[1:]))


def antichain(n: int) -> Poset:
    return poset_from_relation(f"antichain{n}", [str(i) for i in range(n)], [])


def lattice(kind: str) -> Poset:
    if kind == "diamond":
        return poset_from_relation("diamond", ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    elif kind == "pentagon":
        return poset_from_relation(
            "pentagon", ["0", "a", "b", "c", "1"], [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")]
        )
    else:
        raise ValueError(f"Unsupported lattice: {kind}. Supported lattices: {', '.join(LATTICES)}")


def gen_poset(relation: str, name: str = "poset") -> FiniteCategory:
    return parse_relation(relation, name).category


def enumerate_posets(n: int) -> List[Poset]:
    """All posets on ``n`` elements up to isomorphism, labelled ``0..n-1`` along a linear extension"""
    names = [str(i) for i in range(n)]
    candidates = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    found = []
    for mask in range(1 << len(candidates)):
        strict = {candidates[k] for k in range(len(candidates)) if mask >> k & 1}
        if any((i, k) not in strict for i, j in strict for j2, k in strict if j == j2):
            continue
        key = min(
            tuple(sorted((perm[i], perm[j]) for i, j in strict)) for perm in itertools.permutations(range(n))
        )
        if key in seen:
            continue
        seen.add(key)
        pairs = [(names[i], names[j]) for i, j in sorted(strict)]
        found.append(poset_from_relation(f"p{n}_{len(found)}", names, pairs))
    return found


def lattices(max_elements: int) -> List[Poset]:
    return [p for n in range(1, max_elements + 1) for p in enumerate_posets(n) if p.is_lattice]


# -- closure operators ------------------------------------------------------------


def closure_operators(poset: Poset) -> List[Closure]:
    """Every closure operator as a tuple of images; the identity comes first"""
    options = [[x] + [y for y in poset.up(x) if y != x] for x in poset.elements]
    found = []
    for images in itertools.product(*options):
        image = dict(zip(poset.elements, images))
        idempotent = all(image[image[x]] == image[x] for x in poset.elements)
        monotone = all(poset.leq(image[a], image[b]) for a, b in poset.order)
        if idempotent and monotone:
            found.append(tuple(images))
    logger.debug(f"[poset:{poset.name}] {len(found)} closure operators")
    return found


def closure_functor(poset: Poset, closure: Closure, name: str = "T") -> Functor:
    cat = poset.category
    image = dict(zip(poset.elements, closure))
    return Functor(
        cat,
        cat,
        image,
        {arrow_id(a, b): arrow_id(image[a], image[b]) for a, b in poset.order},
        name=name,
    )


def closure_monad(poset: Poset, closure: Closure, name: Optional[str] = None) -> Monad:
    cat = poset.category
    label = name or f"closure[{','.join(closure)}]"
    functor = closure_functor(poset, closure, label)
    image = dict(zip(poset.elements, closure))
    unit = NatTransform(identity_functor(cat), functor, {x: arrow_id(x, image[x]) for x in poset.elements}, name="eta")
    mult = NatTransform(
        compose_functors(functor, functor), functor, {x: arrow_id(image[x], image[x]) for x in poset.elements}, name="mu"
    )
    return Monad(functor, unit, mult, name=label)


def closure_monads(poset: Poset) -> List[Monad]:
    return [closure_monad(poset, c, name=f"closure({i})") for i, c in enumerate(closure_operators(poset))]


def closure_localization(poset: Poset, closure: Closure, name: Optional[str] = None) -> Localization:
    """The reflection onto the fixed points of ``closure``"""
    fixed = [x for x, y in zip(poset.elements, closure) if x == y]
    loc = localization_from_locals(poset.category, fixed, name=name or f"L[{','.join(fixed)}]")
    if loc is None:
        raise ShapeMismatchError(f"{closure} is not a closure operator on {poset.name}")
    return loc


# -- Galois connections -----------------------------------------------------------


def monotone_maps(source: Poset, target: Poset) -> List[Tuple[str, ...]]:
    found = []
    for images in itertools.product(target.elements, repeat=len(source.elements)):
        image = dict(zip(source.elements, images))
        if all(target.leq(image[a], image[b]) for a, b in source.order):
            found.append(images)
    return found


def galois_connection(source: Poset, target: Poset, left: Sequence[str], right: Sequence[str]) -> Optional[Adjunction]:
    """``left -| right`` when ``left(x) <= y`` iff ``x <= right(y)``, else ``None``"""
    f = dict(zip(source.elements, left))
    g = dict(zip(target.elements, right))
    if not all(target.leq(f[x], y) == source.leq(x, g[y]) for x in source.elements for y in target.elements):
        return None
    c1, c2 = source.category, target.category
    left_functor = Functor(c1, c2, f, {arrow_id(a, b): arrow_id(f[a], f[b]) for a, b in source.order}, name="f")
    right_functor = Functor(c2, c1, g, {arrow_id(a, b): arrow_id(g[a], g[b]) for a, b in target.order}, name="g")
    unit = NatTransform(
        identity_functor(c1),
        compose_functors(right_functor, left_functor),
        {x: arrow_id(x, g[f[x]]) for x in source.elements},
        name="eta",
    )
    counit = NatTransform(
        compose_functors(left_functor, right_functor),
        identity_functor(c2),
        {y: arrow_id(f[g[y]], y) for y in target.elements},
        name="eps",
    )
    return Adjunction(left_functor, right_functor, unit, counit, name=f"{source.name}-|{target.name}")


def galois_connections(source: Poset, target: Poset) -> List[Adjunction]:
    found = []
    for left in monotone_maps(source, target):
        for right in monotone_maps(target, source):
            adj = galois_connection(source, target, left, right)
            if adj is not None:
                found.append(adj)
    return found
