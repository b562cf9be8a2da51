"""Finite groups of order at most 8 and the abelianization monad.

Each group is generated from a concrete model (residues, tuples,
permutations or unit quaternions) into a Cayley table whose elements are
numbered in breadth-first order from the identity. A homomorphism is the
array of images of all elements; its id lists the images of the generators.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Sequence, Tuple

import numpy as np

from ..adjunction import Monad, check_monad
from ..category import FiniteCategory, Functor, LawViolation, NatTransform, compose_functors, identity_functor
from ..config import DEFAULT_BUDGET, Budget
from ..errors import TheoremViolation, UnknownIdError, UnsupportedCategoryError

logger = logging.getLogger(__name__)

MAX_TABLE_ORDER = 8


@dataclass(frozen=True, eq=False)
class FinGroup:
    name: str
    table: np.ndarray
    generators: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def inverses(self) -> np.ndarray:
        return np.argmax(self.table == 0, axis=1)

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def element_order(self, x: int) -> int:
        power, n = x, 1
        while power != 0:
            power = int(self.table[power, x])
            n += 1
        return n

    def commutator_subgroup(self) -> Tuple[int, ...]:
        inv, mul = self.inverses, self.table
        members = {int(mul[mul[inv[x], inv[y]], mul[x, y]]) for x in range(self.order) for y in range(self.order)}
        grown = True
        while grown:
            closure = {int(mul[a, b]) for a in members for b in members}
            grown = not closure <= members
            members |= closure
        return tuple(sorted(members))


def _from_model(name: str, identity: Hashable, generators: Sequence[Hashable], multiply: Callable) -> FinGroup:
    elements = [identity]
    index = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = multiply(x, g)
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    table = np.array([[index[multiply(x, y)] for y in elements] for x in elements], dtype=np.int64)
    return FinGroup(name, table, tuple(index[g] for g in generators))


def _cyclic_product(name: str, orders: Sequence[int]) -> FinGroup:
    units = [tuple(1 if i == j else 0 for j in range(len(orders))) for i in range(len(orders))]
    return _from_model(
        name,
        tuple(0 for _ in orders),
        units,
        lambda x, y: tuple((a + b) % n for a, b, n in zip(x, y, orders)),
    )


def _permutations(name: str, generators: Sequence[Tuple[int, ...]]) -> FinGroup:
    size = len(generators[0])
    return _from_model(name, tuple(range(size)), generators, lambda p, q: tuple(p[q[i]] for i in range(size)))


_QUATERNION_UNITS = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def _quaternion(x: Tuple[int, str], y: Tuple[int, str]) -> Tuple[int, str]:
    sign, unit = _QUATERNION_UNITS[(x[1], y[1])]
    return x[0] * y[0] * sign, unit


def group_table() -> List[FinGroup]:
    """Every group of order at most 8 up to isomorphism, in canonical order"""
    return [
        _cyclic_product("1", ()),
        _cyclic_product("Z2", (2,)),
        _cyclic_product("Z3", (3,)),
        _cyclic_product("Z4", (4,)),
        _cyclic_product("Z2xZ2", (2, 2)),
        _cyclic_product("Z5", (5,)),
        _cyclic_product("Z6", (6,)),
        _permutations("S3", [(1, 0, 2), (1, 2, 0)]),
        _cyclic_product("Z7", (7,)),
        _cyclic_product("Z8", (8,)),
        _cyclic_product("Z2xZ4", (2, 4)),
        _cyclic_product("Z2xZ2xZ2", (2, 2, 2)),
        _permutations("D4", [(1, 2, 3, 0), (0, 3, 2, 1)]),
        _from_model("Q8", (1, "1"), [(1, "i"), (1, "j")], _quaternion),
    ]


def homomorphisms(source: FinGroup, target: FinGroup) -> np.ndarray:
    """All homomorphisms as image arrays, ordered by generator images"""
    candidates = [
        [y for y in range(target.order) if source.element_order(g) % target.element_order(y) == 0]
        for g in source.generators
    ]
    found = []
    for images in itertools.product(*candidates):
        phi = np.full(source.order, -1, dtype=np.int64)
        phi[0] = 0
        queue = deque([0])
        consistent = True
        while queue and consistent:
            x = queue.popleft()
            for g, image in zip(source.generators, images):
                y = int(source.table[x, g])
                value = int(target.table[phi[x], image])
                if phi[y] < 0:
                    phi[y] = value
                    queue.append(y)
                elif phi[y] != value:
                    consistent = False
                    break
        if consistent:
            found.append(phi)
    return np.array(found, dtype=np.int64).reshape(len(found), source.order)


def morphism_name(source: FinGroup, target: FinGroup, phi: np.ndarray) -> str:
    images = ",".join(str(int(phi[g])) for g in source.generators)
    return f"{source.name}->{target.name}[{images}]"


@dataclass(eq=False)
class FinGroupSkeleton:
    max_order: int
    groups: Dict[str, FinGroup]
    category: FiniteCategory
    maps: Dict[Tuple[str, str], np.ndarray] = field(repr=False)

    def group(self, x: str) -> FinGroup:
        if x not in self.groups:
            raise UnknownIdError("object", x, self.category.name)
        return self.groups[x]

    def images(self, m: str) -> np.ndarray:
        cat = self.category
        return self.maps[(cat.source(m), cat.target(m))][int(cat.local_positions[cat.morphism_index(m)])]

    def morphism_from_images(self, source: str, target: str, phi: np.ndarray) -> str:
        block = self.maps[(source, target)]
        hits = np.flatnonzero(np.all(block == np.asarray(phi)[None, :], axis=1))
        if len(hits) != 1:
            raise UnknownIdError("morphism", f"{source}->{target}{list(phi)}", self.category.name)
        return self.category.hom(source, target)[int(hits[0])]

    @property
    def abelian_objects(self) -> List[str]:
        return [x for x in self.category.objects if self.groups[x].is_abelian]


def gen_fingroup_skeleton(max_order: int = MAX_TABLE_ORDER, budget: Budget = DEFAULT_BUDGET) -> FinGroupSkeleton:
    if max_order > MAX_TABLE_ORDER:
        raise UnsupportedCategoryError(f"the group table stops at order {MAX_TABLE_ORDER}, got {max_order}")
    groups = [g for g in group_table() if g.order <= max_order]
    names = [g.name for g in groups]
    maps = {(a.name, b.name): homomorphisms(a, b) for a in groups for b in groups}
    budget.check(len(groups), sum(len(block) for block in maps.values()))
    homs = {
        (a.name, b.name): [morphism_name(a, b, phi) for phi in maps[(a.name, b.name)]] for a in groups for b in groups
    }
    by_name = {g.name: g for g in groups}
    identities = {g.name: morphism_name(g, g, np.arange(g.order)) for g in groups}

    def codes(group: FinGroup, target: FinGroup, generator_images: np.ndarray) -> np.ndarray:
        weights = target.order ** np.arange(len(group.generators), dtype=np.int64)
        return np.sum(generator_images * weights, axis=-1)

    def compose_block(a: str, b: str, c: str) -> np.ndarray:
        ga, gc = by_name[a], by_name[c]
        first, second = maps[(a, b)], maps[(b, c)]
        gens = np.array(ga.generators, dtype=np.int64)
        composite = second[:, first[:, gens]] if len(gens) else np.zeros((len(second), len(first), 0), dtype=np.int64)
        wanted = codes(ga, gc, composite)
        known = codes(ga, gc, maps[(a, c)][:, gens] if len(gens) else np.zeros((len(maps[(a, c)]), 0), dtype=np.int64))
        order = np.argsort(known, kind="stable")
        return order[np.searchsorted(known[order], wanted)]

    cat = FiniteCategory.from_composition(
        f"groups{max_order}", names, homs, identities, compose_block=compose_block, budget=budget
    )
    logger.info(f"[fixture:groups{max_order}] {len(names)} groups, {len(cat.morphisms)} homomorphisms")
    return FinGroupSkeleton(max_order, by_name, cat, maps)


# -- abelianization ---------------------------------------------------------------


def _quotient_map(skeleton: FinGroupSkeleton, x: str) -> Tuple[str, np.ndarray]:
    group = skeleton.group(x)
    kernel = set(skeleton.group(x).commutator_subgroup())
    if len(kernel) == 1:
        return x, np.arange(group.order)
    quotient_order = group.order // len(kernel)
    for a in skeleton.abelian_objects:
        if skeleton.groups[a].order != quotient_order:
            continue
        for phi in skeleton.maps[(x, a)]:
            if set(np.flatnonzero(phi == 0).tolist()) == kernel:
                return a, phi
    raise TheoremViolation(f"abelianization of {x} is not in the skeleton", x)


def abelianization_monad(skeleton: FinGroupSkeleton) -> Monad:
    """``T(G) = G / [G, G]`` with the quotient maps as unit; abelian groups are fixed"""
    cat = skeleton.category
    quotients = {x: _quotient_map(skeleton, x) for x in cat.objects}
    object_map = {x: q[0] for x, q in quotients.items()}
    unit = {x: skeleton.morphism_from_images(x, object_map[x], q[1]) for x, q in quotients.items()}

    morphism_map = {}
    for m in cat.morphisms:
        a, b = cat.source(m), cat.target(m)
        eta_a, eta_b = quotients[a][1], quotients[b][1]
        wanted = eta_b[skeleton.images(m)]
        candidates = skeleton.maps[(object_map[a], object_map[b])]
        hits = np.flatnonzero(np.all(candidates[:, eta_a] == wanted[None, :], axis=1))
        if len(hits) != 1:
            raise TheoremViolation(f"{m} has {len(hits)} abelianizations", m)
        morphism_map[m] = cat.hom(object_map[a], object_map[b])[int(hits[0])]

    functor = Functor(cat, cat, object_map, morphism_map, name="ab")
    monad = Monad(
        functor,
        NatTransform(identity_functor(cat), functor, unit, name="eta"),
        NatTransform(
            compose_functors(functor, functor), functor, {x: cat.identity(object_map[x]) for x in cat.objects}, name="mu"
        ),
        name="abelianization",
    )
    violations = check_monad(monad)
    if violations:
        raise TheoremViolation("abelianization fails the monad laws", [v.to_dict() for v in violations[:5]])
    return monad


def check_abelianization_universal(skeleton: FinGroupSkeleton, monad: Monad) -> List[LawViolation]:
    """Every map from G to an abelian group factors uniquely through the unit at G"""
    cat = skeleton.category
    report = []
    for x in cat.objects:
        eta = monad.unit.at(x)
        tx = cat.target(eta)
        for a in skeleton.abelian_objects:
            for m in cat.hom(x, a):
                factors = [n for n in cat.hom(tx, a) if cat.compose(n, eta) == m]
                if len(factors) != 1:
                    report.append(LawViolation("abelianization universal", f"{m} factors {len(factors)} times", (m,)))
    return report
