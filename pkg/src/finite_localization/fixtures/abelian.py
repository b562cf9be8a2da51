"""Skeleton of finite abelian groups and the tensor monads ``Z/k (x) -``.

Groups are stored in invariant-factor form ``(d1, d2, ...)`` with
``d1 | d2 | ...``; a homomorphism is the integer matrix whose column ``i``
holds the image of the ``i``-th cyclic generator. Elements are never
materialized except by the brute-force oracles at the bottom.
"""

import itertools
import logging
import math
import re
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Sequence, Tuple, Union

import numpy as np

from ..adjunction import Monad, check_monad
from ..category import FiniteCategory, Functor, NatTransform, compose_functors, identity_functor
from ..config import DEFAULT_BUDGET, Budget
from ..errors import ShapeMismatchError, TheoremViolation, UnknownIdError, UnsupportedCategoryError

logger = logging.getLogger(__name__)

Form = Tuple[int, ...]

_FACTOR = re.compile(r"^Z/?(\d+)$")


def invariant_factor_forms(max_order: int) -> List[Form]:
    """One form per isomorphism class of order at most ``max_order``, smallest first"""
    forms: List[Form] = [()]

    def extend(prefix: Form, product: int) -> None:
        last = prefix[-1] if prefix else 1
        for d in range(max(last, 2), max_order // product + 1):
            if d % last == 0:
                form = prefix + (d,)
                forms.append(form)
                extend(form, product * d)

    extend((), 1)
    return sorted(forms, key=lambda f: (math.prod(f), len(f), f))


def group_name(form: Sequence[int]) -> str:
    return "x".join(f"Z{d}" for d in form) if form else "0"


def parse_group(name: str) -> Form:
    """``"Z2xZ4"`` or ``"Z/2xZ/4"`` to ``(2, 4)``; ``"0"`` is the trivial group"""
    if name == "0":
        return ()
    form = []
    for part in name.split("x"):
        match = _FACTOR.match(part.strip())
        if not match:
            raise UnknownIdError("group", name, "abelian skeleton")
        form.append(int(match.group(1)))
    return tuple(form)


def _image_text(column: np.ndarray) -> str:
    return ".".join(str(int(v)) for v in column) if len(column) else "0"


def morphism_name(source: Form, target: Form, matrix: np.ndarray) -> str:
    images = ",".join(_image_text(matrix[:, i]) for i in range(len(source)))
    return f"{group_name(source)}->{group_name(target)}[{images}]"


@dataclass(frozen=True)
class _HomLayout:
    """Enumeration of ``hom(G, H)``: entry ``(j, i)`` ranges over multiples of ``steps[j, i]``"""

    counts: np.ndarray
    steps: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return int(np.prod(self.counts)) if self.counts.size else 1


def _layout(source: Form, target: Form) -> _HomLayout:
    counts = np.array([[math.gcd(d, h) for d in source] for h in target], dtype=np.int64).reshape(len(target), len(source))
    steps = np.array(target, dtype=np.int64).reshape(-1, 1) // np.maximum(counts, 1)
    # images are listed generator by generator, the last coordinate varying fastest
    flat = counts.T.reshape(-1)
    flat_weights = np.ones_like(flat)
    if flat.size:
        flat_weights[:-1] = np.cumprod(flat[::-1])[::-1][1:]
    weights = flat_weights.reshape(len(source), len(target)).T
    return _HomLayout(counts, steps.reshape(len(target), len(source)), weights)


def _all_matrices(source: Form, target: Form, layout: _HomLayout) -> np.ndarray:
    if layout.counts.size == 0:
        return np.zeros((1, len(target), len(source)), dtype=np.int64)
    flat = layout.counts.T.reshape(-1)
    ks = np.indices(tuple(int(c) for c in flat)).reshape(len(flat), -1).T
    ks = ks.reshape(-1, len(source), len(target)).transpose(0, 2, 1)
    return ks * layout.steps[None, :, :]


def hom_count_formula(source: Form, target: Form) -> int:
    return math.prod(math.gcd(d, h) for d in source for h in target)


@dataclass(eq=False)
class AbGroupSkeleton:
    max_order: int
    forms: Tuple[Form, ...]
    category: FiniteCategory
    matrices: Dict[Tuple[str, str], np.ndarray] = field(repr=False)
    layouts: Dict[Tuple[str, str], _HomLayout] = field(repr=False)

    def form(self, x: str) -> Form:
        if not self.category.has_object(x):
            raise UnknownIdError("object", x, self.category.name)
        return parse_group(x)

    def order(self, x: str) -> int:
        return math.prod(self.form(x))

    def matrix(self, m: str) -> np.ndarray:
        cat = self.category
        key = (cat.source(m), cat.target(m))
        return self.matrices[key][int(cat.local_positions[cat.morphism_index(m)])]

    def morphism(self, source: str, target: str, matrix: Sequence[Sequence[int]]) -> str:
        """Id of the homomorphism with the given image matrix (reduced mod the target orders)"""
        target_form = self.form(target)
        values = np.asarray(matrix, dtype=np.int64).reshape(len(target_form), len(self.form(source)))
        values = values % np.array(target_form, dtype=np.int64).reshape(-1, 1) if len(target_form) else values
        layout = self.layouts[(source, target)]
        if np.any(values % layout.steps):
            raise ShapeMismatchError(f"matrix {values.tolist()} is not a homomorphism {source} -> {target}")
        position = int(np.sum((values // layout.steps) * layout.weights))
        return self.category.hom(source, target)[position]

    def zero(self, source: str, target: str) -> str:
        return self.morphism(source, target, np.zeros((len(self.form(target)), len(self.form(source)))))


def gen_ab_skeleton(max_order: int, budget: Budget = DEFAULT_BUDGET) -> AbGroupSkeleton:
    """All finite abelian groups of order at most ``max_order`` with every homomorphism.

    Raises:
        BudgetExceededError: if the skeleton would exceed ``budget``
    """
    if max_order < 1:
        raise ValueError(f"max_order must be positive, got {max_order}")
    forms = invariant_factor_forms(max_order)
    total = sum(hom_count_formula(s, t) for s in forms for t in forms)
    budget.check(len(forms), total)
    names = [group_name(f) for f in forms]

    matrices: Dict[Tuple[str, str], np.ndarray] = {}
    layouts: Dict[Tuple[str, str], _HomLayout] = {}
    homs: Dict[Tuple[str, str], List[str]] = {}
    for s, a in zip(forms, names):
        for t, b in zip(forms, names):
            layout = _layout(s, t)
            block = _all_matrices(s, t, layout)
            layouts[(a, b)] = layout
            matrices[(a, b)] = block
            homs[(a, b)] = [morphism_name(s, t, m) for m in block]
    identities = {a: morphism_name(s, s, np.eye(len(s), dtype=np.int64)) for s, a in zip(forms, names)}
    moduli = {a: np.array(s, dtype=np.int64).reshape(-1, 1) for s, a in zip(forms, names)}

    def compose_block(a: str, b: str, c: str) -> np.ndarray:
        first, second = matrices[(a, b)], matrices[(b, c)]
        composite = np.einsum("sjk,tki->stji", second, first)
        if len(moduli[c]):
            composite = composite % moduli[c][None, None, :, :]
        layout = layouts[(a, c)]
        return np.sum((composite // layout.steps) * layout.weights, axis=(2, 3))

    cat = FiniteCategory.from_composition(
        f"abelian{max_order}", names, homs, identities, compose_block=compose_block, budget=budget
    )
    logger.info(f"[fixture:abelian{max_order}] {len(names)} groups, {len(cat.morphisms)} homomorphisms")
    return AbGroupSkeleton(max_order, tuple(forms), cat, matrices, layouts)


# -- tensor monads ----------------------------------------------------------------


def parse_ring(ring: Union[str, int]) -> int:
    """``"Z/2"``, ``"Z2"`` or ``2`` to the modulus ``k`` of a cyclic ring"""
    if isinstance(ring, int):
        k = ring
    else:
        text = ring.strip()
        if text == "Z":
            raise UnsupportedCategoryError("the ring Z is not an object of a finite skeleton")
        match = _FACTOR.match(text)
        if not match:
            raise UnsupportedCategoryError(f"only cyclic rings Z/k are supported, got {ring}")
        k = int(match.group(1))
    if k < 2:
        raise UnsupportedCategoryError(f"Z/{k} is not a ring with 1 != 0")
    return k


def tensor_monad(skeleton: AbGroupSkeleton, ring: Union[str, int]) -> Monad:
    """``T = Z/k (x) -`` with unit ``x -> 1 (x) x``; multiplication is the identity of ``TX``"""
    k = parse_ring(ring)
    cat = skeleton.category
    if not cat.has_object(f"Z{k}"):
        raise UnknownIdError("object", f"Z{k}", f"{cat.name} (ring outside the skeleton)")

    kept: Dict[str, List[int]] = {}
    images: Dict[str, str] = {}
    for x in cat.objects:
        form = skeleton.form(x)
        kept[x] = [i for i, d in enumerate(form) if math.gcd(k, d) > 1]
        images[x] = group_name(tuple(math.gcd(k, form[i]) for i in kept[x]))

    morphism_map = {}
    for m in cat.morphisms:
        a, b = cat.source(m), cat.target(m)
        reduced = skeleton.matrix(m)[np.ix_(np.array(kept[b], dtype=np.int64), np.array(kept[a], dtype=np.int64))]
        morphism_map[m] = skeleton.morphism(images[a], images[b], reduced)
    name = f"tensor(Z/{k})"
    functor = Functor(cat, cat, images, morphism_map, name=name)

    unit = {}
    for x in cat.objects:
        matrix = np.zeros((len(kept[x]), len(skeleton.form(x))), dtype=np.int64)
        for row, column in enumerate(kept[x]):
            matrix[row, column] = 1
        unit[x] = skeleton.morphism(x, images[x], matrix)
    twice = compose_functors(functor, functor)
    monad = Monad(
        functor,
        NatTransform(identity_functor(cat), functor, unit, name="eta"),
        NatTransform(twice, functor, {x: cat.identity(images[x]) for x in cat.objects}, name="mu"),
        name=name,
    )
    violations = check_monad(monad)
    if violations:
        raise TheoremViolation(f"{name} fails the monad laws", [v.to_dict() for v in violations[:5]])
    return monad


def is_module_carrier(form: Sequence[int], k: int) -> bool:
    """Z/k-modules are the groups killed by ``k``"""
    return all(k % d == 0 for d in form)


# -- element-level oracles --------------------------------------------------------


def elements(form: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    return itertools.product(*(range(d) for d in form))


def _add(form: Sequence[int], x: Sequence[int], y: Sequence[int]) -> Tuple[int, ...]:
    return tuple((a + b) % d for a, b, d in zip(x, y, form))


def brute_force_hom_count(source: Sequence[int], target: Sequence[int]) -> int:
    """Count homomorphisms by trying every assignment of generator images.

    The candidate ``x -> sum x_i h_i`` is kept only if it is additive on all
    pairs of elements of the source.
    """
    source_elements = list(elements(source))
    target_elements = list(elements(target))

    def image(x: Sequence[int], gens: Sequence[Tuple[int, ...]]) -> Tuple[int, ...]:
        return tuple(sum(c * g[j] for c, g in zip(x, gens)) % h for j, h in enumerate(target))

    count = 0
    for gens in itertools.product(target_elements, repeat=len(source)):
        if all(
            image(_add(source, x, y), gens) == _add(target, image(x, gens), image(y, gens))
            for x in source_elements
            for y in source_elements
        ):
            count += 1
    return count


def _cyclic_tensor_order(a: int, b: int) -> int:
    """``|Z/a (x) Z/b|`` as the number of bilinear maps into ``Z/lcm(a, b)``"""
    n = a * b // math.gcd(a, b)
    count = 0
    for v in range(n):
        left = all((((x + y) % a) * z * v - (x * z * v + y * z * v)) % n == 0 for x in range(a) for y in range(a) for z in range(b))
        right = all((x * ((y + z) % b) * v - (x * y * v + x * z * v)) % n == 0 for x in range(a) for y in range(b) for z in range(b))
        if left and right:
            count += 1
    return count


def tensor_order_oracle(first: Sequence[int], second: Sequence[int]) -> int:
    return math.prod(_cyclic_tensor_order(a, b) for a in first for b in second)
