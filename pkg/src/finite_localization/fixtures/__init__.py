"""Deterministic fixture categories and the monads that live on them."""

import logging
from dataclasses import dataclass
from typing import Any, Mapping, Optional, Tuple, Union

from ..adjunction import Monad
from ..category import FiniteCategory
from ..config import DEFAULT_BUDGET, Budget
from ..errors import ShapeMismatchError, UnknownIdError
from .abelian import AbGroupSkeleton, gen_ab_skeleton, tensor_monad
from .groups import FinGroupSkeleton, abelianization_monad, gen_fingroup_skeleton
from .posets import Poset, antichain, chain, closure_monad, closure_operators, lattice, parse_relation
from .sweeps import enumerate_test_morphisms

logger = logging.getLogger(__name__)

FIXTURE_KINDS = ("abelian", "groups", "poset")
POSET_SHAPES = ("chain", "antichain", "lattice", "relation")


@dataclass(eq=False)
class Fixture:
    kind: str
    params: Tuple[Tuple[str, Any], ...]
    name: str
    category: FiniteCategory
    source: Union[AbGroupSkeleton, FinGroupSkeleton, Poset]

    def monad(self, kind: str, argument: Optional[Any] = None) -> Monad:
        """Resolve ``tensor(Z/k)``, ``abelianization()`` or ``closure(n)`` on this fixture"""
        if kind == "tensor":
            if not isinstance(self.source, AbGroupSkeleton):
                raise ShapeMismatchError(f"tensor monads need an abelian fixture, {self.name} is {self.kind}")
            return tensor_monad(self.source, argument)
        elif kind == "abelianization":
            if not isinstance(self.source, FinGroupSkeleton):
                raise ShapeMismatchError(f"abelianization needs a groups fixture, {self.name} is {self.kind}")
            return abelianization_monad(self.source)
        elif kind == "closure":
            if not isinstance(self.source, Poset):
                raise ShapeMismatchError(f"closure monads need a poset fixture, {self.name} is {self.kind}")
            closures = closure_operators(self.source)
            index = int(argument)
            if not 0 <= index < len(closures):
                raise UnknownIdError("closure", str(index), f"{self.name} ({len(closures)} closure operators)")
            return closure_monad(self.source, closures[index], name=f"closure({index})")
        else:
            raise ValueError(f"Unsupported monad: {kind}. Supported monads: tensor, abelianization, closure")


def _poset(params: Mapping[str, Any]) -> Poset:
    if len(params) != 1:
        raise ValueError(f"poset fixtures take exactly one of {', '.join(POSET_SHAPES)}")
    (shape, value), = params.items()
    if shape == "chain":
        return chain(int(value))
    elif shape == "antichain":
        return antichain(int(value))
    elif shape == "lattice":
        return lattice(str(value))
    elif shape == "relation":
        return parse_relation(str(value))
    else:
        raise ValueError(f"Unsupported poset shape: {shape}. Supported shapes: {', '.join(POSET_SHAPES)}")


def build_fixture(
    kind: str, params: Mapping[str, Any], name: Optional[str] = None, budget: Budget = DEFAULT_BUDGET
) -> Fixture:
    """Build a named fixture; the default name is the fixture's canonical one (``abelian4``, ``chain3``)"""
    if kind == "abelian":
        source = gen_ab_skeleton(int(params.get("max_order", 4)), budget=budget)
    elif kind == "groups":
        source = gen_fingroup_skeleton(int(params.get("max_order", 8)), budget=budget)
    elif kind == "poset":
        source = _poset(params)
    else:
        raise ValueError(f"Unsupported fixture type: {kind}. Supported types: {', '.join(FIXTURE_KINDS)}")
    cat = source.category
    if name:
        # every build returns a fresh category
        cat.name = name
    logger.info(f"[fixture:{cat.name}] built {kind} with {len(cat.objects)} objects")
    return Fixture(kind, tuple(params.items()), cat.name, cat, source)


__all__ = [
    "FIXTURE_KINDS",
    "POSET_SHAPES",
    "Fixture",
    "build_fixture",
    "enumerate_test_morphisms",
    "gen_ab_skeleton",
    "gen_fingroup_skeleton",
    "tensor_monad",
    "abelianization_monad",
]
