"""Syntax tree of a DSL document.

Nodes are frozen dataclasses so that ``parse(print(doc)) == doc`` is plain
equality. Source lines ride along for error messages but never take part in
comparisons.
"""

from dataclasses import dataclass, field
from typing import Any, Optional, Tuple, Union

from ..category import FiniteCategory

Pairs = Tuple[Tuple[str, str], ...]


@dataclass(frozen=True)
class ArrowDecl:
    name: str
    source: str
    target: str
    line: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class CompositeDecl:
    second: str
    first: str
    result: str
    line: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class CategoryDecl:
    name: str
    objects: Tuple[str, ...] = ()
    arrows: Tuple[ArrowDecl, ...] = ()
    composites: Tuple[CompositeDecl, ...] = ()
    line: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class FunctorRef:
    """``G.F`` is stored outermost first as ``("G", "F")``; ``Id(C)`` sets ``identity_of``"""

    parts: Tuple[str, ...] = ()
    identity_of: Optional[str] = None


@dataclass(frozen=True)
class FunctorDecl:
    name: str
    source: str
    target: str
    object_map: Pairs = ()
    morphism_map: Pairs = ()
    line: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class NatDecl:
    name: str
    source: FunctorRef
    target: FunctorRef
    components: Pairs = ()
    line: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class MonadDecl:
    name: str
    functor: FunctorRef
    unit: str
    mult: str
    line: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class AdjunctionDecl:
    name: str
    left: FunctorRef
    right: FunctorRef
    unit: str
    counit: str
    line: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class FixtureDecl:
    kind: str
    params: Tuple[Tuple[str, Any], ...] = ()
    alias: Optional[str] = None
    line: Optional[int] = field(default=None, compare=False)

    @property
    def name(self) -> str:
        return self.alias or fixture_default_name(self.kind, dict(self.params))


@dataclass(frozen=True)
class NameArg:
    name: str
    key: Optional[str] = None


@dataclass(frozen=True)
class ArrowArg:
    source: str
    target: str
    key: Optional[str] = None


@dataclass(frozen=True)
class CallArg:
    function: str
    arguments: Tuple[str, ...] = ()
    key: Optional[str] = None


@dataclass(frozen=True)
class TheoremArg:
    theorem: str
    key: Optional[str] = None


@dataclass(frozen=True)
class FixtureArg:
    fixture: FixtureDecl
    key: Optional[str] = None


TaskArg = Union[NameArg, ArrowArg, CallArg, TheoremArg, FixtureArg]
Declaration = Union[CategoryDecl, FunctorDecl, NatDecl, MonadDecl, AdjunctionDecl, FixtureDecl]


@dataclass(frozen=True)
class Task:
    command: str
    args: Tuple[TaskArg, ...] = ()
    line: Optional[int] = field(default=None, compare=False)

    @property
    def positional(self) -> Tuple[TaskArg, ...]:
        return tuple(a for a in self.args if a.key is None)

    def keyword(self, key: str) -> Optional[TaskArg]:
        return next((a for a in self.args if a.key == key), None)


@dataclass(frozen=True)
class DslDocument:
    declarations: Tuple[Declaration, ...] = ()
    tasks: Tuple[Task, ...] = ()
    name: str = field(default="document", compare=False)

    def declared_names(self) -> Tuple[str, ...]:
        return tuple(d.name for d in self.declarations)


def fixture_default_name(kind: str, params: dict) -> str:
    """``abelian4``, ``groups8``, ``chain3``, ``diamond``; relation posets are just ``poset``"""
    if kind in ("abelian", "groups"):
        return f"{kind}{params.get('max_order', 4 if kind == 'abelian' else 8)}"
    if kind == "poset":
        for shape in ("chain", "antichain"):
            if shape in params:
                return f"{shape}{params[shape]}"
        if "lattice" in params:
            return str(params["lattice"])
        return "poset"
    return kind


def document_from_category(cat: FiniteCategory, name: Optional[str] = None) -> DslDocument:
    """An explicit ``category`` block for ``cat`` with its full composite table"""
    identities = set(cat.identity_indices.tolist())
    arrows = tuple(
        ArrowDecl(cat.morphisms[m], cat.objects[int(cat.source_indices[m])], cat.objects[int(cat.target_indices[m])])
        for m in range(len(cat.morphisms))
        if m not in identities
    )
    # DSL identities are always id_<object>
    renamed = {cat.identity(x): f"id_{x}" for x in cat.objects}
    composites = []
    for second in arrows:
        for first in arrows:
            if first.target == second.source:
                result = cat.compose(second.name, first.name)
                composites.append(CompositeDecl(second.name, first.name, renamed.get(result, result)))
    decl = CategoryDecl(name or cat.name, tuple(cat.objects), arrows, tuple(composites))
    return DslDocument((decl,), (), name=decl.name)
