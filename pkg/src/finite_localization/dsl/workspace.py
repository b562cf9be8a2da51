"""Materialize a parsed document into engine objects and resolve task arguments."""

import logging
import threading
from typing import Any, Dict, Optional, Tuple

from ..adjunction import Adjunction, Monad
from ..category import FiniteCategory, Functor, NatTransform, compose_functors, identity_functor, is_epimorphism
from ..config import DEFAULT_BUDGET, Budget
from ..errors import DslError, UnknownIdError, UnresolvedIdentifierError
from ..fixtures import Fixture, build_fixture
from .document import (
    AdjunctionDecl,
    ArrowArg,
    CallArg,
    CategoryDecl,
    DslDocument,
    FixtureArg,
    FixtureDecl,
    FunctorDecl,
    FunctorRef,
    MonadDecl,
    NameArg,
    NatDecl,
    TaskArg,
)

logger = logging.getLogger(__name__)

MONAD_CALLS = ("tensor", "abelianization", "closure")


def _describe(arg: TaskArg) -> str:
    return type(arg).__name__.replace("Arg", "").lower()


class Workspace:
    """Everything a document declares, by name.

    Fixtures named inline in tasks and monads named by calls such as
    ``tensor(Z/2)`` are built on first use and cached; the cache is shared by
    worker threads.
    """

    def __init__(self, document: DslDocument, budget: Budget = DEFAULT_BUDGET):
        self.document = document
        self.budget = budget
        self.categories: Dict[str, FiniteCategory] = {}
        self.fixtures: Dict[str, Fixture] = {}
        self.functors: Dict[str, Functor] = {}
        self.transformations: Dict[str, NatTransform] = {}
        self.monads: Dict[str, Monad] = {}
        self.adjunctions: Dict[str, Adjunction] = {}
        self._inline: Dict[Tuple[str, Tuple], Fixture] = {}
        self._called: Dict[Tuple[int, str, Tuple[str, ...]], Monad] = {}
        self._lock = threading.Lock()

    @classmethod
    def build(cls, document: DslDocument, budget: Budget = DEFAULT_BUDGET) -> "Workspace":
        workspace = cls(document, budget)
        for decl in document.declarations:
            workspace._declare(decl)
        logger.info(f"[dsl:{document.name}] workspace holds {len(document.declarations)} declarations")
        return workspace

    # -- declarations ---------------------------------------------------

    def _declare(self, decl) -> None:
        try:
            if isinstance(decl, CategoryDecl):
                self.categories[decl.name] = FiniteCategory.from_table(
                    decl.name,
                    decl.objects,
                    [(a.name, a.source, a.target) for a in decl.arrows],
                    {(c.second, c.first): c.result for c in decl.composites},
                    budget=self.budget,
                )
            elif isinstance(decl, FixtureDecl):
                fixture = build_fixture(decl.kind, dict(decl.params), decl.alias, budget=self.budget)
                self.fixtures[fixture.name] = fixture
                self._inline.setdefault((decl.kind, decl.params), fixture)
                self.categories[fixture.name] = fixture.category
            elif isinstance(decl, FunctorDecl):
                self.functors[decl.name] = self._functor(decl)
            elif isinstance(decl, NatDecl):
                self.transformations[decl.name] = self._transformation(decl)
            elif isinstance(decl, MonadDecl):
                self.monads[decl.name] = Monad(
                    self.functor_ref(decl.functor, decl.line),
                    self._named(self.transformations, decl.unit, "transformation", decl.line),
                    self._named(self.transformations, decl.mult, "transformation", decl.line),
                    name=decl.name,
                )
            elif isinstance(decl, AdjunctionDecl):
                self.adjunctions[decl.name] = Adjunction(
                    self.functor_ref(decl.left, decl.line),
                    self.functor_ref(decl.right, decl.line),
                    self._named(self.transformations, decl.unit, "transformation", decl.line),
                    self._named(self.transformations, decl.counit, "transformation", decl.line),
                    name=decl.name,
                )
            else:
                raise ValueError(f"Unsupported declaration: {type(decl).__name__}")
        except UnknownIdError as e:
            raise UnresolvedIdentifierError(f"{decl.name}: {e}", getattr(decl, "line", None)) from None

    def _named(self, table: Dict[str, Any], name: str, kind: str, line: Optional[int]) -> Any:
        if name not in table:
            raise UnresolvedIdentifierError(f"{name} is not a declared {kind}", line)
        return table[name]

    def _functor(self, decl: FunctorDecl) -> Functor:
        source = self._named(self.categories, decl.source, "category", decl.line)
        target = self._named(self.categories, decl.target, "category", decl.line)
        object_map = dict(decl.object_map)
        for x, y in decl.object_map:
            source.object_index(x)
            target.object_index(y)
        missing = [x for x in source.objects if x not in object_map]
        if missing:
            raise DslError(f"functor {decl.name} does not map object {missing[0]}", decl.line)
        morphism_map = {source.identity(x): target.identity(object_map[x]) for x in source.objects}
        for f, g in decl.morphism_map:
            source.morphism_index(f)
            target.morphism_index(g)
            morphism_map[f] = g
        missing = [f for f in source.morphisms if f not in morphism_map]
        if missing:
            raise DslError(f"functor {decl.name} does not map morphism {missing[0]}", decl.line)
        return Functor(source, target, object_map, morphism_map, name=decl.name)

    def _transformation(self, decl: NatDecl) -> NatTransform:
        first = self.functor_ref(decl.source, decl.line)
        second = self.functor_ref(decl.target, decl.line)
        components = dict(decl.components)
        for x, m in decl.components:
            first.source.object_index(x)
            first.target.morphism_index(m)
        missing = [x for x in first.source.objects if x not in components]
        if missing:
            raise DslError(f"transformation {decl.name} has no component at {missing[0]}", decl.line)
        return NatTransform(first, second, components, name=decl.name)

    def functor_ref(self, ref: FunctorRef, line: Optional[int] = None) -> Functor:
        if ref.identity_of is not None:
            return identity_functor(self._named(self.categories, ref.identity_of, "category", line))
        parts = [self._named(self.functors, p, "functor", line) for p in ref.parts]
        result = parts[-1]
        for outer in reversed(parts[:-1]):
            result = compose_functors(outer, result)
        return result

    # -- task arguments -------------------------------------------------

    def kind_of(self, name: str) -> Optional[str]:
        for kind, table in (
            ("category", self.categories),
            ("functor", self.functors),
            ("transformation", self.transformations),
            ("monad", self.monads),
            ("adjunction", self.adjunctions),
        ):
            if name in table:
                return kind
        return None

    def lookup(self, arg: TaskArg, line: Optional[int] = None) -> Tuple[str, Any]:
        """``(kind, value)`` for a name argument or an inline fixture"""
        if isinstance(arg, FixtureArg):
            return "category", self.inline_fixture(arg.fixture).category
        if not isinstance(arg, NameArg):
            raise DslError(f"expected a declared name, got a {_describe(arg)} argument", line)
        kind = self.kind_of(arg.name)
        if kind is None:
            raise UnresolvedIdentifierError(f"{arg.name} is not declared", line)
        table = {
            "category": self.categories,
            "functor": self.functors,
            "transformation": self.transformations,
            "monad": self.monads,
            "adjunction": self.adjunctions,
        }[kind]
        return kind, table[arg.name]

    def inline_fixture(self, decl: FixtureDecl) -> Fixture:
        """The declared fixture with the same kind and parameters, else one built on first use"""
        key = (decl.kind, decl.params)
        with self._lock:
            if key not in self._inline:
                self._inline[key] = build_fixture(decl.kind, dict(decl.params), budget=self.budget)
            return self._inline[key]

    def category(self, arg: TaskArg, line: Optional[int] = None) -> FiniteCategory:
        kind, value = self.lookup(arg, line)
        if kind != "category":
            raise DslError(f"expected a category, {getattr(arg, 'name', arg)} is a {kind}", line)
        return value

    def fixture_of(self, cat: FiniteCategory) -> Optional[Fixture]:
        with self._lock:
            known = list(self.fixtures.values()) + list(self._inline.values())
        for fixture in known:
            if fixture.category is cat:
                return fixture
        return None

    def monad(self, arg: TaskArg, cat: FiniteCategory, line: Optional[int] = None) -> Monad:
        """A declared monad name or ``tensor(Z/k)``, ``abelianization()``, ``closure(n)`` on ``cat``'s fixture"""
        if isinstance(arg, NameArg):
            monad = self._named(self.monads, arg.name, "monad", line)
            if monad.category is not cat:
                raise DslError(f"monad {arg.name} lives on {monad.category.name}, not {cat.name}", line)
            return monad
        if not isinstance(arg, CallArg):
            raise DslError(f"expected a monad, got a {_describe(arg)} argument", line)
        if arg.function not in MONAD_CALLS:
            raise DslError(f"unknown monad {arg.function}; expected one of {', '.join(MONAD_CALLS)}", line)
        fixture = self.fixture_of(cat)
        if fixture is None:
            raise DslError(f"{arg.function}(...) needs a fixture category, {cat.name} is declared by hand", line)
        # fixtures live as long as the workspace, so their ids stay unique
        key = (id(fixture), arg.function, arg.arguments)
        with self._lock:
            if key not in self._called:
                argument = arg.arguments[0] if arg.arguments else None
                self._called[key] = fixture.monad(arg.function, argument)
            return self._called[key]

    def adjunction(self, arg: TaskArg, line: Optional[int] = None) -> Adjunction:
        if not isinstance(arg, NameArg):
            raise DslError(f"expected an adjunction, got a {_describe(arg)} argument", line)
        return self._named(self.adjunctions, arg.name, "adjunction", line)

    def functor(self, arg: TaskArg, line: Optional[int] = None) -> Functor:
        if not isinstance(arg, NameArg):
            raise DslError(f"expected a functor, got a {_describe(arg)} argument", line)
        return self._named(self.functors, arg.name, "functor", line)

    def object(self, cat: FiniteCategory, arg: Optional[TaskArg], line: Optional[int] = None) -> str:
        if not isinstance(arg, NameArg):
            raise DslError("expected an object name", line)
        if not cat.has_object(arg.name):
            raise UnresolvedIdentifierError(f"{arg.name} is not an object of {cat.name}", line)
        return arg.name

    def morphism(self, cat: FiniteCategory, arg: Optional[TaskArg], line: Optional[int] = None) -> str:
        """A morphism id, or ``A->B``: the unique morphism, else the first epimorphism in canonical order"""
        if isinstance(arg, NameArg):
            if not cat.has_morphism(arg.name):
                raise UnresolvedIdentifierError(f"{arg.name} is not a morphism of {cat.name}", line)
            return arg.name
        if not isinstance(arg, ArrowArg):
            raise DslError("expected a morphism id or A->B", line)
        for x in (arg.source, arg.target):
            if not cat.has_object(x):
                raise UnresolvedIdentifierError(f"{x} is not an object of {cat.name}", line)
        candidates = cat.hom(arg.source, arg.target)
        if not candidates:
            raise UnresolvedIdentifierError(f"{cat.name} has no morphism {arg.source}->{arg.target}", line)
        if len(candidates) == 1:
            return candidates[0]
        epis = [m for m in candidates if is_epimorphism(cat, m)]
        if not epis:
            raise DslError(
                f"{arg.source}->{arg.target} is ambiguous in {cat.name}: {len(candidates)} morphisms, none epic", line
            )
        logger.debug(f"[category:{cat.name}] {arg.source}->{arg.target} resolved to epimorphism {epis[0]}")
        return epis[0]
