import ast
import dataclasses
import logging
from functools import lru_cache
from typing import Dict, List, Optional, Set, Tuple

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from ..errors import CompositionTypeError, DslError, DslSyntaxError, MissingCompositeError, UnresolvedIdentifierError
from .document import (
    AdjunctionDecl,
    ArrowArg,
    ArrowDecl,
    CallArg,
    CategoryDecl,
    CompositeDecl,
    DslDocument,
    FixtureArg,
    FixtureDecl,
    FunctorDecl,
    FunctorRef,
    MonadDecl,
    NameArg,
    NatDecl,
    Task,
    TheoremArg,
)
from .grammar import build_parser

logger = logging.getLogger(__name__)

COMMANDS = ("check", "localize", "compare", "induce", "dualize", "verify")
_DEFAULT_MAX_ORDER = {"abelian": 4, "groups": 8}


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return build_parser()


def _line(meta) -> Optional[int]:
    return getattr(meta, "line", None)


def _present(items) -> list:
    return [item for item in items if item is not None]


def normalize_fixture(kind: str, params: List[Tuple[Optional[str], object]], line: Optional[int]) -> Tuple:
    """Positional arguments become ``max_order`` and missing orders get their defaults"""
    named = []
    for key, value in params:
        if key is None:
            if kind not in _DEFAULT_MAX_ORDER or named:
                raise DslSyntaxError(f"fixture {kind} takes keyword parameters only", line)
            key = "max_order"
        if any(k == key for k, _ in named):
            raise DslSyntaxError(f"parameter {key} given twice for fixture {kind}", line)
        named.append((key, value))
    if kind in _DEFAULT_MAX_ORDER and not named:
        named.append(("max_order", _DEFAULT_MAX_ORDER[kind]))
    return tuple(named)


class _ToDocument(Transformer):
    def ident(self, children):
        token = children[0]
        if token.type == "ESCAPED_STRING":
            return ast.literal_eval(str(token))
        return str(token)

    def pvalue(self, children):
        token = children[0]
        if token.type == "ESCAPED_STRING":
            return ast.literal_eval(str(token))
        text = str(token)
        return int(text) if text.isdigit() else text

    # -- category ------------------------------------------------------

    def objects_section(self, children):
        return ("objects", tuple(_present(children)))

    def morphisms_section(self, children):
        return ("arrows", tuple(_present(children)))

    def compose_section(self, children):
        return ("composites", tuple(_present(children)))

    @v_args(meta=True)
    def arrow(self, meta, children):
        name, source, target = children
        return ArrowDecl(name, source, target, line=_line(meta))

    @v_args(meta=True)
    def composite(self, meta, children):
        second, first, result = children
        return CompositeDecl(second, first, result, line=_line(meta))

    @v_args(meta=True)
    def category(self, meta, children):
        name, *sections = children
        collected: Dict[str, tuple] = {"objects": (), "arrows": (), "composites": ()}
        for key, items in sections:
            collected[key] += items
        return CategoryDecl(name, collected["objects"], collected["arrows"], collected["composites"], line=_line(meta))

    # -- functors and transformations ----------------------------------

    def mapping(self, children):
        return tuple(children)

    def object_map(self, children):
        return ("objects", tuple(_present(children)))

    def morphism_map(self, children):
        return ("morphisms", tuple(_present(children)))

    @v_args(meta=True)
    def functor(self, meta, children):
        name, source, target, *sections = children
        objects: tuple = ()
        morphisms: tuple = ()
        for key, items in sections:
            if key == "objects":
                objects += items
            else:
                morphisms += items
        return FunctorDecl(name, source, target, objects, morphisms, line=_line(meta))

    def composite_ref(self, children):
        return FunctorRef(tuple(children))

    def identity_ref(self, children):
        return FunctorRef((), identity_of=children[0])

    def component(self, children):
        return tuple(children)

    @v_args(meta=True)
    def nat(self, meta, children):
        name, source, target, *components = children
        return NatDecl(name, source, target, tuple(_present(components)), line=_line(meta))

    @v_args(meta=True)
    def monad(self, meta, children):
        name, functor, unit, mult = children
        return MonadDecl(name, functor, unit, mult, line=_line(meta))

    @v_args(meta=True)
    def adjunction(self, meta, children):
        name, left, right, unit, counit = children
        return AdjunctionDecl(name, left, right, unit, counit, line=_line(meta))

    # -- fixtures and tasks --------------------------------------------

    def keyword_param(self, children):
        return (children[0], children[1])

    def positional_param(self, children):
        return (None, children[0])

    @v_args(meta=True)
    def fixture(self, meta, children):
        kind, *rest = children
        alias = rest.pop() if rest else None
        params = normalize_fixture(kind, _present(rest), _line(meta))
        return FixtureDecl(kind, params, alias, line=_line(meta))

    def arrow_value(self, children):
        return ArrowArg(children[0], children[1])

    def call_value(self, children):
        return CallArg(children[0], tuple(_present(children[1:])))

    def name_value(self, children):
        return NameArg(children[0])

    def keyed_arg(self, children):
        key, value = children
        return dataclasses.replace(value, key=key)

    def plain_arg(self, children):
        return children[0]

    def theorem_arg(self, children):
        return TheoremArg(str(children[0]))

    @v_args(meta=True)
    def fixture_arg(self, meta, children):
        kind, *params = children
        return FixtureArg(FixtureDecl(kind, normalize_fixture(kind, _present(params), _line(meta)), line=_line(meta)))

    @v_args(meta=True)
    def task(self, meta, children):
        command, *args = children
        if command not in COMMANDS:
            raise DslSyntaxError(f"unknown task {command!r}; expected one of {', '.join(COMMANDS)}", _line(meta))
        return Task(command, tuple(_present(args)), line=_line(meta))

    def start(self, children):
        declarations = tuple(c for c in children if not isinstance(c, Task))
        tasks = tuple(c for c in children if isinstance(c, Task))
        return declarations, tasks


def _syntax_error(error: UnexpectedInput) -> DslSyntaxError:
    line = getattr(error, "line", None)
    column = getattr(error, "column", None)
    if line is not None and line < 0:
        line, column = None, None
    if isinstance(error, UnexpectedEOF):
        return DslSyntaxError("unexpected end of document", line, column)
    if isinstance(error, UnexpectedToken):
        expected = ", ".join(sorted(error.expected)) if error.expected else "nothing"
        return DslSyntaxError(f"unexpected {error.token!r}, expected one of: {expected}", line, column)
    if isinstance(error, UnexpectedCharacters):
        return DslSyntaxError(f"unexpected character {error.char!r}", line, column)
    return DslSyntaxError(str(error), line, column)


# -- static checks ------------------------------------------------------------


def _check_category(decl: CategoryDecl) -> None:
    seen_objects: Set[str] = set()
    for x in decl.objects:
        if x in seen_objects:
            raise DslError(f"object {x} declared twice in category {decl.name}", decl.line)
        seen_objects.add(x)
    ends: Dict[str, Tuple[str, str]] = {f"id_{x}": (x, x) for x in decl.objects}
    for arrow in decl.arrows:
        for endpoint in (arrow.source, arrow.target):
            if endpoint not in seen_objects:
                raise UnresolvedIdentifierError(
                    f"morphism {arrow.name} of {decl.name} uses unknown object {endpoint}", arrow.line
                )
        if arrow.name in ends:
            raise DslError(f"morphism {arrow.name} declared twice in category {decl.name}", arrow.line)
        ends[arrow.name] = (arrow.source, arrow.target)

    declared: Set[Tuple[str, str]] = set()
    for c in decl.composites:
        for ident in (c.second, c.first, c.result):
            if ident not in ends:
                raise UnresolvedIdentifierError(f"unknown morphism {ident} in category {decl.name}", c.line)
        if (c.second, c.first) in declared:
            raise DslError(f"composite {c.second}.{c.first} declared twice", c.line)
        declared.add((c.second, c.first))
        (a, b), (b2, d), (ra, rd) = ends[c.first], ends[c.second], ends[c.result]
        if b != b2:
            raise CompositionTypeError(
                f"{c.second}.{c.first} does not typecheck: {c.first} ends at {b}, {c.second} starts at {b2}", c.line
            )
        if (ra, rd) != (a, d):
            raise CompositionTypeError(f"{c.second}.{c.first} = {c.result} must go {a} -> {d}, not {ra} -> {rd}", c.line)

    for second in decl.arrows:
        for first in decl.arrows:
            if first.target == second.source and (second.name, first.name) not in declared:
                raise MissingCompositeError(
                    f"missing composite ({second.name},{first.name}) in category {decl.name}", decl.line
                )


def _check_references(declarations, tasks) -> None:
    known: Set[str] = set()
    for decl in declarations:
        needed: List[str] = []
        if isinstance(decl, FunctorDecl):
            needed = [decl.source, decl.target]
        elif isinstance(decl, NatDecl):
            needed = [n for ref in (decl.source, decl.target) for n in (ref.parts or (ref.identity_of,))]
        elif isinstance(decl, MonadDecl):
            needed = [n for n in (decl.functor.parts or (decl.functor.identity_of,))] + [decl.unit, decl.mult]
        elif isinstance(decl, AdjunctionDecl):
            needed = [n for ref in (decl.left, decl.right) for n in (ref.parts or (ref.identity_of,))]
            needed += [decl.unit, decl.counit]
        for name in needed:
            if name not in known:
                raise UnresolvedIdentifierError(f"{name} is not declared before {decl.name}", decl.line)
        if decl.name in known:
            raise DslError(f"{decl.name} is declared twice", decl.line)
        known.add(decl.name)
    for task in tasks:
        for arg in task.positional:
            if isinstance(arg, NameArg) and arg.name not in known:
                raise UnresolvedIdentifierError(f"task {task.command} refers to undeclared {arg.name}", task.line)


def validate(document: DslDocument) -> DslDocument:
    for decl in document.declarations:
        if isinstance(decl, CategoryDecl):
            _check_category(decl)
    _check_references(document.declarations, document.tasks)
    return document


def parse(text: str, name: str = "document") -> DslDocument:
    """Parse and statically check a DSL document.

    Raises:
        DslSyntaxError: text does not match the grammar (line/column annotated)
        UnresolvedIdentifierError: a name or morphism is not declared
        MissingCompositeError: a composable pair of declared morphisms has no composite
        CompositionTypeError: a declared composite does not typecheck
    """
    try:
        tree = _parser().parse(text)
        declarations, tasks = _ToDocument().transform(tree)
    except UnexpectedInput as e:
        raise _syntax_error(e) from None
    except VisitError as e:
        if isinstance(e.orig_exc, DslError):
            raise e.orig_exc from None
        raise
    document = validate(DslDocument(declarations, tasks, name=name))
    logger.debug(f"[dsl:{name}] parsed {len(declarations)} declarations and {len(tasks)} tasks")
    return document
