"""Canonical text for a ``DslDocument``: ``parse(print_document(doc)) == doc``."""

import json
from typing import Any, List

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
    Task,
    TaskArg,
    TheoremArg,
)
from .grammar import is_plain

INDENT = "  "


def quote(ident: str) -> str:
    return ident if is_plain(ident) else json.dumps(ident, ensure_ascii=False)


def _value(value: Any) -> str:
    if isinstance(value, int):
        return str(value)
    text = str(value)
    # a bare all-digit token reads back as an int
    return json.dumps(text, ensure_ascii=False) if text.isdigit() else quote(text)


def _functor_ref(ref: FunctorRef) -> str:
    if ref.identity_of is not None:
        return f"Id({quote(ref.identity_of)})"
    return ".".join(quote(p) for p in ref.parts)


def _section(keyword: str, items: List[str]) -> List[str]:
    return [f"{INDENT}{keyword}: {', '.join(items)};"] if items else []


def _category(decl: CategoryDecl) -> str:
    lines = [f"category {quote(decl.name)} {{"]
    lines += _section("objects", [quote(x) for x in decl.objects])
    lines += _section(
        "morphisms", [f"{quote(a.name)}: {quote(a.source)} -> {quote(a.target)}" for a in decl.arrows]
    )
    lines += _section(
        "compose", [f"{quote(c.second)}.{quote(c.first)} = {quote(c.result)}" for c in decl.composites]
    )
    lines.append("}")
    return "\n".join(lines)


def _functor(decl: FunctorDecl) -> str:
    lines = [f"functor {quote(decl.name)}: {quote(decl.source)} -> {quote(decl.target)} {{"]
    lines += _section("objects", [f"{quote(a)} -> {quote(b)}" for a, b in decl.object_map])
    lines += _section("morphisms", [f"{quote(a)} -> {quote(b)}" for a, b in decl.morphism_map])
    lines.append("}")
    return "\n".join(lines)


def _nat(decl: NatDecl) -> str:
    head = f"nat {quote(decl.name)}: {_functor_ref(decl.source)} => {_functor_ref(decl.target)} {{"
    if not decl.components:
        return f"{head}\n}}"
    body = ", ".join(f"{quote(x)}: {quote(m)}" for x, m in decl.components)
    return f"{head}\n{INDENT}{body}\n}}"


def _monad(decl: MonadDecl) -> str:
    return "\n".join(
        [
            f"monad {quote(decl.name)} {{",
            f"{INDENT}functor: {_functor_ref(decl.functor)};",
            f"{INDENT}unit: {quote(decl.unit)};",
            f"{INDENT}mult: {quote(decl.mult)};",
            "}",
        ]
    )


def _adjunction(decl: AdjunctionDecl) -> str:
    return "\n".join(
        [
            f"adjunction {quote(decl.name)} {{",
            f"{INDENT}left: {_functor_ref(decl.left)};",
            f"{INDENT}right: {_functor_ref(decl.right)};",
            f"{INDENT}unit: {quote(decl.unit)};",
            f"{INDENT}counit: {quote(decl.counit)};",
            "}",
        ]
    )


def _fixture_call(decl: FixtureDecl) -> str:
    params = ", ".join(f"{quote(k)}={_value(v)}" for k, v in decl.params)
    return f"fixture {quote(decl.kind)}({params})"


def _fixture(decl: FixtureDecl) -> str:
    text = _fixture_call(decl)
    return f"{text} as {quote(decl.alias)}" if decl.alias else text


def _arg(arg: TaskArg) -> str:
    if isinstance(arg, TheoremArg):
        text = arg.theorem
    elif isinstance(arg, FixtureArg):
        text = _fixture_call(arg.fixture)
    elif isinstance(arg, ArrowArg):
        text = f"{quote(arg.source)}->{quote(arg.target)}"
    elif isinstance(arg, CallArg):
        text = f"{quote(arg.function)}({', '.join(quote(a) for a in arg.arguments)})"
    elif isinstance(arg, NameArg):
        text = quote(arg.name)
    else:
        raise ValueError(f"Unsupported task argument: {arg!r}")
    return f"{quote(arg.key)}: {text}" if arg.key else text


def _task(task: Task) -> str:
    return f"task {quote(task.command)}({', '.join(_arg(a) for a in task.args)})"


_PRINTERS = {
    CategoryDecl: _category,
    FunctorDecl: _functor,
    NatDecl: _nat,
    MonadDecl: _monad,
    AdjunctionDecl: _adjunction,
    FixtureDecl: _fixture,
}


def print_document(document: DslDocument) -> str:
    """Declarations one block each, separated by blank lines, then one line per task"""
    blocks = [_PRINTERS[type(decl)](decl) for decl in document.declarations]
    if document.tasks:
        blocks.append("\n".join(_task(t) for t in document.tasks))
    return "\n\n".join(blocks) + "\n" if blocks else ""
