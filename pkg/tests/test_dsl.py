import pytest

from finite_localization.dsl import Workspace, document_from_category, parse, print_document
from finite_localization.dsl.document import ArrowArg, CallArg, CategoryDecl, FixtureArg, FixtureDecl, NameArg, TheoremArg
from finite_localization.errors import (
    CompositionTypeError,
    DslSyntaxError,
    MissingCompositeError,
    UnresolvedIdentifierError,
)
from finite_localization.fixtures.posets import chain
from finite_localization.interfaces.file_utils import example_documents

EXAMPLES = example_documents()


@pytest.mark.parametrize("name,text", EXAMPLES, ids=[name for name, _ in EXAMPLES])
def test_examples_round_trip(name, text):
    document = parse(text, name=name)
    assert print_document(document) == text
    assert parse(print_document(document)) == document


def test_examples_are_bundled():
    assert [name for name, _ in EXAMPLES] == [
        "abelian.fl",
        "chain3.fl",
        "closure_monad.fl",
        "groups.fl",
        "posets.fl",
        "reflection.fl",
    ]


def test_parse_chain3():
    document = parse(dict(EXAMPLES)["chain3.fl"])
    (decl,) = document.declarations
    assert isinstance(decl, CategoryDecl)
    assert decl.objects == ("0", "1", "2")
    assert [(a.name, a.source, a.target) for a in decl.arrows] == [("a", "0", "1"), ("b", "1", "2"), ("c", "0", "2")]
    (task,) = document.tasks
    assert task.command == "localize"
    assert task.args == (NameArg("chain3"), ArrowArg("1", "2", key="f"))
    assert task.line == 7


def test_theorem_tokens_and_fixtures():
    document = parse("fixture poset(chain=3)\ntask verify(thm5.2, chain3, closure(1), f: 1->2)\n")
    (fixture,) = document.declarations
    assert isinstance(fixture, FixtureDecl)
    assert fixture.name == "chain3"
    assert document.tasks[0].args[0] == TheoremArg("thm5.2")


def test_syntax_error_has_position():
    text = "category c {\n  objects: x;\n  morphisms: f x -> x;\n}\n"
    with pytest.raises(DslSyntaxError) as info:
        parse(text)
    assert info.value.line == 3
    assert "line 3" in str(info.value)


def test_unresolved_identifiers():
    with pytest.raises(UnresolvedIdentifierError):
        parse("category c {\n  objects: x;\n  morphisms: f: x -> y;\n}\n")
    with pytest.raises(UnresolvedIdentifierError):
        parse("task check(nothing)\n")
    with pytest.raises(UnresolvedIdentifierError):
        parse("functor F: c -> c {\n}\n")


def test_missing_composite():
    with pytest.raises(MissingCompositeError):
        parse("category c {\n  objects: x, y;\n  morphisms: f: x -> y, g: y -> x;\n}\n")


def test_composite_must_typecheck():
    text = "category c {\n  objects: x, y, z;\n  morphisms: f: x -> y, g: y -> z, h: x -> z;\n  compose: g.f = f;\n}\n"
    with pytest.raises(CompositionTypeError):
        parse(text)


def test_comments_are_ignored():
    text = "# a chain\ncategory c {\n  objects: x; # one object\n}\n"
    assert print_document(parse(text)) == "category c {\n  objects: x;\n}\n"


def test_document_from_generated_category():
    document = document_from_category(chain(3).category)
    text = print_document(document)
    assert '"0->2"' in text
    reread = parse(text)
    assert reread == document
    workspace = Workspace.build(reread)
    kind, cat = workspace.lookup(NameArg("chain3"))
    assert kind == "category"
    assert cat.hom("0", "2") == ("0->2",)
    assert cat.compose("1->2", "0->1") == "0->2"


def test_inline_fixture_reuses_declared_one():
    document = parse("fixture abelian(max_order=4)\n\ntask verify(thm4.2, fixture abelian(4), tensor(Z/2), f: Z4->Z2)\n")
    workspace = Workspace.build(document)
    _, inline, tensor, _ = document.tasks[0].args
    assert isinstance(inline, FixtureArg)
    declared = workspace.categories["abelian4"]
    assert workspace.category(inline) is declared
    assert workspace.monad(tensor, declared) is workspace.monad(tensor, workspace.category(inline))


def test_called_monads_follow_the_fixture_not_its_name():
    workspace = Workspace.build(parse("fixture poset(chain=2) as chain3\n"))
    declared = workspace.categories["chain3"]
    inline = workspace.category(FixtureArg(FixtureDecl("poset", (("chain", 3),))))
    assert inline is not declared
    closure = CallArg("closure", ("1",))
    assert workspace.monad(closure, declared).category is declared
    assert workspace.monad(closure, inline).category is inline
