"""Lark grammar of the DSL (LALR with the contextual lexer)."""

import re

from lark import Lark

KEYWORDS = frozenset(
    {
        "category", "objects", "morphisms", "compose", "functor", "nat", "monad", "unit", "mult",
        "adjunction", "left", "right", "counit", "fixture", "as", "task", "Id",
    }
)
THEOREMS = ("thm3.2", "thm4.2", "thm5.1", "thm5.2", "thm9", "eq9")

NAME_PATTERN = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_/']*")

GRAMMAR = r"""
start: _item*

_item: category | functor | nat | monad | adjunction | fixture | task

category: "category" ident "{" _cat_section* "}"
_cat_section: objects_section | morphisms_section | compose_section
objects_section: "objects" ":" [ident ("," ident)*] ";"
morphisms_section: "morphisms" ":" [arrow ("," arrow)*] ";"
compose_section: "compose" ":" [composite ("," composite)*] ";"
arrow: ident ":" ident "->" ident
composite: ident "." ident "=" ident

functor: "functor" ident ":" ident "->" ident "{" _functor_section* "}"
_functor_section: object_map | morphism_map
object_map: "objects" ":" [mapping ("," mapping)*] ";"
morphism_map: "morphisms" ":" [mapping ("," mapping)*] ";"
mapping: ident "->" ident

nat: "nat" ident ":" fref "=>" fref "{" [component ("," component)*] "}"
component: ident ":" ident

fref: ident ("." ident)*        -> composite_ref
    | "Id" "(" ident ")"        -> identity_ref

monad: "monad" ident "{" "functor" ":" fref ";" "unit" ":" ident ";" "mult" ":" ident ";" "}"
adjunction: "adjunction" ident "{" "left" ":" fref ";" "right" ":" fref ";" "unit" ":" ident ";" "counit" ":" ident ";" "}"

fixture: "fixture" ident "(" [param ("," param)*] ")" ["as" ident]
param: ident "=" pvalue          -> keyword_param
     | pvalue                    -> positional_param
pvalue: NAME | ESCAPED_STRING

task: "task" ident "(" [arg ("," arg)*] ")"
arg: ident ":" value             -> keyed_arg
   | value                       -> plain_arg
   | THM                         -> theorem_arg
   | "fixture" ident "(" [param ("," param)*] ")"  -> fixture_arg
value: ident "->" ident          -> arrow_value
     | ident "(" [ident ("," ident)*] ")"  -> call_value
     | ident                     -> name_value

ident: NAME | ESCAPED_STRING

THM.2: /(thm(3\.2|4\.2|5\.1|5\.2|9)|eq9)(?![A-Za-z0-9_\/'])/
NAME: /[A-Za-z0-9_][A-Za-z0-9_\/']*/
COMMENT: /#[^\n]*/

%import common.ESCAPED_STRING
%import common.WS
%ignore WS
%ignore COMMENT
"""


def build_parser() -> Lark:
    return Lark(GRAMMAR, parser="lalr", lexer="contextual", propagate_positions=True, maybe_placeholders=True)


def is_plain(ident: str) -> bool:
    """True when ``ident`` can be written without quotes anywhere an id is allowed"""
    return bool(NAME_PATTERN.fullmatch(ident)) and ident not in KEYWORDS and ident not in THEOREMS
