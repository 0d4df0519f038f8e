"""
Formula parser - parsy grammar for the ASCII formula syntax
Precedence, loosest first: <=>, =>, <->, ->, |, &, prefix ~ not ! ? o
"""
from functools import lru_cache

import parsy
from parsy import alt, eof, fail, generate, regex, string

from src.core.errors import ArityError, FormulaSyntaxError, SignatureError, UnknownSymbolError
from src.core.formula import (
    BOT, KEYWORDS, And, Atom, Bang, Circ, ClassNeg, Const, Eq, Exists, Forall, Formula, Iff,
    Imp, Neg, Or, Quest, Signature, StrongIff, StrongImp, Var,
)

spaces = regex(r"\s*")


def lexeme(p):
    return p << spaces


def keyword(word: str):
    return lexeme(regex(word + r"(?![A-Za-z0-9_'])")).desc(word)


name = lexeme(regex(r"[A-Za-z_][A-Za-z0-9_]*'*")).desc("identifier")
lparen = lexeme(string("("))
rparen = lexeme(string(")"))
comma = lexeme(string(","))
dot = lexeme(string("."))
equals = lexeme(regex(r"=(?!>)")).desc("=")


@generate
def identifier():
    word = yield name
    if word in KEYWORDS:
        yield fail(f"identifier (got keyword '{word}')")
    return word


def _left_assoc(operand, op, ctor):
    @generate
    def chain():
        left = yield operand
        rest = yield (op >> operand).many()
        for right in rest:
            left = ctor(left, right)
        return left
    return chain


def _right_assoc(operand, op, ctor):
    @generate
    def chain():
        left = yield operand
        right = yield (op >> chain).optional()
        return left if right is None else ctor(left, right)
    return chain


@lru_cache(maxsize=64)
def _grammar(sig: Signature):
    """Grammar bound to one signature"""

    @generate
    def term():
        word = yield identifier
        if word in sig.constants:
            return Const(word)
        if word in sig.relations:
            yield fail(f"term (relation '{word}' cannot be a term)")
        return Var(word)

    @generate
    def relation_atom():
        start = yield parsy.index
        rel = yield identifier
        yield lparen
        args = yield term.sep_by(comma)
        yield rparen
        if rel not in sig.relations:
            raise UnknownSymbolError(rel, start)
        if sig.relations[rel] != len(args):
            raise ArityError(
                f"relation '{rel}' expects {sig.relations[rel]} argument(s), got {len(args)} at offset {start}"
            )
        return Atom(rel, tuple(args))

    @generate
    def term_atom():
        start = yield parsy.index
        left = yield term
        op = yield equals | keyword("in")
        right = yield term
        if op != "in":
            return Eq(left, right)
        if sig.relations.get("in") != 2:
            raise UnknownSymbolError("in", start)
        return Atom("in", (left, right))

    formula = parsy.forward_declaration()

    primary = alt(
        lparen >> formula << rparen,
        keyword("bot").result(BOT),
        relation_atom,
        term_atom,
    )

    @generate
    def quantified():
        kind = yield keyword("forall") | keyword("exists")
        start = yield parsy.index
        var = yield identifier
        if var in sig.constants or var in sig.relations:
            raise SignatureError(f"'{var}' is declared in the signature and cannot be bound at offset {start}")
        yield dot
        body = yield formula
        return (Forall if kind.startswith("forall") else Exists)(var, body)

    prefix_ops = {
        "~": Neg, "not": ClassNeg, "!": Bang, "?": Quest, "o": Circ,
    }
    prefix = alt(
        lexeme(string("~")), keyword("not"), lexeme(string("!")), lexeme(string("?")), keyword("o"),
    )

    @generate
    def unary():
        op = yield prefix.optional()
        if op is None:
            return (yield quantified | primary)
        body = yield unary
        return prefix_ops[op.strip()](body)

    conj_level = _left_assoc(unary, lexeme(string("&")), And)
    disj_level = _left_assoc(conj_level, lexeme(string("|")), Or)
    imp_level = _right_assoc(disj_level, lexeme(string("->")), Imp)
    iff_level = _left_assoc(imp_level, lexeme(string("<->")), Iff)
    simp_level = _right_assoc(iff_level, lexeme(string("=>")), StrongImp)
    siff_level = _left_assoc(simp_level, lexeme(string("<=>")), StrongIff)
    formula.become(siff_level)

    return spaces >> formula << eof


def parse(text: str, sig: Signature) -> Formula:
    """Parse formula text against a signature"""
    try:
        return _grammar(sig).parse(text)
    except parsy.ParseError as e:
        expected = ", ".join(sorted(e.expected))
        raise FormulaSyntaxError(f"expected one of {expected}", e.index) from None


def parse_term(text: str, sig: Signature):
    word = text.strip()
    if not word:
        raise FormulaSyntaxError("empty term", 0)
    if word in sig.constants:
        return Const(word)
    if word in KEYWORDS or word in sig.relations:
        raise SignatureError(f"'{word}' is not a term")
    try:
        identifier.parse(word)
    except parsy.ParseError as e:
        raise FormulaSyntaxError("expected identifier", e.index) from None
    return Var(word)
