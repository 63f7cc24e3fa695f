"""Identity language: parse, print, canonicalize and transform equational identities.

Grammar (whitespace insignificant, explicit parentheses for nesting):

    identity := side "=" side
    side     := atom op atom | atom
    atom     := var | "(" atom op atom ")"
    op       := "*" | "\\" | "/"
    var      := [a-z][a-z0-9]*
"""
import logging
import re
from functools import lru_cache
from typing import Iterable, Union

from models.term import OPS, App, Identity, Term, Variable, VariantClass
from utils.errors import IdentityParseError, MissingEqualsError

logger = logging.getLogger(__name__)

_ATOM_START = frozenset({"variable", "("})
_AFTER_ATOM = frozenset(OPS)
_END = "end of input"

_VAR_RE = re.compile(r"[a-z][a-z0-9]*")


# Tokenizer

def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Returns (kind, lexeme, byte offset) triples ending with an `end` token.

    Unknown characters become `error` tokens so the parser can report what it
    expected at that point.
    """
    tokens = []
    i = 0
    byte = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            byte += len(ch.encode("utf-8"))
            continue
        match = _VAR_RE.match(text, i)
        if match:
            lexeme = match.group()
            tokens.append(("variable", lexeme, byte))
        elif ch in OPS:
            lexeme = ch
            tokens.append(("op", ch, byte))
        elif ch in "()=":
            lexeme = ch
            tokens.append((ch, ch, byte))
        else:
            lexeme = ch
            tokens.append(("error", ch, byte))
        i += len(lexeme)
        byte += len(lexeme.encode("utf-8"))
    tokens.append(("end", "", byte))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def fail(self, expected: Iterable[str]):
        kind, lexeme, offset = self.peek()
        found = _END if kind == "end" else repr(lexeme)
        raise IdentityParseError(f"unexpected {found}", offset, expected)

    def atom(self) -> Term:
        kind, lexeme, _ = self.peek()
        if kind == "variable":
            self.advance()
            return Variable(name=lexeme)
        if kind == "(":
            self.advance()
            left = self.atom()
            op = self.operator()
            right = self.atom()
            if self.peek()[0] != ")":
                self.fail({")"})
            self.advance()
            return App(op=op, left=left, right=right)
        self.fail(_ATOM_START)

    def operator(self) -> str:
        kind, lexeme, _ = self.peek()
        if kind != "op":
            self.fail(_AFTER_ATOM)
        self.advance()
        return lexeme

    def side(self, follow: frozenset) -> Term:
        left = self.atom()
        if self.peek()[0] != "op":
            if self.peek()[0] not in {_kind(t) for t in follow}:
                self.fail(_AFTER_ATOM | follow)
            return left
        op = self.operator()
        right = self.atom()
        if self.peek()[0] not in {_kind(t) for t in follow}:
            self.fail(follow)
        return App(op=op, left=left, right=right)


def _kind(expected: str) -> str:
    return "end" if expected == _END else expected


def parse_term(text: str) -> Term:
    parser = _Parser(text)
    return parser.side(frozenset({_END}))


def parse_identity(text: str) -> Identity:
    if "=" not in text:
        raise MissingEqualsError("missing '='", len(text.encode("utf-8")), {"="})
    parser = _Parser(text)
    lhs = parser.side(frozenset({"="}))
    parser.advance()
    rhs = parser.side(frozenset({_END}))
    return Identity(lhs=lhs, rhs=rhs)


def parse_identities(text: str) -> list[Identity]:
    """Identity-file reader: one identity per line, `#` comment lines and blank lines skipped."""
    identities = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            identities.append(parse_identity(stripped))
        except IdentityParseError as exc:
            raise exc.__class__(exc.reason, exc.offset, exc.expected, line=lineno) from exc
    return identities


# Printing

def format_term(term: Term) -> str:
    """Text of one side: nested applications parenthesized, the top one bare."""
    if isinstance(term, Variable):
        return term.name
    return f"{_format_atom(term.left)} {term.op} {_format_atom(term.right)}"


def _format_atom(term: Term) -> str:
    if isinstance(term, Variable):
        return term.name
    return f"({format_term(term)})"


def format_identity(identity: Identity) -> str:
    return f"{format_term(identity.lhs)} = {format_term(identity.rhs)}"


# Structure

def variables(node: Union[Term, Identity]) -> tuple[str, ...]:
    """Distinct variable names in order of first occurrence (lhs before rhs)."""
    seen: dict[str, None] = {}

    def walk(term: Term):
        if isinstance(term, Variable):
            seen.setdefault(term.name, None)
        else:
            walk(term.left)
            walk(term.right)

    if isinstance(node, Identity):
        walk(node.lhs)
        walk(node.rhs)
    else:
        walk(node)
    return tuple(seen)


def operators(node: Union[Term, Identity]) -> frozenset:
    if isinstance(node, Identity):
        return operators(node.lhs) | operators(node.rhs)
    if isinstance(node, Variable):
        return frozenset()
    return frozenset({node.op}) | operators(node.left) | operators(node.right)


def _rename_term(term: Term, mapping: dict[str, str]) -> Term:
    if isinstance(term, Variable):
        return Variable(name=mapping.get(term.name, term.name))
    return App(op=term.op, left=_rename_term(term.left, mapping), right=_rename_term(term.right, mapping))


def rename(identity: Identity, mapping: dict[str, str]) -> Identity:
    return Identity(lhs=_rename_term(identity.lhs, mapping), rhs=_rename_term(identity.rhs, mapping))


def canonicalize(identity: Identity) -> Identity:
    mapping = {name: f"v{i}" for i, name in enumerate(variables(identity), start=1)}
    return rename(identity, mapping)


def swap_sides(identity: Identity) -> Identity:
    return Identity(lhs=identity.rhs, rhs=identity.lhs)


def _dual_term(term: Term) -> Term:
    if isinstance(term, Variable):
        return term
    return App(op=term.op, left=_dual_term(term.right), right=_dual_term(term.left))


def dual(identity: Identity) -> Identity:
    """Swaps the arguments of every application (t * s read as s * t)."""
    return Identity(lhs=_dual_term(identity.lhs), rhs=_dual_term(identity.rhs))


# The associativity family

def _mul(left: Term, right: Term, swapped: bool) -> App:
    if swapped:
        left, right = right, left
    return App(op="*", left=left, right=right)


def mask_label(mask: int) -> str:
    """Bits read lhs-outer, lhs-inner, rhs-outer, rhs-inner."""
    return format(mask, "04b")


def hosszu_variants() -> list[Identity]:
    x, y, z = (Variable(name=n) for n in "xyz")
    variants = []
    for mask in range(16):
        lhs_outer, lhs_inner, rhs_outer, rhs_inner = (bool(mask >> bit & 1) for bit in (3, 2, 1, 0))
        lhs = _mul(x, _mul(y, z, lhs_inner), lhs_outer)
        rhs = _mul(_mul(x, y, rhs_inner), z, rhs_outer)
        variants.append(Identity(lhs=lhs, rhs=rhs))
    return variants


def orbit_key(identity: Identity) -> str:
    """Least canonical text over side swap and dual (renaming is absorbed by canonicalize)."""
    images = (identity, swap_sides(identity), dual(identity), swap_sides(dual(identity)))
    return min(format_identity(canonicalize(image)) for image in images)


def classify_variants(identities: list[Identity]) -> list[VariantClass]:
    classes: dict[str, list[int]] = {}
    for index, identity in enumerate(identities):
        classes.setdefault(orbit_key(identity), []).append(index)
    result = [
        VariantClass(representative=parse_identity(key), members=members)
        for key, members in classes.items()
    ]
    logger.debug("classified %d identities into %d classes", len(identities), len(result))
    return result


# Named identities used by the catalog and the CLI

EQUATIONS: dict[str, str] = {
    "associative": "x * (y * z) = (x * y) * z",
    "grassmann": "x * (y * z) = z * (y * x)",
    "left_commutative": "x * (y * z) = y * (x * z)",
    "cyclic": "x * (y * z) = (z * x) * y",
    "tarski": "x * (z * y) = (x * y) * z",
    "left_invertive": "(x * y) * z = (z * y) * x",
    # alias of grassmann
    "right_invertive": "x * (y * z) = z * (y * x)",
    "commutative": "x * y = y * x",
    "left_division_law": "x * (x \\ y) = y",
    "right_division_law": "(y / x) * x = y",
    "left_cancel_law": "x \\ (x * y) = y",
    "right_cancel_law": "(y * x) / x = y",
    "birkhoff_left": "(x / y) \\ x = y",
    "birkhoff_right": "y / (x \\ y) = x",
}


@lru_cache(maxsize=None)
def equation(name: str) -> Identity:
    return parse_identity(EQUATIONS[name])
