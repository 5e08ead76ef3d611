"""Syntax for Lambek types with a bang modality, and sequents over them.

ASCII surface syntax::

    formula  := slashed
    slashed  := banged ( ("\\" | "/") banged )?      non-associative
    banged   := "!" banged | primary
    primary  := ATOM | "(" formula ("," formula)* ")" | "()"
    sequent  := [ formula ("," formula)* ] "=>" formula

Precedence: ``!`` binds tightest, the two slashes next, comma loosest.
Slashes do not associate, so ``A\\B\\C`` is rejected rather than silently
grouped; the unit type is written ``()`` and is never required on the
left of a sequent (an empty antecedent stands for it).  ``=>`` is the
turnstile; the Unicode turnstile is accepted as an alias.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "Formula",
    "Atom",
    "Unit",
    "Product",
    "Under",
    "Over",
    "Bang",
    "UNIT",
    "Sequent",
    "FormulaSyntaxError",
    "parse_formula",
    "print_formula",
    "parse_sequent",
    "print_sequent",
    "product",
    "atoms_of",
]

TURNSTILE = "=>"
_TURNSTILE_ALIASES = ("⊢",)  # accepted on input only

_ATOM_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class FormulaSyntaxError(ValueError):
    """Raised on malformed formula or sequent text; carries the offset."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at offset {position})")
        self.position = position


@dataclass(frozen=True)
class Formula:
    """Base class for type expressions."""

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Unit(Formula):
    """The empty type, unit of the product."""


@dataclass(frozen=True)
class Product(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Under(Formula):
    """``left \\ right``: expects a ``left`` on its left, yields ``right``."""

    left: Formula
    right: Formula


@dataclass(frozen=True)
class Over(Formula):
    """``left / right``: expects a ``right`` on its right, yields ``left``."""

    left: Formula
    right: Formula


@dataclass(frozen=True)
class Bang(Formula):
    body: Formula


UNIT = Unit()


def product(left: Formula, right: Formula) -> Formula:
    """Build a product, eliminating unit children."""
    if isinstance(left, Unit):
        return right
    if isinstance(right, Unit):
        return left
    return Product(left, right)


@dataclass(frozen=True)
class Sequent:
    """An ordered antecedent and a single succedent.

    Antecedent order is significant; there is no implicit exchange.  The
    empty antecedent is allowed and denotes the unit type.
    """

    antecedent: tuple[Formula, ...]
    succedent: Formula

    def __str__(self) -> str:
        return print_sequent(self)


# ---------------------------------------------------------------------------
# Parsing


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, message: str) -> FormulaSyntaxError:
        return FormulaSyntaxError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str) -> None:
        if self.peek() != char:
            raise self.error(f"expected {char!r}")
        self.pos += 1

    def parse_formula(self) -> Formula:
        left = self.parse_banged()
        ch = self.peek()
        if ch in ("\\", "/"):
            self.pos += 1
            right = self.parse_banged()
            if self.peek() in ("\\", "/"):
                raise self.error(
                    "slashes do not associate; parenthesise the nested slash"
                )
            return Under(left, right) if ch == "\\" else Over(left, right)
        return left

    def parse_banged(self) -> Formula:
        if self.peek() == "!":
            self.pos += 1
            if self.peek() == "":
                raise self.error("empty bang body")
            return Bang(self.parse_banged())
        return self.parse_primary()

    def parse_primary(self) -> Formula:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            if self.peek() == ")":
                self.pos += 1
                return UNIT
            parts = [self.parse_formula()]
            while self.peek() == ",":
                self.pos += 1
                parts.append(self.parse_formula())
            self.expect(")")
            result = parts[-1]
            for part in reversed(parts[:-1]):
                result = Product(part, result)
            return result
        if ch == "":
            raise self.error("unexpected end of input")
        match = _ATOM_RE.match(self.text, self.pos)
        if not match:
            raise self.error(f"unexpected character {ch!r}")
        self.pos = match.end()
        return Atom(match.group())

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def parse_formula(text: str) -> Formula:
    if not text.strip():
        raise FormulaSyntaxError("empty formula", 0)
    parser = _Parser(text)
    formula = parser.parse_formula()
    if not parser.at_end():
        raise parser.error("trailing input after formula")
    return formula


def _split_top_level_commas(text: str) -> list[str]:
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise FormulaSyntaxError("unbalanced ')'", i)
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def _flatten_product(formula: Formula) -> tuple[Formula, ...]:
    if isinstance(formula, Unit):
        return ()
    if isinstance(formula, Product):
        return _flatten_product(formula.left) + _flatten_product(formula.right)
    return (formula,)


def parse_sequent(text: str) -> Sequent:
    """Parse ``Gamma => A``.

    Top-level commas in the antecedent are structural: they split into a
    flat list, and a parenthesised product written there is flattened
    into its components (comma is associative).
    """
    normalized = text
    for alias in _TURNSTILE_ALIASES:
        normalized = normalized.replace(alias, TURNSTILE)
    count = normalized.count(TURNSTILE)
    if count == 0:
        raise FormulaSyntaxError("missing '=>'", len(text))
    if count > 1:
        raise FormulaSyntaxError(
            "more than one '=>'", normalized.index(TURNSTILE, normalized.index(TURNSTILE) + 1)
        )
    left, right = normalized.split(TURNSTILE)
    succedent = parse_formula(right)
    antecedent: list[Formula] = []
    if left.strip():
        for part in _split_top_level_commas(left):
            antecedent.extend(_flatten_product(parse_formula(part)))
    return Sequent(tuple(antecedent), succedent)


# ---------------------------------------------------------------------------
# Printing


def _print_slash_operand(formula: Formula) -> str:
    if isinstance(formula, (Under, Over)):
        return f"({print_formula(formula)})"
    return print_formula(formula)


def _print_bang_body(formula: Formula) -> str:
    if isinstance(formula, (Under, Over)):
        return f"({print_formula(formula)})"
    return print_formula(formula)


def print_formula(formula: Formula) -> str:
    """Minimal-parenthesis rendering; round-trips through parse_formula."""
    if isinstance(formula, Atom):
        return formula.name
    if isinstance(formula, Unit):
        return "()"
    if isinstance(formula, Bang):
        return "!" + _print_bang_body(formula.body)
    if isinstance(formula, Under):
        return f"{_print_slash_operand(formula.left)}\\{_print_slash_operand(formula.right)}"
    if isinstance(formula, Over):
        return f"{_print_slash_operand(formula.left)}/{_print_slash_operand(formula.right)}"
    if isinstance(formula, Product):
        return f"({print_formula(formula.left)}, {print_formula(formula.right)})"
    raise TypeError(f"not a formula: {formula!r}")


def print_sequent(sequent: Sequent) -> str:
    left = ", ".join(print_formula(f) for f in sequent.antecedent)
    succ = print_formula(sequent.succedent)
    return f"{left} => {succ}" if left else f"=> {succ}"


def atoms_of(formula: Formula) -> set[str]:
    """Names of all atoms occurring in the formula."""
    if isinstance(formula, Atom):
        return {formula.name}
    if isinstance(formula, Unit):
        return set()
    if isinstance(formula, Bang):
        return atoms_of(formula.body)
    if isinstance(formula, (Product, Under, Over)):
        return atoms_of(formula.left) | atoms_of(formula.right)
    raise TypeError(f"not a formula: {formula!r}")
