"""Words in the generators.

Grammar::

    word := term (ws term)*
    term := name ('^' int)?
    name := ident ('[' args ']')?

A word denotes the composite of its terms with the rightmost term acting
first, so ``"t_a1 t_b1"`` is ``t_a1 ∘ t_b1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InvalidInput, ParseError
from .homology import GENERATOR_NAMES, FinSymplectic, dehn_twist, generator_shadow, power_op
from .surface import LoopSpec, loop_class, parse_loop

PARAMETRIZED = ("tw", "tv", "td")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[+-]?[0-9]+")


@dataclass(frozen=True)
class Term:
    name: str
    args: tuple = ()
    exponent: int = 1

    def loop(self) -> LoopSpec | None:
        """The twisting loop of a parametrized term."""
        if self.name == "tw":
            return LoopSpec("wc", self.args)
        if self.name == "tv":
            return LoopSpec("vc", self.args)
        if self.name == "td":
            return parse_loop(self.args[0])
        return None

    def __str__(self):
        if self.name == "tw":
            head = f"tw[{self.args[0]},{self.args[1]}]"
        elif self.name == "tv":
            head = f"tv[{self.args[0]};{self.args[1]}]"
        elif self.name == "td":
            head = f"td[{self.args[0]}]"
        else:
            head = self.name
        return head if self.exponent == 1 else f"{head}^{self.exponent}"


Word = tuple  # of Term


def _offset(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


def _split_args(name: str, body: str) -> tuple:
    if name == "tw":
        return tuple(x.strip() for x in body.split(","))
    if name == "tv":
        return tuple(x.strip() for x in body.split(";"))
    return (str(parse_loop(body)),)


def parse(text: str) -> Word:
    terms = []
    i, n = 0, len(text)
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            break
        start = i
        m = _IDENT.match(text, i)
        if m is None:
            raise ParseError(f"expected a generator name, found {text[i]!r}", _offset(text, i))
        name = m.group()
        i = m.end()
        if name not in GENERATOR_NAMES and name not in PARAMETRIZED:
            raise ParseError(f"unknown generator {name!r}", _offset(text, start))
        args: tuple = ()
        if i < n and text[i] == "[":
            depth, j = 0, i
            while j < n:
                if text[j] == "[":
                    depth += 1
                elif text[j] == "]":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            if j >= n:
                raise ParseError("unclosed '['", _offset(text, i))
            if name not in PARAMETRIZED:
                raise ParseError(f"generator {name!r} takes no arguments", _offset(text, i))
            try:
                args = _split_args(name, text[i + 1:j])
                Term(name, args).loop()
            except InvalidInput as exc:
                raise ParseError(f"bad arguments for {name}: {exc}", _offset(text, i + 1)) from None
            i = j + 1
        elif name in PARAMETRIZED:
            raise ParseError(f"generator {name!r} needs arguments", _offset(text, i))
        exponent = 1
        if i < n and text[i] == "^":
            m = _INT.match(text, i + 1)
            if m is None:
                raise ParseError("expected an integer exponent", _offset(text, i + 1))
            exponent = int(m.group())
            if exponent == 0:
                raise ParseError("zero exponent", _offset(text, i + 1))
            i = m.end()
        if i < n and not text[i].isspace():
            raise ParseError(f"unexpected character {text[i]!r}", _offset(text, i))
        terms.append(Term(name, args, exponent))
    return tuple(terms)


def format_word(word: Word) -> str:
    return " ".join(str(t) for t in word)


def term_shadow(term: Term) -> FinSymplectic:
    loop = term.loop()
    if loop is None:
        return power_op(generator_shadow(term.name), term.exponent)
    return dehn_twist(loop_class(loop), term.exponent)
