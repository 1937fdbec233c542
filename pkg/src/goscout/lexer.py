"""Lexical scanner for Go source text.

Tokenizes a whole file in one pass, keeping comments (with positions) in a
side list and applying Go's automatic semicolon insertion so that downstream
structural parsing can treat every declaration as semicolon-terminated.
Columns are 1-based character offsets within the line.
"""

from __future__ import annotations

import re
from typing import NamedTuple


class GoSyntaxError(Exception):
    """Raised when source text cannot be tokenized or is structurally broken."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class Token(NamedTuple):
    kind: str  # "ident", "kw", "int", "float", "imag", "char", "string", "op"
    text: str
    line: int
    col: int
    off: int  # character offset into the source


class Comment(NamedTuple):
    text: str  # includes the // or /* */ markers
    line: int
    col: int
    off: int


KEYWORDS = frozenset(
    """break case chan const continue default defer else fallthrough for func
    go goto if import interface map package range return select struct switch
    type var""".split()
)

# Tokens that allow a semicolon to be inserted after them at end of line.
_ASI_KEYWORDS = frozenset({"break", "continue", "fallthrough", "return"})
_ASI_OPS = frozenset({"++", "--", ")", "]", "}"})
_LITERAL_KINDS = frozenset({"int", "float", "imag", "char", "string"})

_TOKEN_RE = re.compile(
    r"""
      (?P<nl>\n)
    | (?P<ws>[ \t\r]+)
    | (?P<comment>//[^\n]*|/\*(?:[^*]|\*(?!/))*\*/)
    | (?P<string>`[^`]*`|"(?:[^"\\\n]|\\.)*")
    | (?P<char>'(?:[^'\\\n]|\\.)+')
    | (?P<number>
          0[xX](?:[0-9a-fA-F_]+(?:\.[0-9a-fA-F_]*)?|\.[0-9a-fA-F_]+)(?:[pP][+-]?[0-9_]+)?i?
        | 0[bB][01_]+i?
        | 0[oO][0-7_]+i?
        | (?:[0-9][0-9_]*(?:\.[0-9_]*)?|\.[0-9][0-9_]*)(?:[eE][+-]?[0-9_]+)?i?
      )
    | (?P<ident>[^\W\d]\w*)
    | (?P<op><<=|>>=|&\^=|\.\.\.|&&|\|\||<-|\+\+|--|==|!=|<=|>=|:=|<<|>>|&\^
             |\+=|-=|\*=|/=|%=|&=|\|=|\^=|[-+*/%&|^<>=!~()\[\]{},;.:])
    """,
    re.VERBOSE,
)


def _number_kind(text: str) -> str:
    if text.endswith("i"):
        return "imag"
    lowered = text.lower()
    if lowered.startswith("0x"):
        return "float" if ("p" in lowered or "." in lowered) else "int"
    if "." in text or "e" in lowered:
        return "float"
    return "int"


def _asi_eligible(tok: Token) -> bool:
    if tok.kind == "ident" or tok.kind in _LITERAL_KINDS:
        return True
    if tok.kind == "kw":
        return tok.text in _ASI_KEYWORDS
    return tok.kind == "op" and tok.text in _ASI_OPS


def tokenize(src: str) -> tuple[list[Token], list[Comment]]:
    """Scan Go source into (tokens, comments).

    Inserts ";" tokens per Go's end-of-line rule; a general comment that spans
    lines counts as a newline for that rule, matching the reference scanner.
    Raises GoSyntaxError on unterminated literals/comments or stray bytes.
    """
    tokens: list[Token] = []
    comments: list[Comment] = []
    pos = 0
    line = 1
    line_start = 0
    n = len(src)
    pending: Token | None = None  # last significant token on the current line

    def insert_semi(at: int) -> None:
        # Synthetic token; placed at the newline (or EOF) that triggered it.
        nonlocal pending
        if pending is not None and _asi_eligible(pending):
            tokens.append(Token("op", ";", line, at - line_start + 1, at))
        pending = None

    while pos < n:
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            col = pos - line_start + 1
            head = src[pos]
            if src.startswith("/*", pos):
                raise GoSyntaxError("unterminated comment", line, col)
            if head == '"':
                raise GoSyntaxError("unterminated string literal", line, col)
            if head == "`":
                raise GoSyntaxError("unterminated raw string literal", line, col)
            if head == "'":
                raise GoSyntaxError("unterminated rune literal", line, col)
            raise GoSyntaxError(f"invalid character {head!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "ws":
            pos = m.end()
            continue
        if kind == "nl":
            insert_semi(pos)
            line += 1
            line_start = m.end()
            pos = m.end()
            continue
        col = pos - line_start + 1
        if kind == "comment":
            comments.append(Comment(text, line, col, pos))
            if "\n" in text:  # block comment spanning lines acts as a newline
                insert_semi(pos)
                line += text.count("\n")
                line_start = pos + text.rindex("\n") + 1
            pos = m.end()
            continue
        if kind == "number":
            kind = _number_kind(text)
        elif kind == "ident" and text in KEYWORDS:
            kind = "kw"
        elif kind == "op" and text == "/" and src.startswith("/*", pos):
            raise GoSyntaxError("unterminated comment", line, col)
        tok = Token(kind, text, line, col, pos)
        tokens.append(tok)
        pending = tok
        if "\n" in text:  # raw string literals may span lines
            line += text.count("\n")
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    insert_semi(n)
    return tokens, comments
