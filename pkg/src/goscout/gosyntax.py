"""Structural syntax model for Go files.

Builds a file-level view sufficient for syntactic pattern analysis: package
clause, import specs, top-level function declarations (with receiver base
types), package-level var specifications, every comment, and every
call-shaped expression in the file. It is not a full AST; it is a token-tree
model that agrees with Go's grammar on the constructs the analyzers match.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .lexer import Comment, GoSyntaxError, Token, tokenize

_OPENERS = {"(": ")", "[": "]", "{": "}"}
_CLOSERS = {")": "(", "]": "[", "}": "{"}
_LITERAL_KINDS = frozenset({"int", "float", "imag", "char", "string"})

# Header convention marking machine-generated files.
_GENERATED_RE = re.compile(r"^// Code generated .* DO NOT EDIT\.$")


@dataclass(frozen=True)
class GoImport:
    path: str  # unquoted import path
    alias: str | None  # explicit name, "." or "_" included; None if absent
    line: int
    col: int

    @property
    def local_name(self) -> str | None:
        """Identifier this import binds in the file, best-effort.

        Dot and blank imports bind no usable name. Without an alias the last
        path segment is used, with a trailing ".vN" version suffix stripped
        (the common gopkg.in convention).
        """
        if self.alias in (".", "_"):
            return None
        if self.alias:
            return self.alias
        base = self.path.rsplit("/", 1)[-1]
        return re.sub(r"\.v\d+$", "", base)


@dataclass(frozen=True)
class GoFuncDecl:
    name: str
    recv_base: str | None  # receiver base type name, None for plain functions
    line: int
    col: int

    @property
    def is_method(self) -> bool:
        return self.recv_base is not None


@dataclass(frozen=True)
class GoVarSpec:
    names: list[str]
    line: int
    col: int
    rhs_range: tuple[int, int] | None  # token index span of the initializer


@dataclass(frozen=True)
class GoCall:
    """One call-shaped expression (includes syntactic type conversions)."""

    open_idx: int  # token index of the argument-list "("
    line: int  # position of the callee expression start
    col: int
    name: str | None  # final identifier when the callee is a name, else None
    is_selector: bool  # callee of the form <expr>.name
    qualifier: str | None  # bare-identifier qualifier in qual.name(...) calls
    callee_text: str | None  # full callee text for named callees
    receiver_text: str | None  # text left of the final ".name" for selectors
    receiver_is_ident: bool  # receiver is a single bare identifier


@dataclass
class GoFile:
    source: str
    package_name: str
    package_line: int
    tokens: list[Token]
    match: dict[int, int]
    imports: list[GoImport] = field(default_factory=list)
    funcs: list[GoFuncDecl] = field(default_factory=list)
    var_specs: list[GoVarSpec] = field(default_factory=list)
    calls: list[GoCall] = field(default_factory=list)
    comments: list[Comment] = field(default_factory=list)
    generated: bool = False

    def import_paths(self) -> set[str]:
        return {imp.path for imp in self.imports}

    def import_names(self) -> set[str]:
        return {name for imp in self.imports if (name := imp.local_name)}

    def call_args_text(self, call: GoCall, limit: int = 200) -> str:
        open_tok = self.tokens[call.open_idx]
        close_tok = self.tokens[self.match[call.open_idx]]
        text = self.source[open_tok.off + 1 : close_tok.off]
        return _squash(text)[:limit]


def _squash(text: str) -> str:
    return " ".join(text.split())


def _match_brackets(
    tokens: list[Token],
) -> tuple[dict[int, int], list[int], list[int], set[int]]:
    """Pair bracket tokens.

    Returns (match map, per-token depth, per-token innermost enclosing opener
    index or -1, set of "{" indices opening interface types). Identifiers
    followed by "(" directly inside an interface body are method specs, not
    calls, so that set feeds the call scanner's exclusion rule.
    """
    match: dict[int, int] = {}
    depth = [0] * len(tokens)
    parent = [-1] * len(tokens)
    interface_braces: set[int] = set()
    stack: list[int] = []
    for i, tok in enumerate(tokens):
        depth[i] = len(stack)
        parent[i] = stack[-1] if stack else -1
        if tok.kind != "op":
            continue
        if tok.text in _OPENERS:
            if tok.text == "{" and i > 0:
                prev = tokens[i - 1]
                if prev.kind == "kw" and prev.text == "interface":
                    interface_braces.add(i)
            stack.append(i)
        elif tok.text in _CLOSERS:
            if not stack:
                raise GoSyntaxError(f"unexpected {tok.text!r}", tok.line, tok.col)
            opener = stack.pop()
            if tokens[opener].text != _CLOSERS[tok.text]:
                raise GoSyntaxError(
                    f"mismatched {tokens[opener].text!r} closed by {tok.text!r}",
                    tok.line,
                    tok.col,
                )
            match[opener] = i
            match[i] = opener
            depth[i] = len(stack)
            parent[i] = stack[-1] if stack else -1
    if stack:
        tok = tokens[stack[-1]]
        raise GoSyntaxError(f"unclosed {tok.text!r}", tok.line, tok.col)
    return match, depth, parent, interface_braces


def _is_terminal(tok: Token) -> bool:
    """True when tok cannot end a primary expression."""
    if tok.kind == "ident" or tok.kind in _LITERAL_KINDS:
        return False
    if tok.kind == "op":
        return tok.text not in (")", "]", "}")
    return True  # keywords


def _classify_call(tokens: list[Token], match: dict[int, int], i: int) -> int | None:
    """Decide whether the "(" at index i opens a call's argument list.

    Walks the candidate callee expression backwards, jumping over bracket
    groups. Returns the token index where the callee expression starts, or
    None when the parenthesis belongs to a declaration or type signature
    (func parameters/results, receiver lists, generic parameter lists).
    """
    crossed_body = False  # saw a {...} while walking: func literal body
    j = i - 1
    while j >= 0:
        tok = tokens[j]
        if tok.kind == "ident":
            if j == 0:
                return j
            prev = tokens[j - 1]
            if prev.kind == "op" and prev.text == ".":
                j -= 2
                continue
            if prev.kind == "kw" and prev.text == "func":
                return None  # declared function/method name
            if prev.kind == "ident" or prev.kind in _LITERAL_KINDS:
                # Type juxtaposition (declaration context) unless we already
                # crossed a func-literal body.
                return j if crossed_body else None
            if prev.kind == "op" and prev.text in (")", "]", "}"):
                if prev.text == "]":
                    # map[...]T( and []T( / [N]T( are conversions: calls.
                    opener = match[j - 1]
                    before = tokens[opener - 1] if opener > 0 else None
                    if before is None or (before.kind == "kw" and before.text == "map"):
                        return opener - 1 if before else opener
                    if _is_terminal(before):
                        return opener
                return j if crossed_body else None
            return j  # operator/keyword boundary: expression starts here
        if tok.kind == "op" and tok.text in (")", "]", "}"):
            if tok.text == "}":
                crossed_body = True
            opener = match[j]
            if opener == 0:
                return opener
            before = tokens[opener - 1]
            if before.kind == "kw" and before.text == "func":
                # func signature group: a call only if a body was crossed
                # (immediately invoked function literal).
                return opener - 1 if crossed_body else None
            if before.kind == "kw" and before.text in ("interface", "struct", "map", "chan"):
                # composite type conversion, e.g. struct{...}(v)
                return opener - 1
            j = opener - 1
            continue
        # Any other token (operator, keyword, semicolon) bounds the expression.
        return j + 1
    return 0


def _scan_calls(
    source: str,
    tokens: list[Token],
    match: dict[int, int],
    parent: list[int],
    interface_braces: set[int],
) -> list[GoCall]:
    calls: list[GoCall] = []
    for i, tok in enumerate(tokens):
        if tok.kind != "op" or tok.text != "(" or i == 0:
            continue
        prev = tokens[i - 1]
        if not (
            prev.kind == "ident"
            or (prev.kind == "op" and prev.text in (")", "]", "}"))
        ):
            continue
        if parent[i] in interface_braces:
            continue  # interface method specification
        start = _classify_call(tokens, match, i)
        if start is None:
            continue
        name = None
        is_selector = False
        qualifier = None
        callee_text = None
        receiver_text = None
        receiver_is_ident = False
        if prev.kind == "ident":
            prev2 = tokens[i - 2] if i >= 2 else None
            juxtaposed = prev2 is not None and (
                prev2.kind == "ident"
                or prev2.kind in _LITERAL_KINDS
                or (prev2.kind == "op" and prev2.text in (")", "]", "}"))
            )
            if not juxtaposed:
                name = prev.text
                callee_text = _squash(source[tokens[start].off : tok.off])
                if prev2 is not None and prev2.kind == "op" and prev2.text == ".":
                    is_selector = True
                    receiver_text = _squash(source[tokens[start].off : prev2.off])
                    receiver_is_ident = (
                        start == i - 3 and tokens[start].kind == "ident"
                    )
                    if receiver_is_ident and (
                        start == 0
                        or not (
                            tokens[start - 1].kind == "op"
                            and tokens[start - 1].text == "."
                        )
                    ):
                        qualifier = tokens[start].text
        anchor = tokens[start]
        calls.append(
            GoCall(
                open_idx=i,
                line=anchor.line,
                col=anchor.col,
                name=name,
                is_selector=is_selector,
                qualifier=qualifier,
                callee_text=callee_text,
                receiver_text=receiver_text,
                receiver_is_ident=receiver_is_ident,
            )
        )
    return calls


def _split_semis(tokens: list[Token], lo: int, hi: int, depth: list[int], level: int):
    """Yield (start, end) token ranges between level-depth semicolons."""
    start = lo
    i = lo
    while i < hi:
        tok = tokens[i]
        if depth[i] == level and tok.kind == "op" and tok.text == ";":
            if i > start:
                yield (start, i)
            start = i + 1
        i += 1
    if hi > start:
        yield (start, hi)


def _receiver_base(tokens: list[Token], lo: int, hi: int) -> str | None:
    toks = tokens[lo:hi]
    if not toks:
        return None
    if (
        len(toks) > 1
        and toks[0].kind == "ident"
        and (toks[1].kind == "ident" or toks[1].text == "*")
    ):
        toks = toks[1:]  # drop the receiver variable name
    for tok in toks:
        if tok.kind == "ident":
            return tok.text
    return None


def _parse_import_spec(tokens: list[Token], lo: int, hi: int) -> GoImport | None:
    alias = None
    i = lo
    if i < hi and (
        tokens[i].kind == "ident" or (tokens[i].kind == "op" and tokens[i].text == ".")
    ):
        alias = tokens[i].text
        i += 1
    if i < hi and tokens[i].kind == "string":
        anchor = tokens[lo]
        return GoImport(
            path=tokens[i].text[1:-1], alias=alias, line=anchor.line, col=anchor.col
        )
    return None


def _parse_var_spec(
    tokens: list[Token], lo: int, hi: int, depth: list[int], level: int
) -> GoVarSpec | None:
    names = []
    i = lo
    while i < hi and tokens[i].kind == "ident":
        names.append(tokens[i].text)
        if i + 1 < hi and tokens[i + 1].kind == "op" and tokens[i + 1].text == ",":
            i += 2
        else:
            i += 1
            break
    if not names:
        return None
    rhs = None
    for k in range(i, hi):
        if depth[k] == level and tokens[k].kind == "op" and tokens[k].text == "=":
            rhs = (k + 1, hi)
            break
    anchor = tokens[lo]
    return GoVarSpec(names=names, line=anchor.line, col=anchor.col, rhs_range=rhs)


def parse_go_source(src: str) -> GoFile:
    """Parse one Go file into its structural model.

    Raises GoSyntaxError for lexical errors, unbalanced brackets, or a
    missing package clause; anything bracket-balanced beyond that is
    accepted (analysis should survive unusual but well-formed files).
    """
    tokens, comments = tokenize(src)
    match, depth, parent, interface_braces = _match_brackets(tokens)

    if not tokens or not (tokens[0].kind == "kw" and tokens[0].text == "package"):
        at = tokens[0] if tokens else None
        raise GoSyntaxError(
            "expected package clause", at.line if at else 1, at.col if at else 1
        )
    if len(tokens) < 2 or tokens[1].kind != "ident":
        raise GoSyntaxError("malformed package clause", tokens[0].line, tokens[0].col)

    gofile = GoFile(
        source=src,
        package_name=tokens[1].text,
        package_line=tokens[0].line,
        tokens=tokens,
        match=match,
        comments=comments,
    )
    gofile.generated = any(
        c.line < gofile.package_line and _GENERATED_RE.match(c.text)
        for c in comments
    )

    for lo, hi in _split_semis(tokens, 0, len(tokens), depth, 0):
        head = tokens[lo]
        if head.kind != "kw":
            continue
        if head.text == "import":
            if lo + 1 < hi and tokens[lo + 1].text == "(" and tokens[lo + 1].kind == "op":
                close = match[lo + 1]
                for s, e in _split_semis(tokens, lo + 2, close, depth, depth[lo] + 1):
                    imp = _parse_import_spec(tokens, s, e)
                    if imp:
                        gofile.imports.append(imp)
            else:
                imp = _parse_import_spec(tokens, lo + 1, hi)
                if imp:
                    gofile.imports.append(imp)
        elif head.text == "func":
            j = lo + 1
            recv_base = None
            if j < hi and tokens[j].kind == "op" and tokens[j].text == "(":
                recv_base = _receiver_base(tokens, j + 1, match[j])
                j = match[j] + 1
            if j < hi and tokens[j].kind == "ident":
                gofile.funcs.append(
                    GoFuncDecl(
                        name=tokens[j].text,
                        recv_base=recv_base,
                        line=head.line,
                        col=head.col,
                    )
                )
        elif head.text == "var":
            if lo + 1 < hi and tokens[lo + 1].text == "(" and tokens[lo + 1].kind == "op":
                close = match[lo + 1]
                for s, e in _split_semis(tokens, lo + 2, close, depth, depth[lo] + 1):
                    spec = _parse_var_spec(tokens, s, e, depth, depth[lo] + 1)
                    if spec:
                        gofile.var_specs.append(spec)
            else:
                spec = _parse_var_spec(tokens, lo + 1, hi, depth, 0)
                if spec:
                    gofile.var_specs.append(spec)

    gofile.calls = _scan_calls(src, tokens, match, parent, interface_braces)
    return gofile
