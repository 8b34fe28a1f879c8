"""
Parser for structure files.

A structure file is a sequence of named declarations:

    # comments run to the end of the line
    heap H4 {
        group Z4;
    }
    truss T39 {
        carrier 3 9;
        bracket 3 3 | 3 9;
        ...
        mul 3 | 9 3;
        mul 9 | 3 9;
        unit 9;
    }

Each statement is a keyword followed by arguments, and, for table rows, a `|`
followed by the values of the row (one per carrier element, in carrier order).
Parsing produces a `StructureFile` of `Declaration`s; materializing it into
validated structures is the job of `trussalg.dsl.builder`.
"""

import re
from collections import OrderedDict

from trussalg.errors import StructureSyntaxError

DECLARATION_KEYWORDS = (
    "group",
    "heap",
    "ring",
    "truss",
    "module",
    "pointed",
    "hom",
    "morphism",
    "fork",
    "sequence",
)

TOKEN_MATCHER = re.compile(
    r"(?P<comment>#[^\n]*)"
    r"|(?P<newline>\n)"
    r"|(?P<space>[ \t\r]+)"
    r"|(?P<punct>[{};|])"
    r"|(?P<word>[^\s{};|#]+)"
)


class Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind}, {self.value!r}, {self.line}:{self.col})"


def tokenize(text, filename=None):
    """
    Split structure file text into `word` and `punct` tokens, dropping
    whitespace and comments.

    Raises:
        StructureSyntaxError: On characters no token can start with.
    """
    line, line_start, pos = 1, 0, 0
    lines = text.split("\n")
    while pos < len(text):
        match = TOKEN_MATCHER.match(text, pos)
        if match is None:
            raise StructureSyntaxError(
                f"Unexpected character {text[pos]!r}.",
                line,
                pos - line_start + 1,
                text=lines[line - 1],
                filename=filename,
            )
        kind = match.lastgroup
        if kind == "newline":
            line, line_start = line + 1, match.end()
        elif kind in ("word", "punct"):
            yield Token(kind, match.group(), line, pos - line_start + 1)
        pos = match.end()


class Statement:
    """
    One statement of a declaration.

    Attributes:
        keyword (str): The leading word.
        args (list<str>): The words between the keyword and `|` (or `;`).
        values (list<str>, None): The words after `|`, for table rows.
    """

    __slots__ = ("keyword", "args", "values", "line", "col")

    def __init__(self, keyword, args, values=None, line=None, col=None):
        self.keyword = keyword
        self.args = list(args)
        self.values = None if values is None else list(values)
        self.line = line
        self.col = col

    def __repr__(self):
        row = f" | {' '.join(self.values)}" if self.values is not None else ""
        return f"{' '.join([self.keyword] + self.args)}{row};"


class Declaration:
    """
    A named declaration of a structure file.

    Attributes:
        kind (str): The declaration keyword (`heap`, `truss`, `morphism`, ...).
        name (str): The declared name.
        statements (list<Statement>): The statements, in file order.
    """

    def __init__(self, kind, name, statements=None, line=None, col=None):
        self.kind = kind
        self.name = name
        self.statements = list(statements or [])
        self.line = line
        self.col = col

    def __repr__(self):
        return f"<Declaration {self.kind} {self.name} ({len(self.statements)} statements)>"

    def get(self, keyword):
        """list<Statement>: The statements with the given keyword."""
        return [s for s in self.statements if s.keyword == keyword]

    def single(self, keyword):
        """The unique statement with the given keyword, or `None`."""
        found = self.get(keyword)
        if len(found) > 1:
            s = found[1]
            raise StructureSyntaxError(f"Repeated `{keyword}` in `{self.name}`.", s.line, s.col)
        return found[0] if found else None

    @property
    def keywords(self):
        return {s.keyword for s in self.statements}


class StructureFile:
    """The declarations of a structure file, by name, in file order."""

    def __init__(self, declarations=None, filename=None):
        self.declarations = OrderedDict()
        self.filename = filename
        for declaration in declarations or []:
            self.add(declaration)

    def add(self, declaration):
        if declaration.name in self.declarations:
            raise StructureSyntaxError(
                f"`{declaration.name}` is declared twice.",
                declaration.line,
                declaration.col,
                filename=self.filename,
            )
        self.declarations[declaration.name] = declaration

    @property
    def names(self):
        return list(self.declarations)

    def __iter__(self):
        return iter(self.declarations.values())

    def __len__(self):
        return len(self.declarations)

    def __getitem__(self, name):
        return self.declarations[name]


class Parser:
    def __init__(self, text, filename=None):
        self.text = text
        self.filename = filename
        self.lines = text.split("\n")
        self.tokens = list(tokenize(text, filename=filename))
        self.pos = 0

    def _error(self, message, token=None):
        if token is None:
            line = len(self.lines)
            col = len(self.lines[-1]) + 1
        else:
            line, col = token.line, token.col
        return StructureSyntaxError(
            message, line, col, text=self.lines[line - 1], filename=self.filename
        )

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self, expected=None):
        token = self._peek()
        if token is None:
            raise self._error(f"Unexpected end of file{f', expected `{expected}`' if expected else ''}.")
        if expected is not None and token.value != expected:
            raise self._error(f"Expected `{expected}`, found `{token.value}`.", token)
        self.pos += 1
        return token

    def _word(self, what):
        token = self._next()
        if token.kind != "word":
            raise self._error(f"Expected {what}, found `{token.value}`.", token)
        return token

    def parse(self):
        out = StructureFile(filename=self.filename)
        while self._peek() is not None:
            out.add(self._declaration())
        return out

    def _declaration(self):
        head = self._word("a declaration keyword")
        if head.value not in DECLARATION_KEYWORDS:
            raise self._error(
                f"Unknown declaration keyword `{head.value}` (expected one of {', '.join(DECLARATION_KEYWORDS)}).",
                head,
            )
        name = self._word("a name")
        self._next("{")
        statements = []
        while True:
            token = self._peek()
            if token is None:
                raise self._error(f"Unterminated declaration `{name.value}`, expected `}}`.")
            if token.value == "}":
                self._next()
                break
            statements.append(self._statement())
        return Declaration(head.value, name.value, statements, line=head.line, col=head.col)

    def _statement(self):
        keyword = self._word("a statement keyword")
        args, values = [], None
        while True:
            token = self._next(None)
            if token.value == ";":
                break
            if token.value == "|":
                if values is not None:
                    raise self._error("Only one `|` is allowed per row.", token)
                values = []
            elif token.kind == "word":
                (args if values is None else values).append(token.value)
            else:
                raise self._error(f"Unexpected `{token.value}`, expected `;`.", token)
        return Statement(keyword.value, args, values, line=keyword.line, col=keyword.col)


def parse(text, filename=None):
    """
    Parse structure file text into declarations (without materializing them).

    Args:
        text (str): The file content.
        filename (str, None): Used in diagnostics.

    Returns:
        StructureFile: The declarations.

    Raises:
        StructureSyntaxError: With line and column of the offending token.
    """
    return Parser(text, filename=filename).parse()
