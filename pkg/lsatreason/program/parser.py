"""Recursive descent parser for constraint programs.

Grammar (keywords and function names are case-insensitive):

    program   = expr EOF
    expr      = "IF" expr "THEN" expr | disj
    disj      = conj { "OR" conj }
    conj      = neg { "AND" neg }
    neg       = "NOT" neg | cmp
    cmp       = sum [ ("=" | "!=" | "<" | ">" | "<=" | ">=") sum ]
    sum       = primary { ("+" | "-") primary }
    primary   = INT | "(" expr ")" | call | name
    call      = FUNC "(" [ arg { "," arg } ] ")"
    arg       = name | expr | boolset | set
    boolset   = "{" expr { "," expr } "}"
    set       = "{" [ name { "," name } ] "}" | "SELECT" "(" name ")"
    name      = IDENT | STRING | INT

Names that are not plain identifiers, or that collide with a keyword or a
function name, are written as double-quoted strings. `IF a THEN b` is sugar
for `IfThen({a}, {b})`; `≠`, `≤`, `≥` and `<>` are accepted as comparator
spellings. Program files hold one program per line; `#` starts a comment.
"""

import re
from dataclasses import dataclass
from typing import Optional

from ..errors import ProgramSyntaxError, ProgramTypeError
from .ast import (
    And,
    Arith,
    Compare,
    Const,
    ExprType,
    FunctionKind,
    IfThen,
    Node,
    Not,
    Or,
    ParticipantRef,
    ParticipantSet,
    Select,
)

_TOKEN_SPEC = [
    ("COMMENT", r"\#[^\n]*"),
    ("NEWLINE", r"\n"),
    ("SPACE", r"[ \t\r]+"),
    ("INT", r"\d+"),
    ("STRING", r'"(?:[^"\\\n]|\\.)*"'),
    ("IDENT", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r"<=|>=|!=|<>|≠|≤|≥|=|<|>|\+|-|\(|\)|\{|\}|,"),
    ("MISMATCH", r"."),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))

_COMPARATORS = {
    "=": FunctionKind.EQ,
    "!=": FunctionKind.NE,
    "<>": FunctionKind.NE,
    "≠": FunctionKind.NE,
    "<": FunctionKind.LT,
    ">": FunctionKind.GT,
    "<=": FunctionKind.LE,
    "≤": FunctionKind.LE,
    ">=": FunctionKind.GE,
    "≥": FunctionKind.GE,
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    @property
    def upper(self) -> str:
        return self.text.upper() if self.kind == "IDENT" else ""


def tokenize(text: str) -> list[Token]:
    """
    Splits program text into tokens, dropping whitespace and comments.

    Args:
        text (str): Program text.

    Returns:
        list[Token]: The tokens followed by an EOF token.

    Raises:
        ProgramSyntaxError: On a character that starts no token.
    """
    tokens = []
    line, line_start = 1, 0
    for match in _TOKEN_RE.finditer(text):
        kind = match.lastgroup
        column = match.start() - line_start + 1
        if kind == "NEWLINE":
            line += 1
            line_start = match.end()
        elif kind == "MISMATCH":
            raise ProgramSyntaxError(f"unexpected character {match.group()!r}", line, column)
        elif kind not in ("SPACE", "COMMENT"):
            tokens.append(Token(kind, match.group(), line, column))
    tokens.append(Token("EOF", "", line, len(text) - line_start + 1))
    return tokens


def _unquote(text: str) -> str:
    return re.sub(r"\\(.)", r"\1", text[1:-1])


class Parser:
    """
    Parses one program from a token list.

    Args:
        text (str): Program text.
    """

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def next(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "EOF":
            self.pos += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ProgramSyntaxError:
        token = token or self.next
        found = "end of input" if token.kind == "EOF" else repr(token.text)
        return ProgramSyntaxError(f"{message}, found {found}", token.line, token.column)

    def accept(self, text: str) -> Optional[Token]:
        token = self.next
        if token.kind == "OP" and token.text == text:
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        token = self.accept(text)
        if token is None:
            raise self.error(f"expected {text!r}")
        return token

    def accept_keyword(self, word: str) -> Optional[Token]:
        # Keywords win over the AND(...)/OR(...)/NOT(...) call forms wherever both could apply.
        if self.next.upper == word:
            return self.advance()
        return None

    def parse(self) -> Node:
        node = self.parse_expr()
        if self.next.kind != "EOF":
            raise self.error("expected end of program")
        return node

    def parse_expr(self) -> Node:
        token = self.next
        if self.accept_keyword("IF"):
            condition = self.parse_expr()
            if not self.accept_keyword("THEN"):
                raise self.error("expected THEN")
            consequence = self.parse_expr()
            return self._build(token, IfThen, (condition,), (consequence,))
        return self.parse_disj()

    def parse_disj(self) -> Node:
        token = self.next
        operands = [self.parse_conj()]
        while self.accept_keyword("OR"):
            operands.append(self.parse_conj())
        return operands[0] if len(operands) == 1 else self._build(token, Or, tuple(operands))

    def parse_conj(self) -> Node:
        token = self.next
        operands = [self.parse_neg()]
        while self.accept_keyword("AND"):
            operands.append(self.parse_neg())
        return operands[0] if len(operands) == 1 else self._build(token, And, tuple(operands))

    def parse_neg(self) -> Node:
        token = self.next
        if self.accept_keyword("NOT"):
            return self._build(token, Not, self.parse_neg())
        return self.parse_cmp()

    def parse_cmp(self) -> Node:
        left = self.parse_sum()
        token = self.next
        if token.kind == "OP" and token.text in _COMPARATORS:
            self.advance()
            right = self.parse_sum()
            node = self._build(token, Compare, _COMPARATORS[token.text], left, right)
            after = self.next
            if after.kind == "OP" and after.text in _COMPARATORS:
                raise self.error("comparisons cannot be chained", after)
            return node
        return left

    def parse_sum(self) -> Node:
        left = self.parse_primary()
        while True:
            token = self.next
            if self.accept("+"):
                left = self._build(token, Arith, FunctionKind.PLUS, left, self.parse_primary())
            elif self.accept("-"):
                left = self._build(token, Arith, FunctionKind.MINUS, left, self.parse_primary())
            else:
                return left

    def parse_primary(self) -> Node:
        token = self.next
        if token.kind == "INT":
            self.advance()
            return Const(int(token.text))
        if self.accept("("):
            node = self.parse_expr()
            self.expect(")")
            return node
        if token.kind == "IDENT" and self.tokens[self.pos + 1].text == "(":
            return self.parse_call()
        if token.kind == "IDENT" and token.upper in ("AND", "OR", "NOT", "IF", "THEN"):
            raise self.error("expected an expression")
        if token.kind in ("IDENT", "STRING"):
            return ParticipantRef(self.parse_name())
        raise self.error("expected an expression")

    def parse_name(self) -> str:
        token = self.next
        if token.kind == "IDENT" or token.kind == "INT":
            self.advance()
            return token.text
        if token.kind == "STRING":
            self.advance()
            return _unquote(token.text)
        raise self.error("expected an entity name")

    def parse_call(self) -> Node:
        token = self.advance()
        cls = Node.lookup(token.text)
        if cls is None:
            raise self.error(f"unknown function {token.text!r}", token)
        self.expect("(")
        args = []
        for i, slot in enumerate(cls.SIGNATURE):
            if slot == "name?":
                if self.accept(","):
                    args.append(self.parse_name())
                continue
            if i > 0:
                self.expect(",")
            if slot == "name":
                args.append(self.parse_name())
            elif slot == "set":
                args.append(self.parse_set())
            elif slot == "boolset":
                args.append(self.parse_boolset())
            elif slot == "expr":
                args.append(self.parse_expr())
            elif slot == "expr*":
                operands = [self.parse_expr()]
                while self.accept(","):
                    operands.append(self.parse_expr())
                args.append(tuple(operands))
        self.expect(")")
        return self._build(token, cls, *args)

    def parse_boolset(self) -> tuple[Node, ...]:
        if not self.accept("{"):
            return (self.parse_expr(),)
        items = [self.parse_expr()]
        while self.accept(","):
            items.append(self.parse_expr())
        self.expect("}")
        return tuple(items)

    def parse_set(self) -> Node:
        token = self.next
        if token.kind == "IDENT" and token.upper == "SELECT" and self.tokens[self.pos + 1].text == "(":
            self.advance()
            self.expect("(")
            position = self.parse_name()
            self.expect(")")
            return Select(position)
        self.expect("{")
        names = []
        if not self.accept("}"):
            names.append(self.parse_name())
            while self.accept(","):
                names.append(self.parse_name())
            self.expect("}")
        return ParticipantSet(tuple(names))

    def _build(self, token: Token, cls, *args) -> Node:
        try:
            return cls(*args)
        except ProgramTypeError as e:
            raise ProgramTypeError(f"{e} (line {token.line}, column {token.column})") from None


def parse_program(text: str) -> Node:
    """
    Parses a program into a typed syntax tree.

    Entity names stay symbolic; use `evaluator.bind` to resolve them against a game.

    Args:
        text (str): Program text.

    Returns:
        Node: The Bool-typed syntax tree.

    Raises:
        ProgramSyntaxError: On malformed text, with line and column.
        ProgramTypeError: On ill-typed operands or a non-Bool program.
    """
    node = Parser(text).parse()
    if node.TYPE is not ExprType.BOOL:
        raise ProgramTypeError(f"a program must be a bool expression, got {node.TYPE.value} {node.to_text()!r}")
    return node


def print_program(ast: Node) -> str:
    """
    Prints a program in canonical form; `parse_program(print_program(ast)) == ast`.

    Args:
        ast (Node): The syntax tree.

    Returns:
        str: Canonical program text.
    """
    return ast.to_text()


def load_programs(text: str) -> list[Node]:
    """
    Reads a program file: one program per line, blank lines and `#` comments ignored.

    Args:
        text (str): File contents.

    Returns:
        list[Node]: The parsed programs in file order.

    Raises:
        ProgramSyntaxError: With the line number within the file.
    """
    programs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        try:
            if len(tokenize(line)) == 1:
                continue
            programs.append(parse_program(line))
        except ProgramSyntaxError as e:
            raise ProgramSyntaxError(e.message, lineno, e.column) from None
    return programs
