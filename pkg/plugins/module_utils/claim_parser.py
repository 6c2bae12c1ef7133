"""
Claim files: series definitions, identities and congruences over eta-quotients.

One statement per line::

    # comment
    series D = f1^2*f2^2*f3^2*f6^2
    identity "CP3 odd part": extract(CP3, 2, 1) == 2*f2^2*f3^8*f6^2/f1^4
    congruence "mod 8": CP3[8*n+3] == 0 mod 8
    internal "parity": CP3[3*n+1] == CP3[n-1] mod 2
"""

import re
import threading
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Union

from .congruence import SeriesCache, is_builtin
from .dissection import extract, huff
from .eta_engine import EtaQuotientSpec, eta_quotient
from .qseries_errors import ArityError, ClaimSyntaxError, InsufficientOrder, UnknownName
from .series_core import (
    AUTO,
    LaurentSeries,
    add,
    divide,
    mul,
    negate,
    power,
    scale,
    shift,
    substitute_qk,
    subtract,
    truncate,
    zero,
)

FUNCTION_ARITY = {'extract': 3, 'huff': 2, 'subst': 2}
KEYWORDS = ('series', 'identity', 'congruence', 'internal')
MAX_EVALUATION_PASSES = 8

_ETA_NAME = re.compile(r'^f(\d+)$')
_TOKEN = re.compile(r'''
    (?P<space>[ \t\r]+)
  | (?P<number>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<op>==|[-+*/^(),\[\]:=])
''', re.VERBOSE)


# Expression tree

class SeriesExpr:
    """Base of the expression node types."""


@dataclass(frozen=True)
class EtaFactor(SeriesExpr):
    m: int


@dataclass(frozen=True)
class QPower(SeriesExpr):
    j: int


@dataclass(frozen=True)
class IntConst(SeriesExpr):
    value: int


@dataclass(frozen=True)
class NamedRef(SeriesExpr):
    name: str


@dataclass(frozen=True)
class Neg(SeriesExpr):
    operand: SeriesExpr


@dataclass(frozen=True)
class Add(SeriesExpr):
    left: SeriesExpr
    right: SeriesExpr


@dataclass(frozen=True)
class Sub(SeriesExpr):
    left: SeriesExpr
    right: SeriesExpr


@dataclass(frozen=True)
class Mul(SeriesExpr):
    left: SeriesExpr
    right: SeriesExpr


@dataclass(frozen=True)
class Div(SeriesExpr):
    left: SeriesExpr
    right: SeriesExpr


@dataclass(frozen=True)
class Pow(SeriesExpr):
    base: SeriesExpr
    exponent: int


@dataclass(frozen=True)
class Extract(SeriesExpr):
    expr: SeriesExpr
    k: int
    r: int


@dataclass(frozen=True)
class Huff(SeriesExpr):
    expr: SeriesExpr
    k: int


@dataclass(frozen=True)
class Subst(SeriesExpr):
    expr: SeriesExpr
    k: int


# Statements

@dataclass(frozen=True)
class SeriesDefinition:
    name: str
    expr: SeriesExpr
    line: int = 0


@dataclass(frozen=True)
class IdentityClaim:
    label: str
    lhs: SeriesExpr
    rhs: SeriesExpr
    line: int = 0

    kind = 'identity'


@dataclass(frozen=True)
class CongruenceStatement:
    label: str
    name: str
    step: int
    offset: int
    modulus: int
    line: int = 0

    kind = 'congruence'


@dataclass(frozen=True)
class InternalStatement:
    label: str
    name: str
    step: int
    offset: int
    other_step: int
    other_offset: int
    modulus: int
    line: int = 0

    kind = 'internal'


Statement = Union[SeriesDefinition, IdentityClaim, CongruenceStatement, InternalStatement]


class ClaimFile:
    def __init__(self, statements: Iterable[Statement] = ()):
        self.statements: List[Statement] = list(statements)

    @property
    def definitions(self) -> Dict[str, SeriesExpr]:
        return {s.name: s.expr for s in self.statements if isinstance(s, SeriesDefinition)}

    @property
    def claims(self) -> list:
        return [s for s in self.statements if not isinstance(s, SeriesDefinition)]

    @property
    def labels(self) -> List[str]:
        return [claim.label for claim in self.claims]

    def __len__(self):
        return len(self.statements)

    def __eq__(self, other):
        if not isinstance(other, ClaimFile):
            return NotImplemented
        return [_without_line(s) for s in self.statements] == [_without_line(s) for s in other.statements]

    def __repr__(self):
        return f"ClaimFile({len(self.statements)} statements)"


def _without_line(statement):
    fields = dict(statement.__dict__)
    fields.pop('line', None)
    return type(statement).__name__, fields


# Rendering

_PRECEDENCE = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}


def render_expression(expr: SeriesExpr, required: int = 0) -> str:
    precedence = _PRECEDENCE.get(type(expr), 5)
    if isinstance(expr, EtaFactor):
        text = f"f{expr.m}"
    elif isinstance(expr, QPower):
        text = 'q' if expr.j == 1 else f"q^{expr.j}"
        precedence = 5 if expr.j == 1 else 4
    elif isinstance(expr, IntConst):
        text = str(expr.value)
    elif isinstance(expr, NamedRef):
        text = expr.name
    elif isinstance(expr, Neg):
        text = '-' + render_expression(expr.operand, 3)
    elif isinstance(expr, (Add, Sub)):
        op = '+' if isinstance(expr, Add) else '-'
        text = f"{render_expression(expr.left, 1)} {op} {render_expression(expr.right, 2)}"
    elif isinstance(expr, (Mul, Div)):
        op = '*' if isinstance(expr, Mul) else '/'
        text = f"{render_expression(expr.left, 2)}{op}{render_expression(expr.right, 3)}"
    elif isinstance(expr, Pow):
        text = f"{render_expression(expr.base, 5)}^{expr.exponent}"
    elif isinstance(expr, Extract):
        text = f"extract({render_expression(expr.expr)}, {expr.k}, {expr.r})"
    elif isinstance(expr, Huff):
        text = f"huff({render_expression(expr.expr)}, {expr.k})"
    elif isinstance(expr, Subst):
        text = f"subst({render_expression(expr.expr)}, {expr.k})"
    else:
        raise TypeError(f"Not a series expression: {expr!r}")
    return f"({text})" if precedence < required else text


def _progression(name: str, step: int, offset: int) -> str:
    sign = '-' if offset < 0 else '+'
    return f"{name}[{step}*n{sign}{abs(offset)}]"


def render_statement(statement: Statement) -> str:
    if isinstance(statement, SeriesDefinition):
        return f"series {statement.name} = {render_expression(statement.expr)}"
    if isinstance(statement, IdentityClaim):
        return (f'identity "{statement.label}": '
                f"{render_expression(statement.lhs)} == {render_expression(statement.rhs)}")
    if isinstance(statement, CongruenceStatement):
        return (f'congruence "{statement.label}": '
                f"{_progression(statement.name, statement.step, statement.offset)} == 0 mod {statement.modulus}")
    if isinstance(statement, InternalStatement):
        return (f'internal "{statement.label}": '
                f"{_progression(statement.name, statement.step, statement.offset)} == "
                f"{_progression(statement.name, statement.other_step, statement.other_offset)} "
                f"mod {statement.modulus}")
    raise TypeError(f"Not a statement: {statement!r}")


def render(claim_file: ClaimFile) -> str:
    return ''.join(render_statement(s) + '\n' for s in claim_file.statements)


# Parsing

@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1) -> List[Token]:
    """Tokens of one line; the caller strips comments."""
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if not match:
            raise ClaimSyntaxError(f"unexpected character {text[position]!r}", line, position + 1)
        kind = match.lastgroup
        if kind != 'space':
            tokens.append(Token(kind, match.group(), line, position + 1))
        position = match.end()
    tokens.append(Token('end', '', line, len(text) + 1))
    return tokens


def _strip_comment(text: str) -> str:
    in_string = False
    for i, ch in enumerate(text):
        if ch == '"':
            in_string = not in_string
        elif ch == '#' and not in_string:
            return text[:i]
    return text


class _LineParser:
    def __init__(self, tokens: List[Token], resolve: Callable[[str], bool]):
        self.tokens = tokens
        self.position = 0
        self.resolve = resolve

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def advance(self) -> Token:
        token = self.tokens[self.position]
        if token.kind != 'end':
            self.position += 1
        return token

    def fail(self, message, expected=None, token=None):
        token = token or self.current
        raise ClaimSyntaxError(message, token.line, token.column, expected)

    def at(self, text: str) -> bool:
        return self.current.kind in ('op', 'name') and self.current.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"unexpected {self.describe(self.current)}", {f"'{text}'"})
        return self.advance()

    def expect_kind(self, kind: str, expected: str) -> Token:
        if self.current.kind != kind:
            self.fail(f"unexpected {self.describe(self.current)}", {expected})
        return self.advance()

    def expect_end(self):
        if self.current.kind != 'end':
            self.fail(f"unexpected {self.describe(self.current)}", {'end of line'})

    @staticmethod
    def describe(token: Token) -> str:
        return 'end of line' if token.kind == 'end' else repr(token.text)

    def signed_integer(self) -> int:
        negative = False
        if self.at('-'):
            self.advance()
            negative = True
        value = int(self.expect_kind('number', 'integer').text)
        return -value if negative else value

    def expression(self) -> SeriesExpr:
        node = self.term()
        while self.at('+') or self.at('-'):
            op = self.advance().text
            right = self.term()
            node = Add(node, right) if op == '+' else Sub(node, right)
        return node

    def term(self) -> SeriesExpr:
        node = self.factor()
        while self.at('*') or self.at('/'):
            op = self.advance().text
            right = self.factor()
            node = Mul(node, right) if op == '*' else Div(node, right)
        return node

    def factor(self) -> SeriesExpr:
        if self.at('-'):
            self.advance()
            return Neg(self.factor())
        bare_q = self.at('q')
        base = self.atom()
        if not self.at('^'):
            return base
        self.advance()
        exponent = self.signed_integer()
        if bare_q:
            return QPower(exponent)
        return Pow(base, exponent)

    def atom(self) -> SeriesExpr:
        token = self.current
        if token.kind == 'number':
            self.advance()
            return IntConst(int(token.text))
        if token.kind == 'op' and token.text == '(':
            self.advance()
            node = self.expression()
            self.expect(')')
            return node
        if token.kind != 'name':
            self.fail(f"unexpected {self.describe(token)}",
                      {'integer', 'q', 'f<scale>', 'name', "'('", "'-'"} | set(FUNCTION_ARITY))
        self.advance()
        if token.text == 'q':
            return QPower(1)
        eta = _ETA_NAME.match(token.text)
        if eta:
            scale_ = int(eta.group(1))
            if scale_ < 1:
                self.fail("Euler factor scale must be positive", token=token)
            return EtaFactor(scale_)
        if token.text in FUNCTION_ARITY and self.at('('):
            return self.call(token)
        if not self.resolve(token.text):
            raise UnknownName(token.text, token.line, token.column)
        return NamedRef(token.text)

    def call(self, name: Token) -> SeriesExpr:
        self.expect('(')
        args = [self.expression()]
        while self.at(','):
            self.advance()
            args.append(self.expression())
        self.expect(')')
        expected = FUNCTION_ARITY[name.text]
        if len(args) != expected:
            raise ArityError(name.text, expected, len(args), name.line, name.column)
        params = []
        for arg in args[1:]:
            if not isinstance(arg, IntConst):
                self.fail(f"{name.text}() parameters must be integer literals", token=name)
            params.append(arg.value)
        if params[0] < 1:
            self.fail(f"{name.text}() step must be positive", token=name)
        if name.text == 'extract':
            k, r = params
            if not 0 <= r < k:
                self.fail(f"extract() residue {r} is outside 0..{k - 1}", token=name)
            return Extract(args[0], k, r)
        if name.text == 'huff':
            return Huff(args[0], params[0])
        return Subst(args[0], params[0])

    def progression(self) -> Tuple[Token, int, int]:
        """NAME[A*n+B]; A defaults to 1 and B to 0."""
        name = self.expect_kind('name', 'name')
        if not self.resolve(name.text):
            raise UnknownName(name.text, name.line, name.column)
        self.expect('[')
        step = 1
        if self.current.kind == 'number':
            step = int(self.advance().text)
            if self.at('*'):
                self.advance()
        self.expect('n')
        offset = 0
        if self.at('+') or self.at('-'):
            sign = -1 if self.advance().text == '-' else 1
            offset = sign * int(self.expect_kind('number', 'integer').text)
        self.expect(']')
        if step < 1:
            self.fail("progression step must be positive", token=name)
        return name, step, offset

    def modulus(self) -> int:
        self.expect('mod')
        token = self.expect_kind('number', 'integer')
        value = int(token.text)
        if value < 2:
            self.fail("modulus must be at least 2", token=token)
        return value


class ClaimParser:
    """Parses claim files; names resolve against earlier definitions and the catalog."""

    def __init__(self, debug_callback: Optional[Callable[[str], None]] = None):
        self.debug_callback = debug_callback

    def debug(self, message):
        if self.debug_callback:
            self.debug_callback(message)

    def parse(self, text: str) -> ClaimFile:
        defined: Dict[str, int] = {}
        labels: Dict[str, int] = {}
        statements: List[Statement] = []

        def resolve(name):
            return name in defined or is_builtin(name)

        for number, raw in enumerate(text.splitlines(), start=1):
            body = _strip_comment(raw)
            if not body.strip():
                continue
            parser = _LineParser(tokenize(body, number), resolve)
            statement = self._statement(parser, defined)
            if isinstance(statement, SeriesDefinition):
                defined[statement.name] = number
            else:
                if statement.label in labels:
                    raise ClaimSyntaxError(
                        f"duplicate label '{statement.label}' (first used on line {labels[statement.label]})",
                        number, 1)
                labels[statement.label] = number
            statements.append(statement)

        self.debug(f"Parsed {len(statements)} statements ({len(labels)} claims)")
        return ClaimFile(statements)

    def parse_expression(self, text: str, names: Iterable[str] = ()) -> SeriesExpr:
        known = set(names)
        parser = _LineParser(tokenize(_strip_comment(text)), lambda n: n in known or is_builtin(n))
        node = parser.expression()
        parser.expect_end()
        return node

    def _statement(self, parser: _LineParser, defined: Dict[str, int]) -> Statement:
        keyword = parser.current
        if keyword.kind != 'name' or keyword.text not in KEYWORDS:
            parser.fail(f"unexpected {parser.describe(keyword)}", {f"'{k}'" for k in KEYWORDS})
        parser.advance()
        line = keyword.line

        if keyword.text == 'series':
            name = parser.expect_kind('name', 'name')
            if (name.text == 'q' or _ETA_NAME.match(name.text) or name.text in FUNCTION_ARITY
                    or name.text in KEYWORDS or name.text in ('n', 'mod')):
                parser.fail(f"'{name.text}' is reserved", token=name)
            if name.text in defined or is_builtin(name.text):
                parser.fail(f"series '{name.text}' is already defined", token=name)
            parser.expect('=')
            expr = parser.expression()
            parser.expect_end()
            return SeriesDefinition(name.text, expr, line)

        label = parser.expect_kind('string', 'quoted label').text[1:-1]
        parser.expect(':')

        if keyword.text == 'identity':
            lhs = parser.expression()
            parser.expect('==')
            rhs = parser.expression()
            parser.expect_end()
            return IdentityClaim(label, lhs, rhs, line)

        name, step, offset = parser.progression()
        if offset < 0:
            parser.fail("offset must be nonnegative", token=name)
        parser.expect('==')

        if keyword.text == 'congruence':
            value = parser.expect_kind('number', '0')
            if value.text != '0':
                parser.fail("congruence right-hand side must be 0", {'0'}, token=value)
            modulus = parser.modulus()
            parser.expect_end()
            if offset >= step:
                parser.fail(f"offset {offset} is outside 0..{step - 1}", token=name)
            return CongruenceStatement(label, name.text, step, offset, modulus, line)

        other, other_step, other_offset = parser.progression()
        if other.text != name.text:
            parser.fail("internal congruence must compare one series with itself", {f"'{name.text}'"}, token=other)
        if other_offset < -1:
            parser.fail("second offset must be at least -1", token=other)
        modulus = parser.modulus()
        parser.expect_end()
        return InternalStatement(label, name.text, step, offset, other_step, other_offset, modulus, line)


def parse(text: str) -> ClaimFile:
    return ClaimParser().parse(text)


def parse_expression(text: str, names: Iterable[str] = ()) -> SeriesExpr:
    return ClaimParser().parse_expression(text, names)


# Evaluation

def eta_monomial(expr: SeriesExpr) -> Optional[Tuple[int, int, EtaQuotientSpec]]:
    """(c, j, spec) when expr is c * q^j * prod f_m^e, else None."""
    if isinstance(expr, EtaFactor):
        return 1, 0, EtaQuotientSpec([(expr.m, 1)])
    if isinstance(expr, QPower):
        return 1, expr.j, EtaQuotientSpec()
    if isinstance(expr, IntConst):
        return expr.value, 0, EtaQuotientSpec()
    if isinstance(expr, Neg):
        inner = eta_monomial(expr.operand)
        return None if inner is None else (-inner[0], inner[1], inner[2])
    if isinstance(expr, (Mul, Div)):
        left, right = eta_monomial(expr.left), eta_monomial(expr.right)
        if left is None or right is None:
            return None
        if isinstance(expr, Mul):
            return left[0] * right[0], left[1] + right[1], left[2] * right[2]
        if right[0] not in (1, -1):
            return None
        return left[0] * right[0], left[1] - right[1], left[2] * right[2].inverse()
    if isinstance(expr, Pow):
        base = eta_monomial(expr.base)
        if base is None or (expr.exponent < 0 and base[0] not in (1, -1)):
            return None
        return base[0] ** abs(expr.exponent), base[1] * expr.exponent, base[2] ** expr.exponent
    return None


class SeriesEvaluator:
    """Evaluates expressions against file definitions and the built-in catalog.

    Each call returns a series trusted exactly below the requested order;
    subexpressions with negative valuation are recomputed at a higher working
    order until that holds.
    """

    def __init__(self, definitions: Optional[Dict[str, SeriesExpr]] = None,
                 cache: Optional[SeriesCache] = None, multiplication: str = AUTO,
                 debug_callback: Optional[Callable[[str], None]] = None):
        self.definitions = dict(definitions or {})
        self.cache = cache if cache is not None else SeriesCache()
        self.multiplication = multiplication
        self.debug_callback = debug_callback
        self._named: Dict[Tuple[str, int], LaurentSeries] = {}
        self._lock = threading.Lock()

    def debug(self, message):
        if self.debug_callback:
            self.debug_callback(message)

    def __call__(self, expr: SeriesExpr, order: int) -> LaurentSeries:
        return self.evaluate(expr, order)

    def evaluate(self, expr: SeriesExpr, order: int) -> LaurentSeries:
        if order < 1:
            raise ValueError(f"Order must be positive, got {order}")
        working = order
        for _ in range(MAX_EVALUATION_PASSES):
            result = self._eval(expr, working)
            if result.order >= order:
                return truncate(result, order) if result.order > order else result
            self.debug(f"Working order {working} trusted only to {result.order}; retrying")
            working += order - result.order
        raise InsufficientOrder(order, result.order, 'expression')

    def named(self, name: str, order: int) -> LaurentSeries:
        if name in self.definitions:
            key = (name, order)
            with self._lock:
                cached = self._named.get(key)
            if cached is None:
                cached = self._eval(self.definitions[name], order)
                with self._lock:
                    self._named[key] = cached
            return cached
        if is_builtin(name):
            return self.cache.get(name, order)
        raise UnknownName(name)

    def _eval(self, expr: SeriesExpr, order: int) -> LaurentSeries:
        monomial_ = eta_monomial(expr)
        if monomial_ is not None:
            coefficient, exponent, spec = monomial_
            if coefficient == 0 or exponent >= order:
                return zero(order)
            return scale(shift(eta_quotient(spec, order - exponent), exponent), coefficient)

        if isinstance(expr, NamedRef):
            return self.named(expr.name, order)
        if isinstance(expr, Neg):
            return negate(self._eval(expr.operand, order))
        if isinstance(expr, Add):
            return add(self._eval(expr.left, order), self._eval(expr.right, order))
        if isinstance(expr, Sub):
            return subtract(self._eval(expr.left, order), self._eval(expr.right, order))
        if isinstance(expr, Mul):
            return mul(self._eval(expr.left, order), self._eval(expr.right, order), self.multiplication)
        if isinstance(expr, Div):
            return divide(self._eval(expr.left, order), self._eval(expr.right, order))
        if isinstance(expr, Pow):
            return power(self._eval(expr.base, order), expr.exponent, self.multiplication)
        if isinstance(expr, Extract):
            return extract(self._eval(expr.expr, expr.k * order + expr.r), expr.k, expr.r)
        if isinstance(expr, Huff):
            return huff(self._eval(expr.expr, order), expr.k)
        if isinstance(expr, Subst):
            return substitute_qk(self._eval(expr.expr, -(-order // expr.k)), expr.k)
        raise TypeError(f"Not a series expression: {expr!r}")


def evaluate(expr: SeriesExpr, order: int, env: Optional[Dict[str, SeriesExpr]] = None) -> LaurentSeries:
    return SeriesEvaluator(env).evaluate(expr, order)
