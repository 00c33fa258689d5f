"""The step-question DSL: parser, program model and the two evaluators.

A program is a straight-line, single-assignment document: unit declarations,
data and helpful-number declarations, assignment steps (each optionally
annotated with its question as a trailing % comment) and one return.

    unit min
    unit cherry
    data A = 24 min        % Alice fills the bowl in A minutes
    data B = 8 min         % Bob fills the bowl in B minutes
    helpful C = 72 cherry  % the bowl holds C cherries
    U := C / A             % What is Alice's picking speed?
    ...
    return T

Two evaluation strategies share this model.  Call-by-value executes the
steps on concrete quantities and yields a unit-checked trace; call-by-name
executes them on symbols in the rational-function engine and yields a
simplified closed-form answer, together with the helpful names that
disappeared from it and any positivity conditions picked up at division
steps.

Notation note: assignment is ``:=`` and division is always ``/`` (a bare
``:`` would collide with ``:=``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .errors import DivisionByZero, EngineError
from .scalar import ExactScalar, NestedRadical, exact_sqrt, sign
from .symbolic import (
    Polynomial,
    RationalFunction,
    SignCondition,
    Symbol,
    SymbolicRadicalUnsupported,
    strip_positive_factors,
)
from .units import (
    Quantity,
    UnitExpr,
    UnitRegistry,
    UnknownUnit,
    common_atom_choice,
    realign_unit,
)


class DslError(EngineError):
    pass


class DslSyntaxError(DslError):
    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"{message} (line {line}, column {col})")


class UseBeforeDefinition(DslError):
    pass


class Redefinition(DslError):
    pass


class MissingValue(DslError):
    """A declaration has no concrete quantity in call-by-value mode."""


class InfeasibleDivision(DslError):
    """Call-by-value division by a negative quantity: the step has no
    meaning as a question about amounts or rates (the Kevin signal)."""


class EvalError(DslError):
    """An evaluation failure tagged with the step it happened in."""

    def __init__(self, step: str, question: Optional[str], cause: EngineError):
        self.step = step
        self.question = question
        self.code = type(cause).__name__
        where = f"step {step}" + (f" ({question})" if question else "")
        super().__init__(f"{where}: {cause}")


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Lit:
    magnitude: Fraction
    unit: UnitExpr


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Sqrt:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"


Expr = Union[Lit, Var, Neg, Sqrt, BinOp]


@dataclass(frozen=True)
class UnitDecl:
    name: str


@dataclass(frozen=True)
class RateDecl:
    lhs_mag: Fraction
    lhs_atom: str
    rhs_mag: Fraction
    rhs_atom: str


@dataclass(frozen=True)
class SymbolRef:
    """A source-level symbolic value: a letter with an optional unit."""

    letter: str
    unit: UnitExpr


@dataclass(frozen=True)
class DataDecl:
    name: str
    role: str  # "data" | "helpful"
    value: Union[Lit, SymbolRef]
    label: Optional[str] = None


@dataclass(frozen=True)
class Step:
    name: str
    question: Optional[str]
    expr: Expr


def expr_variables(expr: Expr) -> set[str]:
    if isinstance(expr, Var):
        return {expr.name}
    if isinstance(expr, (Neg, Sqrt)):
        return expr_variables(expr.operand)
    if isinstance(expr, BinOp):
        return expr_variables(expr.left) | expr_variables(expr.right)
    return set()


_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


def render_expr(expr: Expr, resolve=None) -> str:
    """Expression source text; with resolve, variables print as their values
    (this is how the trace shows 6 min = 72 cherry / 12 cherry/min)."""

    def walk(e, context: int) -> str:
        if isinstance(e, Lit):
            body = str(e.magnitude)
            text = f"{body} {e.unit}" if e.unit else body
            return f"({text})" if context >= 3 and e.magnitude < 0 else text
        if isinstance(e, Var):
            if resolve is None:
                return e.name
            text = str(resolve(e.name))
            return f"({text})" if text.startswith("-") and context >= 3 else text
        if isinstance(e, Neg):
            return f"-{walk(e.operand, 3)}"
        if isinstance(e, Sqrt):
            return f"sqrt({walk(e.operand, 0)})"
        level = _PRECEDENCE[e.op]
        left = walk(e.left, level if e.op in "+-" else level)
        # right operand of - and / binds tighter
        right = walk(e.right, level + (1 if e.op in "-/" else 0))
        text = f"{left} {e.op} {right}"
        return f"({text})" if level < context else text

    return walk(expr, 0)


# ---------------------------------------------------------------------------
# lexer


_TWO_CHAR = (":=", "==")
_ONE_CHAR = "=+-*/^()"


@dataclass
class _Token:
    kind: str  # NAME INT OP NEWLINE COMMENT EOF
    text: str
    line: int
    col: int


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(source):
        ch = source[pos]
        if ch == "\n":
            tokens.append(_Token("NEWLINE", "\n", line, col))
            line += 1
            col = 1
            pos += 1
            continue
        if ch in " \t\r":
            pos += 1
            col += 1
            continue
        if ch == "%":
            start = pos
            while pos < len(source) and source[pos] != "\n":
                pos += 1
            text = source[start + 1 : pos].strip()
            tokens.append(_Token("COMMENT", text, line, col))
            col += pos - start
            continue
        if ch == ";":
            tokens.append(_Token("NEWLINE", ";", line, col))
            pos += 1
            col += 1
            continue
        if source.startswith(_TWO_CHAR[0], pos) or source.startswith(_TWO_CHAR[1], pos):
            tokens.append(_Token("OP", source[pos : pos + 2], line, col))
            pos += 2
            col += 2
            continue
        if ch == ":":
            raise DslSyntaxError(
                "unexpected ':' (assignment is ':=', division is '/')", line, col
            )
        if ch in _ONE_CHAR:
            tokens.append(_Token("OP", ch, line, col))
            pos += 1
            col += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < len(source) and source[pos].isdigit():
                pos += 1
            tokens.append(_Token("INT", source[start:pos], line, col))
            col += pos - start
            continue
        if ch.isalpha() or ch == "_":
            start = pos
            while pos < len(source) and (source[pos].isalnum() or source[pos] == "_"):
                pos += 1
            tokens.append(_Token("NAME", source[start:pos], line, col))
            col += pos - start
            continue
        raise DslSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# parser


_KEYWORDS = {"unit", "rate", "data", "helpful", "return", "sqrt"}


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.pos = 0
        self.unit_atoms: set[str] = set()

    # token plumbing

    def peek(self, offset=0) -> _Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def fail(self, message: str, tok: Optional[_Token] = None):
        tok = tok or self.peek()
        raise DslSyntaxError(message, tok.line, tok.col)

    def expect(self, kind: str, text: Optional[str] = None) -> _Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            got = tok.text or tok.kind
            self.fail(f"expected {want!r}, found {got!r}")
        return self.advance()

    def skip_newlines(self):
        while self.peek().kind == "NEWLINE":
            self.advance()

    def end_statement(self) -> Optional[str]:
        """Consume up to end of line; a trailing comment becomes the
        statement's question/label text."""
        comment = None
        if self.peek().kind == "COMMENT":
            comment = self.advance().text
        tok = self.peek()
        if tok.kind not in ("NEWLINE", "EOF"):
            self.fail(f"unexpected {tok.text!r} after statement")
        return comment

    # grammar

    def parse(self) -> "StepProgram":
        unit_decls: list[Union[UnitDecl, RateDecl]] = []
        decls: list[DataDecl] = []
        steps: list[Step] = []
        target: Optional[str] = None
        while True:
            self.skip_newlines()
            while self.peek().kind == "COMMENT":  # standalone comment line
                self.advance()
                self.skip_newlines()
            tok = self.peek()
            if tok.kind == "EOF":
                break
            if tok.kind != "NAME":
                self.fail(f"expected a statement, found {tok.text!r}")
            if tok.text == "unit":
                self.advance()
                name = self.expect("NAME").text
                if name in _KEYWORDS:
                    self.fail(f"{name!r} is a reserved word")
                unit_decls.append(UnitDecl(name))
                self.unit_atoms.add(name)
                self.end_statement()
            elif tok.text == "rate":
                self.advance()
                lhs_mag, lhs_unit = self.quantity_literal()
                self.expect("OP", "==")
                rhs_mag, rhs_unit = self.quantity_literal()
                for side in (lhs_unit, rhs_unit):
                    if len(side.exponents) != 1 or set(side.exponents.values()) != {1}:
                        self.fail("rate sides must be single unit atoms")
                unit_decls.append(
                    RateDecl(
                        lhs_mag,
                        next(iter(lhs_unit.exponents)),
                        rhs_mag,
                        next(iter(rhs_unit.exponents)),
                    )
                )
                self.end_statement()
            elif tok.text in ("data", "helpful"):
                role = self.advance().text
                name = self.expect("NAME").text
                self.expect("OP", "=")
                value = self.decl_value()
                label = self.end_statement()
                decls.append(DataDecl(name, role, value, label))
            elif tok.text == "return":
                self.advance()
                if target is not None:
                    self.fail("duplicate return")
                target = self.expect("NAME").text
                self.end_statement()
            else:
                name = self.advance().text
                if name in _KEYWORDS:
                    self.fail(f"{name!r} is a reserved word")
                self.expect("OP", ":=")
                expr = self.expr()
                question = self.end_statement()
                steps.append(Step(name, question, expr))
        if target is None:
            self.fail("program has no return statement")
        return StepProgram(unit_decls, decls, steps, target)

    def number(self) -> Fraction:
        negative = False
        if self.peek().kind == "OP" and self.peek().text == "-":
            self.advance()
            negative = True
        num = int(self.expect("INT").text)
        den = 1
        if (
            self.peek().kind == "OP"
            and self.peek().text == "/"
            and self.peek(1).kind == "INT"
        ):
            self.advance()
            den = int(self.advance().text)
            if den == 0:
                self.fail("zero denominator in numeral")
        value = Fraction(num, den)
        return -value if negative else value

    def unit_expr_opt(self) -> UnitExpr:
        """Greedy unit expression; empty when the next token is no atom."""
        if self.peek().kind != "NAME" or self.peek().text not in self.unit_atoms:
            if self.peek().kind == "NAME" and self.peek().text not in _KEYWORDS:
                # a bare name straight after a numeral can only be meant as
                # a unit; make the failure say so
                tok = self.peek()
                raise UnknownUnit(
                    f"unknown unit {tok.text!r} (line {tok.line}, column {tok.col})"
                )
            return UnitExpr.dimensionless()
        exps: list[tuple[str, int]] = []
        exponent_sign = 1
        while True:
            atom = self.expect("NAME").text
            exp = 1
            if self.peek().kind == "OP" and self.peek().text == "^":
                self.advance()
                negative = False
                if self.peek().kind == "OP" and self.peek().text == "-":
                    self.advance()
                    negative = True
                exp = int(self.expect("INT").text)
                if negative:
                    exp = -exp
            exps.append((atom, exponent_sign * exp))
            if (
                self.peek().kind == "OP"
                and self.peek().text in ("*", "/")
                and self.peek(1).kind == "NAME"
                and self.peek(1).text in self.unit_atoms
            ):
                exponent_sign = 1 if self.advance().text == "*" else -1
                continue
            return UnitExpr(exps)

    def quantity_literal(self) -> tuple[Fraction, UnitExpr]:
        value = self.number()
        return value, self.unit_expr_opt()

    def decl_value(self) -> Union[Lit, SymbolRef]:
        tok = self.peek()
        if tok.kind == "INT" or (tok.kind == "OP" and tok.text == "-"):
            magnitude, unit = self.quantity_literal()
            return Lit(magnitude, unit)
        if tok.kind == "NAME":
            letter = self.advance().text
            if letter in _KEYWORDS:
                self.fail(f"{letter!r} is a reserved word")
            if letter in self.unit_atoms:
                self.fail(f"{letter!r} is a unit, not a symbol")
            unit = UnitExpr.dimensionless()
            if self.peek().kind == "NAME" and self.peek().text in self.unit_atoms:
                unit = self.unit_expr_opt()
            return SymbolRef(letter, unit)
        self.fail("expected a quantity or a symbol")

    def expr(self) -> Expr:
        left = self.term()
        while self.peek().kind == "OP" and self.peek().text in ("+", "-"):
            op = self.advance().text
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.peek().kind == "OP" and self.peek().text in ("*", "/"):
            # a '/' that begins a fraction numeral belongs to the literal,
            # which the primary parser consumed already; here it is division
            op = self.advance().text
            left = BinOp(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "-":
            self.advance()
            return Neg(self.unary())
        if tok.kind == "NAME" and tok.text == "sqrt":
            self.advance()
            self.expect("OP", "(")
            inner = self.expr()
            self.expect("OP", ")")
            return Sqrt(inner)
        return self.primary()

    def primary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "(":
            self.advance()
            inner = self.expr()
            self.expect("OP", ")")
            return inner
        if tok.kind == "INT":
            magnitude, unit = self.quantity_literal()
            return Lit(magnitude, unit)
        if tok.kind == "NAME":
            name = self.advance().text
            if name in _KEYWORDS:
                self.fail(f"{name!r} is a reserved word")
            if name in self.unit_atoms:
                self.fail(f"{name!r} is a unit, not a variable")
            return Var(name)
        self.fail(f"expected an expression, found {tok.text or tok.kind!r}")


def parse(source: str) -> "StepProgram":
    """Parse DSL text into a validated step program."""
    return _Parser(source).parse()


# ---------------------------------------------------------------------------
# the program model


@dataclass(frozen=True)
class TraceEntry:
    name: str
    question: Optional[str]
    value: Quantity


@dataclass(frozen=True)
class Trace:
    entries: tuple[TraceEntry, ...]
    answer: Quantity

    def value_of(self, name: str) -> Quantity:
        for entry in self.entries:
            if entry.name == name:
                return entry.value
        raise KeyError(name)


@dataclass(frozen=True)
class SymbolicTraceEntry:
    name: str
    question: Optional[str]
    value: RationalFunction
    unit: UnitExpr


@dataclass(frozen=True)
class SymbolicResult:
    answer: RationalFunction
    answer_unit: UnitExpr
    eliminated: frozenset[str]
    conditions: tuple[SignCondition, ...]
    trace: tuple[SymbolicTraceEntry, ...]


@dataclass(frozen=True)
class IndependenceReport:
    name: str
    absent_from_answer: bool
    dimensions_disjoint: bool

    @property
    def independent(self) -> bool:
        return self.absent_from_answer and self.dimensions_disjoint

    @property
    def verdict(self) -> str:
        return "Independent" if self.independent else "Entangled"

    def describe(self) -> str:
        a = "absent from" if self.absent_from_answer else "present in"
        d = "disjoint from" if self.dimensions_disjoint else "overlapping"
        return (
            f"{self.name}: {self.verdict} "
            f"({a} the answer; type {d} the answer type)"
        )


class StepProgram:
    """A parsed, validated step-question program.

    Programs start from an empty unit registry and declare every atom they
    use; rates may be declared anywhere but atoms must appear before their
    first use in a literal.
    """

    def __init__(
        self,
        unit_decls: Sequence[Union[UnitDecl, RateDecl]],
        decls: Sequence[DataDecl],
        steps: Sequence[Step],
        target: str,
    ):
        self.unit_decls = tuple(unit_decls)
        self.decls = tuple(decls)
        self.steps = tuple(steps)
        self.target = target
        reg = UnitRegistry.empty()
        for decl in self.unit_decls:
            if isinstance(decl, UnitDecl):
                reg = reg.declare_unit(decl.name)
            else:
                reg = reg.declare_rate(
                    reg.quantity(decl.lhs_mag, UnitExpr.atom(decl.lhs_atom)),
                    reg.quantity(decl.rhs_mag, UnitExpr.atom(decl.rhs_atom)),
                )
        self.registry = reg
        self._validate()

    def _validate(self):
        known: set[str] = set()
        for decl in self.decls:
            if decl.name in known or decl.name in self.registry.atoms:
                raise Redefinition(f"{decl.name!r} is declared twice")
            for atom in self._value_unit(decl).exponents:
                self.registry._require(atom)
            known.add(decl.name)
        for step in self.steps:
            if step.name in known or step.name in self.registry.atoms:
                raise Redefinition(f"{step.name!r} is assigned twice")
            for var in expr_variables(step.expr):
                if var not in known:
                    raise UseBeforeDefinition(
                        f"step {step.name!r} uses {var!r} before its definition"
                    )
            self._check_literal_units(step.expr)
            known.add(step.name)
        if self.target not in known:
            raise UseBeforeDefinition(f"return names undefined {self.target!r}")

    @staticmethod
    def _value_unit(decl: DataDecl) -> UnitExpr:
        return decl.value.unit

    def _check_literal_units(self, expr: Expr):
        if isinstance(expr, Lit):
            for atom in expr.unit.exponents:
                self.registry._require(atom)
        elif isinstance(expr, (Neg, Sqrt)):
            self._check_literal_units(expr.operand)
        elif isinstance(expr, BinOp):
            self._check_literal_units(expr.left)
            self._check_literal_units(expr.right)

    # convenience lookups

    def decl_named(self, name: str) -> DataDecl:
        for decl in self.decls:
            if decl.name == name:
                return decl
        raise KeyError(name)

    @property
    def data_names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.decls if d.role == "data")

    @property
    def helpful_names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.decls if d.role == "helpful")

    @property
    def symbolic_decl_names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.decls if isinstance(d.value, SymbolRef))

    def decl_quantity(self, decl: DataDecl) -> Quantity:
        if not isinstance(decl.value, Lit):
            raise MissingValue(f"declaration {decl.name!r} has no concrete value")
        return self.registry.quantity(decl.value.magnitude, decl.value.unit)


def format_program(p: StepProgram) -> str:
    """Canonical source rendering (the fmt verb)."""
    lines = []
    for decl in p.unit_decls:
        if isinstance(decl, UnitDecl):
            lines.append(f"unit {decl.name}")
        else:
            lines.append(
                f"rate {decl.lhs_mag} {decl.lhs_atom} == {decl.rhs_mag} {decl.rhs_atom}"
            )
    if lines:
        lines.append("")
    for decl in p.decls:
        if isinstance(decl.value, Lit):
            value = str(decl.value.magnitude)
            if decl.value.unit:
                value += f" {decl.value.unit}"
        else:
            value = decl.value.letter
            if decl.value.unit:
                value += f" {decl.value.unit}"
        line = f"{decl.role} {decl.name} = {value}"
        if decl.label:
            line += f"  % {decl.label}"
        lines.append(line)
    if p.decls:
        lines.append("")
    for step in p.steps:
        line = f"{step.name} := {render_expr(step.expr)}"
        if step.question:
            line += f"  % {step.question}"
        lines.append(line)
    lines.append(f"return {p.target}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# call-by-value evaluation


def eval_by_value(
    p: StepProgram, overrides: Optional[Mapping[str, Quantity]] = None
) -> Trace:
    """Execute on concrete quantities, producing the unit-checked trace."""
    overrides = dict(overrides or {})
    unknown = set(overrides) - {d.name for d in p.decls}
    if unknown:
        raise DslError(f"overrides for undeclared names: {sorted(unknown)}")
    env: dict[str, Quantity] = {}
    for decl in p.decls:
        if decl.name in overrides:
            env[decl.name] = overrides[decl.name]
        else:
            env[decl.name] = p.decl_quantity(decl)
    entries = []
    for step in p.steps:
        try:
            value = _eval_value_expr(step.expr, env, p.registry)
        except EngineError as err:
            raise EvalError(step.name, step.question, err) from err
        env[step.name] = value
        entries.append(TraceEntry(step.name, step.question, value))
    return Trace(tuple(entries), env[p.target])


def _eval_value_expr(expr: Expr, env: Mapping[str, Quantity], reg: UnitRegistry) -> Quantity:
    if isinstance(expr, Lit):
        return reg.quantity(expr.magnitude, expr.unit)
    if isinstance(expr, Var):
        return env[expr.name]
    if isinstance(expr, Neg):
        return -_eval_value_expr(expr.operand, env, reg)
    if isinstance(expr, Sqrt):
        return _eval_value_expr(expr.operand, env, reg).sqrt()
    left = _eval_value_expr(expr.left, env, reg)
    right = _eval_value_expr(expr.right, env, reg)
    if expr.op == "+":
        return left + right
    if expr.op == "-":
        return left - right
    if expr.op == "*":
        return left * right
    if right.magnitude.is_zero():
        raise DivisionByZero(f"division of {left} by zero")
    if sign(right.magnitude) < 0:
        raise InfeasibleDivision(
            f"division by {right}: negative rates and amounts have no "
            f"step-question reading"
        )
    return left / right


def render_trace(p: StepProgram, trace: Trace,
                 overrides: Optional[Mapping[str, Quantity]] = None) -> str:
    """One block per question, mirroring the worked-solution box."""
    env: dict[str, Quantity] = {}
    overrides = dict(overrides or {})
    for decl in p.decls:
        env[decl.name] = overrides.get(decl.name) or p.decl_quantity(decl)
    for entry in trace.entries:
        env[entry.name] = entry.value
    lines = []
    for i, entry in enumerate(trace.entries, start=1):
        question = entry.question or f"compute {entry.name}"
        lines.append(f"Question {i}. {question}")
        step = next(s for s in p.steps if s.name == entry.name)
        equation = render_expr(step.expr, resolve=lambda n: env[n])
        lines.append(f"  {entry.name} = {entry.value} = {equation}")
    lines.append(f"Answer: {p.target} = {trace.answer}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# call-by-name evaluation


@dataclass(frozen=True)
class _SymValue:
    rf: RationalFunction
    unit: UnitExpr


def eval_by_name(
    p: StepProgram, symbolize: Optional[Sequence[str]] = None
) -> SymbolicResult:
    """Execute on symbols, producing the simplified closed-form answer.

    Names in symbolize (plus every source-level symbolic declaration) become
    symbols carrying the dimension of the value they stand for; remaining
    declarations enter as exact rational constants.
    """
    wanted = set(symbolize or ())
    unknown = wanted - {d.name for d in p.decls}
    if unknown:
        raise DslError(f"cannot symbolize undeclared names: {sorted(unknown)}")
    wanted |= set(p.symbolic_decl_names)

    env: dict[str, _SymValue] = {}
    symbol_of: dict[str, Symbol] = {}
    letters: set[str] = set()
    reg = p.registry
    for decl in p.decls:
        if decl.name in wanted:
            if isinstance(decl.value, SymbolRef):
                letter, unit = decl.value.letter, decl.value.unit
            else:
                letter, unit = decl.name, decl.value.unit
            if letter in letters:
                raise Redefinition(f"symbol {letter!r} used for two declarations")
            letters.add(letter)
            symbol = Symbol(letter, reg.dimension_of(unit))
            symbol_of[decl.name] = symbol
            env[decl.name] = _SymValue(RationalFunction.of(symbol), unit)
        else:
            q = p.decl_quantity(decl)
            env[decl.name] = _SymValue(
                RationalFunction.constant(
                    q.magnitude.as_fraction(), reg.dimension_of(q.unit)
                ),
                q.unit,
            )

    conditions: list[SignCondition] = []
    entries = []
    for step in p.steps:
        try:
            value = _eval_name_expr(step.expr, env, reg, conditions)
        except EngineError as err:
            raise EvalError(step.name, step.question, err) from err
        env[step.name] = value
        entries.append(
            SymbolicTraceEntry(step.name, step.question, value.rf, value.unit)
        )
    answer = env[p.target]
    answer_symbols = {s.name for s in answer.rf.variables()}
    eliminated = frozenset(
        name
        for name in p.helpful_names
        if name in symbol_of and symbol_of[name].name not in answer_symbols
    )
    return SymbolicResult(
        answer.rf, answer.unit, eliminated, tuple(conditions), tuple(entries)
    )


def _eval_name_expr(
    expr: Expr,
    env: Mapping[str, _SymValue],
    reg: UnitRegistry,
    conditions: list[SignCondition],
) -> _SymValue:
    if isinstance(expr, Lit):
        return _SymValue(
            RationalFunction.constant(expr.magnitude, reg.dimension_of(expr.unit)),
            expr.unit,
        )
    if isinstance(expr, Var):
        return env[expr.name]
    if isinstance(expr, Neg):
        operand = _eval_name_expr(expr.operand, env, reg, conditions)
        return _SymValue(-operand.rf, operand.unit)
    if isinstance(expr, Sqrt):
        operand = _eval_name_expr(expr.operand, env, reg, conditions)
        if not operand.rf.is_constant():
            raise SymbolicRadicalUnsupported(
                f"sqrt over symbols has no rational-function form: "
                f"sqrt({operand.rf})"
            )
        try:
            root = exact_sqrt(operand.rf.constant_value()).as_fraction()
        except NestedRadical:
            raise SymbolicRadicalUnsupported(
                f"sqrt({operand.rf.constant_value()}) is irrational and has no "
                f"rational-function form"
            ) from None
        unit = operand.unit.halved()
        return _SymValue(
            RationalFunction.constant(root, reg.dimension_of(unit)), unit
        )
    left = _eval_name_expr(expr.left, env, reg, conditions)
    right = _eval_name_expr(expr.right, env, reg, conditions)
    chosen = common_atom_choice(reg, (left.unit, right.unit))
    lu, ls = realign_unit(reg, left.unit, chosen)
    ru, rs = realign_unit(reg, right.unit, chosen)
    lrf = left.rf if ls == 1 else left.rf * RationalFunction.constant(ls)
    rrf = right.rf if rs == 1 else right.rf * RationalFunction.constant(rs)
    if expr.op == "+":
        return _SymValue(lrf + rrf, lu)
    if expr.op == "-":
        return _SymValue(lrf - rrf, lu)
    if expr.op == "*":
        return _SymValue(lrf * rrf, lu * ru)
    if rrf.num.is_zero():
        raise DivisionByZero("division by an identically zero value")
    if not rrf.is_constant():
        panel = strip_positive_factors(rrf.num) * strip_positive_factors(rrf.den)
        if not panel.is_constant():
            condition = SignCondition(panel)
            if condition not in conditions:
                conditions.append(condition)
    return _SymValue(lrf / rrf, lu / ru)


def render_symbolic_result(result: SymbolicResult) -> str:
    lines = []
    for i, entry in enumerate(result.trace, start=1):
        question = entry.question or f"compute {entry.name}"
        lines.append(f"Question {i}. {question}")
        value = str(entry.value)
        if entry.unit:
            value += f" {entry.unit}"
        lines.append(f"  {entry.name} = {value}")
    answer = str(result.answer)
    if result.answer_unit:
        answer += f" {result.answer_unit}"
    lines.append(f"Answer: {answer}")
    if result.eliminated:
        names = ", ".join(sorted(result.eliminated))
        lines.append(f"Eliminated helpful numbers: {names}")
    for condition in result.conditions:
        lines.append(f"Requires: {condition}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# checks


def check_helpful_independence(p: StepProgram) -> dict[str, IndependenceReport]:
    """Symbolize everything and test each helpful number both ways: gone
    from the answer, and of a type foreign to the answer's type."""
    all_names = [d.name for d in p.decls]
    result = eval_by_name(p, all_names)
    answer_symbols = {s.name for s in result.answer.variables()}
    answer_classes = result.answer.dim.classes()
    report: dict[str, IndependenceReport] = {}
    for decl in p.decls:
        if decl.role != "helpful":
            continue
        symbol_name = (
            decl.value.letter if isinstance(decl.value, SymbolRef) else decl.name
        )
        decl_classes = p.registry.dimension_of(decl.value.unit).classes()
        report[decl.name] = IndependenceReport(
            decl.name,
            absent_from_answer=symbol_name not in answer_symbols,
            dimensions_disjoint=not (decl_classes & answer_classes),
        )
    return report


def agreement_check(p: StepProgram, trials: int = 100, seed: int = 0) -> bool:
    """Cross-validate the two evaluators: under random positive rational
    assignments the substituted symbolic answer must equal the call-by-value
    answer exactly.  Samples that hit a zero or negative divisor are redrawn.
    """
    names = [d.name for d in p.decls]
    symbolic = eval_by_name(p, names)
    symbol_of = {}
    for decl in p.decls:
        letter = decl.value.letter if isinstance(decl.value, SymbolRef) else decl.name
        symbol_of[decl.name] = Symbol(letter, p.registry.dimension_of(decl.value.unit))
    rng = random.Random(seed)
    successes = 0
    attempts = 0
    while successes < trials:
        attempts += 1
        if attempts > trials * 50:
            raise DslError("agreement check could not find enough feasible samples")
        assignment = {
            name: Fraction(rng.randint(1, 48), rng.randint(1, 12)) for name in names
        }
        overrides = {
            decl.name: p.registry.quantity(assignment[decl.name], decl.value.unit)
            for decl in p.decls
        }
        try:
            trace = eval_by_value(p, overrides)
            expected = symbolic.answer.substitute(
                {symbol_of[name]: assignment[name] for name in names}
            )
        except (EvalError, DivisionByZero):
            continue
        expected_quantity = p.registry.quantity(
            ExactScalar(expected.constant_value()), symbolic.answer_unit
        )
        if trace.answer != expected_quantity:
            return False
        successes += 1
    return True
