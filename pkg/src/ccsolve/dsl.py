"""Problem-file language.

Line oriented, ``#`` starts a comment::

    atoms    A B C
    event    AB = A & B
    cond     T1 = C given B
    assess   P(T1) = 7/10
    assess   P(T1 & T2) = 1/4
    query    coherence
    query    bounds T1 & T2
    query    p-consistent T1 T2
    query    p-entails premises=[T1,T2] conclusion=T3
    query    p-entails rule=weak-transitivity
    query    iterate consequent=[T3] antecedent=[T1,T2]
    query    table T1 & T2

Boolean operators bind ``~`` tighter than ``&`` tighter than ``|``; ``given``
separates consequent from antecedent.  ``cond T = E`` without ``given`` is
the unconditional event ``E|TRUE``.  Names of events may be used inside later
expressions and are expanded in place.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Optional

from .compound import Family, PrevisionAssessment
from .errors import EmptyAntecedent, ParseError
from .events import FALSE, TRUE, And, AtomContext, ConditionalEvent, EventExpr, Not, Or, declare_atoms

_INT = r"[+-]?\d+"
_RATIONAL = re.compile(rf"^(?:({_INT})\s*/\s*({_INT})|({_INT})|([+-]?(?:\d+\.\d*|\.\d+)(?:[eE][+-]?\d+)?))$")
_TOKEN = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*(?:-[A-Za-z0-9_]+)*)|(?P<num>\d+(?:\.\d*)?(?:/\d+)?|\.\d+)|(?P<op>[&|~()\[\],=/]))"
)
_DIRECTIVES = ("atoms", "event", "cond", "assess", "query")
_KEYWORDS = {"given", "TRUE", "FALSE", "P"} | set(_DIRECTIVES)
QUERY_KINDS = ("coherence", "bounds", "p-consistent", "p-entails", "iterate", "table")


def parse_rational(text: str) -> Fraction:
    """Exact value of ``int``, ``int/int`` or a decimal literal."""
    m = _RATIONAL.match(text.strip())
    if not m:
        raise ValueError(f"malformed rational {text!r}")
    num, den, whole, dec = m.groups()
    if num is not None:
        if int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    if whole is not None:
        return Fraction(int(whole))
    try:
        return Fraction(Decimal(dec))
    except InvalidOperation:  # pragma: no cover - the regex already vets the literal
        raise ValueError(f"malformed rational {text!r}") from None


@dataclass(frozen=True)
class Query:
    kind: str
    names: tuple = ()  # bounds / p-consistent / table
    premises: tuple = ()
    conclusion: Optional[str] = None
    rule: Optional[str] = None
    consequent: tuple = ()
    antecedent: tuple = ()
    line: int = field(default=0, compare=False)

    def __str__(self):
        if self.kind in ("bounds", "table"):
            return f"query {self.kind} " + " & ".join(self.names)
        if self.kind == "p-consistent":
            return " ".join(("query p-consistent",) + self.names)
        if self.kind == "p-entails":
            if self.rule:
                return f"query p-entails rule={self.rule}"
            return f"query p-entails premises=[{','.join(self.premises)}] conclusion={self.conclusion}"
        if self.kind == "iterate":
            return f"query iterate consequent=[{','.join(self.consequent)}] antecedent=[{','.join(self.antecedent)}]"
        return f"query {self.kind}"


@dataclass(frozen=True)
class ProblemFile:
    context: Optional[AtomContext]
    events: dict  # name -> EventExpr
    conditionals: dict  # name -> ConditionalEvent
    assessments: dict  # tuple of names (canonical order) -> Fraction
    queries: tuple

    def conditional(self, name: str) -> ConditionalEvent:
        return self.conditionals[name]

    def family(self, names=None) -> Family:
        names = self.conditionals if names is None else names
        return Family.of([self.conditionals[n] for n in names])

    def assessed_family(self) -> Optional[Family]:
        names = dict.fromkeys(n for key in self.assessments for n in key)
        return self.family(names) if names else None

    def prevision_assessment(self) -> PrevisionAssessment:
        values = {}
        for key, x in self.assessments.items():
            S = frozenset(self.conditionals[n] for n in key)
            if S in values and values[S] != x:
                raise ValueError(f"P({' & '.join(key)}) assessed twice with different values")
            values[S] = x
        return PrevisionAssessment(values)

    def __eq__(self, other):
        if not isinstance(other, ProblemFile):
            return NotImplemented
        return (
            self.context == other.context
            and self.events == other.events
            and _cond_shape(self) == _cond_shape(other)
            and self.assessments == other.assessments
            and self.queries == other.queries
        )


def _cond_shape(pf: ProblemFile) -> dict:
    return {n: (ce.consequent, ce.antecedent) for n, ce in pf.conditionals.items()}


class _Line:
    """Token cursor over one line."""

    def __init__(self, text: str, lineno: int):
        self.text = text
        self.lineno = lineno
        self.tokens = []
        pos = 0
        while text[pos:].strip():
            m = _TOKEN.match(text, pos)
            if not m:
                col = len(text) - len(text[pos:].lstrip()) + 1
                raise ParseError(f"unexpected character {text[col - 1]!r}", lineno, col)
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start + 1))
            pos = m.end()
        self.i = 0

    def error(self, message, tok=None) -> ParseError:
        if tok is None:
            tok = self.peek()
        col = tok[2] if tok else len(self.text.rstrip()) + 1
        return ParseError(message, self.lineno, col)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of line")
        self.i += 1
        return tok

    def accept(self, value) -> bool:
        tok = self.peek()
        if tok and tok[1] == value and tok[0] != "num":
            self.i += 1
            return True
        return False

    def expect(self, value):
        tok = self.peek()
        if not self.accept(value):
            raise self.error(f"expected {value!r}" + (f", got {tok[1]!r}" if tok else ""), tok)
        return tok

    def name(self, what="identifier"):
        tok = self.peek()
        if tok is None or tok[0] != "name":
            raise self.error(f"expected {what}", tok)
        self.i += 1
        return tok

    def rest(self) -> str:
        tok = self.peek()
        return self.text[tok[2] - 1 :].strip() if tok else ""

    def done(self):
        tok = self.peek()
        if tok is not None:
            raise self.error(f"unexpected {tok[1]!r}", tok)


class _Parser:
    def __init__(self):
        self.context = None
        self.events = {}
        self.conditionals = {}
        self.assessments = {}
        self.queries = []

    # -- expressions ------------------------------------------------------

    def expr(self, ln: _Line) -> EventExpr:
        args = [self.conj(ln)]
        while ln.accept("|"):
            args.append(self.conj(ln))
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conj(self, ln: _Line) -> EventExpr:
        args = [self.unary(ln)]
        while ln.accept("&"):
            args.append(self.unary(ln))
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self, ln: _Line) -> EventExpr:
        if ln.accept("~"):
            return Not(self.unary(ln))
        if ln.accept("("):
            e = self.expr(ln)
            ln.expect(")")
            return e
        tok = ln.name("event expression")
        word = tok[1]
        if word == "TRUE":
            return TRUE
        if word == "FALSE":
            return FALSE
        if self.context is None:
            raise ln.error("atoms must be declared before expressions", tok)
        if word in self.events:
            return self.events[word]
        if word in self.context.names:
            return self.context.atom(word)
        raise ln.error(f"undeclared identifier {word!r}", tok)

    # -- directives -------------------------------------------------------

    def new_name(self, ln: _Line):
        tok = ln.name()
        word = tok[1]
        if word in _KEYWORDS:
            raise ln.error(f"{word!r} is reserved", tok)
        if word in self.events or word in self.conditionals or (self.context and word in self.context.names):
            raise ln.error(f"{word!r} is already declared", tok)
        return word

    def atoms(self, ln: _Line):
        if self.context is not None:
            raise ln.error("atoms are already declared")
        names = []
        while ln.peek() is not None:
            tok = ln.name("atom name")
            if tok[1] in _KEYWORDS:
                raise ln.error(f"{tok[1]!r} is reserved", tok)
            if tok[1] in names:
                raise ln.error(f"duplicate atom {tok[1]!r}", tok)
            names.append(tok[1])
        if not names:
            raise ln.error("expected at least one atom name")
        try:
            self.context = declare_atoms(names)
        except ValueError as exc:
            raise ln.error(str(exc), ln.tokens[0]) from exc

    def event(self, ln: _Line):
        name = self.new_name(ln)
        ln.expect("=")
        self.events[name] = self.expr(ln)
        ln.done()

    def cond(self, ln: _Line):
        name = self.new_name(ln)
        ln.expect("=")
        start = ln.peek()
        consequent = self.expr(ln)
        antecedent = TRUE
        if ln.accept("given"):
            start = ln.peek()
            antecedent = self.expr(ln)
        ln.done()
        if self.context is None:
            raise ln.error("atoms must be declared before conditionals", start)
        try:
            self.conditionals[name] = ConditionalEvent(consequent, antecedent, self.context, name)
        except EmptyAntecedent as exc:
            raise EmptyAntecedent(f"line {ln.lineno}, column {start[2]}: {exc}") from None

    def cond_names(self, ln: _Line, sep: str, closing: Optional[str] = None) -> tuple:
        names = []
        while True:
            tok = ln.name("conditional name")
            if tok[1] not in self.conditionals:
                raise ln.error(f"undeclared conditional {tok[1]!r}", tok)
            names.append(tok[1])
            if not ln.accept(sep):
                break
        if closing:
            ln.expect(closing)
        return tuple(names)

    def assess(self, ln: _Line):
        ln.expect("P")
        ln.expect("(")
        names = self.cond_names(ln, "&", ")")
        ln.expect("=")
        tok = ln.peek()
        text = ln.rest()
        try:
            x = parse_rational(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ln.error(str(exc), tok) from None
        if not 0 <= x <= 1:
            raise ln.error(f"probability {text} outside [0, 1]", tok)
        key = tuple(sorted(set(names), key=list(self.conditionals).index))
        if key in self.assessments and self.assessments[key] != x:
            raise ln.error(f"P({' & '.join(key)}) already assessed as {self.assessments[key]}", tok)
        self.assessments[key] = x

    def query(self, ln: _Line):
        tok = ln.name("query kind")
        kind = tok[1]
        if kind not in QUERY_KINDS:
            raise ln.error(f"unknown query {kind!r}", tok)
        q = dict(kind=kind, line=ln.lineno)
        if kind in ("bounds", "table"):
            q["names"] = self.cond_names(ln, "&")
        elif kind == "p-consistent":
            names = []
            while ln.peek() is not None:
                t = ln.name("conditional name")
                if t[1] not in self.conditionals:
                    raise ln.error(f"undeclared conditional {t[1]!r}", t)
                names.append(t[1])
            q["names"] = tuple(names)
        elif kind == "p-entails":
            key = ln.name("premises=, conclusion= or rule=")
            if key[1] == "rule":
                ln.expect("=")
                q["rule"] = ln.name("rule name")[1]
            elif key[1] == "premises":
                ln.expect("=")
                ln.expect("[")
                q["premises"] = self.cond_names(ln, ",", "]")
                if ln.name("conclusion=")[1] != "conclusion":
                    raise ln.error("expected conclusion=", ln.tokens[ln.i - 1])
                ln.expect("=")
                q["conclusion"] = self.cond_names(ln, ",")[0]
            else:
                raise ln.error("expected premises= or rule=", key)
        elif kind == "iterate":
            for field_name in ("consequent", "antecedent"):
                t = ln.name(f"{field_name}=")
                if t[1] != field_name:
                    raise ln.error(f"expected {field_name}=", t)
                ln.expect("=")
                ln.expect("[")
                q[field_name] = self.cond_names(ln, ",", "]")
        ln.done()
        self.queries.append(Query(**q))


def parse_problem(text: str) -> ProblemFile:
    """Parse a whole problem file; errors carry line and column."""
    p = _Parser()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        ln = _Line(line, lineno)
        head = ln.name("directive")
        if head[1] not in _DIRECTIVES:
            raise ln.error(f"unknown directive {head[1]!r}", head)
        getattr(p, head[1])(ln)
    return ProblemFile(p.context, dict(p.events), dict(p.conditionals), dict(p.assessments), tuple(p.queries))


def format_problem(pf: ProblemFile) -> str:
    """Canonical text; parsing it gives back an equal problem."""
    lines = []
    if pf.context is not None:
        lines.append("atoms " + " ".join(pf.context.names))
    for name, e in pf.events.items():
        lines.append(f"event {name} = {e}")
    for name, ce in pf.conditionals.items():
        lines.append(f"cond {name} = {_group(ce.consequent)} given {_group(ce.antecedent)}")
    for key, x in pf.assessments.items():
        lines.append(f"assess P({' & '.join(key)}) = {x}")
    for q in pf.queries:
        lines.append(str(q))
    return "\n".join(lines) + "\n"


def _group(e: EventExpr) -> str:
    # keep `given` from splitting a disjunction the wrong way
    return f"({e})" if isinstance(e, Or) else str(e)
