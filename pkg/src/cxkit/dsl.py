"""Line-oriented specification language for operators and complexes.

Grammar (one statement per line, ``#`` comments)::

    vars: d1 d2 d3            # spatial derivative symbols
    time: dt                  # optional time symbol
    params: mu c              # named parameters
    operator A = [[d1, 0], [d2, d1], [0, d2]]
    complex C = ops(A, B)     # or de_rham(3), koszul(d1, d2), dolbeault(2),
                              #    power_de_rham(3, 2)
    mu C 1 scalar mu          # weight assignment: complex, degree, kind, value
    task verify C

Polynomial expressions use ``+ - * ^`` with integer or rational (``a/b``)
constants and the imaginary unit ``i``.  Parse errors carry line/column.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from cxkit.complexes import (
    Complex,
    MuSet,
    de_rham_complex,
    dolbeault_complex,
    koszul_complex,
    powered_de_rham_complex,
)
from cxkit.diffop import OperatorMatrix, Signature
from cxkit.poly import GaussianRational, Poly


class SpecError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class SpecDocument:
    spatial: tuple[str, ...] = ()
    time: str | None = None
    params: tuple[str, ...] = ()
    operators: dict[str, OperatorMatrix] = field(default_factory=dict)
    complexes: dict[str, Complex] = field(default_factory=dict)
    mu_specs: dict[str, list[tuple[int, str, Poly]]] = field(default_factory=dict)
    tasks: list[tuple[str, ...]] = field(default_factory=list)
    builders: dict[str, str] = field(default_factory=dict)  # for printing

    @property
    def signature(self) -> Signature:
        return Signature(self.spatial, self.time, self.params)

    def mu_set(self, name: str) -> MuSet | None:
        """Materialize the weight assignments for a complex, if any."""
        specs = self.mu_specs.get(name)
        if not specs:
            return None
        cplx = self.complexes[name]
        mu0: dict[int, OperatorMatrix] = {}
        mu1: dict[int, OperatorMatrix] = {}
        for degree, kind, value in specs:
            if kind != "scalar":
                raise ValueError(f"unknown mu kind {kind!r}")
            v = value.lift(cplx.signature.vars)
            k0 = cplx.rank(degree + 1)
            if k0:
                mu0[degree] = OperatorMatrix.identity(cplx.signature, k0).scale(v)
            k1 = cplx.rank(degree - 1)
            if k1:
                mu1[degree] = OperatorMatrix.identity(cplx.signature, k1).scale(v)
        return MuSet(cplx, mu0, mu1)

    def __eq__(self, other):
        if not isinstance(other, SpecDocument):
            return NotImplemented
        return (
            self.spatial == other.spatial
            and self.time == other.time
            and self.params == other.params
            and self.operators == other.operators
            and list(self.complexes) == list(other.complexes)
            and all(self.complexes[k].ops == other.complexes[k].ops
                    for k in self.complexes)
            and self.mu_specs == other.mu_specs
            and self.tasks == other.tasks
        )


# ---------------------------------------------------------------------------
# Tokenizer


@dataclass(frozen=True)
class Token:
    kind: str  # name | int | punct | end
    text: str
    line: int
    column: int


_PUNCT = set("[](),+-*^/=:")


def _tokenize(text: str, line_no: int) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch == "#":
            break
        col = i + 1
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line_no, col))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("name", text[i:j], line_no, col))
            i = j
        elif ch in _PUNCT:
            tokens.append(Token("punct", ch, line_no, col))
            i += 1
        else:
            raise SpecError(f"unexpected character {ch!r}", line_no, col)
    tokens.append(Token("end", "", line_no, len(text) + 1))
    return tokens


class _Parser:
    """Recursive-descent expression parser over one token stream."""

    def __init__(self, tokens: list[Token], doc: SpecDocument):
        self.tokens = tokens
        self.pos = 0
        self.doc = doc

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str) -> SpecError:
        tok = self.current
        return SpecError(message, tok.line, tok.column)

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        tok = self.current
        if tok.kind == kind and (text is None or tok.text == text):
            self.pos += 1
            return tok
        return None

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.accept(kind, text)
        if tok is None:
            want = text or kind
            raise self.error(f"expected {want!r}, found {self.current.text!r}")
        return tok

    # expression := term (('+'|'-') term)*
    def expression(self) -> Poly:
        if self.accept("punct", "-"):
            total = -self.term()
        else:
            total = self.term()
        while True:
            if self.accept("punct", "+"):
                total = total + self.term()
            elif self.accept("punct", "-"):
                total = total - self.term()
            else:
                return total

    # term := factor ('*' factor)*
    def term(self) -> Poly:
        total = self.factor()
        while self.accept("punct", "*"):
            total = total * self.factor()
        return total

    # factor := atom ('^' int)?
    def factor(self) -> Poly:
        atom = self.atom()
        if self.accept("punct", "^"):
            exp = self.expect("int")
            return atom ** int(exp.text)
        return atom

    # atom := rational | 'i' | variable | '(' expression ')'
    def atom(self) -> Poly:
        vars = self.doc.signature.vars
        if self.accept("punct", "("):
            inner = self.expression()
            self.expect("punct", ")")
            return inner
        tok = self.current
        if tok.kind == "int":
            self.pos += 1
            value = Fraction(int(tok.text))
            if self.accept("punct", "/"):
                den = self.expect("int")
                value = value / int(den.text)
            return Poly.constant(vars, GaussianRational.of(value))
        if tok.kind == "name":
            self.pos += 1
            if tok.text == "i":
                return Poly.constant(vars, GaussianRational.i())
            if tok.text in vars:
                return Poly.variable(vars, tok.text)
            raise SpecError(f"unknown symbol {tok.text!r}", tok.line, tok.column)
        raise self.error("expected a polynomial atom")

    # matrix := '[' row (',' row)* ']'
    def matrix(self) -> list[list[Poly]]:
        self.expect("punct", "[")
        rows = [self.matrix_row()]
        while self.accept("punct", ","):
            rows.append(self.matrix_row())
        self.expect("punct", "]")
        width = len(rows[0])
        for row in rows:
            if len(row) != width:
                raise self.error("ragged matrix row")
        return rows

    def matrix_row(self) -> list[Poly]:
        self.expect("punct", "[")
        row = [self.expression()]
        while self.accept("punct", ","):
            row.append(self.expression())
        self.expect("punct", "]")
        return row


# ---------------------------------------------------------------------------
# Statements


def parse(text: str) -> SpecDocument:
    doc = SpecDocument()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw, line_no)
        if tokens[0].kind == "end":
            continue
        p = _Parser(tokens, doc)
        head = p.expect("name")
        if head.text == "vars":
            p.expect("punct", ":")
            names = []
            while p.current.kind == "name":
                names.append(p.expect("name").text)
            p.expect("end")
            doc.spatial = tuple(names)
        elif head.text == "time":
            p.expect("punct", ":")
            doc.time = p.expect("name").text
            p.expect("end")
        elif head.text == "params":
            p.expect("punct", ":")
            names = []
            while p.current.kind == "name":
                names.append(p.expect("name").text)
            p.expect("end")
            doc.params = tuple(names)
        elif head.text == "operator":
            name = p.expect("name").text
            p.expect("punct", "=")
            entries = p.matrix()
            p.expect("end")
            doc.operators[name] = OperatorMatrix.from_entries(doc.signature, entries)
        elif head.text == "complex":
            name = p.expect("name").text
            p.expect("punct", "=")
            doc.complexes[name] = _parse_complex(p, doc, name)
            p.expect("end")
        elif head.text == "mu":
            cname = p.expect("name").text
            if cname not in doc.complexes:
                raise SpecError(f"unknown complex {cname!r}", head.line, head.column)
            degree = int(p.expect("int").text)
            kind = p.expect("name").text
            value = p.expression()
            p.expect("end")
            doc.mu_specs.setdefault(cname, []).append((degree, kind, value))
        elif head.text == "task":
            words = []
            while p.current.kind in ("name", "int"):
                words.append(p.current.text)
                p.pos += 1
            p.expect("end")
            if not words:
                raise SpecError("empty task", head.line, head.column)
            doc.tasks.append(tuple(words))
        else:
            raise SpecError(f"unknown statement {head.text!r}", head.line, head.column)
    return doc


def _parse_complex(p: _Parser, doc: SpecDocument, name: str) -> Complex:
    kind = p.expect("name").text
    p.expect("punct", "(")
    if kind == "ops":
        ops = []
        parts = []
        while True:
            tok = p.expect("name")
            if tok.text not in doc.operators:
                raise SpecError(f"unknown operator {tok.text!r}", tok.line, tok.column)
            ops.append(doc.operators[tok.text])
            parts.append(tok.text)
            if not p.accept("punct", ","):
                break
        p.expect("punct", ")")
        doc.builders[name] = f"ops({', '.join(parts)})"
        return Complex(ops)
    if kind == "de_rham":
        n = int(p.expect("int").text)
        p.expect("punct", ")")
        doc.builders[name] = f"de_rham({n})"
        _require_spatial(p, doc, n)
        return de_rham_complex(n).lift(doc.signature)
    if kind == "dolbeault":
        n = int(p.expect("int").text)
        p.expect("punct", ")")
        doc.builders[name] = f"dolbeault({n})"
        _require_spatial(p, doc, 2 * n)
        return dolbeault_complex(n).lift(doc.signature)
    if kind == "power_de_rham":
        n = int(p.expect("int").text)
        p.expect("punct", ",")
        power = int(p.expect("int").text)
        p.expect("punct", ")")
        doc.builders[name] = f"power_de_rham({n}, {power})"
        _require_spatial(p, doc, n)
        return powered_de_rham_complex(n, power).lift(doc.signature)
    if kind == "koszul":
        gens = [p.expression()]
        parts = [str(gens[-1])]
        while p.accept("punct", ","):
            gens.append(p.expression())
            parts.append(str(gens[-1]))
        p.expect("punct", ")")
        doc.builders[name] = f"koszul({', '.join(parts)})"
        return koszul_complex(gens, doc.signature)
    raise p.error(f"unknown complex builder {kind!r}")


def _require_spatial(p: _Parser, doc: SpecDocument, n: int) -> None:
    expected = tuple(f"d{k}" for k in range(1, n + 1))
    if doc.spatial != expected:
        raise p.error(
            f"builder needs spatial symbols {' '.join(expected)}, "
            f"declared {' '.join(doc.spatial) or '(none)'}"
        )


# ---------------------------------------------------------------------------
# Printing (round-trip)


def print_document(doc: SpecDocument) -> str:
    lines = []
    if doc.spatial:
        lines.append("vars: " + " ".join(doc.spatial))
    if doc.time:
        lines.append("time: " + doc.time)
    if doc.params:
        lines.append("params: " + " ".join(doc.params))
    for name, op in doc.operators.items():
        rows = ", ".join(
            "[" + ", ".join(str(op[i, j]) for j in range(op.cols)) + "]"
            for i in range(op.rows)
        )
        lines.append(f"operator {name} = [{rows}]")
    for name in doc.complexes:
        lines.append(f"complex {name} = {doc.builders[name]}")
    for cname, specs in doc.mu_specs.items():
        for degree, kind, value in specs:
            lines.append(f"mu {cname} {degree} {kind} {value}")
    for task in doc.tasks:
        lines.append("task " + " ".join(task))
    return "\n".join(lines) + "\n"


__all__ = ["SpecDocument", "SpecError", "parse", "print_document"]
