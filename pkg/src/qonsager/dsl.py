"""A small text language for algebra presentations, expressions and
verification suites, so golden files are data rather than code.

Grammar (EBNF):

    suite    := decl*
    decl     := param | algebra | check
    param    := "param" IDENT ("=" ("-")? RATIONAL)?
    algebra  := "algebra" IDENT "{" "generators" IDENT+
                ("relation" expr "=" expr)* "}"
    check    := "check" IDENT "{" (IDENT "=" value)* "}"
    expr     := term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := primary ("^" INT)?
    primary  := RATIONAL | IDENT | "(" expr ")"
              | "qc(" expr "," expr "," INT ")" | "c(" expr "," expr ")"

``qc(a, b, n)`` is the deformed bracket q^n a b - q^-n b a; ``c`` is the
plain commutator.  ``#`` starts a line comment.  Identifiers may contain
dots and interior dashes (subtraction therefore needs surrounding
spaces).  Scalars and generators share one namespace; resolution happens
at binding time against the declarations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import ONE, Scalar, VARS, qpow, rat, var
from .qalgebra import FreeElement, qcomm

# -- tokens ----------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<rational>[0-9]+(?:/[0-9]+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_.']*(?:-[A-Za-z0-9_.']+)*)
  | (?P<punct>[{}()^*+,=-])
""", re.VERBOSE)

KEYWORDS = ("param", "algebra", "check", "generators", "relation")


@dataclass(frozen=True)
class Token:
    kind: str  # rational | ident | punct | eof
    text: str
    start: int
    end: int


@dataclass
class SourceSpan:
    start: int
    end: int
    line: int
    col: int


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan, expected=()):
        super().__init__(f"{span.line}:{span.col}: {message}")
        self.message = message
        self.span = span
        self.expected = tuple(expected)


def _span(text: str, start: int, end: int) -> SourceSpan:
    line = text.count("\n", 0, start) + 1
    col = start - (text.rfind("\n", 0, start) + 1) + 1
    return SourceSpan(start, end, line, col)


def tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}",
                             _span(text, pos, pos + 1), expected=("token",))
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), m.start(), m.end()))
        pos = m.end()
    out.append(Token("eof", "", len(text), len(text)))
    return out


# -- abstract syntax ---------------------------------------------------------


@dataclass(frozen=True)
class ScalarLiteral:
    value: Fraction


@dataclass(frozen=True)
class GeneratorRef:
    name: str


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node) with sign +1 / -1


@dataclass(frozen=True)
class QComm:
    left: object
    right: object
    exponent: int


@dataclass(frozen=True)
class Comm:
    left: object
    right: object


@dataclass(frozen=True)
class Tensor:
    slots: tuple  # no surface syntax in v1; programmatic use only


@dataclass(frozen=True)
class ParamDecl:
    name: str
    value: Fraction | None


@dataclass(frozen=True)
class AlgebraDecl:
    name: str
    generators: tuple
    relations: tuple  # of (lhs, rhs) Ast pairs


@dataclass(frozen=True)
class CheckDecl:
    id: str
    settings: tuple  # of (key, value) pairs; value is Fraction or str


@dataclass(frozen=True)
class Suite:
    params: tuple
    algebras: tuple
    checks: tuple


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    # -- plumbing --------------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, expected=()):
        tok = self.peek()
        raise ParseError(message, _span(self.text, tok.start, max(tok.end, tok.start + 1)
                                        if tok.kind != "eof" else tok.start + 1),
                         expected)

    def take(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            self.error(f"expected {want!r}, found {tok.text or 'end of input'!r}",
                       expected=(want,))
        self.pos += 1
        return tok

    def at_punct(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.text == text

    def at_ident(self, text: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and (text is None or tok.text == text)

    # -- grammar ----------------------------------------------------------

    def suite(self) -> Suite:
        params, algebras, checks = [], [], []
        while not self.peek().kind == "eof":
            if self.at_ident("param"):
                params.append(self.param())
            elif self.at_ident("algebra"):
                algebras.append(self.algebra())
            elif self.at_ident("check"):
                checks.append(self.check())
            else:
                self.error("expected a declaration",
                           expected=("param", "algebra", "check"))
        return Suite(tuple(params), tuple(algebras), tuple(checks))

    def param(self) -> ParamDecl:
        self.take("ident", "param")
        name = self.take("ident").text
        value = None
        if self.at_punct("="):
            self.take("punct", "=")
            sign = 1
            if self.at_punct("-"):
                self.take("punct", "-")
                sign = -1
            value = sign * Fraction(self.take("rational").text)
        return ParamDecl(name, value)

    def algebra(self) -> AlgebraDecl:
        self.take("ident", "algebra")
        name = self.take("ident").text
        self.take("punct", "{")
        self.take("ident", "generators")
        gens = []
        if not self.at_ident():
            self.error("expected at least one generator name",
                       expected=("IDENT",))
        while self.at_ident() and self.peek().text not in ("relation",):
            if self.peek().text in KEYWORDS:
                break
            gens.append(self.take("ident").text)
        relations = []
        while self.at_ident("relation"):
            self.take("ident", "relation")
            lhs = self.expr()
            self.take("punct", "=")
            rhs = self.expr()
            relations.append((lhs, rhs))
        self.take("punct", "}")
        return AlgebraDecl(name, tuple(gens), tuple(relations))

    def check(self) -> CheckDecl:
        self.take("ident", "check")
        cid = self.take("ident").text
        self.take("punct", "{")
        settings = []
        while self.at_ident():
            key = self.take("ident").text
            self.take("punct", "=")
            tok = self.peek()
            if tok.kind == "rational":
                self.take("rational")
                settings.append((key, Fraction(tok.text)))
            elif self.at_punct("-"):
                self.take("punct", "-")
                settings.append((key, -Fraction(self.take("rational").text)))
            elif tok.kind == "ident":
                self.take("ident")
                settings.append((key, tok.text))
            else:
                self.error("expected a value", expected=("RATIONAL", "IDENT"))
        self.take("punct", "}")
        return CheckDecl(cid, tuple(settings))

    def expr(self):
        terms = [(1, self.term())]
        while self.at_punct("+") or self.at_punct("-"):
            sign = 1 if self.take("punct").text == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.at_punct("*"):
            self.take("punct", "*")
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Product(tuple(factors))

    def factor(self):
        base = self.primary()
        if self.at_punct("^"):
            self.take("punct", "^")
            sign = 1
            if self.at_punct("-"):
                self.take("punct", "-")
                sign = -1
            tok = self.take("rational")
            if "/" in tok.text:
                raise ParseError("exponent must be an integer",
                                 _span(self.text, tok.start, tok.end),
                                 expected=("INT",))
            return Power(base, sign * int(tok.text))
        return base

    def primary(self):
        tok = self.peek()
        if tok.kind == "rational":
            self.take("rational")
            return ScalarLiteral(Fraction(tok.text))
        if tok.kind == "ident" and tok.text in ("qc", "c"):
            name = self.take("ident").text
            self.take("punct", "(")
            left = self.expr()
            self.take("punct", ",")
            right = self.expr()
            if name == "qc":
                self.take("punct", ",")
                sign = 1
                if self.at_punct("-"):
                    self.take("punct", "-")
                    sign = -1
                n = sign * int(self.take("rational").text)
                self.take("punct", ")")
                return QComm(left, right, n)
            self.take("punct", ")")
            return Comm(left, right)
        if tok.kind == "ident":
            self.take("ident")
            return GeneratorRef(tok.text)
        if self.at_punct("("):
            self.take("punct", "(")
            inner = self.expr()
            self.take("punct", ")")
            return inner
        self.error("expected an expression",
                   expected=("RATIONAL", "IDENT", "(", "qc(", "c("))


def parse_suite(text: str) -> Suite:
    return _Parser(text).suite()


def parse_expr(text: str):
    p = _Parser(text)
    node = p.expr()
    p.take("eof")
    return node


# -- formatting (round-trip law: parse(format(parse(x))) == parse(x)) --------


def format_expr(node) -> str:
    return _fmt(node, top=True)


def _needs_parens_in_product(node) -> bool:
    return isinstance(node, Sum)


def _fmt(node, top=False) -> str:
    if isinstance(node, ScalarLiteral):
        return str(node.value)
    if isinstance(node, GeneratorRef):
        return node.name
    if isinstance(node, Power):
        base = _fmt(node.base)
        if isinstance(node.base, (Sum, Product, Power)):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Product):
        parts = []
        for f in node.factors:
            s = _fmt(f)
            if _needs_parens_in_product(f):
                s = f"({s})"
            parts.append(s)
        return " * ".join(parts)
    if isinstance(node, Sum):
        out = ""
        for i, (sign, term) in enumerate(node.terms):
            s = _fmt(term)
            if i == 0:
                out = s if sign == 1 else f"0 - {s}"
            else:
                out += (" + " if sign == 1 else " - ") + s
        return out
    if isinstance(node, QComm):
        return f"qc({_fmt(node.left)}, {_fmt(node.right)}, {node.exponent})"
    if isinstance(node, Comm):
        return f"c({_fmt(node.left)}, {_fmt(node.right)})"
    if isinstance(node, Tensor):
        raise ValueError("tensor nodes have no surface syntax in v1")
    raise TypeError(f"not an expression node: {node!r}")


def format_suite(suite: Suite) -> str:
    lines = []
    for p in suite.params:
        if p.value is None:
            lines.append(f"param {p.name}")
        else:
            lines.append(f"param {p.name} = {p.value}")
    for a in suite.algebras:
        lines.append(f"algebra {a.name} {{")
        lines.append("  generators " + " ".join(a.generators))
        for lhs, rhs in a.relations:
            lines.append(f"  relation {format_expr(lhs)} = {format_expr(rhs)}")
        lines.append("}")
    for c in suite.checks:
        body = " ".join(f"{k} = {v}" for k, v in c.settings)
        lines.append(f"check {c.id} {{ {body} }}".replace("{  }", "{ }"))
    return "\n".join(lines) + "\n"


# -- binding ------------------------------------------------------------------


class BindError(ValueError):
    pass


@dataclass
class Binder:
    """Resolves names to generators or scalars and evaluates expressions.

    Resolution order: declared generator > declared formal parameter or
    constant > host-provided scalar binding > the deformation parameter q.
    """
    alphabet: str
    generators: dict = field(default_factory=dict)  # name -> letter
    params: dict = field(default_factory=dict)      # name -> Scalar
    bindings: dict = field(default_factory=dict)    # name -> Scalar

    def resolve(self, name: str):
        if name in self.generators:
            return FreeElement.word(self.alphabet, (self.generators[name],))
        if name in self.params:
            return self.params[name]
        if name in self.bindings:
            return self.bindings[name]
        if name == "q":
            return var("q")
        raise BindError(f"unresolved name {name!r}")

    def eval(self, node):
        if isinstance(node, ScalarLiteral):
            return Scalar.const(node.value)
        if isinstance(node, GeneratorRef):
            return self.resolve(node.name)
        if isinstance(node, Sum):
            total = None
            for sign, term in node.terms:
                v = self.eval(term)
                if sign < 0:
                    v = -v
                total = v if total is None else _add(total, v, self.alphabet)
            return total
        if isinstance(node, Product):
            total = None
            for f in node.factors:
                v = self.eval(f)
                total = v if total is None else _mul(total, v)
            return total
        if isinstance(node, Power):
            base = self.eval(node.base)
            n = node.exponent
            if isinstance(base, Scalar):
                if n >= 0:
                    out = ONE
                    for _ in range(n):
                        out = out * base
                    return out
                out = base.inverse()
                for _ in range(-n - 1):
                    out = out * base.inverse()
                return out
            if n < 0:
                raise BindError("negative powers are only defined for scalars")
            out = FreeElement.unit(self.alphabet)
            for _ in range(n):
                out = out * base
            return out
        if isinstance(node, (QComm, Comm)):
            n = node.exponent if isinstance(node, QComm) else 0
            a = self.eval(node.left)
            b = self.eval(node.right)
            if isinstance(a, Scalar) and isinstance(b, Scalar):
                return (qpow(n) - qpow(-n)) * a * b
            a = _as_element(a, self.alphabet)
            b = _as_element(b, self.alphabet)
            return qcomm(a, b, n)
        raise TypeError(f"cannot evaluate node {node!r}")


def _as_element(v, alphabet: str) -> FreeElement:
    if isinstance(v, FreeElement):
        return v
    return FreeElement.unit(alphabet).scale(v)


def _add(a, b, alphabet: str):
    if isinstance(a, Scalar) and isinstance(b, Scalar):
        return a + b
    return _as_element(a, alphabet) + _as_element(b, alphabet)


def _mul(a, b):
    if isinstance(a, Scalar) and isinstance(b, Scalar):
        return a * b
    if isinstance(a, Scalar):
        return b.scale(a)
    if isinstance(b, Scalar):
        return a.scale(b)
    return a * b


def binder_for_algebra(decl: AlgebraDecl, suite: Suite,
                       alphabet: str | None = None,
                       letter_map: dict | None = None,
                       bindings: dict | None = None) -> Binder:
    alphabet = alphabet or decl.name
    letter_map = letter_map or {}
    gens = {g: letter_map.get(g, g) for g in decl.generators}
    params = {}
    for p in suite.params:
        if p.value is not None:
            params[p.name] = Scalar.const(p.value)
        elif p.name in VARS:
            params[p.name] = var(p.name)
        else:
            raise BindError(f"param {p.name!r} is not a known formal variable "
                            "and has no value")
    return Binder(alphabet, gens, params, bindings or {})


# -- rendering elements back into the grammar ---------------------------------


def scalar_to_ast(x: Scalar):
    num = _poly_to_ast(x.num)
    if x.den == ONE.num:
        return num
    return Product((num, Power(_poly_to_ast(x.den), -1)))


def _poly_to_ast(p):
    terms = []
    for mono, coeff in p.sorted_terms():
        factors = []
        sign = 1
        if coeff < 0:
            sign, coeff = -1, -coeff
        if coeff != 1 or not any(mono):
            factors.append(ScalarLiteral(coeff))
        for v, e in zip(VARS, mono):
            if e == 0:
                continue
            factors.append(GeneratorRef(v) if e == 1 else Power(GeneratorRef(v), e))
        node = factors[0] if len(factors) == 1 else Product(tuple(factors))
        terms.append((sign, node))
    if not terms:
        return ScalarLiteral(Fraction(0))
    if len(terms) == 1 and terms[0][0] == 1:
        return terms[0][1]
    return Sum(tuple(terms))


def element_to_ast(x: FreeElement, name_map: dict | None = None):
    """Render a FreeElement as a grammar expression (sum of coefficient *
    generator products)."""
    name_map = name_map or {}
    terms = []
    for word in sorted(x.terms, key=lambda w: (len(w), w)):
        coeff = x.terms[word]
        factors = []
        coeff_ast = scalar_to_ast(coeff)
        if not (isinstance(coeff_ast, ScalarLiteral) and coeff_ast.value == 1) or not word:
            if isinstance(coeff_ast, Sum):
                factors.append(coeff_ast)
            else:
                factors.append(coeff_ast)
        for letter in word:
            factors.append(GeneratorRef(name_map.get(letter, letter)))
        if not factors:
            factors.append(ScalarLiteral(Fraction(1)))
        node = factors[0] if len(factors) == 1 else Product(tuple(factors))
        terms.append((1, node))
    if not terms:
        return ScalarLiteral(Fraction(0))
    if len(terms) == 1:
        return terms[0][1]
    return Sum(tuple(terms))


# -- builtin suites ------------------------------------------------------------

QUANTUM_NAME_MAP = {"t0'": "t0i", "t1'": "t1i"}
QUANTUM_LETTER_MAP = {"t0i": "t0'", "t1i": "t1'"}
QUANTUM_GENERATOR_NAMES = ("e0", "e1", "f0", "f1", "t0", "t0i", "t1", "t1i")


def presentation_suite_text(algebra: str) -> str:
    from . import coideal as co

    pres = co.presentation(algebra)
    lines = ["# generated presentation suite; golden data for round trips",
             "param kp", "param km", "param ep", "param em", "param pt"]
    lines.append(f"algebra {algebra} {{")
    lines.append("  generators " + " ".join(pres.generators))
    for label, lhs, rhs in pres.relations:
        lines.append(f"  # {label}")
        lines.append(f"  relation {format_expr(element_to_ast(lhs))} = "
                     f"{format_expr(element_to_ast(rhs))}")
    lines.append("}")
    lines.append(f"check relations.{algebra} {{ }}")
    return "\n".join(lines) + "\n"


def specialization_suite_text(case: str) -> str:
    from . import coideal as co

    idents = co.specialization_identities(case)
    lines = [f"# generated specialization identities, {case} boundary case",
             "param kp", "param km", "param ep", "param em", "param pt"]
    lines.append("algebra uq {")
    lines.append("  generators " + " ".join(QUANTUM_GENERATOR_NAMES))
    for si in idents:
        rhs = co.psi_apply(si.algebra, si.target)
        if si.target_subs:
            rhs = rhs.substitute(si.target_subs)
        lines.append(f"  # {si.label}")
        lines.append(
            "  relation "
            f"{format_expr(element_to_ast(si.lhs, QUANTUM_NAME_MAP))} = "
            f"{format_expr(element_to_ast(rhs, QUANTUM_NAME_MAP))}")
    lines.append("}")
    lines.append(f"check specialization.{case} {{ }}")
    return "\n".join(lines) + "\n"


def checks_suite_text(ids) -> str:
    lines = ["# generated check catalog suite"]
    for cid in ids:
        lines.append(f"check {cid} {{ }}")
    return "\n".join(lines) + "\n"


def builtin_suite_names() -> list:
    from . import coideal as co

    names = ["all", "negative-controls"]
    names += list(co.ALGEBRAS)
    names += [f"specialization-{c}" for c in ("triangular", "diagonal", "special")]
    return names


def builtin_suite_text(name: str) -> str:
    from importlib import resources

    path = resources.files("qonsager").joinpath(f"suites/{name}.suite")
    return path.read_text(encoding="utf-8")


def generate_builtin_suites() -> dict:
    """Regenerate every builtin suite from the hard-coded tables."""
    from . import coideal as co
    from .verify import catalog_ids

    out = {}
    for algebra in co.ALGEBRAS:
        out[algebra] = presentation_suite_text(algebra)
    for case in ("triangular", "diagonal", "special"):
        out[f"specialization-{case}"] = specialization_suite_text(case)
    out["all"] = checks_suite_text(catalog_ids(include_controls=False))
    out["negative-controls"] = checks_suite_text(
        [cid for cid in catalog_ids(include_controls=True)
         if cid.startswith("control.")])
    return out


def golden_roundtrip_problems() -> list:
    """Compare every builtin suite against the hard-coded tables and the
    round-trip law; returns a list of problem descriptions."""
    from . import coideal as co

    problems = []
    regenerated = generate_builtin_suites()
    for name, text in regenerated.items():
        try:
            stored = builtin_suite_text(name)
        except FileNotFoundError:
            problems.append(f"{name}: suite file missing")
            continue
        if stored != text:
            problems.append(f"{name}: stored suite differs from regeneration")
        suite = parse_suite(stored)
        if format_suite(parse_suite(format_suite(suite))) != format_suite(suite):
            problems.append(f"{name}: format round trip unstable")
        for decl in suite.algebras:
            if decl.name in co.ALGEBRAS:
                binder = binder_for_algebra(decl, suite)
                pres = co.presentation(decl.name)
                if len(decl.relations) != len(pres.relations):
                    problems.append(f"{name}: relation count mismatch")
                    continue
                for (lhs, rhs), (label, plhs, prhs) in zip(decl.relations,
                                                           pres.relations):
                    got_l = _as_element(binder.eval(lhs), decl.name)
                    got_r = _as_element(binder.eval(rhs), decl.name)
                    if got_l != plhs or got_r != prhs:
                        problems.append(f"{name}: relation {label} differs")
            elif decl.name == "uq":
                binder = binder_for_algebra(decl, suite, alphabet="quantum",
                                            letter_map=QUANTUM_LETTER_MAP)
                case = name.split("-", 1)[1]
                idents = co.specialization_identities(case)
                for (lhs, rhs), si in zip(decl.relations, idents):
                    target = co.psi_apply(si.algebra, si.target)
                    if si.target_subs:
                        target = target.substitute(si.target_subs)
                    got_l = _as_element(binder.eval(lhs), "quantum")
                    got_r = _as_element(binder.eval(rhs), "quantum")
                    if got_l != si.lhs or got_r != target:
                        problems.append(f"{name}: identity {si.label} differs")
    return problems
