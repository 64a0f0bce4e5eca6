"""Problem files: a small statement language for δ-σ systems.

::

    # comments run to end of line
    field QQ_t;
    vars x:0 y:1;
    eq t*D(y1) + S(y1);
    target y1^2 - y1;          # optional, used by `member`
    window y1 = [t^2, -2*t^2]; # optional, used by `verify`
    side N;                    # optional
    plug affine a=1 b=2;       # optional B_delta plug for `bounds`

Expressions use ``+ - * / ^``, parentheses, integer literals, ``t`` (QQ_t
only), unknowns ``x<k>``/``y<k>`` and the operators ``D(e)``, ``S(e)``.
Division is only allowed by expressions free of unknowns.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from .ddpoly import DSPolynomial, VarRef, delta_derive, sigma_shift
from .errors import ParseError
from .field import QQ, GroundField, field_from_name
from .seq import SequencePoint

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()\[\];:,=])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    out, line, col, pos = [], 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                out.append(Token(kind, s, line, col))
            col += len(s)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


@dataclass
class ProblemFile:
    field: GroundField = QQ
    q: int = 0
    r: int = 1
    equations: List[DSPolynomial] = dc_field(default_factory=list)
    target: Optional[DSPolynomial] = None
    windows: Dict[Tuple[str, int], list] = dc_field(default_factory=dict)
    side: str = "N"
    plug: Optional[Tuple[str, Dict[str, int]]] = None
    field_declared: bool = dc_field(default=False, compare=False)

    def window_point(self) -> Optional[SequencePoint]:
        if not self.windows:
            return None
        return SequencePoint.make(self.windows, self.field, self.side)

    def to_text(self) -> str:
        """Canonical source; ``parse(p.to_text())`` reproduces ``p``."""
        lines = [f"field {self.field.kind};", f"vars x:{self.q} y:{self.r};"]
        lines += [f"eq {e.to_text()};" for e in self.equations]
        if self.target is not None:
            lines.append(f"target {self.target.to_text()};")
        for (fam, k), w in sorted(self.windows.items()):
            lines.append(f"window {fam}{k} = [" + ", ".join(_entry_text(self.field, a) for a in w) + "];")
        if self.windows or self.side != "N":
            lines.append(f"side {self.side};")
        if self.plug is not None:
            name, params = self.plug
            lines.append(" ".join(["plug", name] + [f"{k}={v}" for k, v in sorted(params.items())]) + ";")
        return "\n".join(lines) + "\n"


def _entry_text(field: GroundField, a) -> str:
    s = field.format(a)
    return f"({s})" if "/" in s or " " in s else s


class _Parser:
    def __init__(self, text: str, default_field: GroundField = QQ):
        self.toks = tokenize(text)
        self.i = 0
        self.pf = ProblemFile(field=default_field)
        self.declared = False

    # -- token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def next(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("op", "name") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not (self.tok.kind in ("op", "name") and self.tok.text == text):
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.next()

    def expect_int(self) -> int:
        if self.tok.kind != "int":
            self.error(f"expected an integer, found {self.tok.text or 'end of input'!r}")
        return int(self.next().text)

    # -- statements
    def parse(self) -> ProblemFile:
        seen_field = False
        while self.tok.kind != "eof":
            head = self.tok
            if head.kind != "name":
                self.error(f"expected a statement keyword, found {head.text!r}")
            kw = head.text
            self.next()
            if kw == "field":
                if seen_field or self.declared or self.pf.equations:
                    self.error("field must be declared once, before vars and equations", head)
                name = self.next()
                try:
                    self.pf.field = field_from_name(name.text)
                except ValueError as exc:
                    self.error(str(exc), name)
                seen_field = self.pf.field_declared = True
            elif kw == "vars":
                if self.declared:
                    self.error("duplicate vars declaration", head)
                self._vars()
            elif kw in ("eq", "target"):
                p = self.expr()
                if kw == "eq":
                    self.pf.equations.append(p)
                elif self.pf.target is not None:
                    self.error("duplicate target", head)
                else:
                    self.pf.target = p
            elif kw == "window":
                self._window()
            elif kw == "side":
                s = self.next()
                if s.text not in ("N", "Z"):
                    self.error("side must be N or Z", s)
                self.pf.side = s.text
            elif kw == "plug":
                self._plug()
            else:
                self.error(f"unknown statement {kw!r}", head)
            self.expect(";")
        return self.pf

    def _vars(self):
        counts = {}
        while self.tok.kind == "name" and self.tok.text in ("x", "y"):
            fam = self.next().text
            if fam in counts:
                self.error(f"family {fam} declared twice")
            self.expect(":")
            counts[fam] = self.expect_int()
        if not counts:
            self.error("vars needs at least one of x:<q> y:<r>")
        self.pf.q = counts.get("x", 0)
        self.pf.r = counts.get("y", 0)
        self.declared = True

    def _window(self):
        tok = self.next()
        fam, k = self._unknown_name(tok)
        self.expect("=")
        self.expect("[")
        entries = []
        if not self.accept("]"):
            while True:
                start = self.tok
                p = self.expr()
                if not p.is_constant():
                    self.error("window entries must be ground-field elements", start)
                entries.append(p.constant_term())
                if self.accept("]"):
                    break
                self.expect(",")
        if (fam, k) in self.pf.windows:
            self.error(f"duplicate window for {fam}{k}", tok)
        widths = {len(w) for w in self.pf.windows.values()}
        if widths and len(entries) not in widths:
            self.error("all windows must have the same width", tok)
        self.pf.windows[(fam, k)] = entries

    def _plug(self):
        name = self.next()
        if name.kind != "name":
            self.error("expected a plug name", name)
        params = {}
        while self.tok.kind == "name":
            key = self.next().text
            self.expect("=")
            params[key] = self.expect_int()
        self.pf.plug = (name.text, params)

    def _unknown_name(self, tok: Token) -> Tuple[str, int]:
        m = re.fullmatch(r"([xy])(\d+)", tok.text) if tok.kind == "name" else None
        if m is None:
            self.error(f"expected an unknown like y1, found {tok.text!r}", tok)
        fam, k = m.group(1), int(m.group(2))
        limit = self.pf.q if fam == "x" else self.pf.r
        if not self.declared:
            self.error("unknowns used before the vars declaration", tok)
        if not 1 <= k <= limit:
            self.error(f"undeclared unknown {tok.text} (declared {fam}:{limit})", tok)
        return fam, k

    # -- expressions: sum := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*
    # unary := '-' unary | power; power := atom ('^' int)?
    def expr(self) -> DSPolynomial:
        p = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.next().text
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> DSPolynomial:
        p = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.next()
            start = self.tok
            q = self.unary()
            if op.text == "*":
                p = p * q
            else:
                if not q.is_constant():
                    self.error("division by a non-constant (expression contains unknowns)", start)
                c = q.constant_term()
                if c == 0:
                    self.error("division by zero", start)
                p = p.scale(self.pf.field.one / c)
        return p

    def unary(self) -> DSPolynomial:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> DSPolynomial:
        base = self.atom()
        if self.accept("^"):
            return base ** self.expect_int()
        return base

    def atom(self) -> DSPolynomial:
        tok = self.tok
        F = self.pf.field
        if tok.kind == "int":
            self.next()
            return DSPolynomial.const(int(tok.text), F)
        if self.accept("("):
            p = self.expr()
            self.expect(")")
            return p
        if tok.kind == "name":
            if tok.text in ("D", "S"):
                self.next()
                self.expect("(")
                p = self.expr()
                self.expect(")")
                return delta_derive(p) if tok.text == "D" else sigma_shift(p)
            if tok.text == "t":
                if F.kind != "QQ_t":
                    self.error("t is only available over QQ_t", tok)
                self.next()
                return DSPolynomial.const(F.t, F)
            self.next()
            fam, k = self._unknown_name(tok)
            return DSPolynomial.var(VarRef(fam, k), F)
        self.error(f"unexpected {tok.text or 'end of input'!r} in expression", tok)


def parse(text: str, default_field: GroundField = QQ) -> ProblemFile:
    """Parse a problem file; raises :class:`ParseError` with line and column.

    ``default_field`` applies when the file has no ``field`` statement.
    """
    return _Parser(text, default_field).parse()


def parse_polynomial(text: str, field: GroundField = QQ, q: int = 9, r: int = 9) -> DSPolynomial:
    """Parse one expression with ``x1..xq`` and ``y1..yr`` declared."""
    p = _Parser(text)
    p.pf.field, p.pf.q, p.pf.r, p.declared = field, q, r, True
    out = p.expr()
    if p.tok.kind != "eof":
        p.error(f"trailing input {p.tok.text!r}")
    return out
