"""Expression language: canonical printing and parsing of states, Weyl
elements and polynomials.

State syntax (informal)::

    expr    := sum ('circ' int sum)*           circ binds loosest, left-assoc
    sum     := term (('+' | '-') term)*
    term    := '-' term | atom ('*' atom)*
    atom    := number ['*'] ['sqrt6'] | 'sqrt6' | gen | 'D^' nat atom
             | ':' atom atom+ ':' | '(' expr ')' | builtin
    builtin := L_S[i] | W_S[i] | L_H | W_H | L_E | W_E | theta[i] | phi[i]
             | omega[l1, ..., ln] | Lalpha

``:a b c:`` nests to the right, ``:a (:b c:):``. A nested normal order
inside ``: ... :`` must be parenthesized. Numbers stand for multiples of the
vacuum. ``*`` scales; at most one factor of a product may be a state.

Weyl mode uses variables ``x1.. d1.. e1..`` with juxtaposition or ``*`` as
the (noncommutative) product and ``^`` for powers. Poly mode uses
``x1.. xp1..`` (commutative).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import FreeAlgebra
from .poly import Poly, format_terms, sym_names
from .scalar import SQRT6, Scalar
from .state import State

__all__ = [
    "ParseError",
    "Node",
    "tokenize",
    "parse",
    "evaluate",
    "parse_state",
    "parse_weyl",
    "parse_poly",
    "format_state",
    "format_monomial",
    "to_text",
    "Context",
]


class ParseError(ValueError):
    """Syntax or elaboration error with a 1-based source position."""

    def __init__(self, message, line=1, col=1, expected=()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        exp = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"line {line}, column {col}: {message}{exp}")


# -- printing --------------------------------------------------------------

def _factor_text(alg: FreeAlgebra, g: int, k: int) -> str:
    name = alg.generators[g].name
    return f"D^{k} {name}" if k else name


def format_monomial(alg: FreeAlgebra, mono) -> str:
    if not mono:
        return ""
    parts = [_factor_text(alg, g, k) for g, k in mono]
    if len(parts) == 1:
        return parts[0]
    return ":" + " ".join(parts) + ":"


def _state_order(mono):
    return (-len(mono), mono)


def format_state(u: State) -> str:
    """Canonical text; higher-degree monomials first, ``0`` for the zero state."""
    pairs = [(format_monomial(u.algebra, m), c) for m, c in sorted(u.items(), key=lambda t: _state_order(t[0]))]
    return format_terms(pairs, bare_minus=False)


def to_text(value) -> str:
    if isinstance(value, State):
        return format_state(value)
    return str(value)


# -- tokens ----------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<num>\d+(?:/\d+)?)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[-+*:()\[\],^])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num, id, sym, end
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    out = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind != "ws":
                out.append(Token(kind, s, line, col))
            col += len(s)
        pos = m.end()
    out.append(Token("end", "", line, col))
    return out


# -- syntax tree -----------------------------------------------------------

@dataclass(frozen=True)
class Node:
    kind: str
    args: tuple = ()
    line: int = 1
    col: int = 1


_BUILTINS_INDEXED = {"L_S", "W_S", "theta", "phi", "omega", "L_H", "W_H", "L_E", "W_E"}
_BUILTINS_BARE = {"L_H", "W_H", "L_E", "W_E", "Lalpha"}
_KEYWORDS = {"circ", "sqrt6", "D"}


class _Parser:
    def __init__(self, text: str, mode: str):
        self.toks = tokenize(text)
        self.i = 0
        self.mode = mode

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, expected=()):
        t = self.tok
        raise ParseError(msg, t.line, t.col, expected)

    def accept(self, text) -> Token | None:
        if self.tok.text == text and self.tok.kind in ("sym", "id"):
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text) -> Token:
        t = self.accept(text)
        if t is None:
            found = self.tok.text or "end of input"
            self.error(f"unexpected {found!r}", [repr(text)])
        return t

    def node(self, kind, args, tok):
        return Node(kind, tuple(args), tok.line, tok.col)

    # entry
    def parse(self) -> Node:
        if self.tok.kind == "end":
            self.error("empty expression", ["expression"])
        n = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}", ["'+'", "'-'", "'*'", "'circ'", "end of input"])
        return n

    def expr(self) -> Node:
        left = self.sum()
        while self.mode == "state" and self.tok.text == "circ" and self.tok.kind == "id":
            t = self.tok
            self.i += 1
            n = self.integer()
            right = self.sum()
            left = self.node("circ", (left, n, right), t)
        return left

    def integer(self) -> int:
        sign = -1 if self.accept("-") else 1
        if self.tok.kind != "num" or "/" in self.tok.text:
            self.error("expected an integer", ["integer"])
        v = int(self.tok.text)
        self.i += 1
        return sign * v

    def sum(self) -> Node:
        left = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "sym":
            op = self.tok
            self.i += 1
            right = self.term()
            left = self.node("add" if op.text == "+" else "sub", (left, right), op)
        return left

    def term(self) -> Node:
        t = self.tok
        if self.accept("-"):
            return self.node("neg", (self.term(),), t)
        items = [self.power()]
        while True:
            if self.accept("*"):
                items.append(self.power())
            elif self.mode != "state" and self._starts_atom():
                items.append(self.power())
            else:
                break
        return items[0] if len(items) == 1 else self.node("mul", items, t)

    def _starts_atom(self) -> bool:
        t = self.tok
        if t.kind in ("num",):
            return True
        if t.kind == "id" and t.text != "circ":
            return True
        return t.kind == "sym" and t.text == "("

    def power(self) -> Node:
        a = self.atom()
        if self.mode != "state" and self.tok.text == "^" and self.tok.kind == "sym":
            t = self.tok
            self.i += 1
            if self.tok.kind != "num" or "/" in self.tok.text:
                self.error("expected a non-negative integer exponent", ["integer"])
            k = int(self.tok.text)
            self.i += 1
            a = self.node("pow", (a, k), t)
        return a

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            val = Scalar(Fraction(t.text))
            # 1/9sqrt6 and 1/9*sqrt6 are single literals
            if self.tok.text == "sqrt6":
                self.i += 1
                val = val * SQRT6
            elif (self.tok.text == "*" and self.toks[self.i + 1].text == "sqrt6"):
                self.i += 2
                val = val * SQRT6
            return self.node("num", (val,), t)
        if t.kind == "id":
            if t.text == "sqrt6":
                self.i += 1
                return self.node("num", (SQRT6,), t)
            if self.mode == "state":
                return self.state_atom()
            self.i += 1
            return self.node("var", (t.text,), t)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        if self.mode == "state" and t.text == ":":
            return self.normal_order()
        found = t.text or "end of input"
        self.error(f"unexpected {found!r}", ["number", "generator", "'('", "':'", "builtin"])

    def state_atom(self) -> Node:
        t = self.tok
        name = t.text
        if name == "D":
            self.i += 1
            self.expect("^")
            if self.tok.kind != "num" or "/" in self.tok.text:
                self.error("expected derivative order", ["integer"])
            k = int(self.tok.text)
            self.i += 1
            return self.node("deriv", (k, self.atom()), t)
        if name == "circ":
            self.error("'circ' needs a left operand", ["number", "generator", "'('"])
        self.i += 1
        if self.tok.text == "[" and self.tok.kind == "sym":
            if name not in _BUILTINS_INDEXED:
                self.error(f"{name!r} does not take an index")
            self.i += 1
            args = [self.integer()]
            while self.accept(","):
                args.append(self.integer())
            self.expect("]")
            return self.node("builtin", (name, tuple(args)), t)
        if name in _BUILTINS_BARE:
            return self.node("builtin", (name, ()), t)
        return self.node("gen", (name,), t)

    def normal_order(self) -> Node:
        t = self.expect(":")
        items = []
        while self.tok.text != ":" or self.tok.kind != "sym":
            if self.tok.kind == "end":
                self.error("unterminated normal order", ["':'"])
            items.append(self.atom())
        if len(items) < 2:
            self.error("a normal order needs at least two factors", ["factor"])
        self.expect(":")
        return self.node("wick", items, t)


def parse(text: str, mode: str = "state") -> Node:
    """Parse ``text`` to a syntax tree; ``mode`` is ``state``, ``weyl`` or ``poly``."""
    if mode not in ("state", "weyl", "poly"):
        raise ValueError(f"unknown mode {mode!r}")
    return _Parser(text, mode).parse()


# -- elaboration -----------------------------------------------------------

@dataclass
class Context:
    """What builtins and generators elaborate against."""

    algebra: FreeAlgebra | None = None
    action: object = None  # DiagonalAction
    alpha: list | None = None
    n: int | None = None  # Weyl / poly variable count
    calc: object = None
    extras: dict = field(default_factory=dict)

    def calculus(self):
        from .ope import ModeCalculus

        if self.calc is None:
            self.calc = ModeCalculus(self.algebra)
        return self.calc


def _err(node: Node, msg: str):
    raise ParseError(msg, node.line, node.col)


def _as_state(val, ctx: Context, node: Node) -> State:
    if isinstance(val, State):
        return val
    return State.vacuum(ctx.algebra, val)


def _builtin(node: Node, ctx: Context):
    from . import commutant, fields, w3

    name, args = node.args
    alg = ctx.algebra

    def one_index(default=None):
        if not args:
            if default is None:
                _err(node, f"{name} needs an index")
            return default
        if len(args) != 1:
            _err(node, f"{name} takes one index")
        return args[0]

    try:
        if name in ("L_S", "W_S"):
            L, W = w3.build_LS_WS(alg, one_index())
            return L if name == "L_S" else W
        if name in ("L_H", "W_H"):
            L, W = w3.build_heis_LW(alg, one_index(1))
            return L if name == "L_H" else W
        if name in ("L_E", "W_E"):
            L, W = w3.build_bc_LW(alg, one_index(1))
            return L if name == "L_E" else W
        if name == "Lalpha":
            return fields.virasoro_alpha(alg, ctx.alpha)
        if name in ("theta", "phi"):
            if ctx.action is None:
                _err(node, f"{name}[i] needs an action")
            i = one_index()
            if name == "theta":
                return commutant.build_theta(ctx.action, i)
            basis = commutant.phi_basis(ctx.action)
            if not 1 <= i <= len(basis):
                _err(node, f"phi index {i} out of range 1..{len(basis)}")
            return commutant.build_phi(ctx.action, basis[i - 1])
        if name == "omega":
            if len(args) != alg.bg_pairs:
                _err(node, f"omega needs {alg.bg_pairs} entries")
            return commutant.build_omega(alg, args)
    except (IndexError, ValueError, KeyError) as exc:
        if isinstance(exc, ParseError):
            raise
        _err(node, str(exc).strip("'\""))
    _err(node, f"unknown builtin {name!r}")


def _eval_state(node: Node, ctx: Context):
    from .ope import circle, wick
    from .state import derive_n

    k = node.kind
    if k == "num":
        return node.args[0]
    if k == "gen":
        name = node.args[0]
        try:
            return State.generator(ctx.algebra, ctx.algebra.index(name))
        except KeyError:
            _err(node, f"unknown identifier {name!r}")
    if k == "builtin":
        return _builtin(node, ctx)
    if k == "deriv":
        kk, inner = node.args
        return derive_n(_as_state(_eval_state(inner, ctx), ctx, node), kk)
    if k == "wick":
        vals = [_as_state(_eval_state(a, ctx), ctx, a) for a in node.args]
        out = vals[-1]
        for v in reversed(vals[:-1]):
            out = wick(v, out, ctx.calculus())
        return out
    if k == "neg":
        return -_eval_state(node.args[0], ctx)
    if k in ("add", "sub"):
        a = _eval_state(node.args[0], ctx)
        b = _eval_state(node.args[1], ctx)
        if k == "sub":
            b = -b
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a + b
        return _as_state(a, ctx, node) + _as_state(b, ctx, node)
    if k == "mul":
        scalar = Scalar(1)
        state = None
        for a in node.args:
            v = _eval_state(a, ctx)
            if isinstance(v, State):
                if state is not None:
                    _err(a, "product of two states; use :a b: for the normally ordered product")
                state = v
            else:
                scalar = scalar * v
        return scalar if state is None else scalar * state
    if k == "circ":
        a, n, b = node.args
        return circle(_as_state(_eval_state(a, ctx), ctx, a), _as_state(_eval_state(b, ctx), ctx, b), n, ctx.calculus())
    _err(node, f"unsupported construct {k!r}")


_WEYL_VAR = re.compile(r"^(x|d|e)(\d+)$")
_POLY_VAR = re.compile(r"^(x|xp)(\d+)$")


def _eval_weyl(node: Node, ctx: Context):
    from .weyl import WeylElement, euler

    n = ctx.n
    k = node.kind
    if k == "num":
        return WeylElement.const(n, node.args[0])
    if k == "var":
        m = _WEYL_VAR.match(node.args[0])
        if not m or not 1 <= int(m.group(2)) <= n:
            _err(node, f"unknown variable {node.args[0]!r}")
        i = int(m.group(2)) - 1
        return {"x": WeylElement.x, "d": WeylElement.d}.get(m.group(1), lambda n, i: euler(n, i))(n, i)
    return _eval_ring(node, ctx, _eval_weyl)


def _eval_poly(node: Node, ctx: Context):
    names = sym_names(ctx.n)
    k = node.kind
    if k == "num":
        return Poly.const(names, node.args[0])
    if k == "var":
        m = _POLY_VAR.match(node.args[0])
        if not m or not 1 <= int(m.group(2)) <= ctx.n:
            _err(node, f"unknown variable {node.args[0]!r}")
        i = int(m.group(2)) - 1 + (ctx.n if m.group(1) == "xp" else 0)
        return Poly.var(names, i)
    return _eval_ring(node, ctx, _eval_poly)


def _eval_ring(node: Node, ctx: Context, rec):
    k = node.kind
    if k == "neg":
        return -rec(node.args[0], ctx)
    if k == "add":
        return rec(node.args[0], ctx) + rec(node.args[1], ctx)
    if k == "sub":
        return rec(node.args[0], ctx) - rec(node.args[1], ctx)
    if k == "mul":
        out = rec(node.args[0], ctx)
        for a in node.args[1:]:
            out = out * rec(a, ctx)
        return out
    if k == "pow":
        return rec(node.args[0], ctx) ** node.args[1]
    _err(node, f"unsupported construct {k!r} in this mode")


def evaluate(node: Node, ctx: Context, mode: str = "state"):
    if mode == "state":
        if ctx.algebra is None:
            raise ValueError("state mode needs an algebra")
        return _as_state(_eval_state(node, ctx), ctx, node)
    if ctx.n is None:
        raise ValueError(f"{mode} mode needs the number of variables")
    return _eval_weyl(node, ctx) if mode == "weyl" else _eval_poly(node, ctx)


def parse_state(text: str, algebra: FreeAlgebra, action=None, alpha=None, calc=None) -> State:
    """Parse and elaborate ``text`` to a State."""
    ctx = Context(algebra=algebra, action=action, alpha=alpha, calc=calc)
    return evaluate(parse(text, "state"), ctx, "state")


def parse_weyl(text: str, n: int):
    return evaluate(parse(text, "weyl"), Context(n=n), "weyl")


def parse_poly(text: str, n: int) -> Poly:
    return evaluate(parse(text, "poly"), Context(n=n), "poly")
