"""Ring presentations ``k[x]/I`` and their text format.

The format is::

    ring { char = 32003; vars = [x, y, z]; model = local;
           ideal = ["x^2-y^5", "x*y^2+y*z^3-z^5"] }

Polynomials use integer coefficients, ``^`` for exponents, optional ``*``
between factors and ``+``/``-``.  Whitespace is insignificant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .ring import DEFAULT_CHAR, Polynomial, format_poly, is_prime


class RingSyntaxError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.line, self.col = line, col
        where = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(msg + where)


class InvalidRingError(ValueError):
    pass


@dataclass(frozen=True)
class RingSpec:
    """A presentation ``k[vars]/(gens)`` localized at the origin (``local``) or standard graded."""

    char: int
    vars: tuple
    gens: tuple = ()
    model: str = "local"
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not is_prime(self.char):
            raise InvalidRingError(f"characteristic {self.char} is not prime")
        if self.char >= 2**31:
            raise InvalidRingError("characteristic must be below 2^31")
        if self.model not in ("local", "graded"):
            raise InvalidRingError(f"unknown model {self.model!r}")
        if len(set(self.vars)) != len(self.vars):
            raise InvalidRingError("duplicate variable names")
        for g in self.gens:
            if g.nvars != len(self.vars) or g.p != self.char:
                raise InvalidRingError("generator does not live in the ambient ring")
            if g.is_zero():
                raise InvalidRingError("zero generator")
            if g.constant_term():
                raise InvalidRingError(f"generator {format_poly(g, self.vars)} is a unit in the local ring")
            if self.model == "graded" and not g.is_homogeneous():
                raise InvalidRingError(f"generator {format_poly(g, self.vars)} is not homogeneous")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def poly(self, text: str) -> Polynomial:
        return parse_poly(text, self.vars, self.char)

    def fmt(self, f: Polynomial) -> str:
        return format_poly(f, self.vars)

    def with_gens(self, gens, model=None, name="") -> "RingSpec":
        return RingSpec(self.char, self.vars, tuple(gens), model or self.model, name)


def make_ring(vars, gens, char=DEFAULT_CHAR, model="local", name="") -> RingSpec:
    vars = tuple(vars)
    polys = tuple(g if isinstance(g, Polynomial) else parse_poly(g, vars, char) for g in gens)
    return RingSpec(char, vars, polys, model, name)


# ---------------------------------------------------------------- polynomial parser

_POLY_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-])|(\()|(\)))")


def _split_identifier(word, names):
    """Split a run like ``xyz`` into known variable names, longest match first."""
    if word in names:
        return [word]
    for k in range(len(word) - 1, 0, -1):
        head = word[:k]
        if head in names:
            rest = _split_identifier(word[k:], names)
            if rest is not None:
                return [head] + rest
    return None


def parse_poly(text: str, names, p: int = DEFAULT_CHAR, line=None, col0=0) -> Polynomial:
    """Parse a polynomial in the given variables (parenthesized sub-expressions allowed)."""
    names = list(names)
    index = {v: i for i, v in enumerate(names)}
    n = len(names)
    toks = []
    pos = 0
    text_stripped = text.rstrip()
    while pos < len(text_stripped):
        m = _POLY_TOKEN.match(text_stripped, pos)
        if not m or m.end() == pos:
            raise RingSyntaxError(f"unexpected character {text_stripped[pos]!r} in polynomial", line, col0 + pos + 1)
        start = m.start(m.lastindex)
        kind = m.lastindex
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append((0, None, len(text_stripped)))
    i = 0

    def err(msg, tok):
        raise RingSyntaxError(msg, line, col0 + tok[2] + 1)

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def exponent():
        if peek()[0] == 3:
            take()
            t = take()
            if t[0] != 1:
                err("expected integer exponent", t)
            return int(t[1])
        return 1

    def factor():
        t = take()
        if t[0] == 1:
            return Polynomial.constant(int(t[1]), n, p) ** exponent()
        if t[0] == 2:
            parts = _split_identifier(t[1], index)
            if parts is None:
                err(f"unknown variable {t[1]!r}", t)
            f = Polynomial.constant(1, n, p)
            for name in parts[:-1]:
                f = f * Polynomial.var(index[name], n, p)
            return f * Polynomial.var(index[parts[-1]], n, p) ** exponent()
        if t[0] == 6:
            f = expr()
            close = take()
            if close[0] != 7:
                err("expected ')'", close)
            return f ** exponent()
        err("expected a coefficient, variable or '('", t)

    def term():
        f = factor()
        while True:
            k = peek()[0]
            if k == 4:
                take()
                f = f * factor()
            elif k in (1, 2, 6):
                f = f * factor()
            else:
                return f

    def expr():
        sign = 1
        if peek()[0] == 5:
            sign = -1 if take()[1] == "-" else 1
        f = term().scale(sign)
        while peek()[0] == 5:
            sign = -1 if take()[1] == "-" else 1
            f = f + term().scale(sign)
        return f

    if toks[0][0] == 0:
        raise RingSyntaxError("empty polynomial", line, col0 + 1)
    f = expr()
    if peek()[0] != 0:
        err("unexpected token", peek())
    return f


# ---------------------------------------------------------------- ring document parser

_DOC_TOKEN = re.compile(r'(?P<ws>\s+)|(?P<id>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|(?P<str>"[^"\n]*")|(?P<punct>[{}\[\]=;,])')


def _tokenize_doc(text):
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _DOC_TOKEN.match(text, pos)
        if not m:
            raise RingSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        val = m.group()
        if kind != "ws":
            toks.append((kind, val, line, pos - line_start + 1))
        nl = val.count("\n")
        if nl:
            line += nl
            line_start = pos + val.rfind("\n") + 1
        pos = m.end()
    toks.append(("eof", None, line, pos - line_start + 1))
    return toks


def parse_ring(text: str, name: str = "") -> RingSpec:
    toks = _tokenize_doc(text)
    i = 0

    def take(kind=None, val=None):
        nonlocal i
        t = toks[i]
        if (kind and t[0] != kind) or (val is not None and t[1] != val):
            want = val or kind
            got = t[1] if t[1] is not None else "end of input"
            raise RingSyntaxError(f"expected {want!r}, got {got!r}", t[2], t[3])
        i += 1
        return t

    def peek():
        return toks[i]

    def ident_list():
        take("punct", "[")
        out = []
        if peek()[1] != "]":
            out.append(take("id")[1])
            while peek()[1] == ",":
                take()
                out.append(take("id")[1])
        take("punct", "]")
        return out

    def string_list():
        take("punct", "[")
        out = []
        if peek()[1] != "]":
            out.append(take("str"))
            while peek()[1] == ",":
                take()
                out.append(take("str"))
        take("punct", "]")
        return out

    take("id", "ring")
    take("punct", "{")
    fields = {}
    while peek()[1] != "}":
        key_tok = take("id")
        key = key_tok[1]
        if key in fields:
            raise RingSyntaxError(f"duplicate field {key!r}", key_tok[2], key_tok[3])
        take("punct", "=")
        if key == "char":
            t = take("int")
            fields[key] = (int(t[1]), t)
        elif key == "vars":
            fields[key] = (ident_list(), key_tok)
        elif key == "model":
            t = take("id")
            fields[key] = (t[1], t)
        elif key == "ideal":
            fields[key] = (string_list(), key_tok)
        else:
            raise RingSyntaxError(f"unknown field {key!r}", key_tok[2], key_tok[3])
        if peek()[1] == ";":
            take()
        elif peek()[1] != "}":
            t = peek()
            raise RingSyntaxError("expected ';' or '}'", t[2], t[3])
    take("punct", "}")
    take("eof")

    if "vars" not in fields:
        raise RingSyntaxError("missing field 'vars'", toks[0][2], toks[0][3])
    char = fields.get("char", (DEFAULT_CHAR, None))[0]
    if not is_prime(char):
        t = fields["char"][1]
        raise InvalidRingError(f"characteristic {char} is not prime (line {t[2]}, column {t[3]})")
    names = fields["vars"][0]
    model = fields.get("model", ("local", None))[0]
    gens = []
    for t in fields.get("ideal", ([], None))[0]:
        f = parse_poly(t[1][1:-1], names, char, line=t[2], col0=t[3])
        if f.constant_term():
            raise InvalidRingError(f"generator {t[1]} has a nonzero constant term (line {t[2]}, column {t[3]})")
        gens.append(f)
    return RingSpec(char, tuple(names), tuple(gens), model, name)


def serialize_ring(R: RingSpec) -> str:
    ideal = ", ".join(f'"{format_poly(g, R.vars)}"' for g in R.gens)
    return f"ring {{ char = {R.char}; vars = [{', '.join(R.vars)}]; model = {R.model}; ideal = [{ideal}] }}"
