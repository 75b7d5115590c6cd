"""Exact multivariate polynomials, term orders and the expression parser."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ParseError, RingMismatch
from .fields import QQ, Field


class Ring:
    """Polynomial ring ``field[names]``; exponent vectors are dense tuples."""

    def __init__(self, names: Iterable[str], field: Field = QQ):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self.field = field
        self.nvars = len(self.names)
        self._index = {n: i for i, n in enumerate(self.names)}

    def __repr__(self):
        return f"Ring({','.join(self.names)}; {self.field!r})"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names and self.field == other.field

    def __hash__(self):
        return hash((self.names, self.field))

    def index(self, var) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.nvars:
                raise RingMismatch(f"variable index {var} out of range for {self}")
            return var
        try:
            return self._index[var]
        except KeyError:
            raise RingMismatch(f"unknown variable {var!r} in {self}") from None

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    @property
    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def var(self, v) -> "Poly":
        i = self.index(v)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def const(self, c) -> "Poly":
        c = c if _is_native(c, self.field) else self.field.convert(c)
        if not c:
            return self.zero
        return Poly(self, {(0,) * self.nvars: c})

    def monomial(self, exps, c=1) -> "Poly":
        c = self.field.convert(c)
        return Poly(self, {tuple(exps): c} if c else {})

    def from_dict(self, terms: Mapping) -> "Poly":
        f = self.field
        out = {}
        for e, c in terms.items():
            c = f.convert(c)
            if c:
                out[tuple(e)] = c
        return Poly(self, out)

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def with_field(self, field: Field) -> "Ring":
        return Ring(self.names, field)

    def linear_form(self, coeffs) -> "Poly":
        out = self.zero
        for i, c in enumerate(coeffs):
            if c:
                out = out + self.var(i) * c
        return out


def _is_native(c, field: Field) -> bool:
    if field.p is None:
        return type(c) is type(field.one)
    if field.p:
        return isinstance(c, int) and not isinstance(c, bool) and 0 <= c < field.p
    return type(c) is type(field.one)


class Poly:
    """Immutable polynomial: a map exponent-tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- structure -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (order of vanishing at 0); -1 for zero."""
        return min((sum(e) for e in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = f.add(v, c)
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Poly(self.ring, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            f = self.ring.field
            c = other if _is_native(other, f) else f.convert(other)
            if not c:
                return self.ring.zero
            return Poly(self.ring, {e: f.mul(v, c) for e, v in self.terms.items()})
        other = self._coerce(other)
        f = self.ring.field
        add, mul = f.add, f.mul
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = mul(c1, c2) if v is None else add(v, mul(c1, c2))
        return Poly(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        return self * c

    def monic(self, order: "TermOrder") -> "Poly":
        if not self.terms:
            return self
        lead = max(self.terms, key=order.key)
        return self * self.ring.field.inv(self.terms[lead])

    def leading_monomial(self, order: "TermOrder"):
        return max(self.terms, key=order.key)

    # -- calculus and composition ----------------------------------------
    def derivative(self, var) -> "Poly":
        i = self.ring.index(var)
        f = self.ring.field
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                d = f.mul(c, f.convert(k))
                if d:
                    out[e[:i] + (k - 1,) + e[i + 1 :]] = d
        return Poly(self.ring, out)

    def substitute(self, bindings: Mapping, target: Ring | None = None) -> "Poly":
        """Replace variables by polynomials (or scalars) of ``target``.

        Variables without a binding are sent to the variable of the same name
        in ``target`` (which must then exist).
        """
        target = target or self.ring
        images = []
        for i, name in enumerate(self.ring.names):
            if i in bindings:
                img = bindings[i]
            elif name in bindings:
                img = bindings[name]
            else:
                img = target.var(name)
            if not isinstance(img, Poly):
                img = target.const(img)
            elif img.ring != target:
                raise RingMismatch(f"binding for {name} lives in {img.ring}, expected {target}")
            images.append(img)
        conv = target.field.convert if target.field != self.ring.field else None
        powers: list[dict[int, Poly]] = [{0: target.one, 1: img} for img in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k // 2) * power(i, k - k // 2)
            return cache[k]

        out = target.zero
        for e, c in self.terms.items():
            term = target.const(conv(c) if conv else c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def evaluate(self, point: Mapping):
        f = self.ring.field
        vals = [f.convert(point[n]) if not _is_native(point[n], f) else point[n] for n in self.ring.names]
        total = f.zero
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = f.mul(t, v**k if f.p == 0 else pow(v, k, f.p) if f.p else v**k)
            total = f.add(total, t)
        return total

    def change_ring(self, ring: Ring) -> "Poly":
        """Re-embed into a ring whose variables include all used ones."""
        idx = [ring.index(n) for n in self.ring.names]
        conv = ring.field.convert if ring.field != self.ring.field else None
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    ne[idx[i]] = k
            c = conv(c) if conv else c
            if c:
                out[tuple(ne)] = c
        return Poly(ring, out)

    # -- printing --------------------------------------------------------
    def __repr__(self):
        return f"Poly({self!s})"

    def __str__(self):
        return self.to_str()

    def to_str(self, order: "TermOrder | None" = None) -> str:
        if not self.terms:
            return "0"
        order = order or GREVLEX
        f = self.ring.field
        parts = []
        for e in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            cs = f.to_str(c)
            if f.p is None:
                cs = f"({cs})" if any(ch in cs for ch in "+-/ ") and mono else cs
            if mono:
                if cs == "1":
                    s = mono
                elif cs == "-1":
                    s = "-" + mono
                else:
                    s = f"{cs}*{mono}"
            else:
                s = cs
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out


# ---------------------------------------------------------------------------
# term orders


@dataclass(frozen=True)
class TermOrder:
    """Degree reverse-lexicographic order, global or local.

    ``kind`` is ``"global"`` (graded revlex, 1 smallest) or ``"local"``
    (anti-graded revlex, 1 largest).  ``priority`` lists variable indices from
    highest to lowest priority; ``None`` means the ring's own order.
    """

    kind: str = "local"
    priority: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("global", "local"):
            raise ValueError(f"unknown order kind {self.kind!r}")

    @property
    def is_local(self) -> bool:
        return self.kind == "local"

    def _perm(self, exps):
        if self.priority is None:
            return exps
        return tuple(exps[i] for i in self.priority)

    def key(self, exps) -> tuple:
        e = self._perm(exps)
        deg = sum(e)
        tie = tuple(-k for k in reversed(e))
        return (deg, tie) if self.kind == "global" else (-deg, tie)

    def compare(self, m1, m2) -> int:
        if len(m1) != len(m2):
            raise RingMismatch("monomials from different rings")
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)


GREVLEX = TermOrder("global")
LOCAL = TermOrder("local")


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "op" and val == "**":
            val = "^"
        tokens.append((kind, val, start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, val):
        kind, v, pos = self.take()
        if v != val:
            raise ParseError(f"expected {val!r}, found {v or 'end of input'!r}", pos)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        p = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", pos)
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek()[1] in ("*", "/"):
            op, pos = self.take()[1:]
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError("division only by a nonzero constant", pos)
                p = p * self.ring.field.inv(q.constant_term())
        return p

    def unary(self) -> Poly:
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, v, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", pos)
            return base ** int(v)
        return base

    def atom(self) -> Poly:
        kind, v, pos = self.take()
        if kind == "num":
            return self.ring.const(int(v))
        if kind == "ident":
            if v not in self.ring._index:
                raise ParseError(f"unknown variable {v!r}", pos)
            return self.ring.var(v)
        if v == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse ``text`` (rationals, identifiers, ``+ - * / ^`` and parentheses)."""
    return _Parser(text, ring).parse()
