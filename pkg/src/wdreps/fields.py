"""Exact coefficient fields: Q, the rational function field Q(t), and
number fields Q[a]/(m(a)).

Every scalar is immutable and hashable, arithmetic is exact, and equality
is canonical (fractions reduced, denominators monic, residues reduced mod
the minimal polynomial).  Field descriptors double as coercion points and
as the (de)serialization authority for their scalars.
"""

from __future__ import annotations

from fractions import Fraction


class ParseError(ValueError):
    """A scalar or field description could not be parsed."""


# ---------------------------------------------------------------------------
# field descriptors
# ---------------------------------------------------------------------------

class Field:
    """Base descriptor.  Concrete fields say how to coerce, format and
    parse their scalars; scalars themselves carry the arithmetic."""

    kind = "?"

    def coerce(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def format_scalar(self, x) -> str:
        raise NotImplementedError

    def parse_scalar(self, text: str):
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError

    def __repr__(self):
        return self.kind


class RationalField(Field):
    """Q, with `fractions.Fraction` as the scalar type."""

    kind = "Q"

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse_scalar(value)
        raise TypeError(f"cannot coerce {value!r} into Q")

    def format_scalar(self, x) -> str:
        return str(x)

    def parse_scalar(self, text: str):
        return parse_scalar_expression(text, self)

    def variable_name(self):
        return None

    def to_json(self):
        return {"type": "Q"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


QQ = RationalField()


# ---------------------------------------------------------------------------
# univariate polynomials over an arbitrary field
# ---------------------------------------------------------------------------

class Poly:
    """Dense univariate polynomial with coefficients in a `Field`.

    Coefficients are stored low degree first with no trailing zeros; the
    zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        cs = [field.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        lead = self.coeffs[-1]
        if lead == self.field.one:
            return self
        return Poly(self.field, [c / lead for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __add__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero() or other.is_zero():
                return Poly.zero(self.field)
            zero = self.field.zero
            out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
            return Poly(self.field, out)
        try:
            s = self.field.coerce(other)
        except TypeError:
            return NotImplemented
        return Poly(self.field, [c * s for c in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _promote(self, other):
        if isinstance(other, Poly):
            return other
        try:
            return Poly(self.field, (self.field.coerce(other),))
        except TypeError:
            return NotImplemented

    def __divmod__(self, other: "Poly"):
        if not isinstance(other, Poly):
            other = self._promote(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        field = self.field
        rem = list(self.coeffs)
        quo = [field.zero] * max(0, len(rem) - len(other.coeffs) + 1)
        dlead = other.coeffs[-1]
        dd = other.degree
        for i in range(len(rem) - 1, dd - 1, -1):
            if not rem[i]:
                continue
            q = rem[i] / dlead
            quo[i - dd] = q
            for j, c in enumerate(other.coeffs):
                rem[i - dd + j] = rem[i - dd + j] - q * c
        return Poly(field, quo), Poly(field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "Poly":
        return Poly(self.field, [i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x):
        """Horner evaluation at a scalar of the coefficient field."""
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map_coeffs(self, fn, field: Field) -> "Poly":
        return Poly(field, [fn(c) for c in self.coeffs])

    def __repr__(self):
        return f"Poly({self.field!r}, {list(self.coeffs)!r})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (coefficients in a field)."""
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic."""
    field = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(field), Poly.zero(field)
    t0, t1 = Poly.zero(field), Poly.one(field)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lead = r0.leading()
    inv = field.one / lead
    return r0.monic(), s0 * inv, t0 * inv


def squarefree_part(p: Poly) -> Poly:
    """p / gcd(p, p'), monic.  Rejects the zero polynomial."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if p.degree == 0:
        return Poly.one(p.field)
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return p.monic()
    return (p // g).monic()


def squarefree_decomposition(p: Poly):
    """Yun's algorithm: returns [(f_1, 1), (f_2, 2), ...] with the f_i
    squarefree, pairwise coprime, monic, and p ~ prod f_i^i.  Requires
    characteristic zero (true for every field here)."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    p = p.monic()
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    factors = []
    i = 1
    while b.degree > 0:
        f = poly_gcd(b, d)
        if f.degree > 0:
            factors.append((f, i))
        b2 = b // f
        c2 = d // f
        d = c2 - b2.derivative()
        b = b2
        i += 1
    return factors


# ---------------------------------------------------------------------------
# rational functions in t
# ---------------------------------------------------------------------------

class RatFunc:
    """Element of Q(t): a reduced fraction of Q-polynomials with monic
    denominator, so structural equality is semantic equality."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RatFunc):
            self.num, self.den = num.num, num.den
            return
        num = num if isinstance(num, Poly) else Poly(QQ, (QQ.coerce(num),))
        if den is None:
            den = Poly.one(QQ)
        elif not isinstance(den, Poly):
            den = Poly(QQ, (QQ.coerce(den),))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly.zero(QQ), Poly.one(QQ)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lead = den.leading()
        if lead != 1:
            num = num * (Fraction(1) / lead)
            den = den.monic()
        self.num, self.den = num, den

    @classmethod
    def t(cls):
        return cls(Poly.x(QQ))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def _promote(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc(Fraction(other))
        if isinstance(other, Poly) and other.field == QQ:
            return RatFunc(other)
        return None

    def __eq__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num, out.den = -self.num, self.den
        return out

    def __add__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("zero to a negative power")
            return RatFunc(self.den, self.num) ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def eval(self, a) -> Fraction:
        """Evaluate at t = a (a rational number).  Raises
        ZeroDivisionError when the denominator vanishes at a."""
        a = Fraction(a)
        d = self.den.eval(a)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at t = {a}")
        return self.num.eval(a) / d

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self!r} is not constant")
        return self.num[0] if self.num.coeffs else Fraction(0)

    def __str__(self):
        if self.is_zero():
            return "0"
        num = format_qpoly(self.num, "t")
        if self.den.degree == 0:
            return num
        return f"({num})/({format_qpoly(self.den, 't')})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


class RationalFunctionField(Field):
    """Q(t): rational functions in one variable over Q."""

    kind = "Qt"

    def coerce(self, value):
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, (int, Fraction)):
            return RatFunc(Fraction(value))
        if isinstance(value, Poly) and value.field == QQ:
            return RatFunc(value)
        if isinstance(value, str):
            return self.parse_scalar(value)
        raise TypeError(f"cannot coerce {value!r} into Q(t)")

    def gen(self):
        return RatFunc.t()

    def variable_name(self):
        return "t"

    def format_scalar(self, x) -> str:
        return str(x)

    def parse_scalar(self, text: str):
        return parse_scalar_expression(text, self)

    def to_json(self):
        return {"type": "Qt"}

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField)

    def __hash__(self):
        return hash("Qt")


QT = RationalFunctionField()


# ---------------------------------------------------------------------------
# number fields Q[a]/(m)
# ---------------------------------------------------------------------------

class NFElem:
    """Residue of a Q-polynomial in `a` modulo the defining polynomial."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "NumberField", coeffs):
        cs = [Fraction(c) for c in coeffs]
        if len(cs) >= field.degree:
            cs = list((Poly(QQ, cs) % field.minpoly).coeffs)
        cs += [Fraction(0)] * (field.degree - len(cs))
        self.field = field
        self.coeffs = tuple(cs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def _promote(self, other):
        if isinstance(other, NFElem):
            if other.field == self.field:
                return other
            return None
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, (Fraction(other),))
        return None

    def __eq__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __neg__(self):
        return NFElem(self.field, [-c for c in self.coeffs])

    def __add__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        prod = Poly(QQ, self.coeffs) * Poly(QQ, o.coeffs)
        return NFElem(self.field, (prod % self.field.minpoly).coeffs)

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = poly_xgcd(Poly(QQ, self.coeffs), self.field.minpoly)
        if g.degree != 0:
            # squarefree but reducible minimal polynomial: zero divisors exist
            raise ZeroDivisionError(
                f"zero divisor in Q[a]/({format_qpoly(self.field.minpoly, 'a')})")
        return NFElem(self.field, (s * (QQ.one / g[0])).coeffs)

    def __truediv__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._promote(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def regular_matrix(self):
        """Multiplication-by-self matrix on the Q-basis 1, a, ..., a^(m-1),
        as a list of rows of Fractions (column j = self * a^j)."""
        m = self.field.degree
        cols = []
        acc = self
        gen = self.field.gen()
        for _ in range(m):
            cols.append(acc.coeffs)
            acc = acc * gen
        return [[cols[j][i] for j in range(m)] for i in range(m)]

    def __str__(self):
        return format_qpoly(Poly(QQ, self.coeffs), "a")

    def __repr__(self):
        return f"NFElem({str(self)!r})"


class NumberField(Field):
    """Q[a]/(m(a)) for a monic squarefree integer polynomial m, deg >= 2.

    Squarefree (rather than irreducible) is the validity requirement, so
    this may be an etale algebra; division then raises on zero divisors.
    """

    kind = "NumberField"

    def __init__(self, minpoly_coeffs):
        m = Poly(QQ, [Fraction(c) for c in minpoly_coeffs])
        if m.degree < 2:
            raise ValueError("number field minimal polynomial must have degree >= 2")
        if not m.is_monic():
            raise ValueError("number field minimal polynomial must be monic")
        if any(c.denominator != 1 for c in m.coeffs):
            raise ValueError("number field minimal polynomial must have integer coefficients")
        if poly_gcd(m, m.derivative()).degree != 0:
            raise ValueError("number field minimal polynomial must be squarefree")
        self.minpoly = m
        self.degree = m.degree

    def coerce(self, value):
        if isinstance(value, NFElem):
            if value.field == self:
                return value
            raise TypeError("element of a different number field")
        if isinstance(value, (int, Fraction)):
            return NFElem(self, (Fraction(value),))
        if isinstance(value, str):
            return self.parse_scalar(value)
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def gen(self):
        return NFElem(self, (0, 1))

    def variable_name(self):
        return "a"

    def format_scalar(self, x) -> str:
        return str(x)

    def parse_scalar(self, text: str):
        return parse_scalar_expression(text, self)

    def to_json(self):
        return {"type": "NumberField",
                "minpoly": [int(c) for c in self.minpoly.coeffs]}

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly.coeffs == other.minpoly.coeffs

    def __hash__(self):
        return hash(("NumberField", self.minpoly.coeffs))

    def __repr__(self):
        return f"NumberField({format_qpoly(self.minpoly, 'a')})"


def field_from_json(obj) -> Field:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ParseError("field descriptor must be an object with a 'type' key")
    kind = obj["type"]
    if kind == "Q":
        return QQ
    if kind == "Qt":
        return QT
    if kind == "NumberField":
        if "minpoly" not in obj:
            raise ParseError("NumberField descriptor requires 'minpoly'")
        try:
            return NumberField(obj["minpoly"])
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown field type {kind!r}")


# ---------------------------------------------------------------------------
# scalar formatting / parsing
# ---------------------------------------------------------------------------

def format_qpoly(p: Poly, var: str) -> str:
    """Compact canonical string of a Q-polynomial, highest degree first:
    "t^2-1", "1/2*t+3", "-t", "0"."""
    if p.is_zero():
        return "0"
    pieces = []
    for i in range(p.degree, -1, -1):
        c = p[i]
        if not c:
            continue
        neg = c < 0
        mag = -c if neg else c
        if i == 0:
            body = str(mag)
        else:
            xpow = var if i == 1 else f"{var}^{i}"
            body = xpow if mag == 1 else f"{mag}*{xpow}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append(("-" if neg else "+") + body)
    return "".join(pieces)


_TOKEN_CHARS = set("0123456789")


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/^()":
            tokens.append(ch)
            i += 1
        elif ch in _TOKEN_CHARS:
            j = i
            while j < n and text[j] in _TOKEN_CHARS:
                j += 1
            tokens.append(int(text[i:j]))
            i = j
        elif ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r} in scalar {text!r}")
    return tokens


def parse_scalar_expression(text: str, field: Field):
    """Parse expressions like "-3/5", "(t^2-1)/(t+2)" or "a^2-1/2*a"
    into a scalar of `field`.  The only admissible variable is the
    field's own generator symbol."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty scalar")
    pos = 0
    var = field.variable_name() if hasattr(field, "variable_name") else None

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_expr():
        node = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term():
        node = parse_factor()
        while peek() in ("*", "/"):
            op = take()
            rhs = parse_factor()
            if op == "*":
                node = node * rhs
            else:
                try:
                    node = node / rhs
                except ZeroDivisionError as exc:
                    raise ParseError(f"division by zero in {text!r}") from exc
        return node

    def parse_factor():
        if peek() == "-":
            take()
            return -parse_factor()
        if peek() == "+":
            take()
            return parse_factor()
        node = parse_atom()
        while peek() == "^":
            take()
            expo = peek()
            if not isinstance(expo, int):
                raise ParseError(f"exponent must be an integer in {text!r}")
            take()
            node = node ** expo
        return node

    def parse_atom():
        tok = peek()
        if tok == "(":
            take()
            node = parse_expr()
            if peek() != ")":
                raise ParseError(f"unbalanced parentheses in {text!r}")
            take()
            return node
        if isinstance(tok, int):
            take()
            return field.coerce(tok)
        if isinstance(tok, str) and tok not in "+-*/^()":
            take()
            if var is not None and tok == var:
                return field.gen()
            raise ParseError(f"unknown symbol {tok!r} in scalar {text!r}")
        raise ParseError(f"unexpected token {tok!r} in scalar {text!r}")

    value = parse_expr()
    if pos != len(tokens):
        raise ParseError(f"trailing input in scalar {text!r}")
    # Fraction divisions produce Fraction; make sure the result lives in field
    return field.coerce(value) if not isinstance(value, (RatFunc, NFElem)) else value
