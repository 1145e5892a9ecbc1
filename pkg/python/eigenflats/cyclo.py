"""Exact arithmetic in cyclotomic fields Q(zeta_L).

An element of Q(zeta_L) is stored as an integer numerator vector of length
phi(L) over one positive common denominator, i.e. a polynomial in zeta_L
reduced modulo the L-th cyclotomic polynomial. The representation is
canonical, so equality is coefficient-wise.

Usage:
    >>> z = CycloNum.zeta(3)
    >>> z * z + z + 1 == 0
    True
    >>> parse_literal("z5^2 + 1/2")
    CycloNum('z5^2 + 1/2')
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache, reduce
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

import sympy

from eigenflats.errors import (
    ConductorMismatch,
    DivisionByZero,
    LiteralParseError,
    PreconditionError,
)

Rational = Union[int, Fraction]

_X = sympy.Symbol("x")


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise PreconditionError(f"cyclotomic polynomial needs n >= 1, got {n}")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(n, _X), _X).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


@lru_cache(maxsize=None)
def _modulus_poly(n: int) -> sympy.Poly:
    return sympy.Poly(sympy.cyclotomic_poly(n, _X), _X, domain=sympy.QQ)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return int(sympy.totient(n))


@lru_cache(maxsize=None)
def _trace_weights(n: int) -> Tuple[Fraction, ...]:
    """Tr(zeta_n^k) / phi(n) for k < phi(n), from the Ramanujan sum."""
    out = []
    for k in range(euler_phi(n)):
        m = n // math.gcd(k, n)
        out.append(Fraction(int(sympy.mobius(m)), euler_phi(m)))
    return tuple(out)


class _Field(NamedTuple):
    conductor: int
    degree: int
    modulus: Tuple[int, ...]
    # fold[j] = x^(degree + j) mod Phi_L, for products of two reduced polynomials
    fold: Tuple[Tuple[int, ...], ...]


@lru_cache(maxsize=None)
def _field(conductor: int) -> _Field:
    modulus = cyclotomic_polynomial(conductor)
    degree = len(modulus) - 1
    current = [-c for c in modulus[:degree]]
    fold = []
    for _ in range(max(degree - 1, 0)):
        fold.append(tuple(current))
        top = current[-1]
        current = [0] + current[:-1]
        if top:
            for i in range(degree):
                current[i] -= top * modulus[i]
    return _Field(conductor, degree, modulus, tuple(fold))


def _reduce(poly: List[int], field: _Field) -> List[int]:
    """Reduce an integer polynomial of any degree modulo the monic Phi_L."""
    d = field.degree
    mod = field.modulus
    for k in range(len(poly) - 1, d - 1, -1):
        c = poly[k]
        if c:
            base = k - d
            for i in range(d):
                poly[base + i] -= c * mod[i]
            poly[k] = 0
    if len(poly) < d:
        poly.extend([0] * (d - len(poly)))
    return poly[:d]


def _fractions_to_ints(coeffs: Sequence[Rational]) -> Tuple[List[int], int]:
    fracs = [Fraction(c) for c in coeffs]
    den = reduce(math.lcm, (f.denominator for f in fracs), 1)
    return [f.numerator * (den // f.denominator) for f in fracs], den


class CycloNum:
    """Immutable element of Q(zeta_L)."""

    __slots__ = ("conductor", "nums", "den")

    conductor: int
    nums: Tuple[int, ...]
    den: int

    def __init__(self, coeffs: Sequence[Rational], conductor: int = 1) -> None:
        field = _field(conductor)
        nums, den = _fractions_to_ints(coeffs)
        nums = _reduce(nums, field)
        self._assign(conductor, nums, den)

    def _assign(self, conductor: int, nums: List[int], den: int) -> None:
        if den < 0:
            nums = [-v for v in nums]
            den = -den
        g = reduce(math.gcd, nums, den)
        if g > 1:
            nums = [v // g for v in nums]
            den //= g
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "nums", tuple(nums))
        object.__setattr__(self, "den", den)

    @classmethod
    def _raw(cls, conductor: int, nums: List[int], den: int = 1) -> "CycloNum":
        obj = cls.__new__(cls)
        obj._assign(conductor, nums, den)
        return obj

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("CycloNum is immutable")

    def __reduce__(self):
        return (CycloNum._raw, (self.conductor, list(self.nums), self.den))

    # ---- constructors -------------------------------------------------

    @classmethod
    def rational(cls, value: Rational, conductor: int = 1) -> "CycloNum":
        q = Fraction(value)
        nums = [0] * _field(conductor).degree
        nums[0] = q.numerator
        return cls._raw(conductor, nums, q.denominator)

    @classmethod
    def zero(cls, conductor: int = 1) -> "CycloNum":
        return cls._raw(conductor, [0] * _field(conductor).degree)

    @classmethod
    def one(cls, conductor: int = 1) -> "CycloNum":
        return cls.rational(1, conductor)

    @classmethod
    def zeta(cls, n: int, power: int = 1, conductor: Optional[int] = None) -> "CycloNum":
        """zeta_n^power, with zeta_n = zeta_L^(L/n) inside Q(zeta_L)."""
        if n < 1:
            raise PreconditionError(f"root of unity order must be >= 1, got {n}")
        conductor = n if conductor is None else conductor
        if conductor % n:
            raise ConductorMismatch(n, conductor)
        exponent = (power * (conductor // n)) % conductor
        poly = [0] * (exponent + 1)
        poly[exponent] = 1
        return cls._raw(conductor, _reduce(poly, _field(conductor)))

    # ---- views --------------------------------------------------------

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.nums)

    def key(self) -> Tuple[Tuple[int, ...], int]:
        """Canonical hashable form within one conductor."""
        return (self.nums, self.den)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise PreconditionError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def lift(self, conductor: int) -> "CycloNum":
        """Embed into Q(zeta_conductor) via zeta_L = zeta_conductor^(conductor/L)."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ConductorMismatch(self.conductor, conductor)
        field = _field(conductor)
        if self.is_rational():
            nums = [0] * field.degree
            nums[0] = self.nums[0]
            return CycloNum._raw(conductor, nums, self.den)
        step = conductor // self.conductor
        poly = [0] * ((len(self.nums) - 1) * step + 1)
        for i, v in enumerate(self.nums):
            poly[i * step] = v
        return CycloNum._raw(conductor, _reduce(poly, field), self.den)

    # ---- arithmetic ---------------------------------------------------

    def _pair(self, other: object) -> Optional[Tuple["CycloNum", "CycloNum"]]:
        if isinstance(other, CycloNum):
            if other.conductor == self.conductor:
                return self, other
            if other.is_rational():
                return self, other.lift_rational(self.conductor)
            if self.is_rational():
                return self.lift_rational(other.conductor), other
            raise ConductorMismatch(self.conductor, other.conductor)
        if isinstance(other, (int, Fraction)):
            return self, CycloNum.rational(other, self.conductor)
        return None

    def lift_rational(self, conductor: int) -> "CycloNum":
        nums = [0] * _field(conductor).degree
        nums[0] = self.nums[0]
        return CycloNum._raw(conductor, nums, self.den)

    def __add__(self, other: object) -> "CycloNum":
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.den == b.den:
            nums = [x + y for x, y in zip(a.nums, b.nums)]
            return CycloNum._raw(a.conductor, nums, a.den)
        nums = [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)]
        return CycloNum._raw(a.conductor, nums, a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> "CycloNum":
        return CycloNum._raw(self.conductor, [-v for v in self.nums], self.den)

    def __sub__(self, other: object) -> "CycloNum":
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other: object) -> "CycloNum":
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b + (-a)

    def __mul__(self, other: object) -> "CycloNum":
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if b.is_rational():
            c = b.nums[0]
            return CycloNum._raw(a.conductor, [v * c for v in a.nums], a.den * b.den)
        if a.is_rational():
            c = a.nums[0]
            return CycloNum._raw(a.conductor, [v * c for v in b.nums], a.den * b.den)
        field = _field(a.conductor)
        d = field.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a.nums):
            if x:
                for j, y in enumerate(b.nums):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for j, row in enumerate(field.fold):
            c = prod[d + j]
            if c:
                for i in range(d):
                    out[i] += c * row[i]
        return CycloNum._raw(a.conductor, out, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse via the extended gcd with Phi_L."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(z%d)" % self.conductor)
        if self.is_rational():
            nums = [0] * len(self.nums)
            nums[0] = self.den
            return CycloNum._raw(self.conductor, nums, self.nums[0])
        poly = sympy.Poly(
            [sympy.Rational(v, self.den) for v in reversed(self.nums)], _X, domain=sympy.QQ
        )
        s = poly.invert(_modulus_poly(self.conductor)).all_coeffs()
        nums, den = _fractions_to_ints([Fraction(int(c.p), int(c.q)) for c in reversed(s)])
        nums = _reduce(nums, _field(self.conductor))
        return CycloNum._raw(self.conductor, nums, den)

    def __truediv__(self, other: object) -> "CycloNum":
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other: object) -> "CycloNum":
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, exponent: int) -> "CycloNum":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycloNum.one(self.conductor)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ---- comparison ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.nums[0], self.den) == other
        if not isinstance(other, CycloNum):
            return NotImplemented
        if other.conductor != self.conductor:
            common = math.lcm(self.conductor, other.conductor)
            return self.lift(common).key() == other.lift(common).key()
        return self.nums == other.nums and self.den == other.den

    def normalized_trace(self) -> Fraction:
        """Tr(x) / phi(L), unchanged by lifting to a larger conductor."""
        weights = _trace_weights(self.conductor)
        return sum((w * v for w, v in zip(weights, self.nums)), Fraction(0)) / self.den

    def __hash__(self) -> int:
        # must agree with __eq__ across conductors, so hash lift-invariant traces
        if self.is_rational():
            return hash(Fraction(self.nums[0], self.den))
        return hash((self.normalized_trace(), (self * self).normalized_trace()))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # ---- text ---------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts: List[Tuple[str, str]] = []
        for power in range(len(self.nums) - 1, -1, -1):
            q = Fraction(self.nums[power], self.den)
            if q == 0:
                continue
            mag = abs(q)
            if power == 0:
                body = str(mag)
            else:
                atom = f"z{self.conductor}" if power == 1 else f"z{self.conductor}^{power}"
                body = atom if mag == 1 else f"{mag}*{atom}"
            parts.append(("-" if q < 0 else "+", body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"CycloNum('{self}')"


def arith(op: str, a: CycloNum, b: CycloNum) -> CycloNum:
    """Field operation on two elements of one conductor."""
    if a.conductor != b.conductor:
        raise ConductorMismatch(a.conductor, b.conductor)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise PreconditionError(f"unknown field operation {op!r}")


def invert(a: CycloNum) -> CycloNum:
    return a.inverse()


def common_conductor(values: Sequence[CycloNum]) -> int:
    return reduce(math.lcm, (v.conductor for v in values), 1)


def unify(values: Sequence[CycloNum]) -> List[CycloNum]:
    """Lift every value to the lcm of their conductors."""
    target = common_conductor(values)
    return [v.lift(target) for v in values]


def poly_eval(coeffs: Sequence[CycloNum], point: CycloNum) -> CycloNum:
    """Horner evaluation of a lowest-degree-first coefficient sequence."""
    conductor = math.lcm(common_conductor(coeffs), point.conductor)
    point = point.lift(conductor)
    acc = CycloNum.zero(conductor)
    for c in reversed(coeffs):
        acc = acc * point + c.lift(conductor)
    return acc


# ---- literal grammar ---------------------------------------------------
#   expr  := term (('+' | '-') term)*
#   term  := unary (('*' | '/') unary)*
#   unary := ('-' | '+') unary | power
#   power := atom ('^' ['-'] INT)?
#   atom  := INT | 'z' INT | '(' expr ')'

_TOKEN = re.compile(r"\s*(?:(\d+)|z(\d+)|([-+*/^()]))")


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens: List[Tuple[str, str]] = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if match is None:
            raise LiteralParseError(f"unexpected character at {pos} in {text!r}")
        number, zeta, op = match.groups()
        if number is not None:
            tokens.append(("int", number))
        elif zeta is not None:
            tokens.append(("zeta", zeta))
        else:
            tokens.append(("op", op))
        pos = match.end()
    return tokens


def _binary(op: str, a: CycloNum, b: CycloNum) -> CycloNum:
    a, b = unify([a, b])
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    return a / b


class _LiteralParser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> Tuple[str, str]:
        token = self._peek()
        if token is None:
            raise LiteralParseError(f"unexpected end of literal {self.text!r}")
        self.pos += 1
        return token

    def _is_op(self, *ops: str) -> bool:
        token = self._peek()
        return token is not None and token[0] == "op" and token[1] in ops

    def parse(self) -> CycloNum:
        if not self.tokens:
            raise LiteralParseError("empty literal")
        value = self._expr()
        if self._peek() is not None:
            raise LiteralParseError(f"trailing input in {self.text!r}")
        return value

    def _expr(self) -> CycloNum:
        value = self._term()
        while self._is_op("+", "-"):
            op = self._take()[1]
            value = _binary(op, value, self._term())
        return value

    def _term(self) -> CycloNum:
        value = self._unary()
        while self._is_op("*", "/"):
            op = self._take()[1]
            rhs = self._unary()
            if op == "/" and rhs.is_zero():
                raise LiteralParseError(f"division by zero in {self.text!r}")
            value = _binary(op, value, rhs)
        return value

    def _unary(self) -> CycloNum:
        if self._is_op("-"):
            self._take()
            return -self._unary()
        if self._is_op("+"):
            self._take()
            return self._unary()
        return self._power()

    def _power(self) -> CycloNum:
        base = self._atom()
        if self._is_op("^"):
            self._take()
            negative = False
            if self._is_op("-"):
                self._take()
                negative = True
            kind, raw = self._take()
            if kind != "int":
                raise LiteralParseError(f"exponent must be an integer in {self.text!r}")
            exponent = -int(raw) if negative else int(raw)
            if exponent < 0 and base.is_zero():
                raise LiteralParseError(f"division by zero in {self.text!r}")
            return base ** exponent
        return base

    def _atom(self) -> CycloNum:
        kind, raw = self._take()
        if kind == "int":
            return CycloNum.rational(int(raw))
        if kind == "zeta":
            order = int(raw)
            if order < 1:
                raise LiteralParseError(f"z0 is not a root of unity in {self.text!r}")
            return CycloNum.zeta(order)
        if raw == "(":
            value = self._expr()
            if not self._is_op(")"):
                raise LiteralParseError(f"missing ')' in {self.text!r}")
            self._take()
            return value
        raise LiteralParseError(f"unexpected {raw!r} in {self.text!r}")


def parse_literal(text: str, conductor: Optional[int] = None) -> CycloNum:
    """Parse a scalar literal such as `z5^2 + 1/2` or `-3/4*(1 + z8)`."""
    value = _LiteralParser(text).parse()
    if conductor is not None:
        if conductor % value.conductor:
            if value.is_rational():
                return value.lift_rational(conductor)
            raise ConductorMismatch(value.conductor, conductor)
        value = value.lift(conductor)
    return value


def format_literal(value: CycloNum) -> str:
    return str(value)
