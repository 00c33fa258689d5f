"""Exact symbolic numbers: rationals extended by square roots and by pi and e.

A value is stored as a finite sum

    c_1 * sqrt(d_1) * pi^a_1 * e^b_1  +  ...  +  c_n * sqrt(d_n) * pi^a_n * e^b_n

where every coefficient c_i is a reduced ``fractions.Fraction`` and every
radicand d_i is a square-free positive integer.  The representation is
canonical: two sums denote the same real number exactly when their term maps
are identical, so equality, hashing and the zero test are structural.  No
float is ever produced or consumed; intermediate results like (1 - sqrt(3))/2
stay in that form.

pi and e are kept as opaque, algebraically independent symbols.  They take
part in multiplication and single-term division, but the sign of a value
containing them is deliberately not computed (see :func:`sign`).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import DivisionByZero, EngineError


class ScalarError(EngineError):
    pass


class NegativeRadicand(ScalarError):
    """Square root of a negative number; there is no complex support."""


class NestedRadical(ScalarError):
    """Square root of an irrational value; not representable here."""


class UnsupportedDenominator(ScalarError):
    """Division by a sum that mixes pi/e terms with anything else."""


class TranscendentalSign(ScalarError):
    """Sign queries on values containing pi or e are not decided."""


class Monomial(NamedTuple):
    radicand: int  # square-free, >= 1
    pi_exp: int
    e_exp: int


UNIT = Monomial(1, 0, 0)

RationalLike = Union[int, Fraction]


# ---------------------------------------------------------------------------
# integer helpers: factorization, square-free split, perfect powers

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin for n < 3.3 * 10^24 with these bases
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    # Brent's cycle variant; n must be odd, composite, not a prime power of 2
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        x, y, d = 2, 2, 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ScalarError(f"failed to factor {n}")  # pragma: no cover


def _factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    factors: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _pollard_rho(m)
        stack += [d, m // d]
    return factors


def _square_free_split(n: int) -> tuple[int, int]:
    """Return (s, d) with n = s*s*d and d square-free, for n >= 1."""
    s, d = 1, 1
    for p, k in _factorize(n).items():
        s *= p ** (k // 2)
        if k % 2:
            d *= p
    return s, d


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _perfect_power(n: int) -> tuple[int, int] | None:
    """Largest k with n = m^k, k >= 2, as (m, k); None if no such form."""
    for k in range(n.bit_length() - 1, 1, -1):
        m = _iroot(n, k)
        if m >= 2 and m ** k == n:
            return m, k
    return None


# Integers at or above this magnitude are printed in m^k form when they are
# perfect powers, unless full digits are explicitly requested.
_POWER_RENDER_MIN = 10 ** 40


def _render_int(n: int, full_digits: bool = False) -> str:
    if not full_digits and abs(n) >= _POWER_RENDER_MIN:
        power = _perfect_power(abs(n))
        if power is not None:
            m, k = power
            return f"-{m}^{k}" if n < 0 else f"{m}^{k}"
    return str(n)


def _render_fraction(q: Fraction, full_digits: bool = False) -> str:
    text = _render_int(q.numerator, full_digits)
    if q.denominator != 1:
        text += "/" + _render_int(q.denominator, full_digits)
    return text


# ---------------------------------------------------------------------------


class ExactScalar:
    """Canonical exact number; immutable and hashable.

    Constructed from an int or Fraction, or by arithmetic on existing values.
    Radicals enter through :func:`exact_sqrt`, pi and e through the module
    constants ``PI`` and ``E``.
    """

    __slots__ = ("_terms",)

    def __init__(self, value: RationalLike = 0):
        q = Fraction(value)
        object.__setattr__(self, "_terms", {UNIT: q} if q else {})

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "ExactScalar":
        s = cls.__new__(cls)
        object.__setattr__(s, "_terms", {m: c for m, c in terms.items() if c})
        return s

    # -- inspection

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and UNIT in self._terms)

    def is_algebraic(self) -> bool:
        """True when no term carries pi or e."""
        return all(m.pi_exp == 0 and m.e_exp == 0 for m in self._terms)

    def as_fraction(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if self.is_rational():
            return self._terms[UNIT]
        raise NestedRadical(f"{self} is not rational")

    def validate(self) -> None:
        """Assert the canonical-form invariants; used by the test suite."""
        for m, c in self._terms.items():
            assert c != 0, "zero coefficient stored"
            assert isinstance(c, Fraction)
            assert m.radicand >= 1, "radicand must be positive"
            _, square_free = _square_free_split(m.radicand)
            assert square_free == m.radicand, f"radicand {m.radicand} not square-free"

    # -- arithmetic

    def _coerce(self, other) -> "ExactScalar | None":
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self._terms)
        for m, c in o._terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return ExactScalar._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                g = math.gcd(m1.radicand, m2.radicand)
                m = Monomial(
                    (m1.radicand // g) * (m2.radicand // g),
                    m1.pi_exp + m2.pi_exp,
                    m1.e_exp + m2.e_exp,
                )
                c = c1 * c2 * g
                s = terms.get(m, Fraction(0)) + c
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return ExactScalar._raw(terms)

    __rmul__ = __mul__

    def _monomial_inverse(self) -> "ExactScalar":
        ((m, c),) = self._terms.items()
        # 1 / (c sqrt(d) pi^a e^b) = (1 / (c d)) sqrt(d) pi^-a e^-b
        return ExactScalar._raw(
            {Monomial(m.radicand, -m.pi_exp, -m.e_exp): Fraction(1, 1) / (c * m.radicand)}
        )

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by zero")
        if len(o._terms) == 1:
            return self * o._monomial_inverse()
        if not o.is_algebraic():
            raise UnsupportedDenominator(
                f"cannot divide by a sum containing pi or e: {o}"
            )
        # Rationalize: multiply through every non-trivial sign flip of the
        # distinct radicands of the denominator.  The full product over all
        # 2^k sign patterns is fixed by every conjugation of the surd field,
        # hence rational (and nonzero, by linear independence of the sqrt(d)).
        radicands = sorted({m.radicand for m in o._terms if m.radicand != 1})
        num, den = self, o
        for pattern in range(1, 1 << len(radicands)):
            flipped = {radicands[i] for i in range(len(radicands)) if pattern >> i & 1}
            conjugate = ExactScalar._raw(
                {m: -c if m.radicand in flipped else c for m, c in o._terms.items()}
            )
            num = num * conjugate
            den = den * conjugate
        assert den.is_rational(), "conjugate product must be rational"
        return num * ExactScalar(Fraction(1, 1) / den.as_fraction())

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if self.is_zero():
                raise DivisionByZero("0 cannot be raised to a negative power")
            return ExactScalar(1) / self ** (-k)
        result = ExactScalar(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison and hashing

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return render_scalar(self)

    def __repr__(self):
        return f"ExactScalar({render_scalar(self)!r})"


PI = ExactScalar._raw({Monomial(1, 1, 0): Fraction(1)})
E = ExactScalar._raw({Monomial(1, 0, 1): Fraction(1)})


def exact_sqrt(n: RationalLike | ExactScalar) -> ExactScalar:
    """Exact square root of a nonnegative rational, as q * sqrt(d).

    12 gives 2*sqrt(3); 9/4 gives 3/2.  Square roots of irrational values
    (nested radicals) and of pi/e terms are rejected.
    """
    if isinstance(n, ExactScalar):
        n = n.as_fraction()  # raises NestedRadical when irrational
    q = Fraction(n)
    if q < 0:
        raise NegativeRadicand(f"sqrt of negative number {q}")
    if q == 0:
        return ExactScalar(0)
    # sqrt(p/q) = sqrt(p q) / q
    s, d = _square_free_split(q.numerator * q.denominator)
    return ExactScalar._raw({Monomial(d, 0, 0): Fraction(s, q.denominator)})


def sign(a: ExactScalar) -> int:
    """Exact sign (-1, 0, +1) of a pi/e-free value.

    Zero is syntactic: distinct square-free radicands are linearly
    independent over the rationals, so the value is zero exactly when no
    term is stored.  Otherwise rational interval enclosures of each sqrt(d)
    are bisected until the enclosure of the sum excludes zero; termination
    is guaranteed because the value is then known to be nonzero.
    """
    if not a.is_algebraic():
        raise TranscendentalSign(f"sign of {a} involves pi or e")
    if a.is_zero():
        return 0
    if a.is_rational():
        return 1 if a.as_fraction() > 0 else -1

    enclosures: dict[int, tuple[Fraction, Fraction]] = {}
    for m in a._terms:
        d = m.radicand
        r = math.isqrt(d)
        if r * r == d:
            enclosures[d] = (Fraction(r), Fraction(r))
        else:
            enclosures[d] = (Fraction(r), Fraction(r + 1))
    while True:
        lo = Fraction(0)
        hi = Fraction(0)
        for m, c in a._terms.items():
            l, h = enclosures[m.radicand]
            lo += c * (l if c > 0 else h)
            hi += c * (h if c > 0 else l)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        for d, (l, h) in enclosures.items():
            if l == h:
                continue
            mid = (l + h) / 2
            if mid * mid <= d:
                enclosures[d] = (mid, h)
            else:
                enclosures[d] = (l, mid)


# ---------------------------------------------------------------------------
# canonical text form


def _render_monomial_tail(m: Monomial) -> list[str]:
    parts = []
    if m.radicand > 1:
        parts.append(f"sqrt({m.radicand})")
    if m.pi_exp:
        parts.append("pi" if m.pi_exp == 1 else f"pi^{m.pi_exp}")
    if m.e_exp:
        parts.append("e" if m.e_exp == 1 else f"e^{m.e_exp}")
    return parts


def render_scalar(a: ExactScalar, full_digits: bool = False) -> str:
    """Canonical rendering: rational part first, then terms sorted by
    (radicand, pi_exp, e_exp).  Huge perfect-power integers print as m^k
    unless full_digits is requested."""
    if a.is_zero():
        return "0"
    ordered = []
    terms = a.terms
    if UNIT in terms:
        ordered.append((UNIT, terms.pop(UNIT)))
    ordered.extend(sorted(terms.items()))
    out = []
    for i, (m, c) in enumerate(ordered):
        tail = _render_monomial_tail(m)
        mag = abs(c)
        if not tail:
            body = _render_fraction(mag, full_digits)
        else:
            if mag != 1:
                tail = [_render_fraction(mag, full_digits)] + tail
            body = "*".join(tail)
        if i == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


class _ScalarParser:
    """Recursive-descent reader for the canonical scalar text form.

    Accepts sums/differences of products of integer, fraction, sqrt(n), pi
    and e factors with integer exponents, e.g. ``1/2 - 1/2*sqrt(3)``,
    ``2^2022``, ``6*pi^-1``.
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise ScalarError(f"bad scalar text at offset {self.pos}: {message}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str):
        if not self.eat(token):
            self.error(f"expected {token!r}")

    def parse(self) -> ExactScalar:
        value = self.sum()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return value

    def sum(self) -> ExactScalar:
        negative = self.eat("-")
        value = self.product()
        if negative:
            value = -value
        while True:
            if self.eat("+"):
                value = value + self.product()
            elif self.eat("-"):
                value = value - self.product()
            else:
                return value

    def product(self) -> ExactScalar:
        value = self.factor()
        while True:
            if self.eat("*"):
                value = value * self.factor()
            elif self.eat("/"):
                value = value / self.factor()
            else:
                return value

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def factor(self) -> ExactScalar:
        ch = self.peek()
        if ch.isdigit():
            base = ExactScalar(self.integer())
        elif self.eat("sqrt"):
            self.expect("(")
            inner = self.integer()
            self.expect(")")
            base = exact_sqrt(inner)
        elif self.eat("pi"):
            base = PI
        elif self.eat("e"):
            base = E
        elif self.eat("("):
            base = self.sum()
            self.expect(")")
        else:
            self.error("expected a number, sqrt(...), pi or e")
        if self.eat("^"):
            base = base ** self.integer()
        return base


def parse_scalar(text: str) -> ExactScalar:
    return _ScalarParser(text).parse()
