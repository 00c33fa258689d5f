"""Multivariate rational functions over exact rational coefficients.

This is the target of call-by-name evaluation: step programs composed over
symbols land here and are normalized to a canonical closed form, so that
C/(C/A + C/B) and A/(A/B + 1) both come out as A*B/(A + B).

Polynomials are sparse maps from monomials to nonzero Fractions, kept in
graded-lexicographic order.  Rational functions are num/den pairs with the
gcd cancelled and the denominator's leading coefficient scaled to +1, which
makes equality of normal forms structural.  Symbols carry the dimension of
the quantity they stand for, and additive operations check dimensions the
same way quantity addition does.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Mapping, Union

from .errors import DivisionByZero, EngineError
from .scalar import _render_fraction
from .units import Dimension


class SymbolicError(EngineError):
    pass


class DimensionMismatch(SymbolicError):
    """Additive combination of rational functions of different dimensions."""


class NotUnivariate(SymbolicError):
    pass


class SymbolicRadicalUnsupported(SymbolicError):
    """Square roots over free symbols have no rational-function form."""


@dataclass(frozen=True)
class Symbol:
    """A named indeterminate annotated with the dimension of the quantity it
    stands for.  Identity is the name alone: names are unique within one
    symbolic context, and answers from different contexts should compare by
    the letters learners see."""

    name: str
    dim: Dimension = field(compare=False)

    def __str__(self):
        return self.name


# A monomial is a sorted tuple of (symbol, positive exponent) pairs.
Term = tuple[tuple[Symbol, int], ...]

_ONE_TERM: Term = ()


def _term_degree(t: Term) -> int:
    return sum(e for _, e in t)


def _term_cmp(a: Term, b: Term) -> int:
    """Graded-lexicographic order; alphabetically earlier symbols weigh more."""
    da, db = _term_degree(a), _term_degree(b)
    if da != db:
        return 1 if da > db else -1
    ea = {s.name: e for s, e in a}
    eb = {s.name: e for s, e in b}
    for name in sorted(set(ea) | set(eb)):
        xa, xb = ea.get(name, 0), eb.get(name, 0)
        if xa != xb:
            return 1 if xa > xb else -1
    return 0


_term_key = functools.cmp_to_key(_term_cmp)


def _term_mul(a: Term, b: Term) -> Term:
    exps: dict[Symbol, int] = dict(a)
    for s, e in b:
        exps[s] = exps.get(s, 0) + e
    return tuple(sorted(exps.items(), key=lambda se: se[0].name))


def _term_div(a: Term, b: Term) -> Term | None:
    """a / b when b divides a monomial-wise, else None."""
    exps: dict[Symbol, int] = dict(a)
    for s, e in b:
        r = exps.get(s, 0) - e
        if r < 0:
            return None
        if r:
            exps[s] = r
        else:
            exps.pop(s, None)
    return tuple(sorted(exps.items(), key=lambda se: se[0].name))


class Polynomial:
    """Sparse multivariate polynomial with Fraction coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Term, Fraction] | Iterable[tuple[Term, Fraction]] = ()):
        cleaned: dict[Term, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for t, c in items:
            if not c:
                continue
            if any(e < 0 for _, e in t):
                raise SymbolicError("negative exponents are rational functions")
            if any(e == 0 for _, e in t):
                t = tuple((s, e) for s, e in t if e)
            s = cleaned.get(t, Fraction(0)) + c
            if s:
                cleaned[t] = s
            else:
                cleaned.pop(t, None)
        object.__setattr__(self, "_terms", cleaned)

    @classmethod
    def constant(cls, c) -> "Polynomial":
        c = Fraction(c)
        return cls({_ONE_TERM: c} if c else {})

    @classmethod
    def of(cls, symbol: Symbol) -> "Polynomial":
        return cls({((symbol, 1),): Fraction(1)})

    @property
    def terms(self) -> dict[Term, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {_ONE_TERM}

    def constant_value(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if self.is_constant():
            return self._terms[_ONE_TERM]
        raise SymbolicError(f"{self} is not constant")

    def variables(self) -> set[Symbol]:
        return {s for t in self._terms for s, _ in t}

    def total_degree(self) -> int:
        return max((_term_degree(t) for t in self._terms), default=0)

    def leading(self) -> tuple[Term, Fraction]:
        if not self._terms:
            raise SymbolicError("zero polynomial has no leading term")
        t = max(self._terms, key=_term_key)
        return t, self._terms[t]

    # -- arithmetic

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        merged = dict(self._terms)
        for t, c in other._terms.items():
            s = merged.get(t, Fraction(0)) + c
            if s:
                merged[t] = s
            else:
                merged.pop(t, None)
        return Polynomial(merged)

    def __neg__(self):
        return Polynomial({t: -c for t, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Polynomial({t: c * v for t, v in self._terms.items()} if c else {})
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: dict[Term, Fraction] = {}
        for t1, c1 in self._terms.items():
            for t2, c2 in other._terms.items():
                t = _term_mul(t1, t2)
                s = out.get(t, Fraction(0)) + c1 * c2
                if s:
                    out[t] = s
                else:
                    out.pop(t, None)
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise SymbolicError("negative polynomial powers are rational functions")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for t, c in self._terms.items():
            value = c
            for s, e in t:
                value *= point[s.name] ** e
            total += value
        return total

    # -- canonicalization helpers

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = _int_gcd(num, abs(c.numerator))
            den = den * c.denominator // _int_gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Polynomial":
        """Content removed and leading coefficient made positive."""
        if not self._terms:
            return self
        scale = Fraction(1) / self.content()
        if self.leading()[1] < 0:
            scale = -scale
        return self * scale

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        return render_polynomial(self)

    def __repr__(self):
        return f"Polynomial({render_polynomial(self)!r})"


def render_polynomial(p: Polynomial, full_digits: bool = False) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, t in enumerate(sorted(p._terms, key=_term_key, reverse=True)):
        c = p._terms[t]
        parts = [s.name if e == 1 else f"{s.name}^{e}" for s, e in t]
        mag = abs(c)
        if mag != 1 or not parts:
            parts = [_render_fraction(mag, full_digits)] + parts
        body = "*".join(parts)
        if i == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# division and gcd


def poly_exact_div(f: Polynomial, d: Polynomial) -> Polynomial:
    """Quotient f/d when d divides f exactly; internal error otherwise."""
    if d.is_zero():
        raise DivisionByZero("polynomial division by zero")
    if d.is_constant():
        return f * (Fraction(1) / d.constant_value())
    quotient: dict[Term, Fraction] = {}
    lt_d, lc_d = d.leading()
    rest = f
    while not rest.is_zero():
        lt_r, lc_r = rest.leading()
        t = _term_div(lt_r, lt_d)
        if t is None:
            raise SymbolicError(f"{d} does not divide {f}")
        c = lc_r / lc_d
        quotient[t] = quotient.get(t, Fraction(0)) + c
        rest = rest - Polynomial({t: c}) * d
    return Polynomial(quotient)


def _as_univariate(p: Polynomial, x: Symbol) -> dict[int, Polynomial]:
    """View p as a polynomial in x with coefficients free of x."""
    coeffs: dict[int, dict[Term, Fraction]] = {}
    for t, c in p._terms.items():
        deg = dict(t).get(x, 0)
        rest = tuple((s, e) for s, e in t if s != x)
        bucket = coeffs.setdefault(deg, {})
        bucket[rest] = bucket.get(rest, Fraction(0)) + c
    return {d: Polynomial(b) for d, b in coeffs.items() if any(b.values())}


def _from_univariate(coeffs: dict[int, Polynomial], x: Symbol) -> Polynomial:
    total = Polynomial()
    for d, c in coeffs.items():
        total = total + c * Polynomial({((x, d),) if d else _ONE_TERM: Fraction(1)})
    return total


def _uni_content(coeffs: dict[int, Polynomial]) -> Polynomial:
    it = iter(coeffs.values())
    g = next(it)
    for c in it:
        g = poly_gcd(g, c)
    return g


def _uni_prem(f: dict[int, Polynomial], g: dict[int, Polynomial], x: Symbol) -> Polynomial:
    """Pseudo-remainder of f by g, viewed in x; exact, no fractions of polys."""
    dg = max(g)
    lg = g[dg]
    r = _from_univariate(f, x)
    g_poly = _from_univariate(g, x)
    while not r.is_zero():
        ru = _as_univariate(r, x)
        dr = max(ru)
        if dr < dg:
            break
        lr = ru[dr]
        shift = Polynomial({((x, dr - dg),) if dr > dg else _ONE_TERM: Fraction(1)})
        r = r * lg - g_poly * lr * shift
    return r


def poly_try_exact_div(f: Polynomial, d: Polynomial) -> Polynomial | None:
    """poly_exact_div, but None instead of an error when d does not divide f."""
    try:
        return poly_exact_div(f, d)
    except SymbolicError:
        return None


def _monomial_content(p: Polynomial) -> Term:
    """The monomial dividing every term of p (termwise minimum exponents)."""
    shared: dict[Symbol, int] | None = None
    for t in p._terms:
        exps = dict(t)
        if shared is None:
            shared = exps
        else:
            shared = {s: min(e, exps[s]) for s, e in shared.items() if exps.get(s)}
        if not shared:
            break
    return tuple(sorted((shared or {}).items(), key=lambda se: se[0].name))


def _shift_down(p: Polynomial, monomial: Term) -> Polynomial:
    if not monomial:
        return p
    return Polynomial({_term_div(t, monomial): c for t, c in p._terms.items()})


def _rational_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(
        _int_gcd(a.numerator, b.numerator),
        a.denominator * b.denominator // _int_gcd(a.denominator, b.denominator),
    )


def _univariate_gcd(f: Polynomial, g: Polynomial, x: Symbol) -> Polynomial:
    fa = {d: p.constant_value() for d, p in _as_univariate(f, x).items()}
    fb = {d: p.constant_value() for d, p in _as_univariate(g, x).items()}
    while fb:
        _, r = _uni_divmod_dense(fa, fb)
        fa, fb = fb, r
    return Polynomial(
        {((x, d),) if d else _ONE_TERM: c for d, c in fa.items()}
    ).primitive()


def _pp_wrt(p: Polynomial, x: Symbol) -> Polynomial:
    """Primitive part of p with respect to x: the content polynomial in the
    remaining variables is divided out and the rational scale normalized."""
    if p.is_zero():
        return p
    content = _uni_content(_as_univariate(p, x))
    return poly_exact_div(p, content).primitive()


def _deg_in(p: Polynomial, x: Symbol) -> int:
    return max(_as_univariate(p, x), default=0)


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Multivariate gcd via the recursive content / primitive-part Euclidean
    algorithm, taking primitive parts between pseudo-divisions to keep the
    coefficients small.  The result is primitive with a positive leading
    coefficient (a rational gcd for constants)."""
    if f.is_zero() and g.is_zero():
        return Polynomial()
    if f.is_zero():
        return g.primitive() if not g.is_constant() else Polynomial.constant(g.content())
    if g.is_zero():
        return f.primitive() if not f.is_constant() else Polynomial.constant(f.content())
    if f.is_constant() or g.is_constant():
        # over the rationals any nonzero constant divides everything; keep
        # the rational-gcd convention so contents stay meaningful
        return Polynomial.constant(_rational_gcd(f.content(), g.content()))
    if f == g or f == -g:
        return f.primitive()

    # peel off the monomial contents; the cofactors are coprime to every
    # variable, so the gcd splits cleanly
    mono_f = _monomial_content(f)
    mono_g = _monomial_content(g)
    shared_exps = {s: e for s, e in mono_f}
    shared_mono: Term = tuple(
        sorted(
            ((s, min(e, shared_exps[s])) for s, e in mono_g if shared_exps.get(s)),
            key=lambda se: se[0].name,
        )
    )
    if mono_f or mono_g:
        core = poly_gcd(_shift_down(f, mono_f), _shift_down(g, mono_g))
        return (Polynomial({shared_mono: Fraction(1)}) * core).primitive()

    variables = sorted(f.variables() | g.variables(), key=lambda s: s.name)
    if len(variables) == 1:
        return _univariate_gcd(f, g, variables[0])

    # cheap win for the factor-of-a-product shapes rational-function
    # arithmetic produces all the time
    small, large = sorted((f, g), key=lambda p: len(p._terms))
    if poly_try_exact_div(large, small) is not None:
        return small.primitive()

    x = variables[-1]
    content_f = _uni_content(_as_univariate(f, x))
    content_g = _uni_content(_as_univariate(g, x))
    shared_content = poly_gcd(content_f, content_g)
    a = poly_exact_div(f, content_f)
    b = poly_exact_div(g, content_g)
    if _deg_in(a, x) < _deg_in(b, x):
        a, b = b, a
    while not b.is_zero() and _deg_in(b, x) > 0:
        r = _uni_prem(_as_univariate(a, x), _as_univariate(b, x), x)
        a, b = b, _pp_wrt(r, x)
    if not b.is_zero():
        # a nonzero x-free remainder: the primitive parts are coprime
        return shared_content.primitive()
    return (shared_content * _pp_wrt(a, x)).primitive()


def _uni_divmod_dense(
    f: dict[int, Fraction], g: dict[int, Fraction]
) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
    dg = max(g)
    lg = g[dg]
    q: dict[int, Fraction] = {}
    r = dict(f)
    while r and max(r) >= dg:
        dr = max(r)
        c = r[dr] / lg
        q[dr - dg] = c
        for d, cg in g.items():
            s = r.get(d + dr - dg, Fraction(0)) - c * cg
            if s:
                r[d + dr - dg] = s
            else:
                r.pop(d + dr - dg, None)
    return q, r


def _uni_mulmod(
    a: dict[int, Fraction], b: dict[int, Fraction], g: dict[int, Fraction]
) -> dict[int, Fraction]:
    prod: dict[int, Fraction] = {}
    for da, ca in a.items():
        for db, cb in b.items():
            d = da + db
            s = prod.get(d, Fraction(0)) + ca * cb
            if s:
                prod[d] = s
            else:
                prod.pop(d, None)
    _, r = _uni_divmod_dense(prod, g)
    return r


def _uni_powmod(exp: int, g: dict[int, Fraction]) -> dict[int, Fraction]:
    """x^exp mod g by square-and-multiply; no dense power is ever formed."""
    result: dict[int, Fraction] = {0: Fraction(1)}
    base = {1: Fraction(1)}
    _, base = _uni_divmod_dense(base, g)
    while exp:
        if exp & 1:
            result = _uni_mulmod(result, base, g)
        base = _uni_mulmod(base, base, g)
        exp >>= 1
    return result


# Dividend degrees past this bound take the modular-exponentiation path.
_POWMOD_DEGREE_MIN = 64


def poly_divmod(dividend: Polynomial, divisor: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Univariate division with remainder: dividend = q * divisor + r with
    deg r < deg divisor, exact coefficients.

    For sparse dividends of high degree the remainder is assembled from
    x^k mod divisor computed by square-and-multiply, so x^2023 + 1 over
    x^2 - 4 never expands a dense degree-2023 polynomial.
    """
    if divisor.is_zero():
        raise DivisionByZero("polynomial division by zero")
    variables = dividend.variables() | divisor.variables()
    if len(variables) > 1:
        raise NotUnivariate(f"multiple symbols {sorted(s.name for s in variables)}")
    if divisor.is_constant():
        return dividend * (Fraction(1) / divisor.constant_value()), Polynomial()
    (x,) = variables
    f = {d: p.constant_value() for d, p in _as_univariate(dividend, x).items()}
    g = {d: p.constant_value() for d, p in _as_univariate(divisor, x).items()}
    if f and max(f) >= _POWMOD_DEGREE_MIN:
        dg = max(g)
        r: dict[int, Fraction] = {}
        for d, c in f.items():
            reduced = {d: Fraction(1)} if d < dg else _uni_powmod(d, g)
            for dd, cc in reduced.items():
                s = r.get(dd, Fraction(0)) + c * cc
                if s:
                    r[dd] = s
                else:
                    r.pop(dd, None)
        diff = dict(f)
        for d, c in r.items():
            s = diff.get(d, Fraction(0)) - c
            if s:
                diff[d] = s
            else:
                diff.pop(d, None)
        q, leftover = _uni_divmod_dense(diff, g)
        assert not leftover, "powmod remainder disagrees with long division"
    else:
        q, r = _uni_divmod_dense(f, g)

    def back(coeffs: dict[int, Fraction]) -> Polynomial:
        return Polynomial({((x, d),) if d else _ONE_TERM: c for d, c in coeffs.items()})

    return back(q), back(r)


# ---------------------------------------------------------------------------
# rational functions


_ONE_POLY = Polynomial.constant(1)


class RationalFunction:
    """num/den in lowest terms; den's graded-lex leading coefficient is +1."""

    __slots__ = ("num", "den", "dim")

    def __init__(self, num: Polynomial, den: Polynomial, dim: Dimension, _reduced=False):
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            num, den = Polynomial(), _ONE_POLY
        else:
            if not _reduced:
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num = poly_exact_div(num, g)
                    den = poly_exact_div(den, g)
            lc = den.leading()[1]
            if lc != 1:
                num = num * (Fraction(1) / lc)
                den = den * (Fraction(1) / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "dim", dim)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def constant(cls, c, dim: Dimension = Dimension()) -> "RationalFunction":
        return cls(Polynomial.constant(c), _ONE_POLY, dim)

    @classmethod
    def of(cls, symbol: Symbol) -> "RationalFunction":
        return cls(Polynomial.of(symbol), _ONE_POLY, symbol.dim)

    def variables(self) -> set[Symbol]:
        return self.num.variables() | self.den.variables()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def _require_dim(self, other: "RationalFunction"):
        if self.dim != other.dim:
            raise DimensionMismatch(
                f"cannot add {self.dim or '1'} and {other.dim or '1'}"
            )

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        self._require_dim(other)
        # fraction addition the Knuth way: with both operands in lowest
        # terms only gcds against gcd(den, den) are ever needed
        a, b = self.num, self.den
        c, d = other.num, other.den
        g = poly_gcd(b, d)
        if g.is_constant():
            return RationalFunction(a * d + c * b, b * d, self.dim, _reduced=True)
        b1 = poly_exact_div(b, g)
        d1 = poly_exact_div(d, g)
        t = a * d1 + c * b1
        if t.is_zero():
            return RationalFunction(Polynomial(), _ONE_POLY, self.dim, _reduced=True)
        h = poly_gcd(t, g)
        if h.is_constant():
            return RationalFunction(t, b1 * d, self.dim, _reduced=True)
        return RationalFunction(
            poly_exact_div(t, h), b1 * poly_exact_div(d, h), self.dim, _reduced=True
        )

    def __neg__(self):
        return RationalFunction(-self.num, self.den, self.dim, _reduced=True)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        # cross-cancel first; the surviving factors are pairwise coprime
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        a = self.num if g1.is_constant() else poly_exact_div(self.num, g1)
        d = other.den if g1.is_constant() else poly_exact_div(other.den, g1)
        c = other.num if g2.is_constant() else poly_exact_div(other.num, g2)
        b = self.den if g2.is_constant() else poly_exact_div(self.den, g2)
        return RationalFunction(a * c, b * d, self.dim * other.dim, _reduced=True)

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if other.num.is_zero():
            raise DivisionByZero("division by an identically zero rational function")
        inverse = RationalFunction(
            other.den, other.num, other.dim ** -1, _reduced=True
        )
        return self * inverse

    def substitute(
        self,
        bindings: Mapping[Symbol, Union["RationalFunction", Fraction, int]],
    ) -> "RationalFunction":
        """Simultaneous substitution; plain rationals stand for magnitudes in
        the symbol's own unit, rational-function bindings must match the
        symbol's dimension."""
        normalized: dict[Symbol, RationalFunction] = {}
        for symbol, value in bindings.items():
            if isinstance(value, RationalFunction):
                if value.dim != symbol.dim:
                    raise DimensionMismatch(
                        f"binding for {symbol.name} has dimension "
                        f"{value.dim or '1'}, expected {symbol.dim or '1'}"
                    )
                normalized[symbol] = RationalFunction(value.num, value.den, Dimension())
            else:
                normalized[symbol] = RationalFunction.constant(Fraction(value))
        new_num = _poly_substitute(self.num, normalized)
        new_den = _poly_substitute(self.den, normalized)
        if new_den.num.is_zero():
            raise DivisionByZero("denominator vanishes after substitution")
        combined = new_num / new_den
        return RationalFunction(combined.num, combined.den, self.dim)

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        den = self.den.evaluate(point)
        if den == 0:
            raise DivisionByZero("denominator vanishes at evaluation point")
        return self.num.evaluate(point) / den

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den and self.dim == other.dim

    def __hash__(self):
        return hash((self.num, self.den, self.dim))

    def __str__(self):
        return render_rational_function(self)

    def __repr__(self):
        return f"RationalFunction({render_rational_function(self)!r})"


def _poly_substitute(
    p: Polynomial, bindings: Mapping[Symbol, RationalFunction]
) -> RationalFunction:
    total = RationalFunction.constant(0)
    for t, c in p.terms.items():
        factor = RationalFunction.constant(c)
        for s, e in t:
            replacement = bindings.get(s)
            if replacement is None:
                replacement = RationalFunction(Polynomial.of(s), _ONE_POLY, Dimension())
            for _ in range(e):
                factor = factor * replacement
        total = total + factor
    return total


def rf_equal(a: RationalFunction, b: RationalFunction) -> bool:
    """Equality of represented functions: a.num*b.den = b.num*a.den."""
    return a.num * b.den == b.num * a.den


def render_rational_function(f: RationalFunction, full_digits: bool = False) -> str:
    num_text = render_polynomial(f.num, full_digits)
    if f.den == _ONE_POLY:
        return num_text
    if len(f.num.terms) > 1:
        num_text = f"({num_text})"
    den_text = render_polynomial(f.den, full_digits)
    den_terms = f.den.terms
    simple_den = len(den_terms) == 1 and all(
        c == 1 and len(t) == 1 and t[0][1] == 1 for t, c in den_terms.items()
    )
    if not simple_den:
        den_text = f"({den_text})"
    return f"{num_text}/{den_text}"


@dataclass(frozen=True)
class SignCondition:
    """A feasibility note produced by symbolic division: poly > 0."""

    poly: Polynomial

    def __str__(self):
        return f"{self.poly} > 0"

    def holds_at(self, point: Mapping[str, Fraction]) -> bool:
        return self.poly.evaluate(point) > 0


def strip_positive_factors(p: Polynomial) -> Polynomial:
    """Drop factors that are positive whenever every symbol is positive:
    the rational content and the monomial gcd of the terms."""
    if p.is_zero():
        return p
    terms = p.terms
    shared: dict[Symbol, int] = None  # type: ignore[assignment]
    for t in terms:
        exps = dict(t)
        if shared is None:
            shared = exps
        else:
            shared = {
                s: min(e, exps[s]) for s, e in shared.items() if exps.get(s)
            }
    monomial: Term = tuple(sorted(shared.items(), key=lambda se: se[0].name))
    content = p.content()
    return Polynomial(
        {_term_div(t, monomial): c / content for t, c in terms.items()}
    )
