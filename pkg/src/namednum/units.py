"""Named numbers: unit atoms, exchange rates, dimensions and quantities.

A quantity is an exact magnitude tagged with a unit expression (integer
exponents over user-declared atoms).  Atoms declared with an exchange rate,
like ``1 m == 100 cm`` or ``1 ducat == 5 piastre``, fall into one
commensurability class and convert exactly; addition is only defined inside
one class per atom position (you do not add apples and people), while
multiplication and division freely produce new compound units.

Registries are values: declaring a unit or a rate returns a new registry and
never mutates the old one, so quantities can be shared freely.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from .errors import DivisionByZero, EngineError
from .scalar import ExactScalar, RationalLike, exact_sqrt, render_scalar


class UnitsError(EngineError):
    pass


class DuplicateUnit(UnitsError):
    pass


class UnknownUnit(UnitsError):
    pass


class InconsistentRate(UnitsError):
    pass


class NonRationalRate(UnitsError):
    pass


class IncommensurableAddition(UnitsError):
    """The Viete diagnostic: addition of quantities of different dimensions."""

    def __init__(self, lhs_unit: "UnitExpr", rhs_unit: "UnitExpr"):
        self.lhs_unit = lhs_unit
        self.rhs_unit = rhs_unit
        super().__init__(f"cannot add {lhs_unit or '1'} and {rhs_unit or '1'}")


class IncompatibleUnits(UnitsError):
    pass


class OddExponent(UnitsError):
    pass


class NoSolution(UnitsError):
    pass


class Underdetermined(UnitsError):
    def __init__(self, nullity: int):
        self.nullity = nullity
        super().__init__(f"solution space has dimension {nullity}")


class _ExpVector:
    """Immutable map key -> nonzero integer exponent; base for units and
    dimensions."""

    __slots__ = ("_exps",)

    def __init__(self, exps: dict[str, int] | Iterable[tuple[str, int]] = ()):
        cleaned = {}
        for key, exp in (exps.items() if isinstance(exps, dict) else exps):
            if exp:
                cleaned[key] = cleaned.get(key, 0) + exp
                if not cleaned[key]:
                    del cleaned[key]
        object.__setattr__(self, "_exps", cleaned)

    @property
    def exponents(self) -> dict[str, int]:
        return dict(self._exps)

    def keys(self):
        return self._exps.keys()

    def get(self, key: str) -> int:
        return self._exps.get(key, 0)

    def is_empty(self) -> bool:
        return not self._exps

    def __bool__(self):
        return bool(self._exps)

    def __eq__(self, other):
        return type(self) is type(other) and self._exps == other._exps

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self._exps.items())))

    def _combine(self, other, sign: int):
        merged = dict(self._exps)
        for key, exp in other._exps.items():
            merged[key] = merged.get(key, 0) + sign * exp
        return type(self)(merged)

    def __mul__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._combine(other, 1)

    def __truediv__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._combine(other, -1)

    def __pow__(self, k: int):
        return type(self)({key: exp * k for key, exp in self._exps.items()})

    def halved(self):
        if any(exp % 2 for exp in self._exps.values()):
            raise OddExponent(f"{self} is not a square")
        return type(self)({key: exp // 2 for key, exp in self._exps.items()})

    def __str__(self):
        if not self._exps:
            return ""
        positive = sorted((k, e) for k, e in self._exps.items() if e > 0)
        negative = sorted((k, -e) for k, e in self._exps.items() if e < 0)

        def fmt(name, exp):
            return name if exp == 1 else f"{name}^{exp}"

        if positive:
            text = "*".join(fmt(n, e) for n, e in positive)
            for name, exp in negative:
                text += "/" + fmt(name, exp)
            return text
        # no positive part: keep explicit negative exponents, e.g. s^-2
        return "*".join(f"{name}^{-exp}" for name, exp in negative)

    def __repr__(self):
        return f"{type(self).__name__}({str(self) or '1'!r})"


class UnitExpr(_ExpVector):
    """Unit expression over declared atoms, e.g. cherry/min or m^2."""

    @classmethod
    def dimensionless(cls):
        return cls()

    @classmethod
    def atom(cls, name: str):
        return cls({name: 1})


class Dimension(_ExpVector):
    """Exponent vector over commensurability classes: a quantity's type."""

    def classes(self) -> frozenset[str]:
        return frozenset(self._exps)


def parse_unit_expr(text: str, registry: "UnitRegistry | None" = None) -> UnitExpr:
    """Parse ``atom(^int)?((*|/)atom(^int)?)*``; '' or '1' is dimensionless."""
    text = text.strip()
    if text in ("", "1"):
        return UnitExpr.dimensionless()
    pos = 0
    exps: list[tuple[str, int]] = []
    sign = 1
    while True:
        start = pos
        while pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
            pos += 1
        name = text[start:pos]
        if not name or name[0].isdigit():
            raise UnitsError(f"bad unit expression {text!r}")
        if registry is not None and name not in registry.atoms:
            raise UnknownUnit(f"unknown unit {name!r}")
        exp = 1
        if pos < len(text) and text[pos] == "^":
            pos += 1
            estart = pos
            if pos < len(text) and text[pos] == "-":
                pos += 1
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            if text[estart:pos] in ("", "-"):
                raise UnitsError(f"bad unit exponent in {text!r}")
            exp = int(text[estart:pos])
        exps.append((name, sign * exp))
        if pos == len(text):
            return UnitExpr(exps)
        if text[pos] == "*":
            sign = 1
        elif text[pos] == "/":
            sign = -1
        else:
            raise UnitsError(f"bad unit expression {text!r}")
        pos += 1


SI_BASE_ATOMS = ("m", "kg", "s", "A", "K", "mol", "cd")


class UnitRegistry:
    """Immutable set of unit atoms with exact conversion factors.

    Each atom maps to ``(representative, factor)`` meaning
    ``1 atom = factor * representative``; atoms sharing a representative are
    commensurable.  All mutating operations return a new registry.
    """

    __slots__ = ("_conv",)

    def __init__(self, conv: dict[str, tuple[str, Fraction]] | None = None):
        object.__setattr__(self, "_conv", dict(conv or {}))

    @classmethod
    def empty(cls) -> "UnitRegistry":
        return cls()

    @classmethod
    def standard(cls) -> "UnitRegistry":
        """The seven SI base atoms plus min (60 s == 1 min)."""
        reg = cls()
        for name in SI_BASE_ATOMS:
            reg = reg.declare_unit(name)
        reg = reg.declare_unit("min")
        return reg.declare_rate(reg.quantity(60, "s"), reg.quantity(1, "min"))

    @property
    def atoms(self) -> frozenset[str]:
        return frozenset(self._conv)

    def __eq__(self, other):
        return isinstance(other, UnitRegistry) and self._conv == other._conv

    def __hash__(self):
        return hash(frozenset(self._conv.items()))

    # -- declarations

    def declare_unit(self, name: str) -> "UnitRegistry":
        if not name or not (name[0].isalpha() or name[0] == "_"):
            raise UnitsError(f"bad unit name {name!r}")
        if name in self._conv:
            raise DuplicateUnit(f"unit {name!r} already declared")
        conv = dict(self._conv)
        conv[name] = (name, Fraction(1))
        return UnitRegistry(conv)

    def remove_unit(self, name: str) -> "UnitRegistry":
        if name not in self._conv:
            raise UnknownUnit(f"unknown unit {name!r}")
        conv = {k: v for k, v in self._conv.items() if k != name}
        rep, _ = self._conv[name]
        if rep == name:
            # promote another member of the class to representative
            members = [(k, f) for k, (r, f) in conv.items() if r == name]
            if members:
                new_rep, new_f = min(members, key=lambda kv: (kv[1], kv[0]))
                for k, f in members:
                    conv[k] = (new_rep, f / new_f)
        return UnitRegistry(conv)

    def declare_rate(self, lhs: "Quantity", rhs: "Quantity") -> "UnitRegistry":
        for side in (lhs, rhs):
            if len(side.unit.exponents) != 1 or set(side.unit.exponents.values()) != {1}:
                raise UnitsError(f"rate sides must be single atoms, got {side.unit}")
            try:
                value = side.magnitude.as_fraction()
            except EngineError:
                raise NonRationalRate(f"rate magnitude {side.magnitude} is not rational")
            if value <= 0:
                raise NonRationalRate(f"rate magnitude {value} is not positive")
        (a1,) = lhs.unit.exponents
        (a2,) = rhs.unit.exponents
        q1 = lhs.magnitude.as_fraction()
        q2 = rhs.magnitude.as_fraction()
        rep1, f1 = self._conv[a1]
        rep2, f2 = self._conv[a2]
        if rep1 == rep2:
            if q1 * f1 != q2 * f2:
                raise InconsistentRate(
                    f"{q1} {a1} == {q2} {a2} conflicts with declared rates"
                )
            return self
        # q1 a1 == q2 a2, so 1 rep2 = (q1 f1)/(q2 f2) rep1
        scale = q1 * f1 / (q2 * f2)
        conv = dict(self._conv)
        for atom, (rep, f) in self._conv.items():
            if rep == rep2:
                conv[atom] = (rep1, f * scale)
        return UnitRegistry(conv)

    # -- lookups

    def _require(self, name: str) -> tuple[str, Fraction]:
        try:
            return self._conv[name]
        except KeyError:
            raise UnknownUnit(f"unknown unit {name!r}") from None

    def class_of(self, name: str) -> str:
        return self._require(name)[0]

    def factor(self, name: str) -> Fraction:
        """Factor to the class representative: 1 name = factor * rep."""
        return self._require(name)[1]

    def dimension_of(self, unit: UnitExpr) -> Dimension:
        exps: list[tuple[str, int]] = []
        for atom, exp in unit.exponents.items():
            exps.append((self.class_of(atom), exp))
        return Dimension(exps)

    def rep_factor(self, unit: UnitExpr) -> Fraction:
        """Value of 1 unit expressed in class representatives."""
        scale = Fraction(1)
        for atom, exp in unit.exponents.items():
            scale *= self.factor(atom) ** exp
        return scale

    def finest_atom(self, candidates: Iterable[str]) -> str:
        """The atom with the smallest factor to its class representative."""
        return min(candidates, key=lambda a: (self.factor(a), a))

    # -- quantities

    def quantity(
        self, magnitude: Union[RationalLike, ExactScalar], unit: Union[str, UnitExpr] = ""
    ) -> "Quantity":
        if isinstance(unit, str):
            unit = parse_unit_expr(unit, self)
        if not isinstance(magnitude, ExactScalar):
            magnitude = ExactScalar(Fraction(magnitude))
        return Quantity(magnitude, unit, self)

    def convert(self, q: "Quantity", target: Union[str, UnitExpr]) -> "Quantity":
        if isinstance(target, str):
            target = parse_unit_expr(target, self)
        if self.dimension_of(q.unit) != self.dimension_of(target):
            raise IncompatibleUnits(f"cannot convert {q.unit or '1'} to {target or '1'}")
        scale = self.rep_factor(q.unit) / self.rep_factor(target)
        return Quantity(q.magnitude * scale, target, self)

    def __repr__(self):
        classes: dict[str, list[str]] = {}
        for atom, (rep, _) in self._conv.items():
            classes.setdefault(rep, []).append(atom)
        body = "; ".join(",".join(sorted(v)) for v in classes.values())
        return f"UnitRegistry({body})"


def common_atom_choice(reg: UnitRegistry, units: Iterable[UnitExpr]) -> dict[str, str]:
    """Per commensurability class, the finest atom used by any of the units."""
    members: dict[str, set[str]] = {}
    for unit in units:
        for atom in unit.exponents:
            members.setdefault(reg.class_of(atom), set()).add(atom)
    return {cls: reg.finest_atom(atoms) for cls, atoms in members.items()}


def realign_unit(
    reg: UnitRegistry, unit: UnitExpr, chosen: dict[str, str]
) -> tuple[UnitExpr, Fraction]:
    """Re-express a unit with one atom per class, returning the new unit and
    the exact factor by which a magnitude must be scaled."""
    by_class: dict[str, int] = {}
    for atom, exp in unit.exponents.items():
        cls = reg.class_of(atom)
        by_class[cls] = by_class.get(cls, 0) + exp
    target = UnitExpr({chosen[cls]: exp for cls, exp in by_class.items() if exp})
    scale = reg.rep_factor(unit) / reg.rep_factor(target)
    return target, scale


class Quantity:
    """An exact magnitude with a unit: the named number."""

    __slots__ = ("magnitude", "unit", "reg")

    def __init__(self, magnitude: ExactScalar, unit: UnitExpr, reg: UnitRegistry):
        for atom in unit.exponents:
            reg._require(atom)
        object.__setattr__(self, "magnitude", magnitude)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "reg", reg)

    def __setattr__(self, name, value):
        raise AttributeError("Quantity is immutable")

    @property
    def dimension(self) -> Dimension:
        return self.reg.dimension_of(self.unit)

    def _check_reg(self, other: "Quantity"):
        if self.reg != other.reg:
            raise UnitsError("quantities belong to different unit registries")

    def _aligned_to(self, chosen: dict[str, str]) -> "Quantity":
        """Re-express with one atom per class (the chosen one)."""
        target, scale = realign_unit(self.reg, self.unit, chosen)
        return Quantity(self.magnitude * scale, target, self.reg)

    def _align(self, other: "Quantity") -> tuple["Quantity", "Quantity"]:
        self._check_reg(other)
        chosen = common_atom_choice(self.reg, (self.unit, other.unit))
        return self._aligned_to(chosen), other._aligned_to(chosen)

    def __add__(self, other):
        if not isinstance(other, Quantity):
            return NotImplemented
        self._check_reg(other)
        if self.dimension != other.dimension:
            raise IncommensurableAddition(self.unit, other.unit)
        a, b = self._align(other)
        return Quantity(a.magnitude + b.magnitude, a.unit, self.reg)

    def __sub__(self, other):
        if not isinstance(other, Quantity):
            return NotImplemented
        return self + Quantity(-other.magnitude, other.unit, other.reg)

    def __neg__(self):
        return Quantity(-self.magnitude, self.unit, self.reg)

    def __mul__(self, other):
        if not isinstance(other, Quantity):
            return NotImplemented
        a, b = self._align(other)
        return Quantity(a.magnitude * b.magnitude, a.unit * b.unit, self.reg)

    def __truediv__(self, other):
        if not isinstance(other, Quantity):
            return NotImplemented
        if other.magnitude.is_zero():
            raise DivisionByZero(f"division of {self} by zero")
        a, b = self._align(other)
        return Quantity(a.magnitude / b.magnitude, a.unit / b.unit, self.reg)

    def sqrt(self) -> "Quantity":
        return Quantity(exact_sqrt(self.magnitude), self.unit.halved(), self.reg)

    def __eq__(self, other):
        if not isinstance(other, Quantity):
            return NotImplemented
        return self.magnitude == other.magnitude and self.unit == other.unit

    def __hash__(self):
        return hash((self.magnitude, self.unit))

    def __str__(self):
        text = render_scalar(self.magnitude)
        return f"{text} {self.unit}" if self.unit else text

    def __repr__(self):
        return f"Quantity({self})"


def solve_dimensions(
    reg: UnitRegistry, target: Dimension, basis: list[Dimension]
) -> list[Fraction]:
    """Solve sum(x_i * basis_i) = target over exact rationals.

    Returns the unique exponent vector when one exists; raises NoSolution
    when the system is inconsistent and Underdetermined(nullity) when the
    solution space has positive dimension.  This is the dimensional-analysis
    move that forces T = C*sqrt(L/g) for the pendulum.
    """
    if not basis:
        raise UnitsError("basis must be nonempty")
    classes = sorted(set(target.keys()).union(*(b.keys() for b in basis)))
    n = len(basis)
    rows = [
        [Fraction(b.get(cls)) for b in basis] + [Fraction(target.get(cls))]
        for cls in classes
    ]
    if not rows:  # all dimensionless: 0 = 0 with every x free
        raise Underdetermined(n)

    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        scale = rows[rank][col]
        rows[rank] = [v / scale for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [v - factor * p for v, p in zip(rows[r], rows[rank])]
        rank += 1
    for r in range(rank, len(rows)):
        if rows[r][n]:
            raise NoSolution("no exponent assignment matches the target dimension")
    if rank < n:
        raise Underdetermined(n - rank)
    # with rank == n the first n rows are the identity in pivot order
    solution = [Fraction(0)] * n
    for r in range(rank):
        col = next(c for c in range(n) if rows[r][c])
        solution[col] = rows[r][n]
    return solution
