"""Acceptance suite: every criterion checked with exact equality (tolerance 0).

Each test prints one PASS line (visible with pytest -s); any failure shows
up as an ordinary pytest failure.
"""

import random
from fractions import Fraction

import pytest

import progs
from namednum.errors import DivisionByZero
from namednum.program import (
    EvalError,
    InfeasibleDivision,
    agreement_check,
    eval_by_name,
    eval_by_value,
    parse,
)
from namednum.scalar import ExactScalar, exact_sqrt, render_scalar, sign
from namednum.service import dumps, loads, run, worksheet_from_program
from namednum.symbolic import (
    Polynomial,
    RationalFunction,
    Symbol,
    poly_divmod,
    render_polynomial,
    rf_equal,
)
from namednum.units import (
    Dimension,
    IncommensurableAddition,
    UnitRegistry,
    parse_unit_expr,
    solve_dimensions,
)

F = Fraction


def _sym(name, cls="d"):
    return RationalFunction.of(Symbol(name, Dimension({cls: 1})))


def test_cherries_numeric_fixture():
    p = progs.load("cherries.nn")
    reg = p.registry
    trace = eval_by_value(p)
    assert [str(e.value) for e in trace.entries] == [
        "3 cherry/min",
        "9 cherry/min",
        "12 cherry/min",
        "6 min",
    ]
    assert trace.answer == reg.quantity(6, "min")

    rerun = eval_by_value(p, {"C": reg.quantity(48, "cherry")})
    assert [str(e.value) for e in rerun.entries[:3]] == [
        "2 cherry/min",
        "6 cherry/min",
        "8 cherry/min",
    ]
    assert rerun.answer == reg.quantity(6, "min")
    print("PASS: cherries numeric fixture (3, 9, 12 cherry/min -> 6 min; "
          "C=48 leaves the answer at 6 min)")


def test_cherries_symbolic_fixture():
    p = progs.load("cherries.nn")
    full = eval_by_name(p, ["A", "B", "C"])
    a, b = _sym("A", "min"), _sym("B", "min")
    assert rf_equal(full.answer, a * b / (a + b))
    assert full.answer.dim == p.registry.dimension_of(parse_unit_expr("min", p.registry))
    assert full.eliminated == frozenset({"C"})

    lettered = eval_by_name(p, ["A"])
    eight = RationalFunction.constant(8, a.dim)
    assert rf_equal(lettered.answer, eight * a / (a + eight))
    assert str(lettered.answer) == "8*A/(A + 8)"
    assert str(lettered.answer_unit) == "min"
    print("PASS: cherries symbolic fixture (A*B/(A + B) min, eliminated {C}; "
          "single letter gives 8*A/(A + 8) min)")


def test_kevin_fixture():
    p = progs.load("cherries_kevin.nn")
    result = eval_by_name(p, ["A", "B", "K"])
    a, b, k = _sym("A", "min"), _sym("B", "min"), _sym("K", "min")
    assert rf_equal(result.answer, a * b * k / (a * k + b * k - a * b))
    assert [str(c) for c in result.conditions] == ["-A*B + A*K + B*K > 0"]

    reg = p.registry
    # threshold: A*B/(A+B) = 24*8/32 = 6 min; at or below it the bowl never fills
    with pytest.raises(EvalError) as at_threshold:
        eval_by_value(p, {"K": reg.quantity(6, "min")})
    assert isinstance(at_threshold.value.__cause__, DivisionByZero)
    assert at_threshold.value.step == "T"
    with pytest.raises(EvalError) as below:
        eval_by_value(p, {"K": reg.quantity(5, "min")})
    assert isinstance(below.value.__cause__, InfeasibleDivision)
    assert below.value.step == "T"
    print("PASS: Kevin fixture (A*B*K/(A*K + B*K - A*B), positivity condition "
          "recorded, K <= A*B/(A+B) raises the infeasibility signal)")


def test_rabbits_fixture():
    p = progs.load("rabbits.nn")
    reg = p.registry
    trace = eval_by_value(p)
    assert trace.value_of("ExcessiveLegs") == reg.quantity(16, "leg")
    assert trace.value_of("Chicken") == reg.quantity(8, "head")
    assert trace.answer == reg.quantity(4, "head")

    alternative = parse(
        """
        unit head
        unit leg
        data Heads = 12 head
        data ChickenAnatomy = 2 leg/head
        AllChickenLegs := Heads * ChickenAnatomy
        return AllChickenLegs
        """
    )
    assert eval_by_value(alternative).answer == alternative.registry.quantity(24, "leg")
    print("PASS: rabbits and chicken (16 leg, 8 head, 4 head; alternative "
          "start 12 head * 2 leg/head = 24 leg evaluates)")


def test_named_number_laws():
    reg = UnitRegistry.empty()
    for atom in ("m", "cm", "apple", "people"):
        reg = reg.declare_unit(atom)
    reg = reg.declare_rate(reg.quantity(1, "m"), reg.quantity(100, "cm"))

    total = reg.quantity(1, "m") + reg.quantity(1, "cm")
    assert total == reg.quantity(101, "cm") and str(total) == "101 cm"

    share = reg.quantity(10, "apple") / reg.quantity(5, "people")
    assert share == reg.quantity(2, "apple/people")

    served = reg.quantity(10, "apple") / reg.quantity(2, "apple/people")
    assert served == reg.quantity(5, "people")

    with pytest.raises(IncommensurableAddition):
        reg.quantity(10, "apple") + reg.quantity(10, "people")
    print("PASS: named-number laws (101 cm; 2 apple/people; 5 people; "
          "apples+people rejected)")


def test_polynomial_fixture():
    x = Symbol("x", Dimension())
    dividend = Polynomial({((x, 2023),): F(1), (): F(1)})
    divisor = Polynomial({((x, 2),): F(1), (): F(-4)})
    quotient, remainder = poly_divmod(dividend, divisor)
    assert remainder == Polynomial({((x, 1),): F(2 ** 2022), (): F(1)})
    assert quotient * divisor + remainder == dividend
    assert render_polynomial(remainder) == "2^2022*x + 1"
    assert render_polynomial(remainder, full_digits=True) == f"{2 ** 2022}*x + 1"
    print("PASS: polynomial fixture ((x^2023 + 1) mod (x^2 - 4) = 2^2022*x + 1, "
          "printed as 2^2022 by default)")


def test_dimensional_solver():
    reg = UnitRegistry.standard()
    metre = reg.dimension_of(parse_unit_expr("m", reg))
    gravity = reg.dimension_of(parse_unit_expr("m/s^2", reg))
    second = reg.dimension_of(parse_unit_expr("s", reg))
    speed = reg.dimension_of(parse_unit_expr("m/s", reg))
    assert solve_dimensions(reg, second, [metre, gravity]) == [F(1, 2), F(-1, 2)]
    assert solve_dimensions(reg, speed, [metre, gravity]) == [F(1, 2), F(1, 2)]
    print("PASS: dimensional solver (second -> (1/2, -1/2); "
          "metre/second -> (1/2, 1/2))")


def test_classic_problem_suite():
    taps = eval_by_name(progs.load("taps.nn"), ["a", "b"])
    a, b = _sym("a"), _sym("b")
    two = RationalFunction.constant(2)
    assert rf_equal(taps.answer, a * b / (a + b))

    avg = eval_by_name(progs.load("average_speed.nn"), ["a", "b"])
    assert rf_equal(avg.answer, two * a * b / (a + b))

    raft = eval_by_name(progs.load("raft.nn"), ["a", "b"])
    assert rf_equal(raft.answer, two * a * b / (a - b))
    assert [str(c) for c in raft.conditions] == ["a - b > 0"]

    cars = progs.load("meeting_cars.nn")
    reg = cars.registry
    assert eval_by_value(cars).answer == reg.quantity(2, "hour")
    # the program is validated against the closed form sqrt(a*b) on random
    # positive rationals; the square of the answer is checked independently
    rng = random.Random(20230904)
    for _ in range(100):
        qa = reg.quantity(F(rng.randint(1, 60), rng.randint(1, 12)), "hour")
        qb = reg.quantity(F(rng.randint(1, 60), rng.randint(1, 12)), "hour")
        answer = eval_by_value(cars, {"a": qa, "b": qb}).answer
        assert answer == (qa * qb).sqrt()
        assert answer * answer == qa * qb
    print("PASS: classic problem suite (a*b/(a+b); 2*a*b/(a+b); 2*a*b/(a-b) "
          "with a - b > 0; sqrt fixture 2 hour checked on 100 random points)")


def test_property_scalar_field_laws_10k():
    rng = random.Random(1009)

    def small_scalar():
        kind = rng.randrange(4)
        if kind == 0:
            return ExactScalar(F(rng.randint(-9, 9), rng.randint(1, 9)))
        if kind == 1:
            return exact_sqrt(rng.randint(0, 40))
        if kind == 2:
            return ExactScalar(F(rng.randint(-20, 20))) + exact_sqrt(rng.randint(0, 20))
        return exact_sqrt(rng.randint(0, 12)) - exact_sqrt(rng.randint(0, 12))

    cases = 0
    while cases < 10_000:
        a, b, c = small_scalar(), small_scalar(), small_scalar()
        law = cases % 5
        if law == 0:
            assert a + b == b + a and a * b == b * a
        elif law == 1:
            assert (a + b) + c == a + (b + c)
        elif law == 2:
            assert (a * b) * c == a * (b * c)
        elif law == 3:
            assert a * (b + c) == a * b + a * c
            assert a + (-a) == ExactScalar(0)
        else:
            if not a.is_zero():
                assert a * (ExactScalar(1) / a) == ExactScalar(1)
            assert sign(a) * sign(b) == sign(a * b)
            # canonical form is association-independent
            assert (a + b) + (c + c) == ((a + b) + c) + c
        (a * b + c).validate()
        cases += 1
    print("PASS: scalar canonical-form and field-law suite (10000 randomized cases)")


def test_property_rational_function_oracle_1k():
    import test_symbolic as ts

    rng = random.Random(5115)
    comparisons = 0
    while comparisons < 1_000:
        tree = ts._random_tree(rng)
        try:
            f = ts._tree_rf(tree)
        except DivisionByZero:
            continue
        for _ in range(10):
            point = {
                s.name: F(rng.randint(-9, 9), rng.randint(1, 7)) for s in ts._SYMS
            }
            try:
                direct = ts._tree_value(tree, point)
            except ZeroDivisionError:
                continue
            try:
                assert f.evaluate(point) == direct
            except DivisionByZero:
                continue
            comparisons += 1
    print("PASS: rational-function normalization vs pointwise oracle "
          "(1000 randomized point comparisons)")


def test_property_agreement_on_fixtures():
    both_mode_fixtures = [
        "cherries.nn",
        "cherries_kevin.nn",
        "cherries_ratio.nn",
        "rabbits.nn",
        "taps.nn",
        "average_speed.nn",
        "raft.nn",
    ]
    for name in both_mode_fixtures:
        assert agreement_check(progs.load(name), trials=100, seed=42), name
    print("PASS: call-by-name/call-by-value agreement on all fixture programs "
          "(100 exact trials each)")


def test_property_helpful_rescaling_invariance():
    p = progs.load("cherries.nn")
    reg = p.registry
    baseline = eval_by_value(p).answer
    rng = random.Random(52)
    for _ in range(50):
        scale = F(rng.randint(1, 500), rng.randint(1, 100))
        rescaled = eval_by_value(p, {"C": reg.quantity(72 * scale, "cherry")})
        assert rescaled.answer == baseline
    print("PASS: helpful-number rescaling invariance on cherries "
          "(50 random positive rational scalings, answer exactly 6 min)")


def test_property_worksheet_round_trip():
    for name in progs.ALL_FIXTURES:
        worksheet = worksheet_from_program(
            progs.load(name), title=name, worksheet_id=name
        )
        worksheet, _ = run(worksheet)
        text = dumps(worksheet)
        assert dumps(loads(text)) == text
    print("PASS: save/load byte-exact round-trip on all fixture worksheets")


def test_cli_covers_primary_surface(capsys):
    from namednum.cli import main

    assert main(["run", str(progs.PROGRAM_DIR / "cherries.nn")]) == 0
    assert main(["solve", str(progs.PROGRAM_DIR / "cherries.nn")]) == 0
    assert main(["check", str(progs.PROGRAM_DIR / "cherries.nn"), "--trials", "20"]) == 0
    out = capsys.readouterr().out
    assert "Answer: T = 6 min" in out
    assert "Answer: A*B/(A + B) min" in out
    assert "C: Independent" in out
    print("PASS: primary suite drivable from the CLI with no UI built")
