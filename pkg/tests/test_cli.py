import json
from fractions import Fraction

import pytest

from drindex.cli import EvalError, evaluate, main, run_suite
from drindex.dsl import (
    Atom, BinOp, Call, Num, ParseError, Power, parse_expression, to_text,
)
from drindex.modforms import ModularForm, QuasiModularForm, WeightError, delta
from drindex.qseries import QSeries


def test_parse_shapes():
    tree = parse_expression("E4^3 - 728*Delta")
    assert tree == BinOp("-", Power(Atom("E4"), 3),
                         BinOp("*", Num(Fraction(728)), Atom("Delta")))
    nested = parse_expression("D(D(E4))")
    assert nested == Call("D", (Call("D", (Atom("E4"),)),))


def test_parse_rational_literals():
    assert parse_expression("3/4") == Num(Fraction(3, 4))
    assert parse_expression("CK(E4, 1/2)") == Call(
        "CK", (Atom("E4"), Num(Fraction(1, 2))))


def test_parse_error_position_and_expected():
    with pytest.raises(ParseError) as err:
        parse_expression("E4 + * Delta")
    assert err.value.position == 5
    assert "NAME" in err.value.expected
    with pytest.raises(ParseError):
        parse_expression("E4 +")
    with pytest.raises(ParseError):
        parse_expression("E4) ")


def test_print_parse_stability():
    samples = [
        "E4^3 - 728*Delta",
        "D(D(E4))",
        "(E4 + E4)*(E6 - E6)",
        "CK(E4, 1/2)",
        "natural(E4)",
        "etaInvPow(8)*E4",
        "2/3*E4^2*E6 - 1/7*Delta",
        "E4 - E4 - E4",
        "E4*(E6 + E6)^2",
    ]
    for text in samples:
        tree = parse_expression(text)
        assert parse_expression(to_text(tree)) == tree


def test_evaluate_form_and_series():
    kind, value = evaluate(parse_expression("E4^3 - 728*Delta"), 2, 4)
    assert kind == "form" and value.weight == 12
    kind, series = evaluate(
        parse_expression("(E4^3 - 728*Delta)*etaInvPow(8)"), 2, 4)
    assert kind == "series"
    assert list(series.coeffs) == [1, 0, 196732]


def test_evaluate_ck_and_natural():
    kind, lift = evaluate(parse_expression("CK(E4)"), 4, 4)
    assert kind == "jlf"
    e2 = QuasiModularForm.e2()
    e4, e6 = ModularForm.e4(), ModularForm.e6()
    assert lift.entry(2) == (e2 * e4 - QuasiModularForm.promote(e6)) / 12
    kind, zero = evaluate(parse_expression("natural(0)"), 4, 8)
    assert kind == "jlf" and zero.is_zero()


def test_evaluate_derivative_paths():
    kind, f = evaluate(parse_expression("D(E4)"), 6, 4)
    assert kind == "form" and f.weight == 6
    kind, s = evaluate(parse_expression("D(etaInvPow(8))"), 4, 4)
    assert kind == "series"
    assert s[1] == 8


def test_evaluate_errors():
    with pytest.raises(WeightError):
        evaluate(parse_expression("E4 + E6"), 4, 4)
    with pytest.raises(EvalError):
        evaluate(parse_expression("CK(E4) + E4"), 4, 4)
    with pytest.raises(EvalError):
        evaluate(parse_expression("frob(E4)"), 4, 4)
    with pytest.raises(EvalError):
        evaluate(parse_expression("etaInvPow(1/2)"), 4, 4)


def test_main_exit_codes(capsys):
    assert main(["eval", "E4", "--q-order", "2"]) == 0
    assert main(["eval", "E4 + * Delta"]) == 2
    assert main(["eval", "E4 + E6"]) == 2
    capsys.readouterr()


def test_main_json_deterministic(capsys):
    argv = ["eval", "E4*E6", "--q-order", "3", "--format", "json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    doc = json.loads(first)
    assert doc["result"]["kind"] == "form"
    assert doc["result"]["weight"] == 10
    assert doc["result"]["expansion"]["coefficients"][1] == {"n": "-264", "d": "1"}


def test_suite_subsets_run_green(capsys):
    for suite in ("modforms", "jlf"):
        passed, lines, doc = run_suite(suite, {"q_order": 4, "max_degree": 8})
        assert passed
        assert all(line.startswith("PASS") for line in lines)
        assert doc["suite"] == suite


def test_suite_cli_exit(capsys):
    assert main(["suite", "--suite", "modforms", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is True
    assert [r["claim"] for r in doc["results"]] == sorted(
        r["claim"] for r in doc["results"])
