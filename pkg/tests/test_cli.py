import json
import random
from fractions import Fraction

import pytest

from qsphere.algebra import AlgebraElement, a, b, c
from qsphere.algebra import d as gd
from qsphere.calculus import Form, d as dd, wedge
from qsphere.cli import (
    CliSyntaxError,
    EvalError,
    _lift,
    _rank,
    evaluate_text,
    format_report,
    main,
    parse,
    render_value,
    run_suite,
)
from qsphere.scalars import Scalar

q = Scalar.q_power
GENS = (a, b, c, gd)


def random_scalar(rng):
    out = Scalar.from_int(0)
    for _ in range(rng.randrange(1, 4)):
        out = out + Scalar.s_power(rng.randrange(-4, 5)) * rng.randrange(-5, 6)
    return out


def random_element(rng, maxlen=4):
    out = AlgebraElement.zero()
    for _ in range(rng.randrange(1, 4)):
        term = AlgebraElement.one()
        for _ in range(rng.randrange(maxlen + 1)):
            term = term * rng.choice(GENS)
        out = out + term.scale(random_scalar(rng))
    return out


def random_form(rng):
    out = Form.of(random_element(rng, 2))
    out = out + random_element(rng, 2) * dd(random_element(rng, 2))
    if rng.random() < 0.5:
        out = out + wedge(dd(random_element(rng, 1)), dd(random_element(rng, 1)))
    return out


def test_pinned_evaluations():
    assert render_value(evaluate_text("d(a)")) == "a*e0 + q*b*ep"
    sphere_relation = "q^2*bm*d(bp)+bp*d(bm)-(1+(q+q^-1)*b0)*d(b0)"
    assert render_value(evaluate_text(sphere_relation)) == "0"
    assert render_value(evaluate_text("lap(bp)")) == "q^2*(q+q^-1)*bp"


def test_more_evaluations():
    assert render_value(evaluate_text("S(a)")) == "d"
    assert render_value(evaluate_text("S(b)")) == "0 - q*b"
    assert render_value(evaluate_text("eps(a)")) == "1"
    assert render_value(evaluate_text("eps(b)")) == "0"
    assert render_value(evaluate_text("dirac(a)")) == "b"
    assert render_value(evaluate_text("dirac(b)")) == "q*a"
    assert render_value(evaluate_text("star(1)")) == "ep*em"
    assert render_value(evaluate_text("star(ep*em)")) == "1"
    assert render_value(evaluate_text("del(b0) + delbar(b0)")) == render_value(
        evaluate_text("d(b0)")
    )
    # whitespace-insensitive
    assert evaluate_text(" q ^ 2 * b0 ") == evaluate_text("q^2*b0")


def test_syntax_error_positions():
    with pytest.raises(CliSyntaxError) as err:
        parse("d(")
    assert err.value.position == 2
    assert err.value.expected  # a non-empty token set
    with pytest.raises(CliSyntaxError) as err:
        parse("")
    assert err.value.position == 0
    with pytest.raises(CliSyntaxError) as err:
        parse("a b")
    assert err.value.position == 2
    with pytest.raises(CliSyntaxError) as err:
        parse("q^x")
    assert err.value.expected == ("an integer",)
    with pytest.raises(CliSyntaxError):
        parse("foo(a)")
    with pytest.raises(CliSyntaxError):
        parse("a + ?")


def test_eval_type_errors():
    for bad in ("dirac(b0)", "lap(a)", "del(a)", "star(e0)", "nabla(b0)",
                "b0^-1", "ep + nabla(d(b0))"):
        with pytest.raises(EvalError):
            evaluate_text(bad)


def test_negative_output_reparses():
    assert render_value(evaluate_text("0-q")) == "0 - q"
    assert evaluate_text("0 - q") == -q(1)
    val = evaluate_text("S(b)*3")
    assert evaluate_text(render_value(val)) == val


def test_roundtrip_scalars():
    rng = random.Random(11)
    for _ in range(100):
        x = random_scalar(rng)
        assert evaluate_text(render_value(x)) == x


def test_roundtrip_elements():
    rng = random.Random(12)
    for _ in range(100):
        x = random_element(rng)
        got = evaluate_text(render_value(x))
        assert _lift(got, _rank(x)) == x


def test_roundtrip_forms():
    rng = random.Random(13)
    for _ in range(100):
        x = random_form(rng)
        got = evaluate_text(render_value(x))
        assert _lift(got, _rank(x)) == x


def test_reports_deterministic():
    first = run_suite("curvature")
    second = run_suite("curvature")
    assert first == second
    assert format_report(first) == format_report(second)


def test_curvature_report_line():
    report = format_report(run_suite("curvature"))
    assert "Prop-riemann: pass" in report


def test_bwb_anchor_per_weight():
    report = run_suite("bwb", max_n=4)
    anchors = [r["anchor"] for r in report["results"]]
    assert anchors == ["bwb-n%02d" % n for n in range(5)]
    assert all(r["status"] == "pass" for r in report["results"])


def test_run_suite_rejects_unknown():
    with pytest.raises(ValueError):
        run_suite("nope")
    with pytest.raises(ValueError):
        run_suite("metric", q_spec=Fraction(2))


def test_q_spec_numeric_mode():
    report = run_suite("metric", q_spec=Fraction(9, 4))
    assert all(r["status"] == "pass" for r in report["results"])


def test_main_exit_codes(capsys, monkeypatch, tmp_path):
    assert main(["d(a)"]) == 0
    assert capsys.readouterr().out == "a*e0 + q*b*ep\n"

    assert main(["d("]) == 2
    assert "position 2" in capsys.readouterr().err

    assert main(["dirac(b0)"]) == 2
    capsys.readouterr()

    with pytest.raises(SystemExit) as err:
        main(["--suite", "nope"])
    assert err.value.code == 2
    capsys.readouterr()

    with pytest.raises(SystemExit) as err:
        main(["--suite", "metric", "--q-spec", "2"])
    assert err.value.code == 2
    capsys.readouterr()

    json_path = tmp_path / "report.json"
    assert main(["--suite", "metric", "--json", str(json_path), "--quiet"]) == 0
    out = capsys.readouterr().out
    assert "summary: 3/3 passed" in out
    assert "metric-invariance" not in out  # quiet hides pass lines
    report = json.loads(json_path.read_text())
    assert sorted(report) == ["engine_version", "results", "seed", "suite"]
    assert all(r["millis"] == 0 for r in report["results"])

    # a failing check turns into exit code 1
    import qsphere.cli as cli_mod

    monkeypatch.setitem(
        cli_mod._SUITE_BUILDERS, "metric",
        lambda o: [("always-fails", lambda: "witnessed")],
    )
    assert main(["--suite", "metric"]) == 1
    out = capsys.readouterr().out
    assert "always-fails: fail  [witnessed]" in out
