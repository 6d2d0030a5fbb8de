"""Element grammar, spec-file round trips, and the subcommand surface."""

from __future__ import annotations

import json

import pytest

from dpdsurf.cli import parse_element, parse_poly, render_element, run
from dpdsurf.dpdring import GradedElement
from dpdsurf.errors import ParseError
from dpdsurf.exactmath import Poly, Rat, RatFunc


class TestElementGrammar:
    def test_spec_examples(self):
        assert parse_element("(t^2+t)*u^-2") == GradedElement.monomial(
            -2, Poly((0, 1, 1))
        )
        assert parse_element("t") == GradedElement.monomial(0, Poly.t())
        got = parse_element("3/2*t^2*u^1 - u^1")
        assert got == GradedElement.monomial(1, Poly((-1, 0, Rat(3, 2))))

    def test_whitespace_insensitive(self):
        assert parse_element(" ( t^2 + t ) * u ^ -2 ") == parse_element(
            "(t^2+t)*u^-2"
        )

    def test_denominators(self):
        got = parse_element("t^3/(t^2+1)*u^2")
        assert got == GradedElement.monomial(
            2, RatFunc(Poly.monomial(3), Poly((1, 0, 1)))
        )

    def test_bare_u_and_constants(self):
        assert parse_element("u") == GradedElement.monomial(1)
        assert parse_element("1") == GradedElement.one()
        assert parse_element("-2/3") == GradedElement.monomial(
            0, Poly((Rat(-2, 3),))
        )

    @pytest.mark.parametrize(
        "bad", ["", "t^", "u^", "(t", "t)", "x", "1/0", "t^-1", "* t", "t +"]
    )
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_element(bad)

    def test_render_parse_roundtrip(self, rng):
        from conftest import random_element

        for _ in range(120):
            x = random_element(rng)
            assert parse_element(render_element(x)) == x
        assert render_element(GradedElement.zero()) == "0"
        assert parse_element("0").is_zero()

    def test_parse_poly(self):
        assert parse_poly("t^2+t") == Poly((0, 1, 1))
        assert parse_poly("3") == Poly((3,))
        with pytest.raises(ParseError):
            parse_poly("u^2")
        with pytest.raises(ParseError):
            parse_poly("1/(t+1)")


@pytest.fixture
def spec_file(tmp_path):
    def write(name, params=()):
        from dpdsurf.catalog import catalog_surface
        from dpdsurf.dpdring import spec_to_obj

        path = tmp_path / f"{name}.spec"
        entry = catalog_surface(name, params)
        path.write_text(json.dumps(spec_to_obj(entry.spec)), encoding="utf-8")
        return str(path)

    return write


class TestRun:
    def test_classify_json_fields(self, spec_file, capsys):
        path = spec_file("danielewski", (2,))
        assert run(["classify", path, "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["ml"] == "polynomial_ring"
        assert doc["presentation"]["k"] == 2
        assert doc["presentation"]["P"] == "t^2+t"
        assert doc["grading"] == "hyperbolic"

    def test_json_roundtrip_identical(self, spec_file, capsys, tmp_path):
        path = spec_file("conic_complement")
        assert run(["classify", path, "--json"]) == 0
        first = capsys.readouterr().out
        doc = json.loads(first)
        echo = tmp_path / "echo.spec"
        echo.write_text(json.dumps(doc["input"]), encoding="utf-8")
        assert run(["classify", str(echo), "--json"]) == 0
        assert capsys.readouterr().out == first

    def test_verify(self, spec_file, capsys):
        path = spec_file("quadric")
        assert run(["verify", path, "--window", "8"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "oracle agrees" in out

    def test_apply_iterates(self, spec_file, capsys):
        path = spec_file("bertin", (2, 2))
        code = run(
            ["apply", path, "--degree", "3", "--element", "t", "--times", "9"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "step 1" in out and "reached zero after 3 steps" in out

    def test_kernel(self, spec_file, capsys):
        path = spec_file("danielewski", (3,))
        assert run(["kernel", path]) == 0
        assert "v = u^1" in capsys.readouterr().out

    def test_equation_both_ways(self, spec_file, capsys):
        path = spec_file("bertin", (2, 3))
        assert run(["equation", path]) == 0
        assert "u^3 v = s^3+1" in capsys.readouterr().out
        assert run(["equation", "--poly", "t^2+t", "--degree", "2", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["hyperbolic"]["d_minus"] == [["-1", "-1/2"], ["0", "-1/2"]]

    def test_ml_mm_recognize(self, spec_file, capsys):
        quadric = spec_file("quadric")
        assert run(["ml", quadric]) == 0
        assert capsys.readouterr().out.strip() == "trivial"
        assert run(["mm", quadric]) == 0
        assert capsys.readouterr().out.strip() == "2"
        assert run(["recognize", quadric]) == 0
        assert capsys.readouterr().out.strip() == "quadric"

    def test_fibers_at(self, spec_file, capsys):
        path = spec_file("quadric")
        assert run(["fibers", path, "--at", "1"]) == 0
        out = capsys.readouterr().out
        assert "degenerate" in out and "delta = 1" in out

    def test_family(self, capsys):
        code = run(
            ["family", "--poly", "t^2+t", "--degree", "1", "--alpha", "2"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "verified" in out and "membership: yes" in out

    def test_catalog_listing_and_emission(self, capsys):
        assert run(["catalog"]) == 0
        out = capsys.readouterr().out
        assert "danielewski" in out and "toric" in out
        assert run(["catalog", "dihedral", "3"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["hyperbolic"]["d_minus"] == [["0", "-3"]]

    def test_domain_error_exit_one(self, tmp_path, capsys):
        missing = str(tmp_path / "none.spec")
        assert run(["classify", missing]) == 1
        err = capsys.readouterr().err
        assert "InvalidSpecFile" in err

    def test_inadmissible_degree_exit_one(self, spec_file, capsys):
        path = spec_file("danielewski", (2,))
        assert run(["apply", path, "--degree", "1", "--element", "t"]) == 1
        assert "InadmissibleDegree" in capsys.readouterr().err

    def test_catalog_errors(self, capsys):
        assert run(["catalog", "nope"]) == 1
        assert "UnknownName" in capsys.readouterr().err
        assert run(["catalog", "bertin", "1", "2"]) == 1
        assert "BadParams" in capsys.readouterr().err

    def test_usage_error_exit_two(self, capsys):
        assert run(["no-such-command"]) == 2
        assert run([]) == 2

    def test_elliptic_lnd_listing(self, tmp_path, capsys):
        path = tmp_path / "toric.spec"
        path.write_text('{"elliptic": {"d": 5, "e_prime": 2}}', encoding="utf-8")
        assert run(["lnd", str(path), "--degree", "0"]) == 0
        assert "X^2 d/dY" in capsys.readouterr().out
        assert run(["classify", str(path)]) == 0
        out = capsys.readouterr().out
        assert "elliptic" in out and "mm: 5" in out
