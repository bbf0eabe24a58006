"""Command-line interface: exit codes, exact output forms, JSON payloads."""

import json

import pytest

from pdc.cli import main
from pdc.laurent import laurent_expand
from pdc.ratfun import parse_rf
from pdc.series import (SeriesRecord, builtin_db, local_curve_series,
                        make_key, record_from_obj, records_to_json)


@pytest.fixture(autouse=True)
def clean_db_env(monkeypatch):
    monkeypatch.delenv("PDC_DB", raising=False)


class TestCheckCommands:
    def test_fe_check_exact_output(self, capsys):
        assert main(["fe-check", "--series", "tau5(1)", "--degree", "1"]) == 0
        assert capsys.readouterr().out == "PASS sign=-1 d_beta=4\n"

    def test_fe_check_even_insertion(self, capsys):
        assert main(["fe-check", "--series", "ch4(p)", "--degree", "1"]) == 0
        assert capsys.readouterr().out == "PASS sign=1 d_beta=4\n"

    def test_virasoro_check_exact_output(self, capsys):
        assert main(["virasoro-check", "--k", "1", "--D", "ch3(p)",
                     "--degree", "1"]) == 0
        assert capsys.readouterr().out == "PASS: sum = 0\n"

    def test_virasoro_check_bad_index(self, capsys):
        assert main(["virasoro-check", "--k", "-2", "--D", "ch3(p)",
                     "--degree", "1"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_bracket_check_rejects_low_indices(self, capsys):
        assert main(["bracket-check", "--k", "5", "--m", "-3"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_bracket_check_passes(self, capsys):
        assert main(["bracket-check", "--k", "0", "--m", "1",
                     "--bound", "4"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("PASS")

    def test_pole_check_pass_and_fail(self, capsys):
        assert main(["pole-check", "--series", "ch7(1)",
                     "--degree", "1"]) == 0
        assert capsys.readouterr().out == (
            "PASS poles confined with divisor bound 1\n")
        # the degree-2 series has poles at q = 1, beyond divisor bound 1
        assert main(["pole-check", "--series", "ch11(1)", "--degree", "2",
                     "--div", "1"]) == 1
        assert capsys.readouterr().out.startswith("FAIL")
        assert main(["pole-check", "--series", "ch7(1)", "--degree", "1",
                     "--div", "0"]) == 2


class TestErrors:
    def test_descendent_syntax_error_position(self, capsys):
        assert main(["fe-check", "--series", "ch3(p", "--degree", "1"]) == 2
        err = capsys.readouterr().err
        assert "descendent syntax error" in err and "(position 5)" in err

    def test_unknown_series_key(self, capsys):
        assert main(["fe-check", "--series", "ch6(H)", "--degree", "1"]) == 2
        assert "no stored series for P3:1:ch6(H)" in capsys.readouterr().err

    def test_missing_subcommand_is_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2

    def test_eval_bad_degree(self, capsys):
        assert main(["eval", "local-curve", "--d", "0"]) == 2
        assert "error:" in capsys.readouterr().err


class TestEval:
    def test_local_curve_text(self, capsys):
        assert main(["eval", "local-curve", "--d", "1"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("LocalCurve:1:1 = ")
        assert "(q)/(1 + 2*q + q^2)" in out or "q/(1+q)^2" in out.replace(
            " ", "")

    def test_local_curve_json_round_trip(self, capsys):
        assert main(["--json", "eval", "local-curve", "--d", "2"]) == 0
        payload = json.loads(capsys.readouterr().out)
        record = record_from_obj(payload)
        assert record.key == make_key("LocalCurve", 2, "1")
        assert record.value == local_curve_series(2)
        assert record.provenance == "evaluator"

    def test_cap_key_includes_boundary(self, capsys):
        assert main(["eval", "cap", "--d", "1"]) == 0
        assert capsys.readouterr().out.startswith("Cap:1:ch3(p):(1) = ")


class TestExpand:
    def test_q_expansion_matches_library(self, capsys):
        assert main(["expand", "--series", "ch4(p)", "--degree", "1",
                     "--order", "4"]) == 0
        out = capsys.readouterr().out.strip()
        stored = builtin_db().lookup("P3", 1, "ch4(p)")
        assert out == str(laurent_expand(stored, 4))

    def test_u_expansion_json(self, capsys):
        assert main(["--json", "expand", "--series", "ch2(p)*ch2(p)",
                     "--degree", "1", "--var", "u", "--order", "4"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["var"] == "u" and payload["field"] == "Qi"
        coeffs = {n: c for n, c in payload["coeffs"]}
        assert coeffs[2] == ["1", "0"] or coeffs[2] == "1"

    def test_u_expansion_rejects_parameter_values(self, capsys):
        assert main(["expand", "--series", "ch5(p0)", "--degree", "1",
                     "--var", "u", "--order", "2"]) == 2
        assert "rational coefficients" in capsys.readouterr().err

    def test_divisor_reduction_through_cli(self, capsys):
        # ch2(H) strips off with a factor equal to the degree
        assert main(["expand", "--series", "ch2(H)*ch7(1)", "--degree", "1",
                     "--order", "3"]) == 0
        out = capsys.readouterr().out.strip()
        stored = builtin_db().lookup("P3", 1, "ch7(1)")
        assert out == str(laurent_expand(stored, 3))


class TestGwExpand:
    def test_plain(self, capsys):
        assert main(["gw-expand", "--series", "ch2(p)*ch2(p)",
                     "--degree", "1", "--order", "6"]) == 0
        out = capsys.readouterr().out
        assert "u^2" in out and "O(u^7)" in out

    def test_show_bar_text(self, capsys):
        assert main(["gw-expand", "--series", "ch2(p)*ch2(p)", "--degree",
                     "1", "--order", "4", "--show-bar"]) == 0
        out = capsys.readouterr().out
        assert "symbolic expansion of the insertion product:" in out
        assert "+ K{(1)->(1)}*K{(1)->(1)}" in out

    def test_show_bar_json(self, capsys):
        assert main(["--json", "gw-expand", "--series", "ch4(p)",
                     "--degree", "1", "--order", "4", "--show-bar"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["expansion"]["alpha"] == [3]
        targets = [t["targets"] for t in payload["expansion"]["terms"]]
        assert [[1]] in targets and [[3]] in targets

    def test_show_bar_needs_point_insertions(self, capsys):
        assert main(["gw-expand", "--series", "ch7(1)", "--degree", "1",
                     "--order", "4", "--show-bar"]) == 2
        assert "point-class" in capsys.readouterr().err


class TestDb:
    def test_list_lines(self, capsys):
        assert main(["db", "list"]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert len(lines) == 8
        assert "P3:1:ch4(p)  [exact]" in lines
        assert "P3:2:ch11(1)  [conjectural]" in lines

    def test_show(self, capsys):
        assert main(["db", "show", "P3:1:ch4(p)"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("P3:1:ch4(p)  [exact]\n")

    def test_show_unknown_and_malformed(self, capsys):
        assert main(["db", "show", "P3:9:ch4(p)"]) == 2
        assert "no stored series" in capsys.readouterr().err
        assert main(["db", "show", "P3:1"]) == 2
        capsys.readouterr()

    def test_export_import_round_trip(self, tmp_path, capsys):
        path = tmp_path / "out.json"
        assert main(["db", "export", str(path)]) == 0
        capsys.readouterr()
        assert path.read_text() == records_to_json(builtin_db())
        assert main(["db", "import", str(path)]) == 0
        assert "0 new record(s); merged database holds 8" in (
            capsys.readouterr().out)

    def test_import_missing_file(self, tmp_path, capsys):
        assert main(["db", "import", str(tmp_path / "nope.json")]) == 2
        assert "cannot import" in capsys.readouterr().err


class TestDbEnvironment:
    def extra_file(self, tmp_path):
        rec = SeriesRecord(make_key("P3", 1, "ch6(H)"),
                           parse_rf("q/(1+q)"), "exact")
        path = tmp_path / "extra.json"
        path.write_text(records_to_json([rec]))
        return path

    def test_env_db_enables_new_reductions(self, tmp_path, monkeypatch,
                                           capsys):
        assert main(["expand", "--series", "ch6(H)", "--degree", "1",
                     "--order", "3"]) == 2
        capsys.readouterr()
        monkeypatch.setenv("PDC_DB", str(self.extra_file(tmp_path)))
        assert main(["expand", "--series", "ch6(H)", "--degree", "1",
                     "--order", "3"]) == 0
        out = capsys.readouterr().out.strip()
        assert out == str(laurent_expand(parse_rf("q/(1+q)"), 3))
        assert main(["db", "list"]) == 0
        assert len(capsys.readouterr().out.strip().split("\n")) == 9

    def test_env_db_missing_file(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("PDC_DB", str(tmp_path / "absent.json"))
        assert main(["db", "list"]) == 2
        assert "cannot load PDC_DB file" in capsys.readouterr().err


class TestCheckAll:
    def test_all_pass(self, capsys):
        assert main(["check-all"]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[-1] == f"{len(lines) - 1}/{len(lines) - 1} checks passed"
        assert all(line.startswith("PASS ") for line in lines[:-1])
