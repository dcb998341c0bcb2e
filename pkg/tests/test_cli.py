import json

import numpy as np
import pytest

import cubefourier as cf
from cubefourier.cli import main, parse_family
from cubefourier.errors import InputError


def run(*args):
    return main(list(args))


def test_family_registry_spot_checks():
    assert parse_family("majority:3") == cf.majority(3)
    assert parse_family("dictator:4,2") == cf.dictator(4, 2)
    assert parse_family("and:2") == cf.and_fn(2)
    assert parse_family("or:3") == cf.or_fn(3)
    assert parse_family("mux3") == cf.mux3()
    assert parse_family("tribes:2,2") == cf.tribes(2, 2)
    assert parse_family("random:4,9") == cf.random_function(4, 9)
    assert parse_family("clique:4,3") == cf.clique_indicator(cf.GraphPropertySpec(4, 3))


def test_parity_mask_is_hexadecimal():
    assert parse_family("parity:4,b") == cf.parity(4, 0xB)
    assert parse_family("parity:5,10") == cf.parity(5, 16)


def test_unknown_family_is_an_input_error():
    with pytest.raises(InputError):
        parse_family("xor:3")
    with pytest.raises(InputError):
        parse_family("majority")


def test_analyze_text_output(capsys):
    assert run("analyze", "--family", "majority:3") == 0
    out = capsys.readouterr().out
    assert "spectral entropy" in out
    assert "2 bits" in out


def test_analyze_json_fields(capsys):
    assert run("analyze", "--family", "mux3", "--format", "json") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == 1
    assert payload["n"] == 3
    assert payload["degree"] == 2
    assert payload["violations"] == []


def test_analyze_accepts_exact_bias(capsys):
    assert run("analyze", "--family", "dictator:1,1", "--pt", "1", "--pm", "2",
               "--format", "json") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["p"] == 0.25
    assert payload["entropy"] == pytest.approx(0.8112781244591329, abs=1e-12)


def test_analyze_rejects_conflicting_bias(capsys):
    assert run("analyze", "--family", "mux3", "--p", "0.3", "--pt", "1", "--pm", "2") == 1


def test_bits_source(capsys):
    assert run("analyze", "--bits", "00010110", "--format", "json") == 0
    assert json.loads(capsys.readouterr().out)["n"] == 3


def test_bad_bits_length(capsys):
    assert run("analyze", "--bits", "000") == 1


def test_file_source(tmp_path, capsys):
    path = tmp_path / "f.tt"
    cf.save_truth_table(cf.majority(3), path)
    assert run("analyze", "--file", str(path)) == 0


def test_reduce_report_contract(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = run(
        "reduce", "--family", "dictator:1,1", "--t", "1", "--m", "2",
        "--format", "json", "--output", str(out),
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert set(payload) == {"p", "t", "m", "red0_max_gap", "red_fk", "entropy"}
    assert payload["red_fk"]["holds"] is True
    assert payload["red0_max_gap"] < 1e-12


def test_reduce_accepts_pt_pm_aliases(capsys):
    assert run("reduce", "--family", "dictator:1,1", "--pt", "1", "--pm", "2",
               "--format", "json") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["t"] == 1 and payload["m"] == 2


def test_reduce_needs_exact_bias(capsys):
    assert run("reduce", "--family", "dictator:1,1") == 1
    assert "exact bias" in capsys.readouterr().err


def test_tensor_virtual_vs_explicit(capsys):
    assert run("tensor", "--family", "majority:3", "--power", "2",
               "--format", "json") == 0
    virtual = json.loads(capsys.readouterr().out)
    assert run("tensor", "--family", "majority:3", "--power", "2", "--explicit",
               "--format", "json") == 0
    explicit = json.loads(capsys.readouterr().out)
    assert virtual["entropy"] == pytest.approx(explicit["entropy"], abs=1e-10)
    assert virtual["influence"] == pytest.approx(explicit["influence"], abs=1e-10)


def test_tensor_product_of_two_sources(capsys):
    assert run("tensor", "--family", "majority:3", "--family2", "dictator:2,1",
               "--format", "json") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["n"] == 5


def test_tensor_without_second_operand_errors(capsys):
    assert run("tensor", "--family", "majority:3") == 1


def test_sweep_writes_csv_and_summary(tmp_path, capsys):
    path = tmp_path / "sweep.csv"
    assert run("sweep", "--n", "3", "--csv", str(path), "--format", "json") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["count"] == 256
    assert payload["violations"] == []
    assert payload["max_ratio"] == pytest.approx(2.955889582251599, abs=1e-9)
    lines = path.read_text().splitlines()
    assert len(lines) == 257
    assert lines[0].startswith("function_hex,")


def test_sweep_sampled_mode(capsys):
    assert run("sweep", "--n", "5", "--sample", "32", "--seed", "1",
               "--format", "json") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["count"] == 32
    assert payload["exhaustive"] is False


def test_clique_json(capsys):
    assert run("clique", "--nv", "5", "--r", "3", "--format", "json") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["n_edges"] == 10
    assert payload["union_bound_holds"] is True
    assert payload["equation_residual"] < 1e-12


def test_spectrum_export_load_roundtrip(tmp_path, capsys):
    path = tmp_path / "maj.spec"
    assert run("spectrum", "--family", "majority:5", "--p", "0.3",
               "--export", str(path)) == 0
    capsys.readouterr()
    assert run("spectrum", "--load", str(path), "--format", "json") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["n"] == 5
    assert payload["p"] == pytest.approx(0.3)
    loaded = cf.load_spectrum_binary(path)
    direct = cf.transform(cf.majority(5), 0.3)
    assert np.array_equal(loaded.coeffs, direct.coeffs)


def test_spectrum_json_export(tmp_path, capsys):
    path = tmp_path / "m.json"
    assert run("spectrum", "--family", "mux3", "--export-json", str(path)) == 0
    spec = cf.load_spectrum_json(path)
    assert spec.n == 3


def test_missing_file_is_exit_one(capsys):
    assert run("analyze", "--file", "/nonexistent/table.tt") == 1
    assert "error" in capsys.readouterr().err


def test_argparse_syntax_errors_are_exit_one(capsys):
    assert run("analyze") == 1
    assert run("frobnicate") == 1


def test_command_registry_is_complete():
    from cubefourier.cli import COMMANDS

    assert [c.name for c in COMMANDS] == [
        "analyze", "reduce", "tensor", "sweep", "clique", "spectrum",
    ]


def test_proven_violation_maps_to_exit_two(monkeypatch, capsys):
    """Exit code 2 is reserved for a failed proven inequality; fabricate one."""
    import cubefourier.cli as cli_mod

    def fake_report(f, p):
        return {
            "p": 0.25, "t": 1, "m": 2, "red0_max_gap": 0.0,
            "red_fk": {"lhs": 5.0, "rhs": 3.0, "holds": False},
            "entropy": {"reduced": 2.0, "original": 1.0, "holds": True},
        }

    monkeypatch.setattr(cli_mod, "reduction_report", fake_report)
    assert run("reduce", "--family", "dictator:1,1", "--t", "1", "--m", "2") == 2


def test_version_flag_exits_zero():
    with pytest.raises(SystemExit) as exc:
        run("--version")
    assert exc.value.code == 0


def test_threads_and_max_n_flags(capsys):
    assert run("analyze", "--family", "majority:3", "--threads", "2",
               "--max-n", "20") == 0
