import json
import math

import pytest

from defectwalk import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_phi_decimal_and_fraction():
    assert cli.parse_phi("0.5") == 0.5
    assert cli.parse_phi("1/3") == pytest.approx(1 / 3)
    with pytest.raises(cli.DomainError):
        cli.parse_phi("abc")
    with pytest.raises(cli.DomainError):
        cli.parse_phi("1/0")


def test_simulate_header_and_mass(capsys):
    code, out, _ = run(capsys, "simulate", "--phi", "0.5", "--steps", "4")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,prob_L,prob_R,prob"
    rows = [line.split(",") for line in lines[1:]]
    assert [r[0] for r in rows] == [str(x) for x in range(-4, 5)]
    assert sum(float(r[3]) for r in rows) == pytest.approx(1.0, abs=1e-12)


def test_simulate_deterministic(capsys):
    a = run(capsys, "simulate", "--phi", "1/3", "--steps", "30")
    b = run(capsys, "simulate", "--phi", "1/3", "--steps", "30")
    assert a == b


def test_time_average_output(capsys):
    code, out, _ = run(
        capsys, "time-average", "--phi", "0.5", "--T", "200", "--xmax", "2"
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,mu_bar_T"
    assert len(lines) == 6
    origin = float(lines[3].split(",")[1])
    assert origin == pytest.approx(8 / 25, abs=5e-3)


def test_limit_matches_closed_form(capsys):
    code, out, _ = run(capsys, "limit", "--phi", "0.5", "--xmax", "1")
    assert code == 0
    rows = dict(
        (int(line.split(",")[0]), float(line.split(",")[1]))
        for line in out.strip().split("\n")[1:]
    )
    assert rows[0] == pytest.approx(8 / 25, abs=1e-14)
    assert rows[1] == pytest.approx(24 / 125, abs=1e-14)
    assert rows[-1] == rows[1]


def test_compare_reports_max_error(capsys):
    code, out, _ = run(
        capsys, "compare", "--phi", "0.5", "--T", "400", "--xmax", "3"
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,mu_bar_T,mu_inf,abs_err"
    assert lines[-1].startswith("max_abs_err=")
    assert float(lines[-1].split("=")[1]) < 0.05


def test_spectrum_json(capsys):
    code, out, _ = run(capsys, "spectrum", "--phi", "0.5")
    assert code == 0
    payload = json.loads(out)
    assert len(payload) == 4
    for entry in payload:
        assert sorted(entry) == [
            "branch",
            "lambda_sq",
            "residue_norm",
            "residue_prefactor",
            "theta_s",
        ]
        assert entry["lambda_sq"] == pytest.approx(0.2, abs=1e-12)


def test_series_rstar_rows(capsys):
    code, out, _ = run(capsys, "series", "--what", "rstar", "--order", "7")
    assert code == 0
    rows = [line.split(",") for line in out.strip().split("\n")[1:]]
    table = {int(n): (int(p), int(q)) for n, p, q in rows}
    assert table[1] == (-1, 1)
    assert table[2] == (0, 1)
    assert table[3] == (1, 2)
    assert table[7] == (-1, 8)


def test_series_sqrt1z4_rows(capsys):
    code, out, _ = run(capsys, "series", "--what", "sqrt1z4", "--order", "8")
    rows = [line.split(",") for line in out.strip().split("\n")[1:]]
    table = {int(n): (int(p), int(q)) for n, p, q in rows}
    assert table[0] == (1, 1)
    assert table[4] == (1, 2)
    assert table[8] == (-1, 8)


def test_stationary_output(capsys):
    code, out, _ = run(
        capsys, "stationary", "--phi", "0.5", "--branch", "plus", "--xmax", "1"
    )
    assert code == 0
    rows = dict(
        (int(line.split(",")[0]), float(line.split(",")[1]))
        for line in out.strip().split("\n")[1:]
    )
    assert rows[0] == 1.0
    assert rows[1] == pytest.approx(3 / 5, abs=1e-14)


def test_explicit_state_flags(capsys):
    s = 1 / math.sqrt(2)
    code, out, _ = run(
        capsys,
        "limit",
        "--phi", "0.5",
        "--alpha", f"{s},0",
        "--beta", f"0,{s}",
        "--xmax", "0",
    )
    assert code == 0
    assert float(out.strip().split("\n")[1].split(",")[1]) == pytest.approx(
        8 / 25, abs=1e-14
    )


def test_usage_error_on_bad_phi(capsys):
    code, _, err = run(capsys, "limit", "--phi", "x", "--xmax", "1")
    assert code == 2
    assert "error:" in err


def test_usage_error_on_unnormalized_state(capsys):
    code, _, err = run(
        capsys,
        "limit",
        "--phi", "0.5",
        "--alpha", "1,0",
        "--beta", "1,0",
        "--xmax", "0",
    )
    assert code == 2
    assert "normalize" in err


def test_normalize_flag_rescales(capsys):
    code, out, _ = run(
        capsys,
        "limit",
        "--phi", "0.5",
        "--alpha", "1,0",
        "--beta", "0,1",
        "--normalize",
        "--xmax", "0",
    )
    assert code == 0
    assert float(out.strip().split("\n")[1].split(",")[1]) == pytest.approx(
        8 / 25, abs=1e-14
    )


def test_out_file(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    code, out, _ = run(
        capsys, "limit", "--phi", "0.5", "--xmax", "1", "--out", str(target)
    )
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("x,mu_inf\n")


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    lines = [line for line in out.strip().split("\n") if line.startswith("[")]
    assert len(lines) == 9
    assert all(line.startswith("[ok") for line in lines)
    assert "all checks passed" in out
