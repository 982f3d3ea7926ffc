"""Command-line behavior: exit codes, formats, and byte-level determinism."""

import json

from bmycover.cli import main
from bmycover.groups import canonical_f_set, format_f_set
from bmycover.serialize import canonical_dumps


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestLimit:
    def test_plain_twelve(self, capsys):
        code, out, _ = run_cli(capsys, "limit", "--q", "3", "--n", "3")
        assert code == 0
        assert out == "12\n"

    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "limit", "--q", "5", "--n", "4", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["limit"]["num"] == "12"
        assert payload["limit"]["den"] == "1"


class TestInvariants:
    def test_inadmissible_prime_is_parameter_error(self, capsys):
        code, out, _ = run_cli(
            capsys, "invariants", "--q", "3", "--n", "3", "--p", "7", "--format", "json"
        )
        assert code == 2
        payload = json.loads(out)
        assert payload["error"]["type"] == "InadmissibleP"

    def test_table_output(self, capsys):
        code, out, _ = run_cli(capsys, "invariants", "--q", "3", "--n", "3", "--p", "5")
        assert code == 0
        assert "19098/2431" in out
        assert "bigness margin" in out

    def test_json_fields(self, capsys):
        code, out, _ = run_cli(
            capsys, "invariants", "--q", "3", "--n", "3", "--p", "5", "--format", "json"
        )
        payload = json.loads(out)
        assert payload["canonical_square"] == "57294"
        assert payload["euler_characteristic"] == "7293"
        assert payload["ratio"]["num"] == "19098"
        assert payload["exceeds_nine"] is False
        assert payload["certificates"] == {
            "adjunction_parity": True,
            "cover_condition": True,
            "independence": True,
        }


class TestSymbolic:
    def test_json_coefficients_ascending(self, capsys):
        code, out, _ = run_cli(capsys, "symbolic", "--q", "3", "--n", "3", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["ratio"]["num"] == ["22704", "1053", "1053", "24"]
        assert payload["ratio"]["den"] == ["3023", "134", "134", "2"]
        assert payload["limit"]["num"] == "12"
        assert payload["canonical_square"] == ["22704", "1053", "1053", "24"]


class TestSearch:
    def test_csv_rows(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "search", "--q", "3", "--n", "3", "--p-min", "2", "--p-max", "30",
            "--format", "csv",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("p,canonical_square")
        rows = [line.split(",") for line in lines[1:]]
        assert [int(r[0]) for r in rows] == [2, 5, 11, 17, 23, 29]
        assert all(int(r[0]) % 3 == 2 for r in rows)
        last = rows[-1]
        assert last[3] == "169350/18709"
        assert last[4] == "true"

    def test_json_deterministic_across_thread_counts(self, capsys, monkeypatch):
        args = ("search", "--q", "3", "--n", "3", "--p-min", "2", "--p-max", "200",
                "--format", "json")
        monkeypatch.setenv("BMYCOVER_THREADS", "1")
        code1, out1, _ = run_cli(capsys, *args)
        monkeypatch.setenv("BMYCOVER_THREADS", "8")
        code2, out2, _ = run_cli(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2


class TestPlane:
    def test_closed_form_stats(self, capsys):
        code, out, _ = run_cli(capsys, "plane", "--p", "11", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["points"] == 133
        assert payload["verified_exhaustively"] is False

    def test_exhaustive_verification(self, capsys):
        code, out, _ = run_cli(
            capsys, "plane", "--p", "7", "--verify-incidence", "--format", "json"
        )
        payload = json.loads(out)
        assert payload["points_per_line"] == 8
        assert payload["verified_exhaustively"] is True

    def test_cap_respected(self, capsys):
        code, out, err = run_cli(capsys, "plane", "--p", "103", "--verify-incidence")
        assert code == 2
        assert "ExhaustiveCapExceeded" in err

    def test_composite_rejected(self, capsys):
        code, _, err = run_cli(capsys, "plane", "--p", "9")
        assert code == 2
        assert "NotPrime" in err


class TestVerify:
    def test_passes_and_roundtrips(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--q", "3", "--n", "3", "--p", "5", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"] is True
        names = [c["name"] for c in payload["checks"]]
        assert "cover_condition" in names and "dual_path_oracle" in names
        assert out == canonical_dumps(payload) + "\n"

    def test_default_characteristic(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--q", "5", "--n", "3", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        admissible = next(c for c in payload["checks"] if c["name"] == "admissible_characteristic")
        assert admissible["details"]["p"] == 19

    def test_serial_and_parallel_bytes_identical(self, capsys, monkeypatch):
        args = ("verify", "--q", "3", "--n", "3", "--p", "5", "--format", "json")
        monkeypatch.setenv("BMYCOVER_THREADS", "1")
        code1, out1, _ = run_cli(capsys, *args)
        monkeypatch.setenv("BMYCOVER_THREADS", "8")
        code2, out2, _ = run_cli(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2


class TestFSetOverride:
    def test_file_accepted(self, capsys, tmp_path):
        path = tmp_path / "f.txt"
        path.write_text(format_f_set(canonical_f_set(3, 3)), encoding="utf-8")
        code, out, _ = run_cli(
            capsys, "limit", "--q", "3", "--n", "3", "--f-set", str(path)
        )
        assert code == 0
        assert out == "12\n"

    def test_invalid_file_rejected(self, capsys, tmp_path):
        path = tmp_path / "f.txt"
        path.write_text("0,0,0\n1,0,0\n", encoding="utf-8")
        code, out, _ = run_cli(
            capsys, "limit", "--q", "3", "--n", "3", "--f-set", str(path), "--format", "json"
        )
        assert code == 2
        assert json.loads(out)["error"]["type"] == "BadFSet"


class TestParsing:
    def test_missing_arguments(self, capsys):
        code, _, err = run_cli(capsys, "limit", "--q", "3")
        assert code == 2

    def test_unknown_command(self, capsys):
        code, _, _ = run_cli(capsys, "frobnicate")
        assert code == 2

    def test_help_exits_zero(self, capsys):
        code, out, _ = run_cli(capsys, "--help")
        assert code == 0
        assert "invariants" in out
