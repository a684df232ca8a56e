"""CLI behavior: subcommands, exit codes, JSON determinism, cache identity."""

import json

import pytest

from hyparr.cli import (EXIT_OK, EXIT_PARSE_ERROR, EXIT_REFUSED,
                        EXIT_VERIFICATION_FAILED, main, resolve_spec)
from hyparr.errors import ParseError


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestResolveSpec:
    def test_catalog_names(self):
        for name in ("D4", "G31", "G(3,1,3)", "A(3)", "B3"):
            _, arr = resolve_spec(name)
            assert len(arr) > 0

    def test_product_expression(self):
        name, arr = resolve_spec("product(B2, G(1,1,3))")
        assert len(arr) == 7 and arr.ambient == 5
        assert name == "product(B2, G(1,1,3))"

    def test_nested_product(self):
        _, arr = resolve_spec("product(product(B2, B2), A(2))")
        assert arr.ambient == 7

    def test_file_spec(self, tmp_path):
        path = tmp_path / "tri.arr"
        path.write_text("ambient 2 field 1\na\nb\na - b\n")
        _, arr = resolve_spec(str(path))
        assert len(arr) == 3

    def test_unknown_rejected_before_compute(self):
        with pytest.raises(ParseError):
            resolve_spec("E8")


class TestCommands:
    def test_build(self, capsys):
        code, out, _ = run_cli(capsys, "build", "D4")
        assert code == EXIT_OK and "12 hyperplanes" in out

    def test_lattice(self, capsys):
        code, out, _ = run_cli(capsys, "lattice", "D4")
        assert code == EXIT_OK and "[1, 12, 34, 24, 1]" in out

    def test_modular_rank2_d4(self, capsys):
        code, out, _ = run_cli(capsys, "modular", "D4", "--rank", "2")
        assert code == EXIT_OK and "0 of 34" in out

    def test_supersolvable_true(self, capsys):
        code, out, _ = run_cli(capsys, "supersolvable", "G(3,1,3)")
        assert code == EXIT_OK and "supersolvable: True" in out

    def test_supersolvable_false(self, capsys):
        code, out, _ = run_cli(capsys, "supersolvable", "D4")
        assert code == EXIT_OK and "refuted" in out

    def test_poincare_braid(self, capsys):
        code, out, _ = run_cli(capsys, "--json", "poincare", "A(3)")
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["poincare"]["coefficients"] == [1, 6, 11, 6]
        assert report["poincare"]["exponents"] == [1, 2, 3]

    def test_decompose(self, capsys):
        code, out, _ = run_cli(capsys, "decompose", "product(B2, G(1,1,3))")
        assert code == EXIT_OK and "irreducible factors: 2" in out

    def test_verify_paper_scope(self, capsys):
        code, out, _ = run_cli(capsys, "verify-paper", "D4")
        assert code == EXIT_OK
        assert "D4.sum1" in out and "D4.sum2" in out and "rank2-empty" in out
        assert "FAIL" not in out

    def test_verify_paper_witnesses(self, capsys):
        code, out, _ = run_cli(capsys, "--json", "verify-paper", "witnesses")
        assert code == EXIT_OK
        report = json.loads(out)
        assert len(report["claims"]) == 15
        assert report["passed"] is True


class TestExitCodes:
    def test_unknown_spec_is_parse_error(self, capsys):
        code, _, err = run_cli(capsys, "build", "E8")
        assert code == EXIT_PARSE_ERROR and "parse error" in err

    def test_bad_file_is_parse_error(self, capsys, tmp_path):
        path = tmp_path / "bad.arr"
        path.write_text("ambient 2 field 1\na + 1\n")
        code, _, err = run_cli(capsys, "build", str(path))
        assert code == EXIT_PARSE_ERROR

    def test_max_flats_guard_is_refusal(self, capsys):
        code, _, err = run_cli(capsys, "--max-flats", "5", "lattice", "D4")
        assert code == EXIT_REFUSED and "refused" in err

    def test_bad_rank_is_parse_error(self, capsys):
        code, _, _ = run_cli(capsys, "modular", "D4", "--rank", "9")
        assert code == EXIT_PARSE_ERROR

    def test_unknown_scope_is_parse_error(self, capsys):
        code, _, _ = run_cli(capsys, "verify-paper", "nonsense")
        assert code == EXIT_PARSE_ERROR


class TestMoreSurface:
    def test_failing_claim_gives_exit_1(self, capsys, monkeypatch):
        import hyparr.cli as cli
        from hyparr.claims import ClaimResult

        monkeypatch.setattr(cli, "run_claims", lambda scope, store: [
            ClaimResult("fake.claim", "witness", "D4", False, "forced", 0.0)])
        code, out, _ = run_cli(capsys, "verify-paper", "all")
        assert code == EXIT_VERIFICATION_FAILED and "FAIL" in out

    def test_cache_dir_from_environment(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("HYPARR_CACHE_DIR", str(tmp_path))
        code, _, _ = run_cli(capsys, "lattice", "G(2,1,2)")
        assert code == EXIT_OK
        assert list(tmp_path.glob("*.json"))

    def test_threads_flag_matches_single_worker(self, capsys):
        _, one, _ = run_cli(capsys, "--json", "modular", "G25", "--rank", "2")
        _, four, _ = run_cli(capsys, "--json", "--threads", "4",
                             "modular", "G25", "--rank", "2")
        assert one == four

    def test_arrangement_file_round_trip(self, tmp_path):
        from hyparr.arrangement import arrangement_to_text
        from hyparr.parse import parse_arrangement_text
        from hyparr.reflection import exceptional_arrangement

        for name in ("H3", "G25", "F4"):
            arr = exceptional_arrangement(name)
            again = parse_arrangement_text(arrangement_to_text(arr))
            assert again == arr


class TestDeterminism:
    def test_json_byte_identical_runs(self, capsys):
        _, out1, _ = run_cli(capsys, "--json", "supersolvable", "G25")
        _, out2, _ = run_cli(capsys, "--json", "supersolvable", "G25")
        assert out1 == out2

    def test_cache_warm_equals_cold(self, capsys, tmp_path):
        cold = run_cli(capsys, "--json", "--cache-dir", str(tmp_path),
                       "supersolvable", "G25")
        warm = run_cli(capsys, "--json", "--cache-dir", str(tmp_path),
                       "supersolvable", "G25")
        assert cold[0] == warm[0] == EXIT_OK
        assert cold[1] == warm[1]
        assert list(tmp_path.glob("*.json")), "cache file expected"

    def test_human_and_json_share_facts(self, capsys):
        _, human, _ = run_cli(capsys, "supersolvable", "G(3,1,3)")
        _, machine, _ = run_cli(capsys, "--json", "supersolvable", "G(3,1,3)")
        report = json.loads(machine)
        cert = report["supersolvable"]
        assert cert["supersolvable"] is True
        assert "supersolvable: True" in human
        chain_texts = [" ; ".join(f["text"] for f in flat["subspace"]["forms"])
                       for flat in cert["chain"]]
        for text in chain_texts:
            if text:
                assert text in human

    def test_exact_coefficients_are_rational_strings(self, capsys):
        _, machine, _ = run_cli(capsys, "--json", "build", "H3")
        report = json.loads(machine)
        coeffs = report["arrangement"]["hyperplanes"][3]["coeffs"]
        flat = [c for var in coeffs for c in var]
        assert all(isinstance(c, str) for c in flat)
        assert any("/" in c or c.lstrip("-").isdigit() for c in flat)
