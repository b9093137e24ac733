import json
from pathlib import Path

import pytest

import wdreps.cli as cli
from wdreps.cli import (CommandRequest, main, parse_points, parse_rational,
                        render_table, run_command)
from wdreps.fields import ParseError

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
FLAGSHIP = str(CORPUS / "flagship.json")
SP2 = str(CORPUS / "sp2.json")


class TestFlagParsing:
    def test_point_range(self):
        points = parse_points("-2..2")
        assert [int(p) for p in points] == [-2, -1, 0, 1, 2]

    def test_point_list_dedup_sorted(self):
        points = parse_points("3,1/2,3,-1")
        assert [str(p) for p in points] == ["-1", "1/2", "3"]

    def test_default_grid(self):
        assert len(parse_points(None)) == 51

    def test_bad_inputs(self):
        with pytest.raises(ParseError):
            parse_points("5..1")
        with pytest.raises(ParseError):
            parse_points("a,b")
        with pytest.raises(ParseError):
            parse_rational("x")

    def test_merge_negative_values(self):
        argv = ["scan", "--points", "-5..5", "f.json", "--weight", "-1"]
        merged = cli._merge_negative_values(argv)
        assert "--points=-5..5" in merged and "--weight=-1" in merged


class TestCommands:
    def test_validate_ok(self):
        code, env = run_command(CommandRequest("validate", SP2))
        assert code == 0 and env["result"] == {"ok": True, "violation": None}

    def test_validate_broken_exits_2(self, tmp_path):
        bad = tmp_path / "broken.json"
        bad.write_text(json.dumps({
            "q": 5, "field": {"type": "Q"}, "phi": [["1", "0"], ["0", "1"]],
            "nilp": [["0", "0"], ["1", "0"]], "inertia": []}))
        code, env = run_command(CommandRequest("validate", str(bad)))
        assert code == 2
        assert env["result"]["ok"] is False
        assert "relation" in env["result"]["violation"]

    def test_validate_unparsable_exits_2(self, tmp_path):
        bad = tmp_path / "garbage.json"
        bad.write_text("{")
        code, env = run_command(CommandRequest("validate", str(bad)))
        assert code == 2 and env["result"] is None and env["diagnostics"]

    def test_schur(self):
        code, env = run_command(CommandRequest("schur", SP2, partition="2"))
        assert code == 0
        rep = env["result"]["representation"]
        assert len(rep["phi"]) == 3
        assert rep["phi"][0][0] == "1" and rep["phi"][2][2] == "1/25"

    def test_frss_signature_payload(self):
        code, env = run_command(CommandRequest("frss", SP2))
        assert code == 0
        assert env["result"]["signature"] == [{"t": 2, "charpoly": ["-1/5", "1"]}]

    def test_filtration(self):
        code, env = run_command(CommandRequest("filtration", SP2))
        assert code == 0
        assert [(s["k"], s["dim"]) for s in env["result"]["filtration"]] == \
            [(-2, 0), (-1, 1), (0, 1), (1, 2)]

    def test_purity_exit_0_pure(self):
        code, env = run_command(CommandRequest("purity", SP2, weight="-1"))
        assert code == 0 and env["result"]["purity"]["verdict"] == "pure"

    def test_purity_certification_failure_exit_3(self, tmp_path):
        # irrational Frobenius moduli force real certification work; an
        # unreachable eps must fail loudly with exit code 3
        doc = {"q": 5, "field": {"type": "Q"},
               "phi": [["0", "1"], ["1/5", "0"]],
               "nilp": [["0", "0"], ["0", "0"]], "inertia": []}
        path = tmp_path / "irrational.json"
        path.write_text(json.dumps(doc))
        code, env = run_command(CommandRequest(
            "purity", str(path), weight="-1", eps="1e-6000"))
        assert code == 3
        assert any("CertificationFailed" in d for d in env["diagnostics"])

    def test_specialize(self):
        code, env = run_command(CommandRequest("specialize", FLAGSHIP, point="3"))
        assert code == 0
        assert env["result"]["representation"]["nilp"] == [["0", "0"], ["3", "0"]]
        code, _ = run_command(CommandRequest("specialize", FLAGSHIP))
        assert code == 2

    def test_scan_and_rigidity(self):
        code, env = run_command(CommandRequest(
            "scan", FLAGSHIP, partition="1", points="-2..2"))
        assert code == 0
        assert env["result"]["report"]["verdict"] is None
        code, env = run_command(CommandRequest(
            "rigidity", FLAGSHIP, partition="1", points="-2..2"))
        assert code == 0
        report = env["result"]["report"]
        assert report["verdict"] == "pass"
        impure = [p for p in report["points"] if p["a"] == "0"][0]
        assert impure["purity"]["verdict"] == "impure"

    def test_rigidity_fail_maps_to_exit_1(self, monkeypatch):
        # an honest fail verdict contradicts the rigidity statement, so the
        # exit mapping is exercised by stubbing the verdict
        from dataclasses import replace
        import wdreps.cli as cli_module
        real = cli_module.rigidity_check

        def forced_fail(report):
            checked = real(report)
            return replace(checked, verdict="fail",
                           failures=(checked.points[0].a,))

        monkeypatch.setattr(cli_module, "rigidity_check", forced_fail)
        code, env = run_command(CommandRequest(
            "rigidity", FLAGSHIP, partition="1", points="1..2"))
        assert code == 1
        assert env["result"]["report"]["verdict"] == "fail"

    def test_resource_cap_maps_to_exit_2(self, monkeypatch):
        monkeypatch.setenv("WDREPS_TENSOR_CAP", "2")
        code, env = run_command(CommandRequest("schur", SP2, partition="2"))
        assert code == 2
        assert any("ResourceCapExceeded" in d for d in env["diagnostics"])


class TestEnvelope:
    def test_deterministic_bytes(self):
        from wdreps.jsonio import canonical_json_bytes
        req = CommandRequest("scan", FLAGSHIP, partition="2", points="-3..3")
        code1, env1 = run_command(req)
        code2, env2 = run_command(req)
        assert code1 == code2 == 0
        assert canonical_json_bytes(env1) == canonical_json_bytes(env2)

    def test_digest_tracks_content(self):
        _, env = run_command(CommandRequest("validate", SP2))
        assert env["input_digest"].startswith("sha256:")

    def test_main_writes_output_file(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(["validate", SP2, "--output", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["result"]["ok"] is True

    def test_main_table_to_stdout(self, capsys):
        code = main(["frss", SP2, "--format", "table"])
        assert code == 0
        captured = capsys.readouterr().out
        assert "Sp_2 of x-1/5" in captured


class TestTableFormat:
    def test_table_golden(self):
        code, env = run_command(CommandRequest(
            "rigidity", FLAGSHIP, partition="1", points="-1..1"))
        assert code == 0
        digest = env["input_digest"]
        expected = (
            f"tool: wdreps 0.1.0\n"
            f"command: rigidity\n"
            f"input: {digest}\n"
            f"partition: 1\n"
            f"verdict: pass\n"
            f"generic signature:\n"
            f"  Sp_2 of x-1/5\n"
            f"point -1: pure (weight -1); signature: Sp_2 of x-1/5\n"
            f"point 0: impure (weight -1); signature: Sp_1 of x^2-6/5*x+1/5\n"
            f"point 1: pure (weight -1); signature: Sp_2 of x-1/5\n"
        )
        assert render_table(env) == expected

    def test_json_payload_golden(self):
        code, env = run_command(CommandRequest("frss", SP2))
        assert code == 0
        from wdreps.jsonio import canonical_json_bytes
        golden = (
            b'{\n'
            b'  "representation": {\n'
            b'    "field": {\n'
            b'      "type": "Q"\n'
            b'    },\n'
            b'    "inertia": [],\n'
            b'    "nilp": [\n'
            b'      [\n        "0",\n        "0"\n      ],\n'
            b'      [\n        "1",\n        "0"\n      ]\n    ],\n'
            b'    "phi": [\n'
            b'      [\n        "1",\n        "0"\n      ],\n'
            b'      [\n        "0",\n        "1/5"\n      ]\n    ],\n'
            b'    "q": 5\n'
            b'  },\n'
            b'  "signature": [\n'
            b'    {\n'
            b'      "charpoly": [\n        "-1/5",\n        "1"\n      ],\n'
            b'      "t": 2\n'
            b'    }\n'
            b'  ]\n'
            b'}\n'
        )
        assert canonical_json_bytes(env["result"]) == golden

    def test_table_is_projection_of_json(self):
        # every signature and verdict in the table appears in the JSON
        code, env = run_command(CommandRequest(
            "rigidity", FLAGSHIP, partition="2", points="-2..2"))
        table = render_table(env)
        report = env["result"]["report"]
        assert report["verdict"] in table
        for point in report["points"]:
            assert f"point {point['a']}:" in table
            if point["purity"] is not None:
                assert point["purity"]["verdict"] in table
