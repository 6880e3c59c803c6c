import json

import pytest

from siefring_kit import cli
from siefring_kit.jsonio import canonical_dumps

LOOP_IDENTITY = {
    "modes": [{"n": 0, "cos": [[1.0, 0.0], [0.0, 1.0]], "sin": [[0.0, 0.0], [0.0, 0.0]]}]
}

GERM_35 = {"p": [[0, 1, 0, 1]] * 3 + [[1, 1, 0, 1]], "q": [[0, 1, 0, 1]] * 5 + [[1, 1, 0, 1]]}
GERM_46 = {"p": [[0, 1, 0, 1]] * 4 + [[1, 1, 0, 1]], "q": [[0, 1, 0, 1]] * 6 + [[1, 1, 0, 1]]}


def write(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSpectrumCommand:
    def test_identity_loop_report(self, tmp_path, capsys):
        loop = write(tmp_path / "loop.json", LOOP_IDENTITY)
        code, out, _ = run(capsys, "spectrum", loop, "--cutoff", "32", "--window", "-2", "2")
        assert code == 0
        report = json.loads(out)
        assert report["alpha_minus"] == 0
        assert report["alpha_plus"] == 1
        assert report["cz"] == 1
        assert report["eigenvalues"] == pytest.approx([-1.0, -1.0], abs=1e-9)

    def test_malformed_json_exits_one(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        code, _, err = run(capsys, "spectrum", str(bad))
        assert code == 1
        assert "malformed JSON" in err

    def test_window_beyond_resolution_exits_one(self, tmp_path, capsys):
        loop = write(tmp_path / "loop.json", LOOP_IDENTITY)
        code, _, err = run(capsys, "spectrum", loop, "--cutoff", "8", "--window", "-100", "100")
        assert code == 1
        assert "window exceeds resolution" in err


class TestCurveCommand:
    def test_planar_page_report(self, capsys):
        code, out, _ = run(capsys, "curve", "planar_page", "page")
        assert code == 0
        report = json.loads(out)
        assert report["adjunction_defect"] == 0
        assert report["index"] == 2
        assert report["c_N"] == 0
        assert report["foliation"]["all_pass"] is True
        assert report["automatic_transversality"] is True

    def test_orbit_cylinder_report(self, capsys):
        code, out, _ = run(capsys, "curve", "orbit_cylinder", "cyl_odd_1")
        assert code == 0
        report = json.loads(out)
        assert report["c_N"] == -1
        assert report["star_self"] == -1

    def test_non_simple_cover_exits_two(self, capsys):
        code, _, err = run(capsys, "curve", "orbit_cylinder", "cyl_odd_2")
        assert code == 2
        assert "inconsistent" in err

    def test_unknown_curve_exits_one(self, capsys):
        code, _, err = run(capsys, "curve", "planar_page", "nope")
        assert code == 1
        assert "unknown curve" in err

    def test_unknown_scene_exits_one(self, capsys):
        code, _, err = run(capsys, "curve", "no_such_scene", "u")
        assert code == 1
        assert "neither a readable file" in err


class TestStarCommand:
    def test_closed_pair(self, capsys):
        code, out, _ = run(capsys, "star", "closed_ruled", "bubble_plus", "bubble_minus")
        assert code == 0
        assert json.loads(out)["star"] == 1

    def test_scene_from_file(self, tmp_path, capsys):
        from siefring_kit.cli import golden_scene
        from siefring_kit.core import scene_to_dict

        path = write(tmp_path / "scene.json", scene_to_dict(golden_scene("planar_page")))
        code, out, _ = run(capsys, "star", path, "page", "page")
        assert code == 0
        assert json.loads(out)["star"] == 0


class TestAuditCommand:
    @pytest.mark.parametrize("scene", cli.GOLDEN_SCENES)
    def test_golden_scenes_pass(self, scene, capsys):
        code, out, _ = run(capsys, "audit", scene, "--shifts", "10", "--seed", "3")
        assert code == 0
        assert json.loads(out)["breaches"] == []

    def test_breach_exits_three(self, capsys, monkeypatch):
        monkeypatch.setattr(
            cli,
            "audit_scene",
            lambda scene, shifts, seed: {
                "trials": shifts,
                "breaches": [{"trial": 0, "quantity": "index[u]"}],
            },
        )
        code, _, err = run(capsys, "audit", "planar_page")
        assert code == 3
        assert "invariance breach" in err and "index[u]" in err


class TestGermCommand:
    def test_iota_prints_integer(self, tmp_path, capsys):
        a = write(tmp_path / "a.json", GERM_35)
        b = write(tmp_path / "b.json", GERM_46)
        code, out, _ = run(capsys, "germ", "iota", a, b)
        assert code == 0
        assert out == "18\n"

    def test_delta(self, tmp_path, capsys):
        a = write(tmp_path / "a.json", GERM_35)
        code, out, _ = run(capsys, "germ", "delta", a)
        assert code == 0
        assert out == "4\n"

    def test_oracle_pair(self, tmp_path, capsys):
        a = write(tmp_path / "a.json", GERM_35)
        b = write(tmp_path / "b.json", GERM_46)
        code, out, _ = run(capsys, "germ", "oracle", a, b, "--epsilon", "1e-3", "--radius", "0.3")
        assert code == 0
        assert out == "18\n"

    def test_oracle_single(self, tmp_path, capsys):
        a = write(tmp_path / "a.json", GERM_35)
        code, out, _ = run(capsys, "germ", "oracle", a)
        assert code == 0
        assert out == "4\n"

    def test_iota_needs_two_files(self, tmp_path, capsys):
        a = write(tmp_path / "a.json", GERM_35)
        with pytest.raises(SystemExit):
            cli.main(["germ", "iota", a])


class TestClosedCommand:
    def test_cp2_degree_three(self, capsys):
        code, out, _ = run(capsys, "closed", "cp2", "--degree", "3")
        assert code == 0
        assert json.loads(out)["delta"] == 1

    def test_adjunction_inconsistent_exits_two(self, capsys):
        code, _, err = run(
            capsys, "closed", "adjunction", "--self-pairing", "0", "--c1", "1", "--genus", "0"
        )
        assert code == 2
        assert "inconsistent" in err

    def test_nodal_split(self, capsys):
        code, out, _ = run(capsys, "closed", "nodal-split")
        assert code == 0
        result = json.loads(out)
        assert result["cross_pairing"] == 1
        assert result["self_pairing_plus"] == -1


class TestDeterminism:
    def test_byte_identical_reports(self, capsys):
        _, out1, _ = run(capsys, "curve", "planar_page", "page")
        _, out2, _ = run(capsys, "curve", "planar_page", "page")
        assert out1 == out2

    def test_spectrum_byte_identical(self, tmp_path, capsys):
        loop = write(tmp_path / "loop.json", LOOP_IDENTITY)
        _, out1, _ = run(capsys, "spectrum", loop, "--window", "-8", "8")
        _, out2, _ = run(capsys, "spectrum", loop, "--window", "-8", "8")
        assert out1 == out2

    def test_canonical_json_shape(self):
        text = canonical_dumps({"b": 1, "a": [1.5, True, None, "x"]})
        assert text == '{"a": [1.5, true, null, "x"], "b": 1}\n'

    def test_float_formatting(self):
        import math

        text = canonical_dumps({"pi": math.pi})
        assert text == '{"pi": 3.1415926535897931}\n'
