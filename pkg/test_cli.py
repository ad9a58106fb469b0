"""
Test Suite for the command-line front end

Each test drives pcontact.cli.main with an argv list and reads the
certificate back from stdout.
"""

import json
import math

import pytest

from pcontact.atlas import save_section
from pcontact.certificate import parse_certificate
from pcontact.cli import main
from pcontact.structures import standard_symplectic_torus


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def gamma_file(tmp_path, capsys):
    path = tmp_path / "gamma3.json"
    code, _, _ = run(capsys, "construct-pn", "--n", "3", "--out", str(path))
    assert code == 0
    return path


@pytest.fixture
def torus_file(tmp_path):
    path = tmp_path / "omega.json"
    save_section(standard_symplectic_torus(4), str(path))
    return path


# ============================================================================
# Structures
# ============================================================================

def test_construct_and_verify(capsys, gamma_file):
    code, out, _ = run(capsys, "verify", str(gamma_file))
    assert code == 0
    cert = parse_certificate(out)
    assert cert.command == "verify"
    assert cert.verdict == "p_contact"
    constants = [row["constant"] for row in cert.body["report"]["top_form_constants"]]
    assert constants == ["1", "-1", "1", "-1"]


def test_construct_rejects_bad_dimension(capsys):
    code, out, err = run(capsys, "construct-pn", "--n", "5")
    assert code == 2
    assert out == ""
    assert "[ERROR]" in err


def test_corrupted_section_file(capsys, gamma_file):
    gamma_file.write_text(gamma_file.read_text().replace('"z3"', '"zbar3"', 1))
    code, out, err = run(capsys, "verify", str(gamma_file))
    assert code == 2
    assert out == ""
    assert "chart 0, term" in err


def _set_model_list(data):
    data["model"] = ["projective", 3]


def _set_bundle_list(data):
    data["bundle"] = ["twist", 3, 2]


def _set_charts_object(data):
    data["charts"] = {"0": data["charts"][0]}


def _set_chart_entry_list(data):
    data["charts"][1] = [1, {"dz1": "1"}]


def _set_terms_list(data):
    data["charts"][0]["terms"] = ["dz1"]


def _set_product_left_list(data):
    data["model"] = {"kind": "product", "left": [4], "right": {"kind": "projective", "n": 3}}


@pytest.mark.parametrize("mutate,location", [
    (_set_model_list, "model"),
    (_set_bundle_list, "bundle"),
    (_set_charts_object, "charts"),
    (_set_chart_entry_list, "charts[1]"),
    (_set_terms_list, "charts[0].terms"),
    (_set_product_left_list, "model.left"),
])
def test_wrongly_shaped_section_file(capsys, gamma_file, mutate, location):
    data = json.loads(gamma_file.read_text())
    mutate(data)
    gamma_file.write_text(json.dumps(data))
    code, out, err = run(capsys, "verify", str(gamma_file))
    assert code == 2
    assert out == ""
    assert f"[ERROR] {location}: expected a JSON" in err


def test_missing_section_file(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", str(tmp_path / "missing.json"))
    assert code == 2


def test_symplectic_verify_and_product(capsys, gamma_file, torus_file, tmp_path):
    code, out, _ = run(capsys, "symplectic-verify", str(torus_file))
    assert code == 0
    assert parse_certificate(out).verdict == "s_symplectic"

    code, out, _ = run(capsys, "product", str(torus_file), str(gamma_file), "--out", str(tmp_path / "prod.json"))
    assert code == 0
    cert = parse_certificate(out)
    assert cert.body["top_form_identity"] is True
    assert [row["constant"] for row in cert.body["report"]["top_form_constants"]] == ["2", "-2", "2", "-2"]
    assert (tmp_path / "prod.json").exists()


def test_contact_power(capsys):
    code, out, _ = run(capsys, "contact-power", "--l", "1")
    assert code == 0
    cert = parse_certificate(out)
    assert cert.body["bundle"] == {"kind": "twist", "n": 7, "k": 4}


# ============================================================================
# Cohomology
# ============================================================================

def test_cohom_dim(capsys):
    code, out, _ = run(capsys, "cohom-dim", "--n", "3", "--p", "1", "--k", "2")
    assert code == 0
    cert = parse_certificate(out)
    assert cert.verdict == "dimension 6"
    assert cert.body["euler_sequence_count"] == 6
    assert "basis" not in cert.body

    code, out, _ = run(capsys, "cohom-dim", "--n", "1", "--p", "1", "--k", "2", "--basis")
    assert len(parse_certificate(out).body["basis"]) == 1


def test_bott_exit_codes(capsys):
    code, out, _ = run(capsys, "bott", "--p", "1", "--q", "2", "--k", "7", "--N", "4")
    assert code == 0
    assert parse_certificate(out).body["step"]["justification"] == "case (a)"
    code, out, _ = run(capsys, "bott", "--p", "1", "--q", "1", "--k", "0", "--N", "4")
    assert code == 1
    assert parse_certificate(out).verdict == "not_covered"


def test_hypersurface_cert(capsys):
    code, out, _ = run(capsys, "hypersurface-cert", "--n", "3", "--d", "3")
    assert code == 0
    assert parse_certificate(out).verdict == "vanishes"
    code, out, err = run(capsys, "hypersurface-cert", "--n", "3", "--d", "1")
    assert code == 2
    assert "copy of P^n" in err


def test_table_format(capsys):
    code, out, _ = run(capsys, "hypersurface-cert", "--n", "7", "--d", "5", "--format", "table")
    assert code == 0
    assert "HYPERSURFACE-CERT CERTIFICATE" in out
    assert "verdict: vanishes" in out


def test_spin_root(capsys):
    code, out, _ = run(capsys, "spin-root", "--n", "3")
    assert code == 0
    assert parse_certificate(out).body == {"k": 2, "contact_k": 2}
    code, out, _ = run(capsys, "spin-root", "--n", "4")
    assert code == 1
    cert = parse_certificate(out)
    assert cert.verdict == "none"
    assert cert.body["contact_k"] is None


# ============================================================================
# Curvature and numeric checks
# ============================================================================

def test_curvature_spectrum(capsys):
    code, out, _ = run(capsys, "curvature", "--spectrum=-3,1,1", "--m", "2")
    assert code == 1
    assert parse_certificate(out).verdict == "not_m_positive"
    code, out, _ = run(capsys, "curvature", "--spectrum", "1,2,3", "--p", "1")
    assert code == 0
    body = parse_certificate(out).body
    assert [row["value"] for row in body["contact_pairings"]] == ["-5", "-4", "-3"]


def test_curvature_spectrum_file(capsys, tmp_path):
    path = tmp_path / "spectrum.txt"
    path.write_text("-1 2 2\n")
    code, _, _ = run(capsys, "curvature", "--spectrum-file", str(path), "--m", "2")
    assert code == 0


def test_curvature_frame_file(capsys, tmp_path):
    path = tmp_path / "frame.txt"
    path.write_text("# metric\n2 0\n0 1\n# curvature\n2 0\n0 -3\n")
    code, out, _ = run(capsys, "curvature", "--frame-file", str(path), "--m", "2", "--p", "1")
    assert code == 1
    cert = parse_certificate(out)
    assert cert.verdict == "not_m_positive"
    assert cert.inputs["frame_file"] == str(path)
    assert cert.body["spectrum"]["values"] == pytest.approx([-3.0, 1.0])
    assert cert.body["scalar_curvature"] == pytest.approx(-2 / (2 * math.pi))


@pytest.mark.parametrize("text,message", [
    ("1 0\n0 -1\n1 0\n0 1\n", "metric is not positive definite"),
    ("1 2\n0 1\n1 0\n0 1\n", "metric is not Hermitian"),
])
def test_curvature_frame_file_rejections(capsys, tmp_path, text, message):
    path = tmp_path / "frame.txt"
    path.write_text(text)
    code, out, err = run(capsys, "curvature", "--frame-file", str(path))
    assert code == 2
    assert out == ""
    assert message in err


def test_fubini_study_scalar_curvature(capsys):
    code, out, _ = run(capsys, "curvature", "--fs", "3", "4", "--points", "5")
    assert code == 0
    assert parse_certificate(out).verdict == "constant"


def test_rank_and_volume(capsys, gamma_file):
    code, out, _ = run(capsys, "rank", str(gamma_file), "--points", "4")
    assert code == 1
    assert parse_certificate(out).verdict == "kernel_nonzero"
    code, out, _ = run(capsys, "rank", str(gamma_file), "--points", "4", "--weight", "fs", "--chart", "2")
    assert code == 0
    assert parse_certificate(out).verdict == "direct"
    code, out, _ = run(capsys, "volume", str(gamma_file), "--points", "4")
    assert code == 0
    assert parse_certificate(out).verdict == "positive"


def test_output_is_deterministic(capsys, gamma_file):
    first = run(capsys, "rank", str(gamma_file), "--points", "6", "--seed", "11")
    second = run(capsys, "rank", str(gamma_file), "--points", "6", "--seed", "11")
    assert first[1] == second[1]
    assert parse_certificate(first[1]).seed == 11


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["bott", "--p", "1"]) == 2
    assert main(["--help"]) == 0
    capsys.readouterr()


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-v"]))
