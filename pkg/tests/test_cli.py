import json
import subprocess
import sys
from pathlib import Path

import pytest

from handlebody.cli import (
    EXIT_FALSE, EXIT_INTERNAL, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, Job, main, parse_element,
    run,
)
from handlebody.words import endo_to_json, handle_slide, twist_alpha, twist_boundary

GOLDEN = Path(__file__).parent / "golden"


def cli(*args):
    return run(Job(args[0], inputs=list(args[1:])))


def test_magnus_matches_golden():
    status, text = cli("magnus", "twist_boundary")
    assert status == EXIT_OK
    assert text + "\n" == (GOLDEN / "magnus_boundary.txt").read_text()


def test_jfdegree_identity():
    assert cli("jfdegree", "identity") == (EXIT_OK, ">4")
    assert cli("jfdegree", "twist_alpha:1*twist_boundary^-1") == (EXIT_OK, "1")


def test_element_products():
    f = parse_element(3, "twist_alpha:2^2*handle_slide:1^-1")
    assert f == twist_alpha(3, 2) @ twist_alpha(3, 2) @ handle_slide(3, 1).inverse()


def test_endo_file_input(tmp_path):
    p = tmp_path / "f.json"
    p.write_text(endo_to_json(twist_boundary(3)))
    assert cli("magnus", str(p)) == cli("magnus", "twist_boundary")


@pytest.mark.parametrize("args,code", [
    (("magnus", "nonsense"), EXIT_PARSE),
    (("magnus", "twist_alpha:x"), EXIT_PARSE),
    (("psi", "(1 . a1", "(1 . a2)"), EXIT_PARSE),
    (("milnor", "[t12,t12"), EXIT_PARSE),
    (("magnus", "handle_slide:1"), EXIT_PRECONDITION),
    (("disk-twist", "b1"), EXIT_PRECONDITION),
    (("verify", "elem_d:1,1,b2"), EXIT_FALSE),
    (("verify", "handle_slide:2"), EXIT_OK),
])
def test_exit_codes(args, code):
    assert cli(*args)[0] == code


def test_tau_precondition_message():
    status, text = run(Job("tau", inputs=["twist_alpha:1"], options={"k": 2}))
    assert status == EXIT_PRECONDITION and "F_NOT_IN_H_K" in text


def test_internal_assertion_code(monkeypatch):
    import handlebody.cli as c

    def boom(f, N):
        raise AssertionError("sides disagree")
    monkeypatch.setattr(c, "jf_degree", boom)
    assert cli("jfdegree", "identity")[0] == EXIT_INTERNAL


def test_structured_output_is_stable():
    job = Job("milnor", inputs=["[t12,t23]"], fmt="structured")
    s1, t1 = run(job)
    s2, t2 = run(job)
    assert s1 == EXIT_OK and t1 == t2
    doc = json.loads(t1)
    assert doc["schema"] == "handlebody-output/1"
    assert dict((f["name"], f["text"]) for f in doc["fields"])["equal"] == "true"


@pytest.mark.parametrize("kind,text", [
    ("word", "a1 b2^-1"),
    ("lie", "-1/2*(x3^-1 . a3) + 1*[(1 . a1), (x1 . a2)]"),
    ("tree", "(tree 1 (node (leaf () 1) (bead (x1) (node (leaf () 2) (leaf (x2) 3)))))"),
    ("matrix", (GOLDEN / "magnus_boundary.txt").read_text().strip()),
    ("endo", endo_to_json(handle_slide(3, 1))),
])
def test_roundtrip(kind, text):
    status, out = run(Job("roundtrip", inputs=[text], options={"kind": kind}))
    assert status == EXIT_OK, out


def test_pairing_theta_psi():
    assert cli("pairing", "x1 - 1", "(1 . a1)") == (EXIT_OK, "-1")
    assert cli("psi", "(1 . a1)", "(1 . a1)") == (EXIT_OK, "+1*(1) (x) (1 . a1)")
    assert cli("theta", "x1", "(1 . a1)")[0] == EXIT_OK


def test_small_kk_check():
    job = Job("kk-check", genus=2, N=2, inputs=["alpha:1"])
    status, text = run(job)
    assert status == EXIT_OK and text.startswith("equal: true")


def test_mccullough_command():
    assert cli("mccullough", "b1^-1 a1 b1 b2 a1^-1 b2^-1") == (EXIT_OK, "2 - t^2 - t^-2")


def test_job_validation():
    with pytest.raises(ValueError):
        Job("magnus", genus=0)


def test_main_entry(capsys):
    assert main(["--genus", "2", "jfdegree", "twist_alpha:1", "--deg", "2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "handlebody", "milnor", "[t12,t13]"],
                         capture_output=True, text=True, check=True)
    assert "equal: true" in out.stdout
