import subprocess
import sys

import pytest

from morseconn.cli import main
from morseconn.figures import data_path


def d(name):
    return str(data_path(name))


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--complex", d("fig2.cx"), "--field", d("fig2a.gf"),
                       "--field", d("fig2b.gf"))
    assert code == 0
    assert out.count("valid: yes") == 2


def test_validate_reports_violations(capsys, tmp_path):
    bad = tmp_path / "cyc.gf"
    bad.write_text("pair a e1\npair b e2\npair c e3\n")
    code, out, _ = run(capsys, "validate", "--complex", d("fig7.cx"), "--field", str(bad))
    assert code == 1
    assert "valid: no" in out and "violation: acyclicity" in out
    fn = tmp_path / "f.gf"
    fn.write_text("f a 0\nf b 0\nf c 0\nf e1 1\nf e2 1\nf e3 1\n")
    code, out, _ = run(capsys, "validate", "--complex", d("fig7.cx"), "--field", str(fn))
    assert code == 0 and "critical counts: 3 3" in out


def test_invalid_field_outside_validate_is_input_error(capsys, tmp_path):
    bad = tmp_path / "cyc.gf"
    bad.write_text("pair a e1\npair b e2\npair c e3\n")
    code, _, err = run(capsys, "critical", "--complex", d("fig7.cx"), "--field", str(bad))
    assert code == 2 and "not a gradient field" in err


def test_critical(capsys):
    code, out, _ = run(capsys, "critical", "--complex", d("fig5.cx"), "--field", d("fig5a.gf"))
    assert code == 0
    assert out.splitlines() == ["critical 0: v03 v10", "critical 1: v07v08"]


def test_boundary(capsys):
    code, out, _ = run(capsys, "boundary", "--complex", d("fig6.cx"), "--field", d("fig6b.gf"))
    assert code == 0 and out.startswith("boundary 1:")
    code, out, _ = run(capsys, "boundary", "--complex", d("fig7.cx"), "--ring", "z")
    assert code == 0 and "-1" in out


def test_homology(capsys):
    code, out, _ = run(capsys, "homology", "--complex", d("fig6.cx"), "--field", d("fig6a.gf"),
                       "--field", d("fig6b.gf"))
    assert code == 0 and out.count("agrees: yes") == 2


def test_hom(capsys):
    code, out, _ = run(capsys, "hom", "--complex", d("fig5.cx"), "--field", d("fig5a.gf"), "--field", d("fig5b.gf"))
    assert code == 0
    assert "h1(v07v08) = v05v06 + v07v08" in out


def test_chainmap_fig2(capsys):
    args = ["chainmap", "--complex", d("fig2.cx"), "--field", d("fig2b.gf"), "--field", d("fig2a.gf")]
    code, out, _ = run(capsys, *args)
    assert code == 0 and "chain map: yes" in out
    code, out, _ = run(capsys, *args, "--truncate")
    assert code == 1 and "A4A5" in out


def test_faithful(capsys):
    code, out, _ = run(capsys, "faithful", "--complex", d("fig5.cx"), "--field", d("fig5a.gf"),
                       "--field", d("fig5b.gf"))
    assert code == 1
    assert "faithful 0: yes" in out and "faithful 1: no" in out


def test_transition(capsys):
    code, out, _ = run(capsys, "transition", "--complex", d("fig5.cx"), "--field", d("fig5a.gf"),
                       "--field", d("fig5b.gf"))
    assert code == 0
    for line in ("certified: yes", "kind: birth", "pair: v05v06 v06", "k: 1", "cusp: yes", "chain maps: yes"):
        assert line in out.splitlines()
    code, out, _ = run(capsys, "transition", "--complex", d("fig2.cx"), "--field", d("fig2a.gf"),
                       "--field", d("fig2b.gf"))
    assert code == 1 and "certified: no" in out


def test_cancel(capsys, tmp_path):
    args = ["cancel", "--complex", d("fig5.cx"), "--field", d("fig5b.gf"), "--pair", "v05v06", "v06"]
    code, out, _ = run(capsys, *args)
    assert code == 0
    expect = [ln for ln in open(d("fig5a.gf")).read().splitlines() if ln.startswith("pair")]
    assert sorted(out.splitlines()) == sorted(expect)
    dest = tmp_path / "new.gf"
    code, out, _ = run(capsys, *args, "--out", str(dest))
    assert code == 0 and "critical counts: 2 1" in out
    assert sorted(dest.read_text().splitlines()) == sorted(expect)
    code, out, _ = run(capsys, "cancel", "--complex", d("fig5.cx"), "--field", d("fig5b.gf"),
                       "--pair", "v01v02", "v06")
    assert code == 1 and "cancelled: no" in out


def test_sequence(capsys):
    code, out, _ = run(capsys, "sequence", "--complex", d("fig5.cx"), "--field", d("fig5a.gf"),
                       "--field", d("fig5b.gf"), "--field", d("fig5a.gf"))
    assert code == 0 and "step 0: birth" in out and "step 1: death" in out
    code, out, _ = run(capsys, "sequence", "--complex", d("fig2.cx"), "--field", d("fig2a.gf"),
                       "--field", d("fig2b.gf"))
    assert code == 1 and "break: 0" in out


def test_mfc(capsys, tmp_path):
    dot = tmp_path / "m.dot"
    code, out, _ = run(capsys, "mfc", "--complex", d("fig7.cx"), "--dot", str(dot))
    assert code == 0
    assert "simplices by dimension: 6 9" in out and "components: 1" in out
    assert dot.read_text().count(" -- ") == 9
    code, _, err = run(capsys, "mfc", "--complex", d("fig7.cx"), "--size-guard", "3")
    assert code == 2 and "size guard" in err


@pytest.mark.parametrize("argv, msg", [
    (["critical", "--complex", "/nonexistent.cx", "--field", "x"], "nonexistent"),
    (["hom", "--complex", d("fig5.cx"), "--field", d("fig5a.gf")], "expected 2 --field"),
    (["cancel", "--complex", d("fig5.cx"), "--field", d("fig5b.gf"), "--pair", "zz", "v06"], "zz"),
    (["critical", "--complex", d("fig5.cx"), "--field", d("fig2a.gf")], "unknown simplex"),
])
def test_input_errors(capsys, argv, msg):
    code, _, err = run(capsys, *argv)
    assert code == 2 and msg in err


def test_out_file_and_determinism(capsys, tmp_path):
    dest = tmp_path / "r.txt"
    args = ["hom", "--complex", d("fig6.cx"), "--field", d("fig6a.gf"), "--field", d("fig6b.gf"), "--ring", "z"]
    assert main(args + ["--out", str(dest)]) == 0
    assert capsys.readouterr().out == ""
    first = dest.read_text()
    _, again, _ = run(capsys, *args)
    assert again == first


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "morseconn", "critical", "--complex", d("fig7.cx"),
                          "--field", d("fig6a.gf")], capture_output=True, text=True)
    assert res.returncode == 2
