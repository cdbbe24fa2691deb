import io
import subprocess
import sys

import pytest

from hdgames.cli import main
from hdgames.hardness import DnfFormula, brute_sat, emit_dnf
from hdgames.randgen import all_dnfs

A1 = """pa A1
alphabet a b
states 1
initial 0
trans 0 a 0 2
trans 0 b 0 1
end
"""
ONLY_B = """pa only_b
alphabet a b
states 1
initial 0
trans 0 b 0 2
end
"""
FIN_A = """pa finA
alphabet a b
states 2
initial 0
trans 0 a 0 1
trans 0 b 0 1
trans 0 b 1 2
trans 1 b 1 2
end
"""
LOOP_EVE = "pg p 1\nvertices 1\ninitial 0\nowner 0 E\nedge 0 0 2\nend\n"
LOOP_2D = "pg g 2\nvertices 1\ninitial 0\nowner 0 A\nedge 0 0 2 1\nend\n"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(x) for x in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in [("a1.pa", A1), ("b.pa", ONLY_B), ("fin.pa", FIN_A),
                       ("p.pg", LOOP_EVE), ("g.pg", LOOP_2D)]:
        paths[name] = tmp_path / name
        paths[name].write_text(text)
    return paths


def test_solve_parity(files):
    for method in ("recursive", "brute"):
        assert run("solve", "parity", files["p.pg"], "--method", method) == (0, "result: Eve\n", "")


def test_solve_2d(files):
    for method in ("enum", "muller"):
        code, out, _ = run("solve", "2d", files["g.pg"], "--method", method)
        assert (code, out) == (0, "result: Adam\n")


def test_sim_member_contains(files):
    assert run("sim", files["a1.pa"], files["a1.pa"])[1] == "result: yes\n"
    assert run("member", files["a1.pa"], "--v", "a")[1] == "result: yes\n"
    assert run("member", files["a1.pa"], "--u", "a", "--v", "b")[1] == "result: no\n"
    assert run("contains", files["a1.pa"], files["a1.pa"], "--assume-hd")[1] == "result: yes\n"
    assert run("contains", files["a1.pa"], files["b.pa"], "--assume-hd")[1] == "result: no\n"


def test_contains_verbose_logs_sizes(files):
    code, out, err = run("--verbose", "contains", files["a1.pa"], files["a1.pa"], "--assume-hd")
    assert code == 0 and "parity game:" in err and "Zielonka tree:" in err


def test_hd_and_token(files):
    assert run("hd", files["a1.pa"], "--det", files["a1.pa"])[1] == "result: yes\n"
    assert run("token", files["fin.pa"], "--k", 1)[1] == "result: Eve\n"
    assert run("token", files["fin.pa"], "--k", 2)[1] == "result: Adam\n"


def test_good(files, tmp_path):
    assert run("good", files["g.pg"])[1] == "result: yes\n"
    bad = tmp_path / "bad.pg"
    bad.write_text(LOOP_2D.replace("2 1", "1 2"))
    assert run("good", bad)[1] == "result: no\n"


def test_ztree():
    assert run("ztree", "--d", 3) == (0, "result: leaves=3 height=3\n", "")
    assert run("ztree", "--d", 0)[1] == "result: leaves=1 height=0\n"


class TestExitCodes:
    def test_missing_file(self, tmp_path):
        code, out, err = run("good", tmp_path / "nope.pg")
        assert code == 2 and out == "" and "cannot read" in err

    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.pg"
        bad.write_text("pg g 2\nvertices x\nend\n")
        assert run("good", bad)[0] == 2

    def test_unknown_subcommand(self):
        assert run("frobnicate")[0] == 2

    def test_validation(self, files, tmp_path):
        code, _, err = run("contains", files["a1.pa"], files["a1.pa"])
        assert code == 3 and "assume_hd" in err
        assert run("hd", files["a1.pa"], "--det", files["fin.pa"])[0] == 3
        assert run("solve", "2d", files["p.pg"])[0] == 3
        assert run("gen", "2d-from-dnf", files["p.pg"])[0] == 3

    def test_resource_limit(self, tmp_path):
        lines = ["pg g 2", "vertices 6", "initial 0"]
        lines += [f"owner {v} E" for v in range(6)]
        lines += [f"edge {v} {w} 0 0" for v in range(6) for w in range(6)]
        f = tmp_path / "big.pg"
        f.write_text("\n".join(lines + ["end"]) + "\n")
        code, _, err = run("solve", "2d", f, "--method", "enum", "--limit", 100)
        assert code == 4 and "resource limit" in err


def test_generator_chain_matches_brute_sat(tmp_path):
    formulas = all_dnfs(1, 2) + [DnfFormula(2, [(1, -2), (-1, 2)])]
    for i, f in enumerate(formulas):
        src = tmp_path / f"f{i}.dnf"
        src.write_text(emit_dnf(f))
        g, d, h = (tmp_path / f"{stem}{i}" for stem in ("g.pg", "d.pa", "h.pa"))
        assert run("gen", "2d-from-dnf", src, "-o", g)[0] == 0
        want = "Eve" if brute_sat(f) else "Adam"
        assert run("solve", "2d", g)[1] == f"result: {want}\n"
        assert run("good", g)[1] == "result: yes\n"
        assert run("gen", "sim-from-2d", g, "--out-d", d, "--out-h", h)[0] == 0
        assert run("sim", h, d)[1] == ("result: yes\n" if brute_sat(f) else "result: no\n")


def test_output_is_deterministic(tmp_path):
    src = tmp_path / "f.dnf"
    src.write_text(emit_dnf(DnfFormula(2, [(1, 2), (-2,)])))
    texts = []
    for k in range(2):
        g, d, h = tmp_path / f"g{k}", tmp_path / f"d{k}", tmp_path / f"h{k}"
        run("gen", "2d-from-dnf", src, "-o", g)
        run("gen", "sim-from-2d", g, "--out-d", d, "--out-h", h)
        texts.append(tuple(p.read_text() for p in (g, d, h)))
    assert texts[0] == texts[1]


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "hdgames", "ztree", "--d", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "result: leaves=2 height=2\n"
