import csv
import io
import subprocess
import sys

import pytest

from minksum.bench import CSV_HEADER, BenchRecord, run_bench, write_csv
from minksum.cli import main
from minksum.fileio import load_polytope, save_polygon, save_polytope
from minksum.gen import generic_rotate
from minksum.lattice import cuboid, lattice_isomorphic, point_polytope
from minksum.planar import ConvexPolygon


@pytest.fixture
def files(tmp_path, cube, tetra):
    paths = {}
    for name, P in [("cube", cube), ("rcube", generic_rotate(cube, 3)), ("tetra", tetra),
                    ("cuboid", cuboid((0, 0, 0), (2, 1, 3))), ("pt", point_polytope((1, 2, 3)))]:
        paths[name] = str(tmp_path / f"{name}.json")
        save_polytope(P, paths[name])
    paths["tri"] = str(tmp_path / "tri.json")
    save_polygon(ConvexPolygon(((0, 0), (1, 0), (0, 1))), paths["tri"])
    paths["out"] = str(tmp_path / "out.json")
    paths["ref"] = str(tmp_path / "ref.json")
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_fvector(files, capsys):
    assert run(capsys, "fvector", files["cuboid"]) == (0, "8 12 6\n", "")


def test_sum_matches_oracle(files, capsys):
    assert run(capsys, "sum", files["cube"], files["rcube"], "--paranoid", "-o", files["out"])[0] == 0
    assert run(capsys, "oracle", files["cube"], files["rcube"], "-o", files["ref"])[0] == 0
    code, out, _ = run(capsys, "cmp", files["out"], files["ref"])
    assert (code, out) == (0, "isomorphic\n")
    assert run(capsys, "check", files["out"])[:2] == (0, "ok\n")


def test_degenerate_sum_exits_2(files, capsys):
    code, out, err = run(capsys, "sum", files["cube"], files["cube"], "-o", files["out"])
    assert code == 2
    assert "degeneracy report" in err and "tie" in err


def test_cmp_different(files, capsys):
    assert run(capsys, "cmp", files["cube"], files["rcube"])[:2] == (1, "different\n")


def test_msum_and_point(files, capsys):
    assert run(capsys, "msum", files["cube"], files["rcube"], files["tetra"], "-o", files["out"])[0] == 0
    assert run(capsys, "oracle", files["cube"], files["rcube"], files["tetra"], "-o", files["ref"])[0] == 0
    assert run(capsys, "cmp", files["out"], files["ref"])[0] == 0
    assert run(capsys, "sum", files["cuboid"], files["pt"], "-o", files["out"])[0] == 0
    moved = cuboid((1, 2, 3), (3, 3, 6))
    assert lattice_isomorphic(load_polytope(files["out"]).lattice, moved.lattice)


def test_sum2d(files, capsys):
    assert run(capsys, "sum2d", files["tri"], files["tri"], "-o", files["out"])[0] == 0
    assert set(load_polytope(files["out"]).vertices) == {(0, 0), (2, 0), (0, 2)}
    code, out, _ = run(capsys, "sum2d", files["tri"], files["tri"], files["tri"])
    assert code == 0 and '"3/1"' in out
    assert run(capsys, "sum2d", files["cube"], files["tri"])[0] == 64


def test_check_reports_broken_file(files, capsys, tmp_path):
    bad = tmp_path / "bad.json"
    text = open(files["cube"]).read().replace('"vertices": [\n    0,\n    1,\n    2,\n    3\n   ]', '"vertices": [0, 1, 2]', 1)
    bad.write_text(text.replace('"dim": 2,\n   "vertices": [\n    0,', '"dim": 2,\n   "vertices": [\n    7,', 1))
    code, out, err = run(capsys, "check", bad)
    assert code == 1 and out == "invalid\n" and err


def test_gen_rotate_and_seed_env(files, capsys, monkeypatch, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "gen", "--dim", 3, "--points", 9, "--seed", 5, "-o", a)[0] == 0
    monkeypatch.setenv("MINKSUM_SEED", "5")
    assert run(capsys, "gen", "--dim", 3, "--points", 9, "-o", b)[0] == 0
    assert a.read_text() == b.read_text()
    assert run(capsys, "rotate", files["cube"], "-o", b)[0] == 0
    assert load_polytope(b).vertices == generic_rotate(load_polytope(files["cube"]), 5).vertices
    monkeypatch.setenv("MINKSUM_SEED", "five")
    assert run(capsys, "gen", "--dim", 3, "--points", 9)[0] == 64


def test_off(files, capsys, tmp_path):
    target = tmp_path / "c.off"
    assert run(capsys, "off", files["cube"], "-o", target)[0] == 0
    assert target.read_text().startswith("OFF\n8 6 12\n")
    assert run(capsys, "off", files["tri"])[0] == 64


def test_exit_codes_for_usage_and_io(files, capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--dim", "x", "--points", "4"])
    assert exc.value.code == 64
    assert run(capsys, "fvector", tmp_path / "missing.json")[0] == 74
    junk = tmp_path / "junk.json"
    junk.write_text("{nope")
    assert run(capsys, "fvector", junk)[0] == 74
    assert run(capsys, "sum", files["cube"], files["rcube"], "-o", tmp_path / "no" / "dir.json")[0] == 74


def test_bench_csv(capsys, tmp_path):
    target = tmp_path / "b.csv"
    code, _, _ = run(capsys, "bench", "--dims", "2,3", "--sizes", "5,6", "--seeds", "1", "--csv", target)
    assert code == 0
    rows = list(csv.reader(target.open()))
    assert rows[0] == list(CSV_HEADER)
    assert rows[0] == "dim,n_size,m_size,out_size,pairs_tested,millis,mode".split(",")
    assert len(rows) == 5
    for r in rows[1:]:
        n, m, pairs = int(r[1]), int(r[2]), int(r[4])
        assert 0 < pairs <= n * m and float(r[5]) > 0 and r[6] == "fast"


def test_bench_records_match_header():
    assert tuple(BenchRecord.__dataclass_fields__) == CSV_HEADER
    recs = run_bench([3], [6], [2, 3], repeat=2)
    buf = io.StringIO()
    write_csv(recs, buf)
    assert buf.getvalue().splitlines()[0] == ",".join(CSV_HEADER)
    assert all(r.out_size > max(r.n_size, r.m_size) for r in recs)


def test_console_script_runs(files):
    proc = subprocess.run([sys.executable, "-m", "minksum.cli", "fvector", files["cuboid"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "8 12 6\n"
    proc = subprocess.run([sys.executable, "-m", "minksum.cli", "sum", files["cube"], files["cube"]],
                          capture_output=True, text=True)
    assert proc.returncode == 2
