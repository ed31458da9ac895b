import json
import re
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqscp.cli import (
    frontier_csv,
    frontier_json,
    frontier_rows,
    main,
    parse_frontier_csv,
    parse_frontier_json,
    parse_int,
)
from pqscp.core import validate_params

from conftest import PAIRS


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_g(capsys):
    assert run(capsys, "g", "750", "-p", "2", "-q", "3") == (0, "1255\n", "")
    assert run(capsys, "g", "1")[1] == "1\n"
    code, out, _ = run(capsys, "g", "486", "--witness")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "850"
    assert lines[1].split()[1] == "432"
    assert lines[3] == "weight: 850"


@pytest.mark.parametrize("mode", ["fixedpoint", "modK", "exact", "exact-oracle"])
def test_g_modes(capsys, mode):
    assert run(capsys, "g", "10^40", "--mode", mode)[1] == run(capsys, "g", "10**40", "--mode", "exact-oracle")[1]


def test_trace(capsys):
    code, out, _ = run(capsys, "zm", "750", "--trace")
    assert out.splitlines()[0] == "729 = 2^0 * 3^6"
    assert "iterations: 2 (bound 4)" in out
    bs = [int(line.split()[1]) for line in out.splitlines() if re.match(r"^\s+\d+\s+\d+", line)]
    assert bs == [0, 2, 4, 6]
    assert run(capsys, "ym", "729")[1] == "648 = 2^3 * 3^4\n"


def test_frontier_text(capsys):
    code, out, _ = run(capsys, "frontier", "750")
    rows = [line for line in out.splitlines() if re.match(r"^\s*\(\d", line)]
    assert [r.split()[0] for r in rows] == ["(0,6)", "(1,5)", "(3,4)", "(4,3)", "(6,2)", "(7,1)", "(9,0)"]
    assert [r for r in rows if r.endswith("*")] == [rows[2]]
    assert out.rstrip().endswith("G(750) = 1255")
    out1 = run(capsys, "frontier", "1", "--format", "csv")[1]
    assert out1 == "a,b,value,h,max\n0,0,1,1,1\n"
    out486 = run(capsys, "frontier", "486")[1]
    assert sum(line.endswith("850 *") for line in out486.splitlines()) == 2


def test_frontier_json_schema(p23):
    doc = json.loads(frontier_json(p23, 750))
    assert set(doc) == {"m", "p", "q", "rows", "max_index"}
    assert doc["rows"][doc["max_index"]] == {"a": 3, "b": 4, "value": "648", "h": "1255"}
    assert all(isinstance(r["value"], str) and isinstance(r["h"], str) for r in doc["rows"])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PAIRS), st.integers(1, 10**40))
def test_round_trip(pq, m):
    prm = validate_params(*pq)
    rows, idx = frontier_rows(prm, m)
    doc = parse_frontier_json(frontier_json(prm, m))
    assert doc["rows"] == rows and doc["max_index"] == idx and doc["m"] == m
    assert parse_frontier_csv(frontier_csv(prm, m)) == (rows, idx)
    assert frontier_json(prm, m) == frontier_json(prm, m)


def test_convergents_ell_jumps_kn(capsys):
    out = run(capsys, "convergents", "--depth", "7", "--format", "json")[1]
    assert [r["a"] for r in json.loads(out)] == [1, 1, 1, 2, 2, 3, 1]
    out = run(capsys, "convergents")[1]
    assert "K_n: 1 2 7 12 53" in out
    assert json.loads(run(capsys, "ell", "--max", "6", "--format", "json")[1]) == [0, 0, 2, 2, 2, 2, 2]
    assert run(capsys, "jumps", "--count", "2")[1] == "2 2\n12 5\n"
    assert run(capsys, "kn", "6")[1] == "6 = 3*2\n"


def _svg_points(text):
    dots = [(int(a), int(b)) for a, b in re.findall(r'data-a="(\d+)" data-b="(\d+)"', text)]
    poly = re.search(r'<polyline points="([^"]+)"', text)[1]
    return dots, poly


def test_plot(tmp_path, capsys):
    out = tmp_path / "fig2.svg"
    assert run(capsys, "plot", "750", "-o", str(out))[0] == 0
    dots, poly = _svg_points(out.read_text())
    assert sorted(dots) == sorted([(0, 6), (1, 5), (3, 4), (4, 3), (6, 2), (7, 1), (9, 0)])
    # staircase vertices, back in lattice coordinates: (0,0),(0,1),(2,2)..(2,6)
    pts = [tuple(map(int, p.split(","))) for p in poly.split()]
    x0, y0 = pts[0]
    lattice = [((x - x0) // 40, (y0 - y) // 40) for x, y in pts]
    assert lattice == [(0, 0), (0, 1)] + [(2, b) for b in range(2, 7)]
    out1 = tmp_path / "one.svg"
    run(capsys, "plot", "1", "-o", str(out1))
    assert _svg_points(out1.read_text())[0] == [(0, 0)]
    out486 = tmp_path / "z486.svg"
    run(capsys, "plot", "486", "-o", str(out486))
    rows, _ = frontier_rows(validate_params(2, 3), 486)
    assert sorted(_svg_points(out486.read_text())[0]) == sorted((r["a"], r["b"]) for r in rows)


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--dense", "1")
    assert code == 0 and out.rstrip().endswith("PASS")
    code, out, _ = run(capsys, "verify", "--dense", "0", "--sample", "200", "--max", "1e9", "-p", "3", "-q", "5")
    assert code == 0 and out.rstrip().endswith("PASS")


def test_verify_workers(capsys):
    code, out, _ = run(capsys, "verify", "--dense", "1200", "--sample", "100", "--workers", "2")
    assert code == 0 and "PASS" in out


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "0", "3", "6")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[1:]]
    assert all(r[1] == "True" for r in rows)
    assert rows[2][0] == "10^6" and int(rows[2][4]) <= int(rows[2][5]) == 5


def test_exit_codes(capsys):
    assert run(capsys, "g", "5", "-p", "2", "-q", "4")[0] == 2
    assert run(capsys, "g", "5", "-p", "3", "-q", "2")[0] == 2
    assert run(capsys, "g", "0")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["g", "abc"])
    assert exc.value.code == 2


def test_budget_exit_code(capsys, monkeypatch):
    import pqscp.cli as cli
    from pqscp.errors import BudgetExceeded

    def boom(*a, **k):
        raise BudgetExceeded("budget")

    monkeypatch.setattr(cli, "jump_indices", boom)
    assert run(capsys, "jumps")[0] == 3


def test_parse_int():
    assert parse_int("1e9") == 10**9
    assert parse_int("10^100") == 10**100
    assert parse_int("2**64") == 2**64
    assert parse_int("123_456") == 123456


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "pqscp", "g", "750"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "1255\n"
