import io
import subprocess
import sys

import pytest

from latagg.catalog import builtin, canonical_hash
from latagg.cli import main
from latagg.lattice import format_lat, parse_lat
from latagg.polynomials import parse_term, to_table
from latagg.aggregation import format_fun, random_aggregation


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def latfile(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.lat"
        path.write_text(format_lat(builtin(name)))
        return str(path)

    return write


def test_check_mn3(latfile):
    code, out, _ = run("check", latfile("mn-3"))
    assert code == 0
    assert "elements: 5\n" in out
    assert "atoms: a1 a2 a3\n" in out
    assert "smallest_agg: Y\n" in out


def test_check_chain3(latfile):
    code, out, _ = run("check", latfile("chain-3"))
    assert code == 0 and "smallest_agg: N\n" in out


def test_check_malformed(tmp_path):
    path = tmp_path / "bad.lat"
    path.write_text("elements 0 1\ncover 0\n")
    code, out, err = run("check", str(path))
    assert code == 2
    assert "line 2" in err and out == ""


def test_check_missing_file(tmp_path):
    code, _, err = run("check", str(tmp_path / "nope.lat"))
    assert code == 2 and err


def test_check_not_lattice(tmp_path):
    path = tmp_path / "v.lat"
    path.write_text("elements 0 a b 1\ncover 0 a\ncover 0 b\n")
    assert run("check", str(path))[0] == 2


def test_decide_glued(latfile):
    code, out, _ = run("decide", latfile("glued-m3"))
    lines = out.splitlines()
    assert code == 0 and lines[0] == "NOT-SMALLEST"
    assert "~ a b" in lines  # a cross pair inside the lower M_3


def test_decide_mn4(latfile):
    code, out, _ = run("decide", latfile("mn-4"))
    lines = out.splitlines()
    assert lines[0] == "SMALLEST"
    assert len([l for l in lines if l.startswith("chi ")]) == 4


def test_decide_chain2(latfile):
    path = latfile("chain-2")
    _, out, _ = run("decide", path)
    lines = out.splitlines()
    assert lines[0] == "SMALLEST"
    L = parse_lat(open(path).read())
    name, term = lines[1][len("chi "):].split(" := ")
    assert name == "1"
    assert to_table(L, parse_term(term, L)).values == (0, 1)


def test_printed_terms_reparse(latfile):
    path = latfile("mn-5")
    L = parse_lat(open(path).read())
    _, out, _ = run("decide", path)
    from latagg.aggregation import chi

    for line in out.splitlines()[1:]:
        name, term = line[len("chi "):].split(" := ")
        assert to_table(L, parse_term(term, L, arity=1)) == chi(L, L.index(name)).table


def test_chi(latfile):
    _, out, _ = run("chi", latfile("chain-3"), "c1")
    assert out == "NONE\n"
    _, out, _ = run("chi", latfile("mn-3"), "a2")
    assert out == "((x0 ^ a2) v a3) ^ ((x0 ^ a2) v a1)\n"
    assert run("chi", latfile("mn-3"), "1")[0] == 2
    assert run("chi", latfile("mn-3"), "zz")[0] == 2


def test_represent_join(latfile, tmp_path):
    path = latfile("mn-3")
    L = parse_lat(open(path).read())
    fun = tmp_path / "join.fun"
    lines = ["arity 2"]
    for x in L.elements:
        for y in L.elements:
            lines.append(f"map {L.names[x]} {L.names[y]} -> {L.names[L.join(x, y)]}")
    fun.write_text("\n".join(lines) + "\n")
    code, out, _ = run("represent", path, str(fun))
    assert code == 0
    term = parse_term(out.strip(), L, arity=2)
    assert to_table(L, term) == to_table(L, parse_term("x0 v x1", L))


def test_represent_not_smallest(latfile, tmp_path):
    path = latfile("chain-3")
    L = parse_lat(open(path).read())
    fun = tmp_path / "f.fun"
    fun.write_text(format_fun(L, random_aggregation(L, 1, 0)))
    assert run("represent", path, str(fun))[0] == 2


def test_represent_bound(latfile, tmp_path):
    path = latfile("mn-3")
    L = parse_lat(open(path).read())
    fun = tmp_path / "f.fun"
    fun.write_text(format_fun(L, random_aggregation(L, 2, 0)))
    assert run("--bound", "10", "represent", path, str(fun))[0] == 3


def test_tolerances_chain3(latfile):
    code, out, _ = run("tolerances", latfile("chain-3"))
    assert code == 0
    assert out.startswith("# 5 tolerances\n")
    assert len([l for l in out.splitlines() if l.startswith("tolerance ")]) == 5


def test_tolerances_bound(latfile):
    assert run("tolerances", latfile("chain-11"))[0] == 3
    assert run("--bound", "3", "tolerances", latfile("chain-4"))[0] == 3
    assert run("--bound", "4", "tolerances", latfile("chain-4"))[0] == 0


def test_enumerate(latfile):
    code, out, _ = run("--quiet", "enumerate", "5")
    rows = [l.split("\t") for l in out.splitlines()]
    assert code == 0 and len(rows) == 5
    assert [r[0] for r in rows] == ["1", "2", "3", "4", "5"]
    assert sum(r[-1] == "Y" for r in rows) == 1
    assert run("enumerate", "8")[0] == 3


def test_builtin_round_trip():
    code, out, _ = run("builtin", "glued-m3")
    assert code == 0
    assert canonical_hash(parse_lat(out)) == canonical_hash(builtin("glued-m3"))
    assert run("builtin", "nonsense")[0] == 2


def test_export_dot(latfile):
    path = latfile("bool-2")
    code, out, _ = run("export-dot", path)
    assert code == 0
    assert out == run("export-dot", path)[1]
    assert out.startswith("digraph hasse {")
    assert out.count("->") == 4


def test_random_fun_seeded(latfile):
    path = latfile("mn-3")
    a = run("--seed", "5", "random-fun", path)[1]
    b = run("--seed", "5", "random-fun", path)[1]
    c = run("--seed", "6", "random-fun", path)[1]
    assert a == b and a != c


def test_internal_inconsistency_exit(latfile, monkeypatch):
    import latagg.aggregation as agg

    monkeypatch.setattr(agg, "synthesize_chi_polynomial", lambda L, a: None)
    assert run("decide", latfile("mn-3"))[0] == 4


def test_pipe_builtin_into_decide():
    first = subprocess.run(
        [sys.executable, "-m", "latagg", "builtin", "mn-3"], capture_output=True, text=True, check=True
    )
    second = subprocess.run(
        [sys.executable, "-m", "latagg", "decide", "-"],
        input=first.stdout, capture_output=True, text=True,
    )
    assert second.returncode == 0
    assert second.stdout.splitlines()[0] == "SMALLEST"
