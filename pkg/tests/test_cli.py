import itertools

import pytest

from latclone import format_function, format_lattice, n5, to_table
from latclone.cli import load_lattice, main
from latclone.errors import LatcloneError
from latclone.functable import from_callable
from latclone.lattice import chain
from latclone.terms import parse_term_file


@pytest.fixture()
def pentagon_file(tmp_path):
    path = tmp_path / "n5.lat"
    path.write_text(format_lattice(n5()))
    return str(path)


@pytest.fixture()
def median_file(tmp_path):
    lat = chain(3)

    def med(xs):
        x, y, z = xs
        return sorted((x, y, z))[1]

    path = tmp_path / "median.fn"
    path.write_text(format_function(from_callable(lat, 3, med, name="median")))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_load_lattice_specs(pentagon_file):
    assert load_lattice("chain:4").size == 4
    assert load_lattice("m:3").size == 5
    assert load_lattice("boolean:3").size == 8
    assert load_lattice("n5").size == 5
    assert load_lattice(f"file:{pentagon_file}").size == 5
    with pytest.raises(LatcloneError):
        load_lattice("torus:3")
    with pytest.raises(LatcloneError):
        load_lattice("chain:x")


def test_lattice_check(capsys, pentagon_file):
    code, out, err = run(capsys, ["lattice", "check", pentagon_file])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "size=5 bottom=0 top=1"
    assert lines[1].startswith("order: 0 ")


def test_lattice_check_rejects_non_lattice(capsys, tmp_path):
    path = tmp_path / "bad.lat"
    path.write_text("lattice twins\nelements x y\nend\n")
    code, out, err = run(capsys, ["lattice", "check", str(path)])
    assert code == 2
    assert "join" in err


def test_lattice_check_missing_file(capsys):
    code, out, err = run(capsys, ["lattice", "check", "/nonexistent.lat"])
    assert code == 2


def test_enum_count(capsys):
    code, out, _ = run(
        capsys,
        ["enum", "--lattice", "chain:3", "--arity", "2", "--class", "idempotent"],
    )
    assert code == 0
    assert out.splitlines()[0] == "count=64"


def test_enum_emit_tables(capsys):
    code, out, _ = run(
        capsys,
        ["enum", "--lattice", "chain:2", "--arity", "2", "--class", "idempotent",
         "--emit"],
    )
    assert code == 0
    assert out.splitlines()[0] == "count=4"
    assert out.count("function f") == 4
    assert "function f0 arity 2 lattice chain2" in out


def test_enum_budget_exit(capsys):
    code, out, err = run(
        capsys,
        ["enum", "--lattice", "chain:2", "--arity", "2", "--class", "monotone",
         "--count-budget", "2"],
    )
    assert code == 3
    assert "BudgetExceeded" in err


def test_decompose_round_trip(capsys, median_file, tmp_path):
    out_path = tmp_path / "median.term"
    code, out, err = run(
        capsys,
        ["decompose", "--lattice", "chain:3", median_file,
         "--reduced", "--simplify", "--out", str(out_path)],
    )
    assert code == 0
    arity, lattice_name, term = parse_term_file(out_path.read_text())
    assert (arity, lattice_name) == (3, "chain3")
    lat = chain(3)
    vals = to_table(term, lat, 3).values
    assert vals == tuple(
        sorted(xs)[1] for xs in itertools.product(range(3), repeat=3)
    )


def test_decompose_rejects_non_idempotent(capsys, tmp_path):
    lat = chain(3)
    path = tmp_path / "const.fn"
    path.write_text(format_function(from_callable(lat, 2, lambda xs: 2, name="c")))
    code, out, err = run(capsys, ["decompose", "--lattice", "chain:3", str(path)])
    assert code == 2
    assert err.strip() == "NotIdempotent: f(0,0) = 2 != 0"


def test_verify(capsys):
    code, out, _ = run(capsys, ["verify", "--lattice", "chain:3", "--arity", "2"])
    assert code == 0
    assert out.splitlines()[0] == "lattice=chain3 arity=2 id_count=64 A=pass B=pass"


def test_verify_budget_exit(capsys):
    code, out, err = run(
        capsys,
        ["verify", "--lattice", "chain:3", "--arity", "2", "--budget", "5"],
    )
    assert code == 3
    assert "BudgetExceeded" in err


def test_closure_fixpoint(capsys):
    code, out, _ = run(capsys, ["closure", "--lattice", "chain:2", "--arity", "2"])
    assert code == 0
    assert out.splitlines()[0].startswith("reached=4 ")
    assert "budget_hit=false" in out


def test_closure_budget_exit(capsys):
    code, out, _ = run(
        capsys,
        ["closure", "--lattice", "m:2", "--arity", "2", "--reduced",
         "--budget", "100"],
    )
    assert code == 3
    assert "budget_hit=true" in out


def test_closure_extra_fn_file(capsys, median_file):
    code, out, _ = run(
        capsys,
        ["closure", "--lattice", "chain:3", "--arity", "3",
         "--fn-file", median_file, "--budget", "2000"],
    )
    assert code in (0, 3)
    assert out.startswith("reached=")


def test_count_single_and_range(capsys):
    code, out, _ = run(capsys, ["count", "--family", "chain", "--n", "3"])
    assert code == 0
    assert out == "n=3 count=16 enum=16\n"
    code, out, _ = run(capsys, ["count", "--family", "m", "--n", "4..6"])
    assert code == 0
    assert out.splitlines() == [
        "n=4 count=27 enum=27",
        "n=5 count=40 enum=40",
        "n=6 count=55 enum=55",
    ]


def test_count_bad_range(capsys):
    code, out, err = run(capsys, ["count", "--family", "chain", "--n", "abc"])
    assert code == 2
    assert "bad n range" in err


def test_output_is_deterministic(capsys):
    runs = []
    for _ in range(2):
        code, out, _ = run(
            capsys,
            ["enum", "--lattice", "m:2", "--arity", "2", "--class", "idempotent",
             "--emit"],
        )
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]
