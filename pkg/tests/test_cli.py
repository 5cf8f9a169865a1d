import json
import subprocess
import sys
from contextlib import redirect_stdout
from io import StringIO

import pytest

from qaffine import braiding, cli, exactfield, linalg, qchar, repdecomp, treeoperad, uqsl2

LIBRARY = (exactfield, linalg, uqsl2, repdecomp, braiding, qchar, treeoperad)

# operations the command line must expose
OPERATIONS = [
    "qint", "qbinom", "evaluate_z", "qpower_roots", "rref", "intertwiner_space", "closure",
    "corolla", "glue", "contract", "operad_compose", "family_hom",
    "evaluation_module", "tensor", "dual", "twist", "qstring", "generic_position",
    "in_category_C", "singular_vectors", "minimal_submodules", "composition_series",
    "identify_simple", "braid_pair", "braid_standard", "braid_subquotient", "mu_sigma",
    "subsequence_compatibility", "elliptic_descent_report", "qchar_evaluation",
    "qchar_product", "specialize", "dominant_term", "k0_class", "in_A2",
]


def run(*argv):
    buf = StringIO()
    with redirect_stdout(buf):
        code = cli.main(list(argv))
    return code, json.loads(buf.getvalue())


def test_command_table_covers_operations():
    for op in OPERATIONS:
        assert op in cli.COMMAND_TABLE, op
    for op, command in cli.COMMAND_TABLE.items():
        assert command in cli.COMMANDS
        assert any(hasattr(m, op) for m in LIBRARY + (cli.checks,)), op
    assert set(cli.COMMAND_TABLE.values()) == set(cli.COMMANDS)


def test_decompose():
    code, doc = run("decompose", "V(1@0)*V(1@2)")
    assert code == 0
    assert sorted(doc["factors"]) == ["1", "V(2@0)"]
    assert doc["series"]["filtration_ranks"] == [0, 3, 4]


def test_braid():
    code, doc = run("braid", "1", "0", "1", "0")
    assert code == 0
    assert all(k % 2 == 0 for k in doc["braiding"]["poles"])
    assert doc["braiding"]["matrix"][0][0] == "1"


def test_braid_specialized_at_pole_is_an_error():
    code, doc = run("braid", "1", "0", "1", "0", "--at", "-2")
    assert code == 1 and doc["error"] == "PoleError"


def test_verify_small():
    code, doc = run("verify", "--suite", "pole-locus", "--nmax", "2", "--lmax", "2")
    assert code == 0
    assert doc["matrix"] == {"pole-locus": "pass"}


def test_parse_errors():
    assert run("decompose", "V(1,0)")[0] == 2
    assert run("braid", "1")[0] == 2
    assert run("nonsense")[0] == 2
    assert run("decompose", "V(1@0)", "--frobnicate")[0] == 2
    code, doc = run("tree", "(2 e")
    assert code == 2 and doc["error"] == "parse"


def test_bound_exit_code():
    code, doc = run("decompose", "V(2@0)*V(2@2)*V(2@4)", "--bound", "8")
    assert code == 3 and doc["error"] == "bound"
    assert run("mu", "0,1,2,3,4", *["V(1@0)"] * 5)[0] == 3


def test_other_commands():
    assert run("module", "V(1@0)", "--dual")[1]["relations_hold"]
    assert run("tensor", "V(1@0)", "V(1@4)")[1]["pairwise_generic"]
    assert run("qchar", "V(1@0)")[1]["text"] == "Y0 + Y2^-1"
    assert run("k0", "V(2@0)")[1]["text"] == "t0*t2 - 1"
    assert run("k0", "V(1@0)*V(1@2)", "--decompose")[1]["text"] == "t0*t2"
    assert run("hom", "(2)", "V(1@2)", "V(1@0)", "--point", "0,0", "--target", "V(2@0)")[1]["dim"] == 1
    doc = run("tree", "(2)", "--glue", "(2)", "e")[1]
    assert doc["tree"] == "(2 (2) e)" and doc["arity"] == 4
    doc = run("tree", "(2)", "--point", "0,0", "--compose", "3", "5")[1]
    assert doc["composed"] == [3, 5]
    assert run("descent", "1", "0", "1", "0", "4")[1]["report"]["verdict"] == "unrelated"
    doc = run("mu", "1,0", "V(1@0)", "V(1@2)")[1]
    assert doc["word"] == [0]


def test_output_is_deterministic(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"out{i}.json"
        proc = subprocess.run([sys.executable, "-m", "qaffine", "--output", str(path),
                               "braid", "--standard", "V(1@0)*V(1@2)", "V(1@0)"],
                              capture_output=True)
        assert proc.returncode == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_timing_is_opt_in():
    assert "elapsed_seconds" not in run("qchar", "V(1@0)")[1]
    assert "elapsed_seconds" in run("--timing", "qchar", "V(1@0)")[1]


@pytest.mark.parametrize("argv", [["--help"], ["braid", "--help"]])
def test_help_exits_cleanly(argv, capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(argv)
    assert e.value.code == 0
