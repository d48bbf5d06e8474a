"""Tests for the command-line front end."""
import json

import pytest
from conwaygordon import __version__
from conwaygordon.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main, parse_sequence
from conwaygordon.core.family import load_family
from conwaygordon.core.graph import TriangleSite
from conwaygordon.utils.formats import parse_embedding, parse_graph, parse_weights

def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out.splitlines()

@pytest.mark.cli
def test_parse_sequence():
    """Test triangle sequence parsing."""
    assert parse_sequence("0-1-2, 0-3-6") == [TriangleSite(0, 1, 2), TriangleSite(0, 3, 6)]
    assert parse_sequence("") == []
    assert parse_sequence("-") == []
    with pytest.raises(ValueError) as exc_info:
        parse_sequence("0-1-2,0-1")
    assert "Step 2" in str(exc_info.value)

@pytest.mark.cli
def test_version(capsys):
    """Test --version."""
    code, lines = run(capsys, "--version")
    assert code == EXIT_PASS
    assert lines == [f"conwaygordon {__version__}"]

@pytest.mark.cli
def test_families(capsys):
    """Test listing the ΔY family of K6."""
    code, lines = run(capsys, "families", "--root", "K6")
    assert code == EXIT_PASS
    assert lines[0].split("\t")[0] == "name"
    rows = [line.split("\t") for line in lines[1:]]
    assert len(rows) == 6
    assert rows[0][:4] == ["K6", "6", "15", "-"]
    assert all(row[2] == "15" for row in rows)

@pytest.mark.cli
def test_families_with_ydelta(capsys):
    """Test listing the full K7 family."""
    code, lines = run(capsys, "families", "--root", "K7", "--include-ydelta")
    assert code == EXIT_PASS
    assert len(lines) == 1 + 20
    assert any("Heawood" in line for line in lines)

@pytest.mark.cli
def test_families_writes_files(capsys, tmp_path):
    """Test graph and cycle files written per member."""
    code, _ = run(capsys, "families", "--root", "K6", "--out", str(tmp_path))
    assert code == EXIT_PASS
    g = parse_graph((tmp_path / "Q7.graph").read_text())
    assert g == load_family("K6").get("Q7").graph
    assert (tmp_path / "K6.cycles").read_text().count("\n") == 20 + 45 + 72 + 60 + 10

@pytest.mark.cli
def test_families_unknown_root(capsys):
    """Test that an unsupported root is a usage error."""
    assert main(["families", "--root", "K5"]) == EXIT_USAGE

@pytest.mark.cli
def test_weights_from_sequence(capsys):
    """Test deriving a weight table from a sequence."""
    code, lines = run(capsys, "weights", "--root", "K6", "--sequence", "0-1-2")
    assert code == EXIT_PASS
    assert lines[0].startswith("weights ") and lines[0].endswith(" K6 -1")
    assert all(line.split("\t")[1] in ("1", "-1") for line in lines[1:])

@pytest.mark.cli
def test_weights_from_member(capsys, tmp_path):
    """Test writing a member's table to a file."""
    out = tmp_path / "h8.weights"
    code, lines = run(capsys, "weights", "--member", "H8", "--out", str(out))
    assert code == EXIT_PASS
    h8 = load_family("K7").get("H8")
    w = parse_weights(out.read_text(), h8.graph)
    assert out.read_text().splitlines()[0] == "weights H8 K7 -21"
    assert sum(int(line.split("\t")[2]) for line in lines) == len(w)

@pytest.mark.cli
def test_weights_errors(capsys):
    """Test weight derivation usage errors."""
    assert main(["weights", "--root", "K6", "--sequence", "0-1-2,0-1-2"]) == EXIT_USAGE
    assert main(["weights", "--root", "K6", "--sequence", "0-1"]) == EXIT_USAGE
    assert main(["weights", "--sequence", "0-1-2"]) == EXIT_USAGE
    assert main(["weights", "--root", "K6", "--member", "H8"]) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err

@pytest.mark.cli
def test_embed_round_trip(capsys, tmp_path, k6):
    """Test writing an embedding and reading it back."""
    out = tmp_path / "k6.embedding"
    assert main(["embed", "--member", "K6", "--seed", "3", "--out", str(out)]) == EXIT_PASS
    emb = parse_embedding(out.read_text(), k6)
    assert emb.seed == 3
    code, lines = run(capsys, "embed", "--member", "K6", "--linear")
    assert code == EXIT_PASS
    assert lines[0] == "embedding K6 -"

@pytest.mark.cli
def test_invariants_of_diagram(capsys, tmp_path):
    """Test invariants of a Gauss-code file."""
    path = tmp_path / "trefoil.gauss"
    path.write_text("+c0o +c1u +c2o +c0u +c1o +c2u\n")
    code, lines = run(capsys, "invariants", "--diagram", str(path), "--check")
    assert code == EXIT_PASS
    assert lines == ["components\t1", "crossings\t3", "conway\tz**2 + 1", "a2\t1", "arf\t1"]

@pytest.mark.cli
def test_invariants_of_member(capsys, tmp_path):
    """Test invariants of chosen cycle sets on a stored embedding."""
    out = tmp_path / "k6.embedding"
    assert main(["embed", "--member", "K6", "--seed", "1", "--out", str(out)]) == EXIT_PASS
    code, lines = run(
        capsys, "invariants", "--member", "K6", "--embedding", str(out),
        "--element", "0-1-2|3-4-5", "--element", "0-1-2-3-4-5",
    )
    assert code == EXIT_PASS
    assert lines[0] == "element\tinvariant\tvalue"
    assert lines[1].startswith("0-1-2|3-4-5\tlk\t")
    assert lines[2].startswith("0-1-2-3-4-5\ta2\t")

@pytest.mark.cli
def test_verify_passes(capsys, tmp_path):
    """Test a passing verification run with JSON output."""
    out = tmp_path / "cg1.jsonl"
    code, lines = run(capsys, "verify", "--id", "cg1", "--trials", "2", "--seed", "0", "--json", str(out))
    assert code == EXIT_PASS
    assert lines[0] == "identity\tgraph\tseed\tlhs\trhs\tstatus"
    assert all(line.endswith("PASS") for line in lines[1:3])
    assert lines[-1] == "# 2/2 passed"
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert [r["graph"] for r in records] == ["K6", "K6"]

@pytest.mark.cli
def test_verify_is_deterministic(capsys):
    """Test that identical flags give identical stdout."""
    argv = ["verify", "--id", "main1", "--member", "Q7", "--trials", "1", "--seed", "9"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    assert first[0] == EXIT_PASS

@pytest.mark.cli
def test_verify_usage_errors(capsys, monkeypatch):
    """Test identity mismatches and malformed environment defaults."""
    assert main(["verify", "--id", "main1", "--member", "H8", "--trials", "1"]) == EXIT_USAGE
    assert "identity kind mismatch" in capsys.readouterr().err
    assert main(["verify", "--id", "main3"]) == EXIT_USAGE
    monkeypatch.setenv("CONWAYGORDON_TRIALS", "-1")
    assert main(["verify", "--id", "cg1"]) == EXIT_USAGE

@pytest.mark.cli
def test_exit_codes_are_distinct():
    """Test the exit code constants."""
    assert (EXIT_PASS, EXIT_FAIL, EXIT_USAGE) == (0, 1, 2)
