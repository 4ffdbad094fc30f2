"""End-to-end tests for the eh-toolkit command line."""
import json

import pytest

from app.application.cograph import (
    check_cotree_semantics,
    cotree_max_clique,
    cotree_max_independent,
)
from app.core.logger import logger
from app.infrastructure.exceptions import RetryCapExhaustedException
from app.infrastructure.io.loaders import load_cotree, load_instance
from app.main import main


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture
def poset_file(tmp_path, capsys):
    path = tmp_path / "poset.json"
    code, _ = _run(
        capsys, "gen-poset", "--n", "40", "--seed", "7", "--output", str(path)
    )
    assert code == 0
    return path


def test_gen_poset_is_seeded(capsys):
    first = _run(capsys, "gen-poset", "--n", "8", "--seed", "1")
    second = _run(capsys, "gen-poset", "--n", "8", "--seed", "1")

    assert first == second
    assert json.loads(first[1])["n"] == 8


def test_gen_poset_logs_the_relation_count(capsys):
    messages = []
    sink = logger.add(messages.append, format="{message}", level="INFO")
    try:
        code, _ = _run(capsys, "gen-poset", "--n", "5", "--dim", "1", "--seed", "1")
    finally:
        logger.remove(sink)

    assert code == 0
    assert any("10 relations" in message for message in messages)


def test_gen_poset_csv(capsys):
    code, out = _run(
        capsys, "gen-poset", "--n", "5", "--dim", "1", "--format", "csv"
    )

    assert code == 0
    assert out.splitlines()[0] == "lower,upper"
    assert len(out.splitlines()) == 5


def test_extract_then_verify(tmp_path, capsys, poset_file):
    curves = tmp_path / "curves.json"
    witness = tmp_path / "witness.json"
    code, _ = _run(
        capsys,
        "gen-curves",
        "--from-poset",
        str(poset_file),
        "--witness-out",
        str(witness),
        "--output",
        str(curves),
    )
    assert code == 0

    code, out = _run(
        capsys, "extract", "--input", str(curves), "--witness", str(witness)
    )
    report = json.loads(out)

    assert code == 0
    assert report["verdict"]["passed"]
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps(report["certificate"]), encoding="utf-8")
    assert _run(capsys, "verify", "--graph", str(curves), "--cert", str(cert))[0] == 0


def test_verify_rejects_a_broken_certificate(tmp_path, capsys, k33):
    graph = tmp_path / "k33.json"
    graph.write_text(
        json.dumps({"n": 6, "edges": [list(e) for e in k33.edges()]}),
        encoding="utf-8",
    )
    cert = tmp_path / "cert.json"
    cert.write_text(
        json.dumps(
            {"kind": "empty", "t": 2, "c": 0.1, "host_n": 6, "blocks": [[0], [3]]}
        ),
        encoding="utf-8",
    )

    code, out = _run(capsys, "verify", "--graph", str(graph), "--cert", str(cert))

    assert code == 1
    assert json.loads(out)["failed_check"] == "crossing"


def test_direct_extraction_on_a_chain_violates_the_precondition(tmp_path, capsys):
    chain = tmp_path / "chain.json"
    chain.write_text(
        json.dumps({"n": 4, "relations": [[0, 1], [1, 2], [2, 3]]}), encoding="utf-8"
    )

    code, out = _run(capsys, "extract", "--input", str(chain), "--alpha", "0.5")

    assert code == 2
    assert out == ""


def test_ramsey_is_exact_below_the_cap(capsys, poset_file):
    code, out = _run(capsys, "ramsey", "--input", str(poset_file), "--exact-cap", "40")
    result = json.loads(out)

    assert code == 0
    assert result["exact"]
    assert len(result["clique"]) * len(result["independent"]) >= 40


def test_bench_csv(capsys):
    code, out = _run(
        capsys,
        "bench",
        "--family",
        "dim2",
        "--n-range",
        "10..20",
        "--trials",
        "2",
        "--out",
        "csv",
        "--no-ramsey",
    )
    lines = out.splitlines()

    assert code == 0
    assert lines[0].startswith("family,n,seed,input_digest,branch,t,min_block,c")
    assert len(lines) == 5


def test_missing_file_is_an_input_error(tmp_path, capsys):
    code, _ = _run(capsys, "ramsey", "--input", str(tmp_path / "absent.json"))

    assert code == 2


def test_ramsey_reads_an_edge_list(tmp_path, capsys):
    c5 = tmp_path / "c5.txt"
    c5.write_text("5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n", encoding="utf-8")

    code, out = _run(capsys, "ramsey", "--input", str(c5))
    result = json.loads(out)

    assert code == 0
    assert (len(result["clique"]), len(result["independent"])) == (2, 2)


def test_ramsey_writes_the_cotree(tmp_path, capsys, poset_file):
    cotree = tmp_path / "cotree.json"

    code, out = _run(
        capsys, "ramsey", "--input", str(poset_file), "--cotree-out", str(cotree)
    )
    result = json.loads(out)
    tree = load_cotree(cotree)

    assert code == 0
    assert not result["exact"]
    assert check_cotree_semantics(load_instance(poset_file).graph, tree)
    assert tree.covered() <= frozenset(range(40))
    assert len(cotree_max_clique(tree)) == len(result["clique"])
    assert len(cotree_max_independent(tree)) == len(result["independent"])


@pytest.mark.parametrize(
    "edges, options",
    [
        ([[i, (i + 1) % 5] for i in range(5)], []),
        ([[0, 1], [1, 2], [2, 3]], ["--witness-mode", "fail"]),
    ],
)
def test_dense_graph_without_witness_needs_an_oracle(tmp_path, capsys, edges, options):
    graph = tmp_path / "graph.json"
    graph.write_text(json.dumps({"n": 5, "edges": edges}), encoding="utf-8")

    code, out = _run(capsys, "extract", "--input", str(graph), *options)

    assert code == 3
    assert out == ""


def test_exhausted_sampling_exits_with_four(monkeypatch, capsys, poset_file):
    def exhausted(*args):
        raise RetryCapExhaustedException("Case-1 sampling ran out of attempts")

    monkeypatch.setattr(
        "app.presentation.cli.commands.extract.extract_blocks_comparability",
        exhausted,
    )

    code = main(
        [
            "extract",
            "--input",
            str(poset_file),
            "--alpha",
            "0.1",
            "--graph-kind",
            "comparability",
        ]
    )
    captured = capsys.readouterr()

    assert code == 4
    assert captured.out == ""
    assert "ran out of attempts" in captured.err
