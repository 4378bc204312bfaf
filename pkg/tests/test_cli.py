import json

import pytest

from rankmat import formats
from rankmat.cli import main
from rankmat.enumerate import cyclic_group, word_monoid_1abab0
from rankmat.kronecker import Hypergraph, SemigroupMatrix
from rankmat.recovery import synth_oracle
from rankmat.suites import enumerate_instances, run_suite
from rankmat.trees import all_laminar_trees, validate_tree

P4_STRUCT = """structure
universe 4
rel E 2
0 1
1 0
1 2
2 1
2 3
3 2
end
"""


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "p4.struct").write_text(P4_STRUCT)
    (tmp_path / "t.tree").write_text("(u (u 0 1) 2)\n")
    (tmp_path / "z3.sgp").write_text(formats.write_semigroup(cyclic_group(3)))
    (tmp_path / "bad.sgp").write_text("semigroup 2\n0 1\n0 0\n")
    (tmp_path / "m.mat").write_text("matrix 2 2 sgp=z3.sgp\n0 1\n1 2\n")
    oracle = synth_oracle("unordered", [{0, 1}, {2, 3, 4}], 1)
    (tmp_path / "ctr.sgp").write_text(formats.write_semigroup(oracle.semigroup))
    (tmp_path / "o.orc").write_text(formats.write_oracle(oracle, "ctr.sgp"))
    return tmp_path


# ---------------------------------------------------------------------------
# formats


def test_structure_round_trip():
    s = formats.parse_structure(P4_STRUCT)
    assert s.universe_size == 4
    assert formats.parse_structure(formats.write_structure(s)) == s


def test_structure_parse_errors():
    with pytest.raises(ValueError, match="header"):
        formats.parse_structure("universe 3\nend\n")
    with pytest.raises(ValueError, match="end"):
        formats.parse_structure("structure\nuniverse 3\n")
    with pytest.raises(ValueError, match="line 4"):
        formats.parse_structure("structure\nuniverse 2\nrel E 2\n0\nend\n")


def test_structure_comments_and_blanks():
    text = "# a path\nstructure\n\nuniverse 2 # two points\nrel E 2\n0 1\nend\n"
    s = formats.parse_structure(text)
    assert s.relation("E") == {(0, 1)}


def test_tree_round_trip():
    t = formats.parse_tree("(u (u 0 1) (u 2 3))")
    assert formats.parse_tree(formats.write_tree(t)) == t
    assert t.leaves == frozenset(range(4))


def test_tree_named_leaves():
    t = formats.parse_tree("(u a (u b c))")
    assert t.leaves == frozenset({"a", "b", "c"})


def test_tree_parse_errors():
    for bad in ["", "(u 0)", "(u 0 1", "(x 0 1)", "(u 0 0)", "(u 0 1) 2"]:
        with pytest.raises(ValueError):
            formats.parse_tree(bad)


def test_semigroup_round_trip_with_unit():
    w = word_monoid_1abab0()
    text = formats.write_semigroup(w)
    assert "unit 0" in text
    assert formats.parse_semigroup(text) == w


def test_matrix_round_trip(tmp_path):
    (tmp_path / "s.sgp").write_text(formats.write_semigroup(cyclic_group(2)))
    m = SemigroupMatrix.make([[0, 1], [1, 0]], cyclic_group(2))
    (tmp_path / "m.mat").write_text(formats.write_matrix(m, "s.sgp"))
    loaded = formats.load_matrix(str(tmp_path / "m.mat"))
    assert loaded.entries == m.entries
    assert loaded.semigroup == m.semigroup


def test_hypergraph_round_trip():
    g = Hypergraph(2, 2, (0, 0, 0, 1))
    assert formats.parse_hypergraph(formats.write_hypergraph(g)) == g
    with pytest.raises(ValueError, match="colour ids"):
        formats.parse_hypergraph("hypergraph 2 2\n0 1\n")


def test_oracle_round_trip(tmp_path):
    oracle = synth_oracle("ordered", [{0}, {1, 2}], 2)
    (tmp_path / "s.sgp").write_text(formats.write_semigroup(oracle.semigroup))
    (tmp_path / "o.orc").write_text(formats.write_oracle(oracle, "s.sgp"))
    loaded = formats.load_oracle(str(tmp_path / "o.orc"))
    assert loaded.ordered
    assert loaded.classes == oracle.classes
    assert loaded.lam == oracle.lam
    assert loaded.accept == oracle.accept
    assert loaded.k == oracle.k


# ---------------------------------------------------------------------------
# instance enumerators


def test_enumerate_structures_n2():
    assert len(list(enumerate_instances("structures", 2))) == 16


def test_enumerate_trees_3_leaves():
    assert len(list(enumerate_instances("trees", 3))) == 4


def test_enumerate_semigroups_size2():
    assert len(list(enumerate_instances("semigroups", 2))) == 8


def test_enumerate_oracles_seeded():
    a = [o.classes for o in enumerate_instances("oracles", 5, seed=1)]
    b = [o.classes for o in enumerate_instances("oracles", 5, seed=1)]
    assert a == b and len(a) == 5


def test_enumerate_unknown_kind():
    with pytest.raises(ValueError):
        list(enumerate_instances("widgets", 2))


# ---------------------------------------------------------------------------
# CLI


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_cli_rank(workdir, capsys):
    code, out = run_cli(capsys, "rank", "--structure", str(workdir / "p4.struct"),
                        "--subset", "0,1", "--m", "2")
    assert code == 0
    assert "distinct_rows=4" in out


def test_cli_graph_rank_json(workdir, capsys):
    code, out = run_cli(capsys, "--json", "graph-rank",
                        "--structure", str(workdir / "p4.struct"),
                        "--subset", "0,1")
    assert code == 0
    obj = json.loads(out.strip())
    assert set(obj) == {"check", "instance", "status", "data"}
    assert obj["data"]["cut_rank"] == 1


def test_cli_tree_commands(workdir, capsys):
    for action, needle in [("validate", "leaves=3"), ("branching", "branching=1"),
                           ("subforests", "count=5")]:
        code, out = run_cli(capsys, "tree", action, str(workdir / "t.tree"))
        assert code == 0 and needle in out


def test_cli_tree_encode_decode(workdir, capsys, tmp_path):
    code, out = run_cli(capsys, "--json", "tree", "encode", str(workdir / "t.tree"))
    assert code == 0
    encoded = json.loads(out.strip())["data"]["structure"]
    path = tmp_path / "enc.struct"
    path.write_text(encoded)
    code, out = run_cli(capsys, "--json", "tree", "decode", str(path))
    assert code == 0
    assert json.loads(out.strip())["data"]["tree"] == "(u (u 0 1) 2)"


def test_cli_orient_obstruction_exit_1(tmp_path, capsys):
    (tmp_path / "two_star.tree").write_text("(u (u 0 1 2) (u 3 4 5))\n")
    code, out = run_cli(capsys, "orient", str(tmp_path / "two_star.tree"),
                        "--modulus", "3")
    assert code == 1 and "fail" in out
    code, out = run_cli(capsys, "orient", str(tmp_path / "two_star.tree"),
                        "--modulus", "4")
    assert code == 0


def test_cli_blocks(capsys):
    code, out = run_cli(capsys, "--json", "blocks", "--classes", "0,1;2;3,4",
                        "--subset", "0,1,3")
    assert code == 0
    assert json.loads(out.strip())["data"]["blocks"] == [
        ["full", 0, 0], ["empty", 1, 1], ["cut", 2, 2]]


def test_cli_rankwidth(workdir, capsys):
    code, out = run_cli(capsys, "--json", "rankwidth",
                        "--structure", str(workdir / "p4.struct"))
    assert code == 0
    assert json.loads(out.strip())["data"]["width"] == 1


def test_cli_sgp(workdir, capsys):
    code, out = run_cli(capsys, "sgp", "omega", str(workdir / "z3.sgp"))
    assert code == 0 and "omega=3" in out
    code, out = run_cli(capsys, "sgp", "syntactic", str(workdir / "z3.sgp"),
                        "--k", "2")
    assert code == 0 and "count=3" in out
    code, out = run_cli(capsys, "sgp", "identities", str(workdir / "z3.sgp"))
    assert code == 0


def test_cli_sgp_invalid_table_exit_2(workdir, capsys):
    code = main(["sgp", "identities", str(workdir / "bad.sgp")])
    capsys.readouterr()
    assert code == 2


def test_cli_missing_file_exit_2(capsys):
    code = main(["sgp", "omega", "/nonexistent/x.sgp"])
    capsys.readouterr()
    assert code == 2


def test_cli_bad_arguments_exit_2(capsys):
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_cli_kron(workdir, capsys):
    code, out = run_cli(capsys, "--json", "kron", "product",
                        str(workdir / "m.mat"), str(workdir / "m.mat"))
    assert code == 0
    assert json.loads(out.strip())["data"]["shape"] == [4, 4]
    code, out = run_cli(capsys, "kron", "order", str(workdir / "m.mat"),
                        "--budget", "4")
    assert code == 0 and "order=finite" in out
    code, out = run_cli(capsys, "kron", "2x2-claim", str(workdir / "z3.sgp"),
                        "--b", "1", "--c", "1", "--d", "2")
    assert code == 0 and "claim_holds=True" in out


def test_cli_recover_partition(workdir, capsys):
    code, out = run_cli(capsys, "--json", "recover", "partition",
                        str(workdir / "o.orc"))
    assert code == 0
    assert json.loads(out.strip())["data"]["classes"] == [[0, 1], [2, 3, 4]]


def test_cli_recover_preorder(tmp_path, capsys):
    oracle = synth_oracle("ordered", [{0}, {1, 2}, {3}], 2)
    (tmp_path / "s.sgp").write_text(formats.write_semigroup(oracle.semigroup))
    (tmp_path / "o.orc").write_text(formats.write_oracle(oracle, "s.sgp"))
    code, out = run_cli(capsys, "--json", "recover", "preorder",
                        str(tmp_path / "o.orc"), "--d", "2")
    assert code == 0
    assert json.loads(out.strip())["data"]["classes"] == [[0], [1, 2], [3]]


def test_cli_verify_json_schema(capsys):
    code, out = run_cli(capsys, "--json", "verify", "rank-decreasing")
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert lines
    for obj in lines:
        assert set(obj) == {"check", "instance", "status", "data"}
        assert obj["status"] in ("pass", "fail", "skip")


def test_cli_verify_unknown_suite_exit_2(capsys):
    code = main(["verify", "no-such-suite"])
    capsys.readouterr()
    assert code == 2


def test_run_suite_unknown():
    with pytest.raises(ValueError):
        run_suite("nope")


def test_verify_fail_witness_replays(tmp_path, capsys):
    # a fail report must carry enough data to replay; force one via orient
    (tmp_path / "two_star.tree").write_text("(u (u 0 1 2) (u 3 4 5))\n")
    code, out = run_cli(capsys, "--json", "orient",
                        str(tmp_path / "two_star.tree"), "--modulus", "3")
    assert code == 1
    obj = json.loads(out.strip())
    assert obj["status"] == "fail"
    assert obj["data"]["obstruction_node"]
    # replay: same invocation, same failure
    code2, out2 = run_cli(capsys, "--json", "orient",
                          str(tmp_path / "two_star.tree"), "--modulus", "3")
    assert (code2, json.loads(out2.strip())) == (code, obj)
