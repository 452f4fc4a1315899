from fractions import Fraction

import pytest

from cbcut.formats import (
    InstanceBundle,
    ParseError,
    emit_cnf,
    emit_graph,
    emit_hypergraph,
    emit_weights,
    load_artifact,
    parse_cnf,
    parse_graph,
    parse_hypergraph,
    parse_instance,
    parse_weights,
    write_artifact,
)
from cbcut.model import INF, is_inf
from cbcut.randgen import random_cnf, random_graph, random_hypergraph
from cbcut.reductions import reduce_maxcut_w2, reduce_sat3, verify_reduction

HG_TEXT = "4 1\n1 4\n1 2 3 4\n"


def test_parse_hypergraph_example():
    h = parse_hypergraph(HG_TEXT)
    assert (h.n, h.s, h.t) == (4, 1, 4)
    assert h.edges == ((1, 2, 3, 4),)


def test_parse_weights_rational():
    w = parse_weights("0 1 5/2\n")
    assert w.entries == (0, 1, Fraction(5, 2))


def test_parse_weights_inf():
    w = parse_weights("0 1 inf\n")
    assert is_inf(w.entries[2])


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_hypergraph("4 1\n1 4\n1 2 x 4\n")
    assert err.value.line == 3
    with pytest.raises(ParseError) as err:
        parse_hypergraph("4 2\n1 4\n1 2 3 4\n")
    assert "edge lines" in err.value.message
    with pytest.raises(ParseError):
        parse_weights("0 1\n0 2\n")
    with pytest.raises(ParseError) as err:
        parse_graph("2 1\n1 1\n")
    assert "self-loop" in err.value.message


def test_parse_hypergraph_validates_invariants():
    with pytest.raises(ParseError, match="out of range"):
        parse_hypergraph("3 1\n1 2\n1 2 5\n")


def test_hypergraph_roundtrip_bytes():
    assert emit_hypergraph(parse_hypergraph(HG_TEXT)) == HG_TEXT


def test_parse_tolerates_comments_and_blanks():
    noisy = "# instance\n\n4 1\n1 4\n\n1 2 3 4\n"
    assert emit_hypergraph(parse_hypergraph(noisy)) == HG_TEXT


def test_weights_roundtrip():
    for text in ("0 1 5/2\n", "0 1 inf\n", "0 1 2 3\n"):
        assert emit_weights(parse_weights(text)) == text


def test_graph_roundtrip():
    g = random_graph(5, 6, 7)
    assert parse_graph(emit_graph(g)) == g


def test_cnf_roundtrip():
    cnf = random_cnf(9, 4, 5)
    assert parse_cnf(emit_cnf(cnf)) == cnf


def test_cnf_parse_dimacs_details():
    cnf = parse_cnf("c comment\np cnf 3 2\n1 -2 3 0\n-1 2\n-3 0\n")
    assert cnf.clauses == ((1, -2, 3), (-1, 2, -3))
    with pytest.raises(ParseError, match="unterminated"):
        parse_cnf("p cnf 3 1\n1 -2 3\n")
    with pytest.raises(ParseError, match="header"):
        parse_cnf("1 2 3 0\n")
    with pytest.raises(ParseError, match="promises"):
        parse_cnf("p cnf 3 2\n1 2 3 0\n")


def test_random_hypergraph_roundtrip():
    h = random_hypergraph(3, 9, 6, 6)
    h2 = parse_hypergraph(emit_hypergraph(h))
    assert (h2.n, h2.edges, h2.s, h2.t) == (h.n, h.edges, h.s, h.t)


def test_artifact_sidecar_roundtrip(tmp_path, k3):
    gpath = tmp_path / "k3.g"
    gpath.write_text(emit_graph(k3))
    art = reduce_maxcut_w2(k3, 3, 0)
    paths = write_artifact(art, str(tmp_path / "k3red"), str(gpath))
    assert [p.endswith(sfx) for p, sfx in zip(paths, (".hg", ".w", ".map.json"))]
    loaded = load_artifact(str(tmp_path / "k3red.map.json"))
    assert loaded.case == art.case
    assert loaded.alpha == art.alpha
    assert loaded.node_map == art.node_map
    assert loaded.contraction_groups == art.contraction_groups
    assert loaded.expected_cost == art.expected_cost
    assert loaded.hypergraph.edges == art.hypergraph.edges
    assert loaded.source == art.source
    rep = verify_reduction(loaded)
    assert rep.passed and rep.optimum == 7


def test_parse_instance_bundle(tmp_path):
    (tmp_path / "i.hg").write_text(HG_TEXT)
    (tmp_path / "w.txt").write_text("0 1 2\n")
    bundle = InstanceBundle(
        hypergraph_path=str(tmp_path / "i.hg"), weights_path=str(tmp_path / "w.txt")
    )
    h, w, artifact = parse_instance(bundle)
    assert h.n == 4 and w.q == 2 and artifact is None
    # bad file is rejected before any solving
    (tmp_path / "bad.hg").write_text("3 1\n1 2\n1 2 9\n")
    with pytest.raises(ParseError, match="out of range"):
        parse_instance(
            InstanceBundle(
                hypergraph_path=str(tmp_path / "bad.hg"),
                weights_path=str(tmp_path / "w.txt"),
            )
        )


def test_parse_instance_with_mapping(tmp_path, k3):
    gpath = tmp_path / "k3.g"
    gpath.write_text(emit_graph(k3))
    art = reduce_maxcut_w2(k3, 3, 0)
    write_artifact(art, str(tmp_path / "red"), str(gpath))
    bundle = InstanceBundle(
        hypergraph_path=str(tmp_path / "red.hg"),
        weights_path=str(tmp_path / "red.w"),
        mapping_path=str(tmp_path / "red.map.json"),
    )
    h, w, artifact = parse_instance(bundle)
    assert artifact is not None and artifact.alpha == art.alpha
    assert artifact.hypergraph.edges == h.edges


def test_sat_sidecar_roundtrip(tmp_path):
    cnf = random_cnf(4, 3, 2)
    cpath = tmp_path / "f.cnf"
    cpath.write_text(emit_cnf(cnf))
    art = reduce_sat3(cnf, "noeven")
    write_artifact(art, str(tmp_path / "sat"), str(cpath))
    loaded = load_artifact(str(tmp_path / "sat.map.json"))
    assert is_inf(loaded.weights[2])
    assert verify_reduction(loaded).passed
