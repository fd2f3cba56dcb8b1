import io

import networkx as nx
import pytest
from hypothesis import given, settings

from strategies import trees
from treeenergy.errors import TreeParseError
from treeenergy.treeio import (
    dump_trees,
    parse_graph6,
    parse_tree,
    read_graph6,
    read_tree,
    serialize_tree,
    to_graph6,
    write_tree,
)
from treeenergy.trees import bn_tree, build_tstar, canonical_code, path_tree


class TestEdgeList:
    def test_parse_path(self):
        t = parse_tree("4\n0 1\n1 2\n2 3\n")
        assert t.n == 4 and t.edges == ((0, 1), (1, 2), (2, 3))

    def test_blank_lines_skipped(self):
        assert parse_tree("\n4\n0 1\n0 2\n\n0 3\n").degree(0) == 3

    def test_comment_is_malformed(self):
        with pytest.raises(TreeParseError, match="line 1"):
            parse_tree("# star\n4\n0 1\n0 2\n0 3\n")

    def test_single_vertex(self):
        assert parse_tree("1\n").n == 1

    def test_from_file_object(self):
        assert parse_tree(io.StringIO("2\n1 0\n")).edges == ((1, 0),)

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("", "empty input"),
            ("x\n", "line 1"),
            ("-2\n", "negative"),
            ("3\n0 1 2\n", "line 2"),
            ("3\n0 a\n", "line 2"),
            ("3\n0 1\n1 3\n", "line 3"),
            ("3\n0 1\n1 1\n", "self-loop"),
            ("3\n0 1\n1 2\n2 0\n", "cyclic"),
            ("4\n0 1\n2 3\n", "disconnected"),
        ],
    )
    def test_errors_name_the_problem(self, text, fragment):
        with pytest.raises(TreeParseError, match=fragment):
            parse_tree(text)

    @settings(max_examples=100, deadline=None)
    @given(trees(max_n=40))
    def test_roundtrip(self, t):
        assert parse_tree(serialize_tree(t)) == t

    def test_file_roundtrip(self, tmp_path):
        t = build_tstar(30, 3)
        path = tmp_path / "t.txt"
        write_tree(t, path)
        assert read_tree(path) == t

    def test_dump_trees(self):
        buf = io.StringIO()
        assert dump_trees([path_tree(3), path_tree(2)], buf) == 2
        blocks = [b for b in buf.getvalue().split("\n\n") if b.strip()]
        assert [parse_tree(b).n for b in blocks] == [3, 2]


class TestGraph6:
    def test_claw(self):
        assert to_graph6(bn_tree(0)) == "Cs"
        assert canonical_code(parse_graph6("Cs")) == canonical_code(bn_tree(0))

    def test_header_accepted(self):
        assert parse_graph6(">>graph6<<Cs\n").n == 4

    @pytest.mark.parametrize("bad", ["", "C", "Cs~", "~?", "C\x01"])
    def test_malformed(self, bad):
        with pytest.raises(TreeParseError):
            parse_graph6(bad)

    def test_non_tree_rejected(self):
        triangle = nx.to_graph6_bytes(nx.cycle_graph(3), header=False).strip()
        with pytest.raises(TreeParseError):
            parse_graph6(triangle)

    @settings(max_examples=100, deadline=None)
    @given(trees(min_n=1, max_n=80))
    def test_matches_networkx_encoder(self, t):
        g = nx.Graph()
        g.add_nodes_from(range(t.n))
        g.add_edges_from(t.edges)
        expected = nx.to_graph6_bytes(g, header=False).decode().strip()
        assert to_graph6(t) == expected
        back = parse_graph6(expected)
        assert back.n == t.n
        assert {frozenset(e) for e in back.edges} == {frozenset(e) for e in t.edges}

    def test_long_vertex_count(self):
        t = build_tstar(100, 2)
        s = to_graph6(t)
        assert s[0] == "~"
        assert canonical_code(parse_graph6(s)) == canonical_code(t)

    def test_read_file(self, tmp_path):
        path = tmp_path / "x.g6"
        path.write_text("Cs\n\nCs\n")
        assert len(list(read_graph6(path))) == 2
